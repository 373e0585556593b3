mod almost;
mod mubar;
mod orthogonal;
mod stable_end;
mod ttilde;

pub use almost::{
    check_almost_self_orthogonal, check_classic_almost_koszul, check_n_m_sigma_koszul, mu_permutation, solve_m_sigma,
    AlmostOrthogonality, AlmostParams, ClassicAlmostKoszul, ClassicVerdict, CosyzygyHit, MuPermutation, NMSigmaReport,
    SummandPeriod,
};
pub use mubar::build_mu_bar;
pub use orthogonal::{check_n_t_koszul, check_self_orthogonal, ExtWitness, KoszulReport, KoszulVerdict};
pub use stable_end::{stable_endomorphism_algebra, StableEndomorphismAlgebra};
pub use ttilde::{build_t_tilde, default_rigidity_bound, rigidity_check, RigidityReport, TTilde};

#[cfg(test)]
pub(crate) mod tests_support {
    pub use crate::presentation::tests_support::*;
    use crate::algebra::{trivial_extension, GradedAlgebra};
    use crate::module::{parse_module, GradedModule};
    use std::sync::Arc;

    /// The four summands of the tilting module of the worked example, over its trivial extension.
    pub fn example_t() -> Vec<GradedModule> {
        let a = Arc::new(example_a());
        let delta = Arc::new(trivial_extension(&a).unwrap());
        [
            include_str!("../../../../data/example_t1.mod"),
            include_str!("../../../../data/example_t2.mod"),
            include_str!("../../../../data/example_t3.mod"),
            include_str!("../../../../data/example_t4.mod"),
        ]
        .iter()
        .map(|text| parse_module(text, &a).unwrap().module.inflate(&delta).unwrap())
        .collect()
    }

    /// `T = A` over `ΔA`, one summand per vertex.
    pub fn delta_t(a: &GradedAlgebra) -> Vec<GradedModule> {
        let delta = Arc::new(trivial_extension(a).unwrap());
        let a0 = delta.degree_zero();
        (0..a.num_vertices()).map(|v| GradedModule::projective(&a0, v, 0).inflate(&delta).unwrap()).collect()
    }

    pub fn dual_numbers_t() -> Vec<GradedModule> {
        vec![GradedModule::simple(&Arc::new(dual_numbers()), 0, 0)]
    }

    pub fn cubic_t() -> Vec<GradedModule> {
        vec![GradedModule::simple(&Arc::new(cubic()), 0, 0)]
    }
}
