use super::{ext_space, projective_resolution, ProjectiveResolution};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve, Matrix, Scalar, Subspace};
use crate::module::{cokernel, hom_space, is_isomorphic, GradedHom, GradedModule, IsoVerdict};
use num::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TiltingVerdict {
    Tilting,
    NotTilting(String),
    Inconclusive(String),
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TiltingReport {
    pub verdict: TiltingVerdict,
    pub projective_dimension: Option<usize>,
    /// First nonzero `Ext^i(T^a, T^b)` with `0 < i ≤ pd T`, as `(i, a, b, dim)`.
    pub ext_obstruction: Option<(usize, usize, usize, usize)>,
    /// Multiplicities of the summands in each term `T^0, …, T^l` of the coresolution of `A`.
    pub coresolution: Vec<Vec<usize>>,
    pub probabilistic: bool,
}

impl TiltingReport {
    pub fn is_tilting(&self) -> bool {
        self.verdict == TiltingVerdict::Tilting
    }
}

/// Radical maps `T^b → T^a`: everything for `a ≠ b`, trace-zero endomorphisms for `a = b`.
fn radical_homs(tb: &GradedModule, ta: &GradedModule, same: bool) -> Vec<GradedHom> {
    let h = hom_space(tb, ta);
    if !same {
        return h.basis;
    }
    let traces: Vec<Scalar> =
        h.basis.iter().map(|f| f.blocks().values().map(Matrix::trace).fold(Scalar::zero(), |s, t| s + t)).collect();
    kernel_basis(&Matrix::from_rows(vec![traces], h.dim())).iter().map(|c| h.combination(c)).collect()
}

/// Minimal left `add T`-approximation `X → ⊕ (T^a)^{k_a}`.
fn left_approximation(x: &GradedModule, summands: &[GradedModule]) -> (GradedModule, GradedHom, Vec<usize>) {
    let homs: Vec<_> = summands.iter().map(|t| hom_space(x, t)).collect();
    let mut chosen: Vec<(usize, GradedHom)> = Vec::new();
    let mut mult = vec![0; summands.len()];
    for (a, ta) in summands.iter().enumerate() {
        if homs[a].is_zero() {
            continue;
        }
        let mut vecs = Vec::new();
        for (b, tb) in summands.iter().enumerate() {
            for r in radical_homs(tb, ta, a == b) {
                for g in &homs[b].basis {
                    if let Some(c) = homs[a].coords(&g.then(&r), x, ta) {
                        vecs.push(c);
                    }
                }
            }
        }
        let rad = Subspace::span(homs[a].dim(), &vecs);
        for i in rad.complement_indices() {
            chosen.push((a, homs[a].basis[i].clone()));
            mult[a] += 1;
        }
    }
    let parts: Vec<&GradedModule> = chosen.iter().map(|(a, _)| &summands[*a]).collect();
    if parts.is_empty() {
        return (GradedModule::zero(x.algebra().clone()), GradedHom::zero(), mult);
    }
    let sum = GradedModule::direct_sum(&parts);
    let mut f = GradedHom::zero();
    for ((_, g), inc) in chosen.iter().zip(&sum.inclusions) {
        f = f.add(&g.then(inc));
    }
    (sum.module, f, mult)
}

/// Multiplicities `m` with `X ≅ ⊕ (T^a)^{m_a}`, certified by an isomorphism.
fn add_t_decomposition(x: &GradedModule, summands: &[GradedModule], seed: u64) -> (Option<Vec<usize>>, bool) {
    if x.is_zero() {
        return (Some(vec![0; summands.len()]), false);
    }
    let t = summands.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for tb in summands {
        rows.push(summands.iter().map(|ta| Scalar::from_integer(hom_space(tb, ta).dim().into())).collect());
        rhs.push(Scalar::from_integer(hom_space(tb, x).dim().into()));
        rows.push(summands.iter().map(|ta| Scalar::from_integer(hom_space(ta, tb).dim().into())).collect());
        rhs.push(Scalar::from_integer(hom_space(x, tb).dim().into()));
    }
    let a = Matrix::from_rows(rows, t);
    let Ok(Some(m)) = solve(&a, &rhs) else { return (None, false) };
    if m.iter().any(|c| !c.is_integer() || c.is_negative()) {
        return (None, false);
    }
    let mult: Vec<usize> = m.iter().map(|c| c.to_integer().try_into().unwrap_or(0)).collect();
    let parts: Vec<&GradedModule> =
        mult.iter().enumerate().flat_map(|(a, &k)| std::iter::repeat_n(&summands[a], k)).collect();
    if parts.is_empty() {
        return (None, false);
    }
    let sum = GradedModule::direct_sum(&parts).module;
    match is_isomorphic(x, &sum, seed) {
        IsoVerdict::Yes(_) => (Some(mult), false),
        IsoVerdict::NoProbabilistic => (None, true),
        IsoVerdict::NoCertified(_) => (None, false),
    }
}

/// Checks that `T = ⊕ T^a` is a tilting module over the algebra the summands live on:
/// finite projective dimension, `Ext^{>0}(T, T) = 0`, and a finite `add T`-coresolution of the algebra.
pub fn tilting_module_check(summands: &[GradedModule], seed: u64) -> Result<TiltingReport> {
    let Some(first) = summands.first() else { return Err(Error::Input("no summands given".into())) };
    let alg = first.algebra().clone();
    if summands.iter().any(|t| !t.algebra().same_as(&alg)) {
        return Err(Error::Input("summands over different algebras".into()));
    }
    let cap = alg.dim() + 1;
    let mut report = TiltingReport {
        verdict: TiltingVerdict::Tilting,
        projective_dimension: None,
        ext_obstruction: None,
        coresolution: Vec::new(),
        probabilistic: false,
    };
    let res: Vec<ProjectiveResolution> = summands.iter().map(|t| projective_resolution(t, cap)).collect();
    let Some(pd) = res.iter().map(|r| r.projective_dimension()).collect::<Option<Vec<_>>>().map(|v| v.into_iter().max().unwrap_or(0))
    else {
        report.verdict = TiltingVerdict::Inconclusive(format!("projective dimension exceeds {cap}"));
        return Ok(report);
    };
    report.projective_dimension = Some(pd);
    for i in 1..=pd {
        for (a, r) in res.iter().enumerate() {
            for (b, tb) in summands.iter().enumerate() {
                let d = ext_space(r, tb, i, 0)?.dim();
                if d > 0 {
                    report.ext_obstruction = Some((i, a, b, d));
                    report.verdict = TiltingVerdict::NotTilting(format!("Ext^{i}(T{}, T{}) has dimension {d}", a + 1, b + 1));
                    return Ok(report);
                }
            }
        }
    }
    let mut x = GradedModule::regular(&alg);
    for _ in 0..=cap {
        let (dec, prob) = add_t_decomposition(&x, summands, seed);
        report.probabilistic |= prob;
        if let Some(m) = dec {
            report.coresolution.push(m);
            return Ok(report);
        }
        let (tx, f, mult) = left_approximation(&x, summands);
        if !f.is_injective(&x) {
            report.verdict =
                TiltingVerdict::NotTilting(format!("the add T-approximation in step {} is not injective", report.coresolution.len()));
            return Ok(report);
        }
        report.coresolution.push(mult);
        x = cokernel(&f, &x, &tx).0;
    }
    report.verdict = TiltingVerdict::Inconclusive(format!("no add T-coresolution of length ≤ {cap}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn algebra_itself_is_tilting() {
        let alg = Arc::new(example_a());
        let t: Vec<_> = (0..4).map(|v| GradedModule::projective(&alg, v, 0)).collect();
        let r = tilting_module_check(&t, 0).unwrap();
        assert!(r.is_tilting());
        assert_eq!(r.projective_dimension, Some(0));
        assert_eq!(r.coresolution, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn example_module_is_tilting() {
        let alg = Arc::new(example_a());
        let t = vec![
            GradedModule::projective(&alg, 0, 0),
            GradedModule::simple(&alg, 1, 0),
            GradedModule::simple(&alg, 2, 0),
            GradedModule::injective(&alg, 3, 0),
        ];
        let r = tilting_module_check(&t, 0).unwrap();
        assert!(r.is_tilting(), "{:?}", r.verdict);
        assert_eq!(r.projective_dimension, Some(1));
        assert_eq!(r.coresolution.len(), 2);
    }

    #[test]
    fn simple_of_a2_is_not_tilting() {
        let alg = Arc::new(a2());
        let r = tilting_module_check(&[GradedModule::simple(&alg, 1, 0)], 0).unwrap();
        assert!(matches!(r.verdict, TiltingVerdict::NotTilting(_)));
    }
}
