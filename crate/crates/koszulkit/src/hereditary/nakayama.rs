use super::complex::{induced_on_cohomology, BoundedComplex, Cohomology};
use crate::error::{Error, Result};
use crate::homology::{hom_to_cochain, lift_cocycle, projective_resolution, ProjectiveResolution};
use crate::linalg::Scalar;
use crate::module::{FreeModule, GradedHom, GradedModule};
use std::collections::BTreeMap;

/// Longest projective resolution computed for one `ν⁻¹` step.
pub const RESOLUTION_CAP: usize = 32;

/// `ν(⊕ e_v A⟨s⟩) = ⊕ D(A e_v)⟨s⟩`.
pub fn nakayama_on_projectives(p: &FreeModule) -> GradedModule {
    op_free(p).module().dual(p.algebra())
}

fn op_free(p: &FreeModule) -> FreeModule {
    let op = p.algebra().opposite();
    FreeModule::new(op, p.gens().iter().map(|&(v, s)| (v, -s)).collect())
}

/// `ν(f) : ν(P) → ν(Q)` for `f : P → Q` given by `gen_g ↦ Σ_h gen'_h · m[g][h]`.
pub fn nakayama_hom(p: &FreeModule, q: &FreeModule, m: &[Vec<Vec<Scalar>>]) -> GradedHom {
    let (pop, qop) = (op_free(p), op_free(q));
    let mt: Vec<Vec<Vec<Scalar>>> = (0..q.rank()).map(|h| (0..p.rank()).map(|g| m[g][h].clone()).collect()).collect();
    qop.map_to(&pop, &mt).transpose()
}

/// Writes an injective module as `ν(P)`: the generators of `P` are read off the socle.
pub fn nakayama_inverse_on_injectives(i: &GradedModule) -> Result<FreeModule> {
    let alg = i.algebra();
    let mut gens = Vec::new();
    for (&(d, w), &k) in &i.socle_dims() {
        gens.extend(std::iter::repeat_n((w, d), k));
    }
    let p = FreeModule::new(alg.clone(), gens);
    if nakayama_on_projectives(&p).dims() != i.dims() {
        return Err(Error::Precondition("module is not injective".into()));
    }
    Ok(p)
}

/// The injective `D(A e_w)⟨d⟩` isomorphic to `m`, if any, as `(w, d)`.
pub fn indecomposable_injective(m: &GradedModule) -> Option<(usize, i64)> {
    let soc = m.socle_dims();
    if soc.len() != 1 {
        return None;
    }
    let (&(d, w), &k) = soc.iter().next()?;
    (k == 1 && GradedModule::injective(m.algebra(), w, d).dims() == m.dims()).then_some((w, d))
}

/// One application of `ν⁻¹ = RHom_A(DA, −)` to a module `X`, computed as `Hom_{A^op}(F, A)` for a
/// projective resolution `F → DX` over `A^op`.
#[derive(Clone, Debug)]
pub struct NuStep {
    pub input: GradedModule,
    resolution: ProjectiveResolution,
    /// `ν⁻¹ X` with `H^k = Ext^k(DA, X)` in degree `k`.
    pub complex: BoundedComplex,
    /// Nonzero `dim H^k(ν⁻¹ X)`.
    pub cohomology: BTreeMap<i64, usize>,
    /// `(k₀, H^{k₀})` when the cohomology is concentrated in one degree.
    pub stalk: Option<(i64, Cohomology)>,
}

impl NuStep {
    pub fn new(x: &GradedModule) -> Result<NuStep> {
        let alg = x.algebra().clone();
        let dx = x.dual(&alg.opposite());
        let resolution = projective_resolution(&dx, RESOLUTION_CAP);
        if !resolution.is_complete() {
            return Err(Error::BoundExceeded(format!("projective resolution longer than {RESOLUTION_CAP}")));
        }
        let terms: Vec<FreeModule> = resolution
            .terms()
            .iter()
            .map(|f| FreeModule::new(alg.clone(), f.gens().iter().map(|&(v, s)| (v, -s)).collect()))
            .collect();
        let mut differentials = BTreeMap::new();
        for k in 0..terms.len().saturating_sub(1) {
            let c = resolution.coefficients(k + 1).expect("coefficients within range");
            let m: Vec<Vec<Vec<Scalar>>> =
                (0..terms[k].rank()).map(|g| (0..terms[k + 1].rank()).map(|h| c[h][g].clone()).collect()).collect();
            differentials.insert(k as i64, terms[k].map_to(&terms[k + 1], &m));
        }
        let complex = BoundedComplex { terms: terms.into_iter().enumerate().map(|(k, t)| (k as i64, t)).collect(), differentials };
        let cohomology = complex.cohomology_dims();
        let stalk = match cohomology.keys().collect::<Vec<_>>().as_slice() {
            [&k0] => complex.cohomology(k0).map(|h| (k0, h)),
            _ => None,
        };
        Ok(NuStep { input: x.clone(), resolution, complex, cohomology, stalk })
    }

    pub fn output(&self) -> Option<&GradedModule> {
        self.stalk.as_ref().map(|(_, h)| &h.module)
    }

    /// Shift of `ν_n⁻¹(X[s]) = H^{k₀}[s + n - k₀]` for a stalk.
    pub fn output_shift(&self, s: i64, n: usize) -> Option<i64> {
        self.stalk.as_ref().map(|(k0, _)| s + n as i64 - k0)
    }

    /// `dim H^l(ν_n⁻¹(X[s]))`, nonzero entries.
    pub fn shifted_cohomology(&self, s: i64, n: usize) -> BTreeMap<i64, usize> {
        self.cohomology.iter().map(|(&k, &d)| (k - n as i64 - s, d)).collect()
    }

    /// `ν⁻¹(f) : H^{k₀}(ν⁻¹X) → H^{k₀}(ν⁻¹Y)` for `f : X → Y`, where `target` is the step for `Y`.
    pub fn transport(&self, target: &NuStep, f: &GradedHom) -> Result<GradedHom> {
        let (Some((k0, hx)), Some((k1, hy))) = (&self.stalk, &target.stalk) else {
            return Err(Error::Precondition("transport needs stalk cohomology on both sides".into()));
        };
        if k0 != k1 {
            return Err(Error::Precondition("transport between stalks in different degrees".into()));
        }
        let k = *k0 as usize;
        let dx = self.resolution.module();
        let df = f.transpose();
        let start = target.resolution.augmentation().then(&df);
        let x = hom_to_cochain(&target.resolution, dx, 0, 0, &start);
        let lifts = lift_cocycle(&target.resolution, &self.resolution, 0, 0, &x, k)?;
        let (fy, fx) = (target.resolution.term(k).expect("term k₀"), self.resolution.term(k).expect("term k₀"));
        let c: Vec<Vec<Vec<Scalar>>> = (0..fy.rank())
            .map(|h| {
                let img = fy.image_of_gen(&lifts[k], h, fx.module());
                fx.decompose(fy.gen_key(h), &img)
            })
            .collect();
        let (px, py) = (&self.complex.terms[k0], &target.complex.terms[k0]);
        let m: Vec<Vec<Vec<Scalar>>> = (0..px.rank()).map(|g| (0..py.rank()).map(|h| c[h][g].clone()).collect()).collect();
        let phi = px.map_to(py, &m);
        Ok(induced_on_cohomology(&self.complex, hx, &target.complex, hy, *k0, &phi))
    }
}

/// Iterates `ν_n⁻¹` on a stalk `X[s]`. Each step starts from the cohomology module of the previous one.
#[derive(Clone, Debug)]
pub struct NuOrbit {
    pub n: usize,
    pub start: GradedModule,
    pub start_shift: i64,
    pub steps: Vec<NuStep>,
}

impl NuOrbit {
    pub fn new(x: &GradedModule, s: i64, n: usize) -> Self {
        NuOrbit { n, start: x.clone(), start_shift: s, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `ν_n^{-t}(X[s])` as `(module, shift)` while it is a stalk.
    pub fn term(&self, t: usize) -> Option<(&GradedModule, i64)> {
        if t == 0 {
            return Some((&self.start, self.start_shift));
        }
        let (_, s) = self.term(t - 1)?;
        let step = self.steps.get(t - 1)?;
        Some((step.output()?, step.output_shift(s, self.n)?))
    }

    /// Nonzero `dim H^l(ν_n^{-t}(X[s]))`.
    pub fn cohomology(&self, t: usize) -> Option<BTreeMap<i64, usize>> {
        if t == 0 {
            return Some(if self.start.is_zero() { BTreeMap::new() } else { BTreeMap::from([(-self.start_shift, self.start.dim())]) });
        }
        let (_, s) = self.term(t - 1)?;
        Some(self.steps.get(t - 1)?.shifted_cohomology(s, self.n))
    }

    /// Applies one more step; `Ok(false)` once the last term is not a stalk.
    pub fn advance(&mut self) -> Result<bool> {
        let t = self.steps.len();
        let Some((x, _)) = self.term(t) else { return Ok(false) };
        let step = NuStep::new(x)?;
        self.steps.push(step);
        Ok(true)
    }

    pub fn advance_to(&mut self, t: usize) -> Result<()> {
        while self.steps.len() < t {
            if !self.advance()? {
                return Err(Error::Precondition(format!("ν_n^-{} is not a stalk complex", self.steps.len())));
            }
        }
        Ok(())
    }
}

/// `ν_n^{-i}(X[s])`: the final complex of projectives and all of its cohomology dimensions.
/// Intermediate terms must be stalks.
pub fn derived_nu_inverse_power(x: &GradedModule, s: i64, i: usize, n: usize) -> Result<(NuOrbit, BoundedComplex, BTreeMap<i64, usize>)> {
    let mut orbit = NuOrbit::new(x, s, n);
    if i == 0 {
        let c = orbit.cohomology(0).unwrap_or_default();
        return Ok((orbit, BoundedComplex { terms: BTreeMap::new(), differentials: BTreeMap::new() }, c));
    }
    orbit.advance_to(i - 1)?;
    if !orbit.advance()? {
        return Err(Error::Precondition(format!("ν_n^-{} is not a stalk complex", i - 1)));
    }
    let (_, prev) = orbit.term(i - 1).expect("stalk before the last step");
    let step = orbit.steps.last().expect("step");
    let complex = step.complex.shifted(prev + n as i64);
    let coh = step.shifted_cohomology(prev, n);
    Ok((orbit, complex, coh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn nakayama_sends_projectives_to_injectives() {
        let alg = Arc::new(a2());
        let p1 = FreeModule::new(alg.clone(), vec![(0, 0)]);
        let i = nakayama_on_projectives(&p1);
        assert_eq!(i.dim(), 1);
        assert_eq!(indecomposable_injective(&i), Some((0, 0)));
        assert_eq!(nakayama_inverse_on_injectives(&i).unwrap().gens(), &[(0, 0)]);
    }

    #[test]
    fn nakayama_pair_on_example() {
        let alg = Arc::new(example_a());
        for v in 0..4 {
            let inj = GradedModule::injective(&alg, v, 0);
            let p = nakayama_inverse_on_injectives(&inj).unwrap();
            assert_eq!(nakayama_on_projectives(&p).dims(), inj.dims());
            let step = NuStep::new(&inj).unwrap();
            let (k0, h) = step.stalk.as_ref().unwrap();
            assert_eq!(*k0, 0);
            assert_eq!(h.module.dims(), GradedModule::projective(&alg, v, 0).dims());
        }
        assert!(nakayama_inverse_on_injectives(&GradedModule::projective(&alg, 0, 0)).is_err());
    }

    #[test]
    fn nakayama_is_functorial() {
        let alg = Arc::new(a2());
        let p1 = FreeModule::new(alg.clone(), vec![(0, 0)]);
        let p2 = FreeModule::new(alg.clone(), vec![(1, 0)]);
        let a = alg.component(0).into_iter().find(|&x| !alg.is_idempotent_index(x)).unwrap();
        // P2 → P1, gen ↦ gen·a
        let m = vec![vec![alg.basis_vec(a)]];
        let f = nakayama_hom(&p2, &p1, &m);
        assert!(f.is_hom(&nakayama_on_projectives(&p2), &nakayama_on_projectives(&p1)));
        assert!(!f.is_zero());
    }

    #[test]
    fn semisimple_shifts_by_n() {
        let alg = Arc::new(point());
        let (_, _, c) = derived_nu_inverse_power(&GradedModule::regular(&alg), 0, 1, 3).unwrap();
        assert_eq!(c, BTreeMap::from([(-3, 1)]));
    }

    #[test]
    fn a2_simple_projective_goes_to_simple_injective() {
        let alg = Arc::new(a2());
        let p2 = GradedModule::projective(&alg, 1, 0);
        let (orbit, _, c) = derived_nu_inverse_power(&p2, 0, 1, 1).unwrap();
        assert_eq!(c, BTreeMap::from([(0, 1)]));
        let (m, s) = orbit.term(1).unwrap();
        assert_eq!(s, 0);
        assert_eq!(m.dims(), GradedModule::simple(&alg, 0, 0).dims());
    }

    #[test]
    fn kronecker_preprojectives() {
        let alg = Arc::new(kronecker());
        let mut dims = Vec::new();
        for i in 1..=4 {
            let (orbit, _, c) = derived_nu_inverse_power(&GradedModule::regular(&alg), 0, i, 1).unwrap();
            assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0]);
            dims.push(orbit.term(i).unwrap().0.dim());
        }
        // τ⁻ⁱ(P₁ ⊕ P₂) has dimension 8i + 4
        assert_eq!(dims, vec![12, 20, 28, 36]);
    }

    #[test]
    fn transport_of_identity_is_identity() {
        let alg = Arc::new(kronecker());
        let x = GradedModule::projective(&alg, 1, 0);
        let step = NuStep::new(&x).unwrap();
        let id = step.transport(&step, &GradedHom::identity(&x)).unwrap();
        let h = step.output().unwrap();
        assert_eq!(id, GradedHom::identity(h));
    }
}
