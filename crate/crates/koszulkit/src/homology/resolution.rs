use crate::linalg::Scalar;
use crate::module::{FreeModule, FreeSummand, GradedHom, GradedModule};
use num::Zero;

/// Minimal graded projective resolution `⋯ → P¹ → P⁰ → M → 0`, computed to a finite length.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution {
    module: GradedModule,
    terms: Vec<FreeModule>,
    augmentation: GradedHom,
    /// `differentials[i - 1] = d_i : P^i → P^{i-1}`.
    differentials: Vec<GradedHom>,
    /// `coeffs[i - 1][h][g]`: `d_i(gen_h) = Σ_g gen_g · coeffs[i-1][h][g]`.
    coeffs: Vec<Vec<Vec<Vec<Scalar>>>>,
    /// `syzygies[i] = Ω^i M` as a submodule of `P^{i-1}` (unstripped).
    syzygies: Vec<GradedModule>,
    complete: bool,
}

/// Resolves `m` through `P^length`, stopping early once a syzygy vanishes.
pub fn projective_resolution(m: &GradedModule, length: usize) -> ProjectiveResolution {
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut coeffs = Vec::new();
    let mut syzygies = vec![m.clone()];
    let mut complete = m.is_zero();
    let mut augmentation = GradedHom::zero();
    let mut inclusion: Option<GradedHom> = None;
    if !complete {
        for i in 0..=length {
            let omega = syzygies[i].clone();
            let pres = omega.presentation();
            let free = pres.free.clone();
            match &inclusion {
                None => augmentation = pres.cover.clone(),
                Some(inc) => {
                    let d = pres.cover.then(inc);
                    let prev: &FreeModule = &terms[i - 1];
                    let c = (0..free.rank())
                        .map(|h| {
                            let key = free.gen_key(h);
                            let img = free.image_of_gen(&d, h, prev.module());
                            prev.decompose(key, &img)
                        })
                        .collect();
                    differentials.push(d);
                    coeffs.push(c);
                }
            }
            let (k, kinc) = free.module().submodule(&pres.kernel);
            terms.push(free);
            syzygies.push(k.clone());
            inclusion = Some(kinc);
            if k.is_zero() {
                complete = true;
                break;
            }
        }
    }
    ProjectiveResolution { module: m.clone(), terms, augmentation, differentials, coeffs, syzygies, complete }
}

impl ProjectiveResolution {
    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// Number of computed terms `P⁰, …`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `P^i`, or `None` beyond the computed range. Beyond the end of a complete resolution this is zero.
    pub fn term(&self, i: usize) -> Option<&FreeModule> {
        self.terms.get(i)
    }

    /// Whether `P^i` is known (possibly zero).
    pub fn knows(&self, i: usize) -> bool {
        i < self.terms.len() || self.complete
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    pub fn augmentation(&self) -> &GradedHom {
        &self.augmentation
    }

    /// `d_i : P^i → P^{i-1}` for `i ≥ 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedHom> {
        self.differentials.get(i.checked_sub(1)?)
    }

    /// Algebra-element matrix of `d_i`.
    pub fn coefficients(&self, i: usize) -> Option<&Vec<Vec<Vec<Scalar>>>> {
        self.coeffs.get(i.checked_sub(1)?)
    }

    pub fn syzygy(&self, i: usize) -> Option<&GradedModule> {
        self.syzygies.get(i)
    }

    /// Whether the resolution reached a zero syzygy.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// Generators `(v, shift)` of `P^i`.
    pub fn generators(&self, i: usize) -> Vec<FreeSummand> {
        self.terms.get(i).map(|t| t.gens().to_vec()).unwrap_or_default()
    }

    /// Sorted shifts of the generators of `P^i`.
    pub fn generator_degrees(&self, i: usize) -> Vec<i64> {
        let mut d: Vec<i64> = self.generators(i).iter().map(|g| g.1).collect();
        d.sort();
        d
    }

    /// All differential coefficients lie in `rad Λ`.
    pub fn is_minimal(&self) -> bool {
        let rad = self.module.algebra().radical_subspace();
        self.coeffs.iter().flatten().flatten().all(|a| a.iter().all(Zero::is_zero) || rad.contains(a))
    }

    /// `d_{i} ∘ d_{i+1} = 0`, `ε ∘ d_1 = 0`, and `ε` surjective.
    pub fn check(&self) -> bool {
        if self.terms.is_empty() {
            return self.module.is_zero();
        }
        if !self.augmentation.is_surjective(&self.module) || !self.augmentation.is_hom(self.terms[0].module(), &self.module) {
            return false;
        }
        for (i, d) in self.differentials.iter().enumerate() {
            let prev = if i == 0 { &self.augmentation } else { &self.differentials[i - 1] };
            if !d.then(prev).is_zero() {
                return false;
            }
        }
        true
    }
}
