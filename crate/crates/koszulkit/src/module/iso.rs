use super::{hom_space, GradedHom, GradedModule};
use crate::linalg::{int, Matrix, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 64;

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Yes(GradedHom),
    NoCertified(String),
    /// No invertible combination of a Hom basis was found by sampling.
    NoProbabilistic,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_probabilistic(&self) -> bool {
        matches!(self, IsoVerdict::NoProbabilistic)
    }

    pub fn certificate(&self) -> Option<&GradedHom> {
        match self {
            IsoVerdict::Yes(f) => Some(f),
            _ => None,
        }
    }
}

pub fn is_isomorphic(m: &GradedModule, n: &GradedModule, seed: u64) -> IsoVerdict {
    if m.dims() != n.dims() {
        return IsoVerdict::NoCertified("graded dimension vectors differ".into());
    }
    if m.is_zero() {
        return IsoVerdict::Yes(GradedHom::zero());
    }
    let h = hom_space(m, n);
    if h.is_zero() {
        return IsoVerdict::NoCertified("no nonzero homomorphisms".into());
    }
    let e = hom_space(m, m);
    if h.dim() != e.dim() {
        return IsoVerdict::NoCertified(format!("dim Hom(M,N) = {} but dim End(M) = {}", h.dim(), e.dim()));
    }
    if h.dim() == 1 {
        let f = &h.basis[0];
        return if f.is_iso(m, n) { IsoVerdict::Yes(f.clone()) } else { IsoVerdict::NoCertified("one-dimensional Hom without an isomorphism".into()) };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let c: Vec<Scalar> = (0..h.dim()).map(|_| int(rng.gen_range(-5..=5))).collect();
        let f = h.combination(&c);
        if f.is_iso(m, n) {
            return IsoVerdict::Yes(f);
        }
    }
    IsoVerdict::NoProbabilistic
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IndecomposableVerdict {
    pub indecomposable: bool,
    pub end_dim: usize,
    /// `dim End(M) / rad End(M)`
    pub top_dim: usize,
}

/// `End(M)/rad` via the trace form `tr(F_i F_j)`; indecomposable iff this is 1-dimensional.
pub fn is_indecomposable(m: &GradedModule) -> IndecomposableVerdict {
    let e = hom_space(m, m);
    let n = e.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = e.basis[i].then(&e.basis[j]);
            let t: Scalar = p.blocks().values().map(Matrix::trace).fold(int(0), |a, b| a + b);
            g.set(i, j, t);
        }
    }
    let top = g.rank();
    IndecomposableVerdict { indecomposable: !m.is_zero() && top == 1, end_dim: n, top_dim: top }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn simple_is_indecomposable_and_sum_is_not() {
        let alg = Arc::new(a2());
        let s = GradedModule::simple(&alg, 0, 0);
        assert!(is_indecomposable(&s).indecomposable);
        let ss = GradedModule::direct_sum(&[&s, &s]).module;
        let v = is_indecomposable(&ss);
        assert_eq!((v.indecomposable, v.end_dim, v.top_dim), (false, 4, 4));
    }

    #[test]
    fn iso_verdicts() {
        let alg = Arc::new(a2());
        let s1 = GradedModule::simple(&alg, 0, 0);
        let s2 = GradedModule::simple(&alg, 1, 0);
        assert!(is_isomorphic(&s1, &s1, 0).is_yes());
        assert!(matches!(is_isomorphic(&s1, &s2, 0), IsoVerdict::NoCertified(_)));
        let p = GradedModule::projective(&alg, 0, 0);
        let sum = GradedModule::direct_sum(&[&s1, &s2]).module;
        assert!(matches!(is_isomorphic(&p, &sum, 0), IsoVerdict::NoCertified(_)));
    }
}
