use super::orthogonal::validate_summands;
use crate::error::{Error, Result};
use crate::module::{cosyzygy, stable_hom, syzygy, GradedModule};
use serde::Serialize;

/// `T̃ = ⊕_{j<a} Ω^{-nj} T⟨j⟩`, one summand `X^{i,j} = Ω^{-nj} T^i⟨j⟩` per pair.
#[derive(Clone, Debug)]
pub struct TTilde {
    pub n: usize,
    pub a: usize,
    pub summands: Vec<GradedModule>,
    /// `index[p] = (i, j)` for summand `p`; ordered by `j`, then `i`.
    pub index: Vec<(usize, usize)>,
    /// Number of summands of `T`.
    pub t: usize,
}

impl TTilde {
    pub fn position(&self, i: usize, j: usize) -> usize {
        j * self.t + i
    }

    pub fn module(&self) -> GradedModule {
        let refs: Vec<&GradedModule> = self.summands.iter().collect();
        GradedModule::direct_sum(&refs).module
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(GradedModule::dim).collect()
    }
}

/// Highest degree `a` of a graded Frobenius algebra.
pub(crate) fn frobenius_degree(m: &GradedModule) -> Result<usize> {
    let data = m
        .algebra()
        .frobenius()
        .data()
        .ok_or_else(|| Error::Precondition(format!("{} is not graded Frobenius", m.algebra().name())))?;
    if data.a < 1 {
        return Err(Error::Precondition("highest degree must be at least 1".into()));
    }
    Ok(data.a as usize)
}

pub fn build_t_tilde(summands: &[GradedModule], n: usize) -> Result<TTilde> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    validate_summands(summands, 0)?;
    let a = frobenius_degree(&summands[0])?;
    let t = summands.len();
    let mut out = Vec::with_capacity(a * t);
    let mut index = Vec::with_capacity(a * t);
    let mut current: Vec<GradedModule> = summands.to_vec();
    for j in 0..a {
        if j > 0 {
            for x in current.iter_mut() {
                for _ in 0..n {
                    *x = cosyzygy(x)?;
                }
            }
        }
        for (i, x) in current.iter().enumerate() {
            if x.is_zero() {
                return Err(Error::Precondition(format!("summand {} of T is projective", i + 1)));
            }
            out.push(x.shift(j as i64));
            index.push((i, j));
        }
    }
    Ok(TTilde { n, a, summands: out, index, t })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub passed: bool,
    pub l_bound: usize,
    /// First `(l, dim Hom_stgr(T̃, Ω^{-l} T̃))` that is nonzero.
    pub failure: Option<(i64, usize)>,
    /// Generation of the stable category is not checked.
    pub generation_checked: bool,
}

/// `Hom_stgr(T̃, Ω^{-l} T̃) = 0` for `0 < |l| ≤ l_bound`, trying `l = 1, -1, 2, -2, …`.
pub fn rigidity_check(summands: &[GradedModule], l_bound: usize) -> Result<RigidityReport> {
    let mut up: Vec<GradedModule> = summands.to_vec();
    let mut down: Vec<GradedModule> = summands.to_vec();
    let mut report = RigidityReport { passed: true, l_bound, failure: None, generation_checked: false };
    for l in 1..=l_bound as i64 {
        for x in up.iter_mut() {
            *x = cosyzygy(x)?;
        }
        for x in down.iter_mut() {
            *x = syzygy(x);
        }
        for (shift, targets) in [(l, &up), (-l, &down)] {
            let dim: usize = targets.iter().map(|y| summands.iter().map(|s| stable_hom(s, y).dim()).sum::<usize>()).sum();
            if dim > 0 {
                report.passed = false;
                report.failure = Some((shift, dim));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

pub fn default_rigidity_bound(n: usize, a: usize) -> usize {
    2 * n * a + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn a_equal_one_gives_t() {
        let t = example_t();
        let tt = build_t_tilde(&t, 2).unwrap();
        assert_eq!(tt.a, 1);
        assert_eq!(tt.summands.len(), 4);
        assert!(tt.summands.iter().zip(&t).all(|(x, y)| x.equals(y)));
    }

    #[test]
    fn cubic_t_tilde() {
        let tt = build_t_tilde(&cubic_t(), 1).unwrap();
        assert_eq!(tt.dims(), vec![1, 2]);
        assert_eq!(tt.index, vec![(0, 0), (0, 1)]);
        let x = &tt.summands[1];
        assert_eq!(x.dims().keys().map(|k| k.0).collect::<Vec<_>>(), vec![-1, 0]);
    }

    #[test]
    fn rigidity() {
        let tt = build_t_tilde(&example_t(), 2).unwrap();
        assert!(rigidity_check(&tt.summands, default_rigidity_bound(2, 1)).unwrap().passed);
        let delta = delta_t(&kronecker());
        assert!(rigidity_check(&delta, 6).unwrap().passed);
        let cubic = build_t_tilde(&cubic_t(), 1).unwrap();
        assert!(rigidity_check(&cubic.summands, 6).unwrap().passed);
    }

    #[test]
    fn misspecified_sum_is_not_rigid() {
        let alg = Arc::new(dual_numbers());
        let k = GradedModule::simple(&alg, 0, 0);
        let r = rigidity_check(&[k.clone(), k.shift(1)], 6).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failure.unwrap().0, 1);
    }
}
