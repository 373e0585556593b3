use crate::algebra::{gldim_upto, GldimVerdict};
use crate::error::{Error, Result};
use crate::homology::{ext_space, nonzero_window, projective_resolution, tilting_module_check, TiltingVerdict};
use crate::module::{is_isomorphic, GradedModule, IsoVerdict};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulVerdict {
    Pass,
    PassUpToBound,
    Fail,
    Inconclusive,
}

/// A nonzero `Ext^i(T, T⟨j⟩)` summed over all pairs of summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtWitness {
    pub i: usize,
    pub j: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub verdict: KoszulVerdict,
    pub n: usize,
    pub i_max: usize,
    /// Internal degrees `j` always scanned; rows may extend it where cochains exist.
    pub window: (i64, i64),
    pub counterexample: Option<ExtWitness>,
    pub tilting: Option<TiltingVerdict>,
    pub gldim_degree_zero: Option<GldimVerdict>,
    pub probabilistic: bool,
    pub reason: Option<String>,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, KoszulVerdict::Pass | KoszulVerdict::PassUpToBound)
    }
}

/// Summands must be nonzero, over one algebra, in degree 0 and pairwise non-isomorphic.
pub(crate) fn validate_summands(summands: &[GradedModule], seed: u64) -> Result<bool> {
    let Some(first) = summands.first() else {
        return Err(Error::Input("no summands given".into()));
    };
    let alg = first.algebra();
    let mut probabilistic = false;
    for (i, t) in summands.iter().enumerate() {
        if !t.algebra().same_as(alg) {
            return Err(Error::Input("summands over different algebras".into()));
        }
        if t.is_zero() {
            return Err(Error::Input(format!("summand {} is zero", i + 1)));
        }
        if !t.is_concentrated_in(0) {
            return Err(Error::Precondition(format!("summand {} is not concentrated in degree 0", i + 1)));
        }
        for (j, s) in summands.iter().enumerate().take(i) {
            match is_isomorphic(s, t, seed) {
                IsoVerdict::Yes(_) => {
                    return Err(Error::Precondition(format!("summands {} and {} are isomorphic", j + 1, i + 1)));
                }
                IsoVerdict::NoProbabilistic => probabilistic = true,
                IsoVerdict::NoCertified(_) => {}
            }
        }
    }
    Ok(probabilistic)
}

fn ceil_div(x: i64, n: i64) -> i64 {
    x.div_euclid(n) + i64::from(x.rem_euclid(n) != 0)
}

/// Scans `Ext^i(T, T⟨j⟩)` for `i ≤ i_max` and reports the first nonzero entry with `i ≠ nj`.
pub fn check_self_orthogonal(summands: &[GradedModule], n: usize, i_max: usize) -> Result<KoszulReport> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let probabilistic = validate_summands(summands, 0)?;
    scan_self_orthogonal(summands, n, i_max, probabilistic)
}

fn scan_self_orthogonal(summands: &[GradedModule], n: usize, i_max: usize, probabilistic: bool) -> Result<KoszulReport> {
    let alg = summands[0].algebra();
    let a = alg.highest_degree();
    let ni = n as i64;
    let window = (ceil_div(-(i_max as i64), ni) - a, ceil_div(i_max as i64, ni) + a);
    let resolutions: Vec<_> = summands.iter().map(|t| projective_resolution(t, i_max + 1)).collect();
    let mut report = KoszulReport {
        verdict: KoszulVerdict::PassUpToBound,
        n,
        i_max,
        window,
        counterexample: None,
        tilting: None,
        gldim_degree_zero: None,
        probabilistic,
        reason: None,
    };
    for i in 0..=i_max {
        let mut lo = window.0;
        let mut hi = window.1;
        for res in &resolutions {
            for t in summands {
                if let Some((l, h)) = nonzero_window(res, t, i) {
                    lo = lo.min(l);
                    hi = hi.max(h);
                }
            }
        }
        for j in lo..=hi {
            if i as i64 == ni * j {
                continue;
            }
            let mut dim = 0;
            for res in &resolutions {
                for t in summands {
                    dim += ext_space(res, t, i, j)?.dim();
                }
            }
            if dim > 0 {
                report.verdict = KoszulVerdict::Fail;
                report.counterexample = Some(ExtWitness { i, j, dim });
                report.reason = Some(format!("Ext^{i}(T, T<{j}>) has dimension {dim}"));
                return Ok(report);
            }
        }
    }
    if resolutions.iter().all(|r| r.projective_dimension().is_some_and(|d| d <= i_max)) {
        report.verdict = KoszulVerdict::Pass;
    }
    Ok(report)
}

/// `T` restricted to `Λ₀` is tilting and `T` is graded `n`-self-orthogonal up to `i_max`.
pub fn check_n_t_koszul(summands: &[GradedModule], n: usize, i_max: usize, seed: u64) -> Result<KoszulReport> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let probabilistic = validate_summands(summands, seed)?;
    let alg = summands[0].algebra();
    let a0 = alg.degree_zero();
    let bound = i_max.max(a0.num_vertices());
    let gldim = gldim_upto(&a0, bound);
    let base = KoszulReport {
        verdict: KoszulVerdict::Inconclusive,
        n,
        i_max,
        window: (0, 0),
        counterexample: None,
        tilting: None,
        gldim_degree_zero: Some(gldim),
        probabilistic,
        reason: None,
    };
    if let GldimVerdict::AtLeast(b) = gldim {
        return Ok(KoszulReport { reason: Some(format!("gldim of the degree-zero part is at least {b}")), ..base });
    }
    let restricted = summands.iter().map(GradedModule::restrict_to_degree_zero).collect::<Result<Vec<_>>>()?;
    let tilting = tilting_module_check(&restricted, seed)?;
    let probabilistic = probabilistic || tilting.probabilistic;
    match &tilting.verdict {
        TiltingVerdict::Tilting => {}
        TiltingVerdict::NotTilting(why) => {
            return Ok(KoszulReport {
                verdict: KoszulVerdict::Fail,
                tilting: Some(tilting.verdict.clone()),
                probabilistic,
                reason: Some(format!("not tilting over the degree-zero part: {why}")),
                ..base
            });
        }
        TiltingVerdict::Inconclusive(why) => {
            return Ok(KoszulReport {
                tilting: Some(tilting.verdict.clone()),
                probabilistic,
                reason: Some(format!("tilting check inconclusive: {why}")),
                ..base
            });
        }
    }
    let mut report = scan_self_orthogonal(summands, n, i_max, probabilistic)?;
    report.tilting = Some(tilting.verdict);
    report.gldim_degree_zero = Some(gldim);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::tests_support::*;

    #[test]
    fn ceil_division() {
        assert_eq!((ceil_div(-7, 2), ceil_div(7, 2), ceil_div(6, 2), ceil_div(-6, 2)), (-3, 4, 3, -3));
    }

    #[test]
    fn dual_numbers_are_koszul() {
        let r = check_self_orthogonal(&dual_numbers_t(), 1, 8).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::PassUpToBound);
        let r = check_n_t_koszul(&dual_numbers_t(), 1, 8, 0).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn example_is_two_koszul_not_one() {
        let t = example_t();
        let r = check_n_t_koszul(&t, 2, 6, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_self_orthogonal(&t, 1, 6).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::Fail);
        let w = r.counterexample.unwrap();
        assert_eq!((w.i, w.j), (2, 1));
        assert!(w.dim > 0);
    }

    #[test]
    fn trivial_extensions_of_hereditary_algebras() {
        let r = check_n_t_koszul(&delta_t(&kronecker()), 2, 6, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = check_n_t_koszul(&delta_t(&a2()), 2, 6, 0).unwrap();
        assert_eq!(r.verdict, KoszulVerdict::Fail);
        let w = r.counterexample.unwrap();
        assert_eq!((w.i, w.j), (1, 1));
    }

    #[test]
    fn rejects_shifted_or_repeated_summands() {
        let t = dual_numbers_t();
        assert!(check_self_orthogonal(&[t[0].shift(1)], 1, 2).is_err());
        assert!(check_self_orthogonal(&[t[0].clone(), t[0].clone()], 1, 2).is_err());
    }
}
