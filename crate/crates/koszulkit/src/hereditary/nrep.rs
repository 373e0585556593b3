use super::nakayama::{indecomposable_injective, NuOrbit};
use crate::algebra::{gldim_upto, GldimVerdict, GradedAlgebra};
use crate::error::Result;
use crate::module::GradedModule;
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NRepMode {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NRepVerdict {
    Yes,
    No,
    NoWithinCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    pub projective: usize,
    /// Steps until `ν_n^{-m} P` is injective.
    pub m: Option<usize>,
    /// Vertex of that injective.
    pub endpoint: Option<usize>,
}

/// First nonvanishing `H^l(ν_n^{-j} A)` with `l ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyWitness {
    pub j: usize,
    pub l: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NRepReport {
    pub mode: NRepMode,
    pub n: usize,
    pub verdict: NRepVerdict,
    pub orbits: Vec<OrbitRecord>,
    /// Depth `J` checked for the infinite mode, orbit cap for the finite mode.
    pub depth: usize,
    pub gldim: GldimVerdict,
    pub witness: Option<CohomologyWitness>,
    pub reason: Option<String>,
}

impl NRepReport {
    pub fn passed(&self) -> bool {
        self.verdict == NRepVerdict::Yes
    }

    /// `π` with `ν_n^{-m_v} P_v ≅ I_{π(v)}` in a positive finite report.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        self.orbits.iter().map(|o| o.endpoint).collect()
    }

    pub fn orbit_lengths(&self) -> Option<Vec<usize>> {
        self.orbits.iter().map(|o| o.m).collect()
    }
}

fn gldim_ok(a: &Arc<GradedAlgebra>, n: usize) -> (GldimVerdict, bool) {
    let g = gldim_upto(a, n);
    (g, matches!(g, GldimVerdict::Exact(d) if d <= n))
}

/// Follows each `ν_n⁻¹`-orbit of an indecomposable projective until it reaches an injective.
/// The endpoints must exhaust the indecomposable injectives.
pub fn is_n_rep_finite(a: &Arc<GradedAlgebra>, n: usize, orbit_cap: usize) -> Result<NRepReport> {
    let (gldim, ok) = gldim_ok(a, n);
    let mut report = NRepReport {
        mode: NRepMode::Finite,
        n,
        verdict: NRepVerdict::No,
        orbits: Vec::new(),
        depth: orbit_cap,
        gldim,
        witness: None,
        reason: None,
    };
    if !ok {
        report.reason = Some(format!("global dimension exceeds {n}"));
        return Ok(report);
    }
    let mut capped = false;
    let mut failed: Option<String> = None;
    for v in 0..a.num_vertices() {
        let mut orbit = NuOrbit::new(&GradedModule::projective(a, v, 0), 0, n);
        let mut rec = OrbitRecord { projective: v, m: None, endpoint: None };
        for t in 0..=orbit_cap {
            let Some((x, s)) = orbit.term(t) else {
                failed.get_or_insert(format!("ν_n^-{t} P{} is not a stalk complex", v + 1));
                break;
            };
            if s != 0 {
                if let Some(c) = orbit.cohomology(t) {
                    let (&l, &dim) = c.iter().next().expect("nonzero stalk");
                    report.witness.get_or_insert(CohomologyWitness { j: t, l, dim });
                }
                failed.get_or_insert(format!("ν_n^-{t} P{} is a shifted stalk", v + 1));
                break;
            }
            if let Some((w, 0)) = indecomposable_injective(x) {
                rec.m = Some(t);
                rec.endpoint = Some(w);
                break;
            }
            if t == orbit_cap {
                capped = true;
                break;
            }
            orbit.advance()?;
        }
        report.orbits.push(rec);
    }
    if let Some(r) = failed {
        report.reason = Some(r);
        return Ok(report);
    }
    if capped {
        report.verdict = NRepVerdict::NoWithinCap;
        report.reason = Some(format!("some orbit reaches no injective within {orbit_cap} steps"));
        return Ok(report);
    }
    let mut ends: Vec<usize> = report.orbits.iter().filter_map(|o| o.endpoint).collect();
    ends.sort();
    if ends != (0..a.num_vertices()).collect::<Vec<_>>() {
        report.reason = Some("orbit endpoints do not exhaust the injectives".into());
        return Ok(report);
    }
    report.verdict = NRepVerdict::Yes;
    Ok(report)
}

/// Checks `gldim ≤ n` and `H^l(ν_n^{-j} A) = 0` for `l ≠ 0`, `0 ≤ j ≤ depth`.
pub fn is_n_rep_infinite_upto(a: &Arc<GradedAlgebra>, n: usize, depth: usize) -> Result<NRepReport> {
    let (gldim, ok) = gldim_ok(a, n);
    let mut report = NRepReport {
        mode: NRepMode::Infinite,
        n,
        verdict: NRepVerdict::No,
        orbits: Vec::new(),
        depth,
        gldim,
        witness: None,
        reason: None,
    };
    if !ok {
        report.reason = Some(format!("global dimension exceeds {n}"));
        return Ok(report);
    }
    let mut orbits: Vec<NuOrbit> = (0..a.num_vertices()).map(|v| NuOrbit::new(&GradedModule::projective(a, v, 0), 0, n)).collect();
    for j in 1..=depth {
        for (v, orbit) in orbits.iter_mut().enumerate() {
            orbit.advance()?;
            let c = orbit.cohomology(j).expect("previous term is a module");
            if let Some((&l, &dim)) = c.iter().find(|(l, _)| **l != 0) {
                report.witness = Some(CohomologyWitness { j, l, dim });
                report.reason = Some(format!("H^{l}(ν_n^-{j} P{}) has dimension {dim}", v + 1));
                return Ok(report);
            }
        }
    }
    report.verdict = NRepVerdict::Yes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;

    #[test]
    fn a2_is_representation_finite() {
        let a = Arc::new(a2());
        let r = is_n_rep_finite(&a, 1, 10).unwrap();
        assert!(r.passed(), "{:?}", r.reason);
        assert_eq!(r.orbit_lengths(), Some(vec![0, 1]));
        assert_eq!(r.permutation(), Some(vec![1, 0]));
    }

    #[test]
    fn semisimple_is_finite_with_zero_orbits() {
        let a = Arc::new(point());
        for n in 1..4 {
            let r = is_n_rep_finite(&a, n, 3).unwrap();
            assert!(r.passed());
            assert_eq!(r.orbit_lengths(), Some(vec![0]));
        }
    }

    #[test]
    fn kronecker_is_not_finite_within_cap() {
        let a = Arc::new(kronecker());
        assert_eq!(is_n_rep_finite(&a, 1, 10).unwrap().verdict, NRepVerdict::NoWithinCap);
    }

    #[test]
    fn kronecker_is_representation_infinite() {
        let a = Arc::new(kronecker());
        let r = is_n_rep_infinite_upto(&a, 1, 6).unwrap();
        assert!(r.passed(), "{:?}", r.reason);
    }

    #[test]
    fn a2_and_point_fail_at_first_step() {
        let a = Arc::new(a2());
        let r = is_n_rep_infinite_upto(&a, 1, 6).unwrap();
        assert_eq!(r.witness, Some(CohomologyWitness { j: 1, l: -1, dim: 1 }));
        let k = Arc::new(point());
        let r = is_n_rep_infinite_upto(&k, 1, 6).unwrap();
        assert_eq!(r.witness, Some(CohomologyWitness { j: 1, l: -1, dim: 1 }));
    }

    #[test]
    fn large_gldim_is_rejected() {
        let a = Arc::new(example_a());
        let r = is_n_rep_finite(&a, 1, 5).unwrap();
        assert_eq!(r.verdict, NRepVerdict::No);
        assert!(r.reason.unwrap().contains("global dimension"));
    }
}
