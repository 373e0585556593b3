use super::nakayama::NuOrbit;
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::module::{omega, stable_hom, GradedModule};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SerreRow {
    pub i: usize,
    pub l: i64,
    /// `dim Hom_stgr(T̃, Ω^{-(nai+l)} T̃⟨ai⟩)`
    pub stable: usize,
    /// `dim H^l(ν_{na-1}^{-i} B)`
    pub derived: usize,
}

impl SerreRow {
    pub fn holds(&self) -> bool {
        self.stable == self.derived
    }
}

/// Compares stable Homs between shifted cosyzygies of `T̃` over `Λ` with the cohomology of
/// `ν_{na-1}^{-i} B` for `i ≤ i_max`, `|l| ≤ l_max`. `t_tilde` lists the summands of `T̃`.
pub fn serre_dimension_identity(
    t_tilde: &[GradedModule],
    b: &Arc<GradedAlgebra>,
    n: usize,
    a: usize,
    i_max: usize,
    l_max: i64,
) -> Result<Vec<SerreRow>> {
    if n * a == 0 {
        return Err(Error::Input("n and a must be positive".into()));
    }
    let na = (n * a) as i64;
    let mut orbits: Vec<NuOrbit> = (0..b.num_vertices()).map(|v| NuOrbit::new(&GradedModule::projective(b, v, 0), 0, n * a - 1)).collect();
    let mut rows = Vec::new();
    for i in 0..=i_max {
        let mut derived: BTreeMap<i64, usize> = BTreeMap::new();
        for (v, orbit) in orbits.iter_mut().enumerate() {
            if i > 0 && orbit.len() < i && !orbit.advance()? {
                return Err(Error::Precondition(format!("ν^-{} P{} is not a stalk complex", i - 1, v + 1)));
            }
            let c = orbit.cohomology(i).ok_or_else(|| Error::Precondition(format!("ν^-{} P{} is not a stalk complex", i - 1, v + 1)))?;
            for (l, d) in c {
                *derived.entry(l).or_insert(0) += d;
            }
        }
        for l in -l_max..=l_max {
            let k = -(na * i as i64 + l);
            let mut stable = 0;
            for t in t_tilde {
                let target = omega(t, k)?.shift(a as i64 * i as i64);
                for s in t_tilde {
                    stable += stable_hom(s, &target).dim();
                }
            }
            rows.push(SerreRow { i, l, stable, derived: derived.get(&l).copied().unwrap_or(0) });
        }
    }
    Ok(rows)
}
