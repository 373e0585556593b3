use super::orthogonal::{validate_summands, ExtWitness, KoszulVerdict};
use super::ttilde::{frobenius_degree, TTilde};
use crate::error::{Error, Result};
use crate::hereditary::NRepReport;
use crate::homology::{ext_space, nonzero_window, projective_resolution, tilting_module_check, TiltingVerdict};
use crate::module::{cosyzygy, is_isomorphic, GradedHom, GradedModule, IsoVerdict};
use crate::algebra::GradedAlgebra;
use serde::Serialize;
use std::sync::Arc;

/// `μ(i)` with `T^i_μ ≅ T^{μ(i)}`, and the isomorphisms `T^i_μ → T^{μ(i)}`.
#[derive(Clone, Debug)]
pub struct MuPermutation {
    pub perm: Vec<usize>,
    pub certificates: Vec<GradedHom>,
    pub twisted: Vec<GradedModule>,
    pub probabilistic: bool,
}

pub fn mu_permutation(summands: &[GradedModule], seed: u64) -> Result<MuPermutation> {
    validate_summands(summands, seed)?;
    let alg = summands[0].algebra();
    let data = alg.frobenius().data().ok_or_else(|| Error::Precondition(format!("{} is not graded Frobenius", alg.name())))?;
    let mu = data.nakayama(alg);
    let mut out = MuPermutation { perm: Vec::new(), certificates: Vec::new(), twisted: Vec::new(), probabilistic: false };
    for (i, t) in summands.iter().enumerate() {
        let tw = t.twist(&mu)?;
        let mut found = None;
        for (j, s) in summands.iter().enumerate() {
            if tw.equals(s) {
                found = Some((j, GradedHom::identity(s)));
                break;
            }
            match is_isomorphic(&tw, s, seed) {
                IsoVerdict::Yes(f) => {
                    found = Some((j, f));
                    break;
                }
                IsoVerdict::NoProbabilistic => out.probabilistic = true,
                IsoVerdict::NoCertified(_) => {}
            }
        }
        let (j, f) = found.ok_or_else(|| Error::Precondition(format!("the Nakayama twist of summand {} is not a listed summand", i + 1)))?;
        out.perm.push(j);
        out.certificates.push(f);
        out.twisted.push(tw);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicVerdict {
    AlmostKoszul { g: i64, l: usize },
    /// Linear through the whole bound.
    Koszul,
    Neither(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicAlmostKoszul {
    pub verdict: ClassicVerdict,
    pub bound: usize,
    /// Sorted generator degrees of `P^0, P^1, …` in the resolution of `Λ₀`.
    pub generator_degrees: Vec<Vec<i64>>,
}

impl ClassicAlmostKoszul {
    pub fn params(&self) -> Option<(i64, usize)> {
        match self.verdict {
            ClassicVerdict::AlmostKoszul { g, l } => Some((g, l)),
            _ => None,
        }
    }
}

/// Resolves `Λ₀` and locates the first non-linear term `l + 1`, which must be generated in degree
/// `g + l` with `Ω^{l+1} Λ₀` concentrated there; `g` is the highest degree of `Λ`.
pub fn check_classic_almost_koszul(alg: &Arc<GradedAlgebra>, bound: usize) -> Result<ClassicAlmostKoszul> {
    if !alg.is_semisimple_degree_zero() {
        return Err(Error::Precondition("degree-zero part is not semisimple".into()));
    }
    let simples: Vec<GradedModule> = (0..alg.num_vertices()).map(|v| GradedModule::simple(alg, v, 0)).collect();
    let refs: Vec<&GradedModule> = simples.iter().collect();
    let top = GradedModule::direct_sum(&refs).module;
    let res = projective_resolution(&top, bound + 1);
    let g = alg.highest_degree();
    let generator_degrees: Vec<Vec<i64>> = (0..res.len()).map(|i| res.generator_degrees(i)).collect();
    let mut out = ClassicAlmostKoszul { verdict: ClassicVerdict::Koszul, bound, generator_degrees };
    for i in 1..res.len() {
        let degs = &out.generator_degrees[i];
        if degs.iter().all(|&d| d == i as i64) {
            continue;
        }
        if i == 1 {
            out.verdict = ClassicVerdict::Neither("first syzygy is not generated in degree 1".into());
            return Ok(out);
        }
        let l = i - 1;
        let target = g + l as i64;
        let omega = res.syzygy(i).expect("syzygy of a computed term");
        out.verdict = if degs.iter().all(|&d| d == target) && omega.is_concentrated_in(target) {
            ClassicVerdict::AlmostKoszul { g, l }
        } else {
            ClassicVerdict::Neither(format!("term {i} is not generated in degree {target} alone"))
        };
        return Ok(out);
    }
    Ok(out)
}

/// `Ω^{-l} T^i ≅ T^{target}⟨-g⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosyzygyHit {
    pub l: usize,
    pub g: i64,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandPeriod {
    pub summand: usize,
    /// All hits at the first `l` that has one.
    pub hits: Vec<CosyzygyHit>,
    /// Dimensions of `Ω^{-k} T^i` for `k ≤ l` (or up to the bound).
    pub chain_dims: Vec<usize>,
}

impl SummandPeriod {
    pub fn hit(&self) -> Option<CosyzygyHit> {
        (self.hits.len() == 1).then(|| self.hits[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostOrthogonality {
    pub verdict: KoszulVerdict,
    pub n: usize,
    pub l_max: usize,
    pub periods: Vec<SummandPeriod>,
    /// A nonzero `Ext^i(T, T^s⟨j⟩)` with `i ≠ nj`, `i < l_s`.
    pub counterexample: Option<(usize, ExtWitness)>,
    pub probabilistic: bool,
    pub reason: Option<String>,
}

impl AlmostOrthogonality {
    pub fn passed(&self) -> bool {
        self.verdict == KoszulVerdict::Pass
    }
}

/// Cosyzygy chains of the summands, each stopped at the first isomorphism with a shifted summand.
fn cosyzygy_chains(summands: &[GradedModule], l_max: usize, seed: u64) -> Result<(Vec<SummandPeriod>, Vec<Vec<GradedModule>>, bool)> {
    let mut periods = Vec::new();
    let mut chains = Vec::new();
    let mut probabilistic = false;
    for (i, t) in summands.iter().enumerate() {
        let mut chain = vec![t.clone()];
        let mut hits = Vec::new();
        for l in 1..=l_max {
            let x = cosyzygy(chain.last().expect("chain starts with T^i"))?;
            chain.push(x.clone());
            let (Some(lo), Some(hi)) = (x.lowest_degree(), x.highest_degree()) else { break };
            if lo != hi {
                continue;
            }
            for (j, s) in summands.iter().enumerate() {
                let cand = s.shift(lo);
                if cand.dims() != x.dims() {
                    continue;
                }
                match is_isomorphic(&x, &cand, seed) {
                    IsoVerdict::Yes(_) => hits.push(CosyzygyHit { l, g: -lo, target: j }),
                    IsoVerdict::NoProbabilistic => probabilistic = true,
                    IsoVerdict::NoCertified(_) => {}
                }
            }
            if !hits.is_empty() {
                break;
            }
        }
        periods.push(SummandPeriod { summand: i, hits, chain_dims: chain.iter().map(GradedModule::dim).collect() });
        chains.push(chain);
    }
    Ok((periods, chains, probabilistic))
}

pub fn check_almost_self_orthogonal(summands: &[GradedModule], n: usize, l_max: usize, seed: u64) -> Result<AlmostOrthogonality> {
    Ok(almost_with_chains(summands, n, l_max, seed)?.0)
}

fn almost_with_chains(
    summands: &[GradedModule],
    n: usize,
    l_max: usize,
    seed: u64,
) -> Result<(AlmostOrthogonality, Vec<Vec<GradedModule>>)> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let probabilistic = validate_summands(summands, seed)?;
    frobenius_degree(&summands[0])?;
    let (periods, chains, p2) = cosyzygy_chains(summands, l_max, seed)?;
    let mut report = AlmostOrthogonality {
        verdict: KoszulVerdict::Inconclusive,
        n,
        l_max,
        periods,
        counterexample: None,
        probabilistic: probabilistic || p2,
        reason: None,
    };
    for p in &report.periods {
        match p.hits.len() {
            0 => {
                report.reason = Some(format!("no cosyzygy of summand {} within {l_max} steps is a shifted summand", p.summand + 1));
                return Ok((report, chains));
            }
            1 => {}
            _ => {
                report.reason = Some(format!("summand {} has several candidate periods: {:?}", p.summand + 1, p.hits));
                return Ok((report, chains));
            }
        }
    }
    let l_top = report.periods.iter().map(|p| p.hits[0].l).max().unwrap_or(0);
    let resolutions: Vec<_> = summands.iter().map(|t| projective_resolution(t, l_top + 1)).collect();
    for p in &report.periods {
        let target = &summands[p.summand];
        for i in 0..p.hits[0].l {
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for res in &resolutions {
                if let Some((l, h)) = nonzero_window(res, target, i) {
                    lo = lo.min(l);
                    hi = hi.max(h);
                }
            }
            for j in lo..=hi {
                if i as i64 == n as i64 * j {
                    continue;
                }
                let mut dim = 0;
                for res in &resolutions {
                    dim += ext_space(res, target, i, j)?.dim();
                }
                if dim > 0 {
                    report.verdict = KoszulVerdict::Fail;
                    report.counterexample = Some((p.summand, ExtWitness { i, j, dim }));
                    report.reason = Some(format!("Ext^{i}(T, T^{}<{j}>) has dimension {dim}", p.summand + 1));
                    return Ok((report, chains));
                }
            }
        }
    }
    report.verdict = KoszulVerdict::Pass;
    Ok((report, chains))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostParams {
    pub n: usize,
    pub a: usize,
    pub l: Vec<usize>,
    pub g: Vec<i64>,
    pub m: Vec<usize>,
    pub sigma: Vec<usize>,
    pub pi: Vec<usize>,
    pub mu: Vec<usize>,
    /// `sigma_r[i][j] = σ_i^R(j)`
    pub sigma_r: Vec<Vec<usize>>,
    /// `m_ij[i][j] = m_{i,j}`
    pub m_ij: Vec<Vec<usize>>,
    /// `sigma_l[j][i] = σ_j^L(i)`
    pub sigma_l: Vec<Vec<usize>>,
}

/// Solves `l = n(g - a) + 1`, `g = a(m + 1) - σ` with `0 ≤ σ < a`, `m ≥ 0`.
pub fn solve_m_sigma(n: usize, a: usize, l: usize, g: i64) -> Option<(usize, usize)> {
    let (n, a, l) = (n as i64, a as i64, l as i64);
    if g < 1 || l != n * (g - a) + 1 {
        return None;
    }
    let m1 = (g + a - 1) / a;
    let sigma = a * m1 - g;
    let m = m1 - 1;
    (m >= 0 && (0..a).contains(&sigma) && l == n * a * m - n * sigma + 1).then_some((m as usize, sigma as usize))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

impl AlmostParams {
    /// Fills the derived tables from `m`, `σ`, `π`, `μ`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(n: usize, a: usize, l: Vec<usize>, g: Vec<i64>, m: Vec<usize>, sigma: Vec<usize>, pi: Vec<usize>, mu: Vec<usize>) -> Self {
        let t = m.len();
        let mu_inv = invert(&mu);
        let mut sigma_r = vec![vec![0; a]; t];
        let mut m_ij = vec![vec![0; a]; t];
        let mut sigma_l = vec![vec![0; t]; a];
        for i in 0..t {
            for j in 0..a {
                let r = if sigma[i] + j < a { sigma[i] + j } else { sigma[i] + j - a };
                sigma_r[i][j] = r;
                m_ij[i][j] = if j <= r { m[i] } else { m[i] - 1 };
                let mut v = pi[i];
                for _ in 0..=m_ij[i][j] {
                    v = mu_inv[v];
                }
                sigma_l[j][i] = v;
            }
        }
        AlmostParams { n, a, l, g, m, sigma, pi, mu, sigma_r, m_ij, sigma_l }
    }

    /// Violations of `g ≥ a`, `m = 0 ⇒ σ = 0`, `π μ = μ π`, `l ∘ μ = l`, `g ∘ μ = g`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.m.len() {
            if self.g[i] < self.a as i64 {
                out.push(format!("g_{} < a", i + 1));
            }
            if self.m[i] == 0 && self.sigma[i] != 0 {
                out.push(format!("m_{} = 0 but sigma_{} != 0", i + 1, i + 1));
            }
            if self.pi[self.mu[i]] != self.mu[self.pi[i]] {
                out.push(format!("pi and mu do not commute at {}", i + 1));
            }
            if self.l[self.mu[i]] != self.l[i] || self.g[self.mu[i]] != self.g[i] {
                out.push(format!("l or g is not mu-invariant at {}", i + 1));
            }
        }
        out
    }

    /// Mismatches against the `ν_{na-1}^{-1}`-orbits of `B`, whose vertices are the summands of `T̃`.
    pub fn orbit_mismatches(&self, tt: &TTilde, orbits: &NRepReport) -> Vec<String> {
        let mut out = Vec::new();
        for rec in &orbits.orbits {
            let (i, j) = tt.index[rec.projective];
            let (Some(m), Some(e)) = (rec.m, rec.endpoint) else {
                out.push(format!("orbit of P{} does not end at an injective", rec.projective + 1));
                continue;
            };
            let (i2, j2) = tt.index[e];
            if m != self.m_ij[i][j] {
                out.push(format!("m_({},{}) = {} but the orbit has length {m}", i + 1, j, self.m_ij[i][j]));
            }
            if (i2, j2) != (self.sigma_l[j][i], self.sigma_r[i][j]) {
                out.push(format!(
                    "sigma({},{}) = ({},{}) but the orbit ends at ({},{})",
                    i + 1,
                    j,
                    self.sigma_l[j][i] + 1,
                    self.sigma_r[i][j],
                    i2 + 1,
                    j2
                ));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NMSigmaReport {
    pub verdict: KoszulVerdict,
    pub params: Option<AlmostParams>,
    pub almost: AlmostOrthogonality,
    pub tilting: Option<TiltingVerdict>,
    /// `(summand, l, g)` without an admissible `(m, σ)`.
    pub stray: Vec<(usize, usize, i64)>,
    /// A shifted summand hit `Ω^{-nk} T^i ≅ T'⟨-k⟩` with `0 < nk < l_i`, as `(i, k)`.
    pub minimality_violation: Option<(usize, usize)>,
    pub probabilistic: bool,
    pub reason: Option<String>,
}

impl NMSigmaReport {
    pub fn passed(&self) -> bool {
        self.verdict == KoszulVerdict::Pass
    }
}

/// Checks `(n, m_i, σ_i)`-Koszulity of `Λ` with respect to `T`, returning the parameters on success.
pub fn check_n_m_sigma_koszul(summands: &[GradedModule], n: usize, l_max: usize, seed: u64) -> Result<NMSigmaReport> {
    let (almost, chains) = almost_with_chains(summands, n, l_max, seed)?;
    let a = frobenius_degree(&summands[0])?;
    let mut report = NMSigmaReport {
        verdict: KoszulVerdict::Inconclusive,
        params: None,
        probabilistic: almost.probabilistic,
        almost,
        tilting: None,
        stray: Vec::new(),
        minimality_violation: None,
        reason: None,
    };
    if !report.almost.passed() {
        report.verdict = report.almost.verdict;
        report.reason = report.almost.reason.clone();
        return Ok(report);
    }
    let restricted = summands.iter().map(GradedModule::restrict_to_degree_zero).collect::<Result<Vec<_>>>()?;
    let tilting = tilting_module_check(&restricted, seed)?;
    report.probabilistic |= tilting.probabilistic;
    report.tilting = Some(tilting.verdict.clone());
    match tilting.verdict {
        TiltingVerdict::Tilting => {}
        TiltingVerdict::NotTilting(why) => {
            report.verdict = KoszulVerdict::Fail;
            report.reason = Some(format!("not tilting over the degree-zero part: {why}"));
            return Ok(report);
        }
        TiltingVerdict::Inconclusive(why) => {
            report.reason = Some(format!("tilting check inconclusive: {why}"));
            return Ok(report);
        }
    }
    let hits: Vec<CosyzygyHit> = report.almost.periods.iter().map(|p| p.hits[0]).collect();
    let mut m = Vec::new();
    let mut sigma = Vec::new();
    for (i, h) in hits.iter().enumerate() {
        match solve_m_sigma(n, a, h.l, h.g) {
            Some((mi, si)) => {
                m.push(mi);
                sigma.push(si);
            }
            None => report.stray.push((i, h.l, h.g)),
        }
    }
    if !report.stray.is_empty() {
        report.verdict = KoszulVerdict::Fail;
        report.reason = Some(format!("(l, g) without admissible (m, sigma): {:?}", report.stray));
        return Ok(report);
    }
    for (i, h) in hits.iter().enumerate() {
        let mut k = 1;
        while n * k < h.l {
            let x = &chains[i][n * k];
            if x.is_concentrated_in(-(k as i64)) {
                let found = summands.iter().any(|s| {
                    let c = s.shift(-(k as i64));
                    c.dims() == x.dims() && is_isomorphic(x, &c, seed).is_yes()
                });
                if found {
                    report.verdict = KoszulVerdict::Fail;
                    report.minimality_violation = Some((i, k));
                    report.reason = Some(format!("cosyzygy {} of summand {} is already a shifted summand", n * k, i + 1));
                    return Ok(report);
                }
            }
            k += 1;
        }
    }
    let pi: Vec<usize> = hits.iter().map(|h| h.target).collect();
    let mut sorted = pi.clone();
    sorted.sort();
    if sorted != (0..pi.len()).collect::<Vec<_>>() {
        return Err(Error::Internal(format!("period targets {pi:?} do not form a permutation")));
    }
    let mu = mu_permutation(summands, seed)?;
    report.probabilistic |= mu.probabilistic;
    let params = AlmostParams::new(n, a, hits.iter().map(|h| h.l).collect(), hits.iter().map(|h| h.g).collect(), m, sigma, pi, mu.perm);
    let bad = params.invariant_violations();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("parameter invariants fail: {}", bad.join("; "))));
    }
    report.params = Some(params);
    report.verdict = KoszulVerdict::Pass;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hereditary::is_n_rep_finite;
    use crate::koszul::tests_support::*;
    use crate::koszul::{build_t_tilde, stable_endomorphism_algebra};

    #[test]
    fn mu_on_symmetric_and_nakayama() {
        assert_eq!(mu_permutation(&example_t(), 0).unwrap().perm, vec![0, 1, 2, 3]);
        let alg = Arc::new(cyclic_nakayama());
        let t: Vec<_> = (0..2).map(|v| GradedModule::simple(&alg, v, 0)).collect();
        assert_eq!(mu_permutation(&t, 0).unwrap().perm, vec![1, 0]);
    }

    #[test]
    fn classic_almost_koszul() {
        let c = check_classic_almost_koszul(&Arc::new(cubic()), 6).unwrap();
        assert_eq!(c.params(), Some((2, 1)));
        assert_eq!(c.generator_degrees[..3], [vec![0], vec![1], vec![3]]);
        let d = check_classic_almost_koszul(&Arc::new(dual_numbers()), 6).unwrap();
        assert_eq!(d.verdict, ClassicVerdict::Koszul);
        let e = Arc::new(crate::algebra::trivial_extension(&example_a()).unwrap());
        assert!(check_classic_almost_koszul(&e, 4).is_err());
    }

    #[test]
    fn periods() {
        let r = check_almost_self_orthogonal(&delta_t(&a2()), 2, 8, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        let hits: Vec<_> = r.periods.iter().map(|p| p.hit().unwrap()).collect();
        assert_eq!(hits, vec![CosyzygyHit { l: 1, g: 1, target: 1 }, CosyzygyHit { l: 3, g: 2, target: 0 }]);
        let c = check_almost_self_orthogonal(&cubic_t(), 1, 8, 0).unwrap();
        assert_eq!(c.periods[0].hit(), Some(CosyzygyHit { l: 2, g: 3, target: 0 }));
        let d = check_almost_self_orthogonal(&dual_numbers_t(), 1, 8, 0).unwrap();
        assert_eq!(d.periods[0].hit(), Some(CosyzygyHit { l: 1, g: 1, target: 0 }));
    }

    #[test]
    fn solving_parameters() {
        assert_eq!(solve_m_sigma(2, 1, 1, 1), Some((0, 0)));
        assert_eq!(solve_m_sigma(2, 1, 3, 2), Some((1, 0)));
        assert_eq!(solve_m_sigma(1, 2, 2, 3), Some((1, 1)));
        assert_eq!(solve_m_sigma(1, 2, 3, 3), None);
        for n in 1..4 {
            for a in 1..4 {
                for m in 0..4 {
                    for s in 0..a {
                        if m == 0 && s > 0 {
                            continue;
                        }
                        let l = n * a * m + 1 - n * s;
                        let g = (a * (m + 1) - s) as i64;
                        assert_eq!(solve_m_sigma(n, a, l, g), Some((m, s)));
                    }
                }
            }
        }
    }

    #[test]
    fn full_chain_on_delta_a2() {
        let t = delta_t(&a2());
        let r = check_n_m_sigma_koszul(&t, 2, 8, 0).unwrap();
        let p = r.params.expect("parameters");
        assert_eq!((p.m.clone(), p.sigma.clone(), p.l.clone(), p.g.clone(), p.pi.clone()), (vec![0, 1], vec![0, 0], vec![1, 3], vec![1, 2], vec![1, 0]));
        let tt = build_t_tilde(&t, 2).unwrap();
        let b = stable_endomorphism_algebra(&tt, &t).unwrap();
        let orbits = is_n_rep_finite(&b.algebra, 1, 10).unwrap();
        assert!(orbits.passed());
        assert_eq!(orbits.orbit_lengths(), Some(vec![0, 1]));
        assert!(p.orbit_mismatches(&tt, &orbits).is_empty(), "{:?}", p.orbit_mismatches(&tt, &orbits));
    }

    #[test]
    fn full_chain_on_cubic() {
        let t = cubic_t();
        let r = check_n_m_sigma_koszul(&t, 1, 8, 0).unwrap();
        let p = r.params.expect("parameters");
        assert_eq!((p.m.clone(), p.sigma.clone()), (vec![1], vec![1]));
        assert_eq!(p.sigma_r, vec![vec![1, 0]]);
        assert_eq!(p.m_ij, vec![vec![1, 0]]);
        let tt = build_t_tilde(&t, 1).unwrap();
        let b = stable_endomorphism_algebra(&tt, &t).unwrap();
        let orbits = is_n_rep_finite(&b.algebra, 1, 10).unwrap();
        assert!(orbits.passed());
        assert!(p.orbit_mismatches(&tt, &orbits).is_empty(), "{:?}", p.orbit_mismatches(&tt, &orbits));
    }

    #[test]
    fn example_has_no_period() {
        let r = check_n_m_sigma_koszul(&example_t(), 2, 4, 0).unwrap();
        assert!(!r.passed());
        assert!(r.params.is_none());
    }
}
