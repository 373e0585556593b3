use crate::report::{Params, Report, Verdict};
use koszulkit::algebra::{
    find_graded_isomorphism, induced_veronese_automorphism, quasi_veronese, trivial_extension, twist_algebra, GradedAlgebra,
    IsoSearch, TruncatedGradedAlgebra,
};
use koszulkit::hereditary::{is_n_rep_finite, is_n_rep_infinite_upto, preprojective_algebra, serre_dimension_identity};
use koszulkit::homology::koszul_dual;
use koszulkit::koszul::{
    build_mu_bar, build_t_tilde, check_n_m_sigma_koszul, check_n_t_koszul, default_rigidity_bound, mu_permutation,
    rigidity_check, stable_endomorphism_algebra, AlmostParams, KoszulVerdict, StableEndomorphismAlgebra, TTilde,
};
use koszulkit::module::GradedModule;
use koszulkit::{Error, Result};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub i_max: usize,
    pub degree_max: usize,
    pub depth: usize,
    pub orbit_cap: usize,
    pub l_max: i64,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { i_max: 8, degree_max: 6, depth: 6, orbit_cap: 32, l_max: 2, seed: 0 }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn agreement(r: &mut Report, left: bool, right: bool) {
    r.verdict = if left == right { Verdict::Pass } else { Verdict::Fail };
    r.line(format!("sides agree: {}", yes(left == right)));
}

/// `T = A` as a module over `ΔA`, one summand per vertex.
pub fn trivial_extension_summands(a: &GradedAlgebra) -> Result<Vec<GradedModule>> {
    let delta = Arc::new(trivial_extension(a)?);
    let a0 = delta.degree_zero();
    (0..a.num_vertices()).map(|v| GradedModule::projective(&a0, v, 0).inflate(&delta)).collect()
}

/// `B = End_stgr(T̃)`, or the reason it is not a basic algebra.
pub fn stable_side(t: &[GradedModule], n: usize) -> Result<(TTilde, std::result::Result<StableEndomorphismAlgebra, String>)> {
    let tt = build_t_tilde(t, n)?;
    let b = match stable_endomorphism_algebra(&tt, t) {
        Ok(b) => Ok(b),
        Err(Error::Precondition(why)) => Err(why),
        Err(e) => return Err(e),
    };
    Ok((tt, b))
}

pub fn characterization(t: &[GradedModule], n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify characterization");
    r.bound("i_max", b.i_max).bound("depth", b.depth);
    r.cite("n-T-Koszul iff the rigid object T~ has (na-1)-representation-infinite stable endomorphism algebra");
    let left = check_n_t_koszul(t, n, b.i_max, b.seed)?;
    r.probabilistic = left.probabilistic;
    r.line(format!("n-T-Koszul up to i_max: {}", yes(left.passed())));
    if let Some(w) = left.counterexample {
        r.counterexample = Some(serde_json::json!({ "i": w.i, "j": w.j, "dim": w.dim }));
    }
    r.detail("koszul", &left);
    let (tt, bb) = stable_side(t, n)?;
    let na = n * tt.a;
    let bound = default_rigidity_bound(n, tt.a);
    r.bound("rigidity_l", bound);
    let rig = rigidity_check(&tt.summands, bound)?;
    r.line(format!("T~ rigid up to |l| <= {bound}: {}", yes(rig.passed)));
    r.detail("rigidity", &rig);
    let rep = match &bb {
        Ok(bb) => {
            let rep = is_n_rep_infinite_upto(&bb.algebra, na - 1, b.depth)?;
            r.line(format!("B has dimension {}", bb.algebra.dim()));
            r.detail("nrep", &rep);
            rep.passed()
        }
        Err(why) => {
            r.line(format!("B: {why}"));
            false
        }
    };
    r.line(format!("B {}-representation infinite to depth {}: {}", na - 1, b.depth, yes(rep)));
    if left.verdict == KoszulVerdict::Inconclusive {
        r.verdict = Verdict::Inconclusive;
        return Ok(r);
    }
    agreement(&mut r, left.passed(), rig.passed && rep);
    Ok(r)
}

pub fn trivext_koszul(a: &Arc<GradedAlgebra>, n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify trivext-koszul");
    r.bound("i_max", b.i_max).bound("depth", b.depth);
    r.cite("the trivial extension is (n+1)-Koszul over its degree-zero part iff A is n-representation infinite");
    let t = trivial_extension_summands(a)?;
    let left = check_n_t_koszul(&t, n + 1, b.i_max, b.seed)?;
    r.probabilistic = left.probabilistic;
    r.line(format!("trivial extension {}-Koszul up to i_max: {}", n + 1, yes(left.passed())));
    r.detail("koszul", &left);
    let right = is_n_rep_infinite_upto(a, n, b.depth)?;
    r.line(format!("A {n}-representation infinite to depth {}: {}", b.depth, yes(right.passed())));
    r.detail("nrep", &right);
    if left.verdict == KoszulVerdict::Inconclusive {
        r.verdict = Verdict::Inconclusive;
        return Ok(r);
    }
    agreement(&mut r, left.passed(), right.passed());
    Ok(r)
}

fn iso_verdict(r: &mut Report, name: &str, s: &IsoSearch) -> Verdict {
    let (v, text) = match s {
        IsoSearch::Found(_) => (Verdict::Pass, "found"),
        IsoSearch::DimensionsDiffer => (Verdict::Fail, "dimensions differ"),
        IsoSearch::NotGeneratedInDegreesZeroOne => (Verdict::Inconclusive, "not generated in degrees 0 and 1"),
        IsoSearch::NotFound => {
            r.probabilistic = true;
            (Verdict::Inconclusive, "dimensions agree, no isomorphism found")
        }
    };
    r.line(format!("{name}: {text}"));
    r.detail(name, text);
    v
}

pub fn compare_algebras(r: &mut Report, name: &str, g: &TruncatedGradedAlgebra, h: &TruncatedGradedAlgebra, seed: u64) -> Verdict {
    let (dg, dh) = (g.graded_dims(), h.graded_dims());
    r.line(format!("graded dims {dg:?} vs {dh:?}"));
    if dg != dh {
        r.detail(name, "graded dimensions differ");
        return Verdict::Fail;
    }
    iso_verdict(r, name, &find_graded_isomorphism(g, h, seed))
}

pub fn trivext_dual(a: &Arc<GradedAlgebra>, n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify trivext-dual");
    r.bound("degree_max", b.degree_max);
    r.cite("the (n+1)-preprojective algebra of A is the Koszul dual of the trivial extension");
    let pi = preprojective_algebra(a, n, b.degree_max)?;
    let dual = koszul_dual(&trivial_extension_summands(a)?, n + 1, b.degree_max as i64)?;
    r.detail("preprojective_dims", pi.graded_dims()).detail("dual_dims", dual.algebra.graded_dims());
    r.verdict = compare_algebras(&mut r, "isomorphism", &pi, &dual.algebra, b.seed);
    Ok(r)
}

pub fn preproj_veronese(t: &[GradedModule], n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify preproj-veronese");
    r.bound("degree_max", b.degree_max);
    r.cite("the (na)-preprojective algebra of B is the twisted quasi-Veronese algebra of the Koszul dual");
    let (tt, bb) = stable_side(t, n)?;
    let bb = bb.map_err(Error::Precondition)?;
    let a = tt.a;
    let pi = preprojective_algebra(&bb.algebra, n * a - 1, b.degree_max)?;
    let dual = koszul_dual(t, n, (a * b.degree_max + a - 1) as i64)?;
    let ver = quasi_veronese(&dual.algebra, a)?;
    let mu = mu_permutation(t, b.seed)?;
    r.probabilistic = mu.probabilistic;
    let mu_bar = build_mu_bar(&dual, &mu)?;
    r.line(format!("mu-bar is the identity: {}", yes(mu_bar.is_identity())));
    let inv = mu_bar.inverse().ok_or_else(|| Error::Internal("mu-bar is not invertible".into()))?;
    let twisted = twist_algebra(&ver, &induced_veronese_automorphism(&inv, &ver)?)?;
    r.detail("preprojective_dims", pi.graded_dims()).detail("veronese_dims", twisted.graded_dims());
    let mut v = compare_algebras(&mut r, "twisted", &pi, &twisted, b.seed);
    if mu_bar.is_identity() {
        let u = compare_algebras(&mut r, "untwisted", &pi, &ver, b.seed);
        if u != Verdict::Pass && v == Verdict::Pass {
            v = u;
        }
    }
    r.verdict = v;
    Ok(r)
}

fn params_of(p: &AlmostParams) -> Params {
    Params { m: p.m.clone(), sigma: p.sigma.clone(), l: p.l.clone(), g: p.g.clone(), pi: p.pi.clone() }
}

pub fn nrepfin_char(t: &[GradedModule], n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify nrepfin-char");
    r.bound("l_max", b.i_max).bound("orbit_cap", b.orbit_cap);
    r.cite("almost n-T-Koszul with parameters (n, m_i, sigma_i) iff B is (na-1)-representation finite");
    let left = check_n_m_sigma_koszul(t, n, b.i_max, b.seed)?;
    r.probabilistic = left.probabilistic;
    r.line(format!("(n, m, sigma)-Koszul: {}", yes(left.passed())));
    if let Some(p) = &left.params {
        r.line(format!("m = {:?}, sigma = {:?}, l = {:?}, g = {:?}, pi = {:?}", p.m, p.sigma, p.l, p.g, p.pi));
        r.params = Some(params_of(p));
    }
    r.detail("almost", &left);
    let (tt, bb) = stable_side(t, n)?;
    let right = match &bb {
        Ok(bb) => {
            let rep = is_n_rep_finite(&bb.algebra, n * tt.a - 1, b.orbit_cap)?;
            if let Some(m) = rep.orbit_lengths() {
                r.line(format!("orbit lengths of B: {m:?}"));
            }
            r.detail("nrep", &rep);
            rep.passed()
        }
        Err(why) => {
            r.line(format!("B: {why}"));
            false
        }
    };
    r.line(format!("B {}-representation finite: {}", n * tt.a - 1, yes(right)));
    if left.verdict == KoszulVerdict::Inconclusive {
        r.verdict = Verdict::Inconclusive;
        return Ok(r);
    }
    agreement(&mut r, left.passed(), right);
    Ok(r)
}

pub fn param_consistency(t: &[GradedModule], n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify param-consistency");
    r.bound("l_max", b.i_max).bound("orbit_cap", b.orbit_cap);
    r.cite("m_i = m_(i,0) and sigma_i = sigma_i^R(0); sigma^L_j(i) = mu^(-m_(i,j)-1)(pi(i))");
    let left = check_n_m_sigma_koszul(t, n, b.i_max, b.seed)?;
    r.probabilistic = left.probabilistic;
    let Some(p) = left.params.clone() else {
        r.verdict = Verdict::Inconclusive;
        r.line(format!("no parameters: {}", left.reason.unwrap_or_default()));
        return Ok(r);
    };
    r.params = Some(params_of(&p));
    let (tt, bb) = stable_side(t, n)?;
    let bb = bb.map_err(Error::Precondition)?;
    let rep = is_n_rep_finite(&bb.algebra, n * tt.a - 1, b.orbit_cap)?;
    if !rep.passed() {
        r.verdict = Verdict::Inconclusive;
        r.line(format!("B is not certified representation finite: {}", rep.reason.clone().unwrap_or_default()));
        return Ok(r);
    }
    r.line(format!("m_(i,j) = {:?}", p.m_ij));
    r.line(format!("sigma_i^R(j) = {:?}", p.sigma_r));
    r.line(format!("sigma_j^L(i) = {:?}", p.sigma_l));
    let bad = p.orbit_mismatches(&tt, &rep);
    for m in &bad {
        r.line(m.clone());
    }
    r.detail("tables", &p).detail("nrep", &rep).detail("mismatches", &bad);
    r.verdict = if bad.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(r)
}

pub fn serre_identity(t: &[GradedModule], n: usize, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("verify serre-identity");
    r.bound("i_max", b.i_max).bound("l_max", b.l_max);
    r.cite("Hom_stgr(T~, Omega^-(nai+l) T~<ai>) = H^l(nu_(na-1)^-i B)");
    let (tt, bb) = stable_side(t, n)?;
    let bb = bb.map_err(Error::Precondition)?;
    let rows = serre_dimension_identity(&tt.summands, &bb.algebra, n, tt.a, b.i_max, b.l_max)?;
    let bad: Vec<_> = rows.iter().filter(|x| !x.holds()).collect();
    for x in rows.iter().filter(|x| x.stable > 0 || x.derived > 0) {
        r.line(format!("i={} l={} stable={} derived={}", x.i, x.l, x.stable, x.derived));
    }
    if let Some(x) = bad.first() {
        r.counterexample = Some(serde_json::to_value(x).expect("row serializes"));
    }
    r.detail("rows", &rows);
    r.verdict = if bad.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(r)
}
