use crate::report::{Params, Report, Verdict};
use crate::verify::Bounds;
use koszulkit::algebra::{gldim_upto, quasi_veronese, FrobeniusVerdict, GldimVerdict, GradedAlgebra, TruncatedGradedAlgebra};
use koszulkit::hereditary::{is_n_rep_finite, is_n_rep_infinite_upto, preprojective_algebra};
use koszulkit::homology::{ext_table, koszul_dual};
use koszulkit::koszul::{
    build_t_tilde, check_almost_self_orthogonal, check_classic_almost_koszul, check_n_m_sigma_koszul, check_n_t_koszul,
    check_self_orthogonal, default_rigidity_bound, mu_permutation, rigidity_check, stable_endomorphism_algebra, ClassicVerdict,
    KoszulReport, KoszulVerdict,
};
use koszulkit::module::{parse_module, GradedModule};
use koszulkit::presentation::load_algebra;
use koszulkit::{Error, Result};
use std::path::Path;
use std::sync::Arc;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn load_algebra_file(path: &Path) -> Result<Arc<GradedAlgebra>> {
    Ok(Arc::new(load_algebra(&read(path)?)?))
}

pub fn load_modules(paths: &[std::path::PathBuf], alg: &Arc<GradedAlgebra>) -> Result<Vec<GradedModule>> {
    if paths.is_empty() {
        return Err(Error::Input("at least one module file is required".into()));
    }
    paths.iter().map(|p| Ok(parse_module(&read(p)?, alg)?.module)).collect()
}

fn direct_sum(ms: &[GradedModule]) -> GradedModule {
    let refs: Vec<&GradedModule> = ms.iter().collect();
    GradedModule::direct_sum(&refs).module
}

pub fn build(alg: &Arc<GradedAlgebra>, gldim_bound: usize) -> Report {
    let mut r = Report::new("build");
    r.bound("gldim_bound", gldim_bound);
    let dims: Vec<usize> = alg.graded_dims().values().copied().collect();
    r.line(format!("algebra {}", alg.name()));
    r.line(format!("vertices {}", alg.num_vertices()));
    r.line(format!("graded dims {dims:?}"));
    let mut summary = vec![format!("dim {}", alg.dim())];
    match alg.frobenius() {
        FrobeniusVerdict::Frobenius(d) => {
            summary.push(format!("a = {}", d.a));
            if d.symmetric {
                summary.push("symmetric".into());
            } else {
                summary.push("Frobenius".into());
                if let Some(p) = d.vertex_permutation(alg) {
                    r.line(format!("Nakayama permutation of vertices {:?}", p.iter().map(|v| v + 1).collect::<Vec<_>>()));
                }
                if let Some(p) = &d.mu_basis_permutation {
                    r.detail("nakayama_basis_permutation", p);
                }
            }
            r.detail("frobenius", serde_json::json!({ "a": d.a, "symmetric": d.symmetric }));
        }
        FrobeniusVerdict::NotFrobenius { reason } => {
            summary.push("not Frobenius".into());
            r.detail("frobenius", reason);
        }
        FrobeniusVerdict::NoFormFound => {
            summary.push("no Frobenius form found".into());
            r.probabilistic = true;
        }
    }
    let g = gldim_upto(&alg.degree_zero(), gldim_bound);
    summary.push(match g {
        GldimVerdict::Exact(d) => format!("Λ₀ gldim {d}"),
        GldimVerdict::AtLeast(d) => format!("Λ₀ gldim >= {d}"),
    });
    r.detail("dim", alg.dim()).detail("graded_dims", &dims).detail("gldim_degree_zero", g);
    r.line(summary.join(", "));
    r
}

pub fn ext(m: &[GradedModule], n: &[GradedModule], i_max: usize) -> Result<Report> {
    let mut r = Report::new("ext");
    r.bound("i_max", i_max);
    let t = ext_table(&direct_sum(m), &direct_sum(n), i_max)?;
    r.line(t.to_tsv().trim_end().to_string());
    r.detail("j_min", t.j_min).detail("support", t.support());
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KoszulCheck {
    NT,
    SelfOrthogonal,
    Almost,
    Params,
    Classic,
    Rigidity,
    StableEnd,
    Mu,
}

fn from_koszul(r: &mut Report, k: &KoszulReport) {
    r.verdict = match k.verdict {
        KoszulVerdict::Pass | KoszulVerdict::PassUpToBound => Verdict::Pass,
        KoszulVerdict::Fail => Verdict::Fail,
        KoszulVerdict::Inconclusive => Verdict::Inconclusive,
    };
    r.probabilistic = k.probabilistic;
    r.line(format!("window j in [{}, {}]", k.window.0, k.window.1));
    if let Some(w) = k.counterexample {
        r.counterexample = Some(serde_json::json!({ "i": w.i, "j": w.j, "dim": w.dim }));
    }
    if let Some(why) = &k.reason {
        r.line(why.clone());
    }
    r.detail("report", k);
}

fn from_koszul_verdict(v: KoszulVerdict) -> Verdict {
    match v {
        KoszulVerdict::Pass | KoszulVerdict::PassUpToBound => Verdict::Pass,
        KoszulVerdict::Fail => Verdict::Fail,
        KoszulVerdict::Inconclusive => Verdict::Inconclusive,
    }
}

pub fn koszul(alg: &Arc<GradedAlgebra>, t: &[GradedModule], n: usize, check: KoszulCheck, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("koszul");
    r.bound("n", n).bound("i_max", b.i_max);
    match check {
        KoszulCheck::NT => {
            r.cite("tilting over the degree-zero part and Ext^i(T, T<j>) = 0 for i != nj");
            from_koszul(&mut r, &check_n_t_koszul(t, n, b.i_max, b.seed)?);
        }
        KoszulCheck::SelfOrthogonal => {
            r.cite("Ext^i(T, T<j>) = 0 for i != nj");
            from_koszul(&mut r, &check_self_orthogonal(t, n, b.i_max)?);
        }
        KoszulCheck::Almost => {
            r.cite("Omega^(-l_i) T^i = T'<-g_i> and Ext^j(T, T^i<k>) = 0 for j != nk, j < l_i");
            let a = check_almost_self_orthogonal(t, n, b.i_max, b.seed)?;
            r.verdict = from_koszul_verdict(a.verdict);
            r.probabilistic = a.probabilistic;
            for p in &a.periods {
                for h in &p.hits {
                    r.line(format!("summand {}: l = {}, g = {}, lands on summand {}", p.summand + 1, h.l, h.g, h.target + 1));
                }
            }
            if let Some((s, w)) = a.counterexample {
                r.counterexample = Some(serde_json::json!({ "summand": s, "i": w.i, "j": w.j, "dim": w.dim }));
            }
            if let Some(why) = &a.reason {
                r.line(why.clone());
            }
            r.detail("report", &a);
        }
        KoszulCheck::Params => {
            r.cite("l_i = n a m_i - n sigma_i + 1, g_i = a(m_i + 1) - sigma_i");
            let p = check_n_m_sigma_koszul(t, n, b.i_max, b.seed)?;
            r.verdict = from_koszul_verdict(p.verdict);
            r.probabilistic = p.probabilistic;
            if let Some(x) = &p.params {
                r.line(format!("m = {:?}, sigma = {:?}, l = {:?}, g = {:?}, pi = {:?}", x.m, x.sigma, x.l, x.g, x.pi));
                r.params = Some(Params { m: x.m.clone(), sigma: x.sigma.clone(), l: x.l.clone(), g: x.g.clone(), pi: x.pi.clone() });
            }
            if let Some(why) = &p.reason {
                r.line(why.clone());
            }
            r.detail("report", &p);
        }
        KoszulCheck::Classic => {
            r.cite("each term P^-i generated in degree i for i <= l, Omega^(l+1) concentrated in degree g + l");
            let c = check_classic_almost_koszul(alg, b.i_max)?;
            match &c.verdict {
                ClassicVerdict::AlmostKoszul { g, l } => {
                    r.verdict = Verdict::Pass;
                    r.line(format!("almost Koszul with (g, l) = ({g}, {l})"));
                }
                ClassicVerdict::Koszul => {
                    r.verdict = Verdict::Info;
                    r.line("Koszul (not almost-Koszul with finite l within bound)");
                }
                ClassicVerdict::Neither(why) => {
                    r.verdict = Verdict::Fail;
                    r.line(why.clone());
                }
            }
            r.detail("report", &c);
        }
        KoszulCheck::Rigidity => {
            let tt = build_t_tilde(t, n)?;
            let bound = default_rigidity_bound(n, tt.a);
            r.bound("l_bound", bound);
            r.cite("Hom_stgr(T~, Omega^-l T~) = 0 for l != 0; generation of the stable category is not checked");
            let rig = rigidity_check(&tt.summands, bound)?;
            r.line(format!("T~ summand dims {:?}", tt.dims()));
            r.verdict = if rig.passed { Verdict::Pass } else { Verdict::Fail };
            if let Some((l, d)) = rig.failure {
                r.counterexample = Some(serde_json::json!({ "l": l, "dim": d }));
            }
            r.detail("report", &rig);
        }
        KoszulCheck::StableEnd => {
            let tt = build_t_tilde(t, n)?;
            r.cite("End_stgr(T~) is upper triangular with blocks Ext^(n(i-j))(T, T<i-j>)");
            let b = stable_endomorphism_algebra(&tt, t)?;
            r.line(format!("T~ summand dims {:?}", tt.dims()));
            r.line(format!("B has dimension {}", b.algebra.dim()));
            r.line(format!("arrows of B {:?}", koszulkit::algebra::quiver_arrow_counts(&b.algebra)));
            r.detail("block_dims", b.block_dims.iter().map(|(k, v)| (k.0, k.1, *v)).collect::<Vec<_>>());
        }
        KoszulCheck::Mu => {
            r.cite("the Nakayama twist permutes the summands of T");
            let m = mu_permutation(t, b.seed)?;
            r.probabilistic = m.probabilistic;
            r.line(format!("mu on summands {:?}", m.perm.iter().map(|v| v + 1).collect::<Vec<_>>()));
            r.detail("permutation", &m.perm);
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum NRepModeArg {
    Finite,
    Infinite,
}

pub fn nrep(alg: &Arc<GradedAlgebra>, n: usize, mode: NRepModeArg, b: &Bounds) -> Result<Report> {
    let mut r = Report::new("nrep");
    let rep = match mode {
        NRepModeArg::Finite => {
            r.bound("orbit_cap", b.orbit_cap);
            r.cite("n-representation finite iff every nu_n^-1 orbit of a projective ends at an injective");
            is_n_rep_finite(alg, n, b.orbit_cap)?
        }
        NRepModeArg::Infinite => {
            r.bound("depth", b.depth);
            r.cite("H^i(nu_n^-j A) = 0 for i != 0");
            is_n_rep_infinite_upto(alg, n, b.depth)?
        }
    };
    r.verdict = match rep.verdict {
        koszulkit::hereditary::NRepVerdict::Yes => Verdict::Pass,
        koszulkit::hereditary::NRepVerdict::No => Verdict::Fail,
        koszulkit::hereditary::NRepVerdict::NoWithinCap => Verdict::Inconclusive,
    };
    if let Some(m) = rep.orbit_lengths() {
        r.line(format!("m = {m:?}"));
    }
    if let Some(why) = &rep.reason {
        r.line(why.clone());
    }
    if let Some(w) = rep.witness {
        r.counterexample = Some(serde_json::to_value(w).expect("witness serializes"));
    }
    r.detail("report", &rep);
    Ok(r)
}

fn algebra_lines(r: &mut Report, g: &TruncatedGradedAlgebra, dump: bool) {
    let dims = g.graded_dims();
    r.line(format!("dims {}", dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
    r.line(format!("total {}", dims.iter().sum::<usize>()));
    r.detail("graded_dims", &dims);
    if dump {
        r.line(g.dump().trim_end().to_string());
    }
}

pub fn preprojective(alg: &Arc<GradedAlgebra>, n: usize, d: usize, dump: bool) -> Result<Report> {
    let mut r = Report::new("preprojective");
    r.bound("degree_max", d);
    r.cite("Pi_(n+1) A = sum over i of Hom(A, nu_n^-i A)");
    algebra_lines(&mut r, &preprojective_algebra(alg, n, d)?, dump);
    Ok(r)
}

pub fn veronese(alg: &Arc<GradedAlgebra>, rr: usize, d: usize, dump: bool) -> Result<Report> {
    let mut r = Report::new("veronese");
    r.bound("degree_max", d).bound("r", rr);
    let base = TruncatedGradedAlgebra::truncate(alg, (rr * d + rr - 1) as i64);
    algebra_lines(&mut r, &quasi_veronese(&base, rr)?, dump);
    Ok(r)
}

pub fn dual(t: &[GradedModule], n: usize, d: usize, dump: bool) -> Result<Report> {
    let mut r = Report::new("dual");
    r.bound("degree_max", d).bound("n", n);
    r.cite("the n-T-Koszul dual is the sum over i of Ext^(ni)(T, T<i>)");
    algebra_lines(&mut r, &koszul_dual(t, n, d as i64)?.algebra, dump);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(text: &str) -> Arc<GradedAlgebra> {
        Arc::new(load_algebra(text).unwrap())
    }

    #[test]
    fn build_reports_frobenius_data() {
        let r = build(&alg("algebra k[x]/x^2\nvertices 1\narrow x 1 1 1\nrelation x*x\nend\n"), 4);
        assert_eq!(r.lines.last().unwrap(), "dim 2, a = 1, symmetric, Λ₀ gldim 0");
        assert_eq!(r.bounds["gldim_bound"], 4);
    }

    #[test]
    fn veronese_with_r_one_keeps_dims() {
        let a = alg("algebra c\nvertices 1\narrow x 1 1 1\nrelation x*x*x\nend\n");
        let r = veronese(&a, 1, 3, false).unwrap();
        assert_eq!(r.details["graded_dims"], serde_json::json!([1, 1, 1, 0]));
    }

    #[test]
    fn classic_check_on_cubic() {
        let a = alg("algebra c\nvertices 1\narrow x 1 1 1\nrelation x*x*x\nend\n");
        let r = koszul(&a, &[], 1, KoszulCheck::Classic, &Bounds::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lines[0], "almost Koszul with (g, l) = (2, 1)");
    }
}
