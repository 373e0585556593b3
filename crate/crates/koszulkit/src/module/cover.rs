use super::{hom_space, FreeModule, FreeSummand, GradedHom, GradedModule};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

/// Projective cover `P → M` built from a basis of `top M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub free: FreeModule,
    pub map: GradedHom,
}

/// Injective envelope `M → I`, with `I = ⊕ D(Λ e_v)⟨s⟩` listed as `(v, s)`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub injective: GradedModule,
    pub summands: Vec<FreeSummand>,
    pub map: GradedHom,
}

pub fn projective_cover(m: &GradedModule) -> Cover {
    let p = m.presentation();
    Cover { free: p.free.clone(), map: p.cover.clone() }
}

/// Envelope over any algebra, computed as the dual of the projective cover of `DM`.
pub(crate) fn injective_hull(m: &GradedModule) -> Envelope {
    let alg = m.algebra();
    let op = alg.opposite();
    let dm = m.dual(&op);
    let cover = projective_cover(&dm);
    let injective = cover.free.module().dual(alg);
    let summands = cover.free.gens().iter().map(|&(v, s)| (v, -s)).collect();
    Envelope { injective, summands, map: cover.map.transpose() }
}

pub fn injective_envelope(m: &GradedModule) -> Result<Envelope> {
    if !m.algebra().is_self_injective() {
        return Err(Error::Precondition("injective envelopes by projectives need a self-injective algebra".into()));
    }
    Ok(injective_hull(m))
}

/// Splits off summands `e_v Λ⟨j⟩`: a summand exists iff some `f: M → e_vΛ⟨j⟩` hits
/// an element outside the radical; then `M ≅ e_vΛ⟨j⟩ ⊕ ker f`.
pub fn strip_projective_summands(m: &GradedModule) -> (GradedModule, Vec<FreeSummand>) {
    let alg = m.algebra().clone();
    let mut cur = m.clone();
    let mut removed = Vec::new();
    'outer: loop {
        let tops: Vec<_> = cur.top_dims().into_keys().collect();
        for (j, v) in tops {
            let p = GradedModule::projective(&alg, v, j);
            let rad = p.radical_submodule();
            let key = (j, v);
            let rad_here = rad.get(&key).cloned().unwrap_or_else(|| Subspace::zero(p.dim_at(key)));
            let homs = hom_space(&cur, &p);
            for f in &homs.basis {
                let block = f.block_for(&cur, &p, key);
                let hit = (0..block.rows()).any(|r| !rad_here.contains(block.row(r)));
                if hit {
                    let (k, _) = super::kernel(f, &cur, &p);
                    cur = k;
                    removed.push((v, j));
                    continue 'outer;
                }
            }
        }
        break;
    }
    (cur, removed)
}

/// `Ω M`: kernel of the projective cover, projective summands removed.
pub fn syzygy(m: &GradedModule) -> GradedModule {
    let p = m.presentation();
    let (k, _) = p.free.module().submodule(&p.kernel);
    strip_projective_summands(&k).0
}

/// `Ω^{-1} M`: cokernel of the injective envelope, projective summands removed.
pub fn cosyzygy(m: &GradedModule) -> Result<GradedModule> {
    let e = injective_envelope(m)?;
    let (c, _) = super::cokernel(&e.map, m, &e.injective);
    Ok(strip_projective_summands(&c).0)
}

pub fn syzygy_power(m: &GradedModule, k: usize) -> GradedModule {
    (0..k).fold(m.clone(), |acc, _| syzygy(&acc))
}

pub fn cosyzygy_power(m: &GradedModule, k: usize) -> Result<GradedModule> {
    (0..k).try_fold(m.clone(), |acc, _| cosyzygy(&acc))
}

/// `Ω^i M` for any integer `i`; negative `i` are cosyzygies.
pub fn omega(m: &GradedModule, i: i64) -> Result<GradedModule> {
    if i >= 0 {
        Ok(syzygy_power(m, i as usize))
    } else {
        cosyzygy_power(m, i.unsigned_abs() as usize)
    }
}
