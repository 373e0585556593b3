use super::almost::MuPermutation;
use crate::algebra::GradedAlgebraMorphism;
use crate::error::{Error, Result};
use crate::homology::{cochain_to_hom, hom_to_cochain, KoszulDual};
use crate::linalg::{solve, Matrix};
use crate::module::{FreeModule, GradedHom, GradedModule};

/// Relabels the blocks of `f` as a map between twisted modules: key `(d, w)` becomes `(d, inv[w])`.
fn twist_hom(f: &GradedHom, inv: &[usize]) -> GradedHom {
    GradedHom::from_blocks(f.blocks().iter().map(|(&(d, w), m)| ((d, inv[w]), m.clone())).collect())
}

/// Lifts `want : F → N` along `d : M → N` with `F` free.
fn lift_free(src: &FreeModule, want: &GradedHom, d: &GradedHom, m: &GradedModule, n: &GradedModule) -> Result<GradedHom> {
    let mut images = Vec::new();
    for h in 0..src.rank() {
        let key = src.gen_key(h);
        let w = src.image_of_gen(want, h, n);
        let block = d.block(key, m.dim_at(key), n.dim_at(key));
        let u = if block.rows() == 0 {
            if !crate::linalg::is_zero_vec(&w) {
                return Err(Error::Internal("twisted resolution does not cover the target".into()));
            }
            vec![]
        } else {
            solve(&block.transpose(), &w)?.ok_or_else(|| Error::Internal("chain map does not lift".into()))?
        };
        images.push(u);
    }
    Ok(src.hom_to(m, &images))
}

/// `μ̄` on the Koszul dual: `x ∈ Ext^{ni}(T^a, T^b⟨i⟩)` goes to `τ_b⟨i⟩ ∘ x_μ ∘ τ_a^{-1}`
/// in `Ext^{ni}(T^{μ(a)}, T^{μ(b)}⟨i⟩)`, with `τ` the isomorphisms recorded in `mu`.
pub fn build_mu_bar(dual: &KoszulDual, mu: &MuPermutation) -> Result<GradedAlgebraMorphism> {
    let t = dual.summands.len();
    if mu.perm.len() != t {
        return Err(Error::Input("permutation does not match the summands".into()));
    }
    let alg = dual.summands[0].algebra();
    let data = alg.frobenius().data().ok_or_else(|| Error::Precondition("algebra is not graded Frobenius".into()))?;
    let sigma = data
        .vertex_permutation(alg)
        .ok_or_else(|| Error::Precondition("Nakayama automorphism does not permute the vertices".into()))?;
    let mut inv = vec![0; sigma.len()];
    for (v, &s) in sigma.iter().enumerate() {
        inv[s] = v;
    }
    let mut tau_inv = Vec::with_capacity(t);
    for (a, f) in mu.certificates.iter().enumerate() {
        tau_inv.push(f.inverse(&mu.twisted[a]).ok_or_else(|| Error::Input(format!("certificate for summand {} is not an isomorphism", a + 1)))?);
    }
    let nmax = dual.index.iter().map(|&(i, ..)| dual.n * i as usize).max().unwrap_or(0);

    // chains[a][k] : R^k → F(P_a^k), where R resolves T^{μ(a)} and F(P_a) is the twisted resolution of T^a.
    let mut chains: Vec<Vec<GradedHom>> = Vec::with_capacity(t);
    let mut twisted_terms: Vec<Vec<GradedModule>> = Vec::with_capacity(t);
    for a in 0..t {
        let pa = &dual.resolutions[a];
        let r = &dual.resolutions[mu.perm[a]];
        let mut terms = Vec::new();
        let mut maps = Vec::new();
        for k in 0..=nmax {
            let (Some(src), Some(tgt)) = (r.term(k), pa.term(k)) else { break };
            let ft = tgt.module().twist(&data.nakayama(alg))?;
            let map = if k == 0 {
                let want = r.augmentation().then(&tau_inv[a]);
                lift_free(src, &want, &twist_hom(pa.augmentation(), &inv), &ft, &mu.twisted[a])?
            } else {
                let want = r.differential(k).expect("differential within range").then(&maps[k - 1]);
                let d = twist_hom(pa.differential(k).expect("differential within range"), &inv);
                lift_free(src, &want, &d, &ft, &terms[k - 1])?
            };
            terms.push(ft);
            maps.push(map);
        }
        chains.push(maps);
        twisted_terms.push(terms);
    }

    let dim = dual.index.len();
    let mut rows = Vec::with_capacity(dim);
    for x in 0..dim {
        let (i, a, b, _) = dual.index[x];
        let deg = dual.n * i as usize;
        let (ma, mb) = (mu.perm[a], mu.perm[b]);
        let xh = cochain_to_hom(&dual.resolutions[a], &dual.summands[b], deg, i, dual.cocycle(x));
        let composite = chains[a]
            .get(deg)
            .ok_or_else(|| Error::BoundExceeded(format!("comparison map not computed at P^{deg}")))?
            .then(&twist_hom(&xh, &inv))
            .then(&mu.certificates[b].shift(i));
        let c = hom_to_cochain(&dual.resolutions[ma], &dual.summands[mb], deg, i, &composite);
        rows.push(dual.coords(i, ma, mb, &c)?);
    }
    let g = dual.algebra.algebra();
    GradedAlgebraMorphism::new(g.clone(), g.clone(), Matrix::from_rows(rows, dim))
        .map_err(|e| Error::Internal(format!("twisted conjugation is not an algebra automorphism: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::koszul_dual;
    use crate::koszul::mu_permutation;
    use crate::koszul::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn symmetric_gives_identity() {
        let t = delta_t(&kronecker());
        let d = koszul_dual(&t, 2, 2).unwrap();
        let mu = mu_permutation(&t, 0).unwrap();
        assert!(build_mu_bar(&d, &mu).unwrap().is_identity());
        let c = cubic_t();
        let d = koszul_dual(&c, 1, 2).unwrap();
        assert!(build_mu_bar(&d, &mu_permutation(&c, 0).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn nakayama_swap_permutes_idempotents() {
        let alg = Arc::new(cyclic_nakayama());
        let t: Vec<_> = (0..2).map(|v| GradedModule::simple(&alg, v, 0)).collect();
        let d = koszul_dual(&t, 1, 3).unwrap();
        let mu = mu_permutation(&t, 0).unwrap();
        let f = build_mu_bar(&d, &mu).unwrap();
        assert_eq!(f.vertex_permutation(), Some(vec![1, 0]));
    }
}
