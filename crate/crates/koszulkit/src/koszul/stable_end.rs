use super::ttilde::TTilde;
use crate::algebra::{sparse_from_dense, BasisElem, GradedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::homology::{ext_space, projective_resolution};
use crate::linalg::{kernel_basis, unit_vec, zero_vec, Matrix, Scalar};
use crate::module::{stable_hom, GradedHom, GradedModule, StableHom};
use num::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `B = End_stgr(T̃)` with one vertex per summand of `T̃`.
///
/// The class of `f : X_p → X_q` is a basis element from vertex `q` to vertex `p`, and
/// `x · y = x ∘ y`, so that `e_q B = Hom_stgr(T̃, X_q)`.
#[derive(Clone, Debug)]
pub struct StableEndomorphismAlgebra {
    pub algebra: Arc<GradedAlgebra>,
    /// Basis element `x` is the class of `elements[x] = (p, q, f)`.
    pub elements: Vec<(usize, usize, GradedHom)>,
    /// `dim Hom_stgr(X_p, X_q)` keyed by `(p, q)`.
    pub block_dims: BTreeMap<(usize, usize), usize>,
}

fn trace(f: &GradedHom) -> Scalar {
    f.blocks().values().map(Matrix::trace).fold(Scalar::zero(), |s, t| s + t)
}

/// A basis of a stable Hom space, with coordinates relative to the stored representatives.
struct Block {
    space: StableHom,
    homs: Vec<GradedHom>,
    /// Inverse of the matrix whose rows are the chosen basis in representative coordinates.
    to_basis: Matrix,
}

impl Block {
    fn new(x: &GradedModule, y: &GradedModule, endo: bool) -> Result<Block> {
        let space = stable_hom(x, y);
        let d = space.dim();
        let reps = space.basis();
        let rows: Vec<Vec<Scalar>> = if endo && d > 0 {
            let id = space
                .class_coords(&GradedHom::identity(x), x, y)
                .ok_or_else(|| Error::Internal("identity is not a homomorphism".into()))?;
            let traces: Vec<Scalar> = reps.iter().map(trace).collect();
            let mut rows = vec![id];
            rows.extend(kernel_basis(&Matrix::from_rows(vec![traces], d)));
            rows
        } else {
            (0..d).map(|k| unit_vec(d, k)).collect()
        };
        let m = Matrix::from_rows(rows.clone(), d);
        let to_basis = m.inverse().ok_or_else(|| Error::Internal("stable endomorphism basis is degenerate".into()))?;
        let homs = rows
            .iter()
            .map(|c| {
                let mut full = zero_vec(space.hom.dim());
                for (k, &r) in space.representatives.iter().enumerate() {
                    full[r] = c[k].clone();
                }
                space.hom.combination(&full)
            })
            .collect();
        Ok(Block { space, homs, to_basis })
    }

    fn coords(&self, f: &GradedHom, x: &GradedModule, y: &GradedModule) -> Result<Vec<Scalar>> {
        let c = self.space.class_coords(f, x, y).ok_or_else(|| Error::Internal("composite is not a homomorphism".into()))?;
        Ok(if c.is_empty() { c } else { self.to_basis.vec_mul(&c) })
    }
}

/// Expected `dim Hom_stgr(X^{i',j'}, X^{i,j}) = dim Ext^{n(j-j')}(T^{i'}, T^i⟨j-j'⟩)` for `j ≥ j'`, else 0.
fn expected_block_dims(tt: &TTilde, base: &[GradedModule]) -> Result<BTreeMap<(usize, usize), usize>> {
    let depth = tt.n * (tt.a - 1) + 1;
    let res: Vec<_> = base.iter().map(|t| projective_resolution(t, depth)).collect();
    let mut out = BTreeMap::new();
    for (p, &(i2, j2)) in tt.index.iter().enumerate() {
        for (q, &(i, j)) in tt.index.iter().enumerate() {
            let d = if j < j2 { 0 } else { ext_space(&res[i2], &base[i], tt.n * (j - j2), (j - j2) as i64)?.dim() };
            out.insert((p, q), d);
        }
    }
    Ok(out)
}

/// Builds `B` from `T̃` and the summands of `T`; block dimensions are checked against the Ext groups of `T`.
pub fn stable_endomorphism_algebra(tt: &TTilde, base: &[GradedModule]) -> Result<StableEndomorphismAlgebra> {
    let xs = &tt.summands;
    let nv = xs.len();
    let mut blocks: BTreeMap<(usize, usize), Block> = BTreeMap::new();
    for p in 0..nv {
        for q in 0..nv {
            blocks.insert((p, q), Block::new(&xs[p], &xs[q], p == q)?);
        }
    }
    let block_dims: BTreeMap<(usize, usize), usize> = blocks.iter().map(|(&k, b)| (k, b.homs.len())).collect();
    let expected = expected_block_dims(tt, base)?;
    if expected != block_dims {
        let bad = block_dims.iter().find(|(k, d)| expected[*k] != **d).map(|(k, d)| (*k, *d, expected[k]));
        return Err(Error::Internal(format!("stable Hom block (source, target, dim, expected) {bad:?} contradicts the Ext groups of T")));
    }

    let mut elements = Vec::new();
    let mut basis = Vec::new();
    let mut offset: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut idempotents = vec![0; nv];
    for (&(p, q), b) in &blocks {
        offset.insert((p, q), elements.len());
        for (k, f) in b.homs.iter().enumerate() {
            let label = if p == q && k == 0 {
                idempotents[p] = elements.len();
                format!("e{}", p + 1)
            } else {
                format!("b{}_{}_{k}", p + 1, q + 1)
            };
            basis.push(BasisElem { src: q, tgt: p, deg: 0, label });
            elements.push((p, q, f.clone()));
        }
    }
    let dim = elements.len();
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for (x, (p, q, f)) in elements.iter().enumerate() {
        for (y, (r, s, g)) in elements.iter().enumerate() {
            if s != p {
                continue;
            }
            let c = blocks[&(*r, *q)].coords(&g.then(f), &xs[*r], &xs[*q])?;
            let mut out = zero_vec(dim);
            let base_index = offset[&(*r, *q)];
            for (k, v) in c.into_iter().enumerate() {
                out[base_index + k] = v;
            }
            products[x][y] = sparse_from_dense(&out);
        }
    }
    let algebra = GradedAlgebra::new("End_stgr(T~)", nv, basis, products, idempotents)
        .map_err(|e| Error::Precondition(format!("stable endomorphism algebra is not basic: {e}")))?;
    Ok(StableEndomorphismAlgebra { algebra: Arc::new(algebra), elements, block_dims })
}
