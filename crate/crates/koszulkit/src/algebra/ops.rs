use super::{BasisElem, GradedAlgebra, SparseVec};
use crate::module::GradedModule;
use crate::linalg::Subspace;
use std::collections::BTreeMap;
use std::sync::Arc;

pub(crate) fn opposite_raw(a: &GradedAlgebra) -> GradedAlgebra {
    let n = a.dim();
    let basis = a
        .basis()
        .iter()
        .map(|b| BasisElem { src: b.tgt, tgt: b.src, deg: b.deg, label: b.label.clone() })
        .collect();
    let products = (0..n).map(|x| (0..n).map(|y| a.mul_basis(y, x).clone()).collect()).collect();
    GradedAlgebra::new_unchecked(format!("{}^op", a.name()), a.num_vertices(), basis, products, a.idempotents().to_vec())
}

/// `Λ₀` with basis the degree-zero basis elements in their original order.
pub(crate) fn degree_zero_raw(a: &GradedAlgebra) -> GradedAlgebra {
    let idx = a.component(0);
    let mut pos = vec![usize::MAX; a.dim()];
    for (i, &x) in idx.iter().enumerate() {
        pos[x] = i;
    }
    let basis = idx.iter().map(|&x| a.elem(x).clone()).collect();
    let products: Vec<Vec<SparseVec>> = idx
        .iter()
        .map(|&x| {
            idx.iter()
                .map(|&y| a.mul_basis(x, y).iter().map(|(z, c)| (pos[*z], c.clone())).collect())
                .collect()
        })
        .collect();
    let idem = a.idempotents().iter().map(|&e| pos[e]).collect();
    GradedAlgebra::new_unchecked(format!("{}_0", a.name()), a.num_vertices(), basis, products, idem)
}

/// `Λ^ρ` with `Λ^ρ_{nj} = Λ_j`.
pub fn regrade(a: &GradedAlgebra, n: i64) -> crate::error::Result<GradedAlgebra> {
    if n < 1 {
        return Err(crate::error::Error::Input("regrading factor must be at least 1".into()));
    }
    let basis = a.basis().iter().map(|b| BasisElem { deg: b.deg * n, ..b.clone() }).collect();
    let products = (0..a.dim()).map(|x| (0..a.dim()).map(|y| a.mul_basis(x, y).clone()).collect()).collect();
    Ok(GradedAlgebra::new_unchecked(
        format!("{}^rho{n}", a.name()),
        a.num_vertices(),
        basis,
        products,
        a.idempotents().to_vec(),
    ))
}

/// The same algebra with every basis element placed in degree 0.
pub fn forget_grading(a: &GradedAlgebra) -> GradedAlgebra {
    let basis = a.basis().iter().map(|b| BasisElem { deg: 0, ..b.clone() }).collect();
    let products = (0..a.dim()).map(|x| (0..a.dim()).map(|y| a.mul_basis(x, y).clone()).collect()).collect();
    GradedAlgebra::new_unchecked(format!("{}^ungr", a.name()), a.num_vertices(), basis, products, a.idempotents().to_vec())
}

/// `DΛ` with `(DΛ)_i = D(Λ_{-i})`, as a right `Λ`-module and as a left one
/// (a right module over `Λ^op`).
#[derive(Clone, Debug)]
pub struct GradedDual {
    pub right: GradedModule,
    pub left: GradedModule,
}

impl GradedDual {
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.right.graded_dims()
    }
}

pub fn graded_dual(a: &Arc<GradedAlgebra>) -> GradedDual {
    let op = a.opposite();
    GradedDual { right: GradedModule::regular(&op).dual(a), left: GradedModule::regular(a).dual(&op) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum GldimVerdict {
    Exact(usize),
    AtLeast(usize),
}

/// Global dimension via minimal resolutions of the simples, up to length `bound`.
pub fn gldim_upto(a0: &Arc<GradedAlgebra>, bound: usize) -> GldimVerdict {
    let mut best = 0;
    for v in 0..a0.num_vertices() {
        let s = GradedModule::simple(a0, v, 0);
        let res = crate::homology::projective_resolution(&s, bound + 1);
        match res.projective_dimension() {
            Some(pd) if pd <= bound => best = best.max(pd),
            _ => return GldimVerdict::AtLeast(bound + 1),
        }
    }
    GldimVerdict::Exact(best)
}

/// `dim e_u (rad Λ / rad² Λ) e_w`, the arrow counts of the quiver of `Λ`.
pub fn quiver_arrow_counts(a: &GradedAlgebra) -> Vec<Vec<usize>> {
    let rad = a.radical();
    let n = a.dim();
    let mut sq = Vec::new();
    for x in rad {
        for y in rad {
            let p = a.mul(x, y);
            if !crate::linalg::is_zero_vec(&p) {
                sq.push(p);
            }
        }
    }
    let rad2 = Subspace::span(n, &sq);
    let v = a.num_vertices();
    let mut out = vec![vec![0; v]; v];
    for u in 0..v {
        for w in 0..v {
            let mut piece_rad = Vec::new();
            let mut piece_rad2 = Vec::new();
            for r in rad {
                if let Some((s, t, _)) = a.elem_tag(r) {
                    if s == u && t == w {
                        piece_rad.push(r.clone());
                    }
                }
            }
            for r in rad2.vectors() {
                piece_rad2.push(r);
            }
            // Project the square onto the (u, w) piece by idempotent multiplication.
            let eu = a.basis_vec(a.idempotent(u));
            let ew = a.basis_vec(a.idempotent(w));
            let proj: Vec<_> = piece_rad2.iter().map(|r| a.mul(&a.mul(&eu, r), &ew)).collect();
            let r1 = Subspace::span(n, &piece_rad).dim();
            let r2 = Subspace::span(n, &proj).dim();
            out[u][w] = r1 - r2;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;

    #[test]
    fn opposite_of_a2_reverses_arrow() {
        let a = Arc::new(a2());
        let op = a.opposite();
        let arrow = (0..a.dim()).find(|&x| !a.is_idempotent_index(x)).unwrap();
        assert_eq!((op.elem(arrow).src, op.elem(arrow).tgt), (1, 0));
        assert!(op.opposite().same_as(&a));
    }

    #[test]
    fn opposite_of_commutative_is_equal() {
        let a = Arc::new(cubic());
        assert!(a.opposite().structurally_equal(&a));
    }

    #[test]
    fn regrade_dims() {
        let d = regrade(&dual_numbers(), 3).unwrap();
        assert_eq!(d.graded_dims().into_iter().collect::<Vec<_>>(), vec![(0, 1), (3, 1)]);
        let delta = crate::algebra::trivial_extension(&example_a()).unwrap();
        let r = regrade(&delta, 2).unwrap();
        assert_eq!(r.graded_dims().into_iter().collect::<Vec<_>>(), vec![(0, 8), (2, 8)]);
        assert!(regrade(&delta, 1).unwrap().structurally_equal(&delta));
    }

    #[test]
    fn graded_dual_dims() {
        let k = Arc::new(point());
        assert_eq!(graded_dual(&k).graded_dims().into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
        let d = Arc::new(dual_numbers());
        assert_eq!(graded_dual(&d).graded_dims().into_iter().collect::<Vec<_>>(), vec![(-1, 1), (0, 1)]);
        let delta = Arc::new(crate::algebra::trivial_extension(&example_a()).unwrap());
        let dual = graded_dual(&delta);
        assert_eq!(dual.graded_dims().into_iter().collect::<Vec<_>>(), vec![(-1, 8), (0, 8)]);
        assert_eq!(dual.left.graded_dims(), dual.right.graded_dims());
    }

    #[test]
    fn gldim_values() {
        assert_eq!(gldim_upto(&Arc::new(point()), 4), GldimVerdict::Exact(0));
        assert_eq!(gldim_upto(&Arc::new(a2()), 4), GldimVerdict::Exact(1));
        assert_eq!(gldim_upto(&Arc::new(example_a()), 4), GldimVerdict::Exact(2));
        assert_eq!(gldim_upto(&Arc::new(dual_numbers()).degree_zero(), 4), GldimVerdict::Exact(0));
    }

    #[test]
    fn quiver_of_example_algebra() {
        let q = quiver_arrow_counts(&example_a());
        let total: usize = q.iter().flatten().sum();
        assert_eq!(total, 4);
    }
}
