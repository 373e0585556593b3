use super::{BasisElem, GradedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// `ΔA = A ⊕ DA`, with `DA` in degree 1 spanned by the dual basis `b*`.
///
/// For `b ∈ e_u A e_v` the dual `b*` lies in `e_v ΔA e_u`. With `b_i b_j = Σ c_{ij}^k b_k`:
/// `b_i · b_j* = Σ_k c_{ki}^j b_k*` and `b_j* · b_i = Σ_k c_{ik}^j b_k*`.
pub fn trivial_extension(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    if !a.is_concentrated_in_degree_zero() {
        return Err(Error::Precondition("trivial extension needs an algebra concentrated in degree 0".into()));
    }
    let n = a.dim();
    let mut basis: Vec<BasisElem> = a.basis().to_vec();
    for b in a.basis() {
        basis.push(BasisElem { src: b.tgt, tgt: b.src, deg: 1, label: format!("{}*", b.label) });
    }
    // c[i][j][k] lookups through the sparse table.
    let coeff = |i: usize, j: usize, k: usize| -> Scalar { a.structure_constant(i, j, k) };
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            products[i][j] = a.mul_basis(i, j).clone();
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut left: SparseVec = Vec::new();
            let mut right: SparseVec = Vec::new();
            for k in 0..n {
                let l = coeff(k, i, j);
                if !num::Zero::is_zero(&l) {
                    left.push((n + k, l));
                }
                let r = coeff(i, k, j);
                if !num::Zero::is_zero(&r) {
                    right.push((n + k, r));
                }
            }
            products[i][n + j] = left;
            products[n + j][i] = right;
        }
    }
    let name = format!("Delta({})", a.name());
    GradedAlgebra::new(name, a.num_vertices(), basis, products, a.idempotents().to_vec())
}
