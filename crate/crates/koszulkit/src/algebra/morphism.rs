use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use num::{One, Zero};
use std::sync::Arc;

/// A graded algebra map given by the images of basis elements (rows of `matrix`).
#[derive(Clone, Debug)]
pub struct GradedAlgebraMorphism {
    domain: Arc<GradedAlgebra>,
    codomain: Arc<GradedAlgebra>,
    matrix: Matrix,
}

impl GradedAlgebraMorphism {
    /// Checks degrees, unit, multiplicativity on all basis pairs, and that vertex
    /// idempotents go to vertex idempotents.
    pub fn new(domain: Arc<GradedAlgebra>, codomain: Arc<GradedAlgebra>, matrix: Matrix) -> Result<Self> {
        let f = Self::new_unchecked(domain, codomain, matrix);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(domain: Arc<GradedAlgebra>, codomain: Arc<GradedAlgebra>, matrix: Matrix) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (domain.dim(), codomain.dim()), "morphism matrix shape");
        GradedAlgebraMorphism { domain, codomain, matrix }
    }

    pub fn identity(alg: &Arc<GradedAlgebra>) -> Self {
        Self::new_unchecked(alg.clone(), alg.clone(), Matrix::identity(alg.dim()))
    }

    /// Morphism permuting basis elements: `x ↦ perm[x]`.
    pub fn from_basis_permutation(alg: &Arc<GradedAlgebra>, perm: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(alg.dim(), alg.dim());
        for (x, &y) in perm.iter().enumerate() {
            m.set(x, y, Scalar::one());
        }
        Self::new(alg.clone(), alg.clone(), m)
    }

    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        if d.num_vertices() != c.num_vertices() {
            return Err(Error::Input("morphism between algebras with different vertex counts".into()));
        }
        if self.vertex_permutation().is_none() {
            return Err(Error::Input("morphism does not send vertex idempotents to vertex idempotents".into()));
        }
        for x in 0..d.dim() {
            let img = self.matrix.row(x);
            for (z, cz) in img.iter().enumerate() {
                if !cz.is_zero() && c.elem(z).deg != d.elem(x).deg {
                    return Err(Error::Input(format!("morphism does not preserve the degree of {}", d.elem(x).label)));
                }
            }
        }
        for x in 0..d.dim() {
            for y in 0..d.dim() {
                let mut lhs = vec![Scalar::zero(); c.dim()];
                for (z, cz) in d.mul_basis(x, y) {
                    crate::linalg::axpy(&mut lhs, cz, self.matrix.row(*z));
                }
                let rhs = c.mul(self.matrix.row(x), self.matrix.row(y));
                if lhs != rhs {
                    return Err(Error::Input(format!(
                        "morphism is not multiplicative on ({}, {})",
                        d.elem(x).label,
                        d.elem(y).label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<GradedAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<GradedAlgebra> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.vec_mul(v)
    }

    pub fn apply_basis(&self, x: usize) -> Vec<Scalar> {
        self.matrix.row(x).to_vec()
    }

    /// `σ` with `f(e_v) = e_{σ(v)}`.
    pub fn vertex_permutation(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for v in 0..self.domain.num_vertices() {
            let img = self.matrix.row(self.domain.idempotent(v));
            let w = (0..self.codomain.num_vertices()).find(|&w| {
                let e = self.codomain.idempotent(w);
                img.iter().enumerate().all(|(i, c)| if i == e { c.is_one() } else { c.is_zero() })
            })?;
            out.push(w);
        }
        let mut seen = out.clone();
        seen.sort_unstable();
        seen.dedup();
        (seen.len() == out.len()).then_some(out)
    }

    /// The basis permutation if the matrix is a permutation matrix.
    pub fn basis_permutation(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for x in 0..self.matrix.rows() {
            let row = self.matrix.row(x);
            let nz: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
            if nz.len() != 1 || !row[nz[0]].is_one() {
                return None;
            }
            out.push(nz[0]);
        }
        Some(out)
    }

    pub fn is_identity(&self) -> bool {
        self.domain.same_as(&self.codomain) && self.matrix == Matrix::identity(self.domain.dim())
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &GradedAlgebraMorphism) -> GradedAlgebraMorphism {
        Self::new_unchecked(self.domain.clone(), g.codomain.clone(), self.matrix.mul(&g.matrix))
    }

    pub fn inverse(&self) -> Option<GradedAlgebraMorphism> {
        Some(Self::new_unchecked(self.codomain.clone(), self.domain.clone(), self.matrix.inverse()?))
    }

    /// `f^k` for an automorphism; negative powers use the inverse.
    pub fn pow(&self, k: i64) -> Option<GradedAlgebraMorphism> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let m = base.matrix.pow(k.unsigned_abs() as u32);
        Some(Self::new_unchecked(self.domain.clone(), self.domain.clone(), m))
    }

    /// The same matrix viewed between other (structurally equal) algebras.
    pub fn rebase(&self, domain: Arc<GradedAlgebra>, codomain: Arc<GradedAlgebra>) -> GradedAlgebraMorphism {
        Self::new_unchecked(domain, codomain, self.matrix.clone())
    }
}

impl PartialEq for GradedAlgebraMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain.same_as(&other.domain) && self.codomain.same_as(&other.codomain) && self.matrix == other.matrix
    }
}
