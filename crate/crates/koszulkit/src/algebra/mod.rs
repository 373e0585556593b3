//! Finite-dimensional graded algebras given by a basis of homogeneous elements
//! `e_u x e_w` and structure constants.

mod frobenius;
mod morphism;
mod ops;
mod trivext;
pub mod truncated;

pub use frobenius::{frobenius_analysis, FrobeniusData, FrobeniusVerdict};
pub use morphism::GradedAlgebraMorphism;
pub use ops::{forget_grading, gldim_upto, graded_dual, quiver_arrow_counts, regrade, GldimVerdict, GradedDual};
pub use trivext::trivial_extension;
pub use truncated::{
    find_graded_isomorphism, induced_veronese_automorphism, quasi_veronese, twist_algebra, IsoSearch, TruncatedGradedAlgebra,
    VeroneseInfo,
};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, zero_vec, Matrix, Scalar, Subspace};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, Weak};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// One basis element, lying in `e_src Λ_deg e_tgt`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BasisElem {
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
    pub label: String,
}

pub type SparseVec = Vec<(usize, Scalar)>;

pub struct GradedAlgebra {
    id: u64,
    name: String,
    vertices: usize,
    basis: Vec<BasisElem>,
    products: Vec<Vec<SparseVec>>,
    idempotents: Vec<usize>,
    radical: OnceLock<Vec<Vec<Scalar>>>,
    opposite: OnceLock<Arc<GradedAlgebra>>,
    opposite_of: OnceLock<Weak<GradedAlgebra>>,
    frobenius: OnceLock<FrobeniusVerdict>,
    degree_zero: OnceLock<Arc<GradedAlgebra>>,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("name", &self.name)
            .field("vertices", &self.vertices)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl GradedAlgebra {
    /// Validates the data: idempotents, degree and vertex bookkeeping, unit and
    /// associativity on all basis triples, and that `Λ₀/rad Λ₀ ≅ k^V`.
    pub fn new(
        name: impl Into<String>,
        vertices: usize,
        basis: Vec<BasisElem>,
        products: Vec<Vec<SparseVec>>,
        idempotents: Vec<usize>,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(name, vertices, basis, products, idempotents);
        alg.validate()?;
        Ok(alg)
    }

    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        vertices: usize,
        basis: Vec<BasisElem>,
        products: Vec<Vec<SparseVec>>,
        idempotents: Vec<usize>,
    ) -> Self {
        let products = products
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|mut v| {
                        v.retain(|(_, c)| !c.is_zero());
                        v.sort_by_key(|(i, _)| *i);
                        v
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            vertices,
            basis,
            products,
            idempotents,
            radical: OnceLock::new(),
            opposite: OnceLock::new(),
            opposite_of: OnceLock::new(),
            frobenius: OnceLock::new(),
            degree_zero: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.idempotents.len() != self.vertices {
            return Err(Error::Input("one idempotent per vertex required".into()));
        }
        if self.products.len() != n || self.products.iter().any(|r| r.len() != n) {
            return Err(Error::Input("product table shape".into()));
        }
        for (v, &e) in self.idempotents.iter().enumerate() {
            let b = &self.basis[e];
            if b.src != v || b.tgt != v || b.deg != 0 {
                return Err(Error::Input(format!("idempotent of vertex {v} is not in e_v Λ_0 e_v")));
            }
        }
        for (x, bx) in self.basis.iter().enumerate() {
            if bx.src >= self.vertices || bx.tgt >= self.vertices {
                return Err(Error::Input(format!("basis element {} has a vertex out of range", bx.label)));
            }
            if bx.deg < 0 {
                return Err(Error::Input(format!("basis element {} has negative degree", bx.label)));
            }
            for (v, &e) in self.idempotents.iter().enumerate() {
                let left = self.mul_basis(e, x);
                let right = self.mul_basis(x, e);
                let want_left: SparseVec = if bx.src == v { vec![(x, Scalar::one())] } else { vec![] };
                let want_right: SparseVec = if bx.tgt == v { vec![(x, Scalar::one())] } else { vec![] };
                if left != &want_left || right != &want_right {
                    return Err(Error::Input(format!("idempotent e_{v} does not act correctly on {}", bx.label)));
                }
            }
            for (y, by) in self.basis.iter().enumerate() {
                for (z, _) in self.mul_basis(x, y) {
                    let bz = &self.basis[*z];
                    if bx.tgt != by.src || bz.src != bx.src || bz.tgt != by.tgt || bz.deg != bx.deg + by.deg {
                        return Err(Error::Input(format!(
                            "product {} * {} violates vertex or degree bookkeeping",
                            bx.label, by.label
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.basis[x].tgt != self.basis[y].src {
                    continue;
                }
                let xy = self.mul_basis(x, y).clone();
                for z in 0..n {
                    if self.basis[y].tgt != self.basis[z].src {
                        continue;
                    }
                    let left = self.mul_sparse_basis(&xy, z);
                    let yz = self.mul_basis(y, z).clone();
                    let right = self.mul_basis_sparse(x, &yz);
                    if left != right {
                        return Err(Error::Input(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[x].label, self.basis[y].label, self.basis[z].label
                        )));
                    }
                }
            }
        }
        let rad0 = self.radical_degree_zero_dim();
        let dim0 = self.component(0).len();
        if dim0 - rad0 != self.vertices {
            return Err(Error::Input(format!(
                "degree-zero part is not split basic: dim {dim0}, radical dim {rad0}, {} vertices",
                self.vertices
            )));
        }
        Ok(())
    }

    fn mul_sparse_basis(&self, a: &SparseVec, z: usize) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (y, c) in a {
            for (w, d) in self.mul_basis(*y, z) {
                out[*w] += c * d;
            }
        }
        out
    }

    fn mul_basis_sparse(&self, x: usize, a: &SparseVec) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (y, c) in a {
            for (w, d) in self.mul_basis(x, *y) {
                out[*w] += c * d;
            }
        }
        out
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn elem(&self, x: usize) -> &BasisElem {
        &self.basis[x]
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent_index(&self, x: usize) -> bool {
        self.idempotents.contains(&x)
    }

    pub fn mul_basis(&self, x: usize, y: usize) -> &SparseVec {
        &self.products[x][y]
    }

    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> Scalar {
        self.products[x][y].iter().find(|(i, _)| *i == z).map(|(_, c)| c.clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (x, cx) in a.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            for (y, cy) in b.iter().enumerate() {
                if cy.is_zero() || self.basis[x].tgt != self.basis[y].src {
                    continue;
                }
                let c = cx * cy;
                for (z, s) in &self.products[x][y] {
                    out[*z] += &c * s;
                }
            }
        }
        out
    }

    pub fn basis_vec(&self, x: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(self.dim(), x)
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut u = zero_vec(self.dim());
        for &e in &self.idempotents {
            u[e] = Scalar::one();
        }
        u
    }

    /// Basis indices of `e_u Λ_d e_w`.
    pub fn between(&self, u: usize, w: usize, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.basis[x].src == u && self.basis[x].tgt == w && self.basis[x].deg == d).collect()
    }

    pub fn component(&self, d: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.basis[x].deg == d).collect()
    }

    /// Basis indices of `e_v Λ`, i.e. elements starting at `v`.
    pub fn starting_at(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.basis[x].src == v).collect()
    }

    /// Basis indices of `Λ e_v`, i.e. elements ending at `v`.
    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&x| self.basis[x].tgt == v).collect()
    }

    /// Highest degree `a` with `Λ_a ≠ 0`.
    pub fn highest_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.deg).max().unwrap_or(0)
    }

    pub fn lowest_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.deg).min().unwrap_or(0)
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry(b.deg).or_insert(0) += 1;
        }
        m
    }

    /// Dimensions of `e_u Λ_d e_w`, keyed by `(u, w, d)`.
    pub fn bigraded_dims(&self) -> BTreeMap<(usize, usize, i64), usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry((b.src, b.tgt, b.deg)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_concentrated_in_degree_zero(&self) -> bool {
        self.basis.iter().all(|b| b.deg == 0)
    }

    /// `tr(R_z)` for the right regular representation restricted to `Λ₀`.
    fn degree_zero_traces(&self) -> Vec<Scalar> {
        let zero_part = self.component(0);
        let mut t = zero_vec(self.dim());
        for &z in &zero_part {
            let mut s = Scalar::zero();
            for &b in &zero_part {
                s += self.structure_constant(b, z, b);
            }
            t[z] = s;
        }
        t
    }

    fn degree_zero_radical(&self) -> Vec<Vec<Scalar>> {
        let zero_part = self.component(0);
        let traces = self.degree_zero_traces();
        let mut out = Vec::new();
        for u in 0..self.vertices {
            for w in 0..self.vertices {
                let piece = self.between(u, w, 0);
                if piece.is_empty() {
                    continue;
                }
                // Gram rows over y in Λ₀, columns over x in e_u Λ₀ e_w.
                let mut g = Matrix::zeros(zero_part.len(), piece.len());
                for (j, &x) in piece.iter().enumerate() {
                    for (i, &y) in zero_part.iter().enumerate() {
                        let mut s = Scalar::zero();
                        for (z, c) in self.mul_basis(x, y) {
                            s += c * &traces[*z];
                        }
                        g.set(i, j, s);
                    }
                }
                for k in crate::linalg::kernel_basis(&g) {
                    let mut v = zero_vec(self.dim());
                    for (j, &x) in piece.iter().enumerate() {
                        v[x] = k[j].clone();
                    }
                    out.push(v);
                }
            }
        }
        out
    }

    fn radical_degree_zero_dim(&self) -> usize {
        self.degree_zero_radical().len()
    }

    /// Homogeneous basis of `rad Λ = Λ_{>0} ⊕ rad Λ₀`, each element in some `e_u Λ_d e_w`.
    pub fn radical(&self) -> &[Vec<Scalar>] {
        self.radical.get_or_init(|| {
            let mut out = self.degree_zero_radical();
            for x in 0..self.dim() {
                if self.basis[x].deg > 0 {
                    out.push(self.basis_vec(x));
                }
            }
            out
        })
    }

    /// `(src, tgt, deg)` of a nonzero homogeneous element.
    pub fn elem_tag(&self, v: &[Scalar]) -> Option<(usize, usize, i64)> {
        let x = v.iter().position(|c| !c.is_zero())?;
        let b = &self.basis[x];
        Some((b.src, b.tgt, b.deg))
    }

    pub fn radical_subspace(&self) -> Subspace {
        Subspace::span(self.dim(), self.radical())
    }

    pub fn is_semisimple_degree_zero(&self) -> bool {
        self.degree_zero_radical().is_empty()
    }

    pub fn opposite(self: &Arc<Self>) -> Arc<GradedAlgebra> {
        if let Some(orig) = self.opposite_of.get().and_then(Weak::upgrade) {
            return orig;
        }
        self.opposite
            .get_or_init(|| {
                let op = Arc::new(ops::opposite_raw(self));
                let _ = op.opposite_of.set(Arc::downgrade(self));
                op
            })
            .clone()
    }

    /// The subalgebra `Λ₀`, with basis the degree-zero basis elements of `Λ`.
    pub fn degree_zero(self: &Arc<Self>) -> Arc<GradedAlgebra> {
        if self.is_concentrated_in_degree_zero() {
            return self.clone();
        }
        self.degree_zero.get_or_init(|| Arc::new(ops::degree_zero_raw(self))).clone()
    }

    pub fn frobenius(&self) -> &FrobeniusVerdict {
        self.frobenius.get_or_init(|| frobenius_analysis(self))
    }

    pub fn is_self_injective(&self) -> bool {
        matches!(self.frobenius(), FrobeniusVerdict::Frobenius(_))
    }

    pub fn same_as(&self, other: &GradedAlgebra) -> bool {
        self.id == other.id
    }

    /// Equal up to the identity on bases: same tags and same structure constants.
    pub fn structurally_equal(&self, other: &GradedAlgebra) -> bool {
        self.vertices == other.vertices
            && self.idempotents == other.idempotents
            && self.basis.len() == other.basis.len()
            && self.basis.iter().zip(&other.basis).all(|(a, b)| a.src == b.src && a.tgt == b.tgt && a.deg == b.deg)
            && self.products == other.products
    }

    pub fn is_zero_elem(v: &[Scalar]) -> bool {
        is_zero_vec(v)
    }
}

pub(crate) fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}
