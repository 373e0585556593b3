//! Finitely generated graded right modules over a [`GradedAlgebra`], stored as
//! `(degree, vertex)` blocks with block action matrices (row-vector convention).

mod cover;
mod free;
mod hom;
mod io;
mod iso;
mod stable;

pub use cover::{
    cosyzygy, cosyzygy_power, injective_envelope, omega, projective_cover, strip_projective_summands, syzygy, syzygy_power,
    Cover, Envelope,
};
pub use free::{FreeModule, FreeSummand};
pub use hom::{hom_space, HomSpace};
pub(crate) use hom::section_of;
pub use io::{dump_module, parse_module, ModuleFile};
pub use iso::{is_indecomposable, is_isomorphic, IndecomposableVerdict, IsoVerdict};
pub use stable::{stable_hom, StableHom};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, zero_vec, Matrix, Scalar, Subspace};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// `(degree, vertex)`
pub type Key = (i64, usize);

/// A graded subspace: one subspace per block.
pub type Submodule = BTreeMap<Key, Subspace>;

#[derive(Clone)]
pub struct GradedModule {
    alg: Arc<GradedAlgebra>,
    dims: BTreeMap<Key, usize>,
    /// `action[x][d]` maps block `(d, src x)` to block `(d + deg x, tgt x)`.
    action: Vec<BTreeMap<i64, Matrix>>,
    presentation: OnceLock<Arc<hom::Presentation>>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule over {} with blocks {:?}", self.alg.name(), self.dims)
    }
}

impl GradedModule {
    pub fn new(alg: Arc<GradedAlgebra>, dims: BTreeMap<Key, usize>, action: Vec<BTreeMap<i64, Matrix>>) -> Result<Self> {
        if action.len() != alg.dim() {
            return Err(Error::Input("one action table per algebra basis element required".into()));
        }
        let m = Self::from_parts(alg, dims, action);
        m.validate()?;
        Ok(m)
    }

    /// Builds without validation, dropping zero blocks and their matrices.
    pub(crate) fn from_parts(alg: Arc<GradedAlgebra>, dims: BTreeMap<Key, usize>, action: Vec<BTreeMap<i64, Matrix>>) -> Self {
        let dims: BTreeMap<Key, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let mut action = action;
        for (x, table) in action.iter_mut().enumerate() {
            let b = alg.elem(x).clone();
            table.retain(|d, m| {
                dims.contains_key(&(*d, b.src)) && dims.contains_key(&(*d + b.deg, b.tgt)) && !m.is_zero()
            });
        }
        GradedModule { alg, dims, action, presentation: OnceLock::new() }
    }

    pub fn zero(alg: Arc<GradedAlgebra>) -> Self {
        let n = alg.dim();
        Self::from_parts(alg, BTreeMap::new(), vec![BTreeMap::new(); n])
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        for (x, table) in self.action.iter().enumerate() {
            let b = alg.elem(x);
            for (d, m) in table {
                let want = (self.dim_at((*d, b.src)), self.dim_at((*d + b.deg, b.tgt)));
                if (m.rows(), m.cols()) != want {
                    return Err(Error::Input(format!("action of {} on degree {d} has the wrong shape", b.label)));
                }
            }
        }
        for &key in self.dims.keys() {
            let e = alg.idempotent(key.1);
            if self.act(e, key).map(|m| m != &Matrix::identity(self.dim_at(key))).unwrap_or(true) {
                return Err(Error::Input(format!("idempotent e_{} is not the identity on block {key:?}", key.1)));
            }
        }
        for (&key, &n) in &self.dims {
            for x in 0..alg.dim() {
                let bx = alg.elem(x);
                if bx.src != key.1 {
                    continue;
                }
                for y in 0..alg.dim() {
                    let by = alg.elem(y);
                    if by.src != bx.tgt {
                        continue;
                    }
                    let tgt = (key.0 + bx.deg + by.deg, by.tgt);
                    let tn = self.dim_at(tgt);
                    if tn == 0 {
                        continue;
                    }
                    let mid = (key.0 + bx.deg, bx.tgt);
                    let lhs = match (self.act(x, key), self.act(y, mid)) {
                        (Some(a), Some(b)) => a.mul(b),
                        _ => Matrix::zeros(n, tn),
                    };
                    let mut rhs = Matrix::zeros(n, tn);
                    for (z, c) in alg.mul_basis(x, y) {
                        if let Some(az) = self.act(*z, key) {
                            rhs.add_scaled(c, az);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Input(format!(
                            "module axiom fails for {} * {} on block {key:?}",
                            bx.label, by.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dims(&self) -> &BTreeMap<Key, usize> {
        &self.dims
    }

    pub fn dim_at(&self, key: Key) -> usize {
        self.dims.get(&key).copied().unwrap_or(0)
    }

    pub fn keys(&self) -> impl Iterator<Item = Key> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for (&(d, _), &n) in &self.dims {
            *m.entry(d).or_insert(0) += n;
        }
        m
    }

    pub fn vertex_dims(&self) -> Vec<usize> {
        let mut v = vec![0; self.alg.num_vertices()];
        for (&(_, u), &n) in &self.dims {
            v[u] += n;
        }
        v
    }

    pub fn highest_degree(&self) -> Option<i64> {
        self.dims.keys().map(|k| k.0).max()
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.dims.keys().map(|k| k.0).min()
    }

    pub fn is_concentrated_in(&self, d: i64) -> bool {
        self.dims.keys().all(|k| k.0 == d)
    }

    /// Action matrix of basis element `x` on block `key`, if nonzero.
    pub fn act(&self, x: usize, key: Key) -> Option<&Matrix> {
        if self.alg.elem(x).src != key.1 {
            return None;
        }
        self.action[x].get(&key.0)
    }

    pub fn action_table(&self, x: usize) -> &BTreeMap<i64, Matrix> {
        &self.action[x]
    }

    /// `v · a` for `v` in block `key` and a homogeneous element `a` with tag `(u, w, e)`.
    pub fn act_homogeneous(&self, key: Key, v: &[Scalar], a: &[Scalar]) -> Option<(Key, Vec<Scalar>)> {
        let (u, w, e) = self.alg.elem_tag(a)?;
        if u != key.1 {
            return None;
        }
        let tgt = (key.0 + e, w);
        let mut out = zero_vec(self.dim_at(tgt));
        for (x, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(m) = self.act(x, key) {
                let img = m.vec_mul(v);
                crate::linalg::axpy(&mut out, c, &img);
            }
        }
        Some((tgt, out))
    }

    /// Matrix of `v ↦ v·a` from block `key` for a homogeneous element `a`.
    pub fn act_matrix(&self, key: Key, a: &[Scalar]) -> Option<(Key, Matrix)> {
        let (u, w, e) = self.alg.elem_tag(a)?;
        if u != key.1 {
            return None;
        }
        let tgt = (key.0 + e, w);
        let mut out = Matrix::zeros(self.dim_at(key), self.dim_at(tgt));
        for (x, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(m) = self.act(x, key) {
                out.add_scaled(c, m);
            }
        }
        Some((tgt, out))
    }

    /// `M⟨j⟩` with `M⟨j⟩_i = M_{i-j}`.
    pub fn shift(&self, j: i64) -> GradedModule {
        let dims = self.dims.iter().map(|(&(d, v), &n)| ((d + j, v), n)).collect();
        let action = self.action.iter().map(|t| t.iter().map(|(&d, m)| (d + j, m.clone())).collect()).collect();
        Self::from_parts(self.alg.clone(), dims, action)
    }

    /// Twist `M_φ` with `m · λ = m φ(λ)`; `φ` must permute the vertex idempotents.
    pub fn twist(&self, phi: &crate::algebra::GradedAlgebraMorphism) -> Result<GradedModule> {
        let sigma = phi.vertex_permutation().ok_or_else(|| {
            Error::Precondition("twisting requires an automorphism permuting the vertex idempotents".into())
        })?;
        let alg = &self.alg;
        let mut inv = vec![0; sigma.len()];
        for (v, &s) in sigma.iter().enumerate() {
            inv[s] = v;
        }
        let dims = self.dims.iter().map(|(&(d, w), &n)| ((d, inv[w]), n)).collect();
        let mut action = vec![BTreeMap::new(); alg.dim()];
        for (x, table) in action.iter_mut().enumerate() {
            let bx = alg.elem(x);
            let img = phi.apply_basis(x);
            let old_src = sigma[bx.src];
            for &(d, w) in self.dims.keys() {
                if w != old_src {
                    continue;
                }
                let old_tgt = (d + bx.deg, sigma[bx.tgt]);
                if self.dim_at(old_tgt) == 0 {
                    continue;
                }
                let mut m = Matrix::zeros(self.dim_at((d, w)), self.dim_at(old_tgt));
                for (y, c) in img.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(a) = self.act(y, (d, w)) {
                        m.add_scaled(c, a);
                    }
                }
                table.insert(d, m);
            }
        }
        Ok(Self::from_parts(alg.clone(), dims, action))
    }

    /// Sum of the modules with block order following the argument order.
    pub fn direct_sum(mods: &[&GradedModule]) -> DirectSum {
        assert!(!mods.is_empty(), "direct sum of an empty list");
        let alg = mods[0].alg.clone();
        let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
        let mut offsets: Vec<BTreeMap<Key, usize>> = Vec::new();
        for m in mods {
            let mut off = BTreeMap::new();
            for (&k, &n) in &m.dims {
                let e = dims.entry(k).or_insert(0);
                off.insert(k, *e);
                *e += n;
            }
            offsets.push(off);
        }
        let mut action = vec![BTreeMap::new(); alg.dim()];
        for (x, table) in action.iter_mut().enumerate() {
            let bx = alg.elem(x);
            for (i, m) in mods.iter().enumerate() {
                for (&d, a) in &m.action[x] {
                    let src = (d, bx.src);
                    let tgt = (d + bx.deg, bx.tgt);
                    let entry = table.entry(d).or_insert_with(|| Matrix::zeros(dims[&src], dims[&tgt]));
                    entry.put(offsets[i][&src], offsets[i][&tgt], a);
                }
            }
        }
        let sum = Self::from_parts(alg, dims, action);
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for (i, m) in mods.iter().enumerate() {
            let mut inc = BTreeMap::new();
            let mut proj = BTreeMap::new();
            for (&k, &n) in &m.dims {
                let mut a = Matrix::zeros(n, sum.dim_at(k));
                let mut p = Matrix::zeros(sum.dim_at(k), n);
                for r in 0..n {
                    a.set(r, offsets[i][&k] + r, Scalar::one());
                    p.set(offsets[i][&k] + r, r, Scalar::one());
                }
                inc.insert(k, a);
                proj.insert(k, p);
            }
            inclusions.push(GradedHom::from_blocks(inc));
            projections.push(GradedHom::from_blocks(proj));
        }
        DirectSum { module: sum, inclusions, projections }
    }

    /// The submodule spanned by a graded subspace, which must be closed under the action.
    pub fn submodule(&self, sub: &Submodule) -> (GradedModule, GradedHom) {
        let dims: BTreeMap<Key, usize> = sub.iter().map(|(&k, s)| (k, s.dim())).filter(|(_, n)| *n > 0).collect();
        let mut action = vec![BTreeMap::new(); self.alg.dim()];
        for (x, table) in action.iter_mut().enumerate() {
            let bx = self.alg.elem(x);
            for (&d, a) in &self.action[x] {
                let (src, tgt) = ((d, bx.src), (d + bx.deg, bx.tgt));
                let (Some(s), Some(t)) = (sub.get(&src), sub.get(&tgt)) else { continue };
                if s.dim() == 0 || t.dim() == 0 {
                    continue;
                }
                let img = s.basis().mul(a);
                let rows: Vec<Vec<Scalar>> = img
                    .to_rows()
                    .iter()
                    .map(|r| t.coords(r).expect("subspace is not closed under the action"))
                    .collect();
                table.insert(d, Matrix::from_rows(rows, t.dim()));
            }
        }
        let m = Self::from_parts(self.alg.clone(), dims, action);
        let inc = GradedHom::from_blocks(
            sub.iter().filter(|(_, s)| s.dim() > 0).map(|(&k, s)| (k, s.basis().clone())).collect(),
        );
        (m, inc)
    }

    /// `M / sub` with basis the non-pivot coordinates of each block.
    pub fn quotient(&self, sub: &Submodule) -> (GradedModule, GradedHom) {
        let mut proj_blocks = BTreeMap::new();
        let mut embed_blocks: BTreeMap<Key, Matrix> = BTreeMap::new();
        let mut dims = BTreeMap::new();
        for (&k, &n) in &self.dims {
            let s = sub.get(&k).cloned().unwrap_or_else(|| Subspace::zero(n));
            let q = s.complement_indices();
            let mut p = Matrix::zeros(n, q.len());
            for i in 0..n {
                let r = s.reduce(&crate::linalg::unit_vec(n, i));
                for (j, &c) in q.iter().enumerate() {
                    p.set(i, j, r[c].clone());
                }
            }
            let mut e = Matrix::zeros(q.len(), n);
            for (j, &c) in q.iter().enumerate() {
                e.set(j, c, Scalar::one());
            }
            dims.insert(k, q.len());
            proj_blocks.insert(k, p);
            embed_blocks.insert(k, e);
        }
        let mut action = vec![BTreeMap::new(); self.alg.dim()];
        for (x, table) in action.iter_mut().enumerate() {
            let bx = self.alg.elem(x);
            for (&d, a) in &self.action[x] {
                let (src, tgt) = ((d, bx.src), (d + bx.deg, bx.tgt));
                table.insert(d, embed_blocks[&src].mul(a).mul(&proj_blocks[&tgt]));
            }
        }
        let m = Self::from_parts(self.alg.clone(), dims, action);
        let proj = GradedHom::from_blocks(proj_blocks.into_iter().filter(|(_, p)| p.cols() > 0).collect());
        (m, proj)
    }

    /// Submodule generated by the given block vectors: the span of all `g · x`.
    pub fn generated(&self, gens: &[(Key, Vec<Scalar>)]) -> Submodule {
        let mut vecs: BTreeMap<Key, Vec<Vec<Scalar>>> = BTreeMap::new();
        for (key, v) in gens {
            for x in 0..self.alg.dim() {
                if let Some(a) = self.act(x, *key) {
                    let bx = self.alg.elem(x);
                    let w = a.vec_mul(v);
                    if !is_zero_vec(&w) {
                        vecs.entry((key.0 + bx.deg, bx.tgt)).or_default().push(w);
                    }
                }
            }
        }
        vecs.into_iter().map(|(k, vs)| (k, Subspace::span(self.dim_at(k), &vs))).collect()
    }

    /// `M · rad Λ`
    pub fn radical_submodule(&self) -> Submodule {
        let mut vecs: BTreeMap<Key, Vec<Vec<Scalar>>> = BTreeMap::new();
        for r in self.alg.radical() {
            for &key in self.dims.keys() {
                if let Some((tgt, m)) = self.act_matrix(key, r) {
                    if self.dim_at(tgt) == 0 {
                        continue;
                    }
                    vecs.entry(tgt).or_default().extend(m.to_rows().into_iter().filter(|w| !is_zero_vec(w)));
                }
            }
        }
        self.dims
            .iter()
            .map(|(&k, &n)| (k, Subspace::span(n, vecs.get(&k).map(|v| v.as_slice()).unwrap_or(&[]))))
            .collect()
    }

    /// `{m : m · rad Λ = 0}`
    pub fn socle(&self) -> Submodule {
        let mut out = BTreeMap::new();
        for (&key, &n) in &self.dims {
            let mut cols: Vec<Matrix> = Vec::new();
            for r in self.alg.radical() {
                if let Some((tgt, m)) = self.act_matrix(key, r) {
                    if self.dim_at(tgt) > 0 {
                        cols.push(m);
                    }
                }
            }
            let s = if cols.is_empty() {
                Subspace::full(n)
            } else {
                let big = cols.iter().skip(1).fold(cols[0].clone(), |acc, m| acc.hstack(m));
                Subspace::span(n, &crate::linalg::left_kernel(&big))
            };
            out.insert(key, s);
        }
        out
    }

    /// Per block, basis indices whose classes span `top M = M / M rad Λ`.
    pub fn top_indices(&self) -> BTreeMap<Key, Vec<usize>> {
        let rad = self.radical_submodule();
        rad.iter().map(|(&k, s)| (k, s.complement_indices())).filter(|(_, v)| !v.is_empty()).collect()
    }

    pub fn top_dims(&self) -> BTreeMap<Key, usize> {
        self.top_indices().into_iter().map(|(k, v)| (k, v.len())).collect()
    }

    pub fn socle_dims(&self) -> BTreeMap<Key, usize> {
        self.socle().into_iter().map(|(k, s)| (k, s.dim())).filter(|(_, n)| *n > 0).collect()
    }

    /// Truncations `(M_{≥i}, M_{≤i}, M_i)`: a submodule, a quotient and a section.
    pub fn truncations(&self, i: i64) -> (GradedModule, GradedModule, GradedModule) {
        let ge: Submodule = self
            .dims
            .iter()
            .map(|(&k, &n)| (k, if k.0 >= i { Subspace::full(n) } else { Subspace::zero(n) }))
            .collect();
        let gt: Submodule = self
            .dims
            .iter()
            .map(|(&k, &n)| (k, if k.0 > i { Subspace::full(n) } else { Subspace::zero(n) }))
            .collect();
        let (upper, _) = self.submodule(&ge);
        let (lower, _) = self.quotient(&gt);
        let (section, _) = upper.quotient(
            &upper.dims.iter().map(|(&k, &n)| (k, if k.0 > i { Subspace::full(n) } else { Subspace::zero(n) })).collect(),
        );
        (upper, lower, section)
    }

    /// Restriction along `Λ₀ ⊆ Λ` of a module concentrated in degree zero.
    pub fn restrict_to_degree_zero(&self) -> Result<GradedModule> {
        if !self.is_concentrated_in(0) {
            return Err(Error::Precondition("module is not concentrated in degree 0".into()));
        }
        let a0 = self.alg.degree_zero();
        let zero_idx = self.alg.component(0);
        let action = zero_idx.iter().map(|&x| self.action[x].clone()).collect();
        Ok(Self::from_parts(a0, self.dims.clone(), action))
    }

    /// Inflation along `Λ → Λ₀` of a module over the degree-zero part, placed in degree 0.
    pub fn inflate(&self, alg: &Arc<GradedAlgebra>) -> Result<GradedModule> {
        let a0 = alg.degree_zero();
        if !self.alg.same_as(&a0) && !self.alg.structurally_equal(&a0) {
            return Err(Error::Precondition("module is not over the degree-zero part of the target algebra".into()));
        }
        let zero_idx = alg.component(0);
        let mut action = vec![BTreeMap::new(); alg.dim()];
        for (i, &x) in zero_idx.iter().enumerate() {
            action[x] = self.action[i].clone();
        }
        Ok(Self::from_parts(alg.clone(), self.dims.clone(), action))
    }

    /// The underlying ungraded module over `ungr`, the algebra with all degrees set to 0.
    /// Blocks of one vertex are stacked in increasing degree.
    pub fn forget_grading(&self, ungr: &Arc<GradedAlgebra>) -> GradedModule {
        let mut offset: BTreeMap<Key, usize> = BTreeMap::new();
        let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
        for (&(d, v), &n) in &self.dims {
            let e = dims.entry((0, v)).or_insert(0);
            offset.insert((d, v), *e);
            *e += n;
        }
        let mut action = vec![BTreeMap::new(); self.alg.dim()];
        for (x, table) in self.action.iter().enumerate() {
            let bx = self.alg.elem(x);
            if table.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(dims[&(0, bx.src)], dims[&(0, bx.tgt)]);
            for (&d, a) in table {
                m.put(offset[&(d, bx.src)], offset[&(d + bx.deg, bx.tgt)], a);
            }
            action[x].insert(0, m);
        }
        Self::from_parts(ungr.clone(), dims, action)
    }

    /// Basis vector `i` of block `key`.
    pub fn unit(&self, key: Key, i: usize) -> Vec<Scalar> {
        crate::linalg::unit_vec(self.dim_at(key), i)
    }

    pub(crate) fn presentation(&self) -> Arc<hom::Presentation> {
        self.presentation.get_or_init(|| Arc::new(hom::Presentation::new(self))).clone()
    }

    /// Same algebra, blocks and action matrices.
    pub fn equals(&self, other: &GradedModule) -> bool {
        self.alg.same_as(&other.alg) && self.dims == other.dims && self.action == other.action
    }

    /// Dual `DM` as a right module over `op`, with `(DM)_d = D(M_{-d})`.
    pub fn dual(&self, op: &Arc<GradedAlgebra>) -> GradedModule {
        assert_eq!(op.dim(), self.alg.dim(), "dual needs the opposite algebra");
        let dims = self.dims.iter().map(|(&(d, v), &n)| ((-d, v), n)).collect();
        let mut action = vec![BTreeMap::new(); op.dim()];
        for (x, table) in action.iter_mut().enumerate() {
            let bx = self.alg.elem(x);
            for (&d, a) in &self.action[x] {
                // a: (d, src) -> (d + e, tgt); transpose: (-(d+e), tgt) -> (-d, src) over Λ^op.
                table.insert(-(d + bx.deg), a.transpose());
            }
        }
        Self::from_parts(op.clone(), dims, action)
    }

    /// The right regular module `Λ_Λ`.
    pub fn regular(alg: &Arc<GradedAlgebra>) -> GradedModule {
        let sums: Vec<GradedModule> = (0..alg.num_vertices()).map(|v| Self::projective(alg, v, 0)).collect();
        let refs: Vec<&GradedModule> = sums.iter().collect();
        Self::direct_sum(&refs).module
    }

    /// `e_v Λ ⟨shift⟩`
    pub fn projective(alg: &Arc<GradedAlgebra>, v: usize, shift: i64) -> GradedModule {
        FreeModule::new(alg.clone(), vec![(v, shift)]).module().clone()
    }

    /// `D(Λ e_v) ⟨shift⟩`, whose socle is `S_v` in degree `shift`.
    pub fn injective(alg: &Arc<GradedAlgebra>, v: usize, shift: i64) -> GradedModule {
        let op = alg.opposite();
        GradedModule::projective(&op, v, -shift).dual(alg)
    }

    /// Simple module `S_v` in degree `d`.
    pub fn simple(alg: &Arc<GradedAlgebra>, v: usize, d: i64) -> GradedModule {
        let mut dims = BTreeMap::new();
        dims.insert((d, v), 1);
        let mut action = vec![BTreeMap::new(); alg.dim()];
        action[alg.idempotent(v)].insert(d, Matrix::identity(1));
        Self::from_parts(alg.clone(), dims, action)
    }

    /// Module concentrated in degree 0 given by vertex dimensions and arrow-like
    /// matrices for selected basis elements of degree 0; other non-idempotents act by
    /// the products they generate. Used for small hand-built examples.
    pub fn from_degree_zero_rep(
        alg: &Arc<GradedAlgebra>,
        vertex_dims: &[usize],
        generators: &[(usize, Matrix)],
    ) -> Result<GradedModule> {
        let mut dims = BTreeMap::new();
        for (v, &n) in vertex_dims.iter().enumerate() {
            dims.insert((0, v), n);
        }
        let mut action: Vec<BTreeMap<i64, Matrix>> = vec![BTreeMap::new(); alg.dim()];
        for v in 0..alg.num_vertices() {
            if vertex_dims[v] > 0 {
                action[alg.idempotent(v)].insert(0, Matrix::identity(vertex_dims[v]));
            }
        }
        let mut known: Vec<Option<Matrix>> = vec![None; alg.dim()];
        for v in 0..alg.num_vertices() {
            known[alg.idempotent(v)] = Some(Matrix::identity(vertex_dims[v]));
        }
        for (x, m) in generators {
            known[*x] = Some(m.clone());
        }
        // Fill remaining degree-zero elements through products of known ones.
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..alg.dim() {
                for y in 0..alg.dim() {
                    let (Some(a), Some(b)) = (&known[x], &known[y]) else { continue };
                    if alg.elem(x).tgt != alg.elem(y).src {
                        continue;
                    }
                    let prod = alg.mul_basis(x, y);
                    if prod.len() == 1 && prod[0].1.is_one() && known[prod[0].0].is_none() {
                        known[prod[0].0] = Some(a.mul(b));
                        changed = true;
                    }
                }
            }
        }
        for x in 0..alg.dim() {
            let bx = alg.elem(x);
            if let Some(m) = &known[x] {
                if bx.deg == 0 && vertex_dims[bx.src] > 0 && vertex_dims[bx.tgt] > 0 {
                    action[x].insert(0, m.clone());
                }
            }
        }
        GradedModule::new(alg.clone(), dims, action)
    }
}

pub struct DirectSum {
    pub module: GradedModule,
    pub inclusions: Vec<GradedHom>,
    pub projections: Vec<GradedHom>,
}

/// Degree-0 homomorphism given blockwise; absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedHom {
    blocks: BTreeMap<Key, Matrix>,
}

impl GradedHom {
    pub fn from_blocks(blocks: BTreeMap<Key, Matrix>) -> Self {
        GradedHom { blocks: blocks.into_iter().filter(|(_, m)| !m.is_zero()).collect() }
    }

    pub fn zero() -> Self {
        GradedHom { blocks: BTreeMap::new() }
    }

    pub fn identity(m: &GradedModule) -> Self {
        Self::from_blocks(m.dims.iter().map(|(&k, &n)| (k, Matrix::identity(n))).collect())
    }

    pub fn blocks(&self) -> &BTreeMap<Key, Matrix> {
        &self.blocks
    }

    /// Block at `key` with the given shape, zero if absent.
    pub fn block(&self, key: Key, rows: usize, cols: usize) -> Matrix {
        self.blocks.get(&key).cloned().unwrap_or_else(|| Matrix::zeros(rows, cols))
    }

    pub fn block_for(&self, src: &GradedModule, tgt: &GradedModule, key: Key) -> Matrix {
        self.block(key, src.dim_at(key), tgt.dim_at(key))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &GradedHom) -> GradedHom {
        let mut out = BTreeMap::new();
        for (k, a) in &self.blocks {
            if let Some(b) = g.blocks.get(k) {
                out.insert(*k, a.mul(b));
            }
        }
        Self::from_blocks(out)
    }

    pub fn add(&self, other: &GradedHom) -> GradedHom {
        let mut out = self.blocks.clone();
        for (k, b) in &other.blocks {
            match out.get_mut(k) {
                Some(a) => *a = a.add(b),
                None => {
                    out.insert(*k, b.clone());
                }
            }
        }
        Self::from_blocks(out)
    }

    pub fn scale(&self, c: &Scalar) -> GradedHom {
        Self::from_blocks(self.blocks.iter().map(|(k, m)| (*k, m.scale(c))).collect())
    }

    pub fn apply(&self, key: Key, v: &[Scalar], tgt_dim: usize) -> Vec<Scalar> {
        match self.blocks.get(&key) {
            Some(m) => m.vec_mul(v),
            None => zero_vec(tgt_dim),
        }
    }

    /// Re-key along a degree shift.
    pub fn shift(&self, j: i64) -> GradedHom {
        Self::from_blocks(self.blocks.iter().map(|(&(d, v), m)| ((d + j, v), m.clone())).collect())
    }

    /// Entries flattened over the common blocks of `src` and `tgt`, in key order.
    pub fn flatten(&self, src: &GradedModule, tgt: &GradedModule) -> Vec<Scalar> {
        let mut out = Vec::new();
        for (&k, &n) in &src.dims {
            let t = tgt.dim_at(k);
            if t == 0 {
                continue;
            }
            let b = self.block(k, n, t);
            for r in 0..n {
                out.extend(b.row(r).iter().cloned());
            }
        }
        out
    }

    pub fn unflatten(src: &GradedModule, tgt: &GradedModule, v: &[Scalar]) -> GradedHom {
        let mut blocks = BTreeMap::new();
        let mut pos = 0;
        for (&k, &n) in &src.dims {
            let t = tgt.dim_at(k);
            if t == 0 {
                continue;
            }
            let mut b = Matrix::zeros(n, t);
            for r in 0..n {
                for c in 0..t {
                    b.set(r, c, v[pos].clone());
                    pos += 1;
                }
            }
            blocks.insert(k, b);
        }
        Self::from_blocks(blocks)
    }

    pub fn flat_len(src: &GradedModule, tgt: &GradedModule) -> usize {
        src.dims.iter().map(|(&k, &n)| n * tgt.dim_at(k)).sum()
    }

    /// Checks commutation with every action matrix.
    pub fn is_hom(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        if self.blocks.keys().any(|k| src.dim_at(*k) == 0 || tgt.dim_at(*k) == 0) {
            return false;
        }
        for (&key, &n) in &src.dims {
            let f = self.block_for(src, tgt, key);
            for x in 0..src.alg.dim() {
                let bx = src.alg.elem(x);
                if bx.src != key.1 {
                    continue;
                }
                let tk = (key.0 + bx.deg, bx.tgt);
                let (sm, tm) = (src.dim_at(tk), tgt.dim_at(tk));
                let a = src.act(x, key).cloned().unwrap_or_else(|| Matrix::zeros(n, sm));
                let b = tgt.act(x, key).cloned().unwrap_or_else(|| Matrix::zeros(tgt.dim_at(key), tm));
                let g = self.block_for(src, tgt, tk);
                if a.mul(&g) != f.mul(&b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn kernel(&self, src: &GradedModule, tgt: &GradedModule) -> Submodule {
        src.dims
            .iter()
            .map(|(&k, &n)| {
                let f = self.block_for(src, tgt, k);
                (k, Subspace::span(n, &crate::linalg::left_kernel(&f)))
            })
            .collect()
    }

    pub fn image(&self, src: &GradedModule, tgt: &GradedModule) -> Submodule {
        tgt.dims
            .iter()
            .map(|(&k, &n)| {
                let f = self.block_for(src, tgt, k);
                (k, Subspace::row_space(&Matrix::zeros(0, n).vstack(&f)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self, src: &GradedModule) -> bool {
        src.dims.iter().all(|(&k, &n)| self.blocks.get(&k).map(|m| m.rank() == n).unwrap_or(n == 0))
    }

    pub fn is_surjective(&self, tgt: &GradedModule) -> bool {
        tgt.dims.iter().all(|(&k, &n)| self.blocks.get(&k).map(|m| m.rank() == n).unwrap_or(n == 0))
    }

    pub fn is_iso(&self, src: &GradedModule, tgt: &GradedModule) -> bool {
        src.dims == tgt.dims && self.is_injective(src)
    }

    pub fn inverse(&self, src: &GradedModule) -> Option<GradedHom> {
        let mut out = BTreeMap::new();
        for (&k, &n) in &src.dims {
            let m = self.blocks.get(&k)?;
            if m.rows() != n {
                return None;
            }
            out.insert(k, m.inverse()?);
        }
        Some(Self::from_blocks(out))
    }

    pub fn transpose(&self) -> GradedHom {
        Self::from_blocks(self.blocks.iter().map(|(&(d, v), m)| ((-d, v), m.transpose())).collect())
    }
}

/// Cokernel of a hom together with the projection.
pub fn cokernel(f: &GradedHom, src: &GradedModule, tgt: &GradedModule) -> (GradedModule, GradedHom) {
    tgt.quotient(&f.image(src, tgt))
}

/// Kernel of a hom together with the inclusion.
pub fn kernel(f: &GradedHom, src: &GradedModule, tgt: &GradedModule) -> (GradedModule, GradedHom) {
    src.submodule(&f.kernel(src, tgt))
}
