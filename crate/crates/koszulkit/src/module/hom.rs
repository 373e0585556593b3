use super::{FreeModule, GradedHom, GradedModule, Key};
use crate::linalg::{left_kernel, Matrix, Scalar};
use num::Zero;
use std::collections::BTreeMap;

/// Minimal presentation `P₁ → P₀ → M → 0` data used for Hom computations.
#[derive(Debug)]
pub(crate) struct Presentation {
    pub free: FreeModule,
    pub cover: GradedHom,
    /// Relations as `(key, per-generator algebra elements)` spanning the kernel's top.
    pub relations: Vec<(Key, Vec<Vec<Scalar>>)>,
    /// `section[key]`: rows are preimages in `P₀` of the basis vectors of `M`.
    pub section: BTreeMap<Key, Matrix>,
    pub kernel: super::Submodule,
}

/// `R` with `R · π = I` for a surjective block `π` (rows = source coordinates).
pub(crate) fn section_of(pi: &Matrix) -> Matrix {
    let (k, m) = (pi.rows(), pi.cols());
    let aug = pi.transpose().hstack(&Matrix::identity(m));
    let (r, pivots) = crate::linalg::rref(&aug);
    let mut rt = Matrix::zeros(k, m);
    for (i, &p) in pivots.iter().enumerate() {
        if p >= k {
            break;
        }
        for c in 0..m {
            rt.set(p, c, r.get(i, k + c).clone());
        }
    }
    rt.transpose()
}

impl Presentation {
    pub fn new(m: &GradedModule) -> Self {
        let alg = m.algebra().clone();
        let tops = m.top_indices();
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for (&key, idx) in &tops {
            for &i in idx {
                gens.push((key.1, key.0));
                images.push(m.unit(key, i));
            }
        }
        let free = FreeModule::new(alg, gens);
        let cover = free.hom_to(m, &images);
        let p0 = free.module();
        let kernel = cover.kernel(p0, m);
        let (kmod, kinc) = p0.submodule(&kernel);
        let mut relations = Vec::new();
        for (&key, idx) in &kmod.top_indices() {
            let inc = kinc.block_for(&kmod, p0, key);
            for &i in idx {
                relations.push((key, free.decompose(key, inc.row(i))));
            }
        }
        let mut section = BTreeMap::new();
        for (&key, &n) in m.dims() {
            let pi = cover.block(key, p0.dim_at(key), n);
            section.insert(key, section_of(&pi));
        }
        Presentation { free, cover, relations, section, kernel }
    }
}

/// A basis of `Hom_{gr Λ}(M, N)` (degree-0 homs).
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<GradedHom>,
    flat: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `f` in the basis, if `f` lies in the span.
    pub fn coords(&self, f: &GradedHom, src: &GradedModule, tgt: &GradedModule) -> Option<Vec<Scalar>> {
        if self.basis.is_empty() {
            return if f.is_zero() { Some(vec![]) } else { None };
        }
        let v = f.flatten(src, tgt);
        crate::linalg::solve(&self.flat.transpose(), &v).ok().flatten()
    }

    pub fn combination(&self, c: &[Scalar]) -> GradedHom {
        let mut out = GradedHom::zero();
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                out = out.add(&b.scale(x));
            }
        }
        out
    }

    pub(crate) fn from_basis(basis: Vec<GradedHom>, src: &GradedModule, tgt: &GradedModule) -> Self {
        let len = GradedHom::flat_len(src, tgt);
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|f| f.flatten(src, tgt)).collect();
        HomSpace { flat: Matrix::from_rows(rows, len), basis }
    }

    pub fn flat_matrix(&self) -> &Matrix {
        &self.flat
    }
}

/// `Hom(M, N) = ker(Hom(P₀, N) → Hom(P₁, N))` from the presentation of `M`.
pub fn hom_space(m: &GradedModule, n: &GradedModule) -> HomSpace {
    assert!(m.algebra().same_as(n.algebra()), "modules over different algebras");
    let pres = m.presentation();
    let free = &pres.free;
    let mut offsets = Vec::new();
    let mut total = 0;
    for g in 0..free.rank() {
        offsets.push(total);
        total += n.dim_at(free.gen_key(g));
    }
    if total == 0 {
        return HomSpace::from_basis(vec![], m, n);
    }
    let mut cols: Vec<Matrix> = Vec::new();
    for (key, elems) in &pres.relations {
        let t = n.dim_at(*key);
        if t == 0 {
            continue;
        }
        let mut c = Matrix::zeros(total, t);
        for (g, a) in elems.iter().enumerate() {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            let gk = free.gen_key(g);
            if n.dim_at(gk) == 0 {
                continue;
            }
            if let Some((tk, mat)) = n.act_matrix(gk, a) {
                debug_assert_eq!(tk, *key);
                c.put(offsets[g], 0, &mat);
            }
        }
        cols.push(c);
    }
    let sols: Vec<Vec<Scalar>> = if cols.is_empty() {
        (0..total).map(|i| crate::linalg::unit_vec(total, i)).collect()
    } else {
        let big = cols.iter().skip(1).fold(cols[0].clone(), |acc, c| acc.hstack(c));
        left_kernel(&big)
    };
    let basis: Vec<GradedHom> = sols
        .iter()
        .map(|s| {
            let images: Vec<Vec<Scalar>> = (0..free.rank())
                .map(|g| s[offsets[g]..offsets[g] + n.dim_at(free.gen_key(g))].to_vec())
                .collect();
            let phi = free.hom_to(n, &images);
            let mut blocks = BTreeMap::new();
            for (&key, r) in &pres.section {
                let t = n.dim_at(key);
                if t == 0 {
                    continue;
                }
                let pb = phi.block(key, free.module().dim_at(key), t);
                blocks.insert(key, r.mul(&pb));
            }
            GradedHom::from_blocks(blocks)
        })
        .collect();
    HomSpace::from_basis(basis, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn section_inverts_surjection() {
        let pi = Matrix::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]);
        let r = section_of(&pi);
        assert_eq!(r.mul(&pi), Matrix::identity(2));
    }

    #[test]
    fn hom_from_regular_is_evaluation() {
        let alg = Arc::new(crate::algebra::trivial_extension(&a2()).unwrap());
        let reg = GradedModule::regular(&alg);
        for v in 0..2 {
            let m = GradedModule::projective(&alg, v, 0);
            let h = hom_space(&reg, &m);
            let deg0: usize = m.dims().iter().filter(|(k, _)| k.0 == 0).map(|(_, n)| n).sum();
            assert_eq!(h.dim(), deg0);
            for f in &h.basis {
                assert!(f.is_hom(&reg, &m));
            }
        }
    }

    #[test]
    fn distinct_simples_have_no_homs() {
        let alg = Arc::new(a2());
        let s1 = GradedModule::simple(&alg, 0, 0);
        let s2 = GradedModule::simple(&alg, 1, 0);
        assert_eq!(hom_space(&s1, &s2).dim(), 0);
        assert_eq!(hom_space(&s1, &s1).dim(), 1);
    }
}
