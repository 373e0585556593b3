use super::{hom_space, projective_cover, GradedHom, GradedModule, HomSpace};
use crate::linalg::{Matrix, Scalar, Subspace};

/// `Hom(M, N)` modulo maps factoring through the projective cover of `N`.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomSpace,
    /// Span of the projectively factoring maps, in coordinates of `hom`.
    pub projective_part: Subspace,
    /// Indices of `hom.basis` whose classes form a basis of the quotient.
    pub representatives: Vec<usize>,
}

impl StableHom {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_zero(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Representative homs of a quotient basis.
    pub fn basis(&self) -> Vec<GradedHom> {
        self.representatives.iter().map(|&i| self.hom.basis[i].clone()).collect()
    }

    /// Coordinates of the class of `f` in the quotient basis.
    pub fn class_coords(&self, f: &GradedHom, src: &GradedModule, tgt: &GradedModule) -> Option<Vec<Scalar>> {
        let c = self.hom.coords(f, src, tgt)?;
        let r = self.projective_part.reduce(&c);
        Some(self.representatives.iter().map(|&i| r[i].clone()).collect())
    }

    /// Whether `f` factors through a projective.
    pub fn is_null(&self, f: &GradedHom, src: &GradedModule, tgt: &GradedModule) -> bool {
        self.class_coords(f, src, tgt).map(|c| crate::linalg::is_zero_vec(&c)).unwrap_or(false)
    }
}

pub fn stable_hom(m: &GradedModule, n: &GradedModule) -> StableHom {
    let hom = hom_space(m, n);
    let cover = projective_cover(n);
    let p = cover.free.module();
    let through = hom_space(m, p);
    let mut vecs = Vec::new();
    for g in &through.basis {
        let f = g.then(&cover.map);
        if let Some(c) = hom.coords(&f, m, n) {
            vecs.push(c);
        }
    }
    let projective_part = if hom.dim() == 0 {
        Subspace::zero(0)
    } else {
        Subspace::row_space(&Matrix::from_rows(vecs, hom.dim()))
    };
    let representatives = projective_part.complement_indices();
    StableHom { hom, projective_part, representatives }
}
