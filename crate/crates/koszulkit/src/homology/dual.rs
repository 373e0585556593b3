use super::ext::hom_to_cochain;
use super::{ext_space, projective_resolution, yoneda_product, ExtSpace, ProjectiveResolution};
use crate::algebra::{BasisElem, GradedAlgebra, SparseVec, TruncatedGradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Scalar};
use crate::module::{hom_space, GradedHom, GradedModule};
use num::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `⊕_{i ≤ d} Ext^{ni}_{gr Λ}(T, T⟨i⟩)` with the composition product, one vertex per summand of `T`.
///
/// A class `x ∈ Ext^{ni}(T^a, T^b⟨i⟩)` is a basis element from vertex `b` to vertex `a`, and
/// `x · y = x ∘ y`, so that the degree-zero part is `End(T)` rather than its opposite.
#[derive(Clone, Debug)]
pub struct KoszulDual {
    pub algebra: TruncatedGradedAlgebra,
    pub n: usize,
    pub summands: Vec<GradedModule>,
    pub resolutions: Vec<ProjectiveResolution>,
    /// `spaces[(i, a, b)]`: `Ext^{ni}(T^a, T^b⟨i⟩)` with the chosen representatives.
    pub spaces: BTreeMap<(i64, usize, usize), ExtSpace>,
    /// Basis element `x` is representative `k` of `spaces[(i, a, b)]`, stored as `(i, a, b, k)`.
    pub index: Vec<(i64, usize, usize, usize)>,
}

impl KoszulDual {
    /// Coordinates in the algebra basis of a cocycle of `Ext^{ni}(T^a, T^b⟨i⟩)`.
    pub fn coords(&self, i: i64, a: usize, b: usize, cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
        basis_coords(&self.spaces, &self.index, (i, a, b), cocycle)
    }

    /// The representative cocycle of basis element `x`.
    pub fn cocycle(&self, x: usize) -> &[Scalar] {
        let (i, a, b, k) = self.index[x];
        &self.spaces[&(i, a, b)].reps[k]
    }
}

type Spaces = BTreeMap<(i64, usize, usize), ExtSpace>;

fn basis_coords(spaces: &Spaces, index: &[(i64, usize, usize, usize)], key: (i64, usize, usize), cocycle: &[Scalar]) -> Result<Vec<Scalar>> {
    let c = spaces[&key].class_coords(cocycle)?;
    let mut out = vec![Scalar::zero(); index.len()];
    for (x, &(i, a, b, k)) in index.iter().enumerate() {
        if (i, a, b) == key {
            out[x] = c[k].clone();
        }
    }
    Ok(out)
}

/// The identity of `End(M)` followed by a basis of trace-zero endomorphisms.
fn endomorphism_basis(m: &GradedModule) -> Vec<GradedHom> {
    let e = hom_space(m, m);
    let traces: Vec<Scalar> = e
        .basis
        .iter()
        .map(|f| f.blocks().values().map(Matrix::trace).fold(Scalar::zero(), |s, t| s + t))
        .collect();
    let mut out = vec![GradedHom::identity(m)];
    let row = Matrix::from_rows(vec![traces], e.dim());
    for c in kernel_basis(&row) {
        out.push(e.combination(&c));
    }
    out
}

fn degree_zero_space(res: &ProjectiveResolution, tb: &GradedModule, homs: &[GradedHom]) -> Result<ExtSpace> {
    let base = ext_space(res, tb, 0, 0)?;
    let reps: Vec<Vec<Scalar>> = homs.iter().map(|f| hom_to_cochain(res, tb, 0, 0, &res.augmentation().then(f))).collect();
    if reps.len() != base.dim() {
        return Err(Error::Internal("Hom and Ext^0 dimensions differ".into()));
    }
    Ok(ExtSpace { reps, ..base })
}

/// Builds the `n`-`T`-Koszul dual up to degree `d_max` from the indecomposable summands of `T`.
pub fn koszul_dual(summands: &[GradedModule], n: usize, d_max: i64) -> Result<KoszulDual> {
    if summands.is_empty() || n == 0 || d_max < 0 {
        return Err(Error::Input("Koszul dual needs summands, n ≥ 1 and d_max ≥ 0".into()));
    }
    let alg = summands[0].algebra().clone();
    if summands.iter().any(|t| !t.algebra().same_as(&alg)) {
        return Err(Error::Input("summands over different algebras".into()));
    }
    let t = summands.len();
    let depth = n * d_max as usize + 1;
    let resolutions: Vec<ProjectiveResolution> = summands.iter().map(|m| projective_resolution(m, depth)).collect();
    let mut spaces: Spaces = BTreeMap::new();
    for i in 0..=d_max {
        for a in 0..t {
            for b in 0..t {
                let space = if i == 0 {
                    let homs =
                        if a == b { endomorphism_basis(&summands[a]) } else { hom_space(&summands[a], &summands[b]).basis };
                    degree_zero_space(&resolutions[a], &summands[b], &homs)?
                } else {
                    ext_space(&resolutions[a], &summands[b], n * i as usize, i)?
                };
                spaces.insert((i, a, b), space);
            }
        }
    }
    let mut index = Vec::new();
    let mut basis = Vec::new();
    let mut idempotents = vec![0; t];
    for (&(i, a, b), space) in &spaces {
        for k in 0..space.dim() {
            if i == 0 && a == b && k == 0 {
                idempotents[a] = index.len();
            }
            let label = if i == 0 && a == b && k == 0 { format!("e{}", a + 1) } else { format!("x{i}_{}_{}_{k}", a + 1, b + 1) };
            index.push((i, a, b, k));
            basis.push(BasisElem { src: b, tgt: a, deg: i, label });
        }
    }
    let dim = basis.len();
    let rep = |x: usize| -> &[Scalar] {
        let (i, a, b, k) = index[x];
        &spaces[&(i, a, b)].reps[k]
    };
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for x in 0..dim {
        let (i, a, b, _) = index[x];
        for y in 0..dim {
            let (j, c, d, _) = index[y];
            if d != a || i + j > d_max {
                continue;
            }
            let z = yoneda_product(
                &resolutions[c],
                &resolutions[a],
                &summands[b],
                (n * j as usize, j, rep(y)),
                (n * i as usize, i, rep(x)),
            )?;
            let coords = basis_coords(&spaces, &index, (i + j, c, b), &z)?;
            products[x][y] = crate::algebra::sparse_from_dense(&coords);
        }
    }
    let g = GradedAlgebra::new(format!("{}^!", alg.name()), t, basis, products, idempotents)?;
    Ok(KoszulDual {
        algebra: TruncatedGradedAlgebra::new(Arc::new(g), d_max)?,
        n,
        summands: summands.to_vec(),
        resolutions,
        spaces,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::trivial_extension;
    use crate::presentation::tests_support::*;

    #[test]
    fn dual_numbers_give_polynomial_ring() {
        let alg = Arc::new(dual_numbers());
        let k = GradedModule::simple(&alg, 0, 0);
        let d = koszul_dual(&[k], 1, 4).unwrap();
        assert_eq!(d.algebra.graded_dims(), vec![1, 1, 1, 1, 1]);
        let g = d.algebra.algebra();
        let t = g.component(1)[0];
        let mut p = g.basis_vec(t);
        for deg in 2..=4 {
            p = g.mul(&p, &g.basis_vec(t));
            assert!(!crate::linalg::is_zero_vec(&p), "t^{deg} vanished");
        }
    }

    #[test]
    fn cubic_dual_degree_two_vanishes() {
        let alg = Arc::new(cubic());
        let k = GradedModule::simple(&alg, 0, 0);
        let d = koszul_dual(&[k], 1, 3).unwrap();
        assert_eq!(d.algebra.graded_dims(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn degree_zero_is_end_of_t() {
        let alg = Arc::new(trivial_extension(&a2()).unwrap());
        let t: Vec<_> = (0..2).map(|v| GradedModule::projective(&alg.degree_zero(), v, 0).inflate(&alg).unwrap()).collect();
        let d = koszul_dual(&t, 2, 0).unwrap();
        let a0 = alg.degree_zero();
        let end: usize = (0..2).flat_map(|u| (0..2).map(move |w| (u, w))).map(|(u, w)| {
            hom_space(&GradedModule::projective(&a0, u, 0), &GradedModule::projective(&a0, w, 0)).dim()
        }).sum();
        assert_eq!(d.algebra.graded_dims(), vec![end]);
    }
}
