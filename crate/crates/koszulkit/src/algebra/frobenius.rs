use super::{GradedAlgebra, GradedAlgebraMorphism};
use crate::linalg::{int, kernel_basis, left_kernel, Matrix, Scalar};
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

const SAMPLES: usize = 64;
const SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug)]
pub struct FrobeniusData {
    /// Highest degree.
    pub a: i64,
    /// The functional `φ` on `Λ` (supported on `Λ_a`) whose form `⟨x,y⟩ = φ(xy)` is nondegenerate.
    pub phi: Vec<Scalar>,
    /// Nakayama automorphism, rows are images of basis elements.
    pub mu: Matrix,
    pub symmetric: bool,
    pub mu_basis_permutation: Option<Vec<usize>>,
}

impl FrobeniusData {
    pub fn nakayama(&self, alg: &Arc<GradedAlgebra>) -> GradedAlgebraMorphism {
        GradedAlgebraMorphism::new_unchecked(alg.clone(), alg.clone(), self.mu.clone())
    }

    /// `σ` with `μ(e_v) = e_{σ(v)}`, when `μ` permutes the vertex idempotents.
    pub fn vertex_permutation(&self, alg: &Arc<GradedAlgebra>) -> Option<Vec<usize>> {
        self.nakayama(alg).vertex_permutation()
    }

    pub fn form(&self, alg: &GradedAlgebra) -> Matrix {
        gram(alg, &self.phi)
    }
}

#[derive(Clone, Debug)]
pub enum FrobeniusVerdict {
    Frobenius(FrobeniusData),
    /// Some indecomposable projective has a non-simple socle, the socles collide,
    /// or a socle lies outside the highest degree.
    NotFrobenius { reason: String },
    /// The socle test passed but no nondegenerate form was found by sampling.
    NoFormFound,
}

impl FrobeniusVerdict {
    pub fn data(&self) -> Option<&FrobeniusData> {
        match self {
            FrobeniusVerdict::Frobenius(d) => Some(d),
            _ => None,
        }
    }
}

fn gram(alg: &GradedAlgebra, phi: &[Scalar]) -> Matrix {
    let n = alg.dim();
    let mut g = Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let mut s = Scalar::zero();
            for (z, c) in alg.mul_basis(x, y) {
                if !phi[*z].is_zero() {
                    s += c * &phi[*z];
                }
            }
            g.set(x, y, s);
        }
    }
    g
}

/// `(vertex, degree, dim)` pieces of a socle.
type SocleShape = Vec<(usize, i64, usize)>;

/// Shapes of `soc(e_v Λ)` and `soc(Λ e_v)`.
fn socles(alg: &GradedAlgebra) -> (Vec<SocleShape>, Vec<SocleShape>) {
    let rad = alg.radical();
    let v = alg.num_vertices();
    let mut right = vec![Vec::new(); v];
    let mut left = vec![Vec::new(); v];
    for u in 0..v {
        for w in 0..v {
            for d in alg.lowest_degree()..=alg.highest_degree() {
                let piece = alg.between(u, w, d);
                if piece.is_empty() {
                    continue;
                }
                // right socle: x with x r = 0; left socle: x with r x = 0.
                let mut rcols: Vec<Vec<Scalar>> = vec![Vec::new(); piece.len()];
                let mut lcols: Vec<Vec<Scalar>> = vec![Vec::new(); piece.len()];
                for r in rad {
                    for (i, &x) in piece.iter().enumerate() {
                        rcols[i].extend(alg.mul(&alg.basis_vec(x), r));
                        lcols[i].extend(alg.mul(r, &alg.basis_vec(x)));
                    }
                }
                let width = rcols[0].len();
                let rk = if width == 0 { piece.len() } else { left_kernel(&Matrix::from_rows(rcols, width)).len() };
                let lk = if width == 0 { piece.len() } else { left_kernel(&Matrix::from_rows(lcols, width)).len() };
                if rk > 0 {
                    right[u].push((w, d, rk));
                }
                if lk > 0 {
                    left[w].push((u, d, lk));
                }
            }
        }
    }
    (right, left)
}

fn socle_obstruction(alg: &GradedAlgebra) -> Option<String> {
    let a = alg.highest_degree();
    let (right, left) = socles(alg);
    for (side, soc) in [("e_v Λ", &right), ("Λ e_v", &left)] {
        let mut seen = vec![false; alg.num_vertices()];
        for (v, s) in soc.iter().enumerate() {
            if s.len() != 1 || s[0].2 != 1 {
                return Some(format!("socle of {side} for v = {v} is not simple"));
            }
            if s[0].1 != a {
                return Some(format!("socle of {side} for v = {v} lies in degree {} not {a}", s[0].1));
            }
            if std::mem::replace(&mut seen[s[0].0], true) {
                return Some(format!("socles of {side} are not pairwise distinct"));
            }
        }
    }
    None
}

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Scalar>], n: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n];
    for b in basis {
        let c = int(rng.gen_range(-5..=5));
        crate::linalg::axpy(&mut out, &c, b);
    }
    out
}

fn data_from(alg: &GradedAlgebra, phi: Vec<Scalar>, symmetric: bool) -> Option<FrobeniusData> {
    let g = gram(alg, &phi);
    let gt_inv = g.transpose().inverse()?;
    let mu = if symmetric { Matrix::identity(alg.dim()) } else { g.mul(&gt_inv) };
    let perm = permutation_of(&mu);
    Some(FrobeniusData { a: alg.highest_degree(), phi, mu, symmetric, mu_basis_permutation: perm })
}

fn permutation_of(m: &Matrix) -> Option<Vec<usize>> {
    use num::One;
    let mut out = Vec::new();
    for r in 0..m.rows() {
        let nz: Vec<usize> = (0..m.cols()).filter(|&c| !m.get(r, c).is_zero()).collect();
        if nz.len() != 1 || !m.get(r, nz[0]).is_one() {
            return None;
        }
        out.push(nz[0]);
    }
    Some(out)
}

/// Decides graded Frobenius by the socle criterion, then finds `φ` on `Λ_a`:
/// first from the symmetric forms, then `Σ b*`, then random forms, preferring a
/// Nakayama automorphism that permutes the basis.
pub fn frobenius_analysis(alg: &GradedAlgebra) -> FrobeniusVerdict {
    if let Some(reason) = socle_obstruction(alg) {
        return FrobeniusVerdict::NotFrobenius { reason };
    }
    let n = alg.dim();
    let top = alg.component(alg.highest_degree());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // Symmetric functionals: φ(xy) = φ(yx) for all basis pairs.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let d = crate::linalg::Matrix::from_rows(vec![alg.mul(&alg.basis_vec(x), &alg.basis_vec(y))], n)
                .sub(&Matrix::from_rows(vec![alg.mul(&alg.basis_vec(y), &alg.basis_vec(x))], n));
            let row: Vec<Scalar> = top.iter().map(|&z| d.get(0, z).clone()).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let embed = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut phi = vec![Scalar::zero(); n];
        for (i, &z) in top.iter().enumerate() {
            phi[z] = coeffs[i].clone();
        }
        phi
    };
    let sym_basis: Vec<Vec<Scalar>> = if rows.is_empty() {
        (0..top.len()).map(|i| crate::linalg::unit_vec(top.len(), i)).collect()
    } else {
        kernel_basis(&Matrix::from_rows(rows, top.len()))
    };
    if !sym_basis.is_empty() {
        let full: Vec<Vec<Scalar>> = sym_basis.iter().map(|c| embed(c)).collect();
        for _ in 0..SAMPLES {
            let phi = random_combination(&mut rng, &full, n);
            if let Some(d) = data_from(alg, phi, true) {
                return FrobeniusVerdict::Frobenius(d);
            }
        }
    }

    let mut fallback = None;
    let sum: Vec<Scalar> = embed(&vec![int(1); top.len()]);
    if let Some(d) = data_from(alg, sum, false) {
        if d.mu_basis_permutation.is_some() {
            return FrobeniusVerdict::Frobenius(d);
        }
        fallback = Some(d);
    }
    let full: Vec<Vec<Scalar>> = top.iter().map(|&z| alg.basis_vec(z)).collect();
    for _ in 0..SAMPLES {
        let phi = random_combination(&mut rng, &full, n);
        if let Some(d) = data_from(alg, phi, false) {
            if d.mu_basis_permutation.is_some() {
                return FrobeniusVerdict::Frobenius(d);
            }
            fallback.get_or_insert(d);
        }
    }
    match fallback {
        Some(d) => FrobeniusVerdict::Frobenius(d),
        None => FrobeniusVerdict::NoFormFound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::trivial_extension;
    use crate::presentation::tests_support::*;

    fn check_mu(alg: &GradedAlgebra, d: &FrobeniusData) {
        let g = d.form(alg);
        // ⟨x, y⟩ = ⟨y, μ(x)⟩
        assert_eq!(g, d.mu.mul(&g.transpose()));
    }

    #[test]
    fn trivial_extensions_are_symmetric_with_a_one() {
        for a in [point(), a2(), kronecker(), example_a()] {
            let d = trivial_extension(&a).unwrap();
            let v = frobenius_analysis(&d);
            let data = v.data().expect("frobenius");
            assert_eq!(data.a, 1);
            assert!(data.symmetric);
            check_mu(&d, data);
        }
    }

    #[test]
    fn a2_is_not_frobenius() {
        assert!(matches!(frobenius_analysis(&a2()), FrobeniusVerdict::NotFrobenius { .. }));
    }

    #[test]
    fn truncated_polynomial_is_symmetric_with_a_two() {
        let d = frobenius_analysis(&cubic()).data().cloned().unwrap();
        assert_eq!(d.a, 2);
        assert!(d.symmetric);
    }

    #[test]
    fn cyclic_nakayama_swaps_vertices() {
        let alg = Arc::new(cyclic_nakayama());
        let d = frobenius_analysis(&alg).data().cloned().unwrap();
        assert!(!d.symmetric);
        check_mu(&alg, &d);
        assert_eq!(d.vertex_permutation(&alg), Some(vec![1, 0]));
        let mu = d.nakayama(&alg);
        mu.validate().unwrap();
    }
}
