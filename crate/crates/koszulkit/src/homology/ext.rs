use super::{projective_resolution, ProjectiveResolution};
use crate::algebra::{forget_grading, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{left_kernel, solve, Matrix, Scalar, Subspace};
use crate::module::{GradedHom, GradedModule};
use std::fmt::Write as _;
use std::sync::Arc;

/// Offsets of the cochain space `C^i(j) = Hom(P^i, N⟨j⟩) = ⊕_h N_{(s_h - j, v_h)}`.
fn cochain_layout(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut total = 0;
    for &(v, s) in &res.generators(i) {
        offs.push(total);
        total += n.dim_at((s - j, v));
    }
    (offs, total)
}

pub fn cochain_dim(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64) -> usize {
    cochain_layout(res, n, i, j).1
}

/// `δ^i : C^{i-1}(j) → C^i(j)`, `φ ↦ d_i` followed by `φ`, acting on row vectors.
pub fn cochain_differential(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64) -> Matrix {
    let (offs_t, tot_t) = cochain_layout(res, n, i, j);
    if i == 0 {
        return Matrix::zeros(0, tot_t);
    }
    let (offs_s, tot_s) = cochain_layout(res, n, i - 1, j);
    let mut out = Matrix::zeros(tot_s, tot_t);
    let Some(coeffs) = res.coefficients(i) else { return out };
    let src_gens = res.generators(i - 1);
    for (h, row) in coeffs.iter().enumerate() {
        for (g, a) in row.iter().enumerate() {
            let (v, s) = src_gens[g];
            let key = (s - j, v);
            if n.dim_at(key) == 0 || crate::linalg::is_zero_vec(a) {
                continue;
            }
            if let Some((_, m)) = n.act_matrix(key, a) {
                out.put(offs_s[g], offs_t[h], &m);
            }
        }
    }
    out
}

/// `Ext^i_{gr}(M, N⟨j⟩)` with cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub i: usize,
    pub j: i64,
    pub cochain_dim: usize,
    pub coboundaries: Subspace,
    /// Cocycles whose classes form a basis.
    pub reps: Vec<Vec<Scalar>>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle in the basis `reps`.
    pub fn class_coords(&self, c: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.reps.is_empty() {
            return Ok(vec![]);
        }
        let mut cols: Vec<Vec<Scalar>> = self.reps.clone();
        cols.extend(self.coboundaries.vectors());
        let a = Matrix::from_rows(cols, self.cochain_dim).transpose();
        let x = solve(&a, c)?.ok_or_else(|| Error::Internal("cochain is not a cocycle".into()))?;
        Ok(x[..self.reps.len()].to_vec())
    }
}

/// Requires `P^{i+1}` to be known.
pub fn ext_space(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64) -> Result<ExtSpace> {
    if !res.knows(i + 1) {
        return Err(Error::BoundExceeded(format!("resolution too short for Ext^{i}")));
    }
    let dim = cochain_dim(res, n, i, j);
    let delta_in = cochain_differential(res, n, i, j);
    let coboundaries = Subspace::row_space(&delta_in);
    let d = cochain_differential(res, n, i + 1, j);
    let cocycles = if d.cols() == 0 { (0..dim).map(|k| crate::linalg::unit_vec(dim, k)).collect() } else { left_kernel(&d) };
    let mut span = coboundaries.clone();
    let mut reps = Vec::new();
    for z in cocycles {
        if !span.contains(&z) {
            span = span.sum(&Subspace::span(dim, std::slice::from_ref(&z)));
            reps.push(z);
        }
    }
    Ok(ExtSpace { i, j, cochain_dim: dim, coboundaries, reps })
}

/// Range of `j` with `C^i(j) ≠ 0`.
pub fn nonzero_window(res: &ProjectiveResolution, n: &GradedModule, i: usize) -> Option<(i64, i64)> {
    let (lo, hi) = (n.lowest_degree()?, n.highest_degree()?);
    let gens = res.generators(i);
    let smin = gens.iter().map(|g| g.1).min()?;
    let smax = gens.iter().map(|g| g.1).max()?;
    Some((smin - hi, smax - lo))
}

/// `dims[i][j] = dim Ext^i_{gr}(M, N⟨j⟩)` on a window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExtTable {
    pub i_max: usize,
    pub j_min: i64,
    pub j_max: i64,
    pub dims: Vec<Vec<usize>>,
}

impl ExtTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        if i > self.i_max || j < self.j_min || j > self.j_max {
            return 0;
        }
        self.dims[i][(j - self.j_min) as usize]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.dims.get(i).map(|r| r.iter().sum()).unwrap_or(0)
    }

    /// Nonzero entries `(i, j, dim)`.
    pub fn support(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.dims.iter().enumerate() {
            for (k, &d) in row.iter().enumerate() {
                if d > 0 {
                    out.push((i, self.j_min + k as i64, d));
                }
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i\\j");
        for j in self.j_min..=self.j_max {
            let _ = write!(s, "\t{j}");
        }
        s.push('\n');
        for (i, row) in self.dims.iter().enumerate() {
            let _ = write!(s, "{i}");
            for d in row {
                let _ = write!(s, "\t{d}");
            }
            s.push('\n');
        }
        s
    }
}

/// Ext table of `M` against `N` for `i ≤ i_max` and `j_min ≤ j ≤ j_max`.
pub fn ext_table_with(res: &ProjectiveResolution, n: &GradedModule, i_max: usize, j_min: i64, j_max: i64) -> Result<ExtTable> {
    let mut dims = Vec::new();
    for i in 0..=i_max {
        let mut row = Vec::new();
        for j in j_min..=j_max {
            row.push(ext_space(res, n, i, j)?.dim());
        }
        dims.push(row);
    }
    Ok(ExtTable { i_max, j_min, j_max, dims })
}

/// Ext table over the window covering every `j` that can be nonzero for `i ≤ i_max`.
pub fn ext_table(m: &GradedModule, n: &GradedModule, i_max: usize) -> Result<ExtTable> {
    let res = projective_resolution(m, i_max + 1);
    let mut lo = 0;
    let mut hi = 0;
    for i in 0..=i_max {
        if let Some((a, b)) = nonzero_window(&res, n, i) {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    ext_table_with(&res, n, i_max, lo, hi)
}

/// `dim Ext^i_Λ(M, N)` computed over the ungraded algebra, checked against the graded row sum.
pub fn ungraded_ext_dims(m: &GradedModule, n: &GradedModule, i: usize) -> Result<usize> {
    let ungr = Arc::new(forget_grading(m.algebra()));
    let direct = ungraded_ext_direct(&ungr, m, n, i)?;
    let table = ext_table(m, n, i)?;
    if table.row_sum(i) != direct {
        return Err(Error::Internal(format!(
            "ungraded Ext^{i} has dimension {direct} but graded pieces sum to {}",
            table.row_sum(i)
        )));
    }
    Ok(direct)
}

fn ungraded_ext_direct(ungr: &Arc<GradedAlgebra>, m: &GradedModule, n: &GradedModule, i: usize) -> Result<usize> {
    let mu = m.forget_grading(ungr);
    let nu = n.forget_grading(ungr);
    let res = projective_resolution(&mu, i + 1);
    Ok(ext_space(&res, &nu, i, 0)?.dim())
}

/// The hom `P^i → N⟨j⟩` determined by a cochain.
pub fn cochain_to_hom(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64, c: &[Scalar]) -> GradedHom {
    let Some(p) = res.term(i) else { return GradedHom::zero() };
    let (offs, _) = cochain_layout(res, n, i, j);
    let target = n.shift(j);
    let images: Vec<Vec<Scalar>> = (0..p.rank())
        .map(|h| {
            let d = target.dim_at(p.gen_key(h));
            c[offs[h]..offs[h] + d].to_vec()
        })
        .collect();
    p.hom_to(&target, &images)
}

/// The cochain of a hom `P^i → N⟨j⟩`.
pub fn hom_to_cochain(res: &ProjectiveResolution, n: &GradedModule, i: usize, j: i64, f: &GradedHom) -> Vec<Scalar> {
    let Some(p) = res.term(i) else { return vec![] };
    let target = n.shift(j);
    let mut out = Vec::new();
    for h in 0..p.rank() {
        out.extend(p.image_of_gen(f, h, &target));
    }
    out
}
