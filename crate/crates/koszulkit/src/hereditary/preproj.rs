use super::nakayama::NuOrbit;
use crate::algebra::{gldim_upto, sparse_from_dense, BasisElem, GldimVerdict, GradedAlgebra, SparseVec, TruncatedGradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::unit_vec;
use crate::module::{FreeModule, GradedModule};
use std::collections::BTreeMap;
use std::sync::Arc;

/// `ν_n^{-i} P_v` for `i ≤ d_max`, kept while it is a module in degree 0.
fn orbit_of(a: &Arc<GradedAlgebra>, v: usize, n: usize, d_max: usize) -> Result<(NuOrbit, usize)> {
    let mut orbit = NuOrbit::new(&GradedModule::projective(a, v, 0), 0, n);
    let mut last = 0;
    for t in 0..d_max {
        orbit.advance()?;
        match orbit.term(t + 1) {
            Some((_, 0)) => last = t + 1,
            Some(_) => break,
            None => {
                return Err(Error::Precondition(format!("ν_n^-{} P{} is not a stalk complex", t + 1, v + 1)));
            }
        }
    }
    Ok((orbit, last))
}

/// `Π_{n+1} A = ⊕_{i ≤ d_max} Hom_{D^b(A)}(A, ν_n^{-i} A)` with `f · g = ν_n^{-j}(f) ∘ g` for `g` of degree `j`.
///
/// The degree-`i` block from `v` to `u` is `(ν_n^{-i} P_v) e_u`, so degree 0 is `A` itself.
pub fn preprojective_algebra(a: &Arc<GradedAlgebra>, n: usize, d_max: usize) -> Result<TruncatedGradedAlgebra> {
    if !a.is_concentrated_in_degree_zero() {
        return Err(Error::Precondition("algebra is not concentrated in degree 0".into()));
    }
    match gldim_upto(a, n) {
        GldimVerdict::Exact(d) if d <= n => {}
        _ => return Err(Error::Precondition(format!("global dimension exceeds {n}"))),
    }
    let nv = a.num_vertices();
    let mut orbits = Vec::new();
    let mut reach = Vec::new();
    for v in 0..nv {
        let (o, last) = orbit_of(a, v, n, d_max)?;
        orbits.push(o);
        reach.push(last);
    }
    let module = |v: usize, i: usize| -> Option<&GradedModule> { (i <= reach[v]).then(|| orbits[v].term(i).expect("module term").0) };

    let mut index: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut lookup: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut basis = Vec::new();
    let mut idempotents = vec![0; nv];
    for i in 0..=d_max {
        for v in 0..nv {
            let Some(x) = module(v, i) else { continue };
            let labels: BTreeMap<usize, String> = if i == 0 {
                let free = FreeModule::new(a.clone(), vec![(v, 0)]);
                a.starting_at(v).into_iter().map(|b| (free.locate(0, b).1, a.elem(b).label.clone())).collect()
            } else {
                BTreeMap::new()
            };
            for u in 0..nv {
                lookup.insert((i, v, u), index.len());
                for k in 0..x.dim_at((0, u)) {
                    if i == 0 && u == v && k == FreeModule::new(a.clone(), vec![(v, 0)]).locate(0, a.idempotent(v)).1 {
                        idempotents[v] = index.len();
                    }
                    let label = labels.get(&k).cloned().unwrap_or_else(|| format!("p{i}_{}_{}_{k}", v + 1, u + 1));
                    basis.push(BasisElem { src: v, tgt: u, deg: i as i64, label });
                    index.push((i, v, u, k));
                }
            }
        }
    }
    let dim = index.len();
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim]; dim];
    for x in 0..dim {
        let (i, v, u, k) = index[x];
        let tgt = module(v, i).expect("basis element lives in a module term");
        let src = FreeModule::new(a.clone(), vec![(u, 0)]);
        let mut f = src.hom_to(tgt, &[unit_vec(tgt.dim_at((0, u)), k)]);
        for j in 0..=d_max - i {
            if j > 0 {
                if module(u, j).is_none() || module(v, i + j).is_none() {
                    break;
                }
                f = orbits[u].steps[j - 1].transport(&orbits[v].steps[i + j - 1], &f)?;
            }
            let (gs, fs) = (module(u, j).expect("source term"), module(v, i + j).expect("target term"));
            for w in 0..nv {
                let Some(&base_y) = lookup.get(&(j, u, w)) else { continue };
                let Some(&base_z) = lookup.get(&(i + j, v, w)) else { continue };
                let block = f.block_for(gs, fs, (0, w));
                for r in 0..gs.dim_at((0, w)) {
                    let mut out = vec![num::Zero::zero(); dim];
                    for (c, val) in block.row(r).iter().enumerate() {
                        out[base_z + c] = val.clone();
                    }
                    products[x][base_y + r] = sparse_from_dense(&out);
                }
            }
        }
    }
    let p = GradedAlgebra::new(format!("Pi{}({})", n + 1, a.name()), nv, basis, products, idempotents)?;
    TruncatedGradedAlgebra::new(Arc::new(p), d_max as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::tests_support::*;

    #[test]
    fn preprojective_of_a2() {
        let a = Arc::new(a2());
        let p = preprojective_algebra(&a, 1, 4).unwrap();
        assert_eq!(p.graded_dims(), vec![3, 1, 0, 0, 0]);
        let g = p.algebra();
        let arrow = g.component(0).into_iter().find(|&x| !g.is_idempotent_index(x)).unwrap();
        let star = g.component(1)[0];
        assert!(crate::linalg::is_zero_vec(&g.mul(&g.basis_vec(arrow), &g.basis_vec(star))));
        assert!(crate::linalg::is_zero_vec(&g.mul(&g.basis_vec(star), &g.basis_vec(arrow))));
    }

    #[test]
    fn preprojective_of_point_is_point() {
        let a = Arc::new(point());
        assert_eq!(preprojective_algebra(&a, 2, 3).unwrap().graded_dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn preprojective_of_kronecker() {
        let a = Arc::new(kronecker());
        let p = preprojective_algebra(&a, 1, 3).unwrap();
        assert_eq!(p.graded_dims(), vec![4, 12, 20, 28]);
        let g = p.algebra();
        let one = g.component(1);
        let two: Vec<Vec<_>> =
            one.iter().flat_map(|&x| one.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(&g.basis_vec(x), &g.basis_vec(y))).collect();
        assert_eq!(crate::linalg::Subspace::span(g.dim(), &two).dim(), g.component(2).len());
    }
}
