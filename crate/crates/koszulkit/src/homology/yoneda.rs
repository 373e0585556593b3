use super::ext::{cochain_to_hom, hom_to_cochain};
use super::ProjectiveResolution;
use crate::error::{Error, Result};
use crate::linalg::{solve, Scalar};
use crate::module::{GradedHom, GradedModule};

/// Lifts a cocycle `x : P_L^p → M⟨q⟩` to chain maps `X_k : P_L^{p+k} → P_M^k⟨q⟩` for `k ≤ depth`.
pub fn lift_cocycle(
    res_l: &ProjectiveResolution,
    res_m: &ProjectiveResolution,
    p: usize,
    q: i64,
    x: &[Scalar],
    depth: usize,
) -> Result<Vec<GradedHom>> {
    let m = res_m.module();
    let mut out: Vec<GradedHom> = Vec::new();
    for k in 0..=depth {
        let Some(src) = res_l.term(p + k) else {
            if res_l.knows(p + k) {
                out.push(GradedHom::zero());
                continue;
            }
            return Err(Error::BoundExceeded(format!("resolution too short to lift to P^{}", p + k)));
        };
        let Some(tgt) = res_m.term(k) else {
            if res_m.knows(k) {
                out.push(GradedHom::zero());
                continue;
            }
            return Err(Error::BoundExceeded(format!("resolution too short to lift into P^{k}")));
        };
        let tgt_mod = tgt.module().shift(q);
        // `want`: the composite that `X_k` followed by `d` must reproduce.
        let (want, dmap, dtgt) = if k == 0 {
            (cochain_to_hom(res_l, m, p, q, x), res_m.augmentation().shift(q), m.shift(q))
        } else {
            let d_src = res_l.differential(p + k).expect("differential within computed range");
            let prev_tgt = res_m.term(k - 1).expect("term within range").module().shift(q);
            (d_src.then(&out[k - 1]), res_m.differential(k).expect("differential within range").shift(q), prev_tgt)
        };
        let mut images = Vec::new();
        for h in 0..src.rank() {
            let key = src.gen_key(h);
            let w = src.image_of_gen(&want, h, &dtgt);
            let block = dmap.block(key, tgt_mod.dim_at(key), dtgt.dim_at(key));
            let u = if block.rows() == 0 {
                if !crate::linalg::is_zero_vec(&w) {
                    return Err(Error::Internal("lifting target has no preimage".into()));
                }
                vec![]
            } else {
                solve(&block.transpose(), &w)?.ok_or_else(|| Error::Internal("cocycle does not lift".into()))?
            };
            images.push(u);
        }
        out.push(src.hom_to(&tgt_mod, &images));
    }
    Ok(out)
}

/// Yoneda product: `x ∈ Ext^p(L, M⟨q⟩)` followed by `y ∈ Ext^{p'}(M, N⟨q'⟩)`,
/// giving a cocycle of `Ext^{p+p'}(L, N⟨q+q'⟩)` on the resolution of `L`.
#[allow(clippy::too_many_arguments)]
pub fn yoneda_product(
    res_l: &ProjectiveResolution,
    res_m: &ProjectiveResolution,
    n: &GradedModule,
    (p, q, x): (usize, i64, &[Scalar]),
    (p2, q2, y): (usize, i64, &[Scalar]),
) -> Result<Vec<Scalar>> {
    let lifts = lift_cocycle(res_l, res_m, p, q, x, p2)?;
    let yh = cochain_to_hom(res_m, n, p2, q2, y).shift(q);
    let prod = lifts[p2].then(&yh);
    Ok(if res_l.term(p + p2).is_some() { hom_to_cochain(res_l, n, p + p2, q + q2, &prod) } else { vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{ext_space, projective_resolution};
    use crate::presentation::tests_support::*;
    use std::sync::Arc;

    #[test]
    fn dual_numbers_square_is_nonzero() {
        let alg = Arc::new(dual_numbers());
        let k = GradedModule::simple(&alg, 0, 0);
        let res = projective_resolution(&k, 4);
        let e1 = ext_space(&res, &k, 1, 1).unwrap();
        let e2 = ext_space(&res, &k, 2, 2).unwrap();
        assert_eq!((e1.dim(), e2.dim()), (1, 1));
        let x = &e1.reps[0];
        let z = yoneda_product(&res, &res, &k, (1, 1, x), (1, 1, x)).unwrap();
        let c = e2.class_coords(&z).unwrap();
        assert!(!crate::linalg::is_zero_vec(&c));
    }

    #[test]
    fn unit_law() {
        let alg = Arc::new(cubic());
        let k = GradedModule::simple(&alg, 0, 0);
        let res = projective_resolution(&k, 4);
        let e0 = ext_space(&res, &k, 0, 0).unwrap();
        let e2 = ext_space(&res, &k, 2, 3).unwrap();
        assert_eq!(e2.dim(), 1);
        let one = &e0.reps[0];
        let x = &e2.reps[0];
        let left = yoneda_product(&res, &res, &k, (0, 0, one), (2, 3, x)).unwrap();
        let right = yoneda_product(&res, &res, &k, (2, 3, x), (0, 0, one)).unwrap();
        let s = e0.class_coords(one).unwrap()[0].clone();
        let xc = e2.class_coords(x).unwrap();
        assert_eq!(e2.class_coords(&left).unwrap(), crate::linalg::scale_vec(&xc, &s));
        assert_eq!(e2.class_coords(&right).unwrap(), crate::linalg::scale_vec(&xc, &s));
    }

    #[test]
    fn cubic_degree_one_square_vanishes() {
        let alg = Arc::new(cubic());
        let k = GradedModule::simple(&alg, 0, 0);
        let res = projective_resolution(&k, 4);
        let e1 = ext_space(&res, &k, 1, 1).unwrap();
        assert_eq!(e1.dim(), 1);
        assert_eq!(ext_space(&res, &k, 2, 2).unwrap().dim(), 0);
        let x = &e1.reps[0];
        let z = yoneda_product(&res, &res, &k, (1, 1, x), (1, 1, x)).unwrap();
        assert!(ext_space(&res, &k, 2, 2).unwrap().class_coords(&z).unwrap().is_empty());
    }
}
