use crate::linalg::{Matrix, Subspace};
use crate::module::{section_of, FreeModule, GradedHom, GradedModule};
use std::collections::BTreeMap;

/// A bounded cochain complex of finitely generated projective modules, `d^k : P^k → P^{k+1}`.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    pub terms: BTreeMap<i64, FreeModule>,
    /// `differentials[k] = d^k`; absent entries are zero.
    pub differentials: BTreeMap<i64, GradedHom>,
}

/// `H^k` of a complex as a module, realized inside `Q = P^k / im d^{k-1}`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub module: GradedModule,
    /// `H → Q`
    pub inclusion: GradedHom,
    /// `P^k → Q`
    pub projection: GradedHom,
    pub quotient: GradedModule,
}

impl BoundedComplex {
    pub fn term(&self, k: i64) -> Option<&FreeModule> {
        self.terms.get(&k)
    }

    /// The complex with `C[s]^k = C^{k+s}`. Signs of differentials do not affect cohomology and are kept.
    pub fn shifted(&self, s: i64) -> BoundedComplex {
        BoundedComplex {
            terms: self.terms.iter().map(|(&k, t)| (k - s, t.clone())).collect(),
            differentials: self.differentials.iter().map(|(&k, d)| (k - s, d.clone())).collect(),
        }
    }

    fn rank_of(&self, k: i64) -> usize {
        match (self.terms.get(&k), self.differentials.get(&k)) {
            (Some(_), Some(d)) => d.rank(),
            _ => 0,
        }
    }

    /// `dim H^k`.
    pub fn cohomology_dim(&self, k: i64) -> usize {
        let Some(p) = self.terms.get(&k) else { return 0 };
        p.module().dim() - self.rank_of(k) - self.rank_of(k - 1)
    }

    /// Nonzero `dim H^k`, keyed by `k`.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        self.terms.keys().map(|&k| (k, self.cohomology_dim(k))).filter(|(_, d)| *d > 0).collect()
    }

    /// `d^{k+1} ∘ d^k = 0` for all `k`.
    pub fn is_complex(&self) -> bool {
        self.differentials.iter().all(|(k, d)| self.differentials.get(&(k + 1)).map(|e| d.then(e).is_zero()).unwrap_or(true))
    }

    pub fn cohomology(&self, k: i64) -> Option<Cohomology> {
        let p = self.terms.get(&k)?.module();
        let image = match (self.terms.get(&(k - 1)), self.differentials.get(&(k - 1))) {
            (Some(prev), Some(d)) => d.image(prev.module(), p),
            _ => BTreeMap::new(),
        };
        let (quotient, projection) = p.quotient(&image);
        let cycles = match (self.terms.get(&(k + 1)), self.differentials.get(&k)) {
            (Some(next), Some(d)) => d.kernel(p, next.module()),
            _ => p.dims().iter().map(|(&key, &n)| (key, Subspace::full(n))).collect(),
        };
        let mut sub = BTreeMap::new();
        for (&key, &n) in quotient.dims() {
            let pi = projection.block_for(p, &quotient, key);
            let img = match cycles.get(&key) {
                Some(z) if z.dim() > 0 => z.basis().mul(&pi),
                _ => Matrix::zeros(0, n),
            };
            sub.insert(key, Subspace::row_space(&img));
        }
        let (module, inclusion) = quotient.submodule(&sub);
        Some(Cohomology { module, inclusion, projection, quotient })
    }
}

/// Matrix `L` with `ι · L = I` for an injective block `ι`.
pub(crate) fn retraction_of(iota: &Matrix) -> Matrix {
    section_of(&iota.transpose()).transpose()
}

/// The map `H^k(C) → H^k(C')` induced by a chain map component `φ : P^k → P'^k`.
pub fn induced_on_cohomology(
    src: &BoundedComplex,
    hs: &Cohomology,
    tgt: &BoundedComplex,
    ht: &Cohomology,
    k: i64,
    phi: &GradedHom,
) -> GradedHom {
    let p = src.term(k).expect("term of the source complex").module();
    let p2 = tgt.term(k).expect("term of the target complex").module();
    let mut blocks = BTreeMap::new();
    for (&key, &n) in hs.module.dims() {
        let m = ht.module.dim_at(key);
        if m == 0 {
            continue;
        }
        let inc = hs.inclusion.block_for(&hs.module, &hs.quotient, key);
        let sec = section_of(&hs.projection.block_for(p, &hs.quotient, key));
        let f = phi.block_for(p, p2, key);
        let pi2 = ht.projection.block_for(p2, &ht.quotient, key);
        let back = retraction_of(&ht.inclusion.block_for(&ht.module, &ht.quotient, key));
        let b = inc.mul(&sec).mul(&f).mul(&pi2).mul(&back);
        debug_assert_eq!((b.rows(), b.cols()), (n, m));
        blocks.insert(key, b);
    }
    GradedHom::from_blocks(blocks)
}
