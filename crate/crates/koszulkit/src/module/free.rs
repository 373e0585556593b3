use super::{GradedHom, GradedModule, Key};
use crate::algebra::GradedAlgebra;
use crate::linalg::{axpy, zero_vec, Matrix, Scalar};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Generator `e_v Λ ⟨shift⟩`: vertex and shift.
pub type FreeSummand = (usize, i64);

/// A sum `⊕_g e_{v_g} Λ ⟨s_g⟩` with its realization as a graded module.
#[derive(Clone, Debug)]
pub struct FreeModule {
    alg: Arc<GradedAlgebra>,
    gens: Vec<FreeSummand>,
    module: GradedModule,
    /// `pos[g][k]`: location of `gen_g · b_k` with `b_k = starting_at(v_g)[k]`.
    pos: Vec<Vec<(Key, usize)>>,
    /// Reverse map per block: `(g, basis element)` for each coordinate.
    rev: BTreeMap<Key, Vec<(usize, usize)>>,
}

impl FreeModule {
    pub fn new(alg: Arc<GradedAlgebra>, gens: Vec<FreeSummand>) -> Self {
        let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
        let mut pos = Vec::new();
        let mut rev: BTreeMap<Key, Vec<(usize, usize)>> = BTreeMap::new();
        for (g, &(v, s)) in gens.iter().enumerate() {
            let mut p = Vec::new();
            for b in alg.starting_at(v) {
                let e = alg.elem(b);
                let key = (s + e.deg, e.tgt);
                let idx = dims.entry(key).or_insert(0);
                p.push((key, *idx));
                rev.entry(key).or_default().push((g, b));
                *idx += 1;
            }
            pos.push(p);
        }
        let mut action: Vec<BTreeMap<i64, Matrix>> = vec![BTreeMap::new(); alg.dim()];
        for (g, &(v, _)) in gens.iter().enumerate() {
            let start = alg.starting_at(v);
            let local: std::collections::HashMap<usize, usize> = start.iter().enumerate().map(|(i, &b)| (b, i)).collect();
            for (k, &b) in start.iter().enumerate() {
                let (key, i) = pos[g][k];
                for x in 0..alg.dim() {
                    let ex = alg.elem(x);
                    if ex.src != key.1 {
                        continue;
                    }
                    let tgt = (key.0 + ex.deg, ex.tgt);
                    for (z, c) in alg.mul_basis(b, x) {
                        let (zk, zi) = pos[g][local[z]];
                        debug_assert_eq!(zk, tgt);
                        let rows = dims[&key];
                        let cols = dims[&tgt];
                        let m = action[x].entry(key.0).or_insert_with(|| Matrix::zeros(rows, cols));
                        m.add_at(i, zi, c);
                    }
                }
            }
        }
        let module = GradedModule::from_parts(alg.clone(), dims, action);
        FreeModule { alg, gens, module, pos, rev }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.alg
    }

    pub fn gens(&self) -> &[FreeSummand] {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn gen_key(&self, g: usize) -> Key {
        (self.gens[g].1, self.gens[g].0)
    }

    /// Coordinates of `gen_g · b` for basis element `b` (must start at `v_g`).
    pub fn locate(&self, g: usize, b: usize) -> (Key, usize) {
        let k = self.alg.starting_at(self.gens[g].0).iter().position(|&x| x == b).expect("basis element not in e_v Λ");
        self.pos[g][k]
    }

    /// `gen_g · a` as block vectors.
    pub fn element(&self, g: usize, a: &[Scalar]) -> BTreeMap<Key, Vec<Scalar>> {
        let mut out: BTreeMap<Key, Vec<Scalar>> = BTreeMap::new();
        for (k, &b) in self.alg.starting_at(self.gens[g].0).iter().enumerate() {
            if a[b].is_zero() {
                continue;
            }
            let (key, i) = self.pos[g][k];
            let n = self.module.dim_at(key);
            out.entry(key).or_insert_with(|| zero_vec(n))[i] += &a[b];
        }
        out
    }

    /// Writes a block vector at `key` as `Σ_g gen_g · a_g`.
    pub fn decompose(&self, key: Key, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        let mut out = vec![zero_vec(self.alg.dim()); self.gens.len()];
        if let Some(r) = self.rev.get(&key) {
            for (i, &(g, b)) in r.iter().enumerate() {
                if !v[i].is_zero() {
                    out[g][b] += &v[i];
                }
            }
        }
        out
    }

    /// The homomorphism sending `gen_g` to `images[g]`, a vector in block `gen_key(g)` of `target`.
    pub fn hom_to(&self, target: &GradedModule, images: &[Vec<Scalar>]) -> GradedHom {
        let mut blocks: BTreeMap<Key, Matrix> = BTreeMap::new();
        for (g, &(v, _)) in self.gens.iter().enumerate() {
            let gk = self.gen_key(g);
            for (k, &b) in self.alg.starting_at(v).iter().enumerate() {
                let (key, i) = self.pos[g][k];
                let tn = target.dim_at(key);
                if tn == 0 {
                    continue;
                }
                let Some(m) = target.act(b, gk) else { continue };
                let img = m.vec_mul(&images[g]);
                let rows = self.module.dim_at(key);
                let entry = blocks.entry(key).or_insert_with(|| Matrix::zeros(rows, tn));
                entry.row_mut(i).clone_from_slice(&img);
            }
        }
        GradedHom::from_blocks(blocks)
    }

    /// Image of `gen_g` under a hom out of this module.
    pub fn image_of_gen(&self, f: &GradedHom, g: usize, target: &GradedModule) -> Vec<Scalar> {
        let (key, i) = self.locate(g, self.alg.idempotent(self.gens[g].0));
        let t = target.dim_at(key);
        match f.blocks().get(&key) {
            Some(m) => m.row(i).to_vec(),
            None => zero_vec(t),
        }
    }

    /// The map `P → Q` of free modules given by algebra elements: `gen_g ↦ Σ_h gen'_h · m[g][h]`.
    pub fn map_to(&self, target: &FreeModule, m: &[Vec<Vec<Scalar>>]) -> GradedHom {
        let images: Vec<Vec<Scalar>> = (0..self.rank())
            .map(|g| {
                let key = self.gen_key(g);
                let mut v = zero_vec(target.module.dim_at(key));
                for (h, a) in m[g].iter().enumerate() {
                    for (k, w) in target.element(h, a) {
                        if k == key {
                            axpy(&mut v, &Scalar::one(), &w);
                        } else if !crate::linalg::is_zero_vec(&w) {
                            panic!("map between free modules is not homogeneous");
                        }
                    }
                }
                v
            })
            .collect();
        self.hom_to(&target.module, &images)
    }
}
