//! Quivers with homogeneous relations and their finite-dimensional quotients `kQ/I`.
//!
//! Paths compose left to right: `a*b` is `a` followed by `b`.

use crate::algebra::{BasisElem, GradedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::linalg::{rref, Matrix, Scalar};
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

/// A linear combination of paths, each path a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

pub const DEFAULT_BOUND: usize = 32;

impl Quiver {
    pub fn new(vertices: usize) -> Self {
        Quiver { vertices, arrows: Vec::new() }
    }

    pub fn arrow(mut self, name: &str, src: usize, tgt: usize, deg: i64) -> Self {
        self.arrows.push(Arrow { name: name.into(), src, tgt, deg });
        self
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Parses `a*b*c` into arrow indices.
    pub fn path(&self, text: &str) -> Result<Vec<usize>> {
        text.split('*')
            .map(|t| self.arrow_index(t.trim()).ok_or_else(|| Error::Input(format!("unknown arrow {t}"))))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return Err(Error::Input("a quiver needs at least one vertex".into()));
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.vertices || a.tgt >= self.vertices {
                return Err(Error::Input(format!("arrow {} has a vertex out of range", a.name)));
            }
            if a.deg < 0 {
                return Err(Error::Input(format!("arrow {} has negative degree", a.name)));
            }
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Input(format!("duplicate arrow name {}", a.name)));
            }
        }
        Ok(())
    }

    fn path_tag(&self, p: &[usize]) -> Result<(usize, usize, i64)> {
        let first = &self.arrows[p[0]];
        let mut tgt = first.tgt;
        let mut deg = first.deg;
        for &x in &p[1..] {
            let a = &self.arrows[x];
            if a.src != tgt {
                return Err(Error::Input(format!("path through {} is not composable", a.name)));
            }
            tgt = a.tgt;
            deg += a.deg;
        }
        Ok((first.src, tgt, deg))
    }
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<usize>)>) -> Self {
        Relation { terms }
    }

    /// Common `(src, tgt, deg, length)`, or an error if the relation is not homogeneous.
    fn tag(&self, q: &Quiver) -> Result<(usize, usize, i64, usize)> {
        let mut tag = None;
        for (_, p) in &self.terms {
            if p.is_empty() {
                return Err(Error::Input("relations must not contain trivial paths".into()));
            }
            let (s, t, d) = q.path_tag(p)?;
            let this = (s, t, d, p.len());
            match tag {
                None => tag = Some(this),
                Some(prev) if prev != this => {
                    return Err(Error::Input("inhomogeneous relation (source, target, degree, or length differ)".into()))
                }
                _ => {}
            }
        }
        tag.ok_or_else(|| Error::Input("empty relation".into()))
    }
}

struct LengthLayer {
    /// Paths of the basis in this length, as arrow sequences (empty for idempotents).
    paths: Vec<Vec<usize>>,
    /// For idempotents, the vertex.
    vertex: Vec<usize>,
    global: Vec<usize>,
    /// `next[b][α]`: normal form of `b·α` in the next layer, over local indices.
    next: Vec<HashMap<usize, SparseVec>>,
}

fn path_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// `kQ / ⟨rels⟩` with basis the lexicographically smallest surviving paths, computed
/// length by length.
pub fn build_algebra(name: &str, q: &Quiver, rels: &[Relation], bound: usize) -> Result<GradedAlgebra> {
    if bound < 1 {
        return Err(Error::Input("path-length bound must be at least 1".into()));
    }
    q.validate()?;
    for r in rels {
        r.tag(q)?;
    }
    let mut layers: Vec<LengthLayer> = vec![LengthLayer {
        paths: vec![vec![]; q.vertices],
        vertex: (0..q.vertices).collect(),
        global: Vec::new(),
        next: Vec::new(),
    }];
    let endpoint = |layers: &Vec<LengthLayer>, l: usize, b: usize| -> usize {
        let p = &layers[l].paths[b];
        match p.last() {
            None => layers[l].vertex[b],
            Some(&a) => q.arrows[a].tgt,
        }
    };
    let mut len = 1;
    loop {
        let prev = len - 1;
        // Symbols (b, α) with b in the previous layer.
        let mut symbols: Vec<(usize, usize)> = Vec::new();
        for b in 0..layers[prev].paths.len() {
            let t = endpoint(&layers, prev, b);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.src == t {
                    symbols.push((b, ai));
                }
            }
        }
        let sym_path = |layers: &Vec<LengthLayer>, s: &(usize, usize)| -> Vec<usize> {
            let mut p = layers[prev].paths[s.0].clone();
            p.push(s.1);
            p
        };
        // Columns in descending lexicographic order so pivots are the largest paths.
        let mut order: Vec<usize> = (0..symbols.len()).collect();
        order.sort_by(|&i, &j| path_cmp(&sym_path(&layers, &symbols[j]), &sym_path(&layers, &symbols[i])));
        let col_of: HashMap<(usize, usize), usize> = order.iter().enumerate().map(|(c, &i)| (symbols[i], c)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        // Left multiples `p·r` of every relation no longer than `len`; right multiples
        // are already accounted for by extending normal forms of shorter paths.
        for r in rels {
            let (src, _, _, rl) = r.tag(q)?;
            if rl > len {
                continue;
            }
            let start = len - rl;
            for p in 0..layers[start].paths.len() {
                if start == 0 && layers[0].vertex[p] != src {
                    continue;
                }
                if start > 0 && endpoint(&layers, start, p) != src {
                    continue;
                }
                let mut row = vec![Scalar::zero(); symbols.len()];
                for (c, path) in &r.terms {
                    // normal form of p·path[..-1] in layer len-1, then append the last arrow
                    let mut cur: SparseVec = vec![(p, Scalar::one())];
                    for (level, &a) in (start..).zip(&path[..path.len() - 1]) {
                        let mut nxt: HashMap<usize, Scalar> = HashMap::new();
                        for (b, cb) in &cur {
                            if let Some(nf) = layers[level].next[*b].get(&a) {
                                for (z, cz) in nf {
                                    *nxt.entry(*z).or_insert_with(Scalar::zero) += cb * cz;
                                }
                            }
                        }
                        cur = nxt.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    }
                    let last = *path.last().unwrap();
                    for (b, cb) in cur {
                        if let Some(&col) = col_of.get(&(b, last)) {
                            row[col] += c * &cb;
                        }
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let (reduced, pivots) = if rows.is_empty() {
            (Matrix::zeros(0, symbols.len()), vec![])
        } else {
            rref(&Matrix::from_rows(rows, symbols.len()))
        };
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        // Surviving symbols in ascending lexicographic order.
        let mut survivors: Vec<usize> = (0..symbols.len()).filter(|c| !pivot_set.contains(c)).collect();
        survivors.reverse();
        let local: HashMap<usize, usize> = survivors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut next: Vec<HashMap<usize, SparseVec>> = vec![HashMap::new(); layers[prev].paths.len()];
        for (c, &si) in order.iter().enumerate() {
            let (b, a) = symbols[si];
            let nf: SparseVec = if let Some(&i) = local.get(&c) {
                vec![(i, Scalar::one())]
            } else {
                let r = pivots.iter().position(|&p| p == c).unwrap();
                survivors
                    .iter()
                    .filter(|&&sc| !reduced.get(r, sc).is_zero())
                    .map(|&sc| (local[&sc], -reduced.get(r, sc).clone()))
                    .collect()
            };
            next[b].insert(a, nf);
        }
        layers[prev].next = next;
        if survivors.is_empty() {
            break;
        }
        if len >= bound {
            return Err(Error::NotFiniteDimensional(bound));
        }
        let paths: Vec<Vec<usize>> = survivors.iter().map(|&c| sym_path(&layers, &symbols[order[c]])).collect();
        let n = paths.len();
        layers.push(LengthLayer { vertex: vec![0; n], paths, global: Vec::new(), next: Vec::new() });
        len += 1;
    }
    // Global basis: idempotents first, then by length.
    let mut basis = Vec::new();
    for l in 0..layers.len() {
        let mut global = Vec::new();
        for b in 0..layers[l].paths.len() {
            global.push(basis.len());
            let p = &layers[l].paths[b];
            let elem = if p.is_empty() {
                let v = layers[l].vertex[b];
                BasisElem { src: v, tgt: v, deg: 0, label: format!("e{}", v + 1) }
            } else {
                let (s, t, d) = q.path_tag(p)?;
                let label = p.iter().map(|&a| q.arrows[a].name.clone()).collect::<Vec<_>>().join("*");
                BasisElem { src: s, tgt: t, deg: d, label }
            };
            basis.push(elem);
        }
        layers[l].global = global;
    }
    let n = basis.len();
    let mut products: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); n]; n];
    for l1 in 0..layers.len() {
        for b1 in 0..layers[l1].paths.len() {
            let x = layers[l1].global[b1];
            for l2 in 0..layers.len() {
                for b2 in 0..layers[l2].paths.len() {
                    let y = layers[l2].global[b2];
                    if basis[x].tgt != basis[y].src {
                        continue;
                    }
                    if l2 == 0 {
                        products[x][y] = vec![(x, Scalar::one())];
                        continue;
                    }
                    let mut cur: SparseVec = vec![(b1, Scalar::one())];
                    let mut level = l1;
                    for &a in &layers[l2].paths[b2] {
                        if level + 1 >= layers.len() || cur.is_empty() {
                            cur.clear();
                            break;
                        }
                        let mut nxt: HashMap<usize, Scalar> = HashMap::new();
                        for (b, cb) in &cur {
                            if let Some(nf) = layers[level].next[*b].get(&a) {
                                for (z, cz) in nf {
                                    *nxt.entry(*z).or_insert_with(Scalar::zero) += cb * cz;
                                }
                            }
                        }
                        cur = nxt.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                        level += 1;
                    }
                    products[x][y] = cur.into_iter().map(|(b, c)| (layers[level].global[b], c)).collect();
                }
            }
        }
    }
    let idem = layers[0].global.clone();
    GradedAlgebra::new(name, q.vertices, basis, products, idem)
}

/// Number of paths of length at most `bound`, trivial paths included.
pub fn path_count(q: &Quiver, bound: usize) -> usize {
    let mut ending = vec![1usize; q.vertices];
    let mut total = q.vertices;
    for _ in 0..bound {
        let mut next = vec![0usize; q.vertices];
        for a in &q.arrows {
            next[a.tgt] += ending[a.src];
        }
        total += next.iter().sum::<usize>();
        ending = next;
    }
    total
}

fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: num::BigInt = n.trim().parse().ok()?;
        let d: num::BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Scalar::new(n, d));
    }
    let n: num::BigInt = s.parse().ok()?;
    Some(Scalar::from_integer(n))
}

fn parse_relation(q: &Quiver, text: &str, line: usize) -> Result<Relation> {
    let err = |msg: String| Error::Parse { line, msg };
    let mut terms = Vec::new();
    let mut sign = Scalar::one();
    let mut buf = String::new();
    let mut pieces: Vec<(Scalar, String)> = Vec::new();
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !buf.trim().is_empty() {
            pieces.push((sign.clone(), std::mem::take(&mut buf)));
            sign = if ch == '-' { -Scalar::one() } else { Scalar::one() };
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                sign = -sign;
            }
        } else {
            buf.push(ch);
        }
    }
    if !buf.trim().is_empty() {
        pieces.push((sign, buf));
    }
    for (sign, term) in pieces {
        let mut coeff = sign;
        let mut path = Vec::new();
        for f in term.split('*').map(str::trim) {
            if f.is_empty() {
                return Err(err(format!("empty factor in term {term}")));
            }
            if path.is_empty() {
                if let Some(c) = parse_scalar(f) {
                    coeff *= c;
                    continue;
                }
            }
            path.push(q.arrow_index(f).ok_or_else(|| err(format!("unknown arrow {f}")))?);
        }
        if path.is_empty() {
            return Err(err("relation term without a path".into()));
        }
        terms.push((coeff, path));
    }
    if terms.is_empty() {
        return Err(err("empty relation".into()));
    }
    Ok(Relation { terms })
}

/// Parses the line-oriented algebra format.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = None;
    let mut quiver = Quiver::default();
    let mut rels = Vec::new();
    let mut ended = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse { line, msg: msg.into() };
        if ended {
            return Err(err("content after end"));
        }
        let (kw, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match kw {
            "algebra" => name = Some(rest.to_string()),
            "vertices" => quiver.vertices = rest.parse().map_err(|_| err("bad vertex count"))?,
            "arrow" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 4 {
                    return Err(err("arrow needs NAME SRC TGT DEG"));
                }
                let src: usize = f[1].parse().map_err(|_| err("bad source"))?;
                let tgt: usize = f[2].parse().map_err(|_| err("bad target"))?;
                let deg: i64 = f[3].parse().map_err(|_| err("bad degree"))?;
                if src == 0 || tgt == 0 || src > quiver.vertices || tgt > quiver.vertices {
                    return Err(err("vertex out of range"));
                }
                if deg < 0 {
                    return Err(err("negative degree"));
                }
                if quiver.arrow_index(f[0]).is_some() {
                    return Err(err("duplicate arrow name"));
                }
                quiver.arrows.push(Arrow { name: f[0].into(), src: src - 1, tgt: tgt - 1, deg });
            }
            "relation" => rels.push(parse_relation(&quiver, rest, line)?),
            "end" => ended = true,
            _ => return Err(err(&format!("unknown keyword {kw}"))),
        }
    }
    let name = name.ok_or(Error::Parse { line: 1, msg: "missing algebra line".into() })?;
    if !ended {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing end".into() });
    }
    Ok(Presentation { name, quiver, relations: rels })
}

impl Presentation {
    pub fn build(&self, bound: usize) -> Result<GradedAlgebra> {
        build_algebra(&self.name, &self.quiver, &self.relations, bound)
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.name);
        let _ = writeln!(out, "vertices {}", self.quiver.vertices);
        for a in &self.quiver.arrows {
            let _ = writeln!(out, "arrow {} {} {} {}", a.name, a.src + 1, a.tgt + 1, a.deg);
        }
        for r in &self.relations {
            let mut s = String::new();
            for (i, (c, p)) in r.terms.iter().enumerate() {
                let path = p.iter().map(|&a| self.quiver.arrows[a].name.as_str()).collect::<Vec<_>>().join("*");
                let neg = c < &Scalar::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                if i > 0 {
                    s.push_str(if neg { " - " } else { " + " });
                } else if neg {
                    s.push('-');
                }
                if abs.is_one() {
                    s.push_str(&path);
                } else {
                    let _ = write!(s, "{abs}*{path}");
                }
            }
            let _ = writeln!(out, "relation {s}");
        }
        out.push_str("end\n");
        out
    }
}

/// Parses and builds in one step with the default bound.
pub fn load_algebra(text: &str) -> Result<GradedAlgebra> {
    parse_presentation(text)?.build(DEFAULT_BOUND)
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::load_algebra;
    use crate::algebra::GradedAlgebra;

    pub fn point() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/point.alg")).unwrap()
    }
    pub fn a2() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/a2.alg")).unwrap()
    }
    pub fn kronecker() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/kronecker.alg")).unwrap()
    }
    pub fn example_a() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/example_a.alg")).unwrap()
    }
    pub fn dual_numbers() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/dual_numbers.alg")).unwrap()
    }
    pub fn cubic() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/cubic.alg")).unwrap()
    }
    pub fn cyclic_nakayama() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/cyclic_nakayama.alg")).unwrap()
    }
    pub fn example_delta() -> GradedAlgebra {
        load_algebra(include_str!("../../../data/example_delta.alg")).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn example_algebra_has_dim_eight_in_degree_zero() {
        let a = example_a();
        assert_eq!(a.dim(), 8);
        assert!(a.is_concentrated_in_degree_zero());
    }

    #[test]
    fn point_and_dual_numbers() {
        assert_eq!(point().dim(), 1);
        let d = dual_numbers();
        assert_eq!(d.graded_dims().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn presented_trivial_extension_matches_construction() {
        let p = example_delta();
        let t = crate::algebra::trivial_extension(&example_a()).unwrap();
        assert_eq!(p.dim(), 16);
        assert_eq!(p.bigraded_dims(), t.bigraded_dims());
    }

    #[test]
    fn path_counts() {
        let q = parse_presentation(include_str!("../../../data/example_a.alg")).unwrap().quiver;
        assert_eq!(path_count(&q, 2), 10);
        let a2 = Quiver::new(2).arrow("a", 0, 1, 0);
        assert_eq!(path_count(&a2, 5), 3);
        let k = Quiver::new(2).arrow("a", 0, 1, 0).arrow("b", 0, 1, 0);
        assert_eq!(path_count(&k, 5), 4);
    }

    #[test]
    fn rejects_inhomogeneous_relation() {
        let text = "algebra bad\nvertices 1\narrow x 1 1 1\narrow y 1 1 2\nrelation x*x - y\nend\n";
        assert!(matches!(load_algebra(text), Err(Error::Input(_))));
    }

    #[test]
    fn rejects_infinite_dimensional() {
        let text = "algebra poly\nvertices 1\narrow x 1 1 1\nend\n";
        assert_eq!(parse_presentation(text).unwrap().build(5).unwrap_err(), Error::NotFiniteDimensional(5));
    }

    #[test]
    fn commutativity_relation_picks_smallest_path() {
        let text = "algebra sq\nvertices 4\narrow a 1 2 0\narrow b 1 3 0\narrow c 2 4 0\narrow d 3 4 0\nrelation a*c - b*d\nend\n";
        let alg = load_algebra(text).unwrap();
        assert_eq!(alg.dim(), 9);
        assert!(alg.basis().iter().any(|b| b.label == "a*c"));
        assert!(!alg.basis().iter().any(|b| b.label == "b*d"));
    }

    #[test]
    fn dump_roundtrip() {
        for text in [
            include_str!("../../../data/example_delta.alg"),
            include_str!("../../../data/cubic.alg"),
            include_str!("../../../data/kronecker.alg"),
        ] {
            let p = parse_presentation(text).unwrap();
            let again = parse_presentation(&p.dump()).unwrap();
            assert_eq!(p, again);
            assert_eq!(p.build(10).unwrap().bigraded_dims(), again.build(10).unwrap().bigraded_dims());
        }
    }

    proptest! {
        #[test]
        fn radical_square_zero_dimension(v in 1usize..5, arrows in proptest::collection::vec((0usize..5, 0usize..5), 0..6)) {
            let mut q = Quiver::new(v);
            for (i, (s, t)) in arrows.iter().enumerate() {
                q = q.arrow(&format!("x{i}"), s % v, t % v, 1);
            }
            let mut rels = Vec::new();
            for (i, a) in q.arrows.iter().enumerate() {
                for (j, b) in q.arrows.iter().enumerate() {
                    if a.tgt == b.src {
                        rels.push(Relation::new(vec![(Scalar::one(), vec![i, j])]));
                    }
                }
            }
            let alg = build_algebra("r2", &q, &rels, 4).unwrap();
            prop_assert_eq!(alg.dim(), v + q.arrows.len());
        }
    }
}
