use super::{GradedModule, Key};
use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

/// A parsed module file: its name, the algebra name it declares, and the module.
#[derive(Clone, Debug)]
pub struct ModuleFile {
    pub name: String,
    pub over: String,
    pub module: GradedModule,
}

fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: num::BigInt = n.trim().parse().ok()?;
        let d: num::BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| Scalar::new(n, d));
    }
    s.parse::<num::BigInt>().ok().map(Scalar::from_integer)
}

fn parse_matrix(text: &str, rows: usize, cols: usize) -> std::result::Result<Matrix, String> {
    let lines: Vec<&str> = text.split(';').map(str::trim).filter(|r| !r.is_empty()).collect();
    if lines.len() != rows {
        return Err(format!("expected {rows} rows, found {}", lines.len()));
    }
    let mut m = Matrix::zeros(rows, cols);
    for (i, r) in lines.iter().enumerate() {
        let entries: Vec<&str> = r.split(',').collect();
        if entries.len() != cols {
            return Err(format!("row {} has {} entries, expected {cols}", i + 1, entries.len()));
        }
        for (j, e) in entries.iter().enumerate() {
            m.set(i, j, parse_scalar(e).ok_or_else(|| format!("bad scalar {e:?}"))?);
        }
    }
    Ok(m)
}

/// Parses the module format against `alg`. Action lines may name any basis label;
/// elements left unspecified are filled in from products of specified ones, and
/// are zero if no such product exists.
pub fn parse_module(text: &str, alg: &Arc<GradedAlgebra>) -> Result<ModuleFile> {
    let mut header: Option<(String, String)> = None;
    let mut dims: BTreeMap<Key, usize> = BTreeMap::new();
    let mut pending: Vec<(usize, usize, i64, String)> = Vec::new();
    let mut ended = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        if ended {
            return Err(err("content after end".into()));
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "module" => {
                if words.len() != 4 || words[2] != "over" {
                    return Err(err("expected: module NAME over ALGEBRA".into()));
                }
                header = Some((words[1].to_string(), words[3].to_string()));
            }
            "space" => {
                if words.len() != 4 {
                    return Err(err("expected: space VERTEX DEGREE DIM".into()));
                }
                let v: usize = words[1].parse().map_err(|_| err("bad vertex".into()))?;
                if v == 0 || v > alg.num_vertices() {
                    return Err(err(format!("vertex {v} out of range")));
                }
                let d: i64 = words[2].parse().map_err(|_| err("bad degree".into()))?;
                let n: usize = words[3].parse().map_err(|_| err("bad dimension".into()))?;
                if dims.insert((d, v - 1), n).is_some() {
                    return Err(err(format!("space {v} {d} given twice")));
                }
            }
            "action" => {
                if words.len() < 5 || words[3] != "matrix" {
                    return Err(err("expected: action LABEL DEGREE matrix ROWS".into()));
                }
                let x = (0..alg.dim())
                    .find(|&x| alg.elem(x).label == words[1])
                    .ok_or_else(|| err(format!("unknown basis label {}", words[1])))?;
                let d: i64 = words[2].parse().map_err(|_| err("bad degree".into()))?;
                pending.push((line, x, d, words[4..].join("")));
            }
            "end" => ended = true,
            w => return Err(err(format!("unknown directive {w}"))),
        }
    }
    let (name, over) = header.ok_or(Error::Parse { line: 1, msg: "missing module line".into() })?;
    if !ended {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing end".into() });
    }
    let dim_at = |k: Key| dims.get(&k).copied().unwrap_or(0);
    let mut action: Vec<BTreeMap<i64, Matrix>> = vec![BTreeMap::new(); alg.dim()];
    let mut known: BTreeSet<usize> = BTreeSet::new();
    for (line, x, d, body) in pending {
        let e = alg.elem(x);
        let (r, c) = (dim_at((d, e.src)), dim_at((d + e.deg, e.tgt)));
        let m = parse_matrix(&body, r, c).map_err(|msg| Error::Parse { line, msg })?;
        if action[x].insert(d, m).is_some() {
            return Err(Error::Parse { line, msg: format!("action of {} on degree {d} given twice", e.label) });
        }
        known.insert(x);
    }
    for v in 0..alg.num_vertices() {
        let e = alg.idempotent(v);
        if known.insert(e) {
            for (&(d, w), &n) in &dims {
                if w == v {
                    action[e].insert(d, Matrix::identity(n));
                }
            }
        }
    }
    close_under_products(alg, &dims, &mut action, &mut known);
    let module = GradedModule::new(alg.clone(), dims, action)?;
    Ok(ModuleFile { name, over, module })
}

fn close_under_products(alg: &GradedAlgebra, dims: &BTreeMap<Key, usize>, action: &mut [BTreeMap<i64, Matrix>], known: &mut BTreeSet<usize>) {
    let dim_at = |k: Key| dims.get(&k).copied().unwrap_or(0);
    loop {
        let mut progress = false;
        for x in 0..alg.dim() {
            if !known.contains(&x) || alg.is_idempotent_index(x) {
                continue;
            }
            for y in 0..alg.dim() {
                if !known.contains(&y) || alg.is_idempotent_index(y) {
                    continue;
                }
                let terms = alg.mul_basis(x, y);
                let [(z, c)] = terms.as_slice() else { continue };
                if known.contains(z) {
                    continue;
                }
                let (ex, ey) = (alg.elem(x), alg.elem(y));
                let inv = Scalar::one() / c;
                let mut table = BTreeMap::new();
                for (&(d, v), &n) in dims {
                    if v != ex.src {
                        continue;
                    }
                    let mid = (d + ex.deg, ex.tgt);
                    let tgt = (mid.0 + ey.deg, ey.tgt);
                    let (Some(a), Some(b)) = (action[x].get(&d), action[y].get(&mid.0)) else { continue };
                    debug_assert_eq!((a.rows(), b.cols()), (n, dim_at(tgt)));
                    table.insert(d, a.mul(b).scale(&inv));
                }
                action[*z] = table;
                known.insert(*z);
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Writes every nonzero action block of every non-idempotent basis element.
pub fn dump_module(name: &str, m: &GradedModule) -> String {
    let alg = m.algebra();
    let mut s = String::new();
    let _ = writeln!(s, "module {name} over {}", alg.name());
    for (&(d, v), &n) in m.dims() {
        let _ = writeln!(s, "space {} {d} {n}", v + 1);
    }
    for x in 0..alg.dim() {
        if alg.is_idempotent_index(x) {
            continue;
        }
        for (d, mat) in m.action_table(x) {
            let _ = writeln!(s, "action {} {d} matrix {}", alg.elem(x).label, fmt_matrix(mat));
        }
    }
    s.push_str("end\n");
    s
}
