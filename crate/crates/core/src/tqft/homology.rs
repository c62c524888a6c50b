//! Bigraded homology of closed complexes through the TQFT.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::{eval_map, eval_object, IntMatrix};
use crate::chain::{kh_complex, Complex};
use crate::error::{Error, Result};
use crate::tangle::TangleDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Z,
    F2,
}

/// A finitely generated abelian group `Z^free ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Group {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// Nonzero homology groups indexed by `(h, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub groups: BTreeMap<(i32, i32), Group>,
}

impl HomologyTable {
    pub fn get(&self, h: i32, q: i32) -> Group {
        self.groups.get(&(h, q)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_free(&self) -> usize {
        self.groups.values().map(|g| g.free).sum()
    }

    pub fn torsion_count(&self) -> usize {
        self.groups.values().map(|g| g.torsion.len()).sum()
    }

    /// Homological degrees with a nonzero group.
    pub fn support(&self) -> Vec<i32> {
        let mut h: Vec<i32> = self.groups.keys().map(|k| k.0).collect();
        h.dedup();
        h
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.groups
                .iter()
                .map(|(&(h, q), g)| json!({"h": h, "q": q, "rank": g.free, "torsion": g.torsion}))
                .collect(),
        )
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(h, q), g) in &self.groups {
            write!(f, "h={h:>3} q={q:>3}  Z^{}", g.free)?;
            for t in &g.torsion {
                write!(f, " + Z/{t}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A complex of free abelian groups for one q-degree.
#[derive(Clone, Debug, Default)]
struct Block {
    dims: BTreeMap<i32, usize>,
    d: BTreeMap<i32, IntMatrix>,
}

impl Block {
    fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    fn diff(&self, n: i32) -> IntMatrix {
        self.d.get(&n).cloned().unwrap_or_else(|| IntMatrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    /// Cancels invertible entries until none remain.
    fn simplify(&mut self) {
        loop {
            let pivot = self.d.iter().find_map(|(&n, m)| {
                (0..m.rows()).find_map(|r| (0..m.cols()).find(|&c| m.at(r, c).abs() == 1).map(|c| (n, r, c)))
            });
            let Some((n, j, i)) = pivot else { return };
            let m = &self.d[&n];
            let u = m.at(j, i);
            let (rows, cols) = (m.rows(), m.cols());
            let mut next = IntMatrix::zeros(rows - 1, cols - 1);
            for r in (0..rows).filter(|&r| r != j) {
                for c in (0..cols).filter(|&c| c != i) {
                    let v = m.at(r, c) - m.at(r, i) * u * m.at(j, c);
                    *next.at_mut(r - usize::from(r > j), c - usize::from(c > i)) = v;
                }
            }
            self.d.insert(n, next);
            if let Some(up) = self.d.get(&(n + 1)) {
                self.d.insert(n + 1, drop_col(up, j));
            }
            if let Some(down) = self.d.get(&(n - 1)) {
                self.d.insert(n - 1, drop_row(down, i));
            }
            *self.dims.get_mut(&n).unwrap() -= 1;
            *self.dims.get_mut(&(n + 1)).unwrap() -= 1;
        }
    }
}

fn drop_col(m: &IntMatrix, k: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols() - 1);
    for r in 0..m.rows() {
        for c in (0..m.cols()).filter(|&c| c != k) {
            *out.at_mut(r, c - usize::from(c > k)) = m.at(r, c);
        }
    }
    out
}

fn drop_row(m: &IntMatrix, k: usize) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows() - 1, m.cols());
    for r in (0..m.rows()).filter(|&r| r != k) {
        for c in 0..m.cols() {
            *out.at_mut(r - usize::from(r > k), c) = m.at(r, c);
        }
    }
    out
}

/// Splits the TQFT image of a closed complex by q-degree.
fn evaluate(c: &Complex) -> Result<BTreeMap<i32, Block>> {
    if !c.is_closed() {
        return Err(Error::OpenTangle);
    }
    // per degree: q-degree of every basis vector, and (q, index in q-block)
    let mut place: BTreeMap<i32, Vec<Vec<(i32, usize)>>> = BTreeMap::new();
    let mut blocks: BTreeMap<i32, Block> = BTreeMap::new();
    for n in c.degrees() {
        let mut per_obj = Vec::new();
        for o in c.objects(n) {
            let qs = eval_object(&o.tangle, o.q)?;
            let v: Vec<(i32, usize)> = qs
                .into_iter()
                .map(|q| {
                    let b = blocks.entry(q).or_default();
                    let slot = b.dims.entry(n).or_insert(0);
                    *slot += 1;
                    (q, *slot - 1)
                })
                .collect();
            per_obj.push(v);
        }
        place.insert(n, per_obj);
    }
    for b in blocks.values_mut() {
        let degrees: Vec<i32> = b.dims.keys().copied().collect();
        for n in degrees {
            if b.dim(n + 1) > 0 {
                b.d.insert(n, IntMatrix::zeros(b.dim(n + 1), b.dim(n)));
            }
        }
    }
    for n in c.degrees() {
        let Some(m) = c.diff_ref(n) else { continue };
        for (r, col, x) in m.entries() {
            let e = eval_map(x)?;
            let (src, tgt) = (&place[&n][col], &place[&(n + 1)][r]);
            for (i, &(qi, ii)) in src.iter().enumerate() {
                for (j, &(qj, jj)) in tgt.iter().enumerate() {
                    let v = e.at(j, i);
                    if v == 0 {
                        continue;
                    }
                    if qi != qj {
                        return Err(Error::Shape(format!("differential d^{n} does not preserve q-degree")));
                    }
                    *blocks.get_mut(&qi).unwrap().d.get_mut(&n).unwrap().at_mut(jj, ii) += v;
                }
            }
        }
    }
    Ok(blocks)
}

/// Homology of a closed complex. With `simplify`, invertible entries of the
/// evaluated matrices are cancelled before computing ranks.
pub fn homology(c: &Complex, coeff: Coefficients, simplify: bool) -> Result<HomologyTable> {
    let mut table = HomologyTable::default();
    for (q, mut b) in evaluate(c)? {
        if simplify {
            b.simplify();
        }
        let rank = |m: &IntMatrix| match coeff {
            Coefficients::Z => m.rank(),
            Coefficients::F2 => m.rank_f2(),
        };
        let degrees: Vec<i32> = b.dims.keys().copied().collect();
        for n in degrees {
            let out = b.diff(n);
            let inc = b.diff(n - 1);
            let free = b.dim(n) - rank(&out) - rank(&inc);
            let torsion: Vec<u64> = match coeff {
                Coefficients::Z => inc.invariant_factors().into_iter().filter(|&t| t > 1).collect(),
                Coefficients::F2 => Vec::new(),
            };
            let g = Group { free, torsion };
            if !g.is_zero() {
                table.groups.insert((n, q), g);
            }
        }
    }
    Ok(table)
}

pub fn kh_link(d: &TangleDiagram, coeff: Coefficients, simplify: bool) -> Result<HomologyTable> {
    if d.boundary() != 0 {
        return Err(Error::OpenTangle);
    }
    let c = kh_complex(d);
    if simplify {
        let small = crate::chain::simplify(&std::sync::Arc::new(c))?.target;
        return homology(&small, coeff, true);
    }
    homology(&c, coeff, false)
}

/// Singular crossings expand to their four-term local complexes.
pub fn kh_singular(d: &TangleDiagram, coeff: Coefficients, simplify: bool) -> Result<HomologyTable> {
    kh_link(d, coeff, simplify)
}
