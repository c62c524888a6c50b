use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{shape_error, Complex, Mat};
use crate::cobordism::{Cobordism, Degree};
use crate::error::{Error, Result};
use crate::tangle::FlatTangle;

/// A homogeneous element of `Hom^k(source, target)`: one matrix per source
/// degree `n`, mapping degree `n` to degree `n + k`.
#[derive(Clone, Debug)]
pub struct HomElement {
    pub source: Arc<Complex>,
    pub target: Arc<Complex>,
    pub degree: i32,
    maps: BTreeMap<i32, Mat>,
}

impl PartialEq for HomElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.source == other.source
            && self.target == other.target
            && self.maps == other.maps
    }
}

impl HomElement {
    pub fn zero(source: &Arc<Complex>, target: &Arc<Complex>, degree: i32) -> Self {
        HomElement { source: source.clone(), target: target.clone(), degree, maps: BTreeMap::new() }
    }

    pub fn identity(c: &Arc<Complex>) -> Self {
        let mut h = HomElement::zero(c, c, 0);
        for n in c.degrees() {
            let mut m = Mat::zeros(c.rank(n), c.rank(n));
            for (i, o) in c.objects(n).iter().enumerate() {
                m.add_at(i, i, Cobordism::identity(&o.tangle));
            }
            h.set(n, m).expect("identity shape");
        }
        h
    }

    /// Installs the matrix at source degree `n`.
    pub fn set(&mut self, n: i32, m: Mat) -> Result<()> {
        let (rows, cols) = (self.target.rank(n + self.degree), self.source.rank(n));
        if m.rows() != rows || m.cols() != cols {
            return Err(shape_error(format!("degree {n}: expected {rows}x{cols}, got {}x{}", m.rows(), m.cols())));
        }
        for (r, c, x) in m.entries() {
            let (s, t) = (&self.source.objects(n)[c], &self.target.objects(n + self.degree)[r]);
            if x.source() != &s.tangle || x.target() != &t.tangle {
                return Err(Error::Boundary(format!("degree {n} entry ({r},{c}) has wrong ends")));
            }
        }
        if m.is_zero() {
            self.maps.remove(&n);
        } else {
            self.maps.insert(n, m);
        }
        Ok(())
    }

    /// Adds `x` into entry `(r, c)` of the matrix at source degree `n`.
    pub fn add_entry(&mut self, n: i32, r: usize, c: usize, x: Cobordism) -> Result<()> {
        let mut m = self.map(n);
        m.add_at(r, c, x);
        self.set(n, m)
    }

    pub fn map(&self, n: i32) -> Mat {
        self.maps.get(&n).cloned().unwrap_or_else(|| Mat::zeros(self.target.rank(n + self.degree), self.source.rank(n)))
    }

    pub fn map_ref(&self, n: i32) -> Option<&Mat> {
        self.maps.get(&n)
    }

    /// Source degrees with a nonzero matrix.
    pub fn support(&self) -> Vec<i32> {
        self.maps.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.maps.is_empty()
    }

    fn same_shape(&self, other: &HomElement) -> Result<()> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(shape_error("hom elements live in different Hom groups"));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HomElement) -> Result<HomElement> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (&n, m) in &other.maps {
            let s = out.map(n).add(m);
            out.put(n, s);
        }
        Ok(out)
    }

    pub fn add(&self, other: &HomElement) -> HomElement {
        self.try_add(other).expect("adding hom elements of different shapes")
    }

    pub fn sub(&self, other: &HomElement) -> HomElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> HomElement {
        let mut out = HomElement::zero(&self.source, &self.target, self.degree);
        for (&n, m) in &self.maps {
            out.put(n, m.scale(k));
        }
        out
    }

    pub fn neg(&self) -> HomElement {
        self.scale(-1)
    }

    fn put(&mut self, n: i32, m: Mat) {
        if m.is_zero() {
            self.maps.remove(&n);
        } else {
            self.maps.insert(n, m);
        }
    }

    /// `self ∘ f`: apply `f` first.
    pub fn try_compose(&self, f: &HomElement) -> Result<HomElement> {
        if f.target != self.source {
            return Err(shape_error("composition: target of the first map is not the source of the second"));
        }
        let mut out = HomElement::zero(&f.source, &self.target, f.degree + self.degree);
        for (&n, m) in &f.maps {
            if let Some(g) = self.maps.get(&(n + f.degree)) {
                out.put(n, g.compose(m));
            }
        }
        Ok(out)
    }

    pub fn compose(&self, f: &HomElement) -> HomElement {
        self.try_compose(f).expect("composing hom elements with mismatched ends")
    }

    /// `∂f = d∘f - (-1)^k f∘d`.
    pub fn differential(&self) -> HomElement {
        let k = self.degree;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let mut out = HomElement::zero(&self.source, &self.target, k + 1);
        let mut degrees: Vec<i32> = self.maps.keys().copied().collect();
        degrees.extend(self.maps.keys().map(|n| n - 1));
        degrees.sort_unstable();
        degrees.dedup();
        for n in degrees {
            let mut m = Mat::zeros(self.target.rank(n + k + 1), self.source.rank(n));
            if let (Some(f), Some(d)) = (self.maps.get(&n), self.target.diff_ref(n + k)) {
                m = m.add(&d.compose(f));
            }
            if let (Some(f), Some(d)) = (self.maps.get(&(n + 1)), self.source.diff_ref(n)) {
                m = m.add(&f.compose(d).scale(sign));
            }
            out.put(n, m);
        }
        out
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.differential().is_zero()
    }

    /// First place where two parallel elements differ: (source degree, row, column).
    pub fn first_difference(&self, other: &HomElement) -> Option<(i32, usize, usize)> {
        if self.same_shape(other).is_err() {
            return Some((i32::MIN, 0, 0));
        }
        let mut degrees: Vec<i32> = self.maps.keys().chain(other.maps.keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees.into_iter().find_map(|n| self.map(n).first_difference(&other.map(n)).map(|(r, c)| (n, r, c)))
    }

    /// Describes the first difference, for check witnesses.
    pub fn difference_witness(&self, other: &HomElement) -> Option<String> {
        let (n, r, c) = self.first_difference(other)?;
        if n == i32::MIN {
            return Some("different Hom groups".into());
        }
        let show = |h: &HomElement| h.map(n).get(r, c).map_or("0".to_string(), |x| x.to_string());
        Some(format!("degree {n}, entry ({r},{c}): {} vs {}", show(self), show(other)))
    }

    /// The internal q-degree: every entry `x` satisfies
    /// `qdeg(x) = q(source) - q(target) + k` for one `k`.
    pub fn internal_qdeg(&self) -> Result<Option<i32>> {
        let mut found: Option<i32> = None;
        for (&n, m) in &self.maps {
            for (r, c, x) in m.entries() {
                let base = self.source.objects(n)[c].q - self.target.objects(n + self.degree)[r].q;
                let d = match x.qdeg() {
                    Degree::Zero => continue,
                    Degree::Homogeneous(d) => d - base,
                    Degree::Mixed => return Err(shape_error(format!("degree {n} entry ({r},{c}) is inhomogeneous"))),
                };
                match found {
                    None => found = Some(d),
                    Some(e) if e == d => {}
                    Some(e) => {
                        return Err(shape_error(format!("degree {n} entry ({r},{c}) has internal degree {d}, not {e}")))
                    }
                }
            }
        }
        Ok(found)
    }

    /// Restricts to one block of the part decompositions of source and target.
    pub fn block(&self, tgt_part: usize, src_part: usize) -> Result<HomElement> {
        let (sp, tp) = (self.source.parts(), self.target.parts());
        let (s, t) = match (sp.get(src_part), tp.get(tgt_part)) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(shape_error("no such block")),
        };
        let deg = self.degree + t.offset - s.offset;
        let mut out = HomElement::zero(&s.complex, &t.complex, deg);
        for n in self.source.degrees() {
            let c0 = part_offset(&self.source, src_part, n);
            let r0 = part_offset(&self.target, tgt_part, n + self.degree);
            let (m_src, m_tgt) = (n + s.offset, n + self.degree + t.offset);
            let sub = self.map(n).sub_block(r0, t.complex.rank(m_tgt), c0, s.complex.rank(m_src));
            out.set(m_src, sub)?;
        }
        Ok(out)
    }

    /// Assembles a map between complexes with part decompositions from
    /// blocks `(target part, source part, map)`.
    pub fn from_blocks(
        source: &Arc<Complex>,
        target: &Arc<Complex>,
        degree: i32,
        blocks: &[(usize, usize, &HomElement)],
    ) -> Result<HomElement> {
        let mut out = HomElement::zero(source, target, degree);
        for &(ti, si, b) in blocks {
            let (s, t) = match (source.parts().get(si), target.parts().get(ti)) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(shape_error("block index outside the part decomposition")),
            };
            if *b.source != *s.complex || *b.target != *t.complex {
                return Err(shape_error(format!("block ({ti},{si}) has the wrong source or target")));
            }
            if b.degree != degree + t.offset - s.offset {
                return Err(shape_error(format!("block ({ti},{si}) has degree {}", b.degree)));
            }
            for (&m_src, m) in &b.maps {
                let n = m_src - s.offset;
                let c0 = part_offset(source, si, n);
                let r0 = part_offset(target, ti, n + degree);
                let mut big = out.map(n);
                big.place(r0, c0, m, 1);
                out.put(n, big);
            }
        }
        Ok(out)
    }

    /// Caps source and target with the same crossingless matching; the
    /// closed complexes are passed in so several maps can share them.
    pub fn close(&self, closing: &FlatTangle, source: &Arc<Complex>, target: &Arc<Complex>) -> Result<HomElement> {
        let mut out = HomElement::zero(source, target, self.degree);
        for (&n, m) in &self.maps {
            let mut cm = Mat::zeros(m.rows(), m.cols());
            for (r, c, x) in m.entries() {
                cm.add_at(r, c, x.close(closing)?);
            }
            out.set(n, cm)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let maps: Vec<Value> = self
            .maps
            .iter()
            .map(|(&n, m)| {
                let entries: Vec<Value> = m
                    .entries()
                    .map(|(r, c, x)| {
                        json!({
                            "source": super::label_string(&self.source.objects(n)[c].label),
                            "target": super::label_string(&self.target.objects(n + self.degree)[r].label),
                            "row": r,
                            "col": c,
                            "map": x.to_json(),
                        })
                    })
                    .collect();
                json!({"degree": n, "entries": entries})
            })
            .collect();
        json!({"degree": self.degree, "maps": maps})
    }
}

/// Index of the first summand of part `p` in degree `n`.
pub(crate) fn part_offset(c: &Complex, p: usize, n: i32) -> usize {
    c.parts()[..p].iter().map(|q| q.complex.rank(n + q.offset)).sum()
}
