//! Dotted cobordisms between flat tangles.
//!
//! A morphism `S -> T` is stored in the disk basis: the boundary of any
//! cobordism is a union of closed curves ("cycles") made of circles of `S`,
//! circles of `T`, and the vertical segments over the boundary points. After
//! neck-cutting every surface is a sum of products of disks, one per cycle,
//! each carrying at most one dot. A generator is therefore a bit mask of
//! dotted cycles.

mod plan;
pub mod pre;
pub mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::tangle::{FlatTangle, Side, UnionFind};

pub use pre::{PreComponent, PreSurface};

/// Boundary cycles of a pair of flat tangles with the same boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycles {
    pub n_source: usize,
    pub n_target: usize,
    /// Cycle of each circle; source circles first, then target circles.
    pub cycle_of: Vec<usize>,
    /// Member circles of each cycle, ordered by smallest member.
    pub members: Vec<Vec<usize>>,
}

impl Cycles {
    pub fn new(source: &FlatTangle, target: &FlatTangle) -> Self {
        assert_eq!(source.boundary(), target.boundary(), "boundary mismatch");
        let ns = source.circle_count();
        let nt = target.circle_count();
        let mut uf = UnionFind::new(ns + nt);
        for p in 0..source.boundary() {
            uf.union(source.arc_at(p), ns + target.arc_at(p));
        }
        let mut root_index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut cycle_of = vec![0; ns + nt];
        for c in 0..ns + nt {
            let r = uf.find(c);
            let k = *root_index.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            members[k].push(c);
            cycle_of[c] = k;
        }
        Cycles { n_source: ns, n_target: nt, cycle_of, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn circle_name(&self, c: usize) -> String {
        if c < self.n_source {
            format!("s{c}")
        } else {
            format!("t{}", c - self.n_source)
        }
    }
}

/// q-degree of a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    Zero,
    Homogeneous(i32),
    Mixed,
}

/// An integer combination of disk-basis generators `source -> target`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cobordism {
    source: FlatTangle,
    target: FlatTangle,
    n_cycles: u32,
    terms: BTreeMap<u64, i64>,
}

fn check_cycle_count(n: usize) {
    assert!(n <= 64, "too many boundary cycles ({n}) for the mask representation");
}

impl Cobordism {
    pub fn zero(source: &FlatTangle, target: &FlatTangle) -> Self {
        let n = Cycles::new(source, target).len();
        check_cycle_count(n);
        Cobordism { source: source.clone(), target: target.clone(), n_cycles: n as u32, terms: BTreeMap::new() }
    }

    /// Builds a morphism directly from disk-basis terms.
    pub fn from_terms(source: &FlatTangle, target: &FlatTangle, terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut c = Cobordism::zero(source, target);
        let full = c.full_mask();
        for (m, k) in terms {
            assert_eq!(m & !full, 0, "dot mask out of range");
            c.add_term(m, k);
        }
        c
    }

    pub fn identity(t: &FlatTangle) -> Self {
        let ns = t.circle_count();
        let comps = (0..ns).map(|i| PreComponent::new(vec![i, ns + i], 0, 0)).collect();
        PreSurface::new(t.clone(), t.clone(), 1, comps).normalize().expect("identity is well formed")
    }

    /// Cup creating a new last loop.
    pub fn birth(t: &FlatTangle) -> Self {
        let target = t.with_extra_loop();
        let ns = t.circle_count();
        let nt = target.circle_count();
        let mut comps: Vec<PreComponent> = (0..ns).map(|i| PreComponent::new(vec![i, ns + i], 0, 0)).collect();
        comps.push(PreComponent::new(vec![ns + nt - 1], 0, 0));
        PreSurface::new(t.clone(), target, 1, comps).normalize().expect("birth is well formed")
    }

    /// Cap removing loop `k` (0-based among loops) of `t`.
    pub fn death(t: &FlatTangle, k: u32) -> Result<Self> {
        let target = t.without_loop(k)?;
        let ns = t.circle_count();
        let dead = t.arc_count() + k as usize;
        let mut comps = Vec::new();
        let mut j = 0;
        for i in 0..ns {
            if i == dead {
                comps.push(PreComponent::new(vec![i], 0, 0));
            } else {
                comps.push(PreComponent::new(vec![i, ns + j], 0, 0));
                j += 1;
            }
        }
        PreSurface::new(t.clone(), target, 1, comps).normalize()
    }

    pub fn source(&self) -> &FlatTangle {
        &self.source
    }

    pub fn target(&self) -> &FlatTangle {
        &self.target
    }

    pub fn cycles(&self) -> Cycles {
        Cycles::new(&self.source, &self.target)
    }

    pub fn cycle_count(&self) -> usize {
        self.n_cycles as usize
    }

    fn full_mask(&self) -> u64 {
        if self.n_cycles == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_cycles) - 1
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.terms.iter().map(|(&m, &k)| (m, k))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u64) -> i64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    fn add_term(&mut self, mask: u64, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.terms.entry(mask).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(&mask);
        }
    }

    fn same_ends(&self, other: &Cobordism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Boundary(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Cobordism) -> Result<Cobordism> {
        self.same_ends(other)?;
        let mut out = self.clone();
        for (m, k) in other.terms() {
            out.add_term(m, k);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Cobordism) -> Cobordism {
        self.try_add(other).expect("adding cobordisms with different ends")
    }

    pub fn sub(&self, other: &Cobordism) -> Cobordism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cobordism {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Cobordism {
        let mut out = Cobordism { terms: BTreeMap::new(), ..self.clone() };
        if k != 0 {
            for (m, c) in self.terms() {
                out.terms.insert(m, c * k);
            }
        }
        out
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn try_compose(&self, f: &Cobordism) -> Result<Cobordism> {
        if f.target != self.source {
            return Err(Error::Boundary(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, f.source, f.target
            )));
        }
        let plan = plan::compose_plan(&f.source, &f.target, &self.target);
        let mut out = Cobordism::zero(&f.source, &self.target);
        plan.apply(&f.terms, &self.terms, &mut |m, k| out.add_term(m, k));
        Ok(out)
    }

    pub fn compose(&self, f: &Cobordism) -> Cobordism {
        self.try_compose(f).expect("composing cobordisms with mismatched ends")
    }

    /// Places `self` and `other` side by side in a bigger disk, identifying
    /// boundary points as in [`crate::tangle::glue`].
    pub fn glue(&self, other: &Cobordism, pairs: &[(u32, u32)], order: &[(Side, u32)]) -> Result<Cobordism> {
        let plan = plan::glue_plan(self, other, pairs, order)?;
        let mut out = Cobordism::zero(&plan.source, &plan.target);
        plan.classes.apply(&self.terms, &other.terms, &mut |m, k| out.add_term(m, k));
        Ok(out)
    }

    /// Caps the boundary with the crossingless matching `closing` drawn
    /// outside the disk.
    pub fn close(&self, closing: &FlatTangle) -> Result<Cobordism> {
        let id = Cobordism::identity(closing);
        let pairs: Vec<(u32, u32)> = (0..self.source.boundary()).map(|p| (p, p)).collect();
        self.glue(&id, &pairs, &[])
    }

    /// Adds a dot on the component containing `circle` (source circles
    /// first, then target circles).
    pub fn dot(&self, circle: usize) -> Result<Cobordism> {
        let cyc = self.cycles();
        let k = *cyc.cycle_of.get(circle).ok_or_else(|| Error::Site(format!("no circle {circle}")))?;
        let bit = 1u64 << k;
        let mut out = Cobordism { terms: BTreeMap::new(), ..self.clone() };
        for (m, c) in self.terms() {
            if m & bit == 0 {
                out.add_term(m | bit, c);
            }
        }
        Ok(out)
    }

    /// Attaches a tube between the components containing circles `a` and
    /// `b`, then neck-cuts it away.
    pub fn attach_tube(&self, a: usize, b: usize) -> Result<Cobordism> {
        let cyc = self.cycles();
        let get = |c: usize| cyc.cycle_of.get(c).copied().ok_or_else(|| Error::Site(format!("no circle {c}")));
        let (ka, kb) = (get(a)?, get(b)?);
        let (ba, bb) = (1u64 << ka, 1u64 << kb);
        let mut out = Cobordism { terms: BTreeMap::new(), ..self.clone() };
        for (m, c) in self.terms() {
            if ka == kb {
                // handle = 2 * dot
                if m & ba == 0 {
                    out.add_term(m | ba, 2 * c);
                }
                continue;
            }
            match (m & ba != 0, m & bb != 0) {
                (false, false) => {
                    out.add_term(m | ba, c);
                    out.add_term(m | bb, c);
                }
                (true, false) | (false, true) => out.add_term(m | ba | bb, c),
                (true, true) => {}
            }
        }
        Ok(out)
    }

    /// q-degree of a single generator.
    pub fn generator_degree(&self, mask: u64) -> i32 {
        self.n_cycles as i32 - (self.source.boundary() / 2) as i32 - 2 * mask.count_ones() as i32
    }

    pub fn qdeg(&self) -> Degree {
        let mut degs = self.terms.keys().map(|&m| self.generator_degree(m));
        match degs.next() {
            None => Degree::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }

    /// True when every term has q-degree `d` (vacuously for zero).
    pub fn has_degree(&self, d: i32) -> bool {
        self.terms.keys().all(|&m| self.generator_degree(m) == d)
    }

    /// Normal-form equality; errors on different ends.
    pub fn equals(&self, other: &Cobordism) -> Result<bool> {
        self.same_ends(other)?;
        Ok(self.terms == other.terms)
    }

    /// All generators of q-degree `d` between two flat tangles.
    pub fn basis(source: &FlatTangle, target: &FlatTangle, d: i32) -> Vec<u64> {
        let n = Cycles::new(source, target).len() as i32;
        let twice_dots = n - (source.boundary() / 2) as i32 - d;
        if twice_dots < 0 || twice_dots % 2 != 0 || twice_dots / 2 > n {
            return Vec::new();
        }
        let k = (twice_dots / 2) as u32;
        check_cycle_count(n as usize);
        let mut out = Vec::new();
        let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut m: u64 = 0;
        loop {
            if m.count_ones() == k {
                out.push(m);
            }
            if m == limit {
                break;
            }
            m += 1;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let cyc = self.cycles();
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, k)| {
                let comps: Vec<Value> = cyc
                    .members
                    .iter()
                    .enumerate()
                    .map(|(i, mem)| {
                        json!({
                            "circles": mem.iter().map(|&c| cyc.circle_name(c)).collect::<Vec<_>>(),
                            "dot": m >> i & 1 == 1,
                        })
                    })
                    .collect();
                json!({"coeff": k, "components": comps})
            })
            .collect();
        json!({
            "source": flat_json(&self.source),
            "target": flat_json(&self.target),
            "terms": terms,
        })
    }
}

pub fn flat_json(t: &FlatTangle) -> Value {
    json!({
        "boundary": t.boundary(),
        "arcs": t.arcs().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "loops": t.loop_count(),
    })
}

impl fmt::Display for Cobordism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, k)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k:+}·[")?;
            for c in 0..self.n_cycles {
                write!(f, "{}", if m >> c & 1 == 1 { '•' } else { 'o' })?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
