use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A crossingless tangle in a disk: a planar perfect matching of the marked
/// boundary points plus some closed loops.
///
/// Circles are indexed arcs first (ordered by their smaller endpoint), then
/// loops in their canonical order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FlatTangle {
    boundary: u32,
    arcs: Vec<(u32, u32)>,
    loops: u32,
}

impl FlatTangle {
    pub fn new(boundary: u32, arcs: Vec<(u32, u32)>, loops: u32) -> Result<Self> {
        if !boundary.is_multiple_of(2) {
            return Err(Error::Tangle(format!("odd boundary count {boundary}")));
        }
        let mut seen = vec![false; boundary as usize];
        let mut norm = Vec::with_capacity(arcs.len());
        for &(a, b) in &arcs {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if b >= boundary || a == b {
                return Err(Error::Tangle(format!("bad arc {a}-{b}")));
            }
            for p in [a, b] {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::Tangle(format!("boundary point {p} used twice")));
                }
            }
            norm.push((a, b));
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Tangle("arcs do not cover every boundary point".into()));
        }
        norm.sort_unstable();
        for (i, &(a, b)) in norm.iter().enumerate() {
            for &(c, d) in &norm[i + 1..] {
                // sorted by first endpoint, so a < c
                if c < b && b < d {
                    return Err(Error::Tangle(format!("arcs {a}-{b} and {c}-{d} cross")));
                }
            }
        }
        Ok(FlatTangle { boundary, arcs: norm, loops })
    }

    /// `n` loops and nothing else.
    pub fn loops_only(n: u32) -> Self {
        FlatTangle { boundary: 0, arcs: Vec::new(), loops: n }
    }

    /// `n` vertical strands under the braid boundary convention
    /// (bottom `0..n` left to right, top `n..2n` right to left).
    pub fn identity_braid(n: u32) -> Self {
        let arcs = (0..n).map(|i| (i, 2 * n - 1 - i)).collect();
        FlatTangle { boundary: 2 * n, arcs, loops: 0 }
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn loop_count(&self) -> u32 {
        self.loops
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn circle_count(&self) -> usize {
        self.arcs.len() + self.loops as usize
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    pub fn is_arc(&self, circle: usize) -> bool {
        circle < self.arcs.len()
    }

    /// Index of the arc with endpoint `p`.
    pub fn arc_at(&self, p: u32) -> usize {
        self.arcs.iter().position(|&(a, b)| a == p || b == p).expect("boundary point out of range")
    }

    pub fn partner(&self, p: u32) -> u32 {
        let (a, b) = self.arcs[self.arc_at(p)];
        if a == p {
            b
        } else {
            a
        }
    }

    /// Adds one loop at the end of the loop order.
    pub fn with_extra_loop(&self) -> Self {
        let mut t = self.clone();
        t.loops += 1;
        t
    }

    /// Removes loop number `k` (0-based among loops).
    pub fn without_loop(&self, k: u32) -> Result<Self> {
        if k >= self.loops {
            return Err(Error::Tangle(format!("no loop {k}")));
        }
        let mut t = self.clone();
        t.loops -= 1;
        Ok(t)
    }

    /// Every crossingless matching of `boundary` points, without loops.
    pub fn planar_matchings(boundary: u32) -> Vec<FlatTangle> {
        fn go(pts: &[u32]) -> Vec<Vec<(u32, u32)>> {
            if pts.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for k in (1..pts.len()).step_by(2) {
                for inner in go(&pts[1..k]) {
                    for outer in go(&pts[k + 1..]) {
                        let mut m = vec![(pts[0], pts[k])];
                        m.extend(&inner);
                        m.extend(outer);
                        out.push(m);
                    }
                }
            }
            out
        }
        let pts: Vec<u32> = (0..boundary).collect();
        go(&pts).into_iter().map(|m| FlatTangle::new(boundary, m, 0).expect("planar by construction")).collect()
    }
}

impl fmt::Display for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        if self.loops > 0 {
            write!(f, " +{}o", self.loops)?;
        }
        write!(f, "]")
    }
}

/// Which of two glued pieces a boundary point or circle belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Result of gluing two flat tangles along some of their boundary points.
#[derive(Clone, Debug)]
pub struct Glued {
    pub tangle: FlatTangle,
    /// New circle index of each circle of the left piece.
    pub left_map: Vec<usize>,
    /// New circle index of each circle of the right piece.
    pub right_map: Vec<usize>,
}

/// Glues `left` and `right` by identifying the point pairs in `pairs`.
/// `order` lists the surviving boundary points in the counterclockwise order
/// of the new disk. Planarity of the result is checked by [`FlatTangle::new`].
pub fn glue(left: &FlatTangle, right: &FlatTangle, pairs: &[(u32, u32)], order: &[(Side, u32)]) -> Result<Glued> {
    let nl = left.circle_count();
    let nr = right.circle_count();
    let mut uf = UnionFind::new(nl + nr);
    for &(p, q) in pairs {
        if p >= left.boundary || q >= right.boundary {
            return Err(Error::Tangle(format!("glue point {p}/{q} out of range")));
        }
        uf.union(left.arc_at(p), nl + right.arc_at(q));
    }
    if 2 * pairs.len() + order.len() != (left.boundary + right.boundary) as usize {
        return Err(Error::Tangle("glue does not account for every boundary point".into()));
    }
    let new_boundary = order.len() as u32;
    // endpoints of each class among surviving points
    let mut ends: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for (new_p, &(side, p)) in order.iter().enumerate() {
        let node = match side {
            Side::Left => left.arc_at(p),
            Side::Right => nl + right.arc_at(p),
        };
        ends.entry(uf.find(node)).or_default().push(new_p as u32);
    }
    let mut arcs = Vec::new();
    let mut class_arc_end: std::collections::BTreeMap<usize, u32> = Default::default();
    for (&class, pts) in &ends {
        if pts.len() != 2 {
            return Err(Error::Tangle("glued arc with wrong endpoint count".into()));
        }
        arcs.push((pts[0].min(pts[1]), pts[0].max(pts[1])));
        class_arc_end.insert(class, pts[0].min(pts[1]));
    }
    let tangle_arcs = arcs.clone();
    let mut sorted = tangle_arcs.clone();
    sorted.sort_unstable();
    // loops: classes with no surviving endpoint, ordered by smallest member
    let mut loop_classes: Vec<usize> = Vec::new();
    for node in 0..nl + nr {
        let c = uf.find(node);
        if !ends.contains_key(&c) && !loop_classes.contains(&c) {
            loop_classes.push(c);
        }
    }
    let tangle = FlatTangle::new(new_boundary, tangle_arcs, loop_classes.len() as u32)?;
    let circle_of_class = |c: usize| -> usize {
        if let Some(&end) = class_arc_end.get(&c) {
            sorted.iter().position(|&(a, _)| a == end).unwrap()
        } else {
            sorted.len() + loop_classes.iter().position(|&l| l == c).unwrap()
        }
    };
    let left_map = (0..nl).map(|i| circle_of_class(uf.find(i))).collect();
    let right_map = (0..nr).map(|i| circle_of_class(uf.find(nl + i))).collect();
    Ok(Glued { tangle, left_map, right_map })
}

/// Plain union-find with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so class representatives are deterministic
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_crossing_matching() {
        assert!(FlatTangle::new(4, vec![(0, 2), (1, 3)], 0).is_err());
        assert!(FlatTangle::new(4, vec![(0, 3), (1, 2)], 0).is_ok());
    }

    #[test]
    fn rejects_incomplete_matching() {
        assert!(FlatTangle::new(4, vec![(0, 1)], 0).is_err());
        assert!(FlatTangle::new(4, vec![(0, 1), (1, 2)], 0).is_err());
    }

    #[test]
    fn planar_matchings_are_catalan() {
        let counts: Vec<usize> = (0..5).map(|n| FlatTangle::planar_matchings(2 * n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14]);
        let six = FlatTangle::planar_matchings(6);
        let mut dedup = six.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), six.len());
    }

    #[test]
    fn circle_indexing() {
        let t = FlatTangle::new(4, vec![(2, 3), (0, 1)], 2).unwrap();
        assert_eq!(t.arcs(), &[(0, 1), (2, 3)]);
        assert_eq!(t.arc_at(3), 1);
        assert_eq!(t.circle_count(), 4);
        assert!(t.is_arc(1) && !t.is_arc(2));
    }

    #[test]
    fn glue_closes_to_loops() {
        // V smoothing closed by the V matching: two loops
        let v = FlatTangle::new(4, vec![(0, 3), (1, 2)], 0).unwrap();
        let closing = FlatTangle::new(4, vec![(0, 3), (1, 2)], 0).unwrap();
        let g = glue(&v, &closing, &[(0, 0), (1, 1), (2, 2), (3, 3)], &[]).unwrap();
        assert_eq!(g.tangle.loop_count(), 2);
        // H closed by V: one loop
        let h = FlatTangle::new(4, vec![(0, 1), (2, 3)], 0).unwrap();
        let g = glue(&h, &closing, &[(0, 0), (1, 1), (2, 2), (3, 3)], &[]).unwrap();
        assert_eq!(g.tangle.loop_count(), 1);
        assert_eq!(g.left_map, vec![0, 0]);
    }
}
