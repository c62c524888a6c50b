//! The Khovanov bracket of a (singular) tangle diagram.

use std::collections::BTreeMap;

use super::{Complex, Mat, Obj};
use crate::cobordism::{Cobordism, Cycles, PreComponent, PreSurface};
use crate::error::Result;
use crate::tangle::{CrossingKind, Resolution, State, TangleDiagram, UnionFind};

fn loop_tags(d: &TangleDiagram, r: &Resolution) -> Vec<String> {
    let arcs = r.tangle.arc_count();
    let n_loops = r.tangle.loop_count() as usize;
    let diagram_loops = n_loops - d.free_loops() as usize;
    let mut tags: Vec<Option<String>> = vec![None; diagram_loops];
    for (e, &c) in r.edge_circle.iter().enumerate() {
        if c >= arcs {
            for atom in d.edges()[e].label.split('+') {
                let slot = &mut tags[c - arcs];
                if slot.as_deref().is_none_or(|t| atom < t) {
                    *slot = Some(atom.to_string());
                }
            }
        }
    }
    let mut out: Vec<String> = tags.into_iter().map(|t| t.expect("every loop has an edge")).collect();
    out.extend((0..d.free_loops()).map(|k| format!("free{k}")));
    out
}

/// The surface between two resolutions of diagrams with the same edges:
/// a product away from the crossings listed in `saddles`, where a saddle
/// joins the four incident edges.
pub fn state_surface(d: &TangleDiagram, from: &Resolution, to: &Resolution, saddles: &[usize]) -> Cobordism {
    let (s, t) = (&from.tangle, &to.tangle);
    let (ns, nt) = (s.circle_count(), t.circle_count());
    let mut uf = UnionFind::new(ns + nt);
    for (&a, &b) in from.edge_circle.iter().zip(&to.edge_circle) {
        uf.union(a, ns + b);
    }
    for &k in saddles {
        let slots = d.crossings()[k].slots;
        for j in 1..4 {
            uf.union(from.edge_circle[slots[0]], from.edge_circle[slots[j]]);
        }
    }
    let free = d.free_loops() as usize;
    for i in 0..free {
        uf.union(ns - free + i, ns + nt - free + i);
    }
    let cycles = Cycles::new(s, t);
    let mut classes: BTreeMap<usize, (Vec<usize>, i32)> = BTreeMap::new();
    for c in 0..ns + nt {
        let entry = classes.entry(uf.find(c)).or_default();
        entry.0.push(c);
        if c < ns && s.is_arc(c) {
            entry.1 += 1;
        }
    }
    for &k in saddles {
        let root = uf.find(from.edge_circle[d.crossings()[k].slots[0]]);
        classes.get_mut(&root).expect("saddle class").1 -= 1;
    }
    let comps = classes
        .into_values()
        .map(|(circles, chi)| {
            let mut cyc: Vec<usize> = circles.iter().map(|&c| cycles.cycle_of[c]).collect();
            cyc.sort_unstable();
            cyc.dedup();
            let twice_genus = 2 - cyc.len() as i32 - chi;
            assert!(twice_genus >= 0 && twice_genus % 2 == 0, "inconsistent state surface");
            PreComponent::new(circles, (twice_genus / 2) as u32, 0)
        })
        .collect();
    PreSurface::new(s.clone(), t.clone(), 1, comps).normalize().expect("state surface is well formed")
}

/// `Φ` at crossing `k` of a resolution where `k` is smoothed vertically:
/// a dot on the strand through slot 0 minus a dot on the strand through slot 1.
pub fn phi_on_state(d: &TangleDiagram, r: &Resolution, k: usize) -> Cobordism {
    let id = Cobordism::identity(&r.tangle);
    let slots = d.crossings()[k].slots;
    let left = id.dot(r.edge_circle[slots[0]]).expect("circle exists");
    let right = id.dot(r.edge_circle[slots[1]]).expect("circle exists");
    left.sub(&right)
}

/// The local differential of crossing `k` between two states differing
/// there by one, without the Koszul sign.
pub fn transition(d: &TangleDiagram, k: usize, from_index: i32, from: &Resolution, to: &Resolution) -> Cobordism {
    let kind = d.crossings()[k].kind;
    let (a, b) = (kind.smoothing(from_index), kind.smoothing(from_index + 1));
    if a == b {
        return phi_on_state(d, from, k);
    }
    let saddle = state_surface(d, from, to, &[k]);
    match (kind, from_index) {
        (CrossingKind::Neg, _) => saddle,
        _ => saddle.neg(),
    }
}

/// The summand of one state, labelled by crossing indices.
pub fn state_obj(d: &TangleDiagram, s: &State) -> Result<(Obj, Resolution)> {
    let r = d.resolve(s)?;
    let label = d.crossings().iter().zip(&s.0).map(|(x, &i)| (x.id.clone(), i)).collect();
    let obj = Obj { tangle: r.tangle.clone(), q: d.q_shift(s), label, loop_tags: loop_tags(d, &r) };
    Ok((obj, r))
}

/// Cube of resolutions with Koszul signs in the diagram's crossing order.
pub fn kh_complex(d: &TangleDiagram) -> Complex {
    let states = d.states();
    let mut c = Complex::new(d.boundary());
    let mut where_: BTreeMap<Vec<i32>, (i32, usize, Resolution)> = BTreeMap::new();
    for s in &states {
        let (obj, r) = state_obj(d, s).expect("own state");
        let n = s.degree();
        let pos = c.push(n, obj);
        where_.insert(s.0.clone(), (n, pos, r));
    }
    let mut diffs: BTreeMap<i32, Mat> = BTreeMap::new();
    for s in &states {
        let (n, col, from) = &where_[&s.0];
        let mut koszul = 0;
        for (k, x) in d.crossings().iter().enumerate() {
            let i = s.0[k];
            if x.kind.local_range().contains(&(i + 1)) {
                let mut t = s.0.clone();
                t[k] += 1;
                let (_, row, to) = &where_[&t];
                let mut m = transition(d, k, i, from, to);
                if koszul % 2 != 0 {
                    m = m.neg();
                }
                diffs.entry(*n).or_insert_with(|| Mat::zeros(c.rank(n + 1), c.rank(*n))).add_at(*row, *col, m);
            }
            koszul += i;
        }
    }
    for (n, m) in diffs {
        c.set_diff(n, m);
    }
    c
}
