//! Gluing plans: which disks of two generators fuse into which surface
//! components, computed once per pair of boundary configurations.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{Cobordism, Cycles};
use crate::error::{Error, Result};
use crate::tangle::{glue, FlatTangle, Side, UnionFind};

struct Class {
    fmask: u64,
    gmask: u64,
    genus: u32,
    out: Vec<usize>,
}

pub(super) struct Classes {
    list: Vec<Class>,
}

impl Classes {
    /// `joins` are (f-cycle, g-cycle, euler cost); `out_nodes[k]` is a node
    /// (f-cycle, or `nf + g-cycle`) lying on output cycle `k`.
    fn build(nf: usize, ng: usize, joins: &[(usize, usize, i32)], out_nodes: &[usize]) -> Classes {
        let mut uf = UnionFind::new(nf + ng);
        for &(a, b, _) in joins {
            uf.union(a, nf + b);
        }
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut list: Vec<(Class, i32)> = Vec::new();
        for node in 0..nf + ng {
            let r = uf.find(node);
            let k = *index.entry(r).or_insert_with(|| {
                list.push((Class { fmask: 0, gmask: 0, genus: 0, out: Vec::new() }, 0));
                list.len() - 1
            });
            let (class, chi) = &mut list[k];
            *chi += 1;
            if node < nf {
                class.fmask |= 1 << node;
            } else {
                class.gmask |= 1 << (node - nf);
            }
        }
        for &(a, _, cost) in joins {
            let k = index[&uf.find(a)];
            list[k].1 -= cost;
        }
        for (cyc, &node) in out_nodes.iter().enumerate() {
            let k = index[&uf.find(node)];
            list[k].0.out.push(cyc);
        }
        let list = list
            .into_iter()
            .map(|(mut class, chi)| {
                let twice_genus = 2 - class.out.len() as i32 - chi;
                assert!(twice_genus >= 0 && twice_genus % 2 == 0, "bad euler characteristic");
                class.genus = (twice_genus / 2) as u32;
                class
            })
            .collect();
        Classes { list }
    }

    pub(super) fn apply(&self, f: &BTreeMap<u64, i64>, g: &BTreeMap<u64, i64>, sink: &mut dyn FnMut(u64, i64)) {
        let mut partial: Vec<(u64, i64)> = Vec::new();
        let mut next: Vec<(u64, i64)> = Vec::new();
        for (&fm, &fc) in f {
            for (&gm, &gc) in g {
                partial.clear();
                partial.push((0, fc * gc));
                for class in &self.list {
                    let e = (fm & class.fmask).count_ones() + (gm & class.gmask).count_ones() + class.genus;
                    if e >= 2 {
                        partial.clear();
                        break;
                    }
                    let factor = 1i64 << class.genus;
                    let out_mask: u64 = class.out.iter().fold(0, |m, &c| m | 1 << c);
                    match (class.out.is_empty(), e) {
                        (true, 0) => {
                            partial.clear();
                            break;
                        }
                        (true, _) => partial.iter_mut().for_each(|t| t.1 *= factor),
                        (false, 1) => partial.iter_mut().for_each(|t| {
                            t.0 |= out_mask;
                            t.1 *= factor;
                        }),
                        (false, _) => {
                            // undotted genus-0 piece: sum over the one undotted disk
                            next.clear();
                            for &(m, k) in &partial {
                                for &c in &class.out {
                                    next.push((m | (out_mask & !(1 << c)), k));
                                }
                            }
                            std::mem::swap(&mut partial, &mut next);
                        }
                    }
                }
                for &(m, k) in &partial {
                    sink(m, k);
                }
            }
        }
    }
}

type Key = (FlatTangle, FlatTangle, FlatTangle);

thread_local! {
    static COMPOSE_CACHE: RefCell<HashMap<Key, Rc<Classes>>> = RefCell::new(HashMap::new());
}

/// Plan for composing `f: a -> b` with `g: b -> c`.
pub(super) fn compose_plan(a: &FlatTangle, b: &FlatTangle, c: &FlatTangle) -> Rc<Classes> {
    let key = (a.clone(), b.clone(), c.clone());
    if let Some(p) = COMPOSE_CACHE.with(|m| m.borrow().get(&key).cloned()) {
        return p;
    }
    let cf = Cycles::new(a, b);
    let cg = Cycles::new(b, c);
    let (na, nb) = (a.circle_count(), b.circle_count());
    let joins: Vec<(usize, usize, i32)> =
        (0..nb).map(|j| (cf.cycle_of[na + j], cg.cycle_of[j], i32::from(b.is_arc(j)))).collect();
    let out = Cycles::new(a, c);
    let out_nodes: Vec<usize> = out
        .members
        .iter()
        .map(|mem| {
            let x = mem[0];
            if x < na {
                cf.cycle_of[x]
            } else {
                cf.len() + cg.cycle_of[nb + (x - na)]
            }
        })
        .collect();
    let plan = Rc::new(Classes::build(cf.len(), cg.len(), &joins, &out_nodes));
    COMPOSE_CACHE.with(|m| m.borrow_mut().insert(key, plan.clone()));
    plan
}

pub(super) struct GluePlan {
    pub source: FlatTangle,
    pub target: FlatTangle,
    pub classes: Classes,
}

pub(super) fn glue_plan(f: &Cobordism, g: &Cobordism, pairs: &[(u32, u32)], order: &[(Side, u32)]) -> Result<GluePlan> {
    let gs = glue(f.source(), g.source(), pairs, order)?;
    let gt = glue(f.target(), g.target(), pairs, order)?;
    let cf = f.cycles();
    let cg = g.cycles();
    let joins: Vec<(usize, usize, i32)> =
        pairs.iter().map(|&(p, q)| (cf.cycle_of[f.source().arc_at(p)], cg.cycle_of[g.source().arc_at(q)], 1)).collect();
    let out = Cycles::new(&gs.tangle, &gt.tangle);
    let ns = gs.tangle.circle_count();
    let (fs, gsn) = (f.source().circle_count(), g.source().circle_count());
    let node_of = |x: usize| -> Result<usize> {
        let (lm, rm, x, lo, ro) = if x < ns {
            (&gs.left_map, &gs.right_map, x, 0, 0)
        } else {
            (&gt.left_map, &gt.right_map, x - ns, fs, gsn)
        };
        if let Some(i) = lm.iter().position(|&y| y == x) {
            return Ok(cf.cycle_of[lo + i]);
        }
        if let Some(j) = rm.iter().position(|&y| y == x) {
            return Ok(cf.len() + cg.cycle_of[ro + j]);
        }
        Err(Error::Boundary("glued circle without a preimage".into()))
    };
    let out_nodes = out.members.iter().map(|mem| node_of(mem[0])).collect::<Result<Vec<_>>>()?;
    let classes = Classes::build(cf.len(), cg.len(), &joins, &out_nodes);
    Ok(GluePlan { source: gs.tangle, target: gt.tangle, classes })
}
