//! An independent state-sum Khovanov complex for closed, nonsingular
//! diagrams: loops by union-find over edges, merge/split on V⊗k, ranks over
//! F_p and F_2 by plain elimination. Compared against the cobordism
//! pipeline.

use std::collections::BTreeMap;

use cobkh::tangle::{CrossingKind, TangleDiagram};
use cobkh::tqft::{kh_link, Coefficients, HomologyTable};

const P: u64 = 2_147_483_647;

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Loop index of every edge in the resolution with the given 0/1 choices
/// (0 is the oriented smoothing for positive crossings and the other one
/// for negative ones), plus the number of loops.
fn loops(d: &TangleDiagram, bits: u32) -> (Vec<usize>, usize) {
    let n = d.edges().len();
    let mut p: Vec<usize> = (0..n).collect();
    for (i, x) in d.crossings().iter().enumerate() {
        let one = bits >> i & 1 == 1;
        let oriented = match x.kind {
            CrossingKind::Pos => !one,
            CrossingKind::Neg => one,
            CrossingKind::Sing => panic!("oracle handles nonsingular diagrams"),
        };
        let pairs = if oriented { [(0, 3), (1, 2)] } else { [(0, 1), (2, 3)] };
        for (a, b) in pairs {
            let (ra, rb) = (find(&mut p, x.slots[a]), find(&mut p, x.slots[b]));
            p[ra] = rb;
        }
    }
    let mut ids = BTreeMap::new();
    let of: Vec<usize> = (0..n)
        .map(|e| {
            let r = find(&mut p, e);
            let k = ids.len();
            *ids.entry(r).or_insert(k)
        })
        .collect();
    (of, ids.len() + d.free_loops() as usize)
}

/// Generators `(state, labels)`; bit `j` of `labels` set means loop `j`
/// carries `X`.
struct Cube {
    gens: BTreeMap<(i32, i32), Vec<(u32, u32)>>,
    diff: Vec<((i32, i32), (u32, u32), (u32, u32), i64)>,
}

fn apply_edge(d: &TangleDiagram, s: u32, i: usize, labels: u32) -> Vec<(u32, u32)> {
    let t = s | 1 << i;
    let (ls, ns) = loops(d, s);
    let (lt, nt) = loops(d, t);
    let x = &d.crossings()[i];
    let mut touched: Vec<usize> = x.slots.iter().map(|&e| ls[e]).collect();
    touched.sort_unstable();
    touched.dedup();
    let a = touched[0];
    // map each source loop to its target loop through any edge on it
    let image = |j: usize| lt[(0..d.edges().len()).find(|&e| ls[e] == j).expect("loop has an edge")];
    let label = |l: u32, j: usize| l >> j & 1;
    if nt + 1 == ns {
        let b = touched[1];
        let (la, lb) = (label(labels, a), label(labels, b));
        if la + lb == 2 {
            return Vec::new();
        }
        let mut out = 0;
        for j in 0..ns {
            if j != a && j != b && label(labels, j) == 1 {
                out |= 1 << image(j);
            }
        }
        if la + lb == 1 {
            out |= 1 << image(a);
        }
        vec![(t, out)]
    } else {
        let targets: Vec<usize> = x.slots.iter().map(|&e| lt[e]).collect();
        let (p, q) = (targets[0], *targets.iter().find(|&&k| k != targets[0]).expect("split"));
        let mut base = 0;
        for j in 0..ns {
            if j != a && label(labels, j) == 1 {
                base |= 1 << image(j);
            }
        }
        if label(labels, a) == 1 {
            vec![(t, base | 1 << p | 1 << q)]
        } else {
            vec![(t, base | 1 << p), (t, base | 1 << q)]
        }
    }
}

fn cube(d: &TangleDiagram) -> Cube {
    let n = d.crossings().len();
    let n_minus = d.crossings().iter().filter(|x| x.kind == CrossingKind::Neg).count() as i32;
    let n_plus = n as i32 - n_minus;
    let mut gens: BTreeMap<(i32, i32), Vec<(u32, u32)>> = BTreeMap::new();
    let grade = |s: u32, labels: u32, k: usize| {
        let r = s.count_ones() as i32;
        let v = k as i32 - 2 * labels.count_ones() as i32;
        (r - n_minus, v + r + n_plus - 2 * n_minus)
    };
    let mut diff = Vec::new();
    for s in 0..1u32 << n {
        let (_, k) = loops(d, s);
        for labels in 0..1u32 << k {
            let g = grade(s, labels, k);
            gens.entry(g).or_default().push((s, labels));
            for i in 0..n {
                if s >> i & 1 == 1 {
                    continue;
                }
                let sign = if (s & ((1 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                for t in apply_edge(d, s, i, labels) {
                    diff.push((g, (s, labels), t, sign));
                }
            }
        }
    }
    Cube { gens, diff }
}

fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(r, piv);
        let inv = pow(rows[r][c], p - 2, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c] * inv % p;
                for j in c..cols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `(h, q) -> (rank over F_P, rank over F_2)` of homology.
pub fn oracle(d: &TangleDiagram) -> BTreeMap<(i32, i32), (usize, usize)> {
    let c = cube(d);
    let index = |g: &(i32, i32), x: &(u32, u32)| c.gens[g].iter().position(|y| y == x).expect("generator");
    let mut out = BTreeMap::new();
    for p in [P, 2] {
        let mut ranks: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        for (g, v) in &c.gens {
            let tgt = (g.0 + 1, g.1);
            let rows = c.gens.get(&tgt).map_or(0, |t| t.len());
            let mut m = vec![vec![0u64; v.len()]; rows];
            for (src_g, x, y, sign) in &c.diff {
                if src_g == g {
                    let (r, col) = (index(&tgt, y), index(g, x));
                    m[r][col] = (m[r][col] + if *sign > 0 { 1 } else { p - 1 }) % p;
                }
            }
            ranks.insert(*g, rank(m, p));
        }
        for (g, v) in &c.gens {
            let inc = ranks.get(&(g.0 - 1, g.1)).copied().unwrap_or(0);
            let h = v.len() - ranks[g] - inc;
            let e = out.entry(*g).or_insert((0, 0));
            if p == 2 {
                e.1 = h;
            } else {
                e.0 = h;
            }
        }
    }
    out.retain(|_, v| *v != (0, 0));
    out
}

fn even_torsion(t: &HomologyTable, h: i32, q: i32) -> usize {
    t.get(h, q).torsion.iter().filter(|&&x| x % 2 == 0).count()
}

/// Homology over Z from the cobordism pipeline, or the first bidegree where
/// it disagrees with the oracle.
pub fn against_oracle(name: &str, d: &TangleDiagram) -> Result<HomologyTable, String> {
    let z = kh_link(d, Coefficients::Z, true).map_err(|e| e.to_string())?;
    let f2 = kh_link(d, Coefficients::F2, false).map_err(|e| e.to_string())?;
    let o = oracle(d);
    let mut keys: Vec<(i32, i32)> = o.keys().copied().collect();
    keys.extend(z.groups.keys());
    keys.extend(f2.groups.keys());
    for (h, q) in keys {
        let (rq, r2) = o.get(&(h, q)).copied().unwrap_or((0, 0));
        if z.get(h, q).free != rq {
            return Err(format!("{name} free rank at ({h},{q}): {} vs oracle {rq}", z.get(h, q).free));
        }
        if f2.get(h, q).free != r2 {
            return Err(format!("{name} F2 rank at ({h},{q}): {} vs oracle {r2}", f2.get(h, q).free));
        }
        let uct = z.get(h, q).free + even_torsion(&z, h, q) + even_torsion(&z, h + 1, q);
        if uct != r2 {
            return Err(format!("{name} universal coefficients fail at ({h},{q})"));
        }
    }
    Ok(z)
}
