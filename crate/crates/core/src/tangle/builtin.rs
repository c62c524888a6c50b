//! The diagrams used by the verifier, built from braid words.
//!
//! Braid boundary convention: bottom points `0..n` left to right, top points
//! `n..2n` right to left, so the points run counterclockwise. Strands go up.
//! A crossing on positions `(i, i+1)` has slot 0 at bottom-left, 1 at
//! bottom-right, 2 at top-right, 3 at top-left.
//!
//! Reidemeister III pictures: the left side is `σ1(a) σ2(c) σ1(b)`, the
//! right side `σ2(a) σ1(c) σ2(b)`, bottom to top. Crossing `c` is always
//! listed first so that the complex is literally a cone along `c`.
//! A three-letter name lists the strands L, M, R (named by their bottom
//! position); a crossing between strands `i` (starting left) and `j` is
//! negative exactly when `i` comes before `j` in the name.

use super::diagram::{Crossing, CrossingKind, Edge, End, TangleDiagram};
use super::flat::FlatTangle;
use crate::error::{Error, Result};

use CrossingKind::{Neg, Pos, Sing};

/// One letter of a braid word: crossing on positions `(pos, pos+1)`.
#[derive(Clone, Debug)]
pub struct Letter {
    pub pos: u32,
    pub kind: CrossingKind,
    pub id: String,
}

pub fn letter(pos: u32, kind: CrossingKind, id: &str) -> Letter {
    Letter { pos, kind, id: id.to_string() }
}

/// Builds the diagram of a braid word, listing crossings in `order` (ids).
pub fn braid(strands: u32, word: &[Letter], order: &[&str]) -> Result<TangleDiagram> {
    let mut pending: Vec<End> = (0..strands).map(End::Boundary).collect();
    let mut edges: Vec<(End, End)> = Vec::new();
    for (k, l) in word.iter().enumerate() {
        let i = l.pos as usize;
        if i + 1 >= strands as usize {
            return Err(Error::Tangle(format!("letter at position {i} needs {} strands", i + 2)));
        }
        edges.push((pending[i], End::Slot(k, 0)));
        edges.push((pending[i + 1], End::Slot(k, 1)));
        pending[i] = End::Slot(k, 3);
        pending[i + 1] = End::Slot(k, 2);
    }
    for (i, &end) in pending.iter().enumerate() {
        edges.push((end, End::Boundary(2 * strands - 1 - i as u32)));
    }
    // crossing k of the word goes to position rank[k]
    let mut rank = vec![usize::MAX; word.len()];
    if order.len() != word.len() {
        return Err(Error::Tangle("crossing order must list every crossing".into()));
    }
    for (r, id) in order.iter().enumerate() {
        let k = word
            .iter()
            .position(|l| l.id == *id)
            .ok_or_else(|| Error::Tangle(format!("unknown crossing `{id}` in order")))?;
        rank[k] = r;
    }
    let remap = |e: End| match e {
        End::Slot(k, s) => End::Slot(rank[k], s),
        b => b,
    };
    let mut crossings: Vec<Crossing> = order
        .iter()
        .map(|id| {
            let l = word.iter().find(|l| l.id == *id).expect("checked");
            Crossing { id: l.id.clone(), kind: l.kind, slots: [usize::MAX; 4] }
        })
        .collect();
    let mut out_edges = Vec::new();
    for (ei, &(a, b)) in edges.iter().enumerate() {
        let ends = [remap(a), remap(b)];
        for end in ends {
            if let End::Slot(c, s) = end {
                crossings[c].slots[s] = ei;
            }
        }
        out_edges.push(Edge { label: format!("e{ei}"), ends });
    }
    let d = TangleDiagram::new(2 * strands, crossings, out_edges, 0)?;
    d.check_orientation(&braid_orientation(strands))?;
    Ok(d)
}

/// Boundary orientation of a braid: bottom points incoming.
pub fn braid_orientation(strands: u32) -> Vec<bool> {
    (0..2 * strands).map(|p| p < strands).collect()
}

/// The matching closing a braid into a link.
pub fn braid_closure(strands: u32) -> FlatTangle {
    FlatTangle::identity_braid(strands)
}

fn kind_for(name: &str, i: char, j: char) -> CrossingKind {
    let pi = name.find(i).expect("strand letter");
    let pj = name.find(j).expect("strand letter");
    if pi < pj {
        Neg
    } else {
        Pos
    }
}

/// Reidemeister III diagram. `right` picks the side; kinds are `(a, b, c)`.
pub fn r3(right: bool, a: CrossingKind, b: CrossingKind, c: CrossingKind) -> TangleDiagram {
    let word = if right {
        vec![letter(1, a, "a"), letter(0, c, "c"), letter(1, b, "b")]
    } else {
        vec![letter(0, a, "a"), letter(1, c, "c"), letter(0, b, "b")]
    };
    braid(3, &word, &["c", "a", "b"]).expect("valid braid")
}

/// Crossing kinds `(a, b, c)` of a named strand order.
pub fn r3_kinds(right: bool, name: &str) -> (CrossingKind, CrossingKind, CrossingKind) {
    let c = kind_for(name, 'L', 'R');
    if right {
        (kind_for(name, 'M', 'R'), kind_for(name, 'L', 'M'), c)
    } else {
        (kind_for(name, 'L', 'M'), kind_for(name, 'M', 'R'), c)
    }
}

fn r3_named(right: bool, name: &str) -> TangleDiagram {
    let (a, b, c) = r3_kinds(right, name);
    r3(right, a, b, c)
}

/// Closed one-crossing diagram: each outgoing slot feeds the incoming slot
/// on the same side.
pub fn kink(kind: CrossingKind) -> TangleDiagram {
    let crossings = vec![Crossing { id: "x".into(), kind, slots: [1, 0, 0, 1] }];
    let edges = vec![
        Edge { label: "right".into(), ends: [End::Slot(0, 2), End::Slot(0, 1)] },
        Edge { label: "left".into(), ends: [End::Slot(0, 3), End::Slot(0, 0)] },
    ];
    let d = TangleDiagram::new(0, crossings, edges, 0).expect("kink is planar");
    d.check_orientation(&[]).expect("kink is oriented");
    d
}

fn closed_braid(strands: u32, word: &[Letter]) -> TangleDiagram {
    let order: Vec<&str> = word.iter().map(|l| l.id.as_str()).collect();
    braid(strands, word, &order).and_then(|d| d.closure(&braid_closure(strands))).expect("valid closed braid")
}

const R3_LEFT: [&str; 5] = ["MLR", "MRL", "LRM", "RLM", "LMR"];
const R3_RIGHT: [&str; 5] = ["MLR", "MRL", "LRM", "RLM", "RML"];

/// Names of all builtin diagrams in catalog order.
pub fn names() -> Vec<String> {
    let mut v: Vec<String> = ["pos_x", "neg_x", "sing_x"].iter().map(|s| s.to_string()).collect();
    v.extend(R3_LEFT.iter().map(|n| format!("r3_left_{n}")));
    v.extend(R3_RIGHT.iter().map(|n| format!("r3_right_{n}")));
    v.push("delta_left".into());
    v.push("delta_right".into());
    for n in ["LNN", "OL", "OR", "UL", "UR", "RPP"] {
        v.push(format!("sing_4T_{n}"));
    }
    for n in ["LND", "RDP", "LDN", "RPD"] {
        v.push(format!("fourT_{n}"));
    }
    for n in ["pos", "neg", "sing"] {
        v.push(format!("kink_{n}"));
    }
    for n in ["r2_pn", "r2_np", "r5_up", "r5_down", "unknot", "trefoil_left", "hopf"] {
        v.push(n.into());
    }
    v
}

/// Boundary orientation (`true` = incoming) of a builtin.
pub fn orientation(name: &str) -> Result<Vec<bool>> {
    let d = builtin(name)?;
    Ok(braid_orientation(d.boundary() / 2))
}

pub fn builtin(name: &str) -> Result<TangleDiagram> {
    let x = |k| braid(2, &[letter(0, k, "x")], &["x"]).expect("valid braid");
    let d = match name {
        "pos_x" => x(Pos),
        "neg_x" => x(Neg),
        "sing_x" => x(Sing),
        "delta_left" => r3(false, Neg, Neg, Pos),
        "delta_right" => r3(true, Pos, Pos, Neg),
        "sing_4T_LNN" => r3(false, Neg, Neg, Sing),
        "sing_4T_OL" => r3(false, Pos, Neg, Sing),
        "sing_4T_OR" => r3(true, Neg, Pos, Sing),
        "sing_4T_UL" => r3(false, Neg, Pos, Sing),
        "sing_4T_UR" => r3(true, Pos, Neg, Sing),
        "sing_4T_RPP" => r3(true, Pos, Pos, Sing),
        "fourT_LND" => r3(false, Neg, Sing, Sing),
        "fourT_RDP" => r3(true, Sing, Pos, Sing),
        "fourT_LDN" => r3(false, Sing, Neg, Sing),
        "fourT_RPD" => r3(true, Pos, Sing, Sing),
        "kink_pos" => kink(Pos),
        "kink_neg" => kink(Neg),
        "kink_sing" => kink(Sing),
        "r2_pn" => braid(2, &[letter(0, Pos, "a"), letter(0, Neg, "b")], &["a", "b"])?,
        "r2_np" => braid(2, &[letter(0, Neg, "a"), letter(0, Pos, "b")], &["a", "b"])?,
        "r5_up" => closed_braid(3, &[letter(0, Sing, "s"), letter(0, Pos, "x"), letter(1, Pos, "y")]),
        "r5_down" => closed_braid(3, &[letter(0, Pos, "x"), letter(0, Sing, "s"), letter(1, Pos, "y")]),
        "unknot" => TangleDiagram::new(0, Vec::new(), Vec::new(), 1)?,
        "trefoil_left" => closed_braid(2, &[letter(0, Neg, "a"), letter(0, Neg, "b"), letter(0, Neg, "c")]),
        "hopf" => closed_braid(2, &[letter(0, Pos, "a"), letter(0, Pos, "b")]),
        _ => {
            if let Some(n) = name.strip_prefix("r3_left_") {
                if R3_LEFT.contains(&n) {
                    return Ok(r3_named(false, n));
                }
            }
            if let Some(n) = name.strip_prefix("r3_right_") {
                if R3_RIGHT.contains(&n) {
                    return Ok(r3_named(true, n));
                }
            }
            return Err(Error::UnknownBuiltin(name.to_string()));
        }
    };
    Ok(d)
}
