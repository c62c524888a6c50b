use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::flat::{FlatTangle, UnionFind};
use crate::error::{Error, Result};

/// Crossing kinds. Slots are listed counterclockwise starting at the incoming
/// bottom-left end: slots 0 and 1 are incoming, 2 and 3 outgoing, and the
/// strands run 0 -> 2 and 1 -> 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    Pos,
    Neg,
    Sing,
}

/// The two planar smoothings of a crossing. `V` is the oriented one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Smoothing {
    V,
    H,
}

impl Smoothing {
    /// Slot pairs joined by the smoothing.
    pub fn slot_pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::V => [(0, 3), (1, 2)],
            Smoothing::H => [(0, 1), (2, 3)],
        }
    }
}

impl CrossingKind {
    /// Local homological indices of the crossing's complex.
    pub fn local_range(self) -> std::ops::RangeInclusive<i32> {
        match self {
            CrossingKind::Neg => -1..=0,
            CrossingKind::Pos => 0..=1,
            CrossingKind::Sing => -2..=1,
        }
    }

    pub fn smoothing(self, index: i32) -> Smoothing {
        match (self, index) {
            (CrossingKind::Neg, -1) | (CrossingKind::Pos, 1) => Smoothing::H,
            (CrossingKind::Neg, 0) | (CrossingKind::Pos, 0) => Smoothing::V,
            (CrossingKind::Sing, -2) | (CrossingKind::Sing, 1) => Smoothing::H,
            (CrossingKind::Sing, -1) | (CrossingKind::Sing, 0) => Smoothing::V,
            _ => panic!("local index {index} out of range for {self:?}"),
        }
    }

    /// Quantum shift of the object at a local index.
    pub fn q_shift(self, index: i32) -> i32 {
        match (self, self.smoothing(index)) {
            (CrossingKind::Neg, Smoothing::H) => -2,
            (CrossingKind::Neg, Smoothing::V) => -1,
            (CrossingKind::Pos, Smoothing::V) => 1,
            (CrossingKind::Pos, Smoothing::H) => 2,
            (CrossingKind::Sing, _) => match index {
                -2 => -2,
                -1 => -1,
                0 => 1,
                _ => 2,
            },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CrossingKind::Pos => "pos",
            CrossingKind::Neg => "neg",
            CrossingKind::Sing => "sing",
        }
    }
}

/// One end of an edge: a boundary point or a crossing slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum End {
    Boundary(u32),
    Slot(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub id: String,
    pub kind: CrossingKind,
    /// Edge index at each slot.
    pub slots: [usize; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub label: String,
    pub ends: [End; 2],
}

/// A (singular) tangle diagram: a 4-valent planar graph in a disk whose
/// vertices are crossings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangleDiagram {
    boundary: u32,
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    free_loops: u32,
}

/// A Kauffman state: the local homological index chosen at each crossing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct State(pub Vec<i32>);

impl State {
    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A resolved state: its flat tangle and where every diagram edge went.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub tangle: FlatTangle,
    pub edge_circle: Vec<usize>,
}

/// One entry of [`TangleDiagram::enumerate_states`].
#[derive(Clone, Debug)]
pub struct StateEntry {
    pub state: State,
    pub tangle: FlatTangle,
    pub degree: i32,
    pub q_shift: i32,
}

impl TangleDiagram {
    /// Builds and validates a diagram. Orientation is not checked here; see
    /// [`TangleDiagram::check_orientation`].
    pub fn new(boundary: u32, crossings: Vec<Crossing>, edges: Vec<Edge>, free_loops: u32) -> Result<Self> {
        let d = TangleDiagram { boundary, crossings, edges, free_loops };
        d.check_incidence()?;
        d.check_planarity()?;
        Ok(d)
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn crossing_index(&self, id: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn kinds(&self) -> Vec<CrossingKind> {
        self.crossings.iter().map(|c| c.kind).collect()
    }

    /// Same diagram with crossing `id` given a different kind.
    pub fn with_kind(&self, id: &str, kind: CrossingKind) -> Result<Self> {
        let i = self.crossing_index(id).ok_or_else(|| Error::StateMismatch(format!("no crossing `{id}`")))?;
        let mut d = self.clone();
        d.crossings[i].kind = kind;
        Ok(d)
    }

    fn check_incidence(&self) -> Result<()> {
        let mut slot_used = vec![[false; 4]; self.crossings.len()];
        let mut point_used = vec![false; self.boundary as usize];
        for (ei, e) in self.edges.iter().enumerate() {
            for end in e.ends {
                match end {
                    End::Boundary(p) => {
                        let u = point_used.get_mut(p as usize).ok_or_else(|| Error::Parse {
                            location: format!("edge `{}`", e.label),
                            message: format!("boundary point {p} out of range"),
                        })?;
                        if std::mem::replace(u, true) {
                            return Err(Error::Parse {
                                location: format!("boundary point {p}"),
                                message: "used twice".into(),
                            });
                        }
                    }
                    End::Slot(c, s) => {
                        let cr = self.crossings.get(c).ok_or_else(|| Error::Parse {
                            location: format!("edge `{}`", e.label),
                            message: format!("crossing {c} out of range"),
                        })?;
                        if cr.slots[s] != ei {
                            return Err(Error::Parse {
                                location: format!("crossing `{}` slot {s}", cr.id),
                                message: "edge table disagrees with slot table".into(),
                            });
                        }
                        if std::mem::replace(&mut slot_used[c][s], true) {
                            return Err(Error::Parse {
                                location: format!("crossing `{}` slot {s}", cr.id),
                                message: "slot used twice".into(),
                            });
                        }
                    }
                }
            }
        }
        for (c, used) in slot_used.iter().enumerate() {
            if let Some(s) = used.iter().position(|u| !u) {
                return Err(Error::Parse {
                    location: format!("crossing `{}` slot {s}", self.crossings[c].id),
                    message: "slot not attached to any edge".into(),
                });
            }
        }
        if let Some(p) = point_used.iter().position(|u| !u) {
            return Err(Error::Parse { location: format!("boundary point {p}"), message: "no edge attached".into() });
        }
        Ok(())
    }

    /// Rotation-system check: with the boundary collapsed to one extra
    /// vertex, every connected component must embed in the sphere.
    fn check_planarity(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Ok(());
        }
        let outer = self.crossings.len();
        let has_outer = self.boundary > 0;
        let n_vertices = self.crossings.len() + usize::from(has_outer);
        // darts: 2*e + k is edge e leaving from ends[k]
        let vertex_of = |end: End| match end {
            End::Boundary(_) => outer,
            End::Slot(c, _) => c,
        };
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        let mut dart_at_end: BTreeMap<End, usize> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for k in 0..2 {
                dart_at_end.insert(e.ends[k], 2 * ei + k);
            }
        }
        for (ci, c) in self.crossings.iter().enumerate() {
            let _ = c;
            rotation[ci] = (0..4).map(|s| dart_at_end[&End::Slot(ci, s)]).collect();
        }
        if has_outer {
            // seen from the outside the boundary order is reversed
            rotation[outer] = (0..self.boundary).rev().map(|p| dart_at_end[&End::Boundary(p)]).collect();
        }
        let mut pos_in_rotation = vec![(0usize, 0usize); 2 * self.edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                pos_in_rotation[d] = (v, i);
            }
        }
        let n_darts = 2 * self.edges.len();
        let mut seen = vec![false; n_darts];
        let mut faces = 0;
        for start in 0..n_darts {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let rev = d ^ 1;
                let (v, i) = pos_in_rotation[rev];
                let rot = &rotation[v];
                d = rot[(i + 1) % rot.len()];
            }
        }
        let mut uf = UnionFind::new(n_vertices);
        for e in &self.edges {
            uf.union(vertex_of(e.ends[0]), vertex_of(e.ends[1]));
        }
        let components = (0..n_vertices).filter(|&v| uf.find(v) == v).count() as i64;
        let euler = n_vertices as i64 - self.edges.len() as i64 + faces as i64;
        if euler != 2 * components {
            return Err(Error::Planarity(format!(
                "V - E + F = {euler} but {components} component(s) need {}",
                2 * components
            )));
        }
        Ok(())
    }

    /// Checks that every edge runs from an outgoing end (slot 2/3 or an
    /// incoming boundary point) to an incoming end. `incoming[p]` tells
    /// whether the strand enters the disk at boundary point `p`.
    pub fn check_orientation(&self, incoming: &[bool]) -> Result<()> {
        if incoming.len() != self.boundary as usize {
            return Err(Error::Orientation(format!(
                "{} orientation entries for {} boundary points",
                incoming.len(),
                self.boundary
            )));
        }
        let is_tail = |end: End| match end {
            End::Boundary(p) => incoming[p as usize],
            End::Slot(_, s) => s >= 2,
        };
        for e in &self.edges {
            if is_tail(e.ends[0]) == is_tail(e.ends[1]) {
                return Err(Error::Orientation(format!(
                    "edge `{}` has two {} ends",
                    e.label,
                    if is_tail(e.ends[0]) { "outgoing" } else { "incoming" }
                )));
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.crossings.iter().map(|c| c.kind.local_range().count()).product()
    }

    /// Resolves every crossing according to `state`.
    pub fn resolve(&self, state: &State) -> Result<Resolution> {
        if state.0.len() != self.crossings.len() {
            return Err(Error::StateMismatch(format!(
                "state has {} entries, diagram has {} crossings",
                state.0.len(),
                self.crossings.len()
            )));
        }
        for (c, &i) in self.crossings.iter().zip(&state.0) {
            if !c.kind.local_range().contains(&i) {
                return Err(Error::StateMismatch(format!(
                    "index {i} invalid at {} crossing `{}`",
                    c.kind.name(),
                    c.id
                )));
            }
        }
        let smoothings: Vec<Smoothing> =
            self.crossings.iter().zip(&state.0).map(|(c, &i)| c.kind.smoothing(i)).collect();
        Ok(self.resolve_smoothings(&smoothings))
    }

    pub fn resolve_smoothings(&self, smoothings: &[Smoothing]) -> Resolution {
        let ne = self.edges.len();
        let mut uf = UnionFind::new(ne);
        for (c, sm) in self.crossings.iter().zip(smoothings) {
            for (a, b) in sm.slot_pairs() {
                uf.union(c.slots[a], c.slots[b]);
            }
        }
        let mut ends: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for e in &self.edges {
            let _ = e;
        }
        for (ei, e) in self.edges.iter().enumerate() {
            for end in e.ends {
                if let End::Boundary(p) = end {
                    ends.entry(uf.find(ei)).or_default().push(p);
                }
            }
        }
        let mut arcs: Vec<(u32, u32, usize)> = ends
            .iter()
            .map(|(&class, pts)| {
                debug_assert_eq!(pts.len(), 2);
                (pts[0].min(pts[1]), pts[0].max(pts[1]), class)
            })
            .collect();
        arcs.sort_unstable();
        let mut loop_classes = Vec::new();
        for ei in 0..ne {
            let c = uf.find(ei);
            if !ends.contains_key(&c) && !loop_classes.contains(&c) {
                loop_classes.push(c);
            }
        }
        let tangle = FlatTangle::new(
            self.boundary,
            arcs.iter().map(|&(a, b, _)| (a, b)).collect(),
            (loop_classes.len() as u32) + self.free_loops,
        )
        .expect("resolution of a planar diagram is planar");
        let edge_circle = (0..ne)
            .map(|ei| {
                let c = uf.find(ei);
                arcs.iter()
                    .position(|&(_, _, k)| k == c)
                    .unwrap_or_else(|| arcs.len() + loop_classes.iter().position(|&l| l == c).unwrap())
            })
            .collect();
        Resolution { tangle, edge_circle }
    }

    /// All states in lexicographic order of local indices.
    pub fn states(&self) -> Vec<State> {
        let mut out = vec![State(Vec::new())];
        for c in &self.crossings {
            let mut next = Vec::with_capacity(out.len() * 4);
            for s in &out {
                for i in c.kind.local_range() {
                    let mut v = s.0.clone();
                    v.push(i);
                    next.push(State(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn q_shift(&self, state: &State) -> i32 {
        self.crossings.iter().zip(&state.0).map(|(c, &i)| c.kind.q_shift(i)).sum()
    }

    pub fn enumerate_states(&self) -> Vec<StateEntry> {
        self.states()
            .into_iter()
            .map(|state| {
                let tangle = self.resolve(&state).expect("own state").tangle;
                let degree = state.degree();
                let q_shift = self.q_shift(&state);
                StateEntry { state, tangle, degree, q_shift }
            })
            .collect()
    }

    /// Replaces crossing `id` by a fixed smoothing.
    pub fn smooth_crossing(&self, id: &str, smoothing: Smoothing) -> Result<Self> {
        let ci = self.crossing_index(id).ok_or_else(|| Error::StateMismatch(format!("no crossing `{id}`")))?;
        let slots = self.crossings[ci].slots;
        let mut joins: Vec<(End, End)> = Vec::new();
        for (a, b) in smoothing.slot_pairs() {
            joins.push((End::Slot(ci, a), End::Slot(ci, b)));
        }
        let _ = slots;
        self.splice(&joins, Some(ci))
    }

    /// Closes the boundary with a crossingless matching drawn outside the disk.
    pub fn closure(&self, matching: &FlatTangle) -> Result<Self> {
        if matching.boundary() != self.boundary || matching.loop_count() != 0 {
            return Err(Error::Planarity("closing matching must cover the boundary".into()));
        }
        let joins: Vec<(End, End)> =
            matching.arcs().iter().map(|&(p, q)| (End::Boundary(p), End::Boundary(q))).collect();
        let mut d = self.splice(&joins, None)?;
        d.boundary = 0;
        d.check_incidence()?;
        d.check_planarity()?;
        Ok(d)
    }

    /// Joins pairs of edge ends, merging edges; optionally deletes a crossing.
    fn splice(&self, joins: &[(End, End)], remove: Option<usize>) -> Result<Self> {
        // each edge is a node; joined ends link two edges
        let ne = self.edges.len();
        let mut edge_at: BTreeMap<End, usize> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for end in e.ends {
                edge_at.insert(end, ei);
            }
        }
        let mut joined: BTreeMap<End, End> = BTreeMap::new();
        for &(a, b) in joins {
            joined.insert(a, b);
            joined.insert(b, a);
        }
        let mut visited = vec![false; ne];
        let mut new_edges: Vec<Edge> = Vec::new();
        let mut free_loops = self.free_loops;
        let other_end = |ei: usize, end: End| -> End {
            let e = &self.edges[ei];
            if e.ends[0] == end && e.ends[1] != end {
                e.ends[1]
            } else if e.ends[1] == end {
                e.ends[0]
            } else {
                e.ends[1]
            }
        };
        // start walks from ends that survive
        for ei in 0..ne {
            if visited[ei] {
                continue;
            }
            let e = &self.edges[ei];
            let start = e.ends.iter().copied().find(|end| !joined.contains_key(end));
            let Some(start) = start else { continue };
            let mut labels = Vec::new();
            let mut cur_edge = ei;
            let mut from = start;
            loop {
                visited[cur_edge] = true;
                labels.push(self.edges[cur_edge].label.clone());
                let to = other_end(cur_edge, from);
                match joined.get(&to) {
                    Some(&next_end) => {
                        cur_edge = edge_at[&next_end];
                        from = next_end;
                    }
                    None => {
                        new_edges.push(Edge { label: labels.join("+"), ends: [start, to] });
                        break;
                    }
                }
            }
        }
        // remaining unvisited edges form closed loops
        for ei in 0..ne {
            if visited[ei] {
                continue;
            }
            let mut cur_edge = ei;
            let mut from = self.edges[ei].ends[0];
            loop {
                visited[cur_edge] = true;
                let to = other_end(cur_edge, from);
                let next_end = joined[&to];
                cur_edge = edge_at[&next_end];
                from = next_end;
                if visited[cur_edge] {
                    break;
                }
            }
            free_loops += 1;
        }
        // renumber crossings if one is removed
        let crossing_map = |c: usize| -> usize {
            match remove {
                Some(r) if c > r => c - 1,
                _ => c,
            }
        };
        let mut crossings: Vec<Crossing> =
            self.crossings.iter().enumerate().filter(|(i, _)| Some(*i) != remove).map(|(_, c)| c.clone()).collect();
        let mut edges = Vec::with_capacity(new_edges.len());
        for mut e in new_edges {
            for end in e.ends.iter_mut() {
                if let End::Slot(c, s) = *end {
                    *end = End::Slot(crossing_map(c), s);
                }
            }
            edges.push(e);
        }
        for (ei, e) in edges.iter().enumerate() {
            for end in e.ends {
                if let End::Slot(c, s) = end {
                    crossings[c].slots[s] = ei;
                }
            }
        }
        let d = TangleDiagram { boundary: self.boundary, crossings, edges, free_loops };
        Ok(d)
    }

    /// Serializes into the external JSON format.
    pub fn to_json(&self, incoming: Option<&[bool]>) -> Value {
        let crossings: Vec<Value> = self
            .crossings
            .iter()
            .map(|c| {
                serde_json::json!({
                    "id": c.id,
                    "type": c.kind.name(),
                    "slots": c.slots.iter().map(|&e| self.edges[e].label.clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut boundary_edges = vec![String::new(); self.boundary as usize];
        for e in &self.edges {
            for end in e.ends {
                if let End::Boundary(p) = end {
                    boundary_edges[p as usize] = e.label.clone();
                }
            }
        }
        let mut v = serde_json::json!({
            "boundary": self.boundary,
            "crossings": crossings,
            "edges": boundary_edges,
            "loops": self.free_loops,
        });
        if let Some(inc) = incoming {
            v["orientation"] = Value::from(inc.iter().map(|&i| if i { "in" } else { "out" }).collect::<Vec<_>>());
        }
        v
    }

    /// Parses the external JSON format:
    /// `{"boundary", "crossings":[{"id","type","slots":[e0,e1,e2,e3]}],
    ///   "edges":[edge label at each boundary point], "orientation":["in"|"out", ...],
    ///   "loops": n}`.
    pub fn parse_json(text: &str) -> Result<Self> {
        let raw: RawDiagram = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        raw.build()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    boundary: u32,
    #[serde(default)]
    crossings: Vec<RawCrossing>,
    #[serde(default)]
    edges: Vec<Value>,
    #[serde(default)]
    orientation: Vec<String>,
    #[serde(default)]
    loops: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCrossing {
    id: Value,
    #[serde(rename = "type")]
    kind: CrossingKind,
    slots: [Value; 4],
}

fn label_of(v: &Value, location: impl Fn() -> String) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse { location: location(), message: "edge label must be a string or number".into() }),
    }
}

impl RawDiagram {
    fn build(self) -> Result<TangleDiagram> {
        if !self.boundary.is_multiple_of(2) {
            return Err(Error::Parse { location: "boundary".into(), message: "must be even".into() });
        }
        if self.edges.len() != self.boundary as usize {
            return Err(Error::Parse {
                location: "edges".into(),
                message: format!("expected {} boundary edge labels, found {}", self.boundary, self.edges.len()),
            });
        }
        let mut ends_of: BTreeMap<String, Vec<(End, String)>> = BTreeMap::new();
        let mut order: Vec<String> = Vec::new();
        let mut note = |label: String, end: End, loc: String, ends_of: &mut BTreeMap<String, Vec<(End, String)>>| {
            if !ends_of.contains_key(&label) {
                order.push(label.clone());
            }
            ends_of.entry(label).or_default().push((end, loc));
        };
        let mut crossings = Vec::new();
        let mut ids = std::collections::BTreeSet::new();
        for (ci, rc) in self.crossings.iter().enumerate() {
            let id = label_of(&rc.id, || format!("crossings[{ci}].id"))?;
            if !ids.insert(id.clone()) {
                return Err(Error::Parse {
                    location: format!("crossings[{ci}].id"),
                    message: format!("duplicate id `{id}`"),
                });
            }
            for (s, v) in rc.slots.iter().enumerate() {
                let loc = format!("crossings[{ci}].slots[{s}]");
                let label = label_of(v, || loc.clone())?;
                note(label, End::Slot(ci, s), loc, &mut ends_of);
            }
            crossings.push(Crossing { id, kind: rc.kind, slots: [usize::MAX; 4] });
        }
        for (p, v) in self.edges.iter().enumerate() {
            let loc = format!("edges[{p}]");
            let label = label_of(v, || loc.clone())?;
            note(label, End::Boundary(p as u32), loc, &mut ends_of);
        }
        let mut edges = Vec::new();
        for label in order {
            let ends = &ends_of[&label];
            if ends.len() != 2 {
                return Err(Error::Parse {
                    location: ends.iter().map(|(_, l)| l.as_str()).collect::<Vec<_>>().join(", "),
                    message: format!("edge `{label}` must appear exactly twice, found {}", ends.len()),
                });
            }
            let ei = edges.len();
            for &(end, _) in ends {
                if let End::Slot(c, s) = end {
                    crossings[c].slots[s] = ei;
                }
            }
            edges.push(Edge { label, ends: [ends[0].0, ends[1].0] });
        }
        let d = TangleDiagram::new(self.boundary, crossings, edges, self.loops)?;
        if !(self.orientation.is_empty() && self.boundary == 0) {
            let mut incoming = Vec::with_capacity(self.orientation.len());
            for (p, o) in self.orientation.iter().enumerate() {
                incoming.push(match o.as_str() {
                    "in" => true,
                    "out" => false,
                    _ => {
                        return Err(Error::Parse {
                            location: format!("orientation[{p}]"),
                            message: format!("expected \"in\" or \"out\", found {o:?}"),
                        })
                    }
                });
            }
            d.check_orientation(&incoming)?;
        } else {
            d.check_orientation(&[])?;
        }
        Ok(d)
    }
}
