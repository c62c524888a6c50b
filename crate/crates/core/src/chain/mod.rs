//! Bounded complexes over the cobordism category and graded maps between
//! them.

mod build;
mod hom;
mod kh;
mod mat;
pub mod reduce;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cobordism::{flat_json, Cobordism, Degree, PreComponent, PreSurface};
use crate::error::{Error, Result};
use crate::tangle::FlatTangle;

pub use build::{cone, cone_tagged, direct_sum, matching_inverse, shift, signed_iso, total_complex, Square, Total};
pub use hom::HomElement;
pub use kh::{kh_complex, phi_on_state, state_obj, state_surface, transition};
pub use mat::Mat;
pub use reduce::{simplify, verify_homotopy, Equivalence};

/// Where a summand came from: crossing indices for cube summands, plus
/// tags added by cones.
pub type Label = Vec<(String, i32)>;

pub fn label_string(label: &Label) -> String {
    label.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

/// Order-insensitive form of a label.
pub fn label_key(label: &Label) -> Label {
    let mut l = label.clone();
    l.sort();
    l
}

/// One summand: a flat tangle with a q-shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obj {
    pub tangle: FlatTangle,
    pub q: i32,
    pub label: Label,
    /// A name per loop, stable across diagrams sharing edge labels. Used to
    /// line loops up when identifying summands of different complexes.
    pub loop_tags: Vec<String>,
}

impl Obj {
    pub fn new(tangle: FlatTangle, q: i32) -> Self {
        let n = tangle.loop_count();
        Obj { tangle, q, label: Vec::new(), loop_tags: (0..n).map(|k| format!("#{k}")).collect() }
    }

    pub fn with_tag(&self, key: &str, value: i32) -> Obj {
        let mut o = self.clone();
        o.label.push((key.to_string(), value));
        o
    }

    /// The identity surface between two copies of the same summand, loops
    /// matched by tag when the tags agree as sets.
    pub fn identity_to(&self, other: &Obj) -> Option<Cobordism> {
        if self.tangle != other.tangle || self.q != other.q {
            return None;
        }
        let t = &self.tangle;
        let n = t.circle_count();
        let arcs = t.arc_count();
        let mut sorted_a = self.loop_tags.clone();
        let mut sorted_b = other.loop_tags.clone();
        sorted_a.sort();
        sorted_b.sort();
        let by_tag = sorted_a == sorted_b && {
            let mut d = sorted_a.clone();
            d.dedup();
            d.len() == sorted_a.len()
        };
        let comps = (0..n)
            .map(|i| {
                let j = if i < arcs || !by_tag {
                    i
                } else {
                    let tag = &self.loop_tags[i - arcs];
                    arcs + other.loop_tags.iter().position(|x| x == tag).expect("tag sets agree")
                };
                PreComponent::new(vec![i, n + j], 0, 0)
            })
            .collect();
        Some(PreSurface::new(t.clone(), t.clone(), 1, comps).normalize().expect("identity surface"))
    }
}

/// A summand block of a complex built from smaller ones: degree `i` of the
/// big complex contains degree `i + offset` of `complex`.
#[derive(Clone, Debug)]
pub struct Part {
    pub complex: Arc<Complex>,
    pub offset: i32,
}

#[derive(Clone, Debug, Default)]
pub struct Complex {
    boundary: u32,
    objs: BTreeMap<i32, Vec<Obj>>,
    d: BTreeMap<i32, Mat>,
    parts: Vec<Part>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.boundary == other.boundary && self.objs == other.objs && self.d == other.d
    }
}

impl Eq for Complex {}

impl Complex {
    pub fn new(boundary: u32) -> Self {
        Complex { boundary, ..Default::default() }
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn push(&mut self, degree: i32, obj: Obj) -> usize {
        assert_eq!(obj.tangle.boundary(), self.boundary, "summand boundary mismatch");
        let v = self.objs.entry(degree).or_default();
        v.push(obj);
        v.len() - 1
    }

    /// Installs `d^n`; the shape must match the summands.
    pub fn set_diff(&mut self, n: i32, m: Mat) {
        assert_eq!(m.cols(), self.objects(n).len(), "d^{n} has wrong column count");
        assert_eq!(m.rows(), self.objects(n + 1).len(), "d^{n} has wrong row count");
        if m.is_zero() {
            self.d.remove(&n);
        } else {
            self.d.insert(n, m);
        }
    }

    pub fn objects(&self, n: i32) -> &[Obj] {
        self.objs.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, n: i32) -> usize {
        self.objects(n).len()
    }

    pub fn diff(&self, n: i32) -> Mat {
        self.d.get(&n).cloned().unwrap_or_else(|| Mat::zeros(self.rank(n + 1), self.rank(n)))
    }

    pub fn diff_ref(&self, n: i32) -> Option<&Mat> {
        self.d.get(&n)
    }

    /// Degrees carrying at least one summand.
    pub fn degrees(&self) -> Vec<i32> {
        self.objs.iter().filter(|(_, v)| !v.is_empty()).map(|(&n, _)| n).collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let d = self.degrees();
        Some((*d.first()?, *d.last()?))
    }

    pub fn total_rank(&self) -> usize {
        self.objs.values().map(Vec::len).sum()
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn set_parts(&mut self, parts: Vec<Part>) {
        self.parts = parts;
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    /// Renames summand labels.
    pub fn map_labels(&self, f: impl Fn(&Label) -> Label) -> Complex {
        let mut c = self.clone();
        for v in c.objs.values_mut() {
            for o in v {
                o.label = f(&o.label);
            }
        }
        c
    }

    /// Raises each summand's q-shift by `f(summand)`.
    pub fn shift_q(&self, f: impl Fn(&Obj) -> i32) -> Complex {
        let mut c = self.clone();
        for v in c.objs.values_mut() {
            for o in v {
                o.q += f(o);
            }
        }
        c
    }

    /// Position of the summand with the given label (order-insensitive).
    pub fn find(&self, label: &Label) -> Option<(i32, usize)> {
        let key = label_key(label);
        self.objs.iter().find_map(|(&n, v)| v.iter().position(|o| label_key(&o.label) == key).map(|i| (n, i)))
    }

    /// Caps every summand with the same crossingless matching.
    pub fn close(&self, closing: &FlatTangle) -> Result<Complex> {
        let pairs: Vec<(u32, u32)> = (0..self.boundary).map(|p| (p, p)).collect();
        let mut out = Complex::new(0);
        for (&n, v) in &self.objs {
            for o in v {
                let g = crate::tangle::glue(&o.tangle, closing, &pairs, &[])?;
                let mut tags = o.loop_tags.clone();
                for k in tags.len()..g.tangle.loop_count() as usize {
                    tags.push(format!("#close{k}"));
                }
                out.push(n, Obj { tangle: g.tangle, q: o.q, label: o.label.clone(), loop_tags: tags });
            }
        }
        for (&n, m) in &self.d {
            let mut cm = Mat::zeros(m.rows(), m.cols());
            for (r, c, x) in m.entries() {
                cm.add_at(r, c, x.close(closing)?);
            }
            out.set_diff(n, cm);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees()
            .into_iter()
            .map(|n| {
                let summands: Vec<Value> = self
                    .objects(n)
                    .iter()
                    .map(|o| json!({"label": label_string(&o.label), "q": o.q, "tangle": flat_json(&o.tangle)}))
                    .collect();
                let diff: Vec<Value> = self
                    .diff_ref(n)
                    .map(|m| m.entries().map(|(r, c, x)| json!({"row": r, "col": c, "map": x.to_json()})).collect())
                    .unwrap_or_default();
                json!({"degree": n, "summands": summands, "differential": diff})
            })
            .collect();
        json!({"boundary": self.boundary, "degrees": degrees})
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.degrees() {
            write!(f, "[{n}]")?;
            for o in self.objects(n) {
                write!(f, " {}{{{}}}<{}>", o.tangle, o.q, label_string(&o.label))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of [`check_complex`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexReport {
    pub failures: Vec<String>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `d∘d = 0`, entry ends, and q-homogeneity of the differential.
pub fn check_complex(c: &Complex) -> ComplexReport {
    let mut failures = Vec::new();
    for (&n, m) in &c.d {
        let (src, tgt) = (c.objects(n), c.objects(n + 1));
        for (r, col, x) in m.entries() {
            if x.source() != &src[col].tangle || x.target() != &tgt[r].tangle {
                failures.push(format!("d^{n}[{r}][{col}]: ends do not match the summands"));
                continue;
            }
            let want = src[col].q - tgt[r].q;
            match x.qdeg() {
                Degree::Homogeneous(d) if d == want => {}
                Degree::Zero => {}
                other => failures.push(format!("d^{n}[{r}][{col}]: q-degree {other:?}, expected {want}")),
            }
        }
    }
    for &n in c.d.keys() {
        if let Some(next) = c.d.get(&(n + 1)) {
            let dd = next.compose(&c.d[&n]);
            let first = dd.entries().next().map(|(r, col, x)| format!("(d∘d)^{n}[{r}][{col}] = {x} is not zero"));
            failures.extend(first);
        }
    }
    ComplexReport { failures }
}

pub(crate) fn shape_error(what: impl Into<String>) -> Error {
    Error::Shape(what.into())
}
