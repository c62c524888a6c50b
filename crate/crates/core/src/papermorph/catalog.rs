//! Reading and writing the frozen component data.
//!
//! A component is a list of matrix entries, each naming its source and
//! target summand by label. An entry is a sum of disk-basis terms; a term
//! lists its components by boundary circles (`s*` in the source, `t*` in
//! the target) with a dot count.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chain::{label_string, Complex, HomElement};
use crate::cobordism::{Cobordism, Cycles, PreComponent, PreSurface};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disk {
    pub circles: Vec<String>,
    pub dots: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: i64,
    pub components: Vec<Disk>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub from: String,
    pub to: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub degree: i32,
    pub entries: Vec<Entry>,
}

/// flavor name -> component name -> data
pub type Catalog = BTreeMap<String, BTreeMap<String, Component>>;

const FROZEN: &str = include_str!("catalog.json");

pub fn frozen() -> Result<Catalog> {
    Ok(serde_json::from_str(FROZEN)?)
}

fn bad(what: impl Into<String>) -> Error {
    Error::Catalog(what.into())
}

pub fn to_component(h: &HomElement) -> Component {
    let mut entries = Vec::new();
    for n in h.support() {
        for (r, c, x) in h.map(n).entries() {
            let cyc = x.cycles();
            let terms = x
                .terms()
                .map(|(mask, coeff)| Term {
                    coeff,
                    components: cyc
                        .members
                        .iter()
                        .enumerate()
                        .map(|(k, m)| Disk {
                            circles: m.iter().map(|&i| cyc.circle_name(i)).collect(),
                            dots: ((mask >> k) & 1) as u32,
                        })
                        .collect(),
                })
                .collect();
            entries.push(Entry {
                from: label_string(&h.source.objects(n)[c].label),
                to: label_string(&h.target.objects(n + h.degree)[r].label),
                terms,
            });
        }
    }
    Component { degree: h.degree, entries }
}

fn circle_index(cyc: &Cycles, name: &str) -> Result<usize> {
    let (side, k) = name.split_at(1);
    let k: usize = k.parse().map_err(|_| bad(format!("bad circle name `{name}`")))?;
    match side {
        "s" if k < cyc.n_source => Ok(k),
        "t" if k < cyc.n_target => Ok(cyc.n_source + k),
        _ => Err(bad(format!("circle `{name}` out of range"))),
    }
}

fn locate(c: &Complex, label: &str) -> Result<(i32, usize)> {
    for n in c.degrees() {
        if let Some(i) = c.objects(n).iter().position(|o| label_string(&o.label) == label) {
            return Ok((n, i));
        }
    }
    Err(bad(format!("no summand labelled `{label}`")))
}

pub fn from_component(comp: &Component, source: &Arc<Complex>, target: &Arc<Complex>) -> Result<HomElement> {
    let mut h = HomElement::zero(source, target, comp.degree);
    for e in &comp.entries {
        let (n, c) = locate(source, &e.from)?;
        let (m, r) = locate(target, &e.to)?;
        if m != n + comp.degree {
            return Err(bad(format!("entry {} -> {} has the wrong degree", e.from, e.to)));
        }
        let (s, t) = (&source.objects(n)[c].tangle, &target.objects(m)[r].tangle);
        let cyc = Cycles::new(s, t);
        let mut x = Cobordism::zero(s, t);
        for term in &e.terms {
            let comps = term
                .components
                .iter()
                .map(|d| {
                    let circles = d.circles.iter().map(|name| circle_index(&cyc, name)).collect::<Result<Vec<_>>>()?;
                    Ok(PreComponent::new(circles, 0, d.dots))
                })
                .collect::<Result<Vec<_>>>()?;
            x = x.add(&PreSurface::new(s.clone(), t.clone(), term.coeff, comps).normalize()?);
        }
        h.add_entry(n, r, c, x)?;
    }
    Ok(h)
}
