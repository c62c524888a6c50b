use super::{Cobordism, Cycles};
use crate::error::{Error, Result};
use crate::tangle::FlatTangle;

/// One connected piece of an unreduced surface.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct PreComponent {
    /// Circles on the boundary (source circles first, then target circles).
    pub circles: Vec<usize>,
    pub genus: u32,
    pub dots: u32,
}

impl PreComponent {
    pub fn new(circles: Vec<usize>, genus: u32, dots: u32) -> Self {
        PreComponent { circles, genus, dots }
    }

    pub fn closed(genus: u32, dots: u32) -> Self {
        PreComponent { circles: Vec::new(), genus, dots }
    }
}

/// A surface with arbitrary genus and dots per component, closed
/// components allowed: the raw input to normalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreSurface {
    pub source: FlatTangle,
    pub target: FlatTangle,
    pub coeff: i64,
    pub components: Vec<PreComponent>,
}

impl PreSurface {
    pub fn new(source: FlatTangle, target: FlatTangle, coeff: i64, components: Vec<PreComponent>) -> Self {
        PreSurface { source, target, coeff, components }
    }

    /// Checks that components partition the circles and that circles joined
    /// by vertical boundary lines share a component. Returns, per component,
    /// its boundary cycles.
    pub fn component_cycles(&self) -> Result<(Cycles, Vec<Vec<usize>>)> {
        if self.source.boundary() != self.target.boundary() {
            return Err(Error::Boundary("source and target boundaries differ".into()));
        }
        let cyc = Cycles::new(&self.source, &self.target);
        let n = cyc.n_source + cyc.n_target;
        let mut comp_of = vec![usize::MAX; n];
        for (i, comp) in self.components.iter().enumerate() {
            for &c in &comp.circles {
                let slot = comp_of.get_mut(c).ok_or_else(|| Error::Site(format!("circle {c} out of range")))?;
                if *slot != usize::MAX {
                    return Err(Error::Site(format!("circle {c} in two components")));
                }
                *slot = i;
            }
        }
        if let Some(c) = comp_of.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Site(format!("circle {} in no component", cyc.circle_name(c))));
        }
        let mut per_comp = vec![Vec::new(); self.components.len()];
        for (k, mem) in cyc.members.iter().enumerate() {
            let i = comp_of[mem[0]];
            if mem.iter().any(|&c| comp_of[c] != i) {
                return Err(Error::Site(format!("cycle {k} is split between components")));
            }
            per_comp[i].push(k);
        }
        Ok((cyc, per_comp))
    }

    /// Reduces to the disk basis: handle = 2·dot, dot² = 0, sphere = 0,
    /// dotted sphere = 1, neck-cutting on every remaining piece.
    pub fn normalize(&self) -> Result<Cobordism> {
        let (_, per_comp) = self.component_cycles()?;
        let mut out = Cobordism::zero(&self.source, &self.target);
        let mut partial: Vec<(u64, i64)> = vec![(0, self.coeff)];
        for (comp, cycles) in self.components.iter().zip(&per_comp) {
            let e = comp.genus + comp.dots;
            if e >= 2 || partial.is_empty() {
                return Ok(out);
            }
            let factor = 1i64 << comp.genus;
            let mask: u64 = cycles.iter().fold(0, |m, &c| m | 1 << c);
            if cycles.is_empty() {
                if e == 0 {
                    return Ok(out);
                }
                partial.iter_mut().for_each(|t| t.1 *= factor);
            } else if e == 1 {
                partial.iter_mut().for_each(|t| {
                    t.0 |= mask;
                    t.1 *= factor;
                });
            } else {
                partial = partial
                    .iter()
                    .flat_map(|&(m, k)| cycles.iter().map(move |&c| (m | (mask & !(1 << c)), k)))
                    .collect();
            }
        }
        for (m, k) in partial {
            out.add_term(m, k);
        }
        Ok(out)
    }
}
