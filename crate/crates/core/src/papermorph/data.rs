//! The R3 and R4 maps assembled from their components.

use std::sync::{Arc, OnceLock};

use super::catalog::{self, Catalog};
use super::{Decomposed, Flavor, Setting};
use crate::chain::{Complex, HomElement, Mat};
use crate::cobordism::Cobordism;
use crate::error::{Error, Result};

pub const R3_NAMES: [&str; 4] = ["gamma", "omega", "F_minus", "F_plus"];
pub const R4_NAMES: [&str; 3] = ["G", "Psi_minus", "Psi_plus"];

/// Source, target and homological degree of a named component.
pub fn component_shape(s: &Setting, name: &str) -> Option<(Arc<Complex>, Arc<Complex>, i32)> {
    let [l, r] = &s.riv;
    let (src, tgt, k) = match name {
        "gamma" => (&l.h, &r.h, 0),
        "omega" => (&l.v, &r.v, 0),
        "F_minus" => (&l.h, &r.v, -1),
        "F_plus" => (&l.v, &r.h, -1),
        "G" => (&l.v, &r.v, -1),
        "Psi_minus" => (&l.h, &r.v, -2),
        "Psi_plus" => (&l.v, &r.h, -2),
        _ => return None,
    };
    Some((src.clone(), tgt.clone(), k))
}

#[derive(Clone, Debug)]
pub struct R3Data {
    pub flavor: Flavor,
    pub gamma: HomElement,
    pub omega: HomElement,
    pub f_minus: HomElement,
    pub f_plus: HomElement,
    /// `[-ω, -F₋; 0, γ]` between the cones of `δ₋`.
    pub minus_cone: HomElement,
    /// `[γ, -F₊; 0, ω]` between the shifted cones of `δ₊`.
    pub plus_cone: HomElement,
    /// The same two maps between the Khovanov complexes.
    pub minus: HomElement,
    pub plus: HomElement,
}

impl R3Data {
    pub fn assemble(
        s: &Setting,
        gamma: HomElement,
        omega: HomElement,
        f_minus: HomElement,
        f_plus: HomElement,
    ) -> Result<Self> {
        let minus_cone = HomElement::from_blocks(
            &s.minus[0].cone,
            &s.minus[1].cone,
            0,
            &[(0, 0, &omega.neg()), (0, 1, &f_minus.neg()), (1, 1, &gamma)],
        )?;
        let plus_cone = HomElement::from_blocks(
            &s.plus[0].cone,
            &s.plus[1].cone,
            0,
            &[(0, 0, &gamma), (0, 1, &f_plus.neg()), (1, 1, &omega)],
        )?;
        let minus = Decomposed::conjugate(&s.minus[0], &s.minus[1], &minus_cone)?;
        let plus = Decomposed::conjugate(&s.plus[0], &s.plus[1], &plus_cone)?;
        Ok(R3Data { flavor: s.flavor, gamma, omega, f_minus, f_plus, minus_cone, plus_cone, minus, plus })
    }

    pub fn component(&self, name: &str) -> Option<&HomElement> {
        match name {
            "gamma" => Some(&self.gamma),
            "omega" => Some(&self.omega),
            "F_minus" => Some(&self.f_minus),
            "F_plus" => Some(&self.f_plus),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct R4Data {
    pub flavor: Flavor,
    pub g: HomElement,
    pub psi_minus: HomElement,
    pub psi_plus: HomElement,
    /// `ψ = [-Ψ₊, 0; G, -Ψ₋]` from the cone of `δ₋` (left) to the shifted
    /// cone of `δ₊` (right).
    pub psi_cone: HomElement,
    /// `ψ` between the Khovanov complexes.
    pub psi: HomElement,
    /// `[R3⁺, -ψ; 0, R3⁻]` between the cones of `Φ̂_c`.
    pub r4_cone: HomElement,
    /// The R4 map between the singular Khovanov complexes.
    pub r4: HomElement,
}

impl R4Data {
    pub fn assemble(
        s: &Setting,
        r3: &R3Data,
        g: HomElement,
        psi_minus: HomElement,
        psi_plus: HomElement,
    ) -> Result<Self> {
        let psi_cone = HomElement::from_blocks(
            &s.minus[0].cone,
            &s.plus[1].cone,
            -1,
            &[(0, 0, &psi_plus.neg()), (1, 0, &g), (1, 1, &psi_minus.neg())],
        )?;
        let psi = Decomposed::conjugate(&s.minus[0], &s.plus[1], &psi_cone)?;
        let r4_cone = HomElement::from_blocks(
            &s.sing[0].cone,
            &s.sing[1].cone,
            0,
            &[(0, 0, &r3.plus), (0, 1, &psi.neg()), (1, 1, &r3.minus)],
        )?;
        let r4 = Decomposed::conjugate(&s.sing[0], &s.sing[1], &r4_cone)?;
        Ok(R4Data { flavor: s.flavor, g, psi_minus, psi_plus, psi_cone, psi, r4_cone, r4 })
    }

    pub fn component(&self, name: &str) -> Option<&HomElement> {
        match name {
            "G" => Some(&self.g),
            "Psi_minus" => Some(&self.psi_minus),
            "Psi_plus" => Some(&self.psi_plus),
            "psi" => Some(&self.psi),
            _ => None,
        }
    }
}

/// The map that is `x` from the all-vertical state `s₀` of `src` to that of
/// `tgt` and zero elsewhere.
pub fn s0_map(src: &Arc<Complex>, tgt: &Arc<Complex>, x: &Cobordism) -> Result<HomElement> {
    let s0 = |c: &Complex| {
        c.objects(0)
            .iter()
            .position(|o| o.label.iter().all(|e| e.1 == 0))
            .ok_or_else(|| Error::Shape("no all-vertical state".into()))
    };
    let (i, j) = (s0(src)?, s0(tgt)?);
    let mut m = Mat::zeros(tgt.rank(0), src.rank(0));
    m.add_at(j, i, x.clone());
    let mut h = HomElement::zero(src, tgt, 0);
    h.set(0, m)?;
    Ok(h)
}

/// All settings and maps, for both flavors.
#[derive(Clone, Debug)]
pub struct Paper {
    pub settings: [Setting; 2],
    pub r3: [R3Data; 2],
    pub r4: [R4Data; 2],
}

pub fn flavor_index(f: Flavor) -> usize {
    match f {
        Flavor::O => 0,
        Flavor::U => 1,
    }
}

impl Paper {
    pub fn from_catalog(cat: &Catalog) -> Result<Self> {
        let mut settings = Vec::new();
        let mut r3 = Vec::new();
        let mut r4 = Vec::new();
        for f in Flavor::ALL {
            let s = Setting::new(f)?;
            let comps = cat.get(f.name()).ok_or_else(|| Error::Catalog(format!("flavor {} missing", f.name())))?;
            let get = |name: &str| -> Result<HomElement> {
                let (src, tgt, k) = component_shape(&s, name).expect("known component");
                let c = comps.get(name).ok_or_else(|| Error::Catalog(format!("{name} missing")))?;
                if c.degree != k {
                    return Err(Error::Catalog(format!("{name} has degree {}, expected {k}", c.degree)));
                }
                catalog::from_component(c, &src, &tgt)
            };
            let d3 = R3Data::assemble(&s, get("gamma")?, get("omega")?, get("F_minus")?, get("F_plus")?)?;
            let d4 = R4Data::assemble(&s, &d3, get("G")?, get("Psi_minus")?, get("Psi_plus")?)?;
            settings.push(s);
            r3.push(d3);
            r4.push(d4);
        }
        Ok(Paper {
            settings: settings.try_into().expect("two flavors"),
            r3: r3.try_into().expect("two flavors"),
            r4: r4.try_into().expect("two flavors"),
        })
    }

    pub fn build() -> Result<Self> {
        Paper::from_catalog(&catalog::frozen()?)
    }

    /// The data built from the frozen catalog, constructed once.
    pub fn get() -> Result<&'static Paper> {
        static CELL: OnceLock<std::result::Result<Paper, String>> = OnceLock::new();
        CELL.get_or_init(|| Paper::build().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::Catalog(e.clone()))
    }

    /// A copy with one component replaced and the maps reassembled.
    pub fn replace(&self, f: Flavor, name: &str, h: HomElement) -> Result<Paper> {
        let i = flavor_index(f);
        let s = &self.settings[i];
        let (r3, r4) = (&self.r3[i], &self.r4[i]);
        let pick = |n: &str| -> Result<HomElement> {
            if n == name {
                return Ok(h.clone());
            }
            r3.component(n).or_else(|| r4.component(n)).cloned().ok_or_else(|| Error::Catalog(format!("{n} missing")))
        };
        if !R3_NAMES.contains(&name) && !R4_NAMES.contains(&name) {
            return Err(Error::Catalog(format!("no component `{name}`")));
        }
        let d3 = R3Data::assemble(s, pick("gamma")?, pick("omega")?, pick("F_minus")?, pick("F_plus")?)?;
        let d4 = R4Data::assemble(s, &d3, pick("G")?, pick("Psi_minus")?, pick("Psi_plus")?)?;
        let mut out = self.clone();
        out.r3[i] = d3;
        out.r4[i] = d4;
        Ok(out)
    }

    pub fn setting(&self, f: Flavor) -> &Setting {
        &self.settings[flavor_index(f)]
    }

    pub fn r3_data(&self, f: Flavor) -> &R3Data {
        &self.r3[flavor_index(f)]
    }

    pub fn r4_data(&self, f: Flavor) -> &R4Data {
        &self.r4[flavor_index(f)]
    }
}
