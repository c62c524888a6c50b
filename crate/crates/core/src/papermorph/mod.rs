//! The named morphisms of the construction: `Φ`, `Φ̂`, the R3 data
//! `(γ, ω, F±)`, the R4 data `(G, Ψ±, ψ)` and the maps they assemble into.

pub mod catalog;
mod data;
mod setting;

use std::sync::Arc;

use crate::chain::{kh_complex, phi_on_state, reduce, simplify, state_obj, Complex, Equivalence, HomElement, Mat, Obj};
use crate::cobordism::Cobordism;
use crate::error::{Error, Result};
use crate::tangle::builtin::builtin;
use crate::tangle::{CrossingKind, FlatTangle, State, TangleDiagram};

pub use data::{component_shape, flavor_index, s0_map, Paper, R3Data, R4Data, R3_NAMES, R4_NAMES};
pub use setting::{Decomposed, Riv, Setting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    O,
    U,
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::O, Flavor::U];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::O => "O",
            Flavor::U => "U",
        }
    }

    /// Strand order of the R3 diagrams with `c` negative.
    pub fn minus_name(self) -> &'static str {
        match self {
            Flavor::O => "MLR",
            Flavor::U => "LRM",
        }
    }

    pub fn plus_name(self) -> &'static str {
        match self {
            Flavor::O => "MRL",
            Flavor::U => "RLM",
        }
    }

    /// The crossing `Φ̂` is applied to in the hexagons.
    pub fn hex_crossing(self) -> &'static str {
        match self {
            Flavor::O => "a",
            Flavor::U => "b",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    R,
}

/// `Φ: V -> V` on the vertical smoothing of the 2-strand square.
pub fn phi() -> Cobordism {
    let d = builtin("pos_x").expect("builtin");
    let (_, r) = state_obj(&d, &State(vec![0])).expect("vertical state");
    phi_on_state(&d, &r, 0)
}

/// `Φ` on the left or right pair of strands of the 3-strand identity.
pub fn phi_lr(side: Side) -> Cobordism {
    let t = FlatTangle::identity_braid(3);
    let id = Cobordism::identity(&t);
    let (i, j) = match side {
        Side::L => (0, 1),
        Side::R => (1, 2),
    };
    let dot = |p: u32| id.dot(t.arc_at(p)).expect("strand");
    dot(i).sub(&dot(j))
}

/// `Φ̂_c: Kh(d) -> Kh(d')` where `d'` has crossing `c` made positive.
pub fn phi_hat(d: &TangleDiagram, c: &str) -> Result<HomElement> {
    let k = d.crossing_index(c).ok_or_else(|| Error::Tangle(format!("no crossing `{c}`")))?;
    if d.crossings()[k].kind != CrossingKind::Neg {
        return Err(Error::NotNegative(c.to_string()));
    }
    let target = d.with_kind(c, CrossingKind::Pos)?;
    phi_hat_between(d, k, &Arc::new(kh_complex(d)), &Arc::new(kh_complex(&target)))
}

/// `Φ̂` at crossing `k` between given copies of the two complexes: `Φ` on
/// every state where `k` is smoothed vertically, with sign +1.
pub fn phi_hat_between(d: &TangleDiagram, k: usize, src: &Arc<Complex>, tgt: &Arc<Complex>) -> Result<HomElement> {
    let id = &d.crossings()[k].id;
    let mut out = HomElement::zero(src, tgt, 0);
    for n in src.degrees() {
        let mut m = Mat::zeros(tgt.rank(n), src.rank(n));
        for (col, o) in src.objects(n).iter().enumerate() {
            if o.label.iter().any(|(x, i)| x == id && *i != 0) {
                continue;
            }
            let state = State(o.label.iter().map(|e| e.1).collect());
            let (_, r) = state_obj(d, &state)?;
            let (tn, row) = tgt.find(&o.label).ok_or_else(|| Error::Shape("Φ̂ target state missing".into()))?;
            debug_assert_eq!(tn, n);
            m.add_at(row, col, phi_on_state(d, &r, k));
        }
        out.set(n, m)?;
    }
    Ok(out)
}

fn unknown(flavor: Flavor, name: &str) -> Error {
    Error::Tangle(format!("no component `{name}` for flavor {}", flavor.name()))
}

/// `γ`, `ω`, `F_minus` or `F_plus` of a flavor.
pub fn r3_component(flavor: Flavor, name: &str) -> Result<HomElement> {
    Paper::get()?.r3_data(flavor).component(name).cloned().ok_or_else(|| unknown(flavor, name))
}

/// The R3 map between the cone decompositions; `minus` picks the diagrams
/// with `c` negative.
pub fn r3_equiv(flavor: Flavor, minus: bool) -> Result<HomElement> {
    let d = Paper::get()?.r3_data(flavor);
    Ok(if minus { d.minus_cone.clone() } else { d.plus_cone.clone() })
}

/// `G`, `Psi_minus`, `Psi_plus` or `psi` of a flavor.
pub fn r4_component(flavor: Flavor, name: &str) -> Result<HomElement> {
    Paper::get()?.r4_data(flavor).component(name).cloned().ok_or_else(|| unknown(flavor, name))
}

/// The R4 map between the singular Khovanov complexes.
pub fn r4_equiv(flavor: Flavor) -> Result<HomElement> {
    Ok(Paper::get()?.r4_data(flavor).r4.clone())
}

/// Which crossing of the R2 tangle comes first along the braid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R2Position {
    PosNeg,
    NegPos,
}

impl R2Position {
    pub fn builtin_name(self) -> &'static str {
        match self {
            R2Position::PosNeg => "r2_pn",
            R2Position::NegPos => "r2_np",
        }
    }
}

/// The complex of two parallel strands.
pub fn parallel_strands() -> Complex {
    let mut c = Complex::new(4);
    c.push(0, Obj::new(FlatTangle::identity_braid(2), 0));
    c
}

/// The R2 equivalence from the complex of the R2 tangle to the parallel
/// strands, with homotopies for both composites.
pub fn r2_equiv(position: R2Position) -> Result<Equivalence> {
    let c = Arc::new(kh_complex(&builtin(position.builtin_name())?));
    let eq = simplify(&c)?;
    reduce::onto(&eq, &Arc::new(parallel_strands()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::Degree;

    #[test]
    fn phi_has_degree_minus_two() {
        assert_eq!(phi().qdeg(), Degree::Homogeneous(-2));
        assert_eq!(phi_lr(Side::L).qdeg(), Degree::Homogeneous(-2));
        assert!(!phi_lr(Side::R).compose(&phi_lr(Side::L)).is_zero());
    }

    #[test]
    fn phi_hat_on_single_crossing() {
        let f = phi_hat(&builtin("neg_x").unwrap(), "x").unwrap();
        assert!(f.is_chain_map());
        assert_eq!(f.internal_qdeg().unwrap(), Some(0));
        assert!(phi_hat(&builtin("pos_x").unwrap(), "x").is_err());
    }

    #[test]
    fn settings_build() {
        for f in Flavor::ALL {
            let s = Setting::new(f).unwrap();
            for side in 0..2 {
                assert!(s.riv[side].delta_minus.is_chain_map());
                assert!(s.riv[side].delta_plus.is_chain_map());
                assert!(s.riv[side].phi.is_chain_map());
                assert!(s.phi_c[side].is_chain_map());
            }
        }
    }

    fn all_plus(h: &HomElement) -> bool {
        h.support().into_iter().all(|n| {
            h.map(n)
                .entries()
                .all(|(r, c, x)| Some(x) == h.source.objects(n)[c].identity_to(&h.target.objects(n)[r]).as_ref())
        })
    }

    #[test]
    fn cone_identifications_are_literal() {
        for f in Flavor::ALL {
            let s = Setting::new(f).unwrap();
            for side in 0..2 {
                assert!(all_plus(&s.minus[side].to_cone));
                assert!(all_plus(&s.plus[side].to_cone));
                assert!(all_plus(&s.sing[side].to_cone));
                let block =
                    HomElement::from_blocks(&s.minus[side].cone, &s.plus[side].cone, 0, &[(1, 0, &s.riv[side].phi)])
                        .unwrap();
                let via = Decomposed::conjugate(&s.minus[side], &s.plus[side], &block).unwrap();
                assert_eq!(via.difference_witness(&s.phi_c[side]), None);
            }
        }
    }

    #[test]
    fn frozen_maps_are_chain_maps() {
        let paper = Paper::get().unwrap();
        for f in Flavor::ALL {
            let r3 = paper.r3_data(f);
            for h in [&r3.minus_cone, &r3.plus_cone, &r3.minus, &r3.plus] {
                assert!(h.is_chain_map(), "{}", f.name());
                assert_eq!(h.internal_qdeg().unwrap(), Some(0));
            }
            let r4 = paper.r4_data(f);
            assert!(r4.r4_cone.is_chain_map());
            assert!(r4.r4.is_chain_map());
            assert_eq!(r4.r4.internal_qdeg().unwrap(), Some(0));
            assert!(!r4.psi.is_zero());
        }
    }

    #[test]
    fn psi_equations_hold() {
        let paper = Paper::get().unwrap();
        for f in Flavor::ALL {
            let s = paper.setting(f);
            let [l, r] = &s.riv;
            let r3 = paper.r3_data(f);
            let r4 = paper.r4_data(f);
            let lhs = r4.psi_minus.differential();
            let rhs = r.phi.compose(&r3.f_minus).add(&r4.g.compose(&l.delta_minus));
            assert_eq!(lhs.difference_witness(&rhs), None);
            let lhs = r4.psi_plus.differential();
            let rhs = r3.f_plus.compose(&l.phi).add(&r.delta_plus.compose(&r4.g));
            assert_eq!(lhs.difference_witness(&rhs), None);
            let lhs = r.delta_plus.compose(&r4.psi_minus);
            assert_eq!(lhs.difference_witness(&r4.psi_plus.compose(&l.delta_minus)), None);
        }
    }

    #[test]
    fn catalog_round_trips() {
        let paper = Paper::get().unwrap();
        let cat = catalog::frozen().unwrap();
        for f in Flavor::ALL {
            for name in R3_NAMES {
                let h = paper.r3_data(f).component(name).unwrap();
                assert_eq!(&catalog::to_component(h), &cat[f.name()][name]);
            }
            for name in R4_NAMES {
                let h = paper.r4_data(f).component(name).unwrap();
                assert_eq!(&catalog::to_component(h), &cat[f.name()][name]);
            }
        }
    }

    #[test]
    fn public_accessors() {
        assert!(r3_component(Flavor::O, "omega").is_ok());
        assert!(r3_component(Flavor::O, "G").is_err());
        assert!(r4_component(Flavor::U, "psi").is_ok());
        assert!(r3_equiv(Flavor::U, true).unwrap().is_chain_map());
        assert!(r4_equiv(Flavor::O).unwrap().is_chain_map());
    }

    #[test]
    fn r2_equivalences() {
        for pos in [R2Position::PosNeg, R2Position::NegPos] {
            let eq = r2_equiv(pos).unwrap();
            eq.verify().unwrap();
            assert!(eq.f.is_chain_map() && eq.g.is_chain_map());
            assert_eq!(eq.f.internal_qdeg().unwrap(), Some(0));
            assert_eq!(eq.g.internal_qdeg().unwrap(), Some(0));
            assert_eq!(*eq.target, parallel_strands());
            assert!(!eq.h_source.is_zero());
        }
    }
}
