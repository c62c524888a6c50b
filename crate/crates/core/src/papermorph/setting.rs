//! The complexes and structure maps around one flavor of the R3 move:
//! the diagrams smoothed at `c`, the saddles and `Φ` between them, and the
//! cone decompositions of the full Khovanov complexes.

use std::sync::Arc;

use super::{phi_hat_between, Flavor};
use crate::chain::{
    cone_tagged, kh_complex, matching_inverse, phi_on_state, shift, signed_iso, state_obj, state_surface, Complex,
    HomElement, Label, Mat, Obj,
};
use crate::cobordism::Cobordism;
use crate::error::{Error, Result};
use crate::tangle::builtin::builtin;
use crate::tangle::{CrossingKind, Resolution, Smoothing, State, TangleDiagram};

/// The two smoothings of one side at `c`, with the maps between them.
#[derive(Clone, Debug)]
pub struct Riv {
    pub h: Arc<Complex>,
    pub v: Arc<Complex>,
    /// `δ₋: H -> V`
    pub delta_minus: HomElement,
    /// `δ₊: V -> H`
    pub delta_plus: HomElement,
    /// `Φ` at `c` on the vertical smoothing.
    pub phi: HomElement,
}

/// A complex together with its cone decomposition and the identifications.
#[derive(Clone, Debug)]
pub struct Decomposed {
    pub kh: Arc<Complex>,
    pub cone: Arc<Complex>,
    pub to_cone: HomElement,
    pub from_cone: HomElement,
}

impl Decomposed {
    fn new(kh: Arc<Complex>, cone: Complex, key: impl Fn(&Obj) -> Label) -> Result<Self> {
        let cone = Arc::new(cone);
        let to_cone = signed_iso(&kh, &cone, |o| o.label.clone(), key)?;
        let from_cone = matching_inverse(&to_cone)?;
        Ok(Decomposed { kh, cone, to_cone, from_cone })
    }

    /// Transports a map between cones to the Khovanov complexes.
    pub fn conjugate(from: &Decomposed, to: &Decomposed, f: &HomElement) -> Result<HomElement> {
        to.from_cone.try_compose(&f.try_compose(&from.to_cone)?)
    }
}

/// Everything about one flavor, indexed `[left, right]`.
#[derive(Clone, Debug)]
pub struct Setting {
    pub flavor: Flavor,
    pub diagrams_minus: [TangleDiagram; 2],
    pub diagrams_plus: [TangleDiagram; 2],
    pub riv: [Riv; 2],
    /// `Kh(minus) ≅ Cone(δ₋)`
    pub minus: [Decomposed; 2],
    /// `Kh(plus) ≅ Cone(δ₊)[1]`
    pub plus: [Decomposed; 2],
    /// `Φ̂_c: Kh(minus) -> Kh(plus)`
    pub phi_c: [HomElement; 2],
    /// `Kh(singular) ≅ Cone(Φ̂_c)`
    pub sing: [Decomposed; 2],
    /// `Φ̂_x` with `x` the hexagon crossing: `Kh(LMR) -> Kh(minus left)`.
    pub hex_in_minus: HomElement,
    /// `Kh(minus right) -> Kh(delta_right)`
    pub hex_out_minus: HomElement,
    /// `Kh(delta_left) -> Kh(plus left)`
    pub hex_in_plus: HomElement,
    /// `Kh(plus right) -> Kh(RML)`
    pub hex_out_plus: HomElement,
}

const C: &str = "c";

fn two<T>(v: Vec<T>) -> [T; 2] {
    v.try_into().unwrap_or_else(|_| unreachable!("one entry per side"))
}

fn side_name(right: bool) -> &'static str {
    if right {
        "right"
    } else {
        "left"
    }
}

/// Replaces the cone tag `(tag, t)` by a crossing index `f(t)` for `c`.
fn retag(label: &Label, tag: &str, f: impl Fn(i32, Option<i32>) -> i32) -> Label {
    let t = label.iter().find(|(k, _)| k == tag).map(|e| e.1).expect("cone tag");
    let old = if tag == C { None } else { label.iter().find(|(k, _)| k == C).map(|e| e.1) };
    let mut out: Label = label.iter().filter(|(k, _)| k != tag && k != C).cloned().collect();
    out.push((C.to_string(), f(t, old)));
    out
}

impl Setting {
    pub fn new(flavor: Flavor) -> Result<Self> {
        let get = |right: bool, name: &str| builtin(&format!("r3_{}_{name}", side_name(right)));
        let diagrams_minus = [get(false, flavor.minus_name())?, get(true, flavor.minus_name())?];
        let diagrams_plus = [get(false, flavor.plus_name())?, get(true, flavor.plus_name())?];
        let mut riv = Vec::new();
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        let mut phi_c = Vec::new();
        let mut sing = Vec::new();
        for s in 0..2 {
            let (dm, dp) = (&diagrams_minus[s], &diagrams_plus[s]);
            let r = Riv::new(dm, dp)?;
            let km = Arc::new(kh_complex(dm));
            let kp = Arc::new(kh_complex(dp));
            // the smoothed complexes carry no q-shift for c
            let c_shift = |kind: CrossingKind, idx: fn(i32) -> i32| {
                move |o: &Obj| kind.q_shift(idx(o.label.iter().find(|e| e.0 == C).expect("cone tag").1))
            };
            let cm = cone_tagged(&r.delta_minus, C)?.shift_q(c_shift(CrossingKind::Neg, |t| -t));
            minus.push(Decomposed::new(km.clone(), cm, |o| retag(&o.label, C, |t, _| -t))?);
            let cp = Arc::new(cone_tagged(&r.delta_plus, C)?);
            let cp = shift(&cp, 1, 0).shift_q(c_shift(CrossingKind::Pos, |t| 1 - t));
            plus.push(Decomposed::new(kp.clone(), cp, |o| retag(&o.label, C, |t, _| 1 - t))?);
            let k = dm.crossing_index(C).expect("crossing c");
            let f = phi_hat_between(dm, k, &km, &kp)?;
            let ds = dm.with_kind(C, CrossingKind::Sing)?;
            let cs = cone_tagged(&f, "cone")?;
            sing.push(Decomposed::new(Arc::new(kh_complex(&ds)), cs, |o| {
                retag(&o.label, "cone", |t, old| old.expect("c index") - t)
            })?);
            phi_c.push(f);
            riv.push(r);
        }
        let x = flavor.hex_crossing();
        let (minus, plus) = (two(minus), two(plus));
        let hex = |from: &TangleDiagram, to: &TangleDiagram, src: Option<&Arc<Complex>>, tgt: Option<&Arc<Complex>>| {
            if from.with_kind(x, CrossingKind::Pos)?.kinds() != to.kinds() {
                return Err(Error::Tangle(format!("flipping {x} does not give the expected diagram")));
            }
            let src = src.cloned().unwrap_or_else(|| Arc::new(kh_complex(from)));
            let tgt = tgt.cloned().unwrap_or_else(|| Arc::new(kh_complex(to)));
            phi_hat_between(from, from.crossing_index(x).expect("crossing"), &src, &tgt)
        };
        let (lmr, rml) = (builtin("r3_left_LMR")?, builtin("r3_right_RML")?);
        let (dl, dr) = (builtin("delta_left")?, builtin("delta_right")?);
        let hex_in_minus = hex(&lmr, &diagrams_minus[0], None, Some(&minus[0].kh))?;
        let hex_out_minus = hex(&diagrams_minus[1], &dr, Some(&minus[1].kh), None)?;
        let hex_in_plus = hex(&dl, &diagrams_plus[0], None, Some(&plus[0].kh))?;
        let hex_out_plus = hex(&diagrams_plus[1], &rml, Some(&plus[1].kh), None)?;
        Ok(Setting {
            flavor,
            hex_in_minus,
            hex_out_minus,
            hex_in_plus,
            hex_out_plus,
            diagrams_minus,
            diagrams_plus,
            riv: two(riv),
            minus,
            plus,
            phi_c: two(phi_c),
            sing: two(sing),
        })
    }
}

impl Riv {
    /// Built from the diagram with `c` negative (for `δ₋` and `Φ`) and the
    /// one with `c` positive (for `δ₊`).
    fn new(minus: &TangleDiagram, plus: &TangleDiagram) -> Result<Self> {
        let k = minus.crossing_index(C).expect("crossing c");
        let h = Arc::new(kh_complex(&minus.smooth_crossing(C, Smoothing::H)?));
        let v = Arc::new(kh_complex(&minus.smooth_crossing(C, Smoothing::V)?));
        if kh_complex(&plus.smooth_crossing(C, Smoothing::V)?) != *v {
            return Err(Error::Shape("smoothings of the two sides differ".into()));
        }
        let delta_minus = c_face(minus, k, (-1, 0), &h, &v, |a, b| state_surface(minus, a, b, &[k]))?;
        let delta_plus = c_face(plus, k, (0, 1), &v, &h, |a, b| state_surface(plus, a, b, &[k]))?;
        let phi = c_face(minus, k, (0, 0), &v, &v, |a, _| phi_on_state(minus, a, k))?;
        Ok(Riv { h, v, delta_minus, delta_plus, phi })
    }
}

/// A degree 0 map between complexes of `full` smoothed at crossing `k`,
/// computed in the full diagram between the states with `k` at the given
/// indices and carried over by identity surfaces.
fn c_face(
    full: &TangleDiagram,
    k: usize,
    (from, to): (i32, i32),
    src: &Arc<Complex>,
    tgt: &Arc<Complex>,
    make: impl Fn(&Resolution, &Resolution) -> Cobordism,
) -> Result<HomElement> {
    let id = &full.crossings()[k].id;
    let full_state = |o: &Obj, i: i32| -> State {
        State(
            full.crossings()
                .iter()
                .map(|x| if &x.id == id { i } else { o.label.iter().find(|e| e.0 == x.id).expect("crossing label").1 })
                .collect(),
        )
    };
    let mut out = HomElement::zero(src, tgt, 0);
    for n in src.degrees() {
        let mut m = Mat::zeros(tgt.rank(n), src.rank(n));
        for (col, o) in src.objects(n).iter().enumerate() {
            let (tn, row) = tgt.find(&o.label).ok_or_else(|| Error::Shape("face target missing".into()))?;
            if tn != n {
                return Err(Error::Shape("face changes degree".into()));
            }
            let (mut fa, ra) = state_obj(full, &full_state(o, from))?;
            let (mut fb, rb) = state_obj(full, &full_state(o, to))?;
            let ob = &tgt.objects(n)[row];
            fa.q = o.q;
            fb.q = ob.q;
            let into = o.identity_to(&fa).ok_or_else(|| Error::Shape("smoothing does not match".into()))?;
            let back = fb.identity_to(ob).ok_or_else(|| Error::Shape("smoothing does not match".into()))?;
            m.add_at(row, col, back.compose(&make(&ra, &rb)).compose(&into));
        }
        out.set(n, m)?;
    }
    Ok(out)
}
