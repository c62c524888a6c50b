//! The singular hexagon and the zigzag between total complexes.

use std::sync::Arc;

use crate::chain::{kh_complex, signed_iso, total_complex, Complex, HomElement, Label, Obj, Square, Total};
use crate::error::{Error, Result};
use crate::papermorph::{phi_hat_between, Flavor, Paper};
use crate::tangle::builtin::builtin;
use crate::tangle::TangleDiagram;

/// Complexes of the six singular diagrams and the maps between them.
#[derive(Clone, Debug)]
pub struct Hexagon {
    pub lnn: Arc<Complex>,
    pub ol: Arc<Complex>,
    pub or: Arc<Complex>,
    pub ul: Arc<Complex>,
    pub ur: Arc<Complex>,
    pub rpp: Arc<Complex>,
    pub a_lnn: HomElement,
    pub b_lnn: HomElement,
    pub a_or: HomElement,
    pub b_ur: HomElement,
    pub r4_o: HomElement,
    pub r4_u: HomElement,
}

fn phi_at(d: &TangleDiagram, x: &str, src: &Arc<Complex>, tgt: &Arc<Complex>) -> Result<HomElement> {
    let k = d.crossing_index(x).ok_or_else(|| Error::Tangle(format!("no crossing `{x}`")))?;
    phi_hat_between(d, k, src, tgt)
}

fn same(c: &Arc<Complex>, name: &str) -> Result<()> {
    if **c != kh_complex(&builtin(name)?) {
        return Err(Error::Shape(format!("R4 end is not the complex of {name}")));
    }
    Ok(())
}

impl Hexagon {
    pub fn new(paper: &Paper) -> Result<Self> {
        let (r4_o, r4_u) = (paper.r4_data(Flavor::O).r4.clone(), paper.r4_data(Flavor::U).r4.clone());
        let (ol, or) = (r4_o.source.clone(), r4_o.target.clone());
        let (ul, ur) = (r4_u.source.clone(), r4_u.target.clone());
        same(&ol, "sing_4T_OL")?;
        same(&or, "sing_4T_OR")?;
        same(&ul, "sing_4T_UL")?;
        same(&ur, "sing_4T_UR")?;
        let d_lnn = builtin("sing_4T_LNN")?;
        let lnn = Arc::new(kh_complex(&d_lnn));
        let rpp = Arc::new(kh_complex(&builtin("sing_4T_RPP")?));
        Ok(Hexagon {
            a_lnn: phi_at(&d_lnn, "a", &lnn, &ol)?,
            b_lnn: phi_at(&d_lnn, "b", &lnn, &ul)?,
            a_or: phi_at(&builtin("sing_4T_OR")?, "a", &or, &rpp)?,
            b_ur: phi_at(&builtin("sing_4T_UR")?, "b", &ur, &rpp)?,
            lnn,
            ol,
            or,
            ul,
            ur,
            rpp,
            r4_o,
            r4_u,
        })
    }

    /// `Φ̂_a R4^O Φ̂_a`
    pub fn counterclockwise(&self) -> Result<HomElement> {
        self.a_or.try_compose(&self.r4_o.try_compose(&self.a_lnn)?)
    }

    /// `Φ̂_b R4^U Φ̂_b`
    pub fn clockwise(&self) -> Result<HomElement> {
        self.b_ur.try_compose(&self.r4_u.try_compose(&self.b_lnn)?)
    }

    /// The three squares of the zigzag, left to right.
    pub fn squares(&self) -> Result<[Square; 3]> {
        let left_o = self.r4_o.try_compose(&self.a_lnn)?;
        let right_u = self.b_ur.try_compose(&self.r4_u)?;
        let bottom_o = self.a_or.try_compose(&self.r4_o)?;
        let top_u = self.r4_u.try_compose(&self.b_lnn)?;
        Ok([
            Square { top: self.b_lnn.clone(), left: left_o, right: right_u.clone(), bottom: self.a_or.clone() },
            Square { top: self.b_lnn.clone(), left: self.a_lnn.clone(), right: right_u, bottom: bottom_o.clone() },
            Square { top: top_u, left: self.a_lnn.clone(), right: self.b_ur.clone(), bottom: bottom_o },
        ])
    }
}

/// A map of squares given by its four corners `[A, B, C, D]`.
pub struct SquareMap<'a> {
    pub from: &'a Square,
    pub to: &'a Square,
    pub corners: [HomElement; 4],
}

impl SquareMap<'_> {
    /// Witness of the first face that does not commute.
    pub fn check_faces(&self) -> Option<String> {
        let [a, b, c, d] = &self.corners;
        let faces = [
            ("top", self.to.top.compose(a), b.compose(&self.from.top)),
            ("left", self.to.left.compose(a), c.compose(&self.from.left)),
            ("right", self.to.right.compose(b), d.compose(&self.from.right)),
            ("bottom", self.to.bottom.compose(c), d.compose(&self.from.bottom)),
        ];
        faces.into_iter().find_map(|(name, x, y)| x.difference_witness(&y).map(|w| format!("{name} face: {w}")))
    }

    /// The induced map between the row forms of the total complexes.
    pub fn on_totals(&self, from: &Total, to: &Total) -> Result<HomElement> {
        let [a, b, c, d] = &self.corners;
        let (fp, tp) = (from.by_rows.parts(), to.by_rows.parts());
        let top = HomElement::from_blocks(&fp[1].complex, &tp[1].complex, 0, &[(0, 0, b), (1, 1, a)])?;
        let bottom = HomElement::from_blocks(&fp[0].complex, &tp[0].complex, 0, &[(0, 0, d), (1, 1, c)])?;
        HomElement::from_blocks(&from.by_rows, &to.by_rows, 0, &[(0, 0, &bottom), (1, 1, &top)])
    }
}

/// The zigzag `Tot₁ <- Tot₂ -> Tot₃`.
pub struct Zigzag {
    pub squares: [Square; 3],
    pub totals: [Total; 3],
    pub back: HomElement,
    pub forth: HomElement,
}

impl Zigzag {
    pub fn new(h: &Hexagon) -> Result<Self> {
        let squares = h.squares()?;
        let totals = [total_complex(&squares[0])?, total_complex(&squares[1])?, total_complex(&squares[2])?];
        let id = HomElement::identity;
        let back = SquareMap {
            from: &squares[1],
            to: &squares[0],
            corners: [id(&h.lnn), id(&h.ul), h.r4_o.clone(), id(&h.rpp)],
        };
        let forth = SquareMap {
            from: &squares[1],
            to: &squares[2],
            corners: [id(&h.lnn), h.r4_u.clone(), id(&h.ol), id(&h.rpp)],
        };
        for m in [&back, &forth] {
            if let Some(w) = m.check_faces() {
                return Err(Error::NotChainMap(w));
            }
        }
        let back = back.on_totals(&totals[1], &totals[0])?;
        let forth = forth.on_totals(&totals[1], &totals[2])?;
        Ok(Zigzag { squares, totals, back, forth })
    }
}

/// `Cone(Φ̂_x)` of a tagged cone, relabelled as a singular crossing `x`.
fn as_singular(label: &Label, tag: &str, x: &str) -> Label {
    let t = label.iter().find(|e| e.0 == tag).map_or(0, |e| e.1);
    label
        .iter()
        .filter(|e| e.0 != tag)
        .map(|(k, v)| if k == x { (k.clone(), v - t) } else { (k.clone(), *v) })
        .collect()
}

/// Checks that `cone` is isomorphic to the complex of a builtin with `x`
/// singular.
pub fn match_singular(cone: &Arc<Complex>, tag: &str, x: &str, name: &str) -> Result<HomElement> {
    let kh = Arc::new(kh_complex(&builtin(name)?));
    signed_iso(cone, &kh, |o: &Obj| as_singular(&o.label, tag, x), |o: &Obj| o.label.clone())
}
