//! Named checks of every displayed identity, with a JSON report.
//!
//! Equalities are exact in the dotted quotient; every check runs against
//! a [`Paper`], so a modified catalog can be verified the same way.

mod four_t;

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub use four_t::{match_singular, Hexagon, SquareMap, Zigzag};

use crate::chain::{check_complex, kh_complex, HomElement};
use crate::error::{Error, Result};
use crate::papermorph::{phi_hat, phi_lr, s0_map, Flavor, Paper, Side};
use crate::tangle::builtin::{builtin, names};
use crate::tangle::{CrossingKind, FlatTangle};
use crate::tqft::{homology, Coefficients};

pub const NOTE: &str = "verified in dotted quotient";

/// Check names in report order.
pub const CHECKS: [&str; 16] = [
    "complexes",
    "phi_hat_chainmap",
    "phi_hat_degree",
    "fo_eqn",
    "fu_eqn",
    "g_eqn",
    "psi_square_eqns",
    "psi_vanishing",
    "prop_r4",
    "lemma_hexneg",
    "lemma_hexpos",
    "mainA_hexagons",
    "mainA_prism",
    "mainB_hexagon",
    "mainB_zigzag",
    "mainB_cones_homology",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

type Outcome = std::result::Result<(), String>;

fn fail(what: impl Into<String>) -> Outcome {
    Err(what.into())
}

fn err(e: Error) -> String {
    e.to_string()
}

/// `lhs == rhs`, or a witness prefixed by `what`.
fn equal(what: &str, lhs: &HomElement, rhs: &HomElement) -> Outcome {
    match lhs.difference_witness(rhs) {
        None => Ok(()),
        Some(w) => fail(format!("{what}: {w}")),
    }
}

fn zero(what: &str, h: &HomElement) -> Outcome {
    equal(what, h, &HomElement::zero(&h.source, &h.target, h.degree))
}

fn chain_map(what: &str, h: &HomElement) -> Outcome {
    if h.degree != 0 {
        return fail(format!("{what}: homological degree {}", h.degree));
    }
    zero(&format!("{what} is not a chain map"), &h.differential())
}

fn q_degree_zero(what: &str, h: &HomElement) -> Outcome {
    match h.internal_qdeg() {
        Ok(None) | Ok(Some(0)) => Ok(()),
        Ok(Some(k)) => fail(format!("{what}: q-degree {k}")),
        Err(e) => fail(format!("{what}: {e}")),
    }
}

fn complexes(_: &Paper) -> Outcome {
    for n in names() {
        let d = builtin(&n).map_err(err)?;
        let r = check_complex(&kh_complex(&d));
        if let Some(f) = r.failures.first() {
            return fail(format!("{n}: {f}"));
        }
    }
    Ok(())
}

/// `Φ̂` at every negative crossing of every builtin, and the ones the
/// paper data is built from.
fn phi_hats(paper: &Paper) -> Result<Vec<(String, HomElement)>> {
    let mut out = Vec::new();
    for n in names() {
        let d = builtin(&n)?;
        for x in d.crossings() {
            if x.kind == CrossingKind::Neg {
                out.push((format!("{n} at {}", x.id), phi_hat(&d, &x.id)?));
            }
        }
    }
    for f in Flavor::ALL {
        let s = paper.setting(f);
        let maps = [&s.phi_c[0], &s.phi_c[1], &s.hex_in_minus, &s.hex_out_minus, &s.hex_in_plus, &s.hex_out_plus];
        out.extend(maps.into_iter().map(|h| (format!("flavor {} setting", f.name()), h.clone())));
    }
    Ok(out)
}

fn phi_hat_chainmap(paper: &Paper) -> Outcome {
    for (what, h) in phi_hats(paper).map_err(err)? {
        chain_map(&what, &h)?;
    }
    Ok(())
}

fn phi_hat_degree(paper: &Paper) -> Outcome {
    for (what, h) in phi_hats(paper).map_err(err)? {
        if h.degree != 0 {
            return fail(format!("{what}: homological degree {}", h.degree));
        }
        q_degree_zero(&what, &h)?;
    }
    Ok(())
}

fn r3_eqn(paper: &Paper, f: Flavor) -> Outcome {
    let s = paper.setting(f);
    let d = paper.r3_data(f);
    let [l, r] = &s.riv;
    chain_map("gamma", &d.gamma)?;
    chain_map("omega", &d.omega)?;
    let rhs = r.delta_minus.compose(&d.gamma).add(&d.omega.compose(&l.delta_minus));
    equal("dF_minus", &d.f_minus.differential(), &rhs)?;
    let rhs = r.delta_plus.compose(&d.omega).sub(&d.gamma.compose(&l.delta_plus));
    equal("dF_plus", &d.f_plus.differential(), &rhs)?;
    for (what, h) in
        [("R3 minus", &d.minus_cone), ("R3 plus", &d.plus_cone), ("R3 minus", &d.minus), ("R3 plus", &d.plus)]
    {
        chain_map(what, h)?;
        q_degree_zero(what, h)?;
    }
    Ok(())
}

fn each_flavor(paper: &Paper, check: impl Fn(&Paper, Flavor) -> Outcome) -> Outcome {
    for f in Flavor::ALL {
        check(paper, f).map_err(|w| format!("flavor {}: {w}", f.name()))?;
    }
    Ok(())
}

fn g_eqn(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let [l, r] = &p.setting(f).riv;
        let (omega, g) = (&p.r3_data(f).omega, &p.r4_data(f).g);
        let rhs = r.phi.compose(omega).add(&omega.compose(&l.phi)).neg();
        equal("dG", &g.differential(), &rhs)
    })
}

fn psi_square_eqns(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let [l, r] = &p.setting(f).riv;
        let (d3, d4) = (p.r3_data(f), p.r4_data(f));
        let rhs = r.phi.compose(&d3.f_minus).add(&d4.g.compose(&l.delta_minus));
        equal("dPsi_minus", &d4.psi_minus.differential(), &rhs)?;
        let rhs = d3.f_plus.compose(&l.phi).add(&r.delta_plus.compose(&d4.g));
        equal("dPsi_plus", &d4.psi_plus.differential(), &rhs)
    })
}

fn psi_vanishing(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let [l, r] = &p.setting(f).riv;
        let d4 = p.r4_data(f);
        equal("vanishing term", &r.delta_plus.compose(&d4.psi_minus), &d4.psi_plus.compose(&l.delta_minus))
    })
}

fn prop_r4(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let s = p.setting(f);
        let (d3, d4) = (p.r3_data(f), p.r4_data(f));
        let rhs = s.phi_c[1].compose(&d3.minus).sub(&d3.plus.compose(&s.phi_c[0]));
        equal("dpsi", &d4.psi.differential(), &rhs)?;
        chain_map("R4", &d4.r4_cone)?;
        chain_map("R4", &d4.r4)?;
        q_degree_zero("R4", &d4.r4)
    })
}

fn s0() -> crate::cobordism::Cobordism {
    phi_lr(Side::R).compose(&phi_lr(Side::L))
}

fn hex_minus(p: &Paper, f: Flavor) -> HomElement {
    let s = p.setting(f);
    s.hex_out_minus.compose(&p.r3_data(f).minus).compose(&s.hex_in_minus)
}

fn hex_plus(p: &Paper, f: Flavor) -> HomElement {
    let s = p.setting(f);
    s.hex_out_plus.compose(&p.r3_data(f).plus).compose(&s.hex_in_plus)
}

fn lemma_hexneg(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let h = hex_minus(p, f);
        let want = s0_map(&h.source, &h.target, &s0().neg()).map_err(err)?;
        equal("composite vs -Phi_R Phi_L at s0", &h, &want)
    })
}

fn lemma_hexpos(paper: &Paper) -> Outcome {
    each_flavor(paper, |p, f| {
        let h = hex_plus(p, f);
        let want = s0_map(&h.source, &h.target, &s0()).map_err(err)?;
        equal("composite vs Phi_R Phi_L at s0", &h, &want)
    })
}

fn main_a_hexagons(paper: &Paper) -> Outcome {
    equal("minus hexagon", &hex_minus(paper, Flavor::O), &hex_minus(paper, Flavor::U))?;
    equal("plus hexagon", &hex_plus(paper, Flavor::O), &hex_plus(paper, Flavor::U))
}

fn prism(p: &Paper, f: Flavor) -> HomElement {
    let s = p.setting(f);
    s.hex_out_plus.compose(&p.r4_data(f).psi).compose(&s.hex_in_minus)
}

fn main_a_prism(paper: &Paper) -> Outcome {
    let (o, u) = (prism(paper, Flavor::O), prism(paper, Flavor::U));
    zero("Phi_a psi_O Phi_a", &o)?;
    zero("Phi_b psi_U Phi_b", &u)?;
    zero("prism", &o.sub(&u))
}

fn main_b_hexagon(paper: &Paper) -> Outcome {
    let h = Hexagon::new(paper).map_err(err)?;
    for (what, m) in [("Phi_a", &h.a_lnn), ("Phi_b", &h.b_lnn), ("Phi_a", &h.a_or), ("Phi_b", &h.b_ur)] {
        chain_map(what, m)?;
    }
    let ccw = h.counterclockwise().map_err(err)?;
    let cw = h.clockwise().map_err(err)?;
    if ccw.is_zero() {
        return fail("both sides of the hexagon vanish");
    }
    equal("singular hexagon", &ccw, &cw)
}

fn main_b_zigzag(paper: &Paper) -> Outcome {
    let h = Hexagon::new(paper).map_err(err)?;
    let z = Zigzag::new(&h).map_err(err)?;
    chain_map("Tot2 -> Tot1", &z.back)?;
    chain_map("Tot2 -> Tot3", &z.forth)?;
    q_degree_zero("Tot2 -> Tot1", &z.back)?;
    q_degree_zero("Tot2 -> Tot3", &z.forth)?;
    for t in &z.totals {
        if let Some(f) = check_complex(&t.by_rows).failures.first() {
            return fail(f.clone());
        }
    }
    Ok(())
}

/// The two cones of Main Theorem B, with their rows/columns matched to the
/// complexes of the four 4T diagrams.
pub fn four_t_cones(paper: &Paper) -> Result<[Arc<crate::chain::Complex>; 2]> {
    let h = Hexagon::new(paper)?;
    let z = Zigzag::new(&h)?;
    let (t1, t3) = (&z.totals[0], &z.totals[2]);
    let rows = t1.by_rows.parts();
    match_singular(&rows[1].complex, "x", "b", "fourT_LND")?;
    match_singular(&rows[0].complex, "x", "a", "fourT_RDP")?;
    let cols = t3.by_columns.parts();
    match_singular(&cols[1].complex, "y", "a", "fourT_LDN")?;
    match_singular(&cols[0].complex, "y", "b", "fourT_RPD")?;
    Ok([t1.by_rows.clone(), t3.by_columns.clone()])
}

fn main_b_cones_homology(paper: &Paper) -> Outcome {
    let [lhs, rhs] = four_t_cones(paper).map_err(err)?;
    let mut nonzero = 0;
    for closing in FlatTangle::planar_matchings(lhs.boundary()) {
        let (l, r) = (lhs.close(&closing).map_err(err)?, rhs.close(&closing).map_err(err)?);
        for coeff in [Coefficients::Z, Coefficients::F2] {
            let a = homology(&l, coeff, true).map_err(err)?;
            let b = homology(&r, coeff, true).map_err(err)?;
            if a != b {
                return fail(format!("closure {closing}, {coeff:?}: {a} vs {b}"));
            }
            nonzero += usize::from(!a.is_zero());
        }
    }
    if nonzero == 0 {
        return fail("both cones vanish under every closure");
    }
    Ok(())
}

fn lookup(name: &str) -> Option<fn(&Paper) -> Outcome> {
    let f: fn(&Paper) -> Outcome = match name {
        "complexes" => complexes,
        "phi_hat_chainmap" => phi_hat_chainmap,
        "phi_hat_degree" => phi_hat_degree,
        "fo_eqn" => |p| r3_eqn(p, Flavor::O),
        "fu_eqn" => |p| r3_eqn(p, Flavor::U),
        "g_eqn" => g_eqn,
        "psi_square_eqns" => psi_square_eqns,
        "psi_vanishing" => psi_vanishing,
        "prop_r4" => prop_r4,
        "lemma_hexneg" => lemma_hexneg,
        "lemma_hexpos" => lemma_hexpos,
        "mainA_hexagons" => main_a_hexagons,
        "mainA_prism" => main_a_prism,
        "mainB_hexagon" => main_b_hexagon,
        "mainB_zigzag" => main_b_zigzag,
        "mainB_cones_homology" => main_b_cones_homology,
        _ => return None,
    };
    Some(f)
}

/// Runs one check against the given data.
pub fn run_check_on(paper: &Paper, name: &str) -> Result<CheckResult> {
    let check = lookup(name).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
    let start = Instant::now();
    let outcome = check(paper);
    let millis = start.elapsed().as_millis() as u64;
    let (status, witness) = match outcome {
        Ok(()) => (Status::Pass, None),
        Err(w) => (Status::Fail, Some(w)),
    };
    Ok(CheckResult { name: name.to_string(), status, millis, witness })
}

/// Runs one check against the frozen catalog. A catalog that does not
/// load fails every check.
pub fn run_check(name: &str) -> Result<CheckResult> {
    lookup(name).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
    match Paper::get() {
        Ok(p) => run_check_on(p, name),
        Err(e) => {
            Ok(CheckResult { name: name.to_string(), status: Status::Fail, millis: 0, witness: Some(e.to_string()) })
        }
    }
}

/// Names matching a glob pattern, in report order.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static str>> {
    let Some(pattern) = filter else {
        return Ok(CHECKS.to_vec());
    };
    let pat = glob::Pattern::new(pattern).map_err(|e| Error::UnknownCheck(format!("{pattern}: {e}")))?;
    Ok(CHECKS.iter().copied().filter(|n| pat.matches(n)).collect())
}

/// Runs the matching checks concurrently; results keep report order.
pub fn run_all_on(paper: &Paper, filter: Option<&str>) -> Result<Vec<CheckResult>> {
    let names = select(filter)?;
    std::thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|n| scope.spawn(move || run_check_on(paper, n))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    })
}

pub fn run_all(filter: Option<&str>) -> Result<Vec<CheckResult>> {
    match Paper::get() {
        Ok(p) => run_all_on(p, filter),
        Err(_) => select(filter)?.into_iter().map(run_check).collect(),
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(CheckResult::passed)
}

/// `[{name, status, millis, witness?, note?}]`
pub fn report_json(results: &[CheckResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).expect("serializable");
                if r.passed() {
                    v["note"] = json!(NOTE);
                }
                v
            })
            .collect(),
    )
}
