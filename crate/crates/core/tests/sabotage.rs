//! Negative controls: a single wrong sign or dot in the catalog must make
//! some check fail.

mod common;

use cobkh::papermorph::catalog::{self, Component};
use cobkh::papermorph::{Flavor, Paper, R3_NAMES, R4_NAMES};
use cobkh::verify::{run_all_on, run_check_on, CheckResult, Status};
use common::sabotage::{flip_sign, sabotaged, toggle_dot, CATALOG_CHECKS};

fn check(p: &Paper, name: &str) -> CheckResult {
    run_check_on(p, name).unwrap()
}

fn assert_fails(r: &CheckResult) {
    assert_eq!(r.status, Status::Fail, "{} passed after sabotage", r.name);
    assert!(r.witness.is_some());
}

#[test]
fn negated_f_minus_fails_fo_eqn_with_witness() {
    let p = sabotaged(Flavor::O, "F_minus", |c| c.entries.iter_mut().for_each(|e| e.terms[0].coeff *= -1));
    let r = check(&p, "fo_eqn");
    assert_fails(&r);
    assert!(r.witness.unwrap().contains("entry"));
}

#[test]
fn gamma_sign_fails_fo_eqn() {
    assert_fails(&check(&sabotaged(Flavor::O, "gamma", flip_sign(0, 0)), "fo_eqn"));
}

#[test]
fn omega_u_sign_fails_fu_eqn() {
    assert_fails(&check(&sabotaged(Flavor::U, "omega", flip_sign(1, 0)), "fu_eqn"));
}

#[test]
fn omega_dot_fails_fo_eqn() {
    assert_fails(&check(&sabotaged(Flavor::O, "omega", toggle_dot(0, 0, 0)), "fo_eqn"));
}

#[test]
fn f_plus_u_sign_fails_fu_eqn() {
    assert_fails(&check(&sabotaged(Flavor::U, "F_plus", flip_sign(1, 0)), "fu_eqn"));
}

#[test]
fn g_sign_fails_g_eqn() {
    assert_fails(&check(&sabotaged(Flavor::O, "G", flip_sign(2, 0)), "g_eqn"));
}

#[test]
fn g_u_dot_fails_g_eqn() {
    assert_fails(&check(&sabotaged(Flavor::U, "G", toggle_dot(0, 0, 0)), "g_eqn"));
}

#[test]
fn psi_minus_sign_fails_psi_square_eqns() {
    assert_fails(&check(&sabotaged(Flavor::O, "Psi_minus", flip_sign(0, 0)), "psi_square_eqns"));
}

#[test]
fn psi_plus_sign_fails_vanishing() {
    assert_fails(&check(&sabotaged(Flavor::U, "Psi_plus", flip_sign(0, 0)), "psi_vanishing"));
}

#[test]
fn psi_plus_dot_fails_prop_r4() {
    assert_fails(&check(&sabotaged(Flavor::O, "Psi_plus", toggle_dot(0, 0, 0)), "prop_r4"));
}

#[test]
fn s0_omega_sign_fails_lemma_hexneg() {
    // the entry of ω on the all-vertical state
    let p = sabotaged(Flavor::O, "omega", flip_sign(2, 0));
    assert_fails(&check(&p, "lemma_hexneg"));
    assert_fails(&check(&p, "mainA_hexagons"));
}

#[test]
fn s0_omega_u_sign_fails_lemma_hexpos() {
    let p = sabotaged(Flavor::U, "omega", flip_sign(1, 0));
    let failed: Vec<String> =
        run_all_on(&p, Some("lemma_*")).unwrap().into_iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    assert_eq!(failed, ["lemma_hexneg", "lemma_hexpos"]);
}

#[test]
fn f_minus_u_sign_fails_fu_eqn() {
    assert_fails(&check(&sabotaged(Flavor::U, "F_minus", flip_sign(0, 0)), "fu_eqn"));
}

#[test]
fn g_sign_breaks_the_singular_hexagon_data() {
    let p = sabotaged(Flavor::O, "G", flip_sign(0, 0));
    assert_fails(&check(&p, "mainB_zigzag"));
}

#[test]
fn every_single_sign_and_dot_flip_is_caught() {
    let cat = catalog::frozen().unwrap();
    let mut tried = 0;
    for f in Flavor::ALL {
        for name in R3_NAMES.iter().chain(&R4_NAMES) {
            let comp = &cat[f.name()][*name];
            for (e, entry) in comp.entries.iter().enumerate() {
                for (t, term) in entry.terms.iter().enumerate() {
                    let mut edits: Vec<Box<dyn FnOnce(&mut Component)>> = vec![Box::new(flip_sign(e, t))];
                    for d in 0..term.components.len() {
                        edits.push(Box::new(toggle_dot(e, t, d)));
                    }
                    for edit in edits {
                        let p = sabotaged(f, name, edit);
                        let caught = CATALOG_CHECKS.iter().any(|c| !check(&p, c).passed());
                        assert!(caught, "flavor {} {name} entry {e} term {t}: sabotage not caught", f.name());
                        tried += 1;
                    }
                }
            }
        }
    }
    assert!(tried >= 10);
    println!("{tried} single edits, all caught");
}
