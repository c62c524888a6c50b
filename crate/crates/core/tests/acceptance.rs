//! One line per acceptance criterion. Runs without the test harness so the
//! lines reach the console; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use cobkh::cobordism::rewrite::normalize_randomly;
use cobkh::cobordism::Cobordism;
use cobkh::papermorph::catalog::{self, Component};
use cobkh::papermorph::{Flavor, Paper, R3_NAMES, R4_NAMES};
use cobkh::tangle::builtin::builtin;
use cobkh::tangle::{FlatTangle, TangleDiagram};
use cobkh::tqft::{eval_map, homology, kh_singular, Coefficients, HomologyTable};
use cobkh::verify::{self, four_t_cones, run_check_on};
use common::oracle::against_oracle;
use common::random::{pick, pool, random_generator, random_pre, seed};
use common::sabotage::{flip_sign, sabotaged, toggle_dot, CATALOG_CHECKS};
use rand::rngs::StdRng;
use rand::SeedableRng;

const RUN_ALL_LIMIT: Duration = Duration::from_secs(10);
const HOMOLOGY_LIMIT: Duration = Duration::from_secs(5);
const MIN_SABOTAGE: usize = 10;
const MIN_RANDOM: usize = 200;

type Outcome = Result<String, String>;

fn run_all_passes() -> Outcome {
    let start = Instant::now();
    let results = verify::run_all(None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if let Some(r) = results.iter().find(|r| !r.passed()) {
        return Err(format!("{} failed: {}", r.name, r.witness.clone().unwrap_or_default()));
    }
    if results.len() != verify::CHECKS.len() {
        return Err(format!("{} of {} checks ran", results.len(), verify::CHECKS.len()));
    }
    if took > RUN_ALL_LIMIT {
        return Err(format!("took {took:.2?}, limit {RUN_ALL_LIMIT:?}"));
    }
    Ok(format!("{} checks, exact equality, {took:.2?} (limit {RUN_ALL_LIMIT:?})", results.len()))
}

fn negative_controls() -> Outcome {
    let cat = catalog::frozen().map_err(|e| e.to_string())?;
    let mut tried = 0;
    for f in Flavor::ALL {
        for name in R3_NAMES.iter().chain(&R4_NAMES) {
            for (e, entry) in cat[f.name()][*name].entries.iter().enumerate() {
                for (t, term) in entry.terms.iter().enumerate() {
                    let mut edits: Vec<Box<dyn FnOnce(&mut Component)>> = vec![Box::new(flip_sign(e, t))];
                    for d in 0..term.components.len() {
                        edits.push(Box::new(toggle_dot(e, t, d)));
                    }
                    for edit in edits {
                        let p: Paper = sabotaged(f, name, edit);
                        let caught = CATALOG_CHECKS.iter().any(|c| !run_check_on(&p, c).unwrap().passed());
                        if !caught {
                            return Err(format!("{}.{name} entry {e} term {t} not caught", f.name()));
                        }
                        tried += 1;
                    }
                }
            }
        }
    }
    if tried < MIN_SABOTAGE {
        return Err(format!("only {tried} edits"));
    }
    Ok(format!("{tried} single sign/dot edits, all caught (need >= {MIN_SABOTAGE})"))
}

fn normal_forms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(seed());
    let loops: Vec<FlatTangle> = (0..3).map(FlatTangle::loops_only).collect();
    let open = pool();
    let mut pairs = 0;
    while pairs < MIN_RANDOM {
        let (a, b, c) = (pick(&mut rng, &loops), pick(&mut rng, &loops), pick(&mut rng, &loops));
        let (f, g) = (random_generator(&mut rng, &a, &b), random_generator(&mut rng, &b, &c));
        let lhs = eval_map(&g.compose(&f)).map_err(|e| e.to_string())?;
        let rhs = eval_map(&g).unwrap().mul(&eval_map(&f).unwrap());
        if lhs != rhs {
            return Err(format!("functoriality fails for {f:?} then {g:?}"));
        }
        let closing = pick(&mut rng, &open);
        let (a, b, c) = (pick(&mut rng, &open), pick(&mut rng, &open), pick(&mut rng, &open));
        let (f, g) = (random_generator(&mut rng, &a, &b), random_generator(&mut rng, &b, &c));
        let close = |x: &Cobordism| eval_map(&x.close(&closing).unwrap()).unwrap();
        if close(&g.compose(&f)) != close(&g).mul(&close(&f)) {
            return Err(format!("functoriality fails after closing {f:?} then {g:?}"));
        }
        pairs += 2;
    }
    let mut surfaces = 0;
    while surfaces < MIN_RANDOM {
        let pre = random_pre(&mut rng);
        let direct = pre.normalize().map_err(|e| e.to_string())?;
        for _ in 0..3 {
            if normalize_randomly(&pre, &mut rng).map_err(|e| e.to_string())? != direct {
                return Err(format!("rewrite order changes the normal form of {pre:?}"));
            }
        }
        surfaces += 1;
    }
    Ok(format!("{pairs} generator pairs functorial, {surfaces} surfaces confluent, seed {:#x}", seed()))
}

fn timed_oracle(name: &str) -> Result<(HomologyTable, Duration), String> {
    let start = Instant::now();
    let d = builtin(name).map_err(|e| e.to_string())?;
    let z = against_oracle(name, &d)?;
    let took = start.elapsed();
    if took > HOMOLOGY_LIMIT {
        return Err(format!("{name} took {took:.2?}, limit {HOMOLOGY_LIMIT:?}"));
    }
    Ok((z, took))
}

fn homology_regression() -> Outcome {
    let (unknot, t0) = timed_oracle("unknot")?;
    let expect: Vec<(i32, i32)> = vec![(0, -1), (0, 1)];
    if unknot.groups.keys().copied().collect::<Vec<_>>() != expect
        || unknot.groups.values().any(|g| g.free != 1 || !g.torsion.is_empty())
    {
        return Err(format!("unknot:\n{unknot}"));
    }
    let (trefoil, t1) = timed_oracle("trefoil_left")?;
    let torsion: Vec<u64> = trefoil.groups.values().flat_map(|g| g.torsion.clone()).collect();
    if trefoil.support() != [-3, -2, 0] || trefoil.total_free() != 4 || torsion != [2] {
        return Err(format!("left trefoil:\n{trefoil}"));
    }
    let (hopf, t2) = timed_oracle("hopf")?;
    if hopf.total_free() != 4 || hopf.torsion_count() != 0 {
        return Err(format!("hopf:\n{hopf}"));
    }
    Ok(format!(
        "unknot {t0:.2?}, trefoil h in {{-3,-2,0}} free 4 + Z/2 {t1:.2?}, hopf free 4 {t2:.2?}; oracle agrees (limit {HOMOLOGY_LIMIT:?} each)"
    ))
}

/// The fixed closure of the six-point tangles. The braid closure turns the
/// singular crossing into a singular kink, where everything vanishes.
fn fixed_closure() -> FlatTangle {
    FlatTangle::new(6, vec![(0, 1), (2, 5), (3, 4)], 0).unwrap()
}

fn summary(t: &HomologyTable) -> String {
    format!("{} groups, free {}, torsion {}", t.groups.len(), t.total_free(), t.torsion_count())
}

fn four_t_homology() -> Outcome {
    let paper = Paper::get().map_err(|e| e.to_string())?;
    let [lhs, rhs] = four_t_cones(paper).map_err(|e| e.to_string())?;
    let fixed = fixed_closure();
    let mut detail = String::new();
    for closing in FlatTangle::planar_matchings(6) {
        let l = lhs.close(&closing).map_err(|e| e.to_string())?;
        let r = rhs.close(&closing).map_err(|e| e.to_string())?;
        for coeff in [Coefficients::Z, Coefficients::F2] {
            let a = homology(&l, coeff, false).map_err(|e| e.to_string())?;
            let b = homology(&r, coeff, false).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("closure {closing}, {coeff:?}:\n{a}vs\n{b}"));
            }
            if closing == fixed {
                if a.is_zero() {
                    return Err(format!("closure {closing}: cones vanish, comparison is vacuous"));
                }
                detail.push_str(&format!("; {coeff:?}: {}", summary(&a)));
            }
        }
    }
    Ok(format!("closure {fixed}{detail}; equal under all 5 planar closures"))
}

fn fi_vanishes() -> Outcome {
    let d = builtin("kink_sing").map_err(|e| e.to_string())?;
    for coeff in [Coefficients::Z, Coefficients::F2] {
        for simplify in [false, true] {
            let t = kh_singular(&d, coeff, simplify).map_err(|e| e.to_string())?;
            if !t.is_zero() {
                return Err(format!("{coeff:?} simplify={simplify}:\n{t}"));
            }
        }
    }
    Ok("closed singular kink: zero in every bidegree over Z and F2".into())
}

fn invariance() -> Outcome {
    let fixed = fixed_closure();
    let mut done = Vec::new();
    for (a, b) in [("sing_4T_OL", "sing_4T_OR"), ("sing_4T_UL", "sing_4T_UR"), ("r5_up", "r5_down")] {
        let (da, db) = (builtin(a).map_err(|e| e.to_string())?, builtin(b).map_err(|e| e.to_string())?);
        let closings = if da.boundary() == 0 {
            vec![FlatTangle::loops_only(0)]
        } else {
            FlatTangle::planar_matchings(da.boundary())
        };
        let mut nonzero = false;
        for closing in &closings {
            let close = |d: &TangleDiagram| if d.boundary() == 0 { Ok(d.clone()) } else { d.closure(closing) };
            let (ca, cb) = (close(&da).map_err(|e| e.to_string())?, close(&db).map_err(|e| e.to_string())?);
            for coeff in [Coefficients::Z, Coefficients::F2] {
                let ha = kh_singular(&ca, coeff, true).map_err(|e| e.to_string())?;
                let hb = kh_singular(&cb, coeff, true).map_err(|e| e.to_string())?;
                if ha != hb {
                    return Err(format!("{a} vs {b}, closure {closing}, {coeff:?}:\n{ha}vs\n{hb}"));
                }
                let pinned = da.boundary() == 0 || *closing == fixed;
                nonzero |= pinned && !ha.is_zero();
            }
        }
        if !nonzero {
            return Err(format!("{a}: homology vanishes, comparison is vacuous"));
        }
        done.push(format!("{a}~{b}"));
    }
    Ok(format!("{} agree over Z and F2 under every planar closure, nonzero at {fixed}", done.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("run_all", run_all_passes),
        ("negative_controls", negative_controls),
        ("normal_form_soundness", normal_forms),
        ("homology_regression", homology_regression),
        ("categorified_4T", four_t_homology),
        ("categorified_FI", fi_vanishes),
        ("invariance", invariance),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
