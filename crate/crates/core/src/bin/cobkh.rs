use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use cobkh::chain::{kh_complex, simplify};
use cobkh::papermorph::{self, Flavor, R3_NAMES, R4_NAMES};
use cobkh::tangle::builtin::{builtin, names};
use cobkh::tangle::TangleDiagram;
use cobkh::tqft::{kh_link, Coefficients};
use cobkh::verify::{self, CHECKS};
use cobkh::Error;

#[derive(Parser)]
#[command(name = "cobkh", version, about = "Khovanov complexes of singular tangles and the categorified 4T verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification checks.
    Verify {
        /// Check name or glob pattern.
        #[arg(long)]
        check: Option<String>,
        /// Print `{"name": "pass"|"fail"}`.
        #[arg(long)]
        json: bool,
        /// Full indented report.
        #[arg(long)]
        pretty: bool,
    },
    /// Khovanov homology of a closed diagram (a JSON file or `builtin:NAME`).
    Kh {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        #[arg(long)]
        no_simplify: bool,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Dump the Khovanov complex of a diagram.
    ShowComplex {
        diagram: String,
        /// Deloop and cancel isomorphisms first.
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Dump a named morphism, e.g. `O.gamma`, `U.r4`, `phi`.
    DumpMorphism {
        name: String,
        #[arg(long)]
        pretty: bool,
    },
    /// List builtins, checks and morphism names.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Z,
    F2,
}

enum Failure {
    Checks,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn say(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn emit(v: &Value, pretty: bool) {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    say(&s.expect("json values serialize"));
}

fn load(spec: &str) -> Result<TangleDiagram, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
    Ok(TangleDiagram::parse_json(&text)?)
}

fn morphism_names() -> Vec<String> {
    let mut out = vec!["phi".to_string(), "phi_L".to_string(), "phi_R".to_string()];
    for f in Flavor::ALL {
        let extra = ["psi", "r3_minus", "r3_plus", "r4"];
        for n in R3_NAMES.iter().chain(&R4_NAMES).chain(&extra) {
            out.push(format!("{}.{n}", f.name()));
        }
    }
    out
}

fn morphism(name: &str) -> Result<Value, Failure> {
    match name {
        "phi" => return Ok(papermorph::phi().to_json()),
        "phi_L" => return Ok(papermorph::phi_lr(papermorph::Side::L).to_json()),
        "phi_R" => return Ok(papermorph::phi_lr(papermorph::Side::R).to_json()),
        _ => {}
    }
    let unknown = || Failure::Input(format!("unknown morphism `{name}`; see `cobkh list`"));
    let (f, rest) = name.split_once('.').ok_or_else(unknown)?;
    let f = Flavor::ALL.into_iter().find(|x| x.name() == f).ok_or_else(unknown)?;
    let h = match rest {
        "r3_minus" => papermorph::r3_equiv(f, true)?,
        "r3_plus" => papermorph::r3_equiv(f, false)?,
        "r4" => papermorph::r4_equiv(f)?,
        n if R3_NAMES.contains(&n) => papermorph::r3_component(f, n)?,
        n if R4_NAMES.contains(&n) || n == "psi" => papermorph::r4_component(f, n)?,
        _ => return Err(unknown()),
    };
    Ok(h.to_json())
}

fn run_verify(check: Option<&str>, as_map: bool, pretty: bool) -> Result<(), Failure> {
    if let Some(c) = check {
        let is_pattern = c.contains(['*', '?', '[']);
        if !is_pattern && !CHECKS.contains(&c) {
            return Err(Error::UnknownCheck(c.to_string()).into());
        }
    }
    let results = verify::run_all(check)?;
    if as_map {
        let m: Map<String, Value> = results.iter().map(|r| (r.name.clone(), json!(r.status.as_str()))).collect();
        emit(&Value::Object(m), pretty);
    } else if pretty {
        emit(&verify::report_json(&results), true);
    } else {
        for r in &results {
            say(&format!("{:<22} {:<5} {:>6} ms", r.name, r.status.as_str(), r.millis));
            if let Some(w) = &r.witness {
                say(&format!("    {w}"));
            }
        }
    }
    if verify::all_passed(&results) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify { check, json, pretty } => run_verify(check.as_deref(), json, pretty),
        Command::Kh { diagram, coeff, no_simplify, pretty } => {
            let d = load(&diagram)?;
            let coeff = match coeff {
                Coeff::Z => Coefficients::Z,
                Coeff::F2 => Coefficients::F2,
            };
            let table = kh_link(&d, coeff, !no_simplify)?;
            if pretty {
                say(table.to_string().trim_end());
            } else {
                emit(&table.to_json(), false);
            }
            Ok(())
        }
        Command::ShowComplex { diagram, simplify: small, pretty } => {
            let c = Arc::new(kh_complex(&load(&diagram)?));
            let c = if small { simplify(&c)?.target } else { c };
            emit(&c.to_json(), pretty);
            Ok(())
        }
        Command::DumpMorphism { name, pretty } => {
            emit(&morphism(&name)?, pretty);
            Ok(())
        }
        Command::List => {
            emit(&json!({"builtins": names(), "checks": CHECKS, "morphisms": morphism_names()}), true);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
