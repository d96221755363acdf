use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use covercert::arith::parse_rat;
use covercert::bounds::bounds_table;
use covercert::io::parse_curve;
use covercert::pipeline::{analyze_only, verify, vset_only, Options, Verification, SCHEMA};
use covercert::suite::{run_suite, Fault};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "covercert", version, about = "Certify plane models of covers of the projective line")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on the number of series terms used while normalizing.
    #[arg(long, global = true, default_value_t = covercert::cover::DEFAULT_PREC_CAP as u64, value_parser = clap::value_parser!(u64).range(64..))]
    prec: u64,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize and compute branch data.
    Analyze { curve: PathBuf },
    /// Build the systems V and W and test membership of the model's point.
    Vset {
        curve: PathBuf,
        /// Also write the equations of V and W as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run every check and exit 0 only if all pass.
    Verify { curve: PathBuf },
    /// Evaluate Lambda and Lambda' exactly.
    Bounds {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        degree: usize,
        /// Height of the branch points, as a rational.
        #[arg(long)]
        height: Option<String>,
    },
    /// Seeded randomized checks of the height and series lemmas.
    LemmaSuite {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    ProductBound,
}

enum Outcome {
    Passed(Value, String),
    Failed(Value, String),
}

fn read_curve(path: &Path) -> Result<covercert::io::Curve, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_curve(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn checks_text(v: &Verification) -> String {
    let mut s = String::new();
    for c in &v.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        if c.passed {
            s.push_str(&format!("{mark} {}\n", c.clause));
        } else {
            s.push_str(&format!("{mark} {}: {}\n", c.clause, c.message));
        }
    }
    if let Some(omega) = v.sections.get("cover").and_then(|c| c.get("omega")) {
        s.push_str(&format!("omega = {omega}\n"));
    }
    if let Some(f) = v.sections.get("model").and_then(|m| m.get("f_text")).and_then(Value::as_str) {
        s.push_str(&format!("f = {f}\n"));
    }
    s
}

fn from_verification(v: Verification, seed: u64) -> Outcome {
    let mut j = v.to_json();
    j["seed"] = json!(seed);
    let text = checks_text(&v);
    if v.passed() {
        Outcome::Passed(j, text)
    } else {
        Outcome::Failed(j, text)
    }
}

fn execute(cli: &Cli) -> Result<Outcome, String> {
    let opts = Options { prec_cap: cli.prec as usize };
    match &cli.command {
        Command::Analyze { curve } => {
            let v = analyze_only(&read_curve(curve)?, &opts).map_err(|e| e.to_string())?;
            Ok(from_verification(v, cli.seed))
        }
        Command::Vset { curve, emit } => {
            let (v, emitted) = vset_only(&read_curve(curve)?, &opts).map_err(|e| e.to_string())?;
            if let (Some(path), Some(e)) = (emit, emitted) {
                let text = serde_json::to_string_pretty(&e).expect("JSON values serialize");
                fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(from_verification(v, cli.seed))
        }
        Command::Verify { curve } => {
            let v = verify(&read_curve(curve)?, &opts).map_err(|e| e.to_string())?;
            Ok(from_verification(v, cli.seed))
        }
        Command::Bounds { genus, degree, height } => {
            let h = height.as_deref().map(parse_rat).transpose().map_err(|e| e.to_string())?;
            let mut t = bounds_table(*genus, *degree, h.as_ref()).map_err(|e| e.to_string())?;
            t["schema"] = json!(SCHEMA);
            let mut text = format!(
                "Lambda({genus}, {degree}) = {}\nLambda'({}, {degree}) = {}\nLambda' <= Lambda: {}\n",
                t["Lambda"].as_str().unwrap(),
                genus + 1,
                t["LambdaPrime"].as_str().unwrap(),
                t["LambdaPrime_le_Lambda"]
            );
            if h.is_some() {
                text.push_str(&format!(
                    "Lambda (h + 1) = {}\nLambda' (h + 1) = {}\n",
                    t["Lambda_h1"].as_str().unwrap(),
                    t["LambdaPrime_h1"].as_str().unwrap()
                ));
            }
            Ok(Outcome::Passed(t, text))
        }
        Command::LemmaSuite { count, inject_fault } => {
            let fault = inject_fault.map(|f| match f {
                FaultArg::ProductBound => Fault::ProductBound,
            });
            let r = run_suite(cli.seed, *count as usize, fault);
            let mut j = r.to_json();
            j["schema"] = json!(SCHEMA);
            let mut text = String::new();
            for l in &r.lemmas {
                text.push_str(&format!("{:<14} passed {:>5}  failed {:>3}  skipped {:>3}\n", l.name, l.passed, l.failed, l.skipped));
            }
            if let Some(c) = &r.counterexample {
                text.push_str(&format!("counterexample: {c}\n"));
            }
            Ok(if r.passed() { Outcome::Passed(j, text) } else { Outcome::Failed(j, text) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match execute(&cli) {
        Ok(Outcome::Passed(j, t)) => (if cli.json { j } else { Value::String(t) }, 0),
        Ok(Outcome::Failed(j, t)) => (if cli.json { j } else { Value::String(t) }, 1),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match body {
        Value::String(s) => s,
        j => serde_json::to_string_pretty(&j).expect("JSON values serialize") + "\n",
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
