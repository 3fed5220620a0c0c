use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use preserver::bruteforce::{self, CASES};
use preserver::corollary::{self, render, RunConfig, COROLLARIES, OUT_OF_SCOPE};
use preserver::minimality::{self, Oracle, RrsPolicy};
use preserver::multilinear::{bilinear_bx, polarize4, radical_dimension};
use preserver::verify::PolicyKind;
use preserver::{Error, Field, Line, RepVector};

#[derive(Parser)]
#[command(name = "preserver", version, about = "Exact checks of linear preservers of invariant forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a form on a vector.
    Eval {
        #[arg(long)]
        form: Line,
        /// JSON vector file, `-` for stdin.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        field: Option<Field>,
    },
    /// Decide minimality with one oracle.
    Minimal {
        #[arg(long)]
        form: Line,
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        field: Option<Field>,
        #[arg(long, default_value = "rank")]
        oracle: Oracle,
        /// For the rrs oracle: `symbolic` or `randomized`.
        #[arg(long, default_value = "symbolic")]
        policy: PolicyKind,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every suite for one statement and write a JSON report.
    Verify {
        #[arg(long)]
        corollary: String,
        #[arg(long, default_value = "Q")]
        field: Field,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "auto")]
        policy: PolicyKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an exhaustive finite-field case.
    Bruteforce {
        #[arg(value_name = "CASE", required_unless_present = "case")]
        case_id: Option<String>,
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polarize a quartic: four vectors give F(x1..x4), one vector gives b_x.
    Polarize {
        #[arg(long)]
        form: Line,
        /// JSON array of one or four vectors.
        #[arg(long, default_value = "-")]
        input: PathBuf,
        #[arg(long)]
        field: Option<Field>,
    },
    /// List forms, statements and cases.
    List,
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("parsing {}: {e}", path.display())))
}

/// The field given on the command line, else the one declared in the input, else `Q`.
fn field_of(value: &Value, explicit: Option<Field>) -> Result<Field, Failure> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    let declared = match value {
        Value::Array(items) => items.first().and_then(|v| v.get("field")),
        other => other.get("field"),
    };
    match declared.and_then(Value::as_str) {
        Some(s) => Ok(s.parse()?),
        None => Ok(Field::Rational),
    }
}

fn read_vector(path: &Path, field: Option<Field>) -> Result<RepVector, Failure> {
    let value = read_json(path)?;
    let field = field_of(&value, field)?;
    Ok(RepVector::from_json(&value, field)?)
}

fn write_report(out: Option<&Path>, value: &Value) -> Result<(), Failure> {
    let text = render(value);
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { form, input, field } => {
            let v = read_vector(&input, field)?;
            println!("{}", form.eval(&v)?);
            Ok(())
        }
        Command::Minimal {
            form,
            input,
            field,
            oracle,
            policy,
            trials,
            seed,
        } => {
            let v = read_vector(&input, field)?;
            let verdict = match (oracle, policy) {
                (Oracle::Rrs, PolicyKind::Randomized) => minimality::minimal_by_rrs(&form, &v, RrsPolicy::Randomized { trials, seed })?,
                _ => minimality::run_oracle(&form, &v, oracle)?,
            };
            println!("{}", serde_json::to_string(&verdict.to_json()).expect("serializable"));
            Ok(())
        }
        Command::Verify {
            corollary: id,
            field,
            trials,
            seed,
            policy,
            out,
        } => {
            let cfg = RunConfig {
                field,
                trials,
                seed,
                policy,
                ..RunConfig::default()
            };
            let start = Instant::now();
            let report = corollary::run(&id, &cfg)?;
            let elapsed = start.elapsed();
            write_report(out.as_deref(), &report.to_json())?;
            let summary = |s: String| {
                if out.is_some() {
                    println!("{s}");
                } else {
                    eprintln!("{s}");
                }
            };
            for line in &report.lines {
                for suite in &line.suites {
                    summary(format!(
                        "{:<14} {:<14} {:>5} checked  {}",
                        line.line.to_string(),
                        suite.name,
                        suite.checked,
                        if suite.passed() { "pass" } else { "FAIL" }
                    ));
                }
            }
            for suite in &report.identities {
                summary(format!(
                    "{:<14} {:<14} {:>5} checked  {}",
                    "identity",
                    suite.name,
                    suite.checked,
                    if suite.passed() { "pass" } else { "FAIL" }
                ));
            }
            summary(format!(
                "{id} over {field}: {} in {:.2}s",
                if report.passed() { "pass" } else { "FAIL" },
                elapsed.as_secs_f64()
            ));
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Bruteforce { case_id, case, out } => {
            let id = case.or(case_id).expect("clap enforces a case");
            let start = Instant::now();
            let report = bruteforce::run_case(&id)?;
            let elapsed = start.elapsed();
            write_report(out.as_deref(), &report.to_json())?;
            let line = format!(
                "{id}: {} ({} objects, {:.2}s)",
                if report.passed() { "pass" } else { "FAIL" },
                report.total,
                elapsed.as_secs_f64()
            );
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Polarize { form, input, field } => {
            let value = read_json(&input)?;
            let field = field_of(&value, field)?;
            let items = value
                .as_array()
                .ok_or_else(|| Failure::Usage("polarize expects a JSON array of vectors".into()))?;
            let vs = items
                .iter()
                .map(|v| RepVector::from_json(v, field))
                .collect::<Result<Vec<_>, _>>()?;
            match vs.as_slice() {
                [a, b, c, d] => println!("{}", polarize4(&form, [a, b, c, d])?),
                [x] => {
                    let b = bilinear_bx(&form, x)?;
                    let gram: Vec<Vec<String>> = (0..b.dim())
                        .map(|i| b.gram().row(i).iter().map(|e| e.to_string()).collect())
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string(&json!({"gram": gram, "rank": b.rank(), "radical_dim": radical_dimension(&b)}))
                            .expect("serializable")
                    );
                }
                _ => return Err(Failure::Usage(format!("polarize takes 1 or 4 vectors, got {}", vs.len()))),
            }
            Ok(())
        }
        Command::List => {
            println!("forms: symm-det:n skew-pf:n square-det:n quadric:n[:id] cubic-disc wedge36 sp6 mat2n:n[:id] hyperdet");
            println!("corollaries: {}", COROLLARIES.join(" "));
            println!("cases: {}", CASES.join(" "));
            let skipped: Vec<&str> = OUT_OF_SCOPE.iter().map(|(k, _)| *k).collect();
            println!("out of scope: {}", skipped.join(" "));
            Ok(())
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("PRESERVER_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
