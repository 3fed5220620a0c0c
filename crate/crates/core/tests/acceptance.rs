//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! `cargo test -p preserver --test acceptance` runs the full sizes. Set
//! `ACCEPTANCE_TRIALS` to shrink the per-form trial count for a quick look.

use std::process::ExitCode;
use std::time::Instant;

use preserver::bruteforce;
use preserver::corollary::{
    calibration_identity, character_suite, falsification_suite, forward_suite, minimality_suite, permutation_identity,
    pfaffian_square_identity, proportionality_identity, resolve, space_minimality_suite, star_identity, RunConfig, SpaceFamily,
    SuiteResult, COROLLARIES,
};
use preserver::forms::HYPERDET_RATIO;
use preserver::verify::{error_bound, trials_for_bound, SYMBOLIC_MAX_DIM, TARGET_BITS};
use preserver::{Field, Line};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn all_lines() -> Vec<Line> {
    COROLLARIES.iter().flat_map(|id| resolve(id).expect("known id")).collect()
}

fn config(field: Field, trials: usize) -> RunConfig {
    RunConfig {
        field,
        trials,
        seed: 2024,
        ..RunConfig::default()
    }
}

/// Runs `suite` on every form over both fields and summarizes the failures.
fn per_line(trials: usize, suite: impl Fn(&Line, usize, &RunConfig) -> SuiteResult) -> Outcome {
    let mut failed = Vec::new();
    let mut checked = 0;
    for field in FIELDS {
        let cfg = config(field, trials);
        for (idx, line) in all_lines().iter().enumerate() {
            let r = suite(line, idx, &cfg);
            checked += r.checked;
            if !r.passed() {
                failed.push(format!("{line} over {field}: {} of {} ({:?})", r.failures, r.checked, r.first_failure));
            }
        }
    }
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{checked} elements")
        } else {
            failed.join("; ")
        },
    }
}

fn suites(results: Vec<SuiteResult>) -> Outcome {
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}: {:?}", r.name, r.first_failure))
        .collect();
    let checked: usize = results.iter().map(|r| r.checked).sum();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{checked} checks")
        } else {
            failed.join("; ")
        },
    }
}

fn census(case: &str) -> Outcome {
    match bruteforce::run_case(case) {
        Ok(r) => Outcome {
            passed: r.passed(),
            detail: serde_json::to_string(&r.counts).unwrap(),
        },
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn forward(trials: usize) -> Outcome {
    // every randomized check must reach the target bound
    for field in FIELDS {
        for line in all_lines() {
            if line.dim() > SYMBOLIC_MAX_DIM {
                let k = trials_for_bound(line.degree(), field).expect("degree below field size");
                let bound = error_bound(line.degree(), field, k);
                let target = num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(1u8) << TARGET_BITS);
                assert!(bound <= target, "{line}: bound {bound}");
            }
        }
    }
    per_line(trials, forward_suite)
}

fn identities(trials: usize) -> Outcome {
    let mut r = Vec::new();
    for field in FIELDS {
        r.push(star_identity(field));
        r.push(permutation_identity(field));
        for n in [4, 6, 8] {
            r.push(pfaffian_square_identity(field, n, trials, 7));
        }
    }
    suites(r)
}

fn minimality(trials: usize) -> Outcome {
    let mut outcome = per_line(trials, minimality_suite);
    let mut extra = Vec::new();
    for field in FIELDS {
        for fam in SpaceFamily::all() {
            extra.push(space_minimality_suite(fam, field, trials, 11));
        }
    }
    let spaces = suites(extra);
    outcome.passed &= spaces.passed;
    outcome.detail = format!("forms: {}; spaces: {}", outcome.detail, spaces.detail);
    outcome
}

fn main() -> ExitCode {
    let trials: usize = std::env::var("ACCEPTANCE_TRIALS").ok().and_then(|s| s.parse().ok()).unwrap_or(1000);
    type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("1 forward soundness", Box::new(move || forward(trials))),
        ("2 character law", Box::new(move || per_line(trials, character_suite))),
        ("3 cubic oracle agreement over F5", Box::new(|| census("cubic-oracles-f5"))),
        ("4 scalar fixers of Symm2(F3)", Box::new(|| census("rk1fix-symm2-f3"))),
        ("5 symbolic identities", Box::new(move || identities(trials))),
        (
            "6 SL6 calibration",
            Box::new(move || suites(FIELDS.iter().map(|&f| calibration_identity(f, trials, 5)).collect())),
        ),
        (
            "7 hyperdet proportionality",
            Box::new(|| {
                let mut o = suites(vec![proportionality_identity(Field::Rational, 100, 3)]);
                o.detail = format!("{}, ratio {HYPERDET_RATIO}", o.detail);
                o
            }),
        ),
        ("8 falsification", Box::new(|| per_line(1000, falsification_suite))),
        ("9 cubic converse over F5", Box::new(|| census("cubic-census-f5"))),
        ("10 minimality preservation", Box::new(move || minimality(trials))),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let start = Instant::now();
        let o = run();
        all &= o.passed;
        println!(
            "{} criterion {name} ({:.1}s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
