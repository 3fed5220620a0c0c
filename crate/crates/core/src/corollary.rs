//! Verification suites for each preserver statement, with JSON reports.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{pfaffian, sl6_reference, sl6_w, tensor_as_mat2n, Gram, Line, HYPERDET_RATIO};
use crate::preservers::{families, sample_group_element, Mode, PreserverElement};
use crate::rep::{RepVector, Space};
use crate::sampling::{random_vector, trial_rng};
use crate::verify::{preserves_form, preserves_minimals, preserves_minimals_in_space, scales_form, trials_for_bound, Policy, PolicyKind};

/// Identifiers accepted by [`resolve`].
pub const COROLLARIES: [&str; 9] = ["symm.f", "skew.f", "skew.f4", "square.f", "cubics", "SL6", "Sp6", "hyperdet", "blackholes"];

/// Identifiers of forms this library deliberately does not implement.
pub const OUT_OF_SCOPE: [(&str, &str); 5] = [
    ("e6", "E6 cubic form"),
    ("e6.adj", "E6 cubic form"),
    ("E6.f", "E6 cubic form"),
    ("HSpin12", "half-spin quartic"),
    ("E7", "E7 quartic"),
];

/// The forms checked for a statement id, optionally narrowed by `:n`.
pub fn resolve(id: &str) -> Result<Vec<Line>> {
    if let Some((_, what)) = OUT_OF_SCOPE.iter().find(|(k, _)| *k == id) {
        return Err(Error::OutOfScope((*what).to_string()));
    }
    let (name, n) = match id.split_once(':') {
        Some((name, n)) => (name, Some(n.parse::<usize>().map_err(|_| Error::Parse(format!("bad size in {id:?}")))?)),
        None => (id, None),
    };
    let sizes = |default: &[usize]| -> Vec<usize> { n.map(|n| vec![n]).unwrap_or_else(|| default.to_vec()) };
    let lines: Vec<Line> = match name {
        "symm.f" => sizes(&[2, 3, 4]).into_iter().map(|n| Line::SymmDet { n }).collect(),
        "skew.f" => sizes(&[6, 8]).into_iter().map(|n| Line::SkewPf { n }).collect(),
        "skew.f4" => vec![Line::SkewPf { n: 4 }],
        "square.f" => sizes(&[2, 3, 4]).into_iter().map(|n| Line::SquareDet { n }).collect(),
        "cubics" => vec![Line::CubicDisc],
        "SL6" => vec![Line::Wedge36],
        "Sp6" => vec![Line::Sp6],
        "hyperdet" => vec![Line::Hyperdet],
        "blackholes" => sizes(&[4, 5, 6]).into_iter().map(|n| Line::Mat2n { n, s: Gram::Split }).collect(),
        _ => return Err(Error::Parse(format!("unknown corollary {id:?}"))),
    };
    for l in &lines {
        l.validate()?;
    }
    Ok(lines)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
    pub policy: PolicyKind,
    /// Constraint-violating elements per form.
    pub falsify_trials: usize,
    /// Evaluation points allowed to expose each violator.
    pub falsify_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: Field::Rational,
            trials: 1000,
            seed: 0,
            policy: PolicyKind::Auto,
            falsify_trials: 100,
            falsify_points: 32,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.falsify_trials == 0 || self.falsify_points == 0 {
            return Err(Error::Precondition("trial counts must be positive".into()));
        }
        Ok(())
    }

    /// The identity-testing policy for `line`, with its own seed.
    pub fn policy_for(&self, line: &Line, seed: u64) -> Result<Policy> {
        let p = match self.policy {
            PolicyKind::Symbolic => Policy::Symbolic,
            PolicyKind::Randomized => Policy::SchwartzZippel {
                trials: trials_for_bound(line.degree(), self.field)?,
                seed,
            },
            PolicyKind::Auto => Policy::Auto { seed },
        };
        p.resolve(line, self.field)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.descriptor(),
            "trials": self.trials,
            "seed": self.seed,
            "policy": match self.policy {
                PolicyKind::Symbolic => "symbolic",
                PolicyKind::Randomized => "randomized",
                PolicyKind::Auto => "auto",
            },
            "falsify_trials": self.falsify_trials,
            "falsify_points": self.falsify_points,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<Value>,
    pub notes: Option<Value>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn from_outcomes(name: &str, outcomes: Vec<Result<Option<Value>>>) -> SuiteResult {
        let checked = outcomes.len();
        let mut failures = 0;
        let mut first_failure = None;
        for o in outcomes {
            let fail = match o {
                Ok(None) => None,
                Ok(Some(v)) => Some(v),
                Err(e) => Some(json!({"error": e.to_string()})),
            };
            if let Some(f) = fail {
                failures += 1;
                first_failure.get_or_insert(f);
            }
        }
        SuiteResult {
            name: name.to_string(),
            checked,
            failures,
            first_failure,
            notes: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "suite": self.name,
            "passed": self.passed(),
            "checked": self.checked,
            "failures": self.failures,
        });
        if let Some(f) = &self.first_failure {
            out["first_failure"] = f.clone();
        }
        if let Some(n) = &self.notes {
            out["notes"] = n.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineReport {
    pub line: Line,
    pub policy: Policy,
    pub suites: Vec<SuiteResult>,
}

impl LineReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.line.descriptor(),
            "convention": self.line.convention(),
            "policy": self.policy.to_string(),
            "passed": self.passed(),
            "suites": self.suites.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryReport {
    pub corollary: String,
    pub config: RunConfig,
    pub lines: Vec<LineReport>,
    pub identities: Vec<SuiteResult>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(LineReport::passed) && self.identities.iter().all(SuiteResult::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corollary": self.corollary,
            "config": self.config.to_json(),
            "passed": self.passed(),
            "forms": self.lines.iter().map(LineReport::to_json).collect::<Vec<_>>(),
            "identities": self.identities.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Independent stream for trial `i` of `suite` on form number `line`.
fn stream(suite: u64, line: usize, i: usize) -> u64 {
    (suite << 48) | ((line as u64) << 32) | i as u64
}

fn element_failure(t: &PreserverElement, detail: Value) -> Option<Value> {
    Some(json!({"element": t.to_json(), "detail": detail}))
}

/// Sampled constraint-satisfying elements preserve `f`.
pub fn forward_suite(line: &Line, idx: usize, cfg: &RunConfig) -> SuiteResult {
    let fams = families(line);
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(cfg.seed, stream(1, idx, i));
            let t = sample_group_element(fams[i % fams.len()], line, cfg.field, Mode::Satisfying, &mut rng)?;
            if !t.constraint_satisfied(line)? {
                return Ok(element_failure(&t, json!("constraint not satisfied")));
            }
            let v = preserves_form(&t, line, cfg.field, cfg.policy_for(line, rng_seed(cfg, 1, idx, i))?)?;
            Ok((!v.passed).then(|| element_failure(&t, v.to_json())).flatten())
        })
        .collect();
    let mut r = SuiteResult::from_outcomes("forward", outcomes);
    if let Ok(Policy::SchwartzZippel { trials, .. }) = cfg.policy_for(line, 0) {
        r.notes = Some(json!({
            "points_per_element": trials,
            "error_bound_per_element": crate::verify::error_bound(line.degree(), cfg.field, trials).to_string(),
        }));
    }
    r
}

fn rng_seed(cfg: &RunConfig, suite: u64, idx: usize, i: usize) -> u64 {
    cfg.seed ^ stream(suite, idx, i).rotate_left(17)
}

/// For unconstrained elements the scalar found by `scales_form` is `χ`.
pub fn character_suite(line: &Line, idx: usize, cfg: &RunConfig) -> SuiteResult {
    let fams = families(line);
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(cfg.seed, stream(2, idx, i));
            let t = sample_group_element(fams[i % fams.len()], line, cfg.field, Mode::Unconstrained, &mut rng)?;
            let chi = t.character(line)?;
            let v = scales_form(&t, line, cfg.field, cfg.policy_for(line, rng_seed(cfg, 2, idx, i))?)?;
            let ok = v.passed && v.scalar.as_ref() == Some(&chi);
            Ok((!ok)
                .then(|| element_failure(&t, json!({"chi": chi.to_string(), "verdict": v.to_json()})))
                .flatten())
        })
        .collect();
    SuiteResult::from_outcomes("character", outcomes)
}

/// Unconstrained elements map minimal elements to minimal elements.
pub fn minimality_suite(line: &Line, idx: usize, cfg: &RunConfig) -> SuiteResult {
    let fams = families(line);
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(cfg.seed, stream(3, idx, i));
            let t = sample_group_element(fams[i % fams.len()], line, cfg.field, Mode::Unconstrained, &mut rng)?;
            let v = preserves_minimals(&t, line, cfg.field, 1, rng_seed(cfg, 3, idx, i))?;
            Ok((!v.passed).then(|| element_failure(&t, v.to_json())).flatten())
        })
        .collect();
    SuiteResult::from_outcomes("minimality", outcomes)
}

/// Constraint-violating elements are caught within `falsify_points` random points.
pub fn falsification_suite(line: &Line, idx: usize, cfg: &RunConfig) -> SuiteResult {
    let fams = families(line);
    let outcomes = (0..cfg.falsify_trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(cfg.seed, stream(4, idx, i));
            let t = sample_group_element(fams[i % fams.len()], line, cfg.field, Mode::Violating, &mut rng)?;
            let policy = Policy::SchwartzZippel {
                trials: cfg.falsify_points,
                seed: rng_seed(cfg, 4, idx, i),
            };
            let v = preserves_form(&t, line, cfg.field, policy)?;
            let caught = !v.passed && v.points <= cfg.falsify_points;
            Ok((!caught).then(|| element_failure(&t, v.to_json())).flatten())
        })
        .collect();
    SuiteResult::from_outcomes("falsification", outcomes)
}

/// `f ∘ * = f` for the `4 × 4` star, as polynomials in six variables.
pub fn star_identity(field: Field) -> SuiteResult {
    let line = Line::SkewPf { n: 4 };
    let out = preserves_form(&PreserverElement::HodgeStar4, &line, field, Policy::Symbolic)
        .map(|v| (!v.passed).then(|| v.to_json()));
    SuiteResult::from_outcomes("star-identity", vec![out])
}

/// The hyperdeterminant is invariant under all six factor permutations,
/// as polynomials in eight variables.
pub fn permutation_identity(field: Field) -> SuiteResult {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let outcomes = PERMS
        .iter()
        .map(|&sigma| {
            let t = PreserverElement::FactorPermutation { sigma };
            preserves_form(&t, &Line::Hyperdet, field, Policy::Symbolic).map(|v| (!v.passed).then(|| json!({"sigma": sigma})))
        })
        .collect();
    SuiteResult::from_outcomes("permutation-identity", outcomes)
}

/// `Pf(X)^2 = det(X)` on random alternating matrices.
pub fn pfaffian_square_identity(field: Field, n: usize, trials: usize, seed: u64) -> SuiteResult {
    let space = Space::Alt { n };
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(seed, stream(5, n, i));
            let x = RepVector::new(space, random_vector(field, space.dim(), &mut rng)).to_matrix()?;
            let pf = pfaffian(&x)?;
            Ok((&pf * &pf != x.det()).then(|| json!({"n": n, "trial": i})))
        })
        .collect();
    SuiteResult::from_outcomes(&format!("pf-squared-{n}"), outcomes)
}

/// The quartic on `∧^3 k^6` agrees with `<x,y>^2 - 4 Pf(x) Pf(y)` on the image of `w`.
pub fn calibration_identity(field: Field, trials: usize, seed: u64) -> SuiteResult {
    let space = Space::Alt { n: 4 };
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(seed, stream(6, 0, i));
            let x = RepVector::new(space, random_vector(field, 6, &mut rng));
            let y = RepVector::new(space, random_vector(field, 6, &mut rng));
            let lhs = Line::Wedge36.eval(&sl6_w(&x, &y))?;
            let rhs = sl6_reference(&x, &y);
            Ok((lhs != rhs).then(|| json!({"x": x.to_json(), "y": y.to_json(), "lhs": lhs.to_string(), "rhs": rhs.to_string()})))
        })
        .collect();
    SuiteResult::from_outcomes("calibration", outcomes)
}

/// `hyperdet(v) / det(X S X^t)` is the pinned constant on random tensors.
pub fn proportionality_identity(field: Field, trials: usize, seed: u64) -> SuiteResult {
    let mat = Line::Mat2n { n: 4, s: Gram::Split };
    let expected = field.int(HYPERDET_RATIO);
    let mut outcomes = Vec::with_capacity(trials);
    let mut rng = trial_rng(seed, stream(7, 0, 0));
    while outcomes.len() < trials {
        let v = RepVector::new(Space::TriTensor, random_vector(field, 8, &mut rng));
        let outcome = (|| -> Result<Option<Value>> {
            let h = Line::Hyperdet.eval(&v)?;
            let d = mat.eval(&tensor_as_mat2n(&v)?)?;
            if h.is_zero() {
                return Ok(if d.is_zero() { Some(Value::Null) } else { Some(json!({"tensor": v.to_json()})) });
            }
            if d.is_zero() {
                return Ok(Some(json!({"tensor": v.to_json(), "ratio": "undefined"})));
            }
            let ratio: FieldElement = &h / &d;
            Ok((ratio != expected).then(|| json!({"tensor": v.to_json(), "ratio": ratio.to_string()})))
        })();
        match outcome {
            Ok(Some(Value::Null)) => continue,
            other => outcomes.push(other),
        }
    }
    let mut r = SuiteResult::from_outcomes("hyperdet-proportionality", outcomes);
    r.notes = Some(json!({"ratio": expected.to_string()}));
    r
}

/// Extra identities attached to a statement.
fn identities(id: &str, cfg: &RunConfig) -> Vec<SuiteResult> {
    let name = id.split(':').next().unwrap_or(id);
    match name {
        "skew.f4" => vec![star_identity(cfg.field)],
        "skew.f" => [4, 6, 8].iter().map(|&n| pfaffian_square_identity(cfg.field, n, cfg.trials, cfg.seed)).collect(),
        "SL6" => vec![calibration_identity(cfg.field, cfg.trials, cfg.seed)],
        "hyperdet" => vec![permutation_identity(cfg.field), proportionality_identity(cfg.field, 100, cfg.seed)],
        _ => vec![],
    }
}

/// Runs every suite for one statement id.
pub fn run(id: &str, cfg: &RunConfig) -> Result<CorollaryReport> {
    cfg.validate()?;
    let lines = resolve(id)?;
    let mut reports = Vec::new();
    for (idx, line) in lines.iter().enumerate() {
        let policy = cfg.policy_for(line, cfg.seed)?;
        let suites = vec![
            forward_suite(line, idx, cfg),
            character_suite(line, idx, cfg),
            minimality_suite(line, idx, cfg),
            falsification_suite(line, idx, cfg),
        ];
        reports.push(LineReport {
            line: *line,
            policy,
            suites,
        });
    }
    Ok(CorollaryReport {
        corollary: id.to_string(),
        config: *cfg,
        lines: reports,
        identities: identities(id, cfg),
    })
}

/// A family acting on a space with no invariant form, for minimality checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceFamily {
    /// `X ↦ r P X P^t` on symmetric matrices.
    SymmCongruence { n: usize },
    /// `X ↦ r P X P^t` on alternating matrices, with the star when `n = 4`.
    AltCongruence { n: usize },
    /// `X ↦ A X B` on `m × n` matrices.
    RectSandwich { m: usize, n: usize },
    /// `X ↦ A X^t B` on square matrices.
    TransposeSandwich { n: usize },
    /// `∧^d g` scaled by `c`.
    WedgePush { d: usize, n: usize },
    /// `q ↦ c (q ∘ g)` on binary cubics.
    CubicComposition,
}

impl SpaceFamily {
    pub fn all() -> Vec<SpaceFamily> {
        vec![
            SpaceFamily::SymmCongruence { n: 3 },
            SpaceFamily::AltCongruence { n: 4 },
            SpaceFamily::AltCongruence { n: 5 },
            SpaceFamily::RectSandwich { m: 2, n: 3 },
            SpaceFamily::RectSandwich { m: 3, n: 5 },
            SpaceFamily::TransposeSandwich { n: 3 },
            SpaceFamily::WedgePush { d: 2, n: 5 },
            SpaceFamily::WedgePush { d: 3, n: 6 },
            SpaceFamily::CubicComposition,
        ]
    }

    pub fn name(&self) -> String {
        match self {
            SpaceFamily::SymmCongruence { n } => format!("symm-congruence:{n}"),
            SpaceFamily::AltCongruence { n } => format!("alt-congruence:{n}"),
            SpaceFamily::RectSandwich { m, n } => format!("rect-sandwich:{m}x{n}"),
            SpaceFamily::TransposeSandwich { n } => format!("transpose-sandwich:{n}"),
            SpaceFamily::WedgePush { d, n } => format!("wedge-push:{d}:{n}"),
            SpaceFamily::CubicComposition => "cubic-composition".into(),
        }
    }

    pub fn sample<R: rand::Rng + ?Sized>(&self, field: Field, rng: &mut R) -> PreserverElement {
        use crate::sampling::{random_invertible, random_scalar};
        match *self {
            SpaceFamily::SymmCongruence { n } => PreserverElement::Congruence {
                space: Space::Symm { n },
                r: random_scalar(field, rng),
                p: random_invertible(field, n, rng),
            },
            SpaceFamily::AltCongruence { n } => {
                let t = PreserverElement::Congruence {
                    space: Space::Alt { n },
                    r: random_scalar(field, rng),
                    p: random_invertible(field, n, rng),
                };
                if n == 4 && rng.gen_bool(0.5) {
                    PreserverElement::Composite(vec![PreserverElement::HodgeStar4, t])
                } else {
                    t
                }
            }
            SpaceFamily::RectSandwich { m, n } => PreserverElement::Sandwich {
                space: if m == n { Space::Square { n } } else { Space::Rect { m, n } },
                a: random_invertible(field, m, rng),
                b: random_invertible(field, n, rng),
            },
            SpaceFamily::TransposeSandwich { n } => PreserverElement::TransposeSandwich {
                n,
                a: random_invertible(field, n, rng),
                b: random_invertible(field, n, rng),
            },
            SpaceFamily::WedgePush { d, n } => PreserverElement::WedgePush {
                d,
                c: random_scalar(field, rng),
                g: random_invertible(field, n, rng),
            },
            SpaceFamily::CubicComposition => PreserverElement::CubicComposition {
                c: random_scalar(field, rng),
                g: random_invertible(field, 2, rng),
            },
        }
    }
}

/// Minimality preservation for the families acting on spaces without a form.
pub fn space_minimality_suite(family: SpaceFamily, field: Field, trials: usize, seed: u64) -> SuiteResult {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<Option<Value>> {
            let mut rng = trial_rng(seed, stream(8, 0, i));
            let t = family.sample(field, &mut rng);
            let v = preserves_minimals_in_space(&t, field, 1, seed ^ i as u64)?;
            Ok((!v.passed).then(|| element_failure(&t, v.to_json())).flatten())
        })
        .collect();
    SuiteResult::from_outcomes(&family.name(), outcomes)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids() {
        assert_eq!(resolve("symm.f").unwrap().len(), 3);
        assert_eq!(resolve("skew.f:6").unwrap(), vec![Line::SkewPf { n: 6 }]);
        assert!(matches!(resolve("e6"), Err(Error::OutOfScope(_))));
        assert!(matches!(resolve("nope"), Err(Error::Parse(_))));
        assert!(resolve("skew.f:5").is_err());
    }

    #[test]
    fn small_run_passes() {
        let cfg = RunConfig {
            trials: 6,
            falsify_trials: 4,
            ..RunConfig::default()
        };
        for id in ["symm.f:2", "skew.f4", "cubics"] {
            let r = run(id, &cfg).unwrap();
            assert!(r.passed(), "{}", render(&r.to_json()));
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = RunConfig {
            trials: 3,
            falsify_trials: 2,
            field: Field::Prime(7),
            ..RunConfig::default()
        };
        let a = render(&run("hyperdet", &cfg).unwrap().to_json());
        let b = render(&run("hyperdet", &cfg).unwrap().to_json());
        assert_eq!(a, b);
    }
}
