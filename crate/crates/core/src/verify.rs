//! Identity testing for `f ∘ T = c f` and minimality preservation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Ring};
use crate::forms::Line;
use crate::matrix::Matrix;
use crate::minimality::{is_minimal_in_space, minimal_by_rank, sample_minimal, sample_minimal_in_space};
use crate::poly::Poly;
use crate::preservers::PreserverElement;
use crate::rep::RepVector;
use crate::sampling::trial_rng;

/// Largest representation dimension expanded symbolically.
pub const SYMBOLIC_MAX_DIM: usize = 10;

/// Target failure probability of a randomized identity test, as a power of two.
pub const TARGET_BITS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Expand `f ∘ T - c f` as a polynomial.
    Symbolic,
    /// Evaluate at `trials` random points.
    SchwartzZippel { trials: usize, seed: u64 },
    /// Symbolic up to [`SYMBOLIC_MAX_DIM`], otherwise enough random points for
    /// a failure bound of `2^-60`.
    Auto { seed: u64 },
}

impl Policy {
    /// The concrete policy used for `line` over `field`.
    pub fn resolve(self, line: &Line, field: Field) -> Result<Policy> {
        match self {
            Policy::Symbolic if line.dim() > SYMBOLIC_MAX_DIM => Err(Error::Unsupported(format!(
                "symbolic expansion is limited to {SYMBOLIC_MAX_DIM} variables, {line} has {}",
                line.dim()
            ))),
            Policy::Auto { seed } if line.dim() > SYMBOLIC_MAX_DIM => Ok(Policy::SchwartzZippel {
                trials: trials_for_bound(line.degree(), field)?,
                seed,
            }),
            Policy::Auto { .. } => Ok(Policy::Symbolic),
            other => Ok(other),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Symbolic => f.write_str("symbolic"),
            Policy::SchwartzZippel { trials, .. } => write!(f, "schwartz-zippel({trials})"),
            Policy::Auto { .. } => f.write_str("auto"),
        }
    }
}

/// Policy names accepted on the command line: `symbolic`, `randomized`, `auto`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolicyKind {
    Symbolic,
    Randomized,
    Auto,
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(PolicyKind::Symbolic),
            "randomized" | "schwartz-zippel" => Ok(PolicyKind::Randomized),
            "auto" => Ok(PolicyKind::Auto),
            other => Err(Error::Parse(format!("unknown policy {other:?}"))),
        }
    }
}

/// Size of the evaluation set: `2^32` integers over the rationals, all of `F_p`.
pub fn sample_set_size(field: Field) -> BigInt {
    match field {
        Field::Rational => BigInt::one() << 32,
        Field::Prime(p) => BigInt::from(p),
    }
}

/// `(deg / |S|)^trials`.
pub fn error_bound(degree: u32, field: Field, trials: usize) -> BigRational {
    let per = BigRational::new(BigInt::from(degree), sample_set_size(field));
    Pow::pow(per, trials as u32)
}

/// Fewest points with `(deg / |S|)^k <= 2^-60`.
pub fn trials_for_bound(degree: u32, field: Field) -> Result<usize> {
    let s = sample_set_size(field);
    if BigInt::from(degree) >= s {
        return Err(Error::Unsupported(format!(
            "degree {degree} is not below the field size; random evaluation gives no bound"
        )));
    }
    let target = BigRational::new(BigInt::one(), BigInt::one() << TARGET_BITS);
    let mut k = 1;
    while error_bound(degree, field, k) > target {
        k += 1;
    }
    Ok(k)
}

/// Uniform point of the evaluation set.
pub fn sz_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    match field {
        Field::Rational => field.int(rng.gen_range(-(1i64 << 31)..(1i64 << 31))),
        Field::Prime(_) => field.sample(1, rng),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub input: RepVector,
    pub lhs: FieldElement,
    pub rhs: FieldElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub scalar: Option<FieldElement>,
    pub error_bound: Option<BigRational>,
    /// Evaluation points used, up to and including the failing one.
    pub points: usize,
}

impl Verdict {
    fn pass(points: usize) -> Self {
        Verdict {
            passed: true,
            counterexample: None,
            scalar: None,
            error_bound: None,
            points,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({"passed": self.passed, "points": self.points});
        if let Some(c) = &self.counterexample {
            out["counterexample"] = json!({
                "input": c.input.to_json(),
                "lhs": c.lhs.to_string(),
                "rhs": c.rhs.to_string(),
            });
        }
        if let Some(s) = &self.scalar {
            out["scalar"] = json!(s.to_string());
        }
        if let Some(b) = &self.error_bound {
            out["error_bound"] = json!(b.to_string());
        }
        out
    }
}

fn random_point<R: Rng + ?Sized>(line: &Line, field: Field, rng: &mut R) -> RepVector {
    let y: Vec<FieldElement> = (0..line.dim()).map(|_| sz_scalar(field, rng)).collect();
    line.point(&y)
}

/// Tests `f(T x) = c f(x)` at one point, `m` being the matrix of `T`.
fn check_point(m: &Matrix, line: &Line, c: &FieldElement, x: &RepVector) -> Result<Option<Counterexample>> {
    let lhs = line.eval_coords(&m.mul_vec(x.coords()));
    let rhs = c * &line.eval_coords(x.coords());
    Ok((lhs != rhs).then(|| Counterexample {
        input: x.clone(),
        lhs,
        rhs,
    }))
}

/// Whether `f ∘ T - c f` is the zero polynomial.
fn symbolic_identity(t: &PreserverElement, m: &Matrix, line: &Line, c: &FieldElement, field: Field) -> bool {
    let x = line.generic_point(field);
    let tx = t.apply_symbolic(m, &x);
    let lhs: Poly = line.eval_coords(&tx);
    let rhs = line.eval_coords(&x).scale(c);
    lhs.sub(&rhs).num_terms() == 0
}

fn test_identity(t: &PreserverElement, line: &Line, c: &FieldElement, field: Field, policy: Policy) -> Result<Verdict> {
    if t.space() != line.space() {
        return Err(Error::SpaceMismatch {
            expected: line.space().to_string(),
            found: t.space().to_string(),
        });
    }
    let policy = policy.resolve(line, field)?;
    let m = t.matrix(field);
    match policy {
        Policy::Symbolic => {
            if symbolic_identity(t, &m, line, c, field) {
                return Ok(Verdict::pass(0));
            }
            // a nonzero polynomial of low degree vanishes rarely on the sample set
            let mut rng = trial_rng(0, 0);
            for i in 1..=256 {
                let x = random_point(line, field, &mut rng);
                if let Some(ce) = check_point(&m, line, c, &x)? {
                    return Ok(failed(ce, i));
                }
            }
            Err(Error::Budget("identity fails symbolically but no failing point was found".into()))
        }
        Policy::SchwartzZippel { trials, seed } => {
            let mut rng = trial_rng(seed, 0);
            for i in 1..=trials {
                let x = random_point(line, field, &mut rng);
                if let Some(ce) = check_point(&m, line, c, &x)? {
                    return Ok(failed(ce, i));
                }
            }
            let mut v = Verdict::pass(trials);
            v.error_bound = Some(error_bound(line.degree(), field, trials));
            Ok(v)
        }
        Policy::Auto { .. } => unreachable!("resolved above"),
    }
}

fn failed(ce: Counterexample, points: usize) -> Verdict {
    Verdict {
        passed: false,
        counterexample: Some(ce),
        scalar: None,
        error_bound: None,
        points,
    }
}

/// Whether `f ∘ T = f`.
pub fn preserves_form(t: &PreserverElement, line: &Line, field: Field, policy: Policy) -> Result<Verdict> {
    test_identity(t, line, &field.one(), field, policy)
}

/// Finds the scalar `c` with `f ∘ T = c f`, or a witness that none exists.
pub fn scales_form(t: &PreserverElement, line: &Line, field: Field, policy: Policy) -> Result<Verdict> {
    let seed = match policy {
        Policy::SchwartzZippel { seed, .. } | Policy::Auto { seed } => seed,
        Policy::Symbolic => 0,
    };
    let mut rng = trial_rng(seed, u64::MAX);
    let mut c = None;
    for _ in 0..64 {
        let x = random_point(line, field, &mut rng);
        let fx = line.eval_coords(x.coords());
        if !fx.is_zero() {
            c = Some(&line.eval_coords(t.apply(&x)?.coords()) / &fx);
            break;
        }
    }
    let c = c.ok_or_else(|| Error::Budget("no point with f(x) != 0 found".into()))?;
    let mut v = test_identity(t, line, &c, field, policy)?;
    v.scalar = Some(c);
    Ok(v)
}

/// Applies `T` to `trials` sampled minimal elements and checks the images.
pub fn preserves_minimals(t: &PreserverElement, line: &Line, field: Field, trials: usize, seed: u64) -> Result<Verdict> {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let m = sample_minimal(line, field, &mut rng)?;
        let image = t.apply(&m)?;
        if !minimal_by_rank(line, &image)?.is_minimal {
            return Ok(failed(
                Counterexample {
                    input: m,
                    lhs: field.zero(),
                    rhs: field.one(),
                },
                i + 1,
            ));
        }
    }
    Ok(Verdict::pass(trials))
}

/// [`preserves_minimals`] for spaces without an invariant form.
pub fn preserves_minimals_in_space(t: &PreserverElement, field: Field, trials: usize, seed: u64) -> Result<Verdict> {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i as u64);
        let m = sample_minimal_in_space(t.space(), field, &mut rng)?;
        if !is_minimal_in_space(&t.apply(&m)?)? {
            return Ok(failed(
                Counterexample {
                    input: m,
                    lhs: field.zero(),
                    rhs: field.one(),
                },
                i + 1,
            ));
        }
    }
    Ok(Verdict::pass(trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Space;

    #[test]
    fn trial_counts() {
        assert_eq!(trials_for_bound(4, Field::Rational).unwrap(), 2);
        assert_eq!(trials_for_bound(4, Field::Prime(7)).unwrap(), 75);
        assert!(trials_for_bound(7, Field::Prime(7)).is_err());
    }

    #[test]
    fn star_preserves_pfaffian() {
        let q = Field::Rational;
        let line = Line::SkewPf { n: 4 };
        let v = preserves_form(&PreserverElement::HodgeStar4, &line, q, Policy::Symbolic).unwrap();
        assert!(v.passed);
        let s = scales_form(&PreserverElement::HodgeStar4, &line, q, Policy::Symbolic).unwrap();
        assert_eq!(s.scalar, Some(q.one()));
    }

    #[test]
    fn scaled_congruence_fails_with_counterexample() {
        let q = Field::Rational;
        let line = Line::SymmDet { n: 2 };
        let t = PreserverElement::Congruence {
            space: Space::Symm { n: 2 },
            r: q.int(2),
            p: Matrix::identity(q, 2),
        };
        let v = preserves_form(&t, &line, q, Policy::Symbolic).unwrap();
        assert!(!v.passed);
        let ce = v.counterexample.unwrap();
        assert_eq!(ce.lhs, &q.int(4) * &line.eval(&ce.input).unwrap());
        assert_eq!(scales_form(&t, &line, q, Policy::Auto { seed: 3 }).unwrap().scalar, Some(q.int(4)));
    }

    #[test]
    fn generic_map_has_no_scalar() {
        let q = Field::Rational;
        let line = Line::SymmDet { n: 2 };
        let m = Matrix::from_ints(q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let t = PreserverElement::Linear { space: line.space(), matrix: m };
        let v = scales_form(&t, &line, q, Policy::SchwartzZippel { trials: 16, seed: 1 }).unwrap();
        assert!(!v.passed);
    }
}
