//! Three independent tests for minimal elements.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Ring};
use crate::forms::{Gram, Line};
use crate::matrix::Matrix;
use crate::multilinear::{bilinear_bx, radical_dimension, rank};
use crate::poly::Poly;
use crate::rep::{RepVector, Space};
use crate::sampling::{random_nonzero_vector, random_orthogonal, random_scalar, symplectic_similitude, trial_rng};
use crate::wedge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Oracle {
    Rank,
    Rrs,
    Radical,
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Oracle::Rank => "rank",
            Oracle::Rrs => "rrs",
            Oracle::Radical => "radical",
        })
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(Oracle::Rank),
            "rrs" => Ok(Oracle::Rrs),
            "radical" => Ok(Oracle::Radical),
            other => Err(Error::Parse(format!("unknown oracle {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalityVerdict {
    pub is_minimal: bool,
    pub oracle: Oracle,
    pub witness: Option<Value>,
    pub trials: usize,
}

impl MinimalityVerdict {
    fn new(is_minimal: bool, oracle: Oracle, witness: Option<Value>) -> Self {
        MinimalityVerdict {
            is_minimal,
            oracle,
            witness,
            trials: 0,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "is_minimal": self.is_minimal,
            "oracle": self.oracle.to_string(),
            "trials": self.trials,
        });
        if let Some(w) = &self.witness {
            out["witness"] = w.clone();
        }
        out
    }
}

/// How [`minimal_by_rrs`] treats the free vector `v'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RrsPolicy {
    /// `v'` is a vector of indeterminates; every coefficient is expanded.
    Exact,
    /// `v'` is sampled; only available over the rationals.
    Randomized { trials: usize, seed: u64 },
}

fn zero_verdict(oracle: Oracle) -> MinimalityVerdict {
    MinimalityVerdict::new(false, oracle, Some(json!({"reason": "zero vector"})))
}

/// `v = c l^3` for a linear form `l`, returned as `(c, l)`.
pub fn cube_root_witness(a: &[FieldElement]) -> Option<(FieldElement, [FieldElement; 2])> {
    let field = a[0].field();
    if !a[0].is_zero() {
        let c = a[0].clone();
        let q = &a[1] / &(&field.int(3) * &c);
        let ok = a[2] == &(&field.int(3) * &c) * &(&q * &q) && a[3] == &c * &q.pow(3);
        ok.then(|| (c, [field.one(), q]))
    } else if a[1].is_zero() && a[2].is_zero() && !a[3].is_zero() {
        Some((a[3].clone(), [field.zero(), field.one()]))
    } else {
        None
    }
}

fn flattening_ranks(v: &RepVector) -> [usize; 3] {
    let x = v.coords();
    let flat = |axis: usize| {
        Matrix::from_fn(2, 4, |i, j| {
            let (hi, lo) = (j >> 1, j & 1);
            let idx = match axis {
                0 => [i, hi, lo],
                1 => [hi, i, lo],
                _ => [hi, lo, i],
            };
            x[4 * idx[0] + 2 * idx[1] + idx[2]].clone()
        })
    };
    [flat(0).rank(), flat(1).rank(), flat(2).rank()]
}

/// Representation-specific structure test.
pub fn minimal_by_rank(line: &Line, v: &RepVector) -> Result<MinimalityVerdict> {
    line.check_space(v)?;
    if v.is_zero() {
        return Ok(zero_verdict(Oracle::Rank));
    }
    let field = v.field();
    Ok(match *line {
        Line::SymmDet { .. } | Line::SquareDet { .. } => {
            let r = rank(v)?;
            MinimalityVerdict::new(r == 1, Oracle::Rank, Some(json!({"rank": r})))
        }
        Line::SkewPf { .. } => {
            let r = rank(v)?;
            MinimalityVerdict::new(r == 2, Oracle::Rank, Some(json!({"rank": r})))
        }
        Line::Quadric { .. } => {
            let q = line.eval(v)?;
            MinimalityVerdict::new(q.is_zero(), Oracle::Rank, Some(json!({"q": q.to_string()})))
        }
        Line::CubicDisc => match cube_root_witness(v.coords()) {
            Some((c, l)) => MinimalityVerdict::new(
                true,
                Oracle::Rank,
                Some(json!({"c": c.to_string(), "linear_form": [l[0].to_string(), l[1].to_string()]})),
            ),
            None => MinimalityVerdict::new(false, Oracle::Rank, None),
        },
        Line::Wedge36 | Line::Sp6 => {
            if *line == Line::Sp6 {
                line.params_of(v)?;
            }
            let d = wedge::annihilator_dim(v);
            MinimalityVerdict::new(d == 3, Oracle::Rank, Some(json!({"annihilator_dim": d})))
        }
        Line::Mat2n { n, s } => {
            let x = v.to_matrix()?;
            let r = x.rank();
            let isotropic = x.mul(&s.matrix(field, n)).mul(&x.transpose()).data().iter().all(|e| e.is_zero());
            MinimalityVerdict::new(r == 1 && isotropic, Oracle::Rank, Some(json!({"rank": r, "isotropic": isotropic})))
        }
        Line::Hyperdet => {
            let r = flattening_ranks(v);
            MinimalityVerdict::new(r == [1, 1, 1], Oracle::Rank, Some(json!({"flattening_ranks": r})))
        }
    })
}

/// Minimality of nonzero vectors in the matrix and exterior-power spaces
/// that carry no invariant form of their own.
pub fn is_minimal_in_space(v: &RepVector) -> Result<bool> {
    if v.is_zero() {
        return Ok(false);
    }
    match v.space() {
        Space::Symm { .. } | Space::Square { .. } | Space::Rect { .. } => Ok(rank(v)? == 1),
        Space::Alt { .. } => Ok(rank(v)? == 2),
        Space::Wedge { d, .. } => Ok(wedge::annihilator_dim(v) == d),
        Space::Cubic => Ok(cube_root_witness(v.coords()).is_some()),
        Space::TriTensor => Ok(flattening_ranks(v) == [1, 1, 1]),
        other => Err(Error::Unsupported(format!("no minimality test for {other}"))),
    }
}

/// `c_k` with `f(t v + w) = sum_k c_k t^k`, by interpolation at `t = 0..=deg`.
fn t_coefficients<R: Ring>(line: &Line, v: &[FieldElement], w: &[R]) -> Result<Vec<R>> {
    let field = v[0].field();
    let deg = line.degree() as usize;
    if let Field::Prime(p) = field {
        if p as usize <= deg {
            return Err(Error::Precondition(format!(
                "interpolation needs {} distinct nodes but F_{p} has only {p}",
                deg + 1
            )));
        }
    }
    let vander = Matrix::from_fn(deg + 1, deg + 1, |j, k| field.int(j as i64).pow(k as u64));
    let inv = vander.inverse().expect("distinct nodes");
    let values: Vec<R> = (0..=deg)
        .map(|j| {
            let t = field.int(j as i64);
            let point: Vec<R> = v.iter().zip(w).map(|(a, b)| b.add(&R::from_scalar(a * &t))).collect();
            line.eval_coords(&point)
        })
        .collect();
    Ok((0..=deg)
        .map(|k| {
            values
                .iter()
                .enumerate()
                .fold(R::zero_in(field), |acc, (j, val)| acc.add(&val.scale(inv.get(k, j))))
        })
        .collect())
}

fn top_degree<R: Ring>(coeffs: &[R]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// The degree-in-`t` criterion: `v` is minimal iff `f(t v + v')` has
/// `t`-degree at most the line's threshold for every `v'`.
pub fn minimal_by_rrs(line: &Line, v: &RepVector, policy: RrsPolicy) -> Result<MinimalityVerdict> {
    let threshold = line
        .rrs_threshold()
        .ok_or_else(|| Error::Unsupported(format!("the degree-in-t criterion is stated only for determinant, Pfaffian, quadric and cubic forms, not {line}")))?;
    line.check_space(v)?;
    let field = v.field();
    let (top, trials) = match policy {
        RrsPolicy::Exact => {
            let w = Poly::vars(field, line.dim());
            (top_degree(&t_coefficients(line, v.coords(), &w)?), 0)
        }
        RrsPolicy::Randomized { trials, seed } => {
            if field != Field::Rational {
                return Err(Error::Unsupported(
                    "sampling v' over a finite field is not a valid test; use the exact policy".into(),
                ));
            }
            let mut top = None;
            for i in 0..trials {
                let mut rng = trial_rng(seed, i as u64);
                let w = crate::sampling::random_vector(field, line.dim(), &mut rng);
                top = top.max(top_degree(&t_coefficients(line, v.coords(), &w)?));
                if top.is_some_and(|d| d > threshold as usize) {
                    break;
                }
            }
            (top, trials)
        }
    };
    if v.is_zero() {
        let mut z = zero_verdict(Oracle::Rrs);
        z.trials = trials;
        return Ok(z);
    }
    let degree = top.unwrap_or(0);
    Ok(MinimalityVerdict {
        is_minimal: degree <= threshold as usize,
        oracle: Oracle::Rrs,
        witness: Some(json!({"t_degree": degree, "threshold": threshold})),
        trials,
    })
}

/// `v` is minimal iff the radical of `b_v` has codimension one.
pub fn minimal_by_radical(line: &Line, v: &RepVector) -> Result<MinimalityVerdict> {
    if !line.supports_radical() {
        return Err(Error::Unsupported(format!(
            "the radical criterion needs a quartic with a symplectic pairing, not {line}"
        )));
    }
    line.check_space(v)?;
    if *line == Line::Sp6 {
        line.params_of(v)?;
    }
    if v.is_zero() {
        return Ok(zero_verdict(Oracle::Radical));
    }
    let rad = radical_dimension(&bilinear_bx(line, v)?);
    Ok(MinimalityVerdict::new(
        rad + 1 == line.dim(),
        Oracle::Radical,
        Some(json!({"radical_dim": rad, "dim": line.dim()})),
    ))
}

/// Oracles applicable to `line`.
pub fn oracles(line: &Line) -> Vec<Oracle> {
    let mut out = vec![Oracle::Rank];
    if line.rrs_threshold().is_some() {
        out.push(Oracle::Rrs);
    }
    if line.supports_radical() {
        out.push(Oracle::Radical);
    }
    out
}

pub fn run_oracle(line: &Line, v: &RepVector, oracle: Oracle) -> Result<MinimalityVerdict> {
    match oracle {
        Oracle::Rank => minimal_by_rank(line, v),
        Oracle::Rrs => minimal_by_rrs(line, v, RrsPolicy::Exact),
        Oracle::Radical => minimal_by_radical(line, v),
    }
}

fn outer(u: &[FieldElement], w: &[FieldElement]) -> Matrix {
    Matrix::from_fn(u.len(), w.len(), |i, j| &u[i] * &w[j])
}

fn isotropic_vector<R: Rng + ?Sized>(field: Field, n: usize, s: Gram, rng: &mut R) -> Result<Vec<FieldElement>> {
    let gram = s.matrix(field, n);
    match s {
        Gram::Split => {
            let o = random_orthogonal(field, n, s, rng);
            let mut e = vec![field.zero(); n];
            e[0] = random_scalar(field, rng);
            Ok(o.mul_vec(&e))
        }
        Gram::Identity => {
            if field == Field::Rational {
                return Err(Error::Unsupported("the identity form has no rational isotropic vectors".into()));
            }
            for _ in 0..10_000 {
                let w = random_nonzero_vector(field, n, rng);
                let sw = gram.mul_vec(&w);
                if w.iter().zip(&sw).fold(field.zero(), |a, (x, y)| &a + &(x * y)).is_zero() {
                    return Ok(w);
                }
            }
            Err(Error::SamplingExhausted(10_000))
        }
    }
}

fn independent<R: Rng + ?Sized>(field: Field, n: usize, k: usize, rng: &mut R) -> Vec<Vec<FieldElement>> {
    loop {
        let vs: Vec<Vec<FieldElement>> = (0..k).map(|_| random_nonzero_vector(field, n, rng)).collect();
        if Matrix::from_rows(vs.clone()).rank() == k {
            return vs;
        }
    }
}

/// A random minimal element of the form's representation.
pub fn sample_minimal<R: Rng + ?Sized>(line: &Line, field: Field, rng: &mut R) -> Result<RepVector> {
    let space = line.space();
    Ok(match *line {
        Line::SymmDet { n } => {
            let u = random_nonzero_vector(field, n, rng);
            RepVector::from_matrix(space, &outer(&u, &u).scale(&random_scalar(field, rng)))?
        }
        Line::SkewPf { .. } | Line::SquareDet { .. } | Line::Wedge36 | Line::Hyperdet => sample_minimal_in_space(space, field, rng)?,
        Line::Quadric { n, s } => RepVector::new(space, isotropic_vector(field, n, s, rng)?),
        Line::CubicDisc => sample_minimal_in_space(space, field, rng)?,
        Line::Sp6 => {
            let g = symplectic_similitude(field, &random_scalar(field, rng), rng);
            let col = |j: usize| (0..6).map(|i| g.get(i, j).clone()).collect::<Vec<_>>();
            // g maps the Lagrangian span of e1, e3, e5 to a Lagrangian subspace
            wedge::decomposable(&[col(0), col(2), col(4)]).scale(&random_scalar(field, rng))
        }
        Line::Mat2n { n, s } => {
            let u = random_nonzero_vector(field, 2, rng);
            let w = isotropic_vector(field, n, s, rng)?;
            RepVector::from_matrix(space, &outer(&u, &w))?
        }
    })
}

/// A random minimal element of a matrix, exterior-power, cubic or tensor space.
pub fn sample_minimal_in_space<R: Rng + ?Sized>(space: Space, field: Field, rng: &mut R) -> Result<RepVector> {
    Ok(match space {
        Space::Symm { n } => {
            let u = random_nonzero_vector(field, n, rng);
            RepVector::from_matrix(space, &outer(&u, &u).scale(&random_scalar(field, rng)))?
        }
        Space::Alt { n } => {
            let uw = independent(field, n, 2, rng);
            let m = outer(&uw[0], &uw[1]);
            RepVector::from_matrix(space, &m.sub(&m.transpose()))?
        }
        Space::Square { n } => {
            let u = random_nonzero_vector(field, n, rng);
            let w = random_nonzero_vector(field, n, rng);
            RepVector::from_matrix(space, &outer(&u, &w))?
        }
        Space::Rect { m, n } => {
            let u = random_nonzero_vector(field, m, rng);
            let w = random_nonzero_vector(field, n, rng);
            RepVector::from_matrix(space, &outer(&u, &w))?
        }
        Space::Wedge { d, n } => wedge::decomposable(&independent(field, n, d, rng)),
        Space::Cubic => {
            let l = random_nonzero_vector(field, 2, rng);
            let c = random_scalar(field, rng);
            let (p, q) = (&l[0], &l[1]);
            let three = field.int(3);
            RepVector::new(
                space,
                vec![
                    &c * &p.pow(3),
                    &(&c * &three) * &(&(p * p) * q),
                    &(&c * &three) * &(&(q * q) * p),
                    &c * &q.pow(3),
                ],
            )
        }
        Space::TriTensor => {
            let (a, b, c) = (
                random_nonzero_vector(field, 2, rng),
                random_nonzero_vector(field, 2, rng),
                random_nonzero_vector(field, 2, rng),
            );
            let ab = Matrix::from_vec(2, 1, a).kron(&Matrix::from_vec(2, 1, b));
            RepVector::new(space, ab.kron(&Matrix::from_vec(2, 1, c)).into_data())
        }
        other => return Err(Error::Unsupported(format!("no minimal-element sampler for {other}"))),
    })
}
