//! Exhaustive checks over small prime fields.
//!
//! These run on raw `u64` residues; the `F_3` case sits below the library's
//! admissible primes and never touches [`crate::field::Field`].

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::Line;
use crate::minimality::{minimal_by_radical, minimal_by_rank, minimal_by_rrs, RrsPolicy};
use crate::rep::{RepVector, Space};

/// Largest `p^(dim^2)` the enumerator accepts.
pub const ENUMERATION_BUDGET: u64 = 1_000_000_000;

pub const CASES: [&str; 3] = ["rk1fix-symm2-f3", "cubic-oracles-f5", "cubic-census-f5"];

/// A square matrix over `F_p`, row-major.
pub type RawMatrix = Vec<u64>;

fn all_vectors(dim: usize, p: u64) -> Vec<Vec<u64>> {
    let total = p.pow(dim as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0; dim];
            for slot in v.iter_mut().rev() {
                *slot = k % p;
                k /= p;
            }
            v
        })
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::field::mod_inverse(a, p).expect("nonzero residue")
}

/// Reduces `v` against an echelon basis; `None` when it lies in the span.
fn reduce(basis: &[(usize, Vec<u64>)], v: &[u64], p: u64) -> Option<(usize, Vec<u64>)> {
    let mut v = v.to_vec();
    for (pivot, b) in basis {
        let c = v[*pivot];
        if c != 0 {
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + p - c * y % p) % p;
            }
        }
    }
    let pivot = v.iter().position(|&x| x != 0)?;
    let s = inv_mod(v[pivot], p);
    for x in v.iter_mut() {
        *x = *x * s % p;
    }
    Some((pivot, v))
}

fn extend(rows: &mut Vec<u64>, basis: &mut Vec<(usize, Vec<u64>)>, vectors: &[Vec<u64>], dim: usize, p: u64, out: &mut Vec<RawMatrix>) {
    if basis.len() == dim {
        out.push(rows.clone());
        return;
    }
    for v in vectors {
        if let Some(b) = reduce(basis, v, p) {
            rows.extend_from_slice(v);
            basis.push(b);
            extend(rows, basis, vectors, dim, p, out);
            basis.pop();
            rows.truncate(rows.len() - dim);
        }
    }
}

/// Every invertible `dim × dim` matrix over `F_p`, in row-major lexicographic order.
pub fn enumerate_invertible(dim: usize, p: u64) -> Result<Vec<RawMatrix>> {
    if p < 2 || !crate::field::is_prime(p) {
        return Err(Error::InadmissibleModulus(p));
    }
    let cells = (dim * dim) as u32;
    match p.checked_pow(cells) {
        Some(n) if n <= ENUMERATION_BUDGET => {}
        _ => return Err(Error::Budget(format!("{p}^{cells} matrices exceed the enumeration budget"))),
    }
    let vectors = all_vectors(dim, p);
    let chunks: Vec<Vec<RawMatrix>> = vectors
        .par_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|first| {
            let mut out = Vec::new();
            let mut rows = first.clone();
            let mut basis = vec![reduce(&[], first, p).unwrap()];
            extend(&mut rows, &mut basis, &vectors, dim, p, &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `prod_{i < dim} (p^dim - p^i)`.
pub fn gl_order(dim: usize, p: u64) -> u64 {
    let q = p.pow(dim as u32);
    (0..dim).map(|i| q - p.pow(i as u32)).product()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub case: String,
    pub field: String,
    pub total: u64,
    pub counts: BTreeMap<String, u64>,
    pub expected: BTreeMap<String, u64>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.expected.iter().all(|(k, v)| self.counts.get(k) == Some(v))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "field": self.field,
            "total": self.total,
            "counts": self.counts,
            "expected": self.expected,
            "passed": self.passed(),
        })
    }
}

fn mat_vec(m: &[u64], v: &[u64], p: u64) -> Vec<u64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum::<u64>() % p).collect()
}

/// Nonzero vectors spanning distinct lines, first nonzero coordinate `1`.
fn normalized(v: &[u64]) -> bool {
    v.iter().find(|&&x| x != 0) == Some(&1)
}

fn same_line(a: &[u64], b: &[u64], p: u64) -> bool {
    // b = λ a for some λ != 0
    let Some(i) = a.iter().position(|&x| x != 0) else { return false };
    let lambda = b[i] * inv_mod(a[i], p) % p;
    lambda != 0 && a.iter().zip(b).all(|(x, y)| x * lambda % p == *y)
}

/// Linear maps of `Symm_2(F_3)` fixing every rank-one line are the two scalars.
pub fn case_scalar_fixer() -> Result<CensusReport> {
    let p = 3;
    // coordinates (x11, x12, x22); rank one means x11 x22 = x12^2
    let lines: Vec<Vec<u64>> = all_vectors(3, p)
        .into_iter()
        .filter(|v| normalized(v) && (v[0] * v[2]) % p == (v[1] * v[1]) % p)
        .collect();
    let maps = enumerate_invertible(3, p)?;
    let fixers: Vec<&RawMatrix> = maps
        .par_iter()
        .filter(|m| lines.iter().all(|l| same_line(l, &mat_vec(m, l, p), p)))
        .collect();
    let scalar = |m: &RawMatrix| (0..3).all(|i| (0..3).all(|j| if i == j { m[i * 3 + j] == m[0] } else { m[i * 3 + j] == 0 }));
    let counts = BTreeMap::from([
        ("invertible_maps".to_string(), maps.len() as u64),
        ("rank1_lines".to_string(), lines.len() as u64),
        ("fixers".to_string(), fixers.len() as u64),
        ("scalar_fixers".to_string(), fixers.iter().filter(|m| scalar(m)).count() as u64),
    ]);
    let expected = BTreeMap::from([
        ("invertible_maps".to_string(), gl_order(3, p)),
        ("rank1_lines".to_string(), 4),
        ("fixers".to_string(), 2),
        ("scalar_fixers".to_string(), 2),
    ]);
    Ok(CensusReport {
        case: "rk1fix-symm2-f3".into(),
        field: "F3".into(),
        total: maps.len() as u64,
        counts,
        expected,
    })
}

/// All binary cubics over `F_5` under the three minimality oracles.
pub fn case_cubic_oracles() -> Result<CensusReport> {
    let field = Field::prime(5)?;
    let line = Line::CubicDisc;
    let vectors = all_vectors(4, 5);
    let verdicts: Vec<Result<[bool; 3]>> = vectors
        .par_iter()
        .map(|a| {
            let v = RepVector::new(Space::Cubic, a.iter().map(|&x| field.int(x as i64)).collect());
            Ok([
                minimal_by_rank(&line, &v)?.is_minimal,
                minimal_by_rrs(&line, &v, RrsPolicy::Exact)?.is_minimal,
                minimal_by_radical(&line, &v)?.is_minimal,
            ])
        })
        .collect();
    let verdicts = verdicts.into_iter().collect::<Result<Vec<_>>>()?;
    let count = |i: usize| verdicts.iter().filter(|v| v[i]).count() as u64;
    let counts = BTreeMap::from([
        ("vectors".to_string(), verdicts.len() as u64),
        ("minimal_rank".to_string(), count(0)),
        ("minimal_rrs".to_string(), count(1)),
        ("minimal_radical".to_string(), count(2)),
        ("disagreements".to_string(), verdicts.iter().filter(|v| !(v[0] == v[1] && v[1] == v[2])).count() as u64),
    ]);
    let expected = BTreeMap::from([
        ("vectors".to_string(), 625),
        ("minimal_rank".to_string(), 24),
        ("minimal_rrs".to_string(), 24),
        ("minimal_radical".to_string(), 24),
        ("disagreements".to_string(), 0),
    ]);
    Ok(CensusReport {
        case: "cubic-oracles-f5".into(),
        field: field.descriptor(),
        total: verdicts.len() as u64,
        counts,
        expected,
    })
}

fn disc_u64(a: &[u64], p: u64) -> u64 {
    let v: Vec<FieldElement> = a.iter().map(|&x| Field::Prime(p).int(x as i64)).collect();
    Line::CubicDisc.eval_coords(&v).as_residue().expect("residue")
}

/// Matrix of `q ↦ c (q ∘ g)` on coefficient vectors.
fn cubic_action(c: u64, g: &[u64], p: u64) -> RawMatrix {
    let (a, b, cc, d) = (g[0], g[1], g[2], g[3]);
    // x ↦ a x + b y, y ↦ cc x + d y; image of x^(3-k) y^k as coefficients
    let mul = |poly: &[u64], l: [u64; 2]| -> Vec<u64> {
        let mut out = vec![0; poly.len() + 1];
        for (i, &coef) in poly.iter().enumerate() {
            out[i] = (out[i] + coef * l[0]) % p;
            out[i + 1] = (out[i + 1] + coef * l[1]) % p;
        }
        out
    };
    let mut m = vec![0; 16];
    for k in 0..4 {
        let mut poly = vec![c % p];
        for _ in 0..3 - k {
            poly = mul(&poly, [a, b]);
        }
        for _ in 0..k {
            poly = mul(&poly, [cc, d]);
        }
        for (i, &x) in poly.iter().enumerate() {
            m[i * 4 + k] = x;
        }
    }
    m
}

/// Every pair `(c, g)` over `F_5`: the constraint `c^4 det(g)^6 = 1` holds
/// exactly for the pairs preserving the discriminant.
pub fn case_cubic_census() -> Result<CensusReport> {
    let p = 5;
    let vectors = all_vectors(4, p);
    let disc: Vec<u64> = vectors.iter().map(|v| disc_u64(v, p)).collect();
    let index = |v: &[u64]| v.iter().fold(0u64, |acc, &x| acc * p + x) as usize;
    let gl2 = enumerate_invertible(2, p)?;
    let pairs: Vec<(u64, &RawMatrix)> = (1..p).flat_map(|c| gl2.iter().map(move |g| (c, g))).collect();
    let results: Vec<(bool, bool, RawMatrix)> = pairs
        .par_iter()
        .map(|&(c, g)| {
            let det = (g[0] * g[3] + p * p - g[1] * g[2] % p) % p;
            let chi = crate::field::pow_mod(c, 4, p) * crate::field::pow_mod(det, 6, p) % p;
            let m = cubic_action(c, g, p);
            let preserves = vectors.iter().enumerate().all(|(i, v)| disc[index(&mat_vec(&m, v, p))] == disc[i]);
            (chi == 1, preserves, m)
        })
        .collect();
    let filtered = results.iter().filter(|r| r.0).count() as u64;
    let exceptions = results.iter().filter(|r| r.0 != r.1).count() as u64;
    let distinct: HashSet<&RawMatrix> = results.iter().filter(|r| r.0).map(|r| &r.2).collect();
    let counts = BTreeMap::from([
        ("pairs".to_string(), results.len() as u64),
        ("filtered_pairs".to_string(), filtered),
        ("preserving_pairs".to_string(), results.iter().filter(|r| r.1).count() as u64),
        ("exceptions".to_string(), exceptions),
        ("distinct_maps".to_string(), distinct.len() as u64),
    ]);
    let expected = BTreeMap::from([
        ("pairs".to_string(), 4 * gl_order(2, p)),
        ("filtered_pairs".to_string(), 960),
        ("preserving_pairs".to_string(), 960),
        ("exceptions".to_string(), 0),
        ("distinct_maps".to_string(), 240),
    ]);
    Ok(CensusReport {
        case: "cubic-census-f5".into(),
        field: "Fp:5".into(),
        total: results.len() as u64,
        counts,
        expected,
    })
}

pub fn run_case(id: &str) -> Result<CensusReport> {
    match id {
        "rk1fix-symm2-f3" => case_scalar_fixer(),
        "cubic-oracles-f5" => case_cubic_oracles(),
        "cubic-census-f5" => case_cubic_census(),
        other => Err(Error::Parse(format!("unknown case {other:?}"))),
    }
}
