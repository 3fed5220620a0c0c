//! The invariant forms and their evaluation.
//!
//! Every form is written once against [`Ring`], so the same code evaluates a
//! number or expands a symbolic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Ring};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::rep::{RepVector, Space};
use crate::wedge;

/// Which symmetric matrix `S` a quadric or a `k^2 ⊗ k^n` form uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gram {
    /// Ones on the antidiagonal; isotropic vectors exist over every field.
    Split,
    Identity,
}

impl Gram {
    pub fn matrix(&self, field: Field, n: usize) -> Matrix {
        match self {
            Gram::Split => Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { field.one() } else { field.zero() }),
            Gram::Identity => Matrix::identity(field, n),
        }
    }
}

/// An invariant form with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Line {
    /// `det` on symmetric `n × n` matrices.
    SymmDet { n: usize },
    /// `Pf` on alternating `n × n` matrices, `n` even.
    SkewPf { n: usize },
    /// `det` on all `n × n` matrices.
    SquareDet { n: usize },
    /// `v^t S v` on `k^n`.
    Quadric { n: usize, s: Gram },
    /// Discriminant of a binary cubic.
    CubicDisc,
    /// The `SL_6`-invariant quartic on `∧^3 k^6`.
    Wedge36,
    /// Its restriction to the kernel of the symplectic contraction.
    Sp6,
    /// `det(X S X^t)` on `2 × n` matrices.
    Mat2n { n: usize, s: Gram },
    /// Cayley's hyperdeterminant of a `2 × 2 × 2` tensor.
    Hyperdet,
}

impl Line {
    pub fn degree(&self) -> u32 {
        match *self {
            Line::SymmDet { n } | Line::SquareDet { n } => n as u32,
            Line::SkewPf { n } => (n / 2) as u32,
            Line::Quadric { .. } => 2,
            Line::CubicDisc | Line::Wedge36 | Line::Sp6 | Line::Mat2n { .. } | Line::Hyperdet => 4,
        }
    }

    /// The ambient coordinate space of input vectors.
    pub fn space(&self) -> Space {
        match *self {
            Line::SymmDet { n } => Space::Symm { n },
            Line::SkewPf { n } => Space::Alt { n },
            Line::SquareDet { n } => Space::Square { n },
            Line::Quadric { n, .. } => Space::Plain { n },
            Line::CubicDisc => Space::Cubic,
            Line::Wedge36 | Line::Sp6 => Space::Wedge { d: 3, n: 6 },
            Line::Mat2n { n, .. } => Space::Rect { m: 2, n },
            Line::Hyperdet => Space::TriTensor,
        }
    }

    /// Dimension of the representation (14 for the symplectic subspace).
    pub fn dim(&self) -> usize {
        match self {
            Line::Sp6 => 14,
            other => other.space().dim(),
        }
    }

    /// Maximal `t`-degree of `f(t v + v')` for minimal `v`, for the forms where
    /// that degree characterizes minimality.
    pub fn rrs_threshold(&self) -> Option<u32> {
        match self {
            Line::SymmDet { .. } | Line::SkewPf { .. } | Line::SquareDet { .. } | Line::Quadric { .. } => Some(1),
            Line::CubicDisc => Some(2),
            _ => None,
        }
    }

    /// Quartic forms with a symplectic structure, where the radical test applies.
    pub fn supports_radical(&self) -> bool {
        matches!(
            self,
            Line::CubicDisc | Line::Wedge36 | Line::Sp6 | Line::Mat2n { .. } | Line::Hyperdet
        )
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Line::SymmDet { n } | Line::SquareDet { n } if n < 2 => Err(Error::Precondition(format!("n = {n} must be at least 2"))),
            Line::SkewPf { n } if n % 2 == 1 => Err(Error::Precondition(format!("odd n = {n} has no Pfaffian"))),
            Line::SkewPf { n } if n < 4 => Err(Error::Precondition(format!("n = {n} must be at least 4"))),
            Line::Quadric { n, .. } if n < 2 => Err(Error::Precondition(format!("n = {n} must be at least 2"))),
            Line::Mat2n { n, .. } if n < 4 => Err(Error::Precondition(format!("n = {n} must be at least 4"))),
            _ if self.space().dim() > crate::poly::MAX_VARS => {
                Err(Error::Unsupported(format!("{self} has more than {} coordinates", crate::poly::MAX_VARS)))
            }
            _ => Ok(()),
        }
    }

    pub fn convention(&self) -> Value {
        match self {
            Line::SkewPf { .. } => json!("Pf by first-row expansion, Pf(J) = 1 for J pairing e1<->e2, e3<->e4, ..."),
            Line::Quadric { s, .. } | Line::Mat2n { s, .. } => json!(format!("S = {}", match s {
                Gram::Split => "antidiagonal ones",
                Gram::Identity => "identity",
            })),
            Line::CubicDisc => json!("a1^2 a2^2 + 18 a0 a1 a2 a3 - 4 a0 a2^3 - 4 a1^3 a3 - 27 a0^2 a3^2"),
            Line::Wedge36 | Line::Sp6 => json!(format!(
                "f = {} tr(K_v^2), K_v[j][i] = coefficient of e1..e6 in e_j ^ (i_i v) ^ v; b pairs e1<->e2, e3<->e4, e5<->e6",
                wedge36_constant()
            )),
            Line::Hyperdet => json!("Cayley, hyperdet(e111 + e222) = 1; equals -det(X S X^t) for S = J (x) J"),
            _ => json!("det"),
        }
    }

    /// Evaluates the form on a vector of its space.
    pub fn eval(&self, v: &RepVector) -> Result<FieldElement> {
        self.check_space(v)?;
        if *self == Line::Sp6 && !sp6_contract(v).is_zero() {
            return Err(Error::Precondition("vector is outside the kernel of the symplectic contraction".into()));
        }
        Ok(self.eval_coords(v.coords()))
    }

    pub fn check_space(&self, v: &RepVector) -> Result<()> {
        if v.space() != self.space() {
            return Err(Error::SpaceMismatch {
                expected: self.space().to_string(),
                found: v.space().to_string(),
            });
        }
        Ok(())
    }

    /// Evaluates on raw ambient coordinates over any ring.
    pub fn eval_coords<R: Ring>(&self, x: &[R]) -> R {
        debug_assert_eq!(x.len(), self.space().dim());
        let field = x[0].field();
        match *self {
            Line::SymmDet { .. } | Line::SquareDet { .. } => {
                let v = RepVector::new(self.space(), x.to_vec());
                R::determinant(&v.to_matrix().unwrap())
            }
            Line::SkewPf { .. } => {
                let v = RepVector::new(self.space(), x.to_vec());
                pfaffian_ring(&v.to_matrix().unwrap())
            }
            Line::Quadric { n, s } => {
                let s = s.matrix(field, n);
                let mut acc = R::zero_in(field);
                for i in 0..n {
                    for j in 0..n {
                        if !s.get(i, j).is_zero() {
                            acc = acc.add(&x[i].mul(&x[j]).scale(s.get(i, j)));
                        }
                    }
                }
                acc
            }
            Line::CubicDisc => cubic_disc(x),
            Line::Wedge36 | Line::Sp6 => wedge36_quartic(x),
            Line::Mat2n { n, s } => {
                let s = s.matrix(field, n);
                let entry = |a: usize, b: usize| {
                    let mut acc = R::zero_in(field);
                    for i in 0..n {
                        for j in 0..n {
                            if !s.get(i, j).is_zero() {
                                acc = acc.add(&x[a * n + i].mul(&x[b * n + j]).scale(s.get(i, j)));
                            }
                        }
                    }
                    acc
                };
                let (m00, m01, m11) = (entry(0, 0), entry(0, 1), entry(1, 1));
                m00.mul(&m11).sub(&m01.square())
            }
            Line::Hyperdet => hyperdet_ring(x),
        }
    }

    /// Symbolic coordinates `x(y)` of a generic point, as polynomials in `dim()` variables.
    pub fn generic_point(&self, field: Field) -> Vec<Poly> {
        match self {
            Line::Sp6 => {
                let basis = sp6_basis(field);
                (0..20)
                    .map(|r| Poly::linear(&(0..14).map(|c| basis.get(r, c).clone()).collect::<Vec<_>>()))
                    .collect()
            }
            _ => Poly::vars(field, self.dim()),
        }
    }

    /// The vector with parameters `y` (ambient coordinates except for the symplectic subspace).
    pub fn point(&self, y: &[FieldElement]) -> RepVector {
        match self {
            Line::Sp6 => RepVector::new(self.space(), sp6_basis(y[0].field()).mul_vec(y)),
            _ => RepVector::new(self.space(), y.to_vec()),
        }
    }

    /// A basis of the representation inside the ambient space.
    pub fn basis(&self, field: Field) -> Vec<RepVector> {
        match self {
            Line::Sp6 => {
                let b = sp6_basis(field);
                (0..14)
                    .map(|c| RepVector::new(self.space(), (0..20).map(|r| b.get(r, c).clone()).collect()))
                    .collect()
            }
            _ => (0..self.dim()).map(|i| RepVector::basis(self.space(), field, i)).collect(),
        }
    }

    /// Parameters of a vector of the representation (inverse of [`Line::point`]).
    pub fn params_of(&self, v: &RepVector) -> Result<Vec<FieldElement>> {
        self.check_space(v)?;
        match self {
            Line::Sp6 => sp6_basis(v.field())
                .solve(v.coords())
                .ok_or_else(|| Error::Precondition("vector is outside the kernel of the symplectic contraction".into())),
            _ => Ok(v.coords().to_vec()),
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = |s: &Gram| if *s == Gram::Identity { ":id" } else { "" };
        match self {
            Line::SymmDet { n } => write!(f, "symm-det:{n}"),
            Line::SkewPf { n } => write!(f, "skew-pf:{n}"),
            Line::SquareDet { n } => write!(f, "square-det:{n}"),
            Line::Quadric { n, s } => write!(f, "quadric:{n}{}", suffix(s)),
            Line::CubicDisc => write!(f, "cubic-disc"),
            Line::Wedge36 => write!(f, "wedge36"),
            Line::Sp6 => write!(f, "sp6"),
            Line::Mat2n { n, s } => write!(f, "mat2n:{n}{}", suffix(s)),
            Line::Hyperdet => write!(f, "hyperdet"),
        }
    }
}

impl FromStr for Line {
    type Err = Error;

    /// Parses `symm-det:n`, `skew-pf:n`, `square-det:n`, `quadric:n[:id]`,
    /// `cubic-disc`, `wedge36`, `sp6`, `mat2n:n[:id]`, `hyperdet`.
    fn from_str(s: &str) -> Result<Line> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let n = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::Parse(format!("form {s:?} needs a size, e.g. {}:3", parts[0])))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad size in form {s:?}")))
        };
        let gram = |i: usize| -> Result<Gram> {
            match parts.get(i) {
                None | Some(&"split") => Ok(Gram::Split),
                Some(&"id") => Ok(Gram::Identity),
                Some(other) => Err(Error::Parse(format!("unknown Gram matrix {other:?}"))),
            }
        };
        let line = match parts[0] {
            "symm-det" => Line::SymmDet { n: n(1)? },
            "skew-pf" => Line::SkewPf { n: n(1)? },
            "square-det" => Line::SquareDet { n: n(1)? },
            "quadric" => Line::Quadric { n: n(1)?, s: gram(2)? },
            "cubic-disc" => Line::CubicDisc,
            "wedge36" => Line::Wedge36,
            "sp6" => Line::Sp6,
            "mat2n" => Line::Mat2n { n: n(1)?, s: gram(2)? },
            "hyperdet" => Line::Hyperdet,
            other => return Err(Error::Parse(format!("unknown form {other:?}"))),
        };
        line.validate()?;
        Ok(line)
    }
}

/// Pfaffian of an alternating matrix by first-row expansion.
pub fn pfaffian(m: &Matrix) -> Result<FieldElement> {
    if !m.is_square() || m.rows() % 2 == 1 {
        return Err(Error::Precondition(format!("odd n = {} has no Pfaffian", m.rows())));
    }
    if !m.is_alternating() {
        return Err(Error::Precondition("matrix is not alternating".into()));
    }
    Ok(pfaffian_ring(m))
}

/// Pfaffian over any ring; reads only the strict upper triangle.
pub fn pfaffian_ring<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows();
    assert!(n.is_multiple_of(2) && n <= 32);
    let mut memo = HashMap::new();
    pf_rec(m, if n == 32 { u32::MAX } else { (1u32 << n) - 1 }, &mut memo)
}

fn pf_rec<R: Ring>(m: &Matrix<R>, mask: u32, memo: &mut HashMap<u32, R>) -> R {
    let field = m.field();
    if mask == 0 {
        return R::one_in(field);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = R::zero_in(field);
    let mut pos = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(i, j);
        if !a.is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            let t = a.mul(&sub);
            acc = if pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

fn cubic_disc<R: Ring>(a: &[R]) -> R {
    let (a0, a1, a2, a3) = (&a[0], &a[1], &a[2], &a[3]);
    let a1a2 = a1.mul(a2);
    a1a2.square()
        .add(&a0.mul(&a1a2).mul(a3).scale_int(18))
        .sub(&a0.mul(&a2.square().mul(a2)).scale_int(4))
        .sub(&a1.square().mul(a1).mul(a3).scale_int(4))
        .sub(&a0.mul(a3).square().scale_int(27))
}

/// Cayley's hyperdeterminant with coordinates `a[4i + 2j + k]`.
pub fn hyperdet_ring<R: Ring>(a: &[R]) -> R {
    let t = |i: usize, j: usize, k: usize| &a[4 * i + 2 * j + k];
    let p = |x: [(usize, usize, usize); 4]| t(x[0].0, x[0].1, x[0].2).mul(t(x[1].0, x[1].1, x[1].2)).mul(t(x[2].0, x[2].1, x[2].2)).mul(t(x[3].0, x[3].1, x[3].2));
    let squares = p([(0, 0, 0), (0, 0, 0), (1, 1, 1), (1, 1, 1)])
        .add(&p([(0, 0, 1), (0, 0, 1), (1, 1, 0), (1, 1, 0)]))
        .add(&p([(0, 1, 0), (0, 1, 0), (1, 0, 1), (1, 0, 1)]))
        .add(&p([(1, 0, 0), (1, 0, 0), (0, 1, 1), (0, 1, 1)]));
    let cross = p([(0, 0, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)])
        .add(&p([(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)]))
        .add(&p([(0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 1)]))
        .add(&p([(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)]))
        .add(&p([(0, 0, 1), (1, 0, 0), (0, 1, 1), (1, 1, 0)]))
        .add(&p([(0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 0, 1)]));
    let quad = p([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]).add(&p([(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]));
    squares.sub(&cross.scale_int(2)).add(&quad.scale_int(4))
}

pub fn hyperdet(v: &RepVector) -> Result<FieldElement> {
    Line::Hyperdet.eval(v)
}

/// `hyperdet(v) = HYPERDET_RATIO * det(X S X^t)` for `X = tensor_as_mat2n(v)` and split `S`.
pub const HYPERDET_RATIO: i64 = -1;

/// `a_ijk ↦ X[i][2j + k]`, with column 1 negated so that the split form on
/// `k^4` pulls back to `J ⊗ J`.
pub fn tensor_as_mat2n(v: &RepVector) -> Result<RepVector> {
    if v.space() != Space::TriTensor {
        return Err(Error::SpaceMismatch {
            expected: Space::TriTensor.to_string(),
            found: v.space().to_string(),
        });
    }
    let mut coords = v.coords().to_vec();
    for i in 0..2 {
        coords[4 * i + 1] = -&coords[4 * i + 1];
    }
    Ok(RepVector::new(Space::Rect { m: 2, n: 4 }, coords))
}

/// Sparse description of `K_v`: for each entry, the signed products `v_I v_J`.
type KTable = Vec<Vec<(usize, usize, i64)>>;

fn k_table() -> &'static KTable {
    static TABLE: OnceLock<KTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let sets = wedge::subsets(3, 6);
        let mut table = Vec::with_capacity(36);
        for j in 0..6 {
            for i in 0..6 {
                let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
                for (ri, set) in sets.iter().enumerate() {
                    let Some(pos) = set.iter().position(|&x| x == i) else { continue };
                    let rest: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
                    let contract_sign = if pos % 2 == 0 { 1 } else { -1 };
                    let Some(s1) = wedge::merge_sign(&[j], &rest) else { continue };
                    let mut left = rest.clone();
                    left.push(j);
                    left.sort_unstable();
                    for (rj, other) in sets.iter().enumerate() {
                        let Some(s2) = wedge::merge_sign(&left, other) else { continue };
                        let key = (ri.min(rj), ri.max(rj));
                        *acc.entry(key).or_insert(0) += contract_sign * s1 * s2;
                    }
                }
                let mut terms: Vec<_> = acc.into_iter().filter(|&(_, s)| s != 0).map(|((a, b), s)| (a, b, s)).collect();
                terms.sort_unstable();
                table.push(terms);
            }
        }
        table
    })
}

/// `tr(K_v^2)` before normalization.
fn wedge36_trace<R: Ring>(x: &[R]) -> R {
    let field = x[0].field();
    let table = k_table();
    let k: Vec<R> = table
        .iter()
        .map(|terms| {
            let mut acc = R::zero_in(field);
            for &(a, b, s) in terms {
                if x[a].is_zero() || x[b].is_zero() {
                    continue;
                }
                acc = acc.add(&x[a].mul(&x[b]).scale_int(s));
            }
            acc
        })
        .collect();
    let mut diag = R::zero_in(field);
    let mut off = R::zero_in(field);
    for i in 0..6 {
        diag = diag.add(&k[i * 6 + i].square());
        for j in i + 1..6 {
            off = off.add(&k[i * 6 + j].mul(&k[j * 6 + i]));
        }
    }
    diag.add(&off.scale_int(2))
}

/// The normalization constant `c0` with `f = c0 tr(K_v^2)`, calibrated on one
/// point of the form `e1 ∧ x + e2 ∧ y` against `<x,y>^2 - 4 Pf(x) Pf(y)`.
pub fn wedge36_constant() -> &'static BigRational {
    static C0: OnceLock<BigRational> = OnceLock::new();
    C0.get_or_init(|| {
        let q = Field::Rational;
        let x = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
        let y = RepVector::from_ints(Space::Alt { n: 4 }, q, &[0, 0, 0, 0, 0, 1]);
        let target = sl6_reference(&x, &y);
        let raw = wedge36_trace(sl6_w(&x, &y).coords());
        let c = &target / &raw;
        c.as_rational().expect("rational calibration").clone()
    })
}

fn wedge36_quartic<R: Ring>(x: &[R]) -> R {
    let field = x[0].field();
    let c0 = field.from_rational(wedge36_constant()).expect("calibration constant reduces");
    wedge36_trace(x).scale(&c0)
}

pub fn quartic_wedge36(v: &RepVector) -> Result<FieldElement> {
    Line::Wedge36.eval(v)
}

/// The quartic on `∧^3_0 k^6`; rejects vectors with nonzero contraction.
pub fn quartic_sp6(v: &RepVector) -> Result<FieldElement> {
    Line::Sp6.eval(v)
}

/// `w(a ⊗ x + b ⊗ y) = e1 ∧ x + e2 ∧ y` with `x, y ∈ ∧^2` of the span of `e3..e6`.
pub fn sl6_w(x: &RepVector, y: &RepVector) -> RepVector {
    assert_eq!(x.space(), Space::Alt { n: 4 });
    assert_eq!(y.space(), Space::Alt { n: 4 });
    let field = x.field();
    let mut out = vec![field.zero(); 20];
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    for (lead, v) in [(0usize, x), (1usize, y)] {
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let idx = wedge::rank_subset(&[lead, i + 2, j + 2]);
            out[idx] = &out[idx] + &v.coords()[k];
        }
    }
    RepVector::new(Space::Wedge { d: 3, n: 6 }, out)
}

/// `<x,y>^2 - 4 Pf(x) Pf(y)` on `∧^2 k^4`.
pub fn sl6_reference(x: &RepVector, y: &RepVector) -> FieldElement {
    let field = x.field();
    let pair = crate::multilinear::pf_pairing(x.coords(), y.coords());
    let px = pfaffian_ring(&x.to_matrix().unwrap());
    let py = pfaffian_ring(&y.to_matrix().unwrap());
    &(&pair * &pair) - &(&field.int(4) * &(&px * &py))
}

/// Gram matrix of the standard symplectic form pairing `e1<->e2, e3<->e4, e5<->e6`.
pub fn standard_symplectic(field: Field) -> Matrix {
    Matrix::from_fn(6, 6, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            field.one()
        } else if j % 2 == 0 && i == j + 1 {
            -field.one()
        } else {
            field.zero()
        }
    })
}

/// Matrix of the contraction `∧^3 k^6 → k^6` for the symplectic form `b`.
pub fn contraction_matrix(b: &Matrix) -> Matrix {
    let field = b.field();
    let sets = wedge::subsets(3, 6);
    let mut m = Matrix::zeros(field, 6, 20);
    for (col, s) in sets.iter().enumerate() {
        let (a, bb, c) = (s[0], s[1], s[2]);
        // b(v1,v2) v3 - b(v1,v3) v2 + b(v2,v3) v1
        let upd = |m: &mut Matrix, row: usize, x: FieldElement| {
            let v = m.get(row, col) + &x;
            m.set(row, col, v);
        };
        upd(&mut m, c, b.get(a, bb).clone());
        upd(&mut m, bb, -b.get(a, c));
        upd(&mut m, a, b.get(bb, c).clone());
    }
    m
}

/// Contraction by the standard symplectic form.
pub fn sp6_contract(v: &RepVector) -> RepVector {
    crate::multilinear::sp6_contract(v, &standard_symplectic(v.field())).expect("standard form is nondegenerate")
}

/// `20 × 14` matrix whose columns span `∧^3_0 k^6` for the standard form.
pub fn sp6_basis(field: Field) -> Matrix {
    static RATIONAL: OnceLock<Vec<Vec<BigRational>>> = OnceLock::new();
    let cols = RATIONAL.get_or_init(|| {
        contraction_matrix(&standard_symplectic(Field::Rational))
            .kernel()
            .into_iter()
            .map(|v| v.iter().map(|x| x.as_rational().unwrap().clone()).collect())
            .collect()
    });
    Matrix::from_fn(20, cols.len(), |r, c| field.from_rational(&cols[c][r]).expect("basis reduces mod p"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for s in ["symm-det:3", "skew-pf:6", "square-det:2", "quadric:3", "quadric:4:id", "cubic-disc", "wedge36", "sp6", "mat2n:5", "hyperdet"] {
            assert_eq!(s.parse::<Line>().unwrap().to_string(), s);
        }
        assert!("skew-pf:3".parse::<Line>().is_err());
        assert!("e6".parse::<Line>().is_err());
    }

    #[test]
    fn small_values() {
        let q = Field::Rational;
        let id = RepVector::from_ints(Space::Symm { n: 2 }, q, &[1, 0, 1]);
        assert_eq!(Line::SymmDet { n: 2 }.eval(&id).unwrap(), q.one());
        let c = RepVector::from_ints(Space::Cubic, q, &[0, 1, -1, 0]);
        assert_eq!(Line::CubicDisc.eval(&c).unwrap(), q.one());
        let x3 = RepVector::from_ints(Space::Cubic, q, &[1, 0, 0, 0]);
        assert_eq!(Line::CubicDisc.eval(&x3).unwrap(), q.zero());
        let x = RepVector::from_int_rows(Space::Rect { m: 2, n: 4 }, q, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        assert_eq!(Line::Mat2n { n: 4, s: Gram::Identity }.eval(&x).unwrap(), q.one());
    }

    #[test]
    fn pfaffian_conventions() {
        let q = Field::Rational;
        let j = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 1]);
        assert_eq!(Line::SkewPf { n: 4 }.eval(&j).unwrap(), q.one());
        let generic = Line::SkewPf { n: 4 }.eval_coords(&Poly::vars(q, 6));
        let x = Poly::vars(q, 6);
        let expected = x[0].mul(&x[5]).sub(&x[1].mul(&x[4])).add(&x[2].mul(&x[3]));
        assert_eq!(generic, expected);
        let e12 = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
        assert!(Line::SkewPf { n: 4 }.eval(&e12).unwrap().is_zero());
        assert!(pfaffian(&Matrix::zeros(q, 3, 3)).is_err());
    }

    #[test]
    fn wedge36_calibration_constant() {
        assert_eq!(wedge36_constant(), &BigRational::new(1.into(), 6.into()));
        let q = Field::Rational;
        // e1∧e3∧e4 + e2∧e5∧e6: <x,y> = 1 and both Pfaffians vanish
        let x = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
        let y = RepVector::from_ints(Space::Alt { n: 4 }, q, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(quartic_wedge36(&sl6_w(&x, &y)).unwrap(), q.one());
        let e123 = RepVector::basis(Space::Wedge { d: 3, n: 6 }, q, 0);
        assert!(quartic_wedge36(&e123).unwrap().is_zero());
    }

    #[test]
    fn hyperdet_values() {
        let q = Field::Rational;
        let mut c = vec![0; 8];
        c[0] = 1;
        assert!(hyperdet(&RepVector::from_ints(Space::TriTensor, q, &c)).unwrap().is_zero());
        c[7] = 1;
        let v = RepVector::from_ints(Space::TriTensor, q, &c);
        assert_eq!(hyperdet(&v).unwrap(), q.one());
        let x = tensor_as_mat2n(&v).unwrap();
        let split = Line::Mat2n { n: 4, s: Gram::Split }.eval(&x).unwrap();
        assert_eq!(hyperdet(&v).unwrap(), &q.int(HYPERDET_RATIO) * &split);
    }

    #[test]
    fn sp6_subspace() {
        for field in [Field::Rational, Field::Prime(7)] {
            let b = sp6_basis(field);
            assert_eq!(b.cols(), 14);
            assert_eq!(b.rank(), 14);
            let c = contraction_matrix(&standard_symplectic(field));
            assert_eq!(c.mul(&b), Matrix::zeros(field, 6, 14));
        }
        let q = Field::Rational;
        let e135 = RepVector::basis(Space::Wedge { d: 3, n: 6 }, q, wedge::rank_subset(&[0, 2, 4]));
        assert!(quartic_sp6(&e135).unwrap().is_zero());
        let e123 = RepVector::basis(Space::Wedge { d: 3, n: 6 }, q, 0);
        assert!(quartic_sp6(&e123).is_err());
    }
}
