//! Parametrized linear transformations and their scaling characters.

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{Gram, Line};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::rep::{RepVector, Space};
use crate::sampling::{
    random_invertible, random_scalar, random_similitude, random_unit, random_with_det, symplectic_similitude,
};
use crate::wedge;

#[derive(Clone, Debug, PartialEq)]
pub enum PreserverElement {
    /// `X ↦ r P X P^t` on symmetric or alternating matrices.
    Congruence { space: Space, r: FieldElement, p: Matrix },
    /// `X ↦ A X B` on square or rectangular matrices.
    Sandwich { space: Space, a: Matrix, b: Matrix },
    /// `X ↦ A X^t B` on square matrices.
    TransposeSandwich { n: usize, a: Matrix, b: Matrix },
    /// The star on `4 × 4` alternating matrices,
    /// `(x1..x6) ↦ (x1, -x2, -x4, -x3, -x5, x6)`.
    HodgeStar4,
    /// `e_I ↦ s e_{I^c}` on `∧^3 k^6` with `e_I ∧ s e_{I^c} = e1 ∧ ... ∧ e6`.
    HodgeStar20,
    /// `q ↦ c (q ∘ g)` on binary cubics.
    CubicComposition { c: FieldElement, g: Matrix },
    /// `v1 ∧ ... ∧ vd ↦ c g v1 ∧ ... ∧ g vd`.
    WedgePush { d: usize, c: FieldElement, g: Matrix },
    /// `WedgePush` on `∧^3_0 k^6` with `g^t b g = mu b`.
    GSp6Elem { c: FieldElement, g: Matrix, mu: FieldElement },
    /// `v1 ⊗ v2 ⊗ v3 ↦ g1 v1 ⊗ g2 v2 ⊗ g3 v3`.
    TriplePush { g1: Matrix, g2: Matrix, g3: Matrix },
    /// Moves tensor factor `i` to slot `sigma[i]`.
    FactorPermutation { sigma: [usize; 3] },
    /// `X ↦ g1 X g2^t` on `2 × n` matrices with `g2^t S g2 = mu S`.
    GOPair { g1: Matrix, g2: Matrix, mu: FieldElement, s: Gram },
    /// `v ↦ g v` on `k^n` with `g^t S g = mu S`.
    Similitude { g: Matrix, mu: FieldElement, s: Gram },
    /// `T_1 ∘ T_2 ∘ ...`, the last factor applied first.
    Composite(Vec<PreserverElement>),
    /// An arbitrary linear map, given by its coordinate matrix.
    Linear { space: Space, matrix: Matrix },
}

impl PreserverElement {
    /// The identity, written with identity parameters of the line's main family.
    pub fn identity(line: &Line, field: Field) -> PreserverElement {
        let one = field.one();
        let id = |n| Matrix::identity(field, n);
        match *line {
            Line::SymmDet { .. } | Line::SkewPf { .. } => PreserverElement::Congruence {
                space: line.space(),
                r: one,
                p: id(line.space().matrix_shape().unwrap().0),
            },
            Line::SquareDet { n } => PreserverElement::Sandwich { space: line.space(), a: id(n), b: id(n) },
            Line::Quadric { n, s } => PreserverElement::Similitude { g: id(n), mu: one, s },
            Line::CubicDisc => PreserverElement::CubicComposition { c: one, g: id(2) },
            Line::Wedge36 => PreserverElement::WedgePush { d: 3, c: one, g: id(6) },
            Line::Sp6 => PreserverElement::GSp6Elem { c: one.clone(), g: id(6), mu: one },
            Line::Mat2n { n, s } => PreserverElement::GOPair { g1: id(2), g2: id(n), mu: one, s },
            Line::Hyperdet => PreserverElement::TriplePush { g1: id(2), g2: id(2), g3: id(2) },
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            PreserverElement::Congruence { .. } => "congruence",
            PreserverElement::Sandwich { .. } => "sandwich",
            PreserverElement::TransposeSandwich { .. } => "transpose-sandwich",
            PreserverElement::HodgeStar4 => "hodge-star-4",
            PreserverElement::HodgeStar20 => "hodge-star-20",
            PreserverElement::CubicComposition { .. } => "cubic-composition",
            PreserverElement::WedgePush { .. } => "wedge-push",
            PreserverElement::GSp6Elem { .. } => "gsp6",
            PreserverElement::TriplePush { .. } => "triple-push",
            PreserverElement::FactorPermutation { .. } => "factor-permutation",
            PreserverElement::GOPair { .. } => "go-pair",
            PreserverElement::Similitude { .. } => "similitude",
            PreserverElement::Composite(_) => "composite",
            PreserverElement::Linear { .. } => "linear",
        }
    }

    pub fn space(&self) -> Space {
        match self {
            PreserverElement::Congruence { space, .. }
            | PreserverElement::Sandwich { space, .. }
            | PreserverElement::Linear { space, .. } => *space,
            PreserverElement::TransposeSandwich { n, .. } => Space::Square { n: *n },
            PreserverElement::HodgeStar4 => Space::Alt { n: 4 },
            PreserverElement::HodgeStar20 | PreserverElement::GSp6Elem { .. } => Space::Wedge { d: 3, n: 6 },
            PreserverElement::CubicComposition { .. } => Space::Cubic,
            PreserverElement::WedgePush { d, g, .. } => Space::Wedge { d: *d, n: g.rows() },
            PreserverElement::TriplePush { .. } | PreserverElement::FactorPermutation { .. } => Space::TriTensor,
            PreserverElement::GOPair { g2, .. } => Space::Rect { m: 2, n: g2.rows() },
            PreserverElement::Similitude { g, .. } => Space::Plain { n: g.rows() },
            PreserverElement::Composite(parts) => parts[0].space(),
        }
    }

    /// Checks shapes and invertibility.
    pub fn validate(&self) -> Result<()> {
        let square = |m: &Matrix, n: usize, what: &str| -> Result<()> {
            if m.rows() != n || m.cols() != n || !m.is_invertible() {
                return Err(Error::Precondition(format!("{what} must be an invertible {n}x{n} matrix")));
            }
            Ok(())
        };
        let nonzero = |c: &FieldElement, what: &str| -> Result<()> {
            if c.is_zero() {
                return Err(Error::Precondition(format!("{what} must be nonzero")));
            }
            Ok(())
        };
        match self {
            PreserverElement::Congruence { space, r, p } => {
                let (Space::Symm { n } | Space::Alt { n }) = space else {
                    return Err(Error::Precondition("congruence acts on symmetric or alternating matrices".into()));
                };
                nonzero(r, "r")?;
                square(p, *n, "P")
            }
            PreserverElement::Sandwich { space, a, b } => {
                let Some((m, n)) = space.matrix_shape().filter(|_| matches!(space, Space::Square { .. } | Space::Rect { .. })) else {
                    return Err(Error::Precondition("sandwich acts on square or rectangular matrices".into()));
                };
                square(a, m, "A")?;
                square(b, n, "B")
            }
            PreserverElement::TransposeSandwich { n, a, b } => {
                square(a, *n, "A")?;
                square(b, *n, "B")
            }
            PreserverElement::HodgeStar4 | PreserverElement::HodgeStar20 | PreserverElement::FactorPermutation { .. } => Ok(()),
            PreserverElement::CubicComposition { c, g } => {
                nonzero(c, "c")?;
                square(g, 2, "g")
            }
            PreserverElement::WedgePush { d, c, g } => {
                nonzero(c, "c")?;
                square(g, g.rows(), "g")?;
                if *d == 0 || *d > g.rows() {
                    return Err(Error::Precondition("degree out of range".into()));
                }
                Ok(())
            }
            PreserverElement::GSp6Elem { c, g, mu } => {
                nonzero(c, "c")?;
                nonzero(mu, "mu")?;
                square(g, 6, "g")?;
                let b = crate::forms::standard_symplectic(g.field());
                if g.transpose().mul(&b).mul(g) != b.scale(mu) {
                    return Err(Error::Precondition("g is not a symplectic similitude with factor mu".into()));
                }
                Ok(())
            }
            PreserverElement::TriplePush { g1, g2, g3 } => {
                square(g1, 2, "g1")?;
                square(g2, 2, "g2")?;
                square(g3, 2, "g3")
            }
            PreserverElement::GOPair { g1, g2, mu, s } => {
                square(g1, 2, "g1")?;
                square(g2, g2.rows(), "g2")?;
                nonzero(mu, "mu")?;
                let sm = s.matrix(g2.field(), g2.rows());
                if g2.transpose().mul(&sm).mul(g2) != sm.scale(mu) {
                    return Err(Error::Precondition("g2 is not a similitude of S with factor mu".into()));
                }
                Ok(())
            }
            PreserverElement::Similitude { g, mu, s } => {
                square(g, g.rows(), "g")?;
                let sm = s.matrix(g.field(), g.rows());
                if g.transpose().mul(&sm).mul(g) != sm.scale(mu) {
                    return Err(Error::Precondition("g is not a similitude of S with factor mu".into()));
                }
                Ok(())
            }
            PreserverElement::Composite(parts) => {
                if parts.is_empty() {
                    return Err(Error::Precondition("empty composite".into()));
                }
                for p in parts {
                    p.validate()?;
                    if p.space() != parts[0].space() {
                        return Err(Error::Precondition("composite factors act on different spaces".into()));
                    }
                }
                Ok(())
            }
            PreserverElement::Linear { space, matrix } => square(matrix, space.dim(), "matrix"),
        }
    }

    /// Applies the map to a vector.
    pub fn apply(&self, v: &RepVector) -> Result<RepVector> {
        if v.space() != self.space() {
            return Err(Error::SpaceMismatch {
                expected: self.space().to_string(),
                found: v.space().to_string(),
            });
        }
        let field = v.field();
        let space = v.space();
        Ok(match self {
            PreserverElement::Congruence { r, p, .. } => {
                let x = v.to_matrix()?;
                RepVector::from_matrix(space, &p.mul(&x).mul(&p.transpose()).scale(r))?
            }
            PreserverElement::Sandwich { a, b, .. } => RepVector::from_matrix(space, &a.mul(&v.to_matrix()?).mul(b))?,
            PreserverElement::TransposeSandwich { a, b, .. } => {
                RepVector::from_matrix(space, &a.mul(&v.to_matrix()?.transpose()).mul(b))?
            }
            PreserverElement::HodgeStar4 => {
                let x = v.coords();
                RepVector::new(space, vec![x[0].clone(), -&x[1], -&x[3], -&x[2], -&x[4], x[5].clone()])
            }
            PreserverElement::HodgeStar20 => RepVector::new(space, wedge::hodge_star_matrix(field, 3, 6).mul_vec(v.coords())),
            PreserverElement::CubicComposition { c, g } => RepVector::new(space, compose_cubic(v.coords(), g)).scale(c),
            PreserverElement::WedgePush { d, c, g } => RepVector::new(space, wedge::pushforward_matrix(g, *d, c).mul_vec(v.coords())),
            PreserverElement::GSp6Elem { c, g, .. } => RepVector::new(space, wedge::pushforward_matrix(g, 3, c).mul_vec(v.coords())),
            PreserverElement::TriplePush { g1, g2, g3 } => RepVector::new(space, g1.kron(g2).kron(g3).mul_vec(v.coords())),
            PreserverElement::FactorPermutation { sigma } => {
                let mut out = vec![field.zero(); 8];
                for (idx, x) in v.coords().iter().enumerate() {
                    let a = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
                    let mut b = [0; 3];
                    for i in 0..3 {
                        b[sigma[i]] = a[i];
                    }
                    out[4 * b[0] + 2 * b[1] + b[2]] = x.clone();
                }
                RepVector::new(space, out)
            }
            PreserverElement::GOPair { g1, g2, .. } => RepVector::from_matrix(space, &g1.mul(&v.to_matrix()?).mul(&g2.transpose()))?,
            PreserverElement::Similitude { g, .. } => RepVector::new(space, g.mul_vec(v.coords())),
            PreserverElement::Composite(parts) => {
                let mut x = v.clone();
                for p in parts.iter().rev() {
                    x = p.apply(&x)?;
                }
                x
            }
            PreserverElement::Linear { matrix, .. } => RepVector::new(space, matrix.mul_vec(v.coords())),
        })
    }

    /// Coordinate matrix of the map on its ambient space.
    pub fn matrix(&self, field: Field) -> Matrix {
        match self {
            PreserverElement::Linear { matrix, .. } => return matrix.clone(),
            PreserverElement::WedgePush { d, c, g } => return wedge::pushforward_matrix(g, *d, c),
            PreserverElement::GSp6Elem { c, g, .. } => return wedge::pushforward_matrix(g, 3, c),
            PreserverElement::HodgeStar20 => return wedge::hodge_star_matrix(field, 3, 6),
            PreserverElement::TriplePush { g1, g2, g3 } => return g1.kron(g2).kron(g3),
            PreserverElement::Composite(parts) => {
                let mut it = parts.iter().map(|p| p.matrix(field));
                let first = it.next().expect("nonempty composite");
                return it.fold(first, |acc, m| acc.mul(&m));
            }
            _ => {}
        }
        let space = self.space();
        let n = space.dim();
        let mut m = Matrix::zeros(field, n, n);
        for j in 0..n {
            let img = self.apply(&RepVector::basis(space, field, j)).expect("space matches");
            for (i, x) in img.coords().iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Applies the coordinate matrix to symbolic coordinates.
    pub fn apply_symbolic(&self, matrix: &Matrix, coords: &[Poly]) -> Vec<Poly> {
        matrix.map(|c| Poly::constant(c.clone())).mul_vec(coords)
    }

    /// The factor `χ` with `f(T v) = χ f(v)`.
    pub fn character(&self, line: &Line) -> Result<FieldElement> {
        let field = self.param_field().unwrap_or(Field::Rational);
        Ok(self.character_inner(line)?.unwrap_or_else(|| field.one()))
    }

    /// `None` stands for a character identically `1` on a parameter-free map.
    fn character_inner(&self, line: &Line) -> Result<Option<FieldElement>> {
        let mismatch = || Error::Unsupported(format!("family {} does not act on {line}", self.family()));
        if self.space() != line.space() {
            return Err(mismatch());
        }
        let pow = |x: &FieldElement, k: u64| x.pow(k);
        Ok(Some(match (self, line) {
            (PreserverElement::Congruence { space: Space::Symm { n }, r, p }, Line::SymmDet { .. }) => {
                &pow(r, *n as u64) * &pow(&p.det(), 2)
            }
            (PreserverElement::Congruence { space: Space::Alt { n }, r, p }, Line::SkewPf { .. }) => &pow(r, (*n / 2) as u64) * &p.det(),
            (PreserverElement::Sandwich { a, b, .. } | PreserverElement::TransposeSandwich { a, b, .. }, Line::SquareDet { .. }) => {
                &a.det() * &b.det()
            }
            (PreserverElement::HodgeStar4, Line::SkewPf { n: 4 })
            | (PreserverElement::HodgeStar20, Line::Wedge36)
            | (PreserverElement::FactorPermutation { .. }, Line::Hyperdet) => return Ok(None),
            (PreserverElement::CubicComposition { c, g }, Line::CubicDisc) => &pow(c, 4) * &pow(&g.det(), 6),
            (PreserverElement::WedgePush { d: 3, c, g }, Line::Wedge36) if g.rows() == 6 => &pow(c, 4) * &pow(&g.det(), 2),
            (PreserverElement::GSp6Elem { c, g, .. }, Line::Sp6 | Line::Wedge36) => &pow(c, 4) * &pow(&g.det(), 2),
            (PreserverElement::TriplePush { g1, g2, g3 }, Line::Hyperdet) => pow(&(&(&g1.det() * &g2.det()) * &g3.det()), 2),
            (PreserverElement::GOPair { g1, mu, s, .. }, Line::Mat2n { s: s2, .. }) if s == s2 => pow(&(&g1.det() * mu), 2),
            (PreserverElement::Similitude { mu, s, .. }, Line::Quadric { s: s2, .. }) if s == s2 => mu.clone(),
            (PreserverElement::Composite(parts), _) => {
                let mut acc: Option<FieldElement> = None;
                for p in parts {
                    if let Some(c) = p.character_inner(line)? {
                        acc = Some(match acc {
                            None => c,
                            Some(a) => &a * &c,
                        });
                    }
                }
                return Ok(acc);
            }
            (PreserverElement::Linear { .. }, _) => {
                return Err(Error::Unsupported("linear maps carry no character".into()));
            }
            _ => return Err(mismatch()),
        }))
    }

    /// True when the corollary's constraint `χ = 1` holds.
    pub fn constraint_satisfied(&self, line: &Line) -> Result<bool> {
        Ok(self.character(line)?.is_one())
    }

    /// Some field element appearing in the parameters, if any.
    fn param_field(&self) -> Option<Field> {
        match self {
            PreserverElement::Congruence { r, .. }
            | PreserverElement::CubicComposition { c: r, .. }
            | PreserverElement::WedgePush { c: r, .. }
            | PreserverElement::GSp6Elem { c: r, .. }
            | PreserverElement::GOPair { mu: r, .. }
            | PreserverElement::Similitude { mu: r, .. } => Some(r.field()),
            PreserverElement::Sandwich { a, .. } | PreserverElement::TransposeSandwich { a, .. } => Some(a.field()),
            PreserverElement::TriplePush { g1, .. } => Some(g1.field()),
            PreserverElement::Linear { matrix, .. } => Some(matrix.field()),
            PreserverElement::Composite(parts) => parts.iter().find_map(|p| p.param_field()),
            PreserverElement::HodgeStar4 | PreserverElement::HodgeStar20 | PreserverElement::FactorPermutation { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix| -> Value {
            Value::Array(
                (0..m.rows())
                    .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
                    .collect(),
            )
        };
        let params = match self {
            PreserverElement::Congruence { space, r, p } => json!({"space": space.to_string(), "r": r.to_string(), "P": mat(p)}),
            PreserverElement::Sandwich { space, a, b } => json!({"space": space.to_string(), "A": mat(a), "B": mat(b)}),
            PreserverElement::TransposeSandwich { a, b, .. } => json!({"A": mat(a), "B": mat(b)}),
            PreserverElement::HodgeStar4 | PreserverElement::HodgeStar20 => json!({}),
            PreserverElement::CubicComposition { c, g } => json!({"c": c.to_string(), "g": mat(g)}),
            PreserverElement::WedgePush { d, c, g } => json!({"d": d, "c": c.to_string(), "g": mat(g)}),
            PreserverElement::GSp6Elem { c, g, mu } => json!({"c": c.to_string(), "g": mat(g), "mu": mu.to_string()}),
            PreserverElement::TriplePush { g1, g2, g3 } => json!({"g1": mat(g1), "g2": mat(g2), "g3": mat(g3)}),
            PreserverElement::FactorPermutation { sigma } => json!({"sigma": sigma}),
            PreserverElement::GOPair { g1, g2, mu, .. } => json!({"g1": mat(g1), "g2": mat(g2), "mu": mu.to_string()}),
            PreserverElement::Similitude { g, mu, .. } => json!({"g": mat(g), "mu": mu.to_string()}),
            PreserverElement::Composite(parts) => json!({"factors": parts.iter().map(|p| p.to_json()).collect::<Vec<_>>()}),
            PreserverElement::Linear { space, matrix } => json!({"space": space.to_string(), "matrix": mat(matrix)}),
        };
        json!({"family": self.family(), "params": params})
    }
}

/// `q ∘ g` for `q = a0 x^3 + a1 x^2 y + a2 x y^2 + a3 y^3`.
fn compose_cubic(a: &[FieldElement], g: &Matrix) -> Vec<FieldElement> {
    let field = a[0].field();
    // x ↦ g00 x + g01 y, y ↦ g10 x + g11 y as coefficient lists in (x, y)
    let l1 = [g.get(0, 0).clone(), g.get(0, 1).clone()];
    let l2 = [g.get(1, 0).clone(), g.get(1, 1).clone()];
    let mul = |p: &[FieldElement], l: &[FieldElement; 2]| -> Vec<FieldElement> {
        let mut out = vec![field.zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            out[i] += &(c * &l[0]);
            out[i + 1] += &(c * &l[1]);
        }
        out
    };
    let mut total = vec![field.zero(); 4];
    for (k, ak) in a.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        let mut p = vec![ak.clone()];
        for _ in 0..3 - k {
            p = mul(&p, &l1);
        }
        for _ in 0..k {
            p = mul(&p, &l2);
        }
        for (t, c) in total.iter_mut().zip(&p) {
            *t += c;
        }
    }
    total
}

/// `T1 ∘ T2`, kept in parametric form when both lie in the same family.
pub fn compose(t1: &PreserverElement, t2: &PreserverElement) -> Result<PreserverElement> {
    use PreserverElement as P;
    if t1.space() != t2.space() {
        return Err(Error::SpaceMismatch {
            expected: t1.space().to_string(),
            found: t2.space().to_string(),
        });
    }
    let composed = match (t1, t2) {
        (P::Congruence { space, r: r1, p: p1 }, P::Congruence { r: r2, p: p2, .. }) => P::Congruence {
            space: *space,
            r: r1 * r2,
            p: p1.mul(p2),
        },
        (P::Sandwich { space, a: a1, b: b1 }, P::Sandwich { a: a2, b: b2, .. }) => P::Sandwich {
            space: *space,
            a: a1.mul(a2),
            b: b2.mul(b1),
        },
        (P::CubicComposition { c: c1, g: g1 }, P::CubicComposition { c: c2, g: g2 }) => P::CubicComposition {
            c: c1 * c2,
            g: g2.mul(g1),
        },
        (P::WedgePush { d, c: c1, g: g1 }, P::WedgePush { c: c2, g: g2, .. }) => P::WedgePush {
            d: *d,
            c: c1 * c2,
            g: g1.mul(g2),
        },
        (P::GSp6Elem { c: c1, g: g1, mu: m1 }, P::GSp6Elem { c: c2, g: g2, mu: m2 }) => P::GSp6Elem {
            c: c1 * c2,
            g: g1.mul(g2),
            mu: m1 * m2,
        },
        (P::TriplePush { g1: a1, g2: a2, g3: a3 }, P::TriplePush { g1: b1, g2: b2, g3: b3 }) => P::TriplePush {
            g1: a1.mul(b1),
            g2: a2.mul(b2),
            g3: a3.mul(b3),
        },
        (P::FactorPermutation { sigma: s1 }, P::FactorPermutation { sigma: s2 }) => P::FactorPermutation {
            sigma: [s1[s2[0]], s1[s2[1]], s1[s2[2]]],
        },
        (P::GOPair { g1: a1, g2: a2, mu: m1, s }, P::GOPair { g1: b1, g2: b2, mu: m2, s: s2 }) if s == s2 => P::GOPair {
            g1: a1.mul(b1),
            g2: a2.mul(b2),
            mu: m1 * m2,
            s: *s,
        },
        (P::Similitude { g: g1, mu: m1, s }, P::Similitude { g: g2, mu: m2, s: s2 }) if s == s2 => P::Similitude {
            g: g1.mul(g2),
            mu: m1 * m2,
            s: *s,
        },
        _ => {
            let field = t1.param_field().or(t2.param_field()).unwrap_or(Field::Rational);
            let m = t1.matrix(field).mul(&t2.matrix(field));
            let space = t1.space();
            if let (Some(r), Space::Symm { n } | Space::Alt { n }) = (m.scalar_multiple_of_identity(), space) {
                return Ok(P::Congruence {
                    space,
                    r,
                    p: Matrix::identity(field, n),
                });
            }
            let mut parts = Vec::new();
            for t in [t1, t2] {
                match t {
                    P::Composite(inner) => parts.extend(inner.iter().cloned()),
                    other => parts.push(other.clone()),
                }
            }
            P::Composite(parts)
        }
    };
    Ok(composed)
}

/// Which parameters a sampled element should satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `χ = 1`.
    Satisfying,
    /// Arbitrary parameters.
    Unconstrained,
    /// `χ != 1`.
    Violating,
}

/// A sampling recipe for a transformation family on a given form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Congruence,
    /// Congruence followed by the `4 × 4` star.
    CongruenceStar,
    Sandwich,
    TransposeSandwich,
    CubicComposition,
    WedgePush,
    /// Wedge push followed by the `∧^3 k^6` star.
    WedgePushStar,
    GSp6,
    TriplePush,
    /// Triple push followed by a factor permutation.
    TriplePushPermuted,
    GOPair,
    Similitude,
}

/// The families of the preserver group of each form.
pub fn families(line: &Line) -> Vec<Family> {
    match line {
        Line::SymmDet { .. } => vec![Family::Congruence],
        Line::SkewPf { n: 4 } => vec![Family::Congruence, Family::CongruenceStar],
        Line::SkewPf { .. } => vec![Family::Congruence],
        Line::SquareDet { .. } => vec![Family::Sandwich, Family::TransposeSandwich],
        Line::Quadric { .. } => vec![Family::Similitude],
        Line::CubicDisc => vec![Family::CubicComposition],
        Line::Wedge36 => vec![Family::WedgePush, Family::WedgePushStar],
        Line::Sp6 => vec![Family::GSp6],
        Line::Mat2n { .. } => vec![Family::GOPair],
        Line::Hyperdet => vec![Family::TriplePush, Family::TriplePushPermuted],
    }
}

/// Attempts before constrained sampling gives up.
pub const SAMPLING_CAP: usize = 1000;

/// Draws a family element for `line` whose character satisfies `mode`.
pub fn sample_group_element<R: Rng + ?Sized>(
    family: Family,
    line: &Line,
    field: Field,
    mode: Mode,
    rng: &mut R,
) -> Result<PreserverElement> {
    for _ in 0..SAMPLING_CAP {
        let t = match mode {
            Mode::Satisfying => sample_satisfying(family, line, field, rng)?,
            Mode::Unconstrained | Mode::Violating => sample_free(family, line, field, rng)?,
        };
        let Some(t) = t else { continue };
        let chi = t.character(line)?;
        let ok = match mode {
            Mode::Satisfying => chi.is_one(),
            Mode::Unconstrained => true,
            Mode::Violating => !chi.is_one(),
        };
        if ok {
            return Ok(t);
        }
    }
    Err(Error::SamplingExhausted(SAMPLING_CAP))
}

fn pick<R: Rng + ?Sized>(v: Vec<FieldElement>, rng: &mut R) -> Option<FieldElement> {
    if v.is_empty() {
        None
    } else {
        let i = rng.gen_range(0..v.len());
        Some(v[i].clone())
    }
}

fn random_sigma<R: Rng + ?Sized>(rng: &mut R) -> [usize; 3] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS[rng.gen_range(0..6)]
}

fn sample_satisfying<R: Rng + ?Sized>(family: Family, line: &Line, field: Field, rng: &mut R) -> Result<Option<PreserverElement>> {
    use PreserverElement as P;
    let space = line.space();
    Ok(Some(match (family, *line) {
        (Family::Congruence | Family::CongruenceStar, Line::SymmDet { n }) => {
            let d = random_unit(field, rng);
            let Some(r) = pick((&d * &d).inv().unwrap().roots(n as u64), rng) else { return Ok(None) };
            P::Congruence {
                space,
                r,
                p: random_with_det(field, n, &d, rng),
            }
        }
        (Family::Congruence | Family::CongruenceStar, Line::SkewPf { n }) => {
            let r = random_unit(field, rng);
            let d = r.pow((n / 2) as u64).inv().unwrap();
            let t = P::Congruence {
                space,
                r,
                p: random_with_det(field, n, &d, rng),
            };
            if family == Family::CongruenceStar {
                P::Composite(vec![P::HodgeStar4, t])
            } else {
                t
            }
        }
        (Family::Sandwich | Family::TransposeSandwich, Line::SquareDet { n }) => {
            let da = random_unit(field, rng);
            let a = random_with_det(field, n, &da, rng);
            let b = random_with_det(field, n, &da.inv().unwrap(), rng);
            if family == Family::Sandwich {
                P::Sandwich { space, a, b }
            } else {
                P::TransposeSandwich { n, a, b }
            }
        }
        (Family::CubicComposition, Line::CubicDisc) => {
            let d = random_unit(field, rng);
            let Some(c) = pick(d.pow(6).inv().unwrap().roots(4), rng) else { return Ok(None) };
            P::CubicComposition {
                c,
                g: random_with_det(field, 2, &d, rng),
            }
        }
        (Family::WedgePush | Family::WedgePushStar, Line::Wedge36) => {
            let d = random_unit(field, rng);
            let Some(c) = pick(d.pow(2).inv().unwrap().roots(4), rng) else { return Ok(None) };
            let t = P::WedgePush {
                d: 3,
                c,
                g: random_with_det(field, 6, &d, rng),
            };
            if family == Family::WedgePushStar {
                P::Composite(vec![P::HodgeStar20, t])
            } else {
                t
            }
        }
        (Family::GSp6, Line::Sp6) => {
            let mu = random_unit(field, rng);
            let Some(c) = pick(mu.pow(6).inv().unwrap().roots(4), rng) else { return Ok(None) };
            P::GSp6Elem {
                c,
                g: symplectic_similitude(field, &mu, rng),
                mu,
            }
        }
        (Family::TriplePush | Family::TriplePushPermuted, Line::Hyperdet) => {
            let d1 = random_unit(field, rng);
            let d2 = random_unit(field, rng);
            let d3 = (&d1 * &d2).inv().unwrap() * pm_one(field, rng);
            let t = P::TriplePush {
                g1: random_with_det(field, 2, &d1, rng),
                g2: random_with_det(field, 2, &d2, rng),
                g3: random_with_det(field, 2, &d3, rng),
            };
            if family == Family::TriplePushPermuted {
                P::Composite(vec![P::FactorPermutation { sigma: random_sigma(rng) }, t])
            } else {
                t
            }
        }
        (Family::GOPair, Line::Mat2n { n, s }) => {
            let (g2, mu) = random_similitude(field, n, s, &random_unit(field, rng), rng);
            let sign = pm_one(field, rng);
            let g1 = random_with_det(field, 2, &(mu.inv().unwrap() * sign), rng);
            P::GOPair { g1, g2, mu, s }
        }
        (Family::Similitude, Line::Quadric { n, s }) => {
            let (g, mu) = random_similitude(field, n, s, &field.one(), rng);
            P::Similitude { g, mu, s }
        }
        _ => return Err(Error::Unsupported(format!("family {family:?} does not act on {line}"))),
    }))
}

fn sample_free<R: Rng + ?Sized>(family: Family, line: &Line, field: Field, rng: &mut R) -> Result<Option<PreserverElement>> {
    use PreserverElement as P;
    let space = line.space();
    Ok(Some(match (family, *line) {
        (Family::Congruence | Family::CongruenceStar, Line::SymmDet { n } | Line::SkewPf { n }) => {
            let t = P::Congruence {
                space,
                r: random_scalar(field, rng),
                p: random_invertible(field, n, rng),
            };
            if family == Family::CongruenceStar {
                P::Composite(vec![P::HodgeStar4, t])
            } else {
                t
            }
        }
        (Family::Sandwich, Line::SquareDet { n }) => P::Sandwich {
            space,
            a: random_invertible(field, n, rng),
            b: random_invertible(field, n, rng),
        },
        (Family::TransposeSandwich, Line::SquareDet { n }) => P::TransposeSandwich {
            n,
            a: random_invertible(field, n, rng),
            b: random_invertible(field, n, rng),
        },
        (Family::CubicComposition, Line::CubicDisc) => P::CubicComposition {
            c: random_scalar(field, rng),
            g: random_invertible(field, 2, rng),
        },
        (Family::WedgePush | Family::WedgePushStar, Line::Wedge36) => {
            let t = P::WedgePush {
                d: 3,
                c: random_scalar(field, rng),
                g: random_invertible(field, 6, rng),
            };
            if family == Family::WedgePushStar {
                P::Composite(vec![P::HodgeStar20, t])
            } else {
                t
            }
        }
        (Family::GSp6, Line::Sp6) => {
            let mu = random_scalar(field, rng);
            P::GSp6Elem {
                c: random_scalar(field, rng),
                g: symplectic_similitude(field, &mu, rng),
                mu,
            }
        }
        (Family::TriplePush | Family::TriplePushPermuted, Line::Hyperdet) => {
            let t = P::TriplePush {
                g1: random_invertible(field, 2, rng),
                g2: random_invertible(field, 2, rng),
                g3: random_invertible(field, 2, rng),
            };
            if family == Family::TriplePushPermuted {
                P::Composite(vec![P::FactorPermutation { sigma: random_sigma(rng) }, t])
            } else {
                t
            }
        }
        (Family::GOPair, Line::Mat2n { n, s }) => {
            let (g2, mu) = random_similitude(field, n, s, &random_scalar(field, rng), rng);
            P::GOPair {
                g1: random_invertible(field, 2, rng),
                g2,
                mu,
                s,
            }
        }
        (Family::Similitude, Line::Quadric { n, s }) => {
            let (g, mu) = random_similitude(field, n, s, &random_scalar(field, rng), rng);
            P::Similitude { g, mu, s }
        }
        _ => return Err(Error::Unsupported(format!("family {family:?} does not act on {line}"))),
    }))
}

fn pm_one<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    if rng.gen_bool(0.5) {
        field.one()
    } else {
        -field.one()
    }
}
