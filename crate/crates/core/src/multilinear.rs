//! Ranks, bilinear forms, polarization and the symplectic pairings.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{contraction_matrix, Gram, Line};
use crate::matrix::Matrix;
use crate::rep::{RepVector, Space};
use crate::wedge;

/// Exact rank of a matrix-space vector.
pub fn rank(v: &RepVector) -> Result<usize> {
    match v.space().matrix_shape() {
        Some(_) => Ok(v.to_matrix()?.rank()),
        None => Err(Error::Unsupported(format!("rank of a non-matrix vector in {}", v.space()))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// Gram matrix of a bilinear form, tagged symmetric or skew.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearGram {
    gram: Matrix,
    symmetry: Symmetry,
}

impl BilinearGram {
    pub fn new(gram: Matrix, symmetry: Symmetry) -> Result<Self> {
        let ok = match symmetry {
            Symmetry::Symmetric => gram.is_symmetric(),
            Symmetry::Skew => gram.is_alternating(),
        };
        if !ok {
            return Err(Error::Precondition(format!("Gram matrix is not {symmetry:?}")));
        }
        Ok(BilinearGram { gram, symmetry })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn eval(&self, u: &[FieldElement], w: &[FieldElement]) -> FieldElement {
        let gw = self.gram.mul_vec(w);
        u.iter().zip(&gw).fold(self.gram.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

/// `n - rank(b)`.
pub fn radical_dimension(b: &BilinearGram) -> usize {
    b.dim() - b.rank()
}

/// A nondegenerate skew form on the representation of a quartic form, in the
/// coordinates of [`Line::point`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticPairing {
    line: Line,
    gram: Matrix,
}

impl SymplecticPairing {
    pub fn for_line(line: Line, field: Field) -> Result<Self> {
        let j = || Matrix::from_rows(vec![vec![field.zero(), field.one()], vec![-field.one(), field.zero()]]);
        let gram = match line {
            Line::CubicDisc => cubic_pairing_gram(field),
            Line::Wedge36 => top_wedge_gram(field),
            Line::Sp6 => {
                let b = crate::forms::sp6_basis(field);
                b.transpose().mul(&top_wedge_gram(field)).mul(&b)
            }
            Line::Mat2n { n, s } => j().kron(&s.matrix(field, n)),
            Line::Hyperdet => j().kron(&j()).kron(&j()),
            other => return Err(Error::Unsupported(format!("no symplectic pairing registered for {other}"))),
        };
        debug_assert!(gram.is_alternating());
        Ok(SymplecticPairing { line, gram })
    }

    pub fn line(&self) -> Line {
        self.line
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `<x, y>` for vectors of the representation.
    pub fn pair(&self, x: &RepVector, y: &RepVector) -> Result<FieldElement> {
        let px = self.line.params_of(x)?;
        let py = self.line.params_of(y)?;
        Ok(BilinearGram {
            gram: self.gram.clone(),
            symmetry: Symmetry::Skew,
        }
        .eval(&px, &py))
    }

    pub fn convention(&self) -> Value {
        match self.line {
            Line::CubicDisc => json!("a0 b3 - 1/3 a1 b2 + 1/3 a2 b1 - a3 b0"),
            Line::Wedge36 | Line::Sp6 => json!("x ^ y = <x,y> e1 ^ ... ^ e6"),
            Line::Mat2n { .. } => json!("J (x) S with J = [[0,1],[-1,0]]"),
            Line::Hyperdet => json!("J (x) J (x) J"),
            _ => Value::Null,
        }
    }
}

fn cubic_pairing_gram(field: Field) -> Matrix {
    let third = field.ratio(1, 3).expect("3 is invertible");
    let mut m = Matrix::zeros(field, 4, 4);
    m.set(0, 3, field.one());
    m.set(3, 0, -field.one());
    m.set(1, 2, -&third);
    m.set(2, 1, third);
    m
}

fn top_wedge_gram(field: Field) -> Matrix {
    let sets = wedge::subsets(3, 6);
    let mut m = Matrix::zeros(field, 20, 20);
    for (i, s) in sets.iter().enumerate() {
        let c: Vec<usize> = (0..6).filter(|x| !s.contains(x)).collect();
        m.set(i, wedge::rank_subset(&c), field.int(wedge::merge_sign(s, &c).unwrap()));
    }
    m
}

/// The coefficient of `t` in `Pf(x + t y)` on `∧^2 k^4`.
pub fn pf_pairing(x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    &(&(&(&x[0] * &y[5]) - &(&x[1] * &y[4])) + &(&x[2] * &y[3])) + &(&(&(&x[3] * &y[2]) - &(&x[4] * &y[1])) + &(&x[5] * &y[0]))
}

/// The pairing attached to a space: the `Pf` pairing on `∧^2 k^4`, the top
/// wedge on `∧^3 k^6`, the normalized pairing on binary cubics, `J ⊗ S` with
/// split `S` on `k^2 ⊗ k^n`, and `J ⊗ J ⊗ J` on `2 × 2 × 2` tensors.
pub fn symplectic_pair(space: Space, x: &RepVector, y: &RepVector) -> Result<FieldElement> {
    if x.space() != space || y.space() != space {
        return Err(Error::SpaceMismatch {
            expected: space.to_string(),
            found: format!("{} and {}", x.space(), y.space()),
        });
    }
    let field = x.field();
    match space {
        Space::Alt { n: 4 } => Ok(pf_pairing(x.coords(), y.coords())),
        Space::Wedge { d: 3, n: 6 } => Ok(wedge::top_pairing(x, y)),
        Space::Cubic => SymplecticPairing::for_line(Line::CubicDisc, field)?.pair(x, y),
        Space::Rect { m: 2, n } => SymplecticPairing::for_line(Line::Mat2n { n, s: Gram::Split }, field)?.pair(x, y),
        Space::TriTensor => SymplecticPairing::for_line(Line::Hyperdet, field)?.pair(x, y),
        other => Err(Error::Unsupported(format!("no pairing for {other}"))),
    }
}

fn require_quartic(line: &Line) -> Result<()> {
    if line.degree() != 4 {
        return Err(Error::Unsupported(format!("{line} has degree {}, not 4", line.degree())));
    }
    Ok(())
}

/// The symmetric 4-linear form with diagonal `f`:
/// `24 F(x1..x4) = sum_S (-1)^(4-|S|) f(sum_{i in S} x_i)`.
pub fn polarize4(line: &Line, xs: [&RepVector; 4]) -> Result<FieldElement> {
    require_quartic(line)?;
    for x in xs {
        line.check_space(x)?;
    }
    let field = xs[0].field();
    let mut acc = field.zero();
    for mask in 1u32..16 {
        let mut s = RepVector::zero(line.space(), field);
        for (i, x) in xs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                s = s.add(x);
            }
        }
        let val = line.eval_coords(s.coords());
        if (4 - mask.count_ones()) % 2 == 0 {
            acc += &val;
        } else {
            acc -= &val;
        }
    }
    Ok(&acc / &field.int(24))
}

/// Gram matrix of `b_x(u, w) = F(x, x, u, w)` in the basis of [`Line::basis`].
pub fn bilinear_bx(line: &Line, x: &RepVector) -> Result<BilinearGram> {
    require_quartic(line)?;
    line.check_space(x)?;
    let field = x.field();
    let basis = line.basis(field);
    let n = basis.len();
    let f = |v: &RepVector| line.eval_coords(v.coords());
    let ax: Vec<RepVector> = (0..3).map(|a| x.scale(&field.int(a))).collect();
    // f(a x), f(a x + e_i), f(a x + e_i + e_j) for a = 0, 1, 2
    let e0: Vec<FieldElement> = ax.iter().map(f).collect();
    let e1: Vec<Vec<FieldElement>> = ax.iter().map(|p| basis.iter().map(|b| f(&p.add(b))).collect()).collect();
    let mut gram = Matrix::zeros(field, n, n);
    let inv24 = field.int(24).inv().unwrap();
    for i in 0..n {
        for j in i..n {
            let uw = basis[i].add(&basis[j]);
            let e2: Vec<FieldElement> = ax.iter().map(|p| f(&p.add(&uw))).collect();
            let two = field.int(2);
            let v = &e2[2] - &e1[2][i] - &e1[2][j] - &two * &e2[1] + &e0[2] + &two * &e1[1][i] + &two * &e1[1][j] + &e2[0]
                - &two * &e0[1]
                - &e1[0][i]
                - &e1[0][j];
            let v = &v * &inv24;
            gram.set(i, j, v.clone());
            gram.set(j, i, v);
        }
    }
    BilinearGram::new(gram, Symmetry::Symmetric)
}

/// The vector `t(x1, x2, x3)` with `<t, x4> = F(x1, x2, x3, x4)` for all `x4`.
pub fn trilinear_t(line: &Line, x1: &RepVector, x2: &RepVector, x3: &RepVector) -> Result<RepVector> {
    require_quartic(line)?;
    let field = x1.field();
    let pairing = SymplecticPairing::for_line(*line, field)?;
    let basis = line.basis(field);
    let rhs = basis
        .iter()
        .map(|b| polarize4(line, [x1, x2, x3, b]))
        .collect::<Result<Vec<_>>>()?;
    // <t, b_j> = sum_i t_i gram[i][j]
    let t = pairing
        .gram()
        .transpose()
        .solve(&rhs)
        .ok_or_else(|| Error::Precondition("pairing is degenerate".into()))?;
    Ok(line.point(&t))
}

pub fn wedge_annihilator_dim(v: &RepVector) -> Result<usize> {
    match v.space() {
        Space::Wedge { .. } => Ok(wedge::annihilator_dim(v)),
        other => Err(Error::SpaceMismatch {
            expected: "wedge".into(),
            found: other.to_string(),
        }),
    }
}

/// `v1 ∧ v2 ∧ v3 ↦ b(v1,v2) v3 - b(v1,v3) v2 + b(v2,v3) v1`.
pub fn sp6_contract(v: &RepVector, b: &Matrix) -> Result<RepVector> {
    if v.space() != (Space::Wedge { d: 3, n: 6 }) {
        return Err(Error::SpaceMismatch {
            expected: "wedge(3,6)".into(),
            found: v.space().to_string(),
        });
    }
    if b.rows() != 6 || !b.is_alternating() || b.rank() != 6 {
        return Err(Error::Precondition("b must be a nondegenerate skew form on k^6".into()));
    }
    Ok(RepVector::new(Space::Plain { n: 6 }, contraction_matrix(b).mul_vec(v.coords())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::standard_symplectic;

    #[test]
    fn rank_examples() {
        let q = Field::Rational;
        let e12 = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
        assert_eq!(rank(&e12).unwrap(), 2);
        assert!(rank(&RepVector::from_ints(Space::Cubic, q, &[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn cube_radical() {
        let q = Field::Rational;
        let x3 = RepVector::from_ints(Space::Cubic, q, &[1, 0, 0, 0]);
        let b = bilinear_bx(&Line::CubicDisc, &x3).unwrap();
        assert_eq!(b.rank(), 1);
        assert_eq!(radical_dimension(&b), 3);
        assert_eq!(b.gram().get(3, 3), &q.ratio(-9, 2).unwrap());
    }

    #[test]
    fn pairing_examples() {
        let q = Field::Rational;
        let sp = Space::Wedge { d: 3, n: 6 };
        let e123 = RepVector::basis(sp, q, wedge::rank_subset(&[0, 1, 2]));
        let e456 = RepVector::basis(sp, q, wedge::rank_subset(&[3, 4, 5]));
        assert_eq!(symplectic_pair(sp, &e123, &e456).unwrap(), q.one());
        let e12 = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
        let e34 = RepVector::from_ints(Space::Alt { n: 4 }, q, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(symplectic_pair(Space::Alt { n: 4 }, &e12, &e34).unwrap(), q.one());
    }

    #[test]
    fn contraction_examples() {
        let q = Field::Rational;
        let b = standard_symplectic(q);
        let sp = Space::Wedge { d: 3, n: 6 };
        let e123 = RepVector::basis(sp, q, wedge::rank_subset(&[0, 1, 2]));
        let c = sp6_contract(&e123, &b).unwrap();
        assert_eq!(c.coords()[2], q.one());
        let e135 = RepVector::basis(sp, q, wedge::rank_subset(&[0, 2, 4]));
        assert!(sp6_contract(&e135, &b).unwrap().is_zero());
        assert!(sp6_contract(&e135, &Matrix::zeros(q, 6, 6)).is_err());
    }

    #[test]
    fn pairings_are_nondegenerate() {
        for field in [Field::Rational, Field::Prime(7)] {
            for line in [Line::CubicDisc, Line::Wedge36, Line::Sp6, Line::Mat2n { n: 5, s: Gram::Split }, Line::Hyperdet] {
                let p = SymplecticPairing::for_line(line, field).unwrap();
                assert!(p.gram().is_alternating());
                assert_eq!(p.gram().rank(), line.dim(), "{line}");
            }
        }
    }
}
