//! Seeded random scalars, vectors and group elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldElement};
use crate::forms::{standard_symplectic, Gram};
use crate::matrix::Matrix;

/// Height of the integers drawn for random vectors over the rationals.
pub const VECTOR_HEIGHT: i64 = 9;

/// Independent generator for trial `index` of a run with seed `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vec<FieldElement> {
    (0..n).map(|_| field.sample_int(VECTOR_HEIGHT, rng)).collect()
}

pub fn random_nonzero_vector<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Vec<FieldElement> {
    loop {
        let v = random_vector(field, n, rng);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// `±1` over the rationals, any nonzero residue over `F_p`.
pub fn random_unit<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    match field {
        Field::Rational => {
            if rng.gen_bool(0.5) {
                field.one()
            } else {
                -field.one()
            }
        }
        Field::Prime(_) => field.sample_nonzero(1, rng),
    }
}

/// A nonzero scalar with no constraint: small integers over the rationals.
pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> FieldElement {
    field.sample_nonzero(3, rng)
}

/// Random element of `SL_n`: a word in elementary transvections over the
/// rationals (integer entries), rejection sampling over `F_p`.
pub fn random_special<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix {
    match field {
        Field::Rational => {
            let mut m = Matrix::identity(field, n);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            for _ in 0..2 * n {
                if n < 2 {
                    break;
                }
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let a = field.int(*[-2i64, -1, 1, 2].choose(rng).unwrap());
                for k in 0..n {
                    let v = m.get(i, k) + &(&a * m.get(j, k));
                    m.set(i, k, v);
                }
            }
            // signed permutation of rows with an even number of sign flips
            let mut out = Matrix::from_fn(n, n, |i, j| m.get(order[i], j).clone());
            if permutation_sign(&order) < 0 {
                for k in 0..n {
                    let v = -out.get(0, k);
                    out.set(0, k, v);
                }
            }
            out
        }
        Field::Prime(_) => {
            let one = field.one();
            with_det(random_invertible(field, n, rng), &one)
        }
    }
}

/// Random invertible matrix with no constraint on the determinant.
pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix {
    match field {
        Field::Rational => {
            let d = random_scalar(field, rng);
            with_det(random_special(field, n, rng), &d)
        }
        Field::Prime(_) => loop {
            let m = Matrix::from_fn(n, n, |_, _| field.sample(1, rng));
            if m.is_invertible() {
                return m;
            }
        },
    }
}

/// Random matrix with determinant exactly `det` (nonzero).
pub fn random_with_det<R: Rng + ?Sized>(field: Field, n: usize, det: &FieldElement, rng: &mut R) -> Matrix {
    with_det(random_special(field, n, rng), det)
}

/// Rescales the first row so the determinant becomes `det`.
fn with_det(m: Matrix, det: &FieldElement) -> Matrix {
    let current = m.det();
    let factor = det / &current;
    let mut out = m;
    for k in 0..out.cols() {
        let v = out.get(0, k) * &factor;
        out.set(0, k, v);
    }
    out
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Element of `GSp_6` for the standard form with similitude factor `mu`:
/// a product of symplectic transvections `I + a w w^t Ω` times
/// `diag(mu, 1, mu, 1, mu, 1)`.
pub fn symplectic_similitude<R: Rng + ?Sized>(field: Field, mu: &FieldElement, rng: &mut R) -> Matrix {
    let omega = standard_symplectic(field);
    let mut g = Matrix::identity(field, 6);
    for _ in 0..4 {
        let w: Vec<FieldElement> = (0..6).map(|_| field.sample_int(1, rng)).collect();
        let a = field.int(*[-1i64, 1].choose(rng).unwrap());
        let wt_omega = Matrix::from_vec(1, 6, w.clone()).mul(&omega);
        let t = Matrix::identity(field, 6).add(&Matrix::from_vec(6, 1, w).mul(&wt_omega).scale(&a));
        g = g.mul(&t);
    }
    let d = Matrix::from_fn(6, 6, |i, j| {
        if i != j {
            field.zero()
        } else if i % 2 == 0 {
            mu.clone()
        } else {
            field.one()
        }
    });
    g.mul(&d)
}

/// Reflection in `w` for the form `S`, requires `w^t S w != 0`.
fn reflection(s: &Matrix, w: &[FieldElement]) -> Option<Matrix> {
    let field = s.field();
    let n = w.len();
    let sw = s.mul_vec(w);
    let q = w.iter().zip(&sw).fold(field.zero(), |acc, (a, b)| &acc + &(a * b));
    if q.is_zero() {
        return None;
    }
    let coef = &field.int(-2) / &q;
    Some(Matrix::from_fn(n, n, |i, j| {
        let base = if i == j { field.one() } else { field.zero() };
        &base + &(&(&w[i] * &sw[j]) * &coef)
    }))
}

/// Random element of `O(S)`: a product of reflections.
pub fn random_orthogonal<R: Rng + ?Sized>(field: Field, n: usize, gram: Gram, rng: &mut R) -> Matrix {
    let s = gram.matrix(field, n);
    let mut g = Matrix::identity(field, n);
    let count = rng.gen_range(1..=3);
    let mut made = 0;
    while made < count {
        let w: Vec<FieldElement> = (0..n).map(|_| field.sample_int(2, rng)).collect();
        if let Some(r) = reflection(&s, &w) {
            g = g.mul(&r);
            made += 1;
        }
    }
    g
}

/// Similitude `g` of `S` with `g^t S g = mu S`, returned with `mu`.
///
/// For split `S` of even size any unit `mu` is reachable through
/// `diag(mu I, I)`; otherwise `g = λ O` and `mu = λ^2`.
pub fn random_similitude<R: Rng + ?Sized>(field: Field, n: usize, gram: Gram, scale: &FieldElement, rng: &mut R) -> (Matrix, FieldElement) {
    let o = random_orthogonal(field, n, gram, rng);
    if gram == Gram::Split && n.is_multiple_of(2) {
        let d = Matrix::from_fn(n, n, |i, j| {
            if i != j {
                field.zero()
            } else if i < n / 2 {
                scale.clone()
            } else {
                field.one()
            }
        });
        (o.mul(&d), scale.clone())
    } else {
        (o.scale(scale), scale * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_matrices_have_unit_determinant() {
        let mut rng = trial_rng(3, 0);
        for field in [Field::Rational, Field::Prime(7)] {
            for n in 1..6 {
                assert_eq!(random_special(field, n, &mut rng).det(), field.one());
                let d = random_scalar(field, &mut rng);
                assert_eq!(random_with_det(field, n, &d, &mut rng).det(), d);
            }
        }
    }

    #[test]
    fn similitudes_scale_their_forms() {
        let mut rng = trial_rng(5, 1);
        for field in [Field::Rational, Field::Prime(11)] {
            let omega = standard_symplectic(field);
            let mu = random_scalar(field, &mut rng);
            let g = symplectic_similitude(field, &mu, &mut rng);
            assert_eq!(g.transpose().mul(&omega).mul(&g), omega.scale(&mu));
            for n in [4, 5] {
                let s = Gram::Split.matrix(field, n);
                let (g, mu) = random_similitude(field, n, Gram::Split, &random_scalar(field, &mut rng), &mut rng);
                assert_eq!(g.transpose().mul(&s).mul(&g), s.scale(&mu));
            }
        }
    }

    #[test]
    fn streams_are_independent_and_reproducible() {
        let a: u64 = trial_rng(1, 0).gen();
        let b: u64 = trial_rng(1, 1).gen();
        assert_ne!(a, b);
        assert_eq!(a, trial_rng(1, 0).gen::<u64>());
    }
}
