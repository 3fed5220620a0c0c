use proptest::prelude::*;

use preserver::forms::{Gram, Line};
use preserver::multilinear::{
    bilinear_bx, polarize4, radical_dimension, rank, symplectic_pair, trilinear_t, wedge_annihilator_dim, BilinearGram,
    SymplecticPairing, Symmetry,
};
use preserver::sampling::{random_invertible, random_vector, trial_rng};
use preserver::{Field, Matrix, RepVector, Space};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

fn quartics() -> Vec<Line> {
    ["symm-det:4", "skew-pf:8", "square-det:4", "cubic-disc", "wedge36", "sp6", "mat2n:4", "mat2n:6:id", "hyperdet"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn random_point(line: &Line, field: Field, rng: &mut impl rand::Rng) -> RepVector {
    line.point(&random_vector(field, line.dim(), rng))
}

#[test]
fn polarization_diagonal_is_the_form() {
    for field in FIELDS {
        for line in quartics() {
            let mut rng = trial_rng(1, line.dim() as u64);
            for _ in 0..1000 {
                let v = random_point(&line, field, &mut rng);
                assert_eq!(polarize4(&line, [&v, &v, &v, &v]).unwrap(), line.eval(&v).unwrap(), "{line}");
            }
        }
    }
}

#[test]
fn polarization_is_symmetric() {
    let line = Line::CubicDisc;
    let mut rng = trial_rng(2, 0);
    let xs: Vec<RepVector> = (0..4).map(|_| random_point(&line, Field::Rational, &mut rng)).collect();
    let a = polarize4(&line, [&xs[0], &xs[1], &xs[2], &xs[3]]).unwrap();
    let b = polarize4(&line, [&xs[2], &xs[0], &xs[3], &xs[1]]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn polarization_rejects_other_degrees() {
    let line: Line = "symm-det:3".parse().unwrap();
    let v = RepVector::zero(line.space(), Field::Rational);
    assert!(polarize4(&line, [&v, &v, &v, &v]).is_err());
    assert!(bilinear_bx(&line, &v).is_err());
}

#[test]
fn cubic_bx_examples() {
    let q = Field::Rational;
    let x = RepVector::from_ints(Space::Cubic, q, &[1, 0, 0, 0]);
    let b = bilinear_bx(&Line::CubicDisc, &x).unwrap();
    assert_eq!(b.rank(), 1);
    assert_eq!(radical_dimension(&b), 3);
    let v = RepVector::from_ints(Space::Cubic, q, &[0, 1, -1, 0]);
    assert_eq!(polarize4(&Line::CubicDisc, [&v, &v, &v, &v]).unwrap(), q.one());
}

#[test]
fn trilinear_t_represents_polarization() {
    for field in FIELDS {
        for line in ["cubic-disc", "wedge36", "mat2n:5", "hyperdet"] {
            let line: Line = line.parse().unwrap();
            let pairing = SymplecticPairing::for_line(line, field).unwrap();
            let mut rng = trial_rng(3, line.dim() as u64);
            let xs: Vec<RepVector> = (0..4).map(|_| random_point(&line, field, &mut rng)).collect();
            let t = trilinear_t(&line, &xs[0], &xs[1], &xs[2]).unwrap();
            assert_eq!(
                pairing.pair(&t, &xs[3]).unwrap(),
                polarize4(&line, [&xs[0], &xs[1], &xs[2], &xs[3]]).unwrap(),
                "{line} over {field}"
            );
        }
    }
}

#[test]
fn pairings_are_nondegenerate() {
    for field in FIELDS {
        for line in ["cubic-disc", "wedge36", "sp6", "mat2n:4", "mat2n:5", "mat2n:4:id", "hyperdet"] {
            let line: Line = line.parse().unwrap();
            let p = SymplecticPairing::for_line(line, field).unwrap();
            assert!(p.gram().is_alternating(), "{line}");
            assert_eq!(p.gram().rank(), line.dim(), "{line} over {field}");
        }
    }
}

#[test]
fn pairing_examples() {
    let q = Field::Rational;
    let x = RepVector::from_ints(Space::Alt { n: 4 }, q, &[1, 0, 0, 0, 0, 0]);
    let y = RepVector::from_ints(Space::Alt { n: 4 }, q, &[0, 0, 0, 0, 0, 1]);
    assert_eq!(symplectic_pair(Space::Alt { n: 4 }, &x, &y).unwrap(), q.one());
    let a = RepVector::from_ints(Space::Cubic, q, &[1, 0, 0, 0]);
    let b = RepVector::from_ints(Space::Cubic, q, &[0, 0, 0, 1]);
    assert_eq!(symplectic_pair(Space::Cubic, &a, &b).unwrap(), q.one());
    assert_eq!(symplectic_pair(Space::Cubic, &b, &a).unwrap(), -q.one());
}

#[test]
fn mat2n_pairing_is_invariant_under_sl2_times_orthogonal() {
    use preserver::preservers::PreserverElement;
    let field = Field::Prime(7);
    let line = Line::Mat2n { n: 4, s: Gram::Split };
    let pairing = SymplecticPairing::for_line(line, field).unwrap();
    let mut rng = trial_rng(4, 0);
    let g1 = preserver::sampling::random_special(field, 2, &mut rng);
    let g2 = preserver::sampling::random_orthogonal(field, 4, Gram::Split, &mut rng);
    let t = PreserverElement::GOPair { g1, g2, mu: field.one(), s: Gram::Split };
    for _ in 0..20 {
        let x = random_point(&line, field, &mut rng);
        let y = random_point(&line, field, &mut rng);
        let lhs = pairing.pair(&t.apply(&x).unwrap(), &t.apply(&y).unwrap()).unwrap();
        assert_eq!(lhs, pairing.pair(&x, &y).unwrap());
    }
}

#[test]
fn wedge_annihilators() {
    let q = Field::Rational;
    let s = Space::Wedge { d: 3, n: 6 };
    let e = |i| RepVector::basis(s, q, i);
    assert_eq!(wedge_annihilator_dim(&e(0)).unwrap(), 3);
    assert_eq!(wedge_annihilator_dim(&e(0).add(&e(19))).unwrap(), 0);
}

#[test]
fn rank_needs_a_matrix_space() {
    let v = RepVector::from_ints(Space::Cubic, Field::Rational, &[1, 0, 0, 0]);
    assert!(rank(&v).is_err());
    let e12 = RepVector::from_ints(Space::Alt { n: 4 }, Field::Rational, &[1, 0, 0, 0, 0, 0]);
    assert_eq!(rank(&e12).unwrap(), 2);
}

proptest! {
    #[test]
    fn rank_is_invariant_under_row_and_column_operations(
        seed in any::<u64>(), m in 1usize..6, n in 1usize..6, r in 0usize..6, prime in prop::bool::ANY
    ) {
        let field = if prime { Field::Prime(7) } else { Field::Rational };
        let mut rng = trial_rng(seed, 0);
        // a product of an m × r and an r × n matrix has rank at most r
        let r = r.min(m).min(n);
        let a = Matrix::from_vec(m, r, random_vector(field, m * r, &mut rng));
        let b = Matrix::from_vec(r, n, random_vector(field, r * n, &mut rng));
        let x = if r == 0 { Matrix::zeros(field, m, n) } else { a.mul(&b) };
        let p = random_invertible(field, m, &mut rng);
        let q = random_invertible(field, n, &mut rng);
        prop_assert!(x.rank() <= r);
        prop_assert_eq!(p.mul(&x).mul(&q).rank(), x.rank());
    }

    #[test]
    fn radical_plus_rank_is_dimension(seed in any::<u64>(), n in 1usize..7, prime in prop::bool::ANY) {
        let field = if prime { Field::Prime(7) } else { Field::Rational };
        let mut rng = trial_rng(seed, 1);
        let a = Matrix::from_vec(n, n, random_vector(field, n * n, &mut rng));
        let k = Matrix::from_vec(n, n, random_vector(field, n * n, &mut rng));
        // low-rank symmetric and alternating grams
        let sym = a.transpose().mul(&Matrix::from_fn(n, n, |i, j| if i == j && i % 2 == 0 { field.one() } else { field.zero() })).mul(&a);
        let alt = k.sub(&k.transpose());
        for (g, s) in [(sym, Symmetry::Symmetric), (alt, Symmetry::Skew)] {
            let b = BilinearGram::new(g, s).unwrap();
            prop_assert_eq!(radical_dimension(&b) + b.rank(), n);
        }
    }
}
