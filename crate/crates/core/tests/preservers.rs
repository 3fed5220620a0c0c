use proptest::prelude::*;

use preserver::forms::Line;
use preserver::preservers::{compose, families, sample_group_element, Mode};
use preserver::sampling::{random_invertible, random_vector, trial_rng};
use preserver::verify::{preserves_form, preserves_minimals, scales_form, Policy};
use preserver::{Field, Matrix, PreserverElement, RepVector, Space};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

fn q() -> Field {
    Field::Rational
}

fn lines() -> Vec<Line> {
    [
        "symm-det:2", "symm-det:3", "skew-pf:4", "skew-pf:6", "square-det:2", "square-det:3", "quadric:4", "cubic-disc",
        "wedge36", "sp6", "mat2n:4", "mat2n:5", "hyperdet",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn congruence(n: usize, r: i64, p: Matrix) -> PreserverElement {
    PreserverElement::Congruence { space: Space::Symm { n }, r: q().int(r), p }
}

#[test]
fn apply_examples() {
    let x2 = RepVector::from_ints(Space::Alt { n: 4 }, q(), &[0, 1, 0, 0, 0, 0]);
    let star = PreserverElement::HodgeStar4.apply(&x2).unwrap();
    assert_eq!(star, RepVector::from_ints(Space::Alt { n: 4 }, q(), &[0, -1, 0, 0, 0, 0]));

    let v = RepVector::from_ints(Space::Symm { n: 3 }, q(), &[1, 2, 3, 4, 5, 6]);
    assert_eq!(congruence(3, 1, Matrix::identity(q(), 3)).apply(&v).unwrap(), v);

    // e1⊗e2⊗e1 ↦ e1⊗e1⊗e2
    let e121 = RepVector::basis(Space::TriTensor, q(), 2);
    let cycled = PreserverElement::FactorPermutation { sigma: [1, 2, 0] }.apply(&e121).unwrap();
    assert_eq!(cycled, RepVector::basis(Space::TriTensor, q(), 1));

    let cubic = RepVector::from_ints(Space::Cubic, q(), &[1, 0, 0, 0]);
    assert!(PreserverElement::HodgeStar4.apply(&cubic).is_err());
}

#[test]
fn constraint_examples() {
    let symm2 = Line::SymmDet { n: 2 };
    assert!(congruence(2, 1, Matrix::identity(q(), 2)).constraint_satisfied(&symm2).unwrap());
    assert!(!congruence(2, 2, Matrix::identity(q(), 2)).constraint_satisfied(&symm2).unwrap());
    let p = Matrix::from_ints(q(), &[&[1, 3, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 1, 1]]);
    let t = PreserverElement::Congruence { space: Space::Alt { n: 4 }, r: q().one(), p };
    assert!(t.constraint_satisfied(&Line::SkewPf { n: 4 }).unwrap());
    assert!(t.constraint_satisfied(&Line::CubicDisc).is_err());
}

#[test]
fn characters() {
    let p = Matrix::from_ints(q(), &[&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]]);
    // r^n det(P)^2 = 5^3 * 36
    assert_eq!(congruence(3, 5, p).character(&Line::SymmDet { n: 3 }).unwrap(), q().int(4500));
    let g = Matrix::from_ints(q(), &[&[1, 1], &[0, 2]]);
    let t = PreserverElement::CubicComposition { c: q().int(3), g };
    // c^4 det(g)^6 = 81 * 64
    assert_eq!(t.character(&Line::CubicDisc).unwrap(), q().int(5184));
    for line in lines() {
        assert!(PreserverElement::identity(&line, q()).character(&line).unwrap().is_one());
    }
}

#[test]
fn preserves_form_examples() {
    let star = preserves_form(&PreserverElement::HodgeStar4, &Line::SkewPf { n: 4 }, q(), Policy::Symbolic).unwrap();
    assert!(star.passed);
    let symm2 = Line::SymmDet { n: 2 };
    let verdict = preserves_form(&congruence(2, 2, Matrix::identity(q(), 2)), &symm2, q(), Policy::Symbolic).unwrap();
    assert!(!verdict.passed);
    let cx = verdict.counterexample.unwrap();
    assert_eq!(cx.lhs, &q().int(4) * &cx.rhs);
    assert_eq!(symm2.eval(&cx.input).unwrap(), cx.rhs);
    for field in FIELDS {
        for line in lines() {
            let id = PreserverElement::identity(&line, field);
            assert!(preserves_form(&id, &line, field, Policy::Auto { seed: 0 }).unwrap().passed, "{line}");
        }
    }
}

#[test]
fn preserves_minimals_examples() {
    let mut rng = trial_rng(20, 0);
    let t = congruence(3, 5, random_invertible(q(), 3, &mut rng));
    assert!(preserves_minimals(&t, &Line::SymmDet { n: 3 }, q(), 100, 1).unwrap().passed);
    assert!(preserves_minimals(&PreserverElement::HodgeStar4, &Line::SkewPf { n: 4 }, q(), 100, 1).unwrap().passed);
    let t = PreserverElement::Linear { space: Space::Symm { n: 2 }, matrix: random_invertible(q(), 3, &mut rng) };
    assert!(!preserves_minimals(&t, &Line::SymmDet { n: 2 }, q(), 100, 1).unwrap().passed);
}

#[test]
fn scales_form_examples() {
    let mut rng = trial_rng(21, 0);
    let p = random_invertible(q(), 3, &mut rng);
    let det = p.det();
    let v = scales_form(&congruence(3, 2, p), &Line::SymmDet { n: 3 }, q(), Policy::Symbolic).unwrap();
    assert_eq!(v.scalar.unwrap(), &q().int(8) * &(&det * &det));
    let star = scales_form(&PreserverElement::HodgeStar4, &Line::SkewPf { n: 4 }, q(), Policy::Symbolic).unwrap();
    assert!(star.scalar.unwrap().is_one());
    let t = PreserverElement::Linear { space: Space::Symm { n: 3 }, matrix: random_invertible(q(), 6, &mut rng) };
    let v = scales_form(&t, &Line::SymmDet { n: 3 }, q(), Policy::SchwartzZippel { trials: 8, seed: 2 }).unwrap();
    assert!(!v.passed);
    assert!(v.counterexample.is_some());
}

#[test]
fn compose_examples() {
    let a = Matrix::from_ints(q(), &[&[1, 2], &[0, 1]]);
    let b = Matrix::from_ints(q(), &[&[3, 0], &[1, 1]]);
    let c = compose(&congruence(2, 2, a.clone()), &congruence(2, 3, b.clone())).unwrap();
    assert_eq!(c, congruence(2, 6, a.mul(&b)));
    let star2 = compose(&PreserverElement::HodgeStar4, &PreserverElement::HodgeStar4).unwrap();
    assert!(matches!(star2, PreserverElement::Congruence { .. }));
    let id = PreserverElement::identity(&Line::CubicDisc, q());
    let t = PreserverElement::CubicComposition { c: q().int(2), g: a };
    assert_eq!(compose(&t, &id).unwrap().matrix(q()), t.matrix(q()));
    assert!(compose(&t, &PreserverElement::HodgeStar4).is_err());
}

#[test]
fn sampled_elements_respect_their_mode() {
    for field in FIELDS {
        for line in lines() {
            let mut rng = trial_rng(22, line.dim() as u64);
            for family in families(&line) {
                for _ in 0..10 {
                    let t = sample_group_element(family, &line, field, Mode::Satisfying, &mut rng).unwrap();
                    assert!(t.constraint_satisfied(&line).unwrap());
                    t.validate().unwrap();
                    let t = sample_group_element(family, &line, field, Mode::Violating, &mut rng).unwrap();
                    assert!(!t.constraint_satisfied(&line).unwrap());
                }
            }
        }
    }
}

/// Characters multiply under composition and inverses stay in the family.
#[test]
fn group_laws() {
    for field in FIELDS {
        for line in lines() {
            let mut rng = trial_rng(23, line.dim() as u64);
            for family in families(&line) {
                for _ in 0..10 {
                    let s = sample_group_element(family, &line, field, Mode::Satisfying, &mut rng).unwrap();
                    let t = sample_group_element(family, &line, field, Mode::Unconstrained, &mut rng).unwrap();
                    let u = sample_group_element(family, &line, field, Mode::Unconstrained, &mut rng).unwrap();
                    let s2 = sample_group_element(family, &line, field, Mode::Satisfying, &mut rng).unwrap();
                    assert!(compose(&s, &s2).unwrap().constraint_satisfied(&line).unwrap(), "{line}");
                    let tu = compose(&t, &u).unwrap();
                    assert_eq!(tu.character(&line).unwrap(), &t.character(&line).unwrap() * &u.character(&line).unwrap());
                    assert_eq!(tu.matrix(field), t.matrix(field).mul(&u.matrix(field)));
                }
            }
        }
    }
}

#[test]
fn parametric_inverses() {
    for field in FIELDS {
        let mut rng = trial_rng(24, 0);
        let p = random_invertible(field, 3, &mut rng);
        let r = field.int(3);
        let t = PreserverElement::Congruence { space: Space::Symm { n: 3 }, r: r.clone(), p: p.clone() };
        let inv = PreserverElement::Congruence { space: Space::Symm { n: 3 }, r: r.inv().unwrap(), p: p.inverse().unwrap() };
        assert_eq!(compose(&t, &inv).unwrap().matrix(field), Matrix::identity(field, 6));
        let g = random_invertible(field, 2, &mut rng);
        let t = PreserverElement::CubicComposition { c: r.clone(), g: g.clone() };
        let inv = PreserverElement::CubicComposition { c: r.inv().unwrap(), g: g.inverse().unwrap() };
        assert_eq!(compose(&t, &inv).unwrap().matrix(field), Matrix::identity(field, 4));
        let g = random_invertible(field, 6, &mut rng);
        let t = PreserverElement::WedgePush { d: 3, c: r.clone(), g: g.clone() };
        let inv = PreserverElement::WedgePush { d: 3, c: r.inv().unwrap(), g: g.inverse().unwrap() };
        assert_eq!(compose(&t, &inv).unwrap().matrix(field), Matrix::identity(field, 20));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_is_linear(idx in 0usize..13, seed in any::<u64>(), prime in any::<bool>()) {
        let field = if prime { Field::Prime(7) } else { Field::Rational };
        let line = lines()[idx];
        let mut rng = trial_rng(seed, 0);
        for family in families(&line) {
            let t = sample_group_element(family, &line, field, Mode::Unconstrained, &mut rng).unwrap();
            let u = line.point(&random_vector(field, line.dim(), &mut rng));
            let v = line.point(&random_vector(field, line.dim(), &mut rng));
            let c = field.int(3);
            let lhs = t.apply(&u.scale(&c).add(&v)).unwrap();
            prop_assert_eq!(lhs, t.apply(&u).unwrap().scale(&c).add(&t.apply(&v).unwrap()));
        }
    }

    #[test]
    fn character_law_pointwise(idx in 0usize..13, seed in any::<u64>(), prime in any::<bool>()) {
        let field = if prime { Field::Prime(7) } else { Field::Rational };
        let line = lines()[idx];
        let mut rng = trial_rng(seed, 1);
        for family in families(&line) {
            let t = sample_group_element(family, &line, field, Mode::Unconstrained, &mut rng).unwrap();
            let v = line.point(&random_vector(field, line.dim(), &mut rng));
            let chi = t.character(&line).unwrap();
            prop_assert_eq!(line.eval(&t.apply(&v).unwrap()).unwrap(), &chi * &line.eval(&v).unwrap());
        }
    }
}
