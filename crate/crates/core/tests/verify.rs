use num_bigint::BigInt;
use num_rational::BigRational;

use preserver::forms::Line;
use preserver::preservers::PreserverElement;
use preserver::verify::{error_bound, preserves_form, sample_set_size, trials_for_bound, Policy, TARGET_BITS};
use preserver::{Field, Matrix, Space};

#[test]
fn sample_sets() {
    assert_eq!(sample_set_size(Field::Rational), BigInt::from(1u64 << 32));
    assert_eq!(sample_set_size(Field::Prime(7)), BigInt::from(7));
}

#[test]
fn trial_counts_reach_the_target() {
    assert_eq!(trials_for_bound(4, Field::Rational).unwrap(), 2);
    assert_eq!(trials_for_bound(3, Field::Rational).unwrap(), 2);
    assert_eq!(trials_for_bound(4, Field::Prime(7)).unwrap(), 75);
    assert_eq!(trials_for_bound(2, Field::Prime(7)).unwrap(), 34);
    assert!(trials_for_bound(7, Field::Prime(7)).is_err());
    let target = BigRational::new(BigInt::from(1), BigInt::from(1) << TARGET_BITS);
    for (deg, field) in [(4, Field::Prime(7)), (4, Field::Prime(11)), (3, Field::Prime(5)), (4, Field::Rational)] {
        let k = trials_for_bound(deg, field).unwrap();
        assert!(error_bound(deg, field, k) <= target);
        assert!(error_bound(deg, field, k - 1) > target);
    }
}

#[test]
fn auto_policy_switches_on_dimension() {
    let small = Line::SymmDet { n: 4 };
    let big = Line::SkewPf { n: 6 };
    assert_eq!(Policy::Auto { seed: 9 }.resolve(&small, Field::Rational).unwrap(), Policy::Symbolic);
    assert_eq!(
        Policy::Auto { seed: 9 }.resolve(&big, Field::Prime(7)).unwrap(),
        Policy::SchwartzZippel { trials: 50, seed: 9 }
    );
    assert!(Policy::Symbolic.resolve(&big, Field::Rational).is_err());
}

#[test]
fn randomized_verdicts_report_their_bound() {
    let line = Line::SkewPf { n: 6 };
    let t = PreserverElement::Congruence { space: Space::Alt { n: 6 }, r: Field::Rational.one(), p: Matrix::identity(Field::Rational, 6) };
    let v = preserves_form(&t, &line, Field::Rational, Policy::Auto { seed: 1 }).unwrap();
    assert!(v.passed);
    assert_eq!(v.error_bound, Some(error_bound(3, Field::Rational, 2)));
    assert_eq!(v.points, 2);
    let json = v.to_json();
    assert_eq!(json["passed"], true);
    assert!(json.get("error_bound").is_some());

    let bad = PreserverElement::Congruence { space: Space::Alt { n: 6 }, r: Field::Rational.int(2), p: Matrix::identity(Field::Rational, 6) };
    let v = preserves_form(&bad, &line, Field::Rational, Policy::SchwartzZippel { trials: 32, seed: 1 }).unwrap();
    assert!(!v.passed);
    let cx = v.counterexample.unwrap();
    assert_eq!(line.eval(&bad.apply(&cx.input).unwrap()).unwrap(), cx.lhs);
    assert_eq!(line.eval(&cx.input).unwrap(), cx.rhs);
}
