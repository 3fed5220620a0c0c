use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use preserver::forms::Line;
use preserver::{Field, FieldElement};

const F7: Field = Field::Prime(7);
const P: u64 = 1_000_000_007;

fn rational() -> impl Strategy<Value = FieldElement> {
    (any::<i64>(), 1..i64::MAX).prop_map(|(n, d)| FieldElement::Rational(BigRational::new(n.into(), d.into())))
}

fn residue(p: u64) -> impl Strategy<Value = FieldElement> {
    (0..p).prop_map(move |v| Field::Prime(p).int(v as i64))
}

fn axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) - b), a);
    match a.inv() {
        Some(i) => prop_assert!((a * &i).is_one()),
        None => prop_assert!(a.is_zero()),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_axioms(a in rational(), b in rational(), c in rational()) {
        axioms(&a, &b, &c)?;
    }

    #[test]
    fn f7_axioms(a in residue(7), b in residue(7), c in residue(7)) {
        axioms(&a, &b, &c)?;
    }

    #[test]
    fn large_prime_axioms(a in residue(P), b in residue(P), c in residue(P)) {
        axioms(&a, &b, &c)?;
    }
}

proptest! {
    #[test]
    fn reduction_is_idempotent(n in any::<i64>(), d in 1..i64::MAX, k in 1..1000i64) {
        let q = BigRational::new(BigInt::from(n) * k, BigInt::from(d) * k);
        let once = FieldElement::Rational(q.clone());
        let twice = FieldElement::Rational(BigRational::new(q.numer().clone(), q.denom().clone()));
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once, FieldElement::Rational(BigRational::new(n.into(), d.into())));
        if d % 7 != 0 {
            let r = F7.from_rational(&q).unwrap();
            let again = F7.int(r.as_residue().unwrap() as i64);
            prop_assert!(r.as_residue().unwrap() < 7);
            prop_assert_eq!(r, again);
        }
    }

    #[test]
    fn int_embedding_is_periodic(k in any::<i32>()) {
        prop_assert_eq!(F7.int(k as i64), F7.int(k as i64 + 7));
        prop_assert_eq!(F7.int(k as i64), F7.bigint(&BigInt::from(k)));
    }

    /// Evaluating over the rationals and reducing agrees with evaluating mod p.
    #[test]
    fn forms_commute_with_reduction(line_idx in 0usize..11, seed in proptest::collection::vec(-20i64..20, 28)) {
        let lines: [Line; 11] = [
            "symm-det:3", "skew-pf:4", "skew-pf:6", "square-det:3", "quadric:4", "cubic-disc",
            "wedge36", "sp6", "mat2n:4", "mat2n:5:id", "hyperdet",
        ].map(|s| s.parse().unwrap());
        let line = lines[line_idx];
        let ints = &seed[..line.dim()];
        for p in [7u64, 11, 13] {
            let fp = Field::Prime(p);
            let q = line.eval(&line.point(&ints.iter().map(|&k| Field::Rational.int(k)).collect::<Vec<_>>())).unwrap();
            let m = line.eval(&line.point(&ints.iter().map(|&k| fp.int(k)).collect::<Vec<_>>())).unwrap();
            prop_assert_eq!(fp.from_rational(q.as_rational().unwrap()).unwrap(), m);
        }
    }
}

#[test]
fn descriptors_round_trip() {
    for s in ["Q", "Fp:5", "Fp:7", "Fp:1000000007"] {
        let f: Field = s.parse().unwrap();
        assert_eq!(f.descriptor(), s);
    }
    for bad in ["Fp:2", "Fp:3", "Fp:9", "Fp:", "R"] {
        assert!(bad.parse::<Field>().is_err(), "{bad}");
    }
}

#[test]
fn exact_small_values() {
    let q = Field::Rational;
    assert_eq!(q.ratio(1, 3).unwrap() + q.ratio(1, 6).unwrap(), q.ratio(1, 2).unwrap());
    assert_eq!(F7.int(3).inv().unwrap(), F7.int(5));
    assert_eq!(F7.int(-1), F7.int(6));
    assert!(F7.ratio(1, 7).is_err());
    assert_eq!(F7.elements().unwrap().count(), 7);
}
