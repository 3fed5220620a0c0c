use preserver::forms::{Gram, Line};
use preserver::minimality::{
    minimal_by_radical, minimal_by_rank, minimal_by_rrs, oracles, run_oracle, sample_minimal, Oracle, RrsPolicy,
};
use preserver::sampling::{random_vector, trial_rng};
use preserver::{Field, RepVector, Space};

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

fn lines() -> Vec<Line> {
    [
        "symm-det:2", "symm-det:3", "skew-pf:4", "skew-pf:6", "square-det:2", "square-det:3", "quadric:3", "quadric:5",
        "cubic-disc", "wedge36", "sp6", "mat2n:4", "mat2n:5", "hyperdet",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn q() -> Field {
    Field::Rational
}

#[test]
fn rank_examples() {
    let e11 = RepVector::from_ints(Space::Symm { n: 3 }, q(), &[1, 0, 0, 0, 0, 0]);
    assert!(minimal_by_rank(&Line::SymmDet { n: 3 }, &e11).unwrap().is_minimal);
    let j = RepVector::from_ints(Space::Alt { n: 4 }, q(), &[1, 0, 0, 0, 0, 1]);
    assert!(!minimal_by_rank(&Line::SkewPf { n: 4 }, &j).unwrap().is_minimal);
    let x3 = RepVector::from_ints(Space::Cubic, q(), &[1, 0, 0, 0]);
    let verdict = minimal_by_rank(&Line::CubicDisc, &x3).unwrap();
    assert!(verdict.is_minimal);
    assert_eq!(verdict.witness.unwrap()["linear_form"], serde_json::json!(["1", "0"]));
    let x2y = RepVector::from_ints(Space::Cubic, q(), &[0, 1, 0, 0]);
    assert!(!minimal_by_rank(&Line::CubicDisc, &x2y).unwrap().is_minimal);
    // 8x^3 + 12x^2y + 6xy^2 + y^3 = (2x + y)^3
    let cube = RepVector::from_ints(Space::Cubic, q(), &[8, 12, 6, 1]);
    assert!(minimal_by_rank(&Line::CubicDisc, &cube).unwrap().is_minimal);
}

#[test]
fn rrs_examples() {
    let symm2 = Line::SymmDet { n: 2 };
    let e11 = RepVector::from_ints(Space::Symm { n: 2 }, q(), &[1, 0, 0]);
    let id = RepVector::from_ints(Space::Symm { n: 2 }, q(), &[1, 0, 1]);
    assert!(minimal_by_rrs(&symm2, &e11, RrsPolicy::Exact).unwrap().is_minimal);
    assert!(!minimal_by_rrs(&symm2, &id, RrsPolicy::Exact).unwrap().is_minimal);
    let sq = RepVector::from_ints(Space::Square { n: 2 }, q(), &[1, 0, 0, 0]);
    assert!(minimal_by_rrs(&Line::SquareDet { n: 2 }, &sq, RrsPolicy::Exact).unwrap().is_minimal);
    let randomized = RrsPolicy::Randomized { trials: 16, seed: 3 };
    assert!(minimal_by_rrs(&symm2, &e11, randomized).unwrap().is_minimal);
    assert!(!minimal_by_rrs(&symm2, &id, randomized).unwrap().is_minimal);
    let e11_f7 = RepVector::from_ints(Space::Symm { n: 2 }, Field::Prime(7), &[1, 0, 0]);
    assert!(minimal_by_rrs(&symm2, &e11_f7, randomized).is_err());
    let w = RepVector::basis(Space::Wedge { d: 3, n: 6 }, q(), 0);
    assert!(minimal_by_rrs(&Line::Wedge36, &w, RrsPolicy::Exact).is_err());
}

#[test]
fn radical_examples() {
    let x3 = RepVector::from_ints(Space::Cubic, q(), &[1, 0, 0, 0]);
    assert!(minimal_by_radical(&Line::CubicDisc, &x3).unwrap().is_minimal);
    let generic = RepVector::from_ints(Space::Cubic, q(), &[0, 1, -1, 0]);
    assert!(!minimal_by_radical(&Line::CubicDisc, &generic).unwrap().is_minimal);
    for line in lines().into_iter().filter(|l| oracles(l).contains(&Oracle::Radical)) {
        let zero = RepVector::zero(line.space(), q());
        assert!(!minimal_by_radical(&line, &zero).unwrap().is_minimal);
    }
    let e11 = RepVector::from_ints(Space::Symm { n: 3 }, q(), &[1, 0, 0, 0, 0, 0]);
    assert!(minimal_by_radical(&Line::SymmDet { n: 3 }, &e11).is_err());
}

#[test]
fn zero_is_never_minimal() {
    for field in FIELDS {
        for line in lines() {
            let zero = RepVector::zero(line.space(), field);
            for oracle in oracles(&line) {
                assert!(!run_oracle(&line, &zero, oracle).unwrap().is_minimal, "{line} {oracle}");
            }
        }
    }
}

#[test]
fn forms_vanish_on_minimal_elements() {
    for field in FIELDS {
        for line in lines() {
            let mut rng = trial_rng(10, line.dim() as u64);
            for _ in 0..200 {
                let m = sample_minimal(&line, field, &mut rng).unwrap();
                assert!(!m.is_zero());
                assert!(line.eval(&m).unwrap().is_zero(), "{line} over {field}");
            }
        }
    }
}

#[test]
fn identity_gram_over_rationals_has_no_isotropic_sample() {
    let mut rng = trial_rng(0, 0);
    assert!(sample_minimal(&Line::Quadric { n: 3, s: Gram::Identity }, q(), &mut rng).is_err());
    // over F7 the sum of squares is isotropic somewhere
    let m = sample_minimal(&Line::Quadric { n: 3, s: Gram::Identity }, Field::Prime(7), &mut rng).unwrap();
    assert!(Line::Quadric { n: 3, s: Gram::Identity }.eval(&m).unwrap().is_zero());
}

/// Minimal samples, their sums (mostly not minimal), and generic vectors.
#[test]
fn oracles_agree() {
    for field in FIELDS {
        for line in lines() {
            let applicable = oracles(&line);
            let mut rng = trial_rng(11, line.dim() as u64);
            let n = if line.dim() > 10 { 150 } else { 1000 };
            let mut minimal = 0;
            for i in 0..n {
                let v = match i % 4 {
                    0 | 1 => sample_minimal(&line, field, &mut rng).unwrap(),
                    2 => {
                        let a = sample_minimal(&line, field, &mut rng).unwrap();
                        a.add(&sample_minimal(&line, field, &mut rng).unwrap())
                    }
                    _ => line.point(&random_vector(field, line.dim(), &mut rng)),
                };
                let verdicts: Vec<bool> =
                    applicable.iter().map(|&o| run_oracle(&line, &v, o).unwrap().is_minimal).collect();
                assert!(verdicts.iter().all(|&b| b == verdicts[0]), "{line} over {field}: {verdicts:?} on {v:?}");
                minimal += verdicts[0] as usize;
            }
            assert!(minimal >= n / 2, "{line}: {minimal} of {n}");
        }
    }
}
