//! Exterior powers in colex coordinates.
//!
//! A sorted subset `c_1 < ... < c_d` of `{0, ..., n-1}` has colex rank
//! `sum_i C(c_i, i)`, so `{0,1,2} < {0,1,3} < {0,2,3} < {1,2,3} < {0,1,4} < ...`.

use crate::field::{Field, FieldElement, Ring};
use crate::matrix::Matrix;
use crate::rep::{RepVector, Space};

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Colex rank of a strictly increasing index list.
pub fn rank_subset(subset: &[usize]) -> usize {
    debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
    subset.iter().enumerate().map(|(i, &c)| binom(c, i + 1)).sum()
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(mut rank: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for i in (1..=d).rev() {
        let mut c = i - 1;
        while binom(c + 1, i) <= rank {
            c += 1;
        }
        out[i - 1] = c;
        rank -= binom(c, i);
    }
    out
}

/// All `d`-subsets of `{0..n}` in colex order.
pub fn subsets(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..binom(n, d)).map(|r| unrank_subset(r, d)).collect()
}

/// Sign of the shuffle that sorts the concatenation `a ++ b`, or `None` when
/// the index sets overlap.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<i64> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn merged(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut m: Vec<usize> = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

/// `a ∧ b` for `a` in `∧^p k^n` and `b` in `∧^q k^n`.
pub fn wedge_product<R: Ring>(a: &RepVector<R>, b: &RepVector<R>) -> RepVector<R> {
    let (Space::Wedge { d: p, n }, Space::Wedge { d: q, n: n2 }) = (a.space(), b.space()) else {
        panic!("wedge product of non-wedge vectors");
    };
    assert_eq!(n, n2, "ambient dimensions differ");
    let field = a.field();
    let space = Space::Wedge { d: p + q, n };
    let mut out = RepVector::<R>::zero(space, field).into_coords();
    if p + q > n {
        return RepVector::new(space, out);
    }
    let sa = subsets(p, n);
    let sb = subsets(q, n);
    for (i, x) in a.coords().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords().iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            if let Some(s) = merge_sign(&sa[i], &sb[j]) {
                let k = rank_subset(&merged(&sa[i], &sb[j]));
                let t = x.mul(y);
                out[k] = if s > 0 { out[k].add(&t) } else { out[k].sub(&t) };
            }
        }
    }
    RepVector::new(space, out)
}

/// A plain vector of `k^n` as an element of `∧^1 k^n`.
pub fn as_one_form<R: Ring>(u: &[R]) -> RepVector<R> {
    RepVector::new(Space::Wedge { d: 1, n: u.len() }, u.to_vec())
}

/// `v_1 ∧ ... ∧ v_d`.
pub fn decomposable<R: Ring>(vectors: &[Vec<R>]) -> RepVector<R> {
    assert!(!vectors.is_empty());
    let mut acc = as_one_form(&vectors[0]);
    for v in &vectors[1..] {
        acc = wedge_product(&acc, &as_one_form(v));
    }
    acc
}

/// Contraction by a covector `phi`: `e_{a_1} ∧ ... ∧ e_{a_d}` maps to
/// `sum_k (-1)^k phi(a_k) e_{a_1} ∧ ... (omit a_k) ... ∧ e_{a_d}`.
pub fn contract<R: Ring>(phi: &[FieldElement], v: &RepVector<R>) -> RepVector<R> {
    let Space::Wedge { d, n } = v.space() else {
        panic!("contraction of a non-wedge vector");
    };
    assert!(d >= 1 && phi.len() == n);
    let field = v.field();
    let space = Space::Wedge { d: d - 1, n };
    let mut out = RepVector::<R>::zero(space, field).into_coords();
    for (r, x) in v.coords().iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let set = unrank_subset(r, d);
        for (k, &a) in set.iter().enumerate() {
            if phi[a].is_zero() {
                continue;
            }
            let mut rest = set.clone();
            rest.remove(k);
            let idx = rank_subset(&rest);
            let t = x.scale(&phi[a]);
            out[idx] = if k % 2 == 0 { out[idx].add(&t) } else { out[idx].sub(&t) };
        }
    }
    RepVector::new(space, out)
}

/// Coordinate matrix of `∧^d g` scaled by `c`: entry `(I, J)` is `c * det g[I, J]`.
pub fn pushforward_matrix(g: &Matrix, d: usize, c: &FieldElement) -> Matrix {
    let n = g.rows();
    let sets = subsets(d, n);
    Matrix::from_fn(sets.len(), sets.len(), |i, j| {
        let minor = Matrix::from_fn(d, d, |a, b| g.get(sets[i][a], sets[j][b]).clone());
        &minor.det() * c
    })
}

/// Matrix of `u ↦ u ∧ v` from `k^n` to `∧^{d+1} k^n`.
pub fn left_wedge_matrix(v: &RepVector) -> Matrix {
    let Space::Wedge { d, n } = v.space() else {
        panic!("not a wedge vector");
    };
    let field = v.field();
    let rows = binom(n, d + 1);
    let mut m = Matrix::zeros(field, rows, n);
    for i in 0..n {
        let e = RepVector::basis(Space::Wedge { d: 1, n }, field, i);
        let w = wedge_product(&e, v);
        for (r, x) in w.coords().iter().enumerate() {
            m.set(r, i, x.clone());
        }
    }
    m
}

/// Dimension of `{u : u ∧ v = 0}`.
pub fn annihilator_dim(v: &RepVector) -> usize {
    let Space::Wedge { n, .. } = v.space() else {
        panic!("not a wedge vector");
    };
    n - left_wedge_matrix(v).rank()
}

/// Coefficient of `e_0 ∧ ... ∧ e_{n-1}` in `a ∧ b` for complementary degrees.
pub fn top_pairing<R: Ring>(a: &RepVector<R>, b: &RepVector<R>) -> R {
    let w = wedge_product(a, b);
    let Space::Wedge { d, n } = w.space() else { unreachable!() };
    assert_eq!(d, n, "degrees are not complementary");
    w.coords()[0].clone()
}

/// The star operator on `∧^d k^n`: `e_I ↦ s e_{I^c}` with `e_I ∧ s e_{I^c} = e_0 ∧ ... ∧ e_{n-1}`.
pub fn hodge_star_matrix(field: Field, d: usize, n: usize) -> Matrix {
    let sets = subsets(d, n);
    let comp_sets = subsets(n - d, n);
    let mut m = Matrix::zeros(field, comp_sets.len(), sets.len());
    for (j, s) in sets.iter().enumerate() {
        let c: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
        let sign = merge_sign(s, &c).unwrap();
        m.set(rank_subset(&c), j, field.int(sign));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order() {
        let s = subsets(3, 5);
        assert_eq!(s[0], vec![0, 1, 2]);
        assert_eq!(s[1], vec![0, 1, 3]);
        assert_eq!(s[3], vec![1, 2, 3]);
        assert_eq!(s[4], vec![0, 1, 4]);
        for (r, set) in s.iter().enumerate() {
            assert_eq!(rank_subset(set), r);
        }
    }

    #[test]
    fn wedge_is_alternating() {
        let q = Field::Rational;
        let u = vec![q.int(1), q.int(2), q.int(0), q.int(-1)];
        let w = vec![q.int(3), q.int(0), q.int(1), q.int(1)];
        let uw = decomposable(&[u.clone(), w.clone()]);
        let wu = decomposable(&[w, u.clone()]);
        assert_eq!(uw, wu.scale(&q.int(-1)));
        assert!(decomposable(&[u.clone(), u]).is_zero());
    }

    #[test]
    fn annihilators() {
        let q = Field::Rational;
        let sp = Space::Wedge { d: 3, n: 6 };
        let e123 = RepVector::basis(sp, q, rank_subset(&[0, 1, 2]));
        let e456 = RepVector::basis(sp, q, rank_subset(&[3, 4, 5]));
        assert_eq!(annihilator_dim(&e123), 3);
        assert_eq!(annihilator_dim(&e123.add(&e456)), 0);
        assert_eq!(annihilator_dim(&RepVector::zero(sp, q)), 6);
        assert_eq!(top_pairing(&e123, &e456), q.one());
    }

    #[test]
    fn star_pairs_to_volume() {
        let q = Field::Rational;
        let star = hodge_star_matrix(q, 3, 6);
        for i in 0..20 {
            let e = RepVector::basis(Space::Wedge { d: 3, n: 6 }, q, i);
            let se = RepVector::new(e.space(), star.mul_vec(e.coords()));
            assert_eq!(top_pairing(&e, &se), q.one());
        }
        assert_eq!(star.mul(&star), Matrix::identity(q, 20).scale(&q.int(-1)));
    }
}
