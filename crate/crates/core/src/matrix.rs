//! Dense matrices over a [`Ring`], with exact elimination over fields.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, FieldElement, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R = FieldElement> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> std::fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<R: Ring> Matrix<R> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| R::zero_in(field))
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { R::one_in(field) } else { R::zero_in(field) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn into_data(self) -> Vec<R> {
        self.data
    }

    pub fn field(&self) -> Field {
        self.data.first().map(|x| x.field()).unwrap_or(Field::Rational)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let field = self.field();
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero_in(field);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(rhs.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let field = self.field();
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero_in(field);
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(rhs.get(i, j)))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn trace(&self) -> R {
        assert!(self.is_square());
        let mut acc = R::zero_in(self.field());
        for i in 0..self.rows {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j) == &self.get(j, i).neg()))
    }

    /// Determinant, dispatching to elimination for scalars.
    pub fn determinant(&self) -> R {
        R::determinant(self)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let field = self.field();
        Matrix::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                rhs.get(i - self.rows, j - self.cols).clone()
            } else {
                R::zero_in(field)
            }
        })
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols).mul(rhs.get(i % rhs.rows, j % rhs.cols))
        })
    }
}

/// Division-free determinant: the minors on the first `k` rows are built from
/// those on the first `k - 1` rows, indexed by column subsets.
pub fn det_by_minors<R: Ring>(m: &Matrix<R>) -> R {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let field = m.field();
    if n == 0 {
        return R::one_in(field);
    }
    assert!(n <= 20, "minor expansion limited to n <= 20");
    let mut prev: HashMap<u32, R> = HashMap::new();
    prev.insert(0, R::one_in(field));
    for k in 0..n {
        let mut next: HashMap<u32, R> = HashMap::new();
        for (&set, minor) in &prev {
            if minor.is_zero() {
                continue;
            }
            // rows 0..k use the columns in `set`; row k takes column j
            for j in 0..n {
                if set & (1 << j) != 0 {
                    continue;
                }
                let a = m.get(k, j);
                if a.is_zero() {
                    continue;
                }
                // sign of inserting column j into the sorted column list
                let above = (set >> j).count_ones();
                let term = a.mul(minor);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let key = set | (1 << j);
                match next.get_mut(&key) {
                    Some(v) => *v = v.add(&term),
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        prev = next;
    }
    prev.remove(&((1u32 << n) - 1)).unwrap_or_else(|| R::zero_in(field))
}

/// Result of row reduction to reduced echelon form.
struct Echelon {
    reduced: Matrix,
    pivots: Vec<usize>,
}

impl Matrix<FieldElement> {
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| field.int(x)).collect()).collect())
    }

    /// Exact rank: fraction-free Bareiss elimination over the rationals,
    /// ordinary elimination modulo `p`.
    pub fn rank(&self) -> usize {
        match self.field() {
            Field::Rational => bareiss(self.integer_rows()).0,
            Field::Prime(_) => self.echelon().pivots.len(),
        }
    }

    pub fn det(&self) -> FieldElement {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let field = self.field();
        if self.rows == 0 {
            return field.one();
        }
        match field {
            Field::Rational => {
                let mut scale = BigInt::one();
                let rows: Vec<Vec<BigInt>> = (0..self.rows)
                    .map(|i| {
                        let (row, den) = clear_denominators(self.row(i));
                        scale *= den;
                        row
                    })
                    .collect();
                let (rank, det) = bareiss(rows);
                if rank < self.rows {
                    return field.zero();
                }
                FieldElement::Rational(num_rational::BigRational::new(det, scale))
            }
            Field::Prime(_) => {
                let mut a = self.clone();
                let n = a.rows;
                let mut det = field.one();
                for c in 0..n {
                    let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                        return field.zero();
                    };
                    if p != c {
                        a.swap_rows(p, c);
                        det = -det;
                    }
                    let pivot = a.get(c, c).clone();
                    det *= &pivot;
                    let inv = pivot.inv().unwrap();
                    for r in c + 1..n {
                        let factor = a.get(r, c) * &inv;
                        if factor.is_zero() {
                            continue;
                        }
                        for k in c..n {
                            let v = a.get(r, k) - &(&factor * a.get(c, k));
                            a.set(r, k, v);
                        }
                    }
                }
                det
            }
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| clear_denominators(self.row(i)).0).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn echelon(&self) -> Echelon {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().unwrap();
            for k in c..a.cols {
                let v = a.get(r, k) * &inv;
                a.set(r, k, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for k in c..a.cols {
                    let v = a.get(i, k) - &(&factor * a.get(r, k));
                    a.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let field = self.field();
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| e.reduced.get(i, n + j).clone()))
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let field = self.field();
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &c) in e.pivots.iter().enumerate() {
            x[c] = e.reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let field = self.field();
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![field.zero(); self.cols];
                x[f] = field.one();
                for (r, &c) in e.pivots.iter().enumerate() {
                    x[c] = -e.reduced.get(r, f);
                }
                x
            })
            .collect()
    }

    /// True when the matrix is `c * I` for some scalar `c`.
    pub fn scalar_multiple_of_identity(&self) -> Option<FieldElement> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        let ok = (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j) == &c } else { self.get(i, j).is_zero() }));
        ok.then_some(c)
    }
}

fn clear_denominators(row: &[FieldElement]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for x in row {
        let q = x.as_rational().expect("rational entries");
        den = den.lcm(q.denom());
    }
    let out = row
        .iter()
        .map(|x| {
            let q = x.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    (out, den)
}

/// Fraction-free elimination on an integer matrix. Returns the rank and,
/// for square input of full rank, the determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = (&a[r][c] * &a[i][k] - &a[i][c] * &a[r][k]) / &prev;
                a[i][k] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if r == rows && rows == cols {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}
