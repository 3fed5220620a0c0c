//! Sparse multivariate polynomials with exact coefficients.
//!
//! Exponents are packed four bits per variable into a `u128`, so a polynomial
//! may use up to 32 variables and every variable degree is at most 15. The
//! forms in this crate have degree at most 8, which leaves ample headroom.

use std::collections::HashMap;
use std::fmt;

use crate::field::{Field, FieldElement, Ring};

/// Maximum number of variables a [`Poly`] can mention.
pub const MAX_VARS: usize = 32;

/// Packed exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS, "variable index {i} exceeds {MAX_VARS}");
        Monomial(1u128 << (4 * i))
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 16, "exponent {e} too large");
            m |= (e as u128) << (4 * i);
        }
        Monomial(m)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        ((self.0 >> (4 * i)) & 0xf) as u32
    }

    pub fn degree(&self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    fn mul(self, rhs: Monomial) -> Monomial {
        let m = Monomial(self.0 + rhs.0);
        debug_assert!((0..MAX_VARS).all(|i| m.exponent(i) >= self.exponent(i)), "exponent overflow");
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in 0..MAX_VARS {
            let e = self.exponent(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over one exact field, stored as sorted `(monomial, coefficient)` pairs
/// with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    terms: Vec<(Monomial, FieldElement)>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, terms: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field();
        if c.is_zero() {
            return Poly::zero(field);
        }
        Poly {
            field,
            terms: vec![(Monomial::ONE, c)],
        }
    }

    /// The variable `x_{i+1}`.
    pub fn var(field: Field, i: usize) -> Poly {
        Poly {
            field,
            terms: vec![(Monomial::var(i), field.one())],
        }
    }

    /// `x_1, ..., x_n` as polynomials.
    pub fn vars(field: Field, n: usize) -> Vec<Poly> {
        (0..n).map(|i| Poly::var(field, i)).collect()
    }

    /// `sum_i c_i x_{i+1}`.
    pub fn linear(coeffs: &[FieldElement]) -> Poly {
        let field = coeffs.first().map(|c| c.field()).unwrap_or(Field::Rational);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i), c.clone()))
            .collect();
        Poly::from_map(field, terms)
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Poly {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Poly::from_map(field, acc.into_iter().collect())
    }

    fn from_map(field: Field, mut terms: Vec<(Monomial, FieldElement)>) -> Poly {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by_key(|a| a.0);
        let p = Poly { field, terms };
        assert!(p.degree().unwrap_or(0) <= 15, "total degree exceeds 15");
        p
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: Monomial) -> FieldElement {
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        let mut total = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(MAX_VARS) {
                let e = m.exponent(i);
                if e > 0 {
                    t *= &x.pow(e as u64);
                }
            }
            total += &t;
        }
        total
    }

    /// True when every term has the given total degree.
    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == degree)
    }

    fn combine(&self, rhs: &Poly, negate: bool) -> Poly {
        assert_eq!(self.field, rhs.field, "mixing polynomials over different fields");
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let take_left = j >= rhs.terms.len() || (i < self.terms.len() && self.terms[i].0 < rhs.terms[j].0);
            let take_right = i >= self.terms.len() || (j < rhs.terms.len() && rhs.terms[j].0 < self.terms[i].0);
            if take_left {
                out.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                let (m, c) = &rhs.terms[j];
                out.push((*m, if negate { -c } else { c.clone() }));
                j += 1;
            } else {
                let (m, a) = &self.terms[i];
                let b = &rhs.terms[j].1;
                let c = if negate { a - b } else { a + b };
                if !c.is_zero() {
                    out.push((*m, c));
                }
                i += 1;
                j += 1;
            }
        }
        Poly {
            field: self.field,
            terms: out,
        }
    }

    fn product(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.field, rhs.field, "mixing polynomials over different fields");
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Poly::zero(self.field);
        }
        if let (Some(a), Some(b)) = (self.degree(), rhs.degree()) {
            assert!(a + b <= 15, "total degree exceeds 15");
        }
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        Poly {
            field: self.field,
            terms,
        }
    }
}

impl Ring for Poly {
    fn from_scalar(c: FieldElement) -> Self {
        Poly::constant(c)
    }

    fn field(&self) -> Field {
        self.field
    }

    fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.product(rhs)
    }

    fn neg(&self) -> Self {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m:?}")?;
            } else {
                write!(f, "{c}*{m:?}")?;
            }
        }
        Ok(())
    }
}
