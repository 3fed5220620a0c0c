//! Exact scalars: arbitrary-precision rationals and residues modulo a prime `p >= 5`.
//!
//! Every other module is written against the [`Ring`] trait so that the same
//! formula can be evaluated on numbers ([`FieldElement`]) or on symbolic
//! polynomials ([`crate::poly::Poly`]).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Which field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl Field {
    /// The prime field `F_p`; rejects `p < 5` and composite `p`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InadmissibleModulus(p));
        }
        Ok(Field::Prime(p))
    }

    /// Characteristic (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(k))),
            Field::Prime(p) => FieldElement::Residue {
                value: k.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn bigint(&self, k: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(k.clone())),
            Field::Prime(p) => {
                let r = k.mod_floor(&BigInt::from(*p));
                FieldElement::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num/den` in this field; fails when `den` vanishes here.
    pub fn ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Reduces a rational into this field (`p` must not divide the denominator).
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        match self {
            Field::Rational => Ok(FieldElement::Rational(q.clone())),
            Field::Prime(_) => {
                let den = self.bigint(q.denom());
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.bigint(q.numer()) / den)
            }
        }
    }

    /// Parses `"3"`, `"-2/7"` into this field.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let q = if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?}")))?)
        };
        self.from_rational(&q)
    }

    /// Uniform residue over `F_p`, or a rational with numerator and denominator
    /// bounded by `height` in absolute value.
    pub fn sample<R: Rng + ?Sized>(&self, height: u64, rng: &mut R) -> FieldElement {
        let height = height.max(1);
        match self {
            Field::Prime(p) => FieldElement::Residue {
                value: rng.gen_range(0..*p),
                modulus: *p,
            },
            Field::Rational => {
                let h = height.min(i64::MAX as u64) as i64;
                let num = rng.gen_range(-h..=h);
                let den = rng.gen_range(1..=h);
                FieldElement::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Uniform integer in `[-height, height]` (reduced mod `p` for prime fields).
    pub fn sample_int<R: Rng + ?Sized>(&self, height: i64, rng: &mut R) -> FieldElement {
        match self {
            Field::Prime(_) => self.sample(1, rng),
            Field::Rational => self.int(rng.gen_range(-height..=height)),
        }
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, height: i64, rng: &mut R) -> FieldElement {
        loop {
            let x = self.sample_int(height, rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// All elements of a prime field in increasing order.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement>> {
        match *self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(move |value| FieldElement::Residue { value, modulus: p })),
        }
    }

    /// Descriptor string: `"Q"` or `"Fp:<prime>"`.
    pub fn descriptor(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::Parse(format!("field descriptor must be \"Q\" or \"Fp:<prime>\", got {s:?}")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in field descriptor {s:?}")))?;
        Field::prime(p)
    }
}

/// An exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        match self {
            FieldElement::Rational(q) => {
                FieldElement::Rational(num_traits::pow::Pow::pow(q, exp.to_u32().expect("exponent fits in u32")))
            }
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, exp, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// The rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue { .. } => None,
        }
    }

    /// Canonical representative `0 <= v < p` for residues.
    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    /// Denominator-free check: true when the value is an integer (always true in `F_p`).
    pub fn is_integral(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_integer(),
            FieldElement::Residue { .. } => true,
        }
    }

    /// Absolute value for rationals; identity on residues.
    pub fn abs(&self) -> FieldElement {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.abs()),
            other => other.clone(),
        }
    }

    /// Every `x` with `x^k = self`, in increasing order of representative.
    ///
    /// Over `F_p` the roots are found by scanning when `p` is small and by
    /// inverting the exponent when `gcd(k, p - 1) = 1`. Over the rationals only
    /// `±1` are tried, which is all the group samplers need.
    pub fn roots(&self, k: u64) -> Vec<FieldElement> {
        let field = self.field();
        match field {
            Field::Rational => [field.one(), -field.one()]
                .into_iter()
                .filter(|x| &x.pow(k) == self)
                .fold(Vec::new(), |mut acc, x| {
                    if !acc.contains(&x) {
                        acc.push(x);
                    }
                    acc
                }),
            Field::Prime(p) => {
                if p <= 1 << 16 {
                    return field.elements().unwrap().filter(|x| &x.pow(k) == self).collect();
                }
                let g = k.gcd(&(p - 1));
                if g == 1 {
                    let inv = mod_inverse(k % (p - 1), p - 1).expect("k invertible mod p-1");
                    return vec![self.pow(inv)];
                }
                [field.one(), -field.one()]
                    .into_iter()
                    .filter(|x| &x.pow(k) == self)
                    .collect()
            }
        }
    }

    fn check_same(&self, other: &FieldElement) {
        if self.field() != other.field() {
            panic!("mixing elements of {} and {}", self.field(), other.field());
        }
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(_) => write!(f, "{self}"),
            FieldElement::Residue { modulus, .. } => write!(f, "{self} (mod {modulus})"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                let s = a + b;
                FieldElement::Residue {
                    value: if s >= *modulus { s - modulus } else { s },
                    modulus: *modulus,
                }
            }
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                FieldElement::Residue {
                    value: if a >= b { a - b } else { a + modulus - b },
                    modulus: *modulus,
                }
            }
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                FieldElement::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => {
                self.check_same(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                <&FieldElement as $tr<&FieldElement>>::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                <&FieldElement as $tr<&FieldElement>>::$m(&self, rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                <&FieldElement as $tr<&FieldElement>>::$m(self, &rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

/// Commutative ring arithmetic shared by scalars and symbolic polynomials.
///
/// Elements know their coefficient field, so constants can be built from any
/// element without threading a context through every formula.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn from_scalar(c: FieldElement) -> Self;
    fn field(&self) -> Field;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &FieldElement) -> Self;

    fn scale_int(&self, k: i64) -> Self {
        self.scale(&self.field().int(k))
    }

    fn zero_in(field: Field) -> Self {
        Self::from_scalar(field.zero())
    }

    fn one_in(field: Field) -> Self {
        Self::from_scalar(field.one())
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    /// Division-free determinant by expansion along rows with memoised minors,
    /// `O(n 2^n)` ring operations. Valid over any commutative ring.
    fn determinant(m: &crate::matrix::Matrix<Self>) -> Self {
        crate::matrix::det_by_minors(m)
    }
}

impl Ring for FieldElement {
    fn from_scalar(c: FieldElement) -> Self {
        c
    }

    fn field(&self) -> Field {
        FieldElement::field(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }

    fn scale(&self, c: &FieldElement) -> Self {
        self * c
    }

    fn determinant(m: &crate::matrix::Matrix<Self>) -> Self {
        m.det()
    }
}
