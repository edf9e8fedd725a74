//! Exact scalars over ℚ and GF(p).
//!
//! Rationals keep an `i64` fast path and spill into `BigRational` only when a
//! value leaves that range, so equality is always structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest accepted prime modulus. Products of two residues must fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not an odd-or-two prime below 2^31")]
    NotPrime(u64),
    #[error("characteristic two is not supported here")]
    CharTwo,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("residue {0} is outside [0, {1})")]
    OutOfRange(String, u64),
}

/// The ground field K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Fails with `CharTwo` in characteristic 2.
    pub fn require_odd(&self) -> Result<(), ScalarError> {
        if self.characteristic() == 2 {
            Err(ScalarError::CharTwo)
        } else {
            Ok(())
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(Rational::from_i128(v as i128, 1)),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `num/den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.int(num).div(&self.int(den))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(Rational::from_big(BigRational::from_integer(v.clone()))),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp(r.to_u64().unwrap_or(0), p)
            }
        }
    }

    /// All elements in increasing residue order, for finite fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Fp(v, p)).collect()),
        }
    }

    /// Parses a scalar literal: `p/q` or an integer.
    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        match *self {
            Field::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(n).map_err(|_| bad())?;
                let d = BigInt::from_str(d).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(Scalar::Q(Rational::from_big(BigRational::new(n, d))))
            }
            Field::Prime(p) => {
                if s.contains('/') {
                    let (n, d) = s.split_once('/').unwrap();
                    let n = self.parse(n)?;
                    let d = self.parse(d)?;
                    return n.div(&d);
                }
                let v = BigInt::from_str(s).map_err(|_| bad())?;
                if v.is_negative() || v >= BigInt::from(p) {
                    return Err(ScalarError::OutOfRange(s.to_string(), p));
                }
                Ok(Scalar::Fp(v.to_u64().unwrap(), p))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    /// Accepts `Q`, `QQ`, `GF5`, `GF(5)`, `F5`.
    fn from_str(s: &str) -> Result<Field, ScalarError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(Field::Rationals);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GF")
            .or_else(|| upper.strip_prefix('F'))
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
        Field::prime(p)
    }
}

/// Reduced fraction; `Small` whenever both parts fit in `i64` (den > 0, num > i64::MIN).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rational {
    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if fits(n) && fits(d) {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Rational {
        if let (Some(n), Some(d)) = (r.numer().to_i128(), r.denom().to_i128()) {
            if fits(n) && fits(d) {
                return Rational::Small(n as i64, d as i64);
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    fn mul(&self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }

    fn inv(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }

    fn cmp_value(&self, o: &Rational) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

/// An element of ℚ or of GF(p); the field travels with the value.
#[derive(Clone)]
pub enum Scalar {
    Q(Rational),
    /// Residue in `[0, p)` and the modulus `p`.
    Fp(u64, u64),
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => a == b,
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => a == b && p == q,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Scalar::Q(r) => {
                0u8.hash(h);
                r.hash(h)
            }
            Scalar::Fp(v, p) => {
                1u8.hash(h);
                v.hash(h);
                p.hash(h)
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Square root modulo an odd prime (Tonelli–Shanks), `None` for non-residues.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r.min(p - r))
}

fn big_sqrt_exact(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if &(&r * &r) == v {
        Some(r)
    } else {
        None
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    fn same_field(&self, o: &Scalar) -> Result<(), ScalarError> {
        if self.field() == o.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), o.field()))
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => Scalar::Fp((a + b) % p, *p),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(o)?;
        Ok(match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, _)) => Scalar::Fp(a * b % p, *p),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a, p) => Scalar::Fp((p - a) % p, *p),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q).ok_or(ScalarError::DivisionByZero),
            Scalar::Fp(0, _) => Err(ScalarError::DivisionByZero),
            Scalar::Fp(a, p) => Ok(Scalar::Fp(pow_mod(*a, p - 2, *p), *p)),
        }
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut r = self.field().one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// Over ℚ: numerator and denominator are perfect squares. Over GF(p): Euler's criterion.
    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Some square root when one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => {
                let b = r.to_big();
                let n = big_sqrt_exact(b.numer())?;
                let d = big_sqrt_exact(b.denom())?;
                Some(Scalar::Q(Rational::from_big(BigRational::new(n, d))))
            }
            Scalar::Fp(v, p) => sqrt_mod(*v, *p).map(|r| Scalar::Fp(r, *p)),
        }
    }

    /// Residue for GF(p) values.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp(v, _) => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// Numerator and denominator for rational values.
    pub fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        match self {
            Scalar::Q(r) => {
                let b = r.to_big();
                Some((b.numer().clone(), b.denom().clone()))
            }
            Scalar::Fp(..) => None,
        }
    }

    /// The integer value when the scalar is an integer in `i64` range.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rational::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::Fp(v, _) => i64::try_from(*v).ok(),
        }
    }

    /// Value order for ℚ, residue order for GF(p).
    pub fn total_cmp(&self, o: &Scalar) -> Ordering {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp_value(b),
            (Scalar::Fp(a, _), Scalar::Fp(b, _)) => a.cmp(b),
            (Scalar::Q(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Over ℚ only ±1 qualify; over GF(p) every nonzero element does.
    pub fn is_root_of_unity(&self) -> bool {
        match self {
            Scalar::Q(_) => self.is_one() || *self == self.field().int(-1),
            Scalar::Fp(v, _) => *v != 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v, p) => write!(f, "{v} mod {p}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on mixed fields; use the `checked_*` form at API boundaries.
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect("scalar field mismatch")
            }
        }
        impl std::ops::$tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$checked(&o).expect("scalar field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}
