//! Exact scalars: rationals and prime fields.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Coefficient field of every ring in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    /// Residues modulo a prime `p`.
    Prime(u64),
}

impl Field {
    /// Builds `𝔽_p`, rejecting non-primes and moduli too large for exact
    /// 64-bit residue products.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// The characteristic exponent: 1 over ℚ, `p` over `𝔽_p`.
    pub fn char_exponent(&self) -> u64 {
        match self {
            Field::Rationals => 1,
            Field::Prime(p) => *p,
        }
    }

    /// `p̄^e`, the degree of additive polynomials of level `e`.
    pub fn frobenius_power(&self, e: u32) -> u64 {
        self.char_exponent().pow(e)
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in the field; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        let d = self.from_bigint(den);
        let d_inv = d.inv().ok_or(Error::DivisionByZero)?;
        Ok(&self.from_bigint(num) * &d_inv)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
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

/// An exact field element. Mixing elements of different fields is an
/// invariant violation and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Sign used when printing: true for negative rationals. Residues are
    /// always printed in `[0, p)`.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.abs()),
            s => s.clone(),
        }
    }

    /// Integer value when the scalar is an integer (rationals) or the
    /// canonical residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }

    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// `binomial(a, r)` reduced into `field`.
///
/// Over `𝔽_p` this is the product of digit binomials in base `p` (Lucas),
/// so no factorial ever leaves the range of the digits.
pub fn lucas_binomial(a: u64, r: u64, field: Field) -> Scalar {
    match field {
        Field::Rationals => field.from_bigint(&binomial_big(a, r)),
        Field::Prime(p) => {
            let (mut a, mut r) = (a, r);
            let mut acc = 1u64;
            while r > 0 || a > 0 {
                let (ad, rd) = (a % p, r % p);
                if rd > ad {
                    return field.zero();
                }
                acc = mul_mod(acc, small_binomial_mod(ad, rd, p), p);
                a /= p;
                r /= p;
            }
            field.from_int(acc as i64)
        }
    }
}

/// Exact integer binomial coefficient.
pub fn binomial_big(a: u64, r: u64) -> BigInt {
    if r > a {
        return BigInt::zero();
    }
    let r = r.min(a - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

// binomial(a, r) mod p for digits a, r < p.
fn small_binomial_mod(a: u64, r: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..r {
        num = mul_mod(num, a - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_canonical() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.from_int(-1), f.from_int(6));
        assert_eq!((&f.from_int(3) * &f.from_int(5)).to_i64(), Some(1));
        assert_eq!(f.from_int(3).inv().unwrap(), f.from_int(5));
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn char_exponent_convention() {
        assert_eq!(Field::Rationals.char_exponent(), 1);
        assert_eq!(Field::Rationals.characteristic(), 0);
        assert_eq!(Field::Prime(5).char_exponent(), 5);
        assert_eq!(Field::Prime(3).frobenius_power(2), 9);
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(lucas_binomial(6, 2, Field::Rationals), Field::Rationals.from_int(15));
        for p in [2u64, 3, 5, 7] {
            let f = Field::Prime(p);
            assert!(lucas_binomial(p, 1, f).is_zero());
            assert!(lucas_binomial(p, p, f).is_one());
        }
    }

    #[test]
    fn lucas_matches_factorial_oracle() {
        for p in [2u64, 3, 5, 7] {
            let f = Field::Prime(p);
            for a in 0..=200u64 {
                for r in 0..=a {
                    let oracle = f.from_bigint(&factorial_binomial(a, r));
                    assert_eq!(lucas_binomial(a, r, f), oracle, "a={a} r={r} p={p}");
                }
            }
        }
    }

    fn factorial_binomial(a: u64, r: u64) -> BigInt {
        let fact = |n: u64| (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
        fact(a) / (fact(r) * fact(a - r))
    }

    #[test]
    fn rational_display() {
        let q = Field::Rationals;
        let half = q.from_ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap();
        assert_eq!(alloc::format!("{half}"), "-1/2");
        assert!(q.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }
}
