//! Exact scalars: rationals and finite fields GF(p^s).
//!
//! Scalars do not carry their field; every operation goes through a [`Field`]
//! value. Mixing scalar kinds is a programming error and panics.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};
use crate::poly;

/// Largest finite field order accepted.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic defining polynomial over GF(p), low degree first.
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !poly::is_prime(p) {
            return Err(invalid!("field characteristic {p} is not prime"));
        }
        if degree == 0 {
            return Err(invalid!("field degree must be at least 1"));
        }
        let order = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or_else(|| invalid!("GF({p}^{degree}) exceeds the supported order {MAX_FIELD_ORDER}"))?;
        let modulus = if degree == 1 {
            alloc::vec![0, 1]
        } else {
            poly::first_irreducible(p, degree as usize)
                .ok_or_else(|| invalid!("no irreducible of degree {degree} over GF({p})"))?
        };
        Ok(Self {
            p,
            degree,
            order,
            modulus,
        })
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let factors = poly::prime_factors(q);
        if factors.len() != 1 {
            return Err(invalid!("{q} is not a prime power"));
        }
        let p = factors[0];
        let mut degree = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            degree += 1;
        }
        Self::new(p, degree)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut digits = Vec::with_capacity(self.degree as usize);
        for _ in 0..self.degree {
            digits.push(code % self.p);
            code /= self.p;
        }
        poly::trim(digits)
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u64, b: u64, negate_b: bool) -> u64 {
        if self.degree == 1 {
            return if negate_b {
                (a + self.p - b) % self.p
            } else {
                (a + b) % self.p
            };
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.degree {
            let (x, y) = (a % self.p, b % self.p);
            let digit = if negate_b {
                (x + self.p - y) % self.p
            } else {
                (x + y) % self.p
            };
            out += digit * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.degree == 1 {
            return a * b % self.p;
        }
        let prod = poly::mul_mod(&self.decode(a), &self.decode(b), &self.modulus, self.p);
        self.encode(&prod)
    }

    fn pow(&self, a: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// The base field `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Finite(FiniteField),
}

/// An element of some [`Field`]. Rationals are always reduced with positive
/// denominator, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    /// Base-`p` digit code of a polynomial in the generator.
    Finite(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Finite(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Finite(ff) if ff.degree == 1 => write!(f, "GF({})", ff.p),
            Field::Finite(ff) => write!(f, "GF({}^{})", ff.p, ff.degree),
        }
    }
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Field::Finite(FiniteField::new(p, 1)?))
    }

    pub fn galois(q: u64) -> Result<Self> {
        Ok(Field::Finite(FiniteField::with_order(q)?))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Finite(ff) => ff.p,
        }
    }

    /// `None` for Q.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Finite(ff) => Some(ff.order),
        }
    }

    pub fn finite(&self) -> Option<&FiniteField> {
        match self {
            Field::Finite(ff) => Some(ff),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Finite(_) => Scalar::Finite(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Finite(_) => Scalar::Finite(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Finite(ff) => Scalar::Finite(n.rem_euclid(ff.p as i64) as u64),
        }
    }

    /// `num / den`; in characteristic `p` the denominator must be a unit.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(invalid!("zero denominator"));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Finite(ff) => {
                let p = BigInt::from(ff.p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = x.mod_floor(&p);
                    u64::try_from(r).expect("residue fits")
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(invalid!("denominator {den} vanishes mod {}", ff.p));
                }
                Ok(Scalar::Finite(reduce(num) * poly::inv_mod(d, ff.p) % ff.p))
            }
        }
    }

    /// Finite field element from its base-`p` digit code.
    pub fn from_code(&self, code: u64) -> Result<Scalar> {
        match self {
            Field::Finite(ff) if code < ff.order => Ok(Scalar::Finite(code)),
            Field::Finite(ff) => Err(invalid!("code {code} out of range for GF({})", ff.order)),
            Field::Rational => Err(invalid!("element codes only exist in finite fields")),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Finite(ff), Scalar::Finite(c)) => *c < ff.order,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Finite(c) => *c == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Finite(c) => *c == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Finite(ff), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(ff.add(*x, *y, false)),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Field::Finite(ff), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(ff.add(*x, *y, true)),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Finite(ff), Scalar::Finite(x), Scalar::Finite(y)) => Scalar::Finite(ff.mul(*x, *y)),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (Field::Rational, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (Field::Finite(ff), Scalar::Finite(x)) => Scalar::Finite(ff.pow(*x, ff.order - 2)),
            _ => panic!("mixed scalar kinds"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, exp: u64) -> Scalar {
        match (self, a) {
            (Field::Finite(ff), Scalar::Finite(x)) => Scalar::Finite(ff.pow(*x, exp)),
            _ => {
                let mut acc = self.one();
                for _ in 0..exp {
                    acc = self.mul(&acc, a);
                }
                acc
            }
        }
    }

    /// All elements in code order. `None` for Q.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.finite().map(|ff| (0..ff.order).map(Scalar::Finite).collect())
    }

    /// Square test: exact for finite fields (Euler's criterion, or always true
    /// in characteristic 2) and for Q (perfect-square numerator and denominator).
    pub fn is_square(&self, a: &Scalar) -> bool {
        match (self, a) {
            (_, a) if self.is_zero(a) => true,
            (Field::Finite(ff), Scalar::Finite(x)) => ff.p == 2 || ff.pow(*x, (ff.order - 1) / 2) == 1,
            (Field::Rational, Scalar::Rational(r)) => {
                !r.is_negative() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Some square root if one exists in the field.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Field::Finite(ff), _) => (0..ff.order).map(Scalar::Finite).find(|x| &self.mul(x, x) == a),
            (Field::Rational, Scalar::Rational(r)) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Scalar::Rational(BigRational::new(n, d)))
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Absolute trace GF(2^s) → GF(2): `a + a^2 + ... + a^(2^(s-1))`.
    pub fn absolute_trace(&self, a: &Scalar) -> Option<Scalar> {
        let ff = self.finite()?;
        let mut t = a.clone();
        let mut acc = a.clone();
        for _ in 1..ff.degree {
            t = self.pow(&t, ff.p);
            acc = self.add(&acc, &t);
        }
        Some(acc)
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}
