//! Prime fields `F_p` with exact arithmetic and full-field enumeration,
//! plus the exact rational type used by the growth-series code.
//!
//! The modulus is capped at `2^31` so that every product of two canonical
//! residues fits in a `u64` intermediate.

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive bound is `2^31`).
pub const MAX_MODULUS: u32 = 1 << 31;

/// Exact rationals with arbitrary-precision integer parts.
///
/// Values are always stored reduced with a positive denominator; the
/// constructors of [`num_rational::BigRational`] maintain both invariants.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rational(numerator: i64, denominator: i64) -> Rational {
    Rational::new(numerator.into(), denominator.into())
}

/// A prime field `F_p`, acting as the arithmetic context for its elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

/// One canonical residue of a prime field, in `[0, p)`.
///
/// Elements carry their field so that mixed-field arithmetic is detectable;
/// the binary operators panic on a mismatch, while the polynomial layer
/// checks domains up front and reports `Error::FieldMismatch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `lower`.
pub fn next_prime(lower: u64) -> u64 {
    let mut candidate = lower + 1;
    if candidate <= 2 {
        return 2;
    }
    if candidate % 2 == 0 {
        candidate += 1;
    }
    while !is_prime(candidate) {
        candidate += 2;
    }
    candidate
}

impl PrimeField {
    /// Builds `F_p`, checking primality by trial division.
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p as u64));
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Embeds a signed integer, reducing into `[0, p)`.
    pub fn element(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        let value = v.rem_euclid(p) as u32;
        FieldElement { value, field: *self }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// All `p` elements in ascending canonical order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let field = *self;
        (0..self.p).map(move |value| FieldElement { value, field })
    }

    // Raw residue arithmetic used by the matrix and census hot paths.

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        if a == 0 { 0 } else { self.p - a }
    }

    pub(crate) fn pow_raw(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        // Fermat: a^(p-2) since p is prime.
        Ok(self.pow_raw(a, self.p as u64 - 2))
    }
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        let value = self.field.inv_raw(self.value)?;
        Ok(FieldElement { value, field: self.field })
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement {
            value: self.field.pow_raw(self.value, exp),
            field: self.field,
        }
    }

    fn check_same_field(&self, other: &FieldElement) -> PrimeField {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic: F_{} vs F_{}",
            self.field.p, other.field.p
        );
        self.field
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        let field = self.check_same_field(&rhs);
        FieldElement { value: field.add_raw(self.value, rhs.value), field }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        let field = self.check_same_field(&rhs);
        FieldElement { value: field.sub_raw(self.value, rhs.value), field }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        let field = self.check_same_field(&rhs);
        FieldElement { value: field.mul_raw(self.value, rhs.value), field }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field.neg_raw(self.value), field: self.field }
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}
