//! Sparse noncommutative polynomials over an exact coefficient domain.
//!
//! Terms live in a `BTreeMap` keyed by [`Word`], so iteration follows the
//! degree-then-lex order shared with [`crate::words::monomial_basis`].
//! Coefficients are either exact rationals (the domain polynomials are
//! parsed and constructed in) or prime-field residues (the domain they are
//! evaluated in); [`specialize`] maps the former onto the latter.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField, Rational};
use crate::words::Word;

/// Default cap for [`standard_polynomial`]: `m! = 40320` terms at `m = 8`.
pub const DEFAULT_STANDARD_CAP: u32 = 8;

/// Coefficient domain for [`NcPoly`].
///
/// A domain value tags which arithmetic context coefficients belong to; the
/// rational domain has a trivial tag while prime-field coefficients carry
/// their modulus.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    type Domain: Copy + PartialEq + std::fmt::Debug;

    fn domain(&self) -> Self::Domain;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn mul_coeff(&self, other: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
    /// Signed canonical form: `("+"|"-", magnitude)`.
    fn signed_string(&self) -> (char, String);
}

impl Coeff for Rational {
    type Domain = ();

    fn domain(&self) {}

    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }

    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }

    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_coeff(&self) -> Self {
        -self
    }

    fn signed_string(&self) -> (char, String) {
        let sign = if self.is_negative() { '-' } else { '+' };
        let abs = self.abs();
        let s = if abs.denom() == &1.into() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (sign, s)
    }
}

impl Coeff for FieldElement {
    type Domain = PrimeField;

    fn domain(&self) -> PrimeField {
        self.field()
    }

    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }

    fn add_coeff(&self, other: &Self) -> Self {
        *self + *other
    }

    fn mul_coeff(&self, other: &Self) -> Self {
        *self * *other
    }

    fn neg_coeff(&self) -> Self {
        -*self
    }

    fn signed_string(&self) -> (char, String) {
        ('+', self.value().to_string())
    }
}

/// A noncommutative polynomial: a finite map from words to nonzero
/// coefficients over a fixed alphabet and coefficient domain.
#[derive(Debug, Clone, PartialEq)]
pub struct NcPoly<C: Coeff> {
    terms: BTreeMap<Word, C>,
    n: u8,
    domain: C::Domain,
}

impl<C: Coeff> NcPoly<C> {
    pub fn zero(n: u8, domain: C::Domain) -> Self {
        NcPoly { terms: BTreeMap::new(), n, domain }
    }

    /// Collects terms, merging duplicates and dropping zero coefficients.
    pub fn from_terms(
        n: u8,
        domain: C::Domain,
        terms: impl IntoIterator<Item = (Word, C)>,
    ) -> Result<Self> {
        let mut poly = NcPoly::zero(n, domain);
        for (word, coeff) in terms {
            poly.add_term(word, coeff)?;
        }
        Ok(poly)
    }

    pub fn add_term(&mut self, word: Word, coeff: C) -> Result<()> {
        if word.alphabet() != self.n {
            return Err(Error::AlphabetMismatch(word.alphabet(), self.n));
        }
        if coeff.domain() != self.domain {
            return Err(Error::pre(format!(
                "coefficient domain mismatch: {:?} vs {:?}",
                coeff.domain(),
                self.domain
            )));
        }
        if coeff.is_zero_coeff() {
            return Ok(());
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_coeff(&coeff);
                if sum.is_zero_coeff() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> u8 {
        self.n
    }

    pub fn domain(&self) -> C::Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the highest term; `None` for the zero polynomial, which is
    /// rejected wherever a nonzero input is required.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in degree-then-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Option<&C> {
        self.terms.get(word)
    }

    /// True when every term has the same degree and each variable appears
    /// exactly once per term.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|w| {
            let mut seen = [false; 256];
            w.degree() == self.n as usize
                && w.letters().iter().all(|&l| {
                    let fresh = !seen[l as usize];
                    seen[l as usize] = true;
                    fresh
                })
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch(self.n, other.n));
        }
        if self.domain != other.domain {
            return Err(Error::pre(format!(
                "coefficient domain mismatch: {:?} vs {:?}",
                self.domain, other.domain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (word, coeff) in &other.terms {
            out.add_term(word.clone(), coeff.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.neg_coeff()))
            .collect();
        NcPoly { terms, n: self.n, domain: self.domain }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &C) -> Result<Self> {
        if factor.domain() != self.domain {
            return Err(Error::pre("scale factor domain mismatch"));
        }
        let mut out = NcPoly::zero(self.n, self.domain);
        for (word, coeff) in &self.terms {
            out.add_term(word.clone(), coeff.mul_coeff(factor))?;
        }
        Ok(out)
    }

    /// Free-algebra product: bilinear extension of word concatenation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = NcPoly::zero(self.n, self.domain);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb)?, ca.mul_coeff(cb))?;
            }
        }
        Ok(out)
    }

    /// Canonical text form: signed terms in map order, e.g.
    /// `+3*x1.x2.x1 -1*x2`. The zero polynomial prints as `0`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        self.terms
            .iter()
            .map(|(word, coeff)| {
                let (sign, mag) = coeff.signed_string();
                format!("{sign}{mag}*{}", word.monomial_string())
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl<C: Coeff> std::fmt::Display for NcPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Polynomials as parsed and constructed: exact rational coefficients.
pub type RatPoly = NcPoly<Rational>;

/// Polynomials in evaluation form: prime-field coefficients.
pub type FieldPoly = NcPoly<FieldElement>;

impl RatPoly {
    pub fn single(n: u8, word: Word, coeff: Rational) -> Result<Self> {
        NcPoly::from_terms(n, (), [(word, coeff)])
    }

    /// The generator `x_i` as a polynomial.
    pub fn generator(n: u8, i: u8) -> Result<Self> {
        let word = Word::new(n, vec![i])?;
        Self::single(n, word, Rational::from_integer(1.into()))
    }

    /// Reinterprets the polynomial over a larger alphabet.
    pub fn widen(&self, n: u8) -> Result<Self> {
        let mut out = NcPoly::zero(self.n.max(n), ());
        for (word, coeff) in &self.terms {
            out.add_term(word.widen(n)?, coeff.clone())?;
        }
        Ok(out)
    }
}

/// Reduces rational coefficients modulo `p`, inverting denominators.
///
/// Fails if a denominator vanishes mod `p`. The result may be the zero
/// polynomial even for nonzero input when every coefficient reduces to 0.
pub fn specialize(poly: &RatPoly, field: PrimeField) -> Result<FieldPoly> {
    let p = field.modulus();
    let mut out = NcPoly::zero(poly.alphabet(), field);
    let p_big: num_bigint::BigInt = p.into();
    for (word, coeff) in poly.terms() {
        let num = coeff.numer() % &p_big;
        let den = coeff.denom() % &p_big;
        let num_el = field.element(i64::try_from(num).expect("residue fits i64"));
        let den_raw = u32::try_from(den).expect("residue fits u32");
        if den_raw % p == 0 {
            return Err(Error::BadDenominator(coeff.denom().to_string(), p));
        }
        let den_inv = field.element(field.inv_raw(den_raw % p)? as i64);
        out.add_term(word.clone(), num_el * den_inv)?;
    }
    Ok(out)
}

/// Binary bracket expressions over generators, e.g. `[[x1,x2],x1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketExpr {
    Gen(u8),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn max_generator(&self) -> u8 {
        match self {
            BracketExpr::Gen(i) => *i,
            BracketExpr::Bracket(a, b) => a.max_generator().max(b.max_generator()),
        }
    }
}

/// Expands a bracket tree via `[a, b] = ab - ba` into a rational polynomial
/// over `n` generators.
pub fn lie_expand(expr: &BracketExpr, n: u8) -> Result<RatPoly> {
    match expr {
        BracketExpr::Gen(i) => RatPoly::generator(n, *i),
        BracketExpr::Bracket(a, b) => {
            let pa = lie_expand(a, n)?;
            let pb = lie_expand(b, n)?;
            pa.mul(&pb)?.sub(&pb.mul(&pa)?)
        }
    }
}

/// The degree-`m` standard polynomial: the signed sum of `x_{pi(1)}...x_{pi(m)}`
/// over all permutations `pi` of `1..=m`. Uses [`DEFAULT_STANDARD_CAP`].
pub fn standard_polynomial(m: u32) -> Result<RatPoly> {
    standard_polynomial_capped(m, DEFAULT_STANDARD_CAP)
}

pub fn standard_polynomial_capped(m: u32, cap: u32) -> Result<RatPoly> {
    fn saturating_factorial(m: u32) -> u128 {
        (1..=m.min(40) as u128).fold(1u128, u128::saturating_mul)
    }
    if m < 1 {
        return Err(Error::pre("standard polynomial needs m >= 1"));
    }
    if m > cap || m > 255 {
        return Err(Error::TermBudget {
            required: saturating_factorial(m),
            cap: saturating_factorial(cap.min(255)),
        });
    }
    let n = m as u8;
    let mut poly = NcPoly::zero(n, ());
    let mut perm: Vec<u8> = (1..=n).collect();
    // Heap's algorithm, tracking the sign as permutations are emitted.
    let mut counters = vec![0usize; perm.len()];
    let mut sign = 1i64;
    let one = Rational::from_integer(1.into());
    poly.add_term(Word::new(n, perm.clone())?, one.clone())?;
    let mut i = 0;
    while i < perm.len() {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            sign = -sign;
            let coeff = if sign > 0 { one.clone() } else { -one.clone() };
            poly.add_term(Word::new(n, perm.clone())?, coeff)?;
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(poly)
}
