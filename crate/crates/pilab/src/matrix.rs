//! Dense matrices over prime fields, evaluation of noncommutative
//! polynomials on matrix tuples, and deterministic enumeration of the
//! tuple space `M_s(F_q)^n`.
//!
//! Enumeration assigns every tuple an index below `q^(n*s^2)`; the last
//! matrix of the tuple varies fastest. Census code walks the space through
//! [`TupleOdometer`], which reports how much of the tuple changed on each
//! step so that [`PolyEvaluator`] can reuse cached word products whose
//! letters all refer to unchanged matrices.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::poly::FieldPoly;
use crate::words::{monomial_basis, Word};

/// A square matrix over a prime field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    s: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(field: PrimeField, s: usize) -> Self {
        assert!(s >= 1, "matrix side must be at least 1");
        Matrix { field, s, data: vec![0; s * s] }
    }

    pub fn identity(field: PrimeField, s: usize) -> Self {
        let mut m = Matrix::zero(field, s);
        for i in 0..s {
            m.data[i * s + i] = 1 % field.modulus();
        }
        m
    }

    /// The matrix unit with a single 1 in row `i`, column `j` (0-based).
    pub fn unit(field: PrimeField, s: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(field, s);
        m.data[i * s + j] = 1 % field.modulus();
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let s = rows.len();
        if s == 0 || rows.iter().any(|r| r.len() != s) {
            return Err(Error::pre("matrix rows must form a nonempty square"));
        }
        let mut data = Vec::with_capacity(s * s);
        for row in rows {
            for &v in row {
                data.push(field.element(v).value());
            }
        }
        Ok(Matrix { field, s, data })
    }

    pub(crate) fn from_data(field: PrimeField, s: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), s * s);
        Matrix { field, s, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn side(&self) -> usize {
        self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.field.element(self.data[i * self.s + j] as i64)
    }

    pub(crate) fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add_raw(a, b))
            .collect();
        Matrix { field: self.field, s: self.s, data }
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        assert_eq!(c.field(), self.field, "scalar from a different field");
        let data = self
            .data
            .iter()
            .map(|&a| self.field.mul_raw(a, c.value()))
            .collect();
        Matrix { field: self.field, s: self.s, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_shape(other);
        let mut out = Matrix::zero(self.field, self.s);
        mul_data(self.field, self.s, &self.data, &other.data, &mut out.data);
        out
    }

    pub fn pow(&self, mut exp: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.s);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Row-major entry string; single digits concatenated for `q <= 10`,
    /// dot-separated otherwise.
    pub fn digit_string(&self) -> String {
        digit_string(self.field, &self.data)
    }

    fn check_shape(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "mixed-field matrix arithmetic");
        assert_eq!(self.s, other.s, "mixed-size matrix arithmetic");
    }
}

pub(crate) fn digit_string(field: PrimeField, data: &[u32]) -> String {
    if field.modulus() <= 10 {
        data.iter().map(|d| d.to_string()).collect()
    } else {
        data.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// `out = a * b` on raw row-major residue data. Products are accumulated
/// before a single reduction per entry.
#[inline]
fn mul_data(field: PrimeField, s: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
    let p = field.modulus() as u128;
    for i in 0..s {
        for j in 0..s {
            let mut acc: u128 = 0;
            for k in 0..s {
                acc += a[i * s + k] as u128 * b[k * s + j] as u128;
            }
            out[i * s + j] = (acc % p) as u32;
        }
    }
}

/// An `n`-tuple of same-shape matrices: one evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    mats: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::pre("a matrix tuple needs at least one entry"))?;
        let (field, s) = (first.field, first.s);
        if mats.iter().any(|m| m.field != field || m.s != s) {
            return Err(Error::pre("matrix tuple entries must share field and shape"));
        }
        Ok(MatrixTuple { mats })
    }

    pub fn from_digits(field: PrimeField, s: usize, n: usize, digits: &[u32]) -> Self {
        debug_assert_eq!(digits.len(), n * s * s);
        let mats = (0..n)
            .map(|k| Matrix::from_data(field, s, digits[k * s * s..(k + 1) * s * s].to_vec()))
            .collect();
        MatrixTuple { mats }
    }

    pub fn field(&self) -> PrimeField {
        self.mats[0].field
    }

    pub fn side(&self) -> usize {
        self.mats[0].s
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    /// The product of the letters of `word` over this tuple; the empty word
    /// gives the identity.
    pub fn word_value(&self, word: &Word) -> Result<Matrix> {
        if word.alphabet() as usize != self.mats.len() {
            return Err(Error::AlphabetMismatch(word.alphabet(), self.mats.len() as u8));
        }
        let mut acc = Matrix::identity(self.field(), self.side());
        for &letter in word.letters() {
            acc = acc.mul(&self.mats[letter as usize - 1]);
        }
        Ok(acc)
    }
}

/// Evaluates `q_poly` at `tuple`. Constant terms contribute a multiple of
/// the identity.
pub fn evaluate(q_poly: &FieldPoly, tuple: &MatrixTuple) -> Result<Matrix> {
    if q_poly.domain() != tuple.field() {
        return Err(Error::FieldMismatch(
            q_poly.domain().modulus(),
            tuple.field().modulus(),
        ));
    }
    if q_poly.alphabet() as usize != tuple.len() {
        return Err(Error::AlphabetMismatch(q_poly.alphabet(), tuple.len() as u8));
    }
    let mut acc = Matrix::zero(tuple.field(), tuple.side());
    for (word, coeff) in q_poly.terms() {
        acc = acc.add(&tuple.word_value(word)?.scale(*coeff));
    }
    Ok(acc)
}

/// Values of every word of degree at most `d` on `tuple`, in word order.
///
/// Each value extends its parent prefix by one letter, so the whole table
/// costs one matrix product per word.
pub fn evaluate_all_words(tuple: &MatrixTuple, d: usize) -> Result<Vec<(Word, Matrix)>> {
    let n = tuple.len() as u8;
    let basis = monomial_basis(n, d)?;
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut out: Vec<(Word, Matrix)> = Vec::with_capacity(basis.len());
    for word in basis {
        let value = if word.is_empty() {
            Matrix::identity(tuple.field(), tuple.side())
        } else {
            let parent = Word::new(n, word.letters()[..word.degree() - 1].to_vec())?;
            let last = *word.letters().last().unwrap();
            let parent_value = &out[index[&parent]].1;
            parent_value.mul(tuple.get(last as usize - 1))
        };
        index.insert(word.clone(), out.len());
        out.push((word, value));
    }
    Ok(out)
}

/// The space of all `q^(n*s^2)` matrix tuples, with deterministic indexing
/// and balanced sharding.
#[derive(Debug, Clone, Copy)]
pub struct TupleSpace {
    field: PrimeField,
    s: usize,
    n: usize,
}

impl TupleSpace {
    pub fn new(field: PrimeField, s: usize, n: usize) -> Result<Self> {
        if s < 1 || n < 1 {
            return Err(Error::pre("tuple space needs s >= 1 and n >= 1"));
        }
        Ok(TupleSpace { field, s, n })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn side(&self) -> usize {
        self.s
    }

    pub fn tuple_len(&self) -> usize {
        self.n
    }

    fn digit_count(&self) -> usize {
        self.n * self.s * self.s
    }

    pub fn total(&self) -> BigUint {
        BigUint::from(self.field.modulus()).pow(self.digit_count() as u32)
    }

    /// Total size, checked against the point budget.
    pub fn total_within_budget(&self, budget: u64) -> Result<u64> {
        let total = self.total();
        if total > BigUint::from(budget) {
            return Err(Error::PointBudget { required: total.to_string(), budget });
        }
        Ok(u64::try_from(total).expect("bounded by budget"))
    }

    /// The index slice owned by one shard. Shard sizes differ by at most 1
    /// and the slices partition `0..total`.
    pub fn shard_range(total: u64, index: u64, shards: u64) -> Result<std::ops::Range<u64>> {
        if shards == 0 || index >= shards {
            return Err(Error::BadShard { index, total: shards });
        }
        let base = total / shards;
        let extra = total % shards;
        let start = index * base + index.min(extra);
        let len = base + u64::from(index < extra);
        Ok(start..start + len)
    }

    pub fn tuple_at(&self, mut idx: u64) -> MatrixTuple {
        let q = self.field.modulus() as u64;
        let mut digits = vec![0u32; self.digit_count()];
        for k in (0..digits.len()).rev() {
            digits[k] = (idx % q) as u32;
            idx /= q;
        }
        MatrixTuple::from_digits(self.field, self.s, self.n, &digits)
    }

    pub fn odometer(&self, range: std::ops::Range<u64>) -> TupleOdometer {
        let q = self.field.modulus() as u64;
        let mut digits = vec![0u32; self.digit_count()];
        let mut idx = range.start;
        for k in (0..digits.len()).rev() {
            digits[k] = (idx % q) as u32;
            idx /= q;
        }
        TupleOdometer {
            q: self.field.modulus(),
            s: self.s,
            digits,
            remaining: range.end - range.start,
            started: false,
        }
    }

    /// All tuples of one shard, materialized in index order.
    pub fn iter_shard(
        &self,
        shard_index: u64,
        shard_count: u64,
        budget: u64,
    ) -> Result<impl Iterator<Item = MatrixTuple> + '_> {
        let total = self.total_within_budget(budget)?;
        let range = Self::shard_range(total, shard_index, shard_count)?;
        let space = *self;
        Ok(range.map(move |idx| space.tuple_at(idx)))
    }
}

/// Walks a contiguous index range of a tuple space as a base-`q` odometer.
///
/// `advance` reports the index of the first matrix whose entries changed,
/// which bounds the cache invalidation needed by the caller.
pub struct TupleOdometer {
    q: u32,
    s: usize,
    digits: Vec<u32>,
    remaining: u64,
    started: bool,
}

impl TupleOdometer {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Moves to the next tuple. Returns the smallest changed matrix index,
    /// or `None` when the range is exhausted. The first call yields the
    /// initial tuple with every matrix marked changed (index 0).
    pub fn advance(&mut self) -> Option<usize> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        if !self.started {
            self.started = true;
            return Some(0);
        }
        let mut k = self.digits.len();
        loop {
            debug_assert!(k > 0, "odometer overflow past its range");
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < self.q {
                break;
            }
            self.digits[k] = 0;
        }
        Some(k / (self.s * self.s))
    }
}

/// Incremental evaluator for a fixed polynomial over a fixed tuple shape.
///
/// Keeps one cached matrix per distinct word prefix of the polynomial.
/// When only matrices at index `>= c` changed, nodes whose words use only
/// letters `< c + 1` keep their cached values.
pub struct PolyEvaluator {
    field: PrimeField,
    s: usize,
    n: usize,
    parents: Vec<usize>,
    last_letters: Vec<u8>,
    letter_masks: Vec<u32>,
    values: Vec<Vec<u32>>,
    terms: Vec<(usize, u32)>,
    scratch: Vec<u32>,
    result: Vec<u32>,
}

impl PolyEvaluator {
    pub fn new(q_poly: &FieldPoly, s: usize, n: usize) -> Result<Self> {
        if q_poly.alphabet() as usize != n {
            return Err(Error::AlphabetMismatch(q_poly.alphabet(), n as u8));
        }
        if n > 32 {
            return Err(Error::pre("cached evaluation supports at most 32 generators"));
        }
        let field = q_poly.domain();

        // All prefixes of all term words, in degree-then-lex order, so that
        // a node's parent always precedes it.
        let mut prefixes: std::collections::BTreeSet<Word> = std::collections::BTreeSet::new();
        for (word, _) in q_poly.terms() {
            for k in 0..=word.degree() {
                prefixes.insert(Word::new(n as u8, word.letters()[..k].to_vec())?);
            }
        }
        prefixes.insert(Word::empty(n as u8));

        let index: BTreeMap<Word, usize> = prefixes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let mut parents = Vec::with_capacity(prefixes.len());
        let mut last_letters = Vec::with_capacity(prefixes.len());
        let mut letter_masks = Vec::with_capacity(prefixes.len());
        for word in &prefixes {
            if word.is_empty() {
                parents.push(0);
                last_letters.push(0);
                letter_masks.push(0);
            } else {
                let parent = Word::new(n as u8, word.letters()[..word.degree() - 1].to_vec())?;
                parents.push(index[&parent]);
                last_letters.push(*word.letters().last().unwrap());
                let mask = word
                    .letters()
                    .iter()
                    .fold(0u32, |m, &l| m | (1 << (l as u32 - 1)));
                letter_masks.push(mask);
            }
        }
        let terms = q_poly
            .terms()
            .map(|(word, coeff)| (index[word], coeff.value()))
            .collect();
        let values = vec![vec![0u32; s * s]; prefixes.len()];
        Ok(PolyEvaluator {
            field,
            s,
            n,
            parents,
            last_letters,
            letter_masks,
            values,
            terms,
            scratch: vec![0; s * s],
            result: vec![0; s * s],
        })
    }

    /// Evaluates on the tuple encoded by `digits` (as produced by
    /// [`TupleOdometer`]), assuming matrices before `changed_from` are
    /// unchanged since the previous call. Pass 0 to recompute everything.
    pub fn eval(&mut self, digits: &[u32], changed_from: usize) -> &[u32] {
        debug_assert_eq!(digits.len(), self.n * self.s * self.s);
        let s = self.s;
        let stale_mask: u32 = if changed_from == 0 {
            u32::MAX
        } else {
            // Letters are 1-based and bit (l - 1) marks letter l, so bits
            // >= changed_from mark letters referring to changed matrices.
            u32::MAX << changed_from.min(31)
        };
        for node in 0..self.parents.len() {
            if node == 0 {
                if changed_from == 0 {
                    self.values[0].fill(0);
                    for i in 0..s {
                        self.values[0][i * s + i] = 1 % self.field.modulus();
                    }
                }
                continue;
            }
            if self.letter_masks[node] & stale_mask == 0 {
                continue;
            }
            let letter = self.last_letters[node] as usize - 1;
            let mat = &digits[letter * s * s..(letter + 1) * s * s];
            let (before, after) = self.values.split_at_mut(node);
            mul_data(self.field, s, &before[self.parents[node]], mat, &mut after[0]);
        }
        self.result.fill(0);
        for &(node, coeff) in &self.terms {
            for (r, &v) in self.result.iter_mut().zip(&self.values[node]) {
                *r = self.field.add_raw(*r, self.field.mul_raw(coeff, v));
            }
        }
        for (dst, src) in self.scratch.iter_mut().zip(&self.result) {
            *dst = *src;
        }
        &self.scratch
    }
}

/// Rank of a list of row vectors over `field`, by Gaussian elimination.
pub fn row_rank(field: PrimeField, rows: &mut Vec<Vec<u32>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field
            .inv_raw(rows[rank][col])
            .expect("pivot is nonzero");
        for v in rows[rank].iter_mut() {
            *v = field.mul_raw(*v, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..width {
                    let delta = field.mul_raw(factor, rows[rank][c]);
                    rows[r][c] = field.sub_raw(rows[r][c], delta);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
