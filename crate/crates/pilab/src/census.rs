//! Point counts of vanishing loci and related subvarieties over `F_q`,
//! with dimension and codimension estimation.
//!
//! Exact censuses sweep the whole tuple space and return the full fiber
//! histogram of the evaluation map. The sweep is sharded: shards are
//! disjoint index ranges, every shard result is a histogram, and merging
//! is commutative addition, so counts are identical for any worker count.
//! Beyond the point budget a seeded sampled mode estimates the zero-fiber
//! proportion instead.
//!
//! Dimension estimation reads the point count at the largest tested prime:
//! counts of a locus of dimension `D` behave like `c * q^D`, so
//! `log_q(count)` tracks `D` with the constant entering as `O(1/log q)`.
//! Per-prime diagnostics are kept so drift is visible.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{
    digit_string, evaluate, Matrix, MatrixTuple, PolyEvaluator, row_rank, TupleSpace,
};
use crate::poly::{specialize, FieldPoly, RatPoly};
use crate::words::basis_size;

/// Default cap on exact census size: `2^26` evaluation points.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Default sampled-mode size: `ceil(ln(2/0.05) / (2 * 0.01^2))` samples
/// give a two-sided 95% band of half-width 0.01 on a proportion.
pub const DEFAULT_SAMPLE_SIZE: u64 = 18_445;

/// Slack applied to integer dimension statements checked against
/// estimates from small primes.
pub const CODIM_TOLERANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Exact,
    Sampled { sample_size: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub budget: u64,
    pub workers: usize,
    pub mode: CensusMode,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: DEFAULT_BUDGET, workers: 1, mode: CensusMode::Exact }
    }
}

/// How a census was obtained, with the sampling evidence when estimated.
#[derive(Debug, Clone, PartialEq)]
pub enum CensusEvidence {
    Exact,
    Sampled { sample_size: u64, hits: u64, halfwidth: f64 },
}

/// Result of one vanishing-locus census at a single prime.
#[derive(Debug, Clone)]
pub struct CensusRecord {
    pub poly_id: String,
    pub s: usize,
    pub q: u32,
    pub n: usize,
    pub total: BigUint,
    /// Exact zero-fiber size, or its sampled estimate.
    pub zero_count: BigUint,
    /// Largest fiber of the evaluation map (exact mode only).
    pub max_fiber: Option<u64>,
    /// Full fiber histogram keyed by the value matrix (exact mode only).
    pub fibers: Option<BTreeMap<String, u64>>,
    pub evidence: CensusEvidence,
}

impl CensusRecord {
    pub fn ambient_dim(&self) -> u32 {
        (self.n * self.s * self.s) as u32
    }

    /// `log_q(zero_count)`; `None` when the locus is empty.
    pub fn dim_log(&self) -> Option<f64> {
        let count = self.zero_count.to_f64()?;
        if count <= 0.0 {
            return None;
        }
        Some(count.ln() / (self.q as f64).ln())
    }

    pub fn codim_log(&self) -> Option<f64> {
        self.dim_log().map(|d| self.ambient_dim() as f64 - d)
    }

    pub fn hausdorff_ratio(&self) -> Option<f64> {
        self.dim_log().map(|d| d / self.ambient_dim() as f64)
    }
}

fn nonzero_specialization(poly: &RatPoly, field: PrimeField) -> Result<FieldPoly> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q_poly = specialize(poly, field)?;
    if q_poly.is_zero() {
        return Err(Error::Precondition(format!(
            "polynomial reduces to zero over F_{}",
            field.modulus()
        )));
    }
    Ok(q_poly)
}

fn census_shard(
    space: &TupleSpace,
    q_poly: &FieldPoly,
    range: std::ops::Range<u64>,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    let mut eval = PolyEvaluator::new(q_poly, space.side(), space.tuple_len())?;
    let mut odometer = space.odometer(range);
    let mut histogram: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    while let Some(changed) = odometer.advance() {
        let value = eval.eval(odometer.digits(), changed);
        match histogram.get_mut(value) {
            Some(slot) => *slot += 1,
            None => {
                histogram.insert(value.to_vec(), 1);
            }
        }
    }
    Ok(histogram)
}

/// Counts the tuples where the polynomial evaluates to zero.
///
/// Exact mode produces the full fiber histogram; sampled mode draws
/// `sample_size` uniform tuples from a stream cipher seeded by `seed` and
/// reports the unbiased estimate with a 95% half-width.
pub fn census_vanishing(
    poly: &RatPoly,
    s: usize,
    field: PrimeField,
    opts: &CensusOptions,
) -> Result<CensusRecord> {
    let q_poly = nonzero_specialization(poly, field)?;
    let n = q_poly.alphabet() as usize;
    let space = TupleSpace::new(field, s, n)?;
    let total = space.total();
    let poly_id = poly.canonical_string();

    match opts.mode {
        CensusMode::Exact => {
            let total_u64 = space.total_within_budget(opts.budget)?;
            let shards = (opts.workers.max(1) as u64).min(total_u64.max(1));
            let histogram = if shards <= 1 {
                census_shard(&space, &q_poly, 0..total_u64)?
            } else {
                std::thread::scope(|scope| -> Result<BTreeMap<Vec<u32>, u64>> {
                    let mut handles = Vec::new();
                    for i in 0..shards {
                        let range = TupleSpace::shard_range(total_u64, i, shards)?;
                        let space_ref = &space;
                        let poly_ref = &q_poly;
                        handles.push(
                            scope.spawn(move || census_shard(space_ref, poly_ref, range)),
                        );
                    }
                    let mut merged = BTreeMap::new();
                    for handle in handles {
                        let part = handle.join().expect("census worker panicked")?;
                        for (key, count) in part {
                            *merged.entry(key).or_insert(0) += count;
                        }
                    }
                    Ok(merged)
                })?
            };
            let zero_key = vec![0u32; s * s];
            let zero_count = histogram.get(&zero_key).copied().unwrap_or(0);
            let max_fiber = histogram.values().copied().max().unwrap_or(0);
            let fibers = histogram
                .into_iter()
                .map(|(key, count)| (digit_string(field, &key), count))
                .collect();
            Ok(CensusRecord {
                poly_id,
                s,
                q: field.modulus(),
                n,
                total,
                zero_count: zero_count.into(),
                max_fiber: Some(max_fiber),
                fibers: Some(fibers),
                evidence: CensusEvidence::Exact,
            })
        }
        CensusMode::Sampled { sample_size, seed } => {
            if sample_size == 0 {
                return Err(Error::pre("sample size must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut eval = PolyEvaluator::new(&q_poly, s, n)?;
            let q = field.modulus();
            let mut digits = vec![0u32; n * s * s];
            let mut hits = 0u64;
            for _ in 0..sample_size {
                for digit in digits.iter_mut() {
                    *digit = rng.random_range(0..q);
                }
                if eval.eval(&digits, 0).iter().all(|&v| v == 0) {
                    hits += 1;
                }
            }
            // Hoeffding band: P(|p_hat - p| > w) <= 2 exp(-2 m w^2) = 5%.
            let halfwidth = ((2.0f64 / 0.05).ln() / (2.0 * sample_size as f64)).sqrt();
            let zero_count =
                (BigUint::from(hits) * &total + sample_size / 2) / sample_size;
            Ok(CensusRecord {
                poly_id,
                s,
                q: field.modulus(),
                n,
                total,
                zero_count,
                max_fiber: None,
                fibers: None,
                evidence: CensusEvidence::Sampled { sample_size, hits, halfwidth },
            })
        }
    }
}

/// Exact count of `s x s` matrices with `A^s = 0`.
pub fn census_nilpotent(field: PrimeField, s: usize, budget: u64) -> Result<u64> {
    let space = TupleSpace::new(field, s, 1)?;
    let total = space.total_within_budget(budget)?;
    let mut odometer = space.odometer(0..total);
    let mut count = 0u64;
    while odometer.advance().is_some() {
        let m = Matrix::from_data(field, s, odometer.digits().to_vec());
        if m.pow(s as u32).is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

// Dense univariate arithmetic over F_p for characteristic polynomials.

fn poly_add(field: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = field.add_raw(x, y);
    }
    out
}

fn poly_mul(field: PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add_raw(out[i + j], field.mul_raw(x, y));
        }
    }
    out
}

fn poly_neg(field: PrimeField, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| field.neg_raw(x)).collect()
}

/// Determinant of a square matrix of univariate polynomials by Laplace
/// expansion along the first row; fine for the small sizes in scope.
fn det_poly(field: PrimeField, m: &[Vec<Vec<u32>>]) -> Vec<u32> {
    let s = m.len();
    if s == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![0u32];
    for col in 0..s {
        if m[0][col].iter().all(|&c| c == 0) {
            continue;
        }
        let minor: Vec<Vec<Vec<u32>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(field, &m[0][col], &det_poly(field, &minor));
        let signed = if col % 2 == 0 { term } else { poly_neg(field, &term) };
        acc = poly_add(field, &acc, &signed);
    }
    acc
}

/// Characteristic polynomial `det(xI - A)`, low-to-high coefficients of
/// length `s + 1`, monic.
pub fn charpoly(matrix: &Matrix) -> Vec<u32> {
    let field = matrix.field();
    let s = matrix.side();
    let entries: Vec<Vec<Vec<u32>>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let a = matrix.entry(i, j).value();
                    if i == j {
                        vec![field.neg_raw(a), 1 % field.modulus()]
                    } else {
                        vec![field.neg_raw(a)]
                    }
                })
                .collect()
        })
        .collect();
    let mut out = det_poly(field, &entries);
    out.resize(s + 1, 0);
    out
}

/// Exact count of matrices whose characteristic polynomial equals the
/// given monic polynomial. Coefficients are low-to-high; the polynomial
/// must stay monic after reduction mod `q` and have degree at least 1.
pub fn census_charpoly(field: PrimeField, coeffs: &[i64], budget: u64) -> Result<u64> {
    if coeffs.len() < 2 {
        return Err(Error::pre("characteristic polynomial must have degree >= 1"));
    }
    let reduced: Vec<u32> = coeffs
        .iter()
        .map(|&c| field.element(c).value())
        .collect();
    if *reduced.last().unwrap() != 1 % field.modulus() {
        return Err(Error::pre("characteristic polynomial must be monic"));
    }
    let s = reduced.len() - 1;
    let space = TupleSpace::new(field, s, 1)?;
    let total = space.total_within_budget(budget)?;
    let mut odometer = space.odometer(0..total);
    let mut count = 0u64;
    while odometer.advance().is_some() {
        let m = Matrix::from_data(field, s, odometer.digits().to_vec());
        if charpoly(&m) == reduced {
            count += 1;
        }
    }
    Ok(count)
}

/// Exact count of `rows x cols` matrices (with `rows < cols`) of rank
/// strictly below `rows`.
pub fn census_rank_deficient(
    field: PrimeField,
    rows: usize,
    cols: usize,
    budget: u64,
) -> Result<u64> {
    if rows == 0 || rows >= cols {
        return Err(Error::pre("rank-deficiency census needs 0 < rows < cols"));
    }
    let q = field.modulus() as u64;
    let cells = rows * cols;
    let mut total: u128 = 1;
    for _ in 0..cells {
        total = total.saturating_mul(q as u128);
    }
    if total > budget as u128 {
        return Err(Error::PointBudget { required: total.to_string(), budget });
    }
    let mut digits = vec![0u32; cells];
    let mut count = 0u64;
    let mut remaining = total;
    loop {
        let mut mat: Vec<Vec<u32>> = (0..rows)
            .map(|r| digits[r * cols..(r + 1) * cols].to_vec())
            .collect();
        if row_rank(field, &mut mat) < rows {
            count += 1;
        }
        remaining -= 1;
        if remaining == 0 {
            return Ok(count);
        }
        let mut k = cells;
        loop {
            k -= 1;
            digits[k] += 1;
            if digits[k] < q as u32 {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Linear independence of all word values of degree at most `d` on a
/// tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    /// Set when more words than the ambient dimension force dependence.
    pub dimension_forced: bool,
    pub word_count: u64,
    pub ambient_dim: u64,
}

/// Checks whether the word values `{ tuple^w : deg w <= d }` are linearly
/// independent inside the matrix algebra.
pub fn independence_check(tuple: &MatrixTuple, d: usize) -> Result<IndependenceReport> {
    let n = tuple.len() as u8;
    let s = tuple.side();
    let word_count = basis_size(n, d);
    let ambient = (s * s) as u64;
    if word_count > ambient as u128 {
        return Ok(IndependenceReport {
            independent: false,
            dimension_forced: true,
            word_count: word_count.min(u64::MAX as u128) as u64,
            ambient_dim: ambient,
        });
    }
    let values = crate::matrix::evaluate_all_words(tuple, d)?;
    let mut rows: Vec<Vec<u32>> = values
        .iter()
        .map(|(_, m)| m.data().to_vec())
        .collect();
    let rank = row_rank(tuple.field(), &mut rows);
    Ok(IndependenceReport {
        independent: rank as u128 == word_count,
        dimension_forced: false,
        word_count: word_count as u64,
        ambient_dim: ambient,
    })
}

/// Dimension estimate from exact counts at several primes.
#[derive(Debug, Clone)]
pub struct DimensionEstimate {
    pub ambient_dim: u32,
    pub dim_hat: f64,
    pub codim_hat: f64,
    pub hausdorff: f64,
    /// `(q, log_q count)` diagnostics; `None` marks an empty locus.
    pub per_q: Vec<(u32, Option<f64>)>,
}

/// Estimates dimension as `log_q(count)` at the largest tested prime.
pub fn estimate_dimension_from_counts(
    points: &[(u32, BigUint)],
    ambient_dim: u32,
) -> Result<DimensionEstimate> {
    let mut sorted: Vec<&(u32, BigUint)> = points.iter().collect();
    sorted.sort_by_key(|(q, _)| *q);
    sorted.dedup_by_key(|(q, _)| *q);
    if sorted.len() < 2 {
        return Err(Error::pre("dimension estimation needs at least 2 distinct primes"));
    }
    let per_q: Vec<(u32, Option<f64>)> = sorted
        .iter()
        .map(|(q, count)| {
            let log = count.to_f64().filter(|&c| c > 0.0).map(|c| c.ln() / (*q as f64).ln());
            (*q, log)
        })
        .collect();
    let (q_max, last_log) = *per_q.last().expect("nonempty");
    let dim_hat = last_log.ok_or(Error::EmptyLocus(q_max))?;
    Ok(DimensionEstimate {
        ambient_dim,
        dim_hat,
        codim_hat: ambient_dim as f64 - dim_hat,
        hausdorff: dim_hat / ambient_dim as f64,
        per_q,
    })
}

/// Estimates dimension from census records of the same locus at different
/// primes. All records must be exact and describe the same polynomial and
/// shape.
pub fn estimate_dimension(records: &[CensusRecord]) -> Result<DimensionEstimate> {
    let first = records
        .first()
        .ok_or_else(|| Error::pre("dimension estimation needs records"))?;
    for record in records {
        if record.evidence != CensusEvidence::Exact {
            return Err(Error::pre("dimension estimation needs exact-mode records"));
        }
        if (record.poly_id.as_str(), record.s, record.n)
            != (first.poly_id.as_str(), first.s, first.n)
        {
            return Err(Error::pre("records describe different censuses"));
        }
    }
    let points: Vec<(u32, BigUint)> = records
        .iter()
        .map(|r| (r.q, r.zero_count.clone()))
        .collect();
    estimate_dimension_from_counts(&points, first.ambient_dim())
}

/// The explicit codimension lower bound derived from the degree and the
/// number of low-degree words.
#[derive(Debug, Clone, Copy)]
pub struct MatrixBound {
    pub n: u8,
    pub d: usize,
    /// Number of words of degree at most `d`.
    pub word_count: u64,
    /// `floor(s / (2 * word_count))`.
    pub t: u64,
    /// `(n - 1/(4N)) s^2 + s` with `N` the word count.
    pub upper_dim: f64,
    /// `max(0, ceil(s^2/(4N) - s))`.
    pub lower_codim: u64,
}

impl MatrixBound {
    pub fn new(n: u8, d: usize, s: usize) -> Result<Self> {
        let word_count = basis_size(n, d);
        let word_count = u64::try_from(word_count)
            .map_err(|_| Error::TermBudget { required: word_count, cap: u64::MAX as u128 })?;
        let s = s as i128;
        let n_words = word_count as i128;
        // ceil((s^2 - 4*N*s) / (4*N)) without leaving integers.
        let numerator = s * s - 4 * n_words * s;
        let denominator = 4 * n_words;
        let ceil = numerator.div_euclid(denominator)
            + i128::from(numerator.rem_euclid(denominator) != 0);
        Ok(MatrixBound {
            n,
            d,
            word_count,
            t: (s as u64) / (2 * word_count),
            upper_dim: (n as f64 - 1.0 / (4.0 * word_count as f64)) * (s * s) as f64
                + s as f64,
            lower_codim: ceil.max(0) as u64,
        })
    }
}

#[derive(Debug, Clone)]
pub struct MatrixBoundReport {
    pub bound: MatrixBound,
    pub measured_codim: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks a measured codimension against the explicit lower bound, with
/// the usual small-prime tolerance.
pub fn check_matrix_bound(
    poly: &RatPoly,
    s: usize,
    estimate: &DimensionEstimate,
) -> Result<MatrixBoundReport> {
    let degree = poly.degree().ok_or(Error::ZeroPolynomial)?;
    let bound = MatrixBound::new(poly.alphabet(), degree, s)?;
    let passed = estimate.codim_hat >= bound.lower_codim as f64 - CODIM_TOLERANCE;
    Ok(MatrixBoundReport { bound, measured_codim: estimate.codim_hat, tolerance: CODIM_TOLERANCE, passed })
}

/// Identity check over one prime: exhaustive on basis tuples for
/// multilinear polynomials, exhaustive on the whole space otherwise.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub identity: bool,
    pub multilinear: bool,
    pub points_checked: u64,
    pub witness: Option<MatrixTuple>,
}

/// Decides whether the polynomial vanishes identically on `M_s(F_q)`.
///
/// A multilinear polynomial vanishes everywhere iff it vanishes on all
/// tuples of matrix units, which cuts the sweep to `(s^2)^n` points.
pub fn identity_check(
    poly: &RatPoly,
    s: usize,
    field: PrimeField,
    budget: u64,
) -> Result<IdentityCheck> {
    let q_poly = nonzero_specialization(poly, field)?;
    let n = q_poly.alphabet() as usize;
    if q_poly.is_multilinear() {
        let combos = ((s * s) as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if combos > budget as u128 {
            return Err(Error::PointBudget { required: combos.to_string(), budget });
        }
        let units: Vec<Matrix> = (0..s * s)
            .map(|k| Matrix::unit(field, s, k / s, k % s))
            .collect();
        let mut picks = vec![0usize; n];
        let mut checked = 0u64;
        loop {
            let tuple =
                MatrixTuple::new(picks.iter().map(|&k| units[k].clone()).collect())?;
            checked += 1;
            if !evaluate(&q_poly, &tuple)?.is_zero() {
                return Ok(IdentityCheck {
                    identity: false,
                    multilinear: true,
                    points_checked: checked,
                    witness: Some(tuple),
                });
            }
            let mut k = n;
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                picks[k] += 1;
                if picks[k] < s * s {
                    break false;
                }
                picks[k] = 0;
            };
            if done {
                return Ok(IdentityCheck {
                    identity: true,
                    multilinear: true,
                    points_checked: checked,
                    witness: None,
                });
            }
        }
    }

    let space = TupleSpace::new(field, s, n)?;
    let total = space.total_within_budget(budget)?;
    let mut eval = PolyEvaluator::new(&q_poly, s, n)?;
    let mut odometer = space.odometer(0..total);
    let mut checked = 0u64;
    while let Some(changed) = odometer.advance() {
        let digits = odometer.digits().to_vec();
        checked += 1;
        if eval.eval(&digits, changed).iter().any(|&v| v != 0) {
            let tuple = MatrixTuple::from_digits(field, s, n, &digits);
            return Ok(IdentityCheck {
                identity: false,
                multilinear: false,
                points_checked: checked,
                witness: Some(tuple),
            });
        }
    }
    Ok(IdentityCheck { identity: true, multilinear: false, points_checked: checked, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly_spec;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn exact(workers: usize) -> CensusOptions {
        CensusOptions { workers, ..CensusOptions::default() }
    }

    fn census(text: &str, s: usize, q: u32, workers: usize) -> CensusRecord {
        let poly = parse_poly_spec(text, None).unwrap();
        census_vanishing(&poly, s, f(q), &exact(workers)).unwrap()
    }

    #[test]
    fn commutator_on_scalars_always_vanishes() {
        let record = census("[x1,x2]", 1, 2, 1);
        assert_eq!(record.total, BigUint::from(4u32));
        assert_eq!(record.zero_count, BigUint::from(4u32));
        assert_eq!(record.hausdorff_ratio(), Some(1.0));
    }

    #[test]
    fn square_zero_matrices_match_nilpotent_count() {
        let record = census("x1.x1", 2, 2, 1);
        assert_eq!(record.zero_count, BigUint::from(4u32));
        assert_eq!(census_nilpotent(f(2), 2, 1 << 20).unwrap(), 4);
    }

    #[test]
    fn commuting_pairs_match_pair_enumeration_oracle() {
        // Direct double loop over all 256 pairs of 2x2 matrices over F_2.
        let field = f(2);
        let singles = TupleSpace::new(field, 2, 1).unwrap();
        let mats: Vec<Matrix> = singles
            .iter_shard(0, 1, 1 << 20)
            .unwrap()
            .map(|t| t.get(0).clone())
            .collect();
        let mut commuting = 0u64;
        for a in &mats {
            for b in &mats {
                if a.mul(b) == b.mul(a) {
                    commuting += 1;
                }
            }
        }
        let record = census("[x1,x2]", 2, 2, 1);
        assert_eq!(record.zero_count, BigUint::from(commuting));
        // The zero fiber is one of the histogram entries.
        let fibers = record.fibers.as_ref().unwrap();
        assert_eq!(fibers["0000"], commuting);
    }

    #[test]
    fn fiber_histogram_sums_to_total() {
        for (text, s, q) in [("[x1,x2]", 2usize, 2u32), ("x1.x1", 2, 3), ("s2", 2, 2)] {
            let record = census(text, s, q, 1);
            let sum: u64 = record.fibers.as_ref().unwrap().values().sum();
            assert_eq!(BigUint::from(sum), record.total, "{text}");
            let max = record.fibers.as_ref().unwrap().values().copied().max().unwrap();
            assert_eq!(record.max_fiber, Some(max));
        }
    }

    #[test]
    fn sharded_census_is_deterministic() {
        for workers in [2usize, 3, 4] {
            let base = census("[x1,x2]", 2, 3, 1);
            let sharded = census("[x1,x2]", 2, 3, workers);
            assert_eq!(base.zero_count, sharded.zero_count);
            assert_eq!(base.fibers, sharded.fibers);
            assert_eq!(base.max_fiber, sharded.max_fiber);
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        let zero = RatPoly::zero(2, ());
        assert!(matches!(
            census_vanishing(&zero, 1, f(2), &exact(1)),
            Err(Error::ZeroPolynomial)
        ));
        // Nonzero but vanishing mod 2.
        let poly = parse_poly_spec("2*x1", None).unwrap();
        assert!(census_vanishing(&poly, 1, f(2), &exact(1)).is_err());
    }

    use crate::poly::RatPoly;

    #[test]
    fn budget_rejects_oversized_jobs() {
        let poly = parse_poly_spec("[x1,x2]", None).unwrap();
        let opts = CensusOptions { budget: 100, ..CensusOptions::default() };
        assert!(matches!(
            census_vanishing(&poly, 2, f(2), &opts),
            Err(Error::PointBudget { .. })
        ));
    }

    #[test]
    fn nilpotent_counts_are_q_to_s_squared_minus_s() {
        for s in 1usize..=3 {
            for q in [2u32, 3] {
                let count = census_nilpotent(f(q), s, 1 << 26).unwrap();
                let expected = (q as u64).pow((s * s - s) as u32);
                assert_eq!(count, expected, "s={s} q={q}");
            }
        }
        assert_eq!(census_nilpotent(f(5), 1, 1 << 10).unwrap(), 1);
    }

    #[test]
    fn charpoly_of_known_matrices() {
        let field = f(5);
        let m = Matrix::from_rows(field, &[vec![1, 2], vec![3, 4]]).unwrap();
        // x^2 - 5x - 2 = x^2 + 3 over F_5.
        assert_eq!(charpoly(&m), vec![3, 0, 1]);
        let id = Matrix::identity(field, 3);
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1 = x^3 + 2x^2 + 3x + 4 mod 5.
        assert_eq!(charpoly(&id), vec![4, 3, 2, 1]);
    }

    #[test]
    fn charpoly_census_partitions_the_matrix_space() {
        // Nilpotent: x^2 over F_2 matches the square-zero count.
        assert_eq!(census_charpoly(f(2), &[0, 0, 1], 1 << 20).unwrap(), 4);
        // Trace 1, det 0: x^2 + x.
        let trace1_det0 = census_charpoly(f(2), &[0, 1, 1], 1 << 20).unwrap();
        // All four monic quadratics partition the 16 matrices.
        let mut sum = 0;
        for c0 in 0..2i64 {
            for c1 in 0..2i64 {
                sum += census_charpoly(f(2), &[c0, c1, 1], 1 << 20).unwrap();
            }
        }
        assert_eq!(sum, 16);
        assert!(trace1_det0 > 0);
        // Monicity and degree are enforced.
        assert!(census_charpoly(f(3), &[1, 2], 1 << 20).is_err());
        assert!(census_charpoly(f(3), &[5], 1 << 20).is_err());
    }

    #[test]
    fn rank_deficient_counts() {
        // 2x3 over F_2: rank <= 1 happens 22 times out of 64.
        assert_eq!(census_rank_deficient(f(2), 2, 3, 1 << 20).unwrap(), 22);
        // Only the zero row has rank < 1.
        assert_eq!(census_rank_deficient(f(2), 1, 2, 1 << 20).unwrap(), 1);
        // Oracle: rank <= 1 count is 1 + (q^2 - 1)(q^3 - 1)/(q - 1).
        for q in [2u64, 3, 5] {
            let got = census_rank_deficient(f(q as u32), 2, 3, 1 << 26).unwrap();
            let expected = 1 + (q * q - 1) * (q * q * q - 1) / (q - 1);
            assert_eq!(got, expected, "q={q}");
        }
        assert!(census_rank_deficient(f(2), 3, 3, 1 << 20).is_err());
    }

    #[test]
    fn independence_examples() {
        let field = f(2);
        let e12 = Matrix::unit(field, 2, 0, 1);
        let t = MatrixTuple::new(vec![e12]).unwrap();
        let report = independence_check(&t, 2).unwrap();
        assert!(!report.independent);
        assert!(!report.dimension_forced);

        let field = f(5);
        let diag = Matrix::from_rows(field, &[vec![1, 0], vec![0, 2]]).unwrap();
        let t = MatrixTuple::new(vec![diag]).unwrap();
        assert!(independence_check(&t, 1).unwrap().independent);

        // 7 words never fit inside a 4-dimensional algebra.
        let field = f(3);
        let a = Matrix::from_rows(field, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(field, &[vec![0, 1], vec![1, 0]]).unwrap();
        let t = MatrixTuple::new(vec![a, b]).unwrap();
        let report = independence_check(&t, 2).unwrap();
        assert!(!report.independent);
        assert!(report.dimension_forced);
        assert_eq!(report.word_count, 7);
    }

    #[test]
    fn dimension_estimates_from_counts() {
        // Nilpotent locus at s = 2: counts q^2.
        let points: Vec<(u32, BigUint)> = [2u32, 3, 5]
            .iter()
            .map(|&q| (q, BigUint::from(q * q)))
            .collect();
        let est = estimate_dimension_from_counts(&points, 4).unwrap();
        assert!((est.dim_hat - 2.0).abs() < 1e-12);
        assert!((est.codim_hat - 2.0).abs() < 1e-12);
        assert!((est.hausdorff - 0.5).abs() < 1e-12);

        // Single point locus.
        let points: Vec<(u32, BigUint)> =
            vec![(2, BigUint::from(1u32)), (3, BigUint::from(1u32))];
        let est = estimate_dimension_from_counts(&points, 4).unwrap();
        assert_eq!(est.dim_hat, 0.0);
        assert_eq!(est.codim_hat, 4.0);

        // Empty locus at the largest prime.
        let points: Vec<(u32, BigUint)> =
            vec![(2, BigUint::from(1u32)), (3, BigUint::from(0u32))];
        assert!(matches!(
            estimate_dimension_from_counts(&points, 4),
            Err(Error::EmptyLocus(3))
        ));

        // One prime is not enough.
        let points = vec![(2, BigUint::from(4u32))];
        assert!(estimate_dimension_from_counts(&points, 4).is_err());
    }

    #[test]
    fn estimate_from_records_checks_consistency() {
        let a = census("[x1,x2]", 1, 2, 1);
        let b = census("[x1,x2]", 1, 3, 1);
        let est = estimate_dimension(&[a.clone(), b]).unwrap();
        assert!((est.codim_hat - 0.0).abs() < 1e-12);
        let other = census("x1.x1", 2, 3, 1);
        assert!(estimate_dimension(&[a, other]).is_err());
    }

    #[test]
    fn matrix_bound_values() {
        // n=2, d=2: 7 words; the bound only bites for huge s.
        let bound = MatrixBound::new(2, 2, 2).unwrap();
        assert_eq!(bound.word_count, 7);
        assert_eq!(bound.lower_codim, 0);
        assert_eq!(bound.t, 0);

        // n=1, d=1: 2 words, s=8 sits exactly at zero.
        let bound = MatrixBound::new(1, 1, 8).unwrap();
        assert_eq!(bound.word_count, 2);
        assert_eq!(bound.lower_codim, 0);
        assert_eq!(bound.t, 2);

        // Large s: ceil(s^2/(4N) - s) > 0.
        let bound = MatrixBound::new(1, 1, 20).unwrap();
        assert_eq!(bound.lower_codim, 30); // 400/8 - 20
        let upper = bound.upper_dim;
        assert!((upper - ((1.0 - 1.0 / 8.0) * 400.0 + 20.0)).abs() < 1e-9);
    }

    #[test]
    fn sampled_mode_is_seed_deterministic_and_calibrated() {
        let poly = parse_poly_spec("[x1,x2]", None).unwrap();
        let field = f(2);
        let exact_record = census("[x1,x2]", 2, 2, 1);
        let truth = exact_record.zero_count.to_f64().unwrap() / 256.0;

        let run = |seed: u64| {
            let opts = CensusOptions {
                mode: CensusMode::Sampled { sample_size: 500, seed },
                ..CensusOptions::default()
            };
            census_vanishing(&poly, 2, field, &opts).unwrap()
        };
        let a = run(7);
        let b = run(7);
        assert_eq!(a.zero_count, b.zero_count);
        assert!(matches!(a.evidence, CensusEvidence::Sampled { .. }));

        // Coverage: the 95% band should contain the truth almost always.
        let mut covered = 0;
        for seed in 0..100u64 {
            let record = run(seed);
            let CensusEvidence::Sampled { sample_size, hits, halfwidth } = record.evidence
            else {
                unreachable!()
            };
            let estimate = hits as f64 / sample_size as f64;
            if (estimate - truth).abs() <= halfwidth {
                covered += 1;
            }
        }
        assert!(covered >= 93, "only {covered}/100 runs covered the exact count");
    }

    #[test]
    fn multilinear_identity_check_matches_exhaustive() {
        let field = f(2);
        let s2 = parse_poly_spec("s2", None).unwrap();
        // The commutator is not an identity of M_2 but is one of M_1.
        let on_m2 = identity_check(&s2, 2, field, 1 << 26).unwrap();
        assert!(!on_m2.identity);
        assert!(on_m2.multilinear);
        let on_m1 = identity_check(&s2, 1, field, 1 << 26).unwrap();
        assert!(on_m1.identity);

        // Non-multilinear path: x1^2 is an identity of M_1(F_2) only at q=2.
        let sq = parse_poly_spec("x1.x1 - x1", None).unwrap();
        let fermat = identity_check(&sq, 1, field, 1 << 26).unwrap();
        assert!(fermat.identity);
        assert!(!fermat.multilinear);
        let not_f3 = identity_check(&sq, 1, f(3), 1 << 26).unwrap();
        assert!(!not_f3.identity);
        assert!(not_f3.witness.is_some());
    }
}
