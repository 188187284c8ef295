//! Exact dimension series of free associative, free Lie, and free Jordan
//! algebras on `n` generators, and the comparison inequalities between them.
//!
//! Everything here is integer or rational arithmetic; the only floating
//! point appears in reported root estimates derived from exact values.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which algebra a series describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    Associative,
    Lie,
    Jordan,
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::Associative => "associative",
            SeriesKind::Lie => "lie",
            SeriesKind::Jordan => "jordan",
        }
    }
}

/// Dimensions of the graded pieces of a free algebra, degrees `0..=max`.
#[derive(Debug, Clone)]
pub struct SeriesTable {
    pub kind: SeriesKind,
    pub n: u8,
    pub coeffs: Vec<BigUint>,
}

impl SeriesTable {
    pub fn coeff(&self, degree: usize) -> &BigUint {
        &self.coeffs[degree]
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Möbius function on `1..=max` by sieve.
pub fn mobius_sieve(max: usize) -> Vec<i8> {
    let mut mu = vec![1i8; max + 1];
    let mut is_composite = vec![false; max + 1];
    let mut primes = Vec::new();
    for i in 2..=max {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > max {
                break;
            }
            is_composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    if max >= 1 {
        mu[1] = 1;
    }
    mu
}

/// `n^degree` for each degree: the free associative series.
pub fn associative_dims(n: u8, max_degree: usize) -> SeriesTable {
    let coeffs = (0..=max_degree)
        .map(|i| BigUint::from(n).pow(i as u32))
        .collect();
    SeriesTable { kind: SeriesKind::Associative, n, coeffs }
}

/// `sum_{e | m} mu(e) * n^(m/e)`, the m-th necklace numerator.
fn witt_numerator(n: u8, m: usize, mu: &[i8]) -> BigInt {
    let mut acc = BigInt::zero();
    for e in 1..=m {
        if m % e == 0 && mu[e] != 0 {
            let term = BigInt::from(BigUint::from(n).pow((m / e) as u32));
            if mu[e] > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// Dimensions of the graded pieces of the free Lie algebra: degree `m`
/// holds `(1/m) * sum_{e | m} mu(e) n^(m/e)`. The division is exact and
/// asserted; degree 0 is 0.
pub fn witt_numbers(n: u8, max_degree: usize) -> Result<SeriesTable> {
    if n < 1 {
        return Err(Error::pre("need at least one generator"));
    }
    let mu = mobius_sieve(max_degree);
    let mut coeffs = vec![BigUint::zero()];
    for m in 1..=max_degree {
        let numerator = witt_numerator(n, m, &mu);
        let (q, r) = numerator.div_rem(&BigInt::from(m));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::pre(format!(
                "necklace numerator not divisible by {m}: this should be impossible"
            )));
        }
        coeffs.push(q.to_biguint().expect("nonnegative"));
    }
    Ok(SeriesTable { kind: SeriesKind::Lie, n, coeffs })
}

/// Largest odd divisor of `i`.
pub fn largest_odd_divisor(i: u64) -> u64 {
    i >> i.trailing_zeros()
}

/// Dimensions of the graded pieces of the free Jordan algebra, defined by
/// exponentiating `sum_i n^theta(i) t^i / i` with `theta` the largest odd
/// divisor. The expansion runs over exact rationals; every coefficient
/// must come out a nonnegative integer and this is asserted.
pub fn jordan_coeffs(n: u8, max_degree: usize) -> Result<SeriesTable> {
    if n < 1 {
        return Err(Error::pre("need at least one generator"));
    }
    // exp(g)' = g' exp(g) at coefficient level:
    // k * f_k = sum_{i=1..k} (i * g_i) * f_{k-i}, with i * g_i = n^theta(i).
    let weights: Vec<BigRational> = (0..=max_degree as u64)
        .map(|i| {
            if i == 0 {
                BigRational::zero()
            } else {
                BigRational::from_integer(BigInt::from(BigUint::from(n).pow(
                    largest_odd_divisor(i) as u32,
                )))
            }
        })
        .collect();
    let mut series: Vec<BigRational> = vec![BigRational::one()];
    let mut coeffs = vec![BigUint::one()];
    for k in 1..=max_degree {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            acc += &weights[i] * &series[k - i];
        }
        let f_k = acc / BigRational::from_integer(BigInt::from(k));
        if !f_k.is_integer() || f_k.is_negative() {
            return Err(Error::pre(format!(
                "series coefficient at degree {k} is not a nonnegative integer: {f_k}"
            )));
        }
        coeffs.push(f_k.to_integer().to_biguint().expect("nonnegative"));
        series.push(f_k);
    }
    Ok(SeriesTable { kind: SeriesKind::Jordan, n, coeffs })
}

fn big_binomial(top: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(top - k + i) / BigUint::from(i);
    }
    acc
}

/// One degree of the Lie-vs-symmetric comparison.
#[derive(Debug, Clone)]
pub struct LieInequalityRow {
    pub degree: u32,
    /// `sum_{e|N} mu(e) n^(N/e)`, i.e. N times the Witt number.
    pub lie_side: BigInt,
    /// `N * C(n+N-1, N) * (n-1)^N`.
    pub poly_side: BigUint,
    pub holds: bool,
    /// Conservative form of the lower chain bound:
    /// `lie_side > n^N - 2*floor(sqrt(n^N))`.
    pub chain_holds: bool,
}

#[derive(Debug, Clone)]
pub struct LieInequalityReport {
    pub n: u8,
    pub rows: Vec<LieInequalityRow>,
    /// First degree from which the inequality holds through the horizon.
    pub holds_from: Option<u32>,
}

/// Compares `(1/N) sum_{e|N} mu(e) n^(N/e)` against
/// `C(n+N-1, N) (n-1)^N` exactly for every `N` up to the horizon.
pub fn lie_inequality_check(n: u8, max_degree: u32) -> Result<LieInequalityReport> {
    if n < 2 {
        return Err(Error::pre("the comparison needs at least 2 generators"));
    }
    let mu = mobius_sieve(max_degree as usize);
    let mut rows = Vec::with_capacity(max_degree as usize);
    for degree in 1..=max_degree {
        let lie_side = witt_numerator(n, degree as usize, &mu);
        let binom = big_binomial(n as u64 + degree as u64 - 1, degree as u64);
        let poly_side =
            BigUint::from(degree) * binom * BigUint::from(n - 1).pow(degree);
        let holds = lie_side > BigInt::from(poly_side.clone());
        let power = BigUint::from(n).pow(degree);
        let chain_rhs = BigInt::from(power.clone()) - 2 * BigInt::from(power.sqrt());
        let chain_holds = lie_side > chain_rhs;
        rows.push(LieInequalityRow { degree, lie_side, poly_side, holds, chain_holds });
    }
    let mut holds_from = None;
    for row in rows.iter().rev() {
        if row.holds {
            holds_from = Some(row.degree);
        } else {
            break;
        }
    }
    Ok(LieInequalityReport { n, rows, holds_from })
}

/// Growth diagnostics of the Jordan series.
#[derive(Debug, Clone)]
pub struct JordanGrowthReport {
    pub n: u8,
    pub max_degree: usize,
    /// Largest `c_i^(1/i)` over `1 <= i <= max_degree`.
    pub max_root: f64,
    /// `ln(c_i) / i` at the horizon.
    pub final_log_ratio: f64,
    /// First `i` with `c_i^(1/i) > n - 1/2`, decided exactly.
    pub exceeds_threshold_at: Option<usize>,
    pub threshold: f64,
}

/// Tracks `c_i^(1/i)`: the series' radius of convergence is at most `1/n`,
/// so the root sequence approaches `n`. The threshold crossing at
/// `n - 1/2` is decided by exact integer comparison.
pub fn jordan_growth_check(n: u8, max_degree: usize) -> Result<JordanGrowthReport> {
    let table = jordan_coeffs(n, max_degree)?;
    let mut max_root = 0.0f64;
    let mut exceeds_at = None;
    // c_i > (n - 1/2)^i  iff  c_i * 2^i > (2n - 1)^i.
    let threshold_base = BigUint::from(2 * n as u32 - 1);
    for i in 1..=max_degree {
        let c = table.coeff(i);
        let root = c
            .to_f64()
            .map(|v| v.powf(1.0 / i as f64))
            .unwrap_or(f64::INFINITY);
        max_root = max_root.max(root);
        if exceeds_at.is_none()
            && c * BigUint::from(2u32).pow(i as u32) > threshold_base.pow(i as u32)
        {
            exceeds_at = Some(i);
        }
    }
    let final_log_ratio = table
        .coeff(max_degree)
        .to_f64()
        .map(|v| v.ln() / max_degree as f64)
        .unwrap_or(f64::INFINITY);
    Ok(JordanGrowthReport {
        n,
        max_degree,
        max_root,
        final_log_ratio,
        exceeds_threshold_at: exceeds_at,
        threshold: n as f64 - 0.5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        let mu = mobius_sieve(12);
        assert_eq!(&mu[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn witt_small_values() {
        let t = witt_numbers(2, 5).unwrap();
        let got: Vec<u64> = (1..=5).map(|m| t.coeff(m).to_u64().unwrap()).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6]);

        let one = witt_numbers(1, 6).unwrap();
        assert_eq!(one.coeff(1), &BigUint::one());
        for m in 2..=6 {
            assert!(one.coeff(m).is_zero(), "degree {m}");
        }

        assert_eq!(witt_numbers(3, 2).unwrap().coeff(2), &BigUint::from(3u32));
    }

    #[test]
    fn necklace_identity() {
        // sum_{e | m} e * W(e) = n^m, exactly.
        for n in 1u8..=4 {
            let t = witt_numbers(n, 12).unwrap();
            for m in 1usize..=12 {
                let mut acc = BigUint::zero();
                for e in 1..=m {
                    if m % e == 0 {
                        acc += BigUint::from(e) * t.coeff(e);
                    }
                }
                assert_eq!(acc, BigUint::from(n).pow(m as u32), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn witt_matches_lyndon_oracle() {
        // Independent oracle: a word is Lyndon iff strictly smaller than
        // every proper rotation; count them by enumeration.
        fn lyndon_count(n: u8, len: usize) -> u64 {
            let mut count = 0u64;
            let mut seq = vec![1u8; len];
            loop {
                let lyndon = (1..len).all(|r| {
                    let rotated: Vec<u8> = seq[r..].iter().chain(&seq[..r]).copied().collect();
                    seq < rotated.as_slice().to_vec()
                });
                if lyndon {
                    count += 1;
                }
                let mut k = len;
                let done = loop {
                    if k == 0 {
                        break true;
                    }
                    k -= 1;
                    if seq[k] < n {
                        seq[k] += 1;
                        break false;
                    }
                    seq[k] = 1;
                };
                if done {
                    return count;
                }
            }
        }
        for n in 1u8..=3 {
            let t = witt_numbers(n, 12).unwrap();
            for len in 1usize..=12 {
                assert_eq!(
                    t.coeff(len).to_u64().unwrap(),
                    lyndon_count(n, len),
                    "n={n} len={len}"
                );
            }
        }
    }

    #[test]
    fn jordan_small_values() {
        let t = jordan_coeffs(2, 6).unwrap();
        assert_eq!(t.coeff(0), &BigUint::one());
        assert_eq!(t.coeff(1), &BigUint::from(2u32));
        assert_eq!(t.coeff(2), &BigUint::from(3u32));
        // One generator: exp(sum t^i / i) = 1/(1-t), all ones.
        let ones = jordan_coeffs(1, 30).unwrap();
        assert!(ones.coeffs.iter().all(|c| c.is_one()));
    }

    #[test]
    fn jordan_matches_factorial_expansion_oracle() {
        // Independent route: exp(g) = sum_j g^j / j! truncated.
        let n = 2u8;
        let max = 16usize;
        let weights: Vec<BigRational> = (0..=max as u64)
            .map(|i| {
                if i == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(
                        BigInt::from(BigUint::from(n).pow(largest_odd_divisor(i) as u32)),
                        BigInt::from(i),
                    )
                }
            })
            .collect();
        let mut result = vec![BigRational::zero(); max + 1];
        result[0] = BigRational::one();
        let mut power = {
            let mut e = vec![BigRational::zero(); max + 1];
            e[0] = BigRational::one();
            e
        };
        let mut factorial = BigRational::one();
        for j in 1..=max {
            // power <- power * g, truncated.
            let mut next = vec![BigRational::zero(); max + 1];
            for a in 0..=max {
                if power[a].is_zero() {
                    continue;
                }
                for b in 1..=max - a {
                    let term = &power[a] * &weights[b];
                    next[a + b] += term;
                }
            }
            power = next;
            factorial *= BigRational::from_integer(BigInt::from(j));
            for k in 0..=max {
                result[k] += &power[k] / &factorial;
            }
        }
        let table = jordan_coeffs(n, max).unwrap();
        for k in 0..=max {
            assert_eq!(
                result[k],
                BigRational::from_integer(BigInt::from(table.coeff(k).clone())),
                "degree {k}"
            );
        }
    }

    #[test]
    fn jordan_derivative_identity() {
        // k * f_k = sum i*g_i*f_(k-i) restated over the final integers.
        let n = 3u8;
        let max = 40usize;
        let t = jordan_coeffs(n, max).unwrap();
        for k in 1..=max {
            let mut acc = BigUint::zero();
            for i in 1..=k {
                acc += BigUint::from(n).pow(largest_odd_divisor(i as u64) as u32)
                    * t.coeff(k - i);
            }
            assert_eq!(acc, BigUint::from(k) * t.coeff(k), "degree {k}");
        }
    }

    #[test]
    fn associative_series_is_powers() {
        let t = associative_dims(3, 5);
        for i in 0..=5 {
            assert_eq!(t.coeff(i), &BigUint::from(3u32).pow(i as u32));
        }
    }

    #[test]
    fn lie_inequality_two_generators() {
        let report = lie_inequality_check(2, 64).unwrap();
        // N=7: (2^7 - 2)/7 = 18 > 8 = (N+1).
        let row7 = &report.rows[6];
        assert_eq!(row7.degree, 7);
        assert_eq!(row7.lie_side, BigInt::from(126));
        assert_eq!(row7.poly_side, BigUint::from(7u32 * 8));
        assert!(row7.holds);
        // N=2: Witt number 1 vs 3; fails as expected at small degree.
        assert!(!report.rows[1].holds);
        // N=5 ties (30 vs 30); from N=6 on the Lie side wins.
        assert!(!report.rows[4].holds);
        assert_eq!(report.holds_from, Some(6));
        for row in &report.rows {
            if row.degree >= 7 {
                assert!(row.holds, "degree {}", row.degree);
            }
            assert!(row.chain_holds, "chain at degree {}", row.degree);
        }
    }

    #[test]
    fn jordan_growth_two_generators() {
        let report = jordan_growth_check(2, 200).unwrap();
        assert!(report.max_root > 1.5);
        assert!(report.exceeds_threshold_at.is_some());
        // Nondecreasing coefficients over the tested range.
        let t = jordan_coeffs(2, 200).unwrap();
        for i in 1..200 {
            assert!(t.coeff(i + 1) >= t.coeff(i), "degree {i}");
        }
        // One generator: roots pinned at 1, already above the 0.5 threshold.
        let flat = jordan_growth_check(1, 50).unwrap();
        assert!((flat.max_root - 1.0).abs() < 1e-12);
        assert_eq!(flat.exceeds_threshold_at, Some(1));
    }
}
