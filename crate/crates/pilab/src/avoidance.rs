//! Counting sequences that avoid a fixed consecutive pattern.
//!
//! The automaton states are the proper prefixes of the pattern currently
//! matched (0..d-1 for a pattern of length d); entering the full match is
//! forbidden. Transitions come from the classical failure function, so the
//! state space stays minimal. Counts of surviving length-N paths are exact
//! big integers; the spectral radius of the transfer matrix gives the
//! growth rate, which stays strictly below the alphabet size `n` and below
//! the explicit bound `(n^d - 1)^(1/d)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::words::Word;

/// Failure-function automaton tracking progress toward one forbidden
/// pattern.
#[derive(Debug, Clone)]
pub struct AvoidanceAutomaton {
    pattern: Word,
    /// `transitions[state][letter - 1]`; `None` completes the pattern.
    transitions: Vec<Vec<Option<usize>>>,
}

impl AvoidanceAutomaton {
    pub fn new(pattern: &Word) -> Result<Self> {
        let d = pattern.degree();
        if d == 0 {
            return Err(Error::pre("the avoided pattern must be nonempty"));
        }
        let n = pattern.alphabet() as usize;
        let letters = pattern.letters();

        // Longest proper prefix of pattern[..=i] that is also a suffix.
        let mut fail = vec![0usize; d];
        let mut k = 0;
        for i in 1..d {
            while k > 0 && letters[k] != letters[i] {
                k = fail[k - 1];
            }
            if letters[k] == letters[i] {
                k += 1;
            }
            fail[i] = k;
        }

        let mut transitions = vec![vec![None; n]; d];
        for state in 0..d {
            for letter in 1..=n as u8 {
                let mut k = state;
                while k > 0 && letters[k] != letter {
                    k = fail[k - 1];
                }
                let next = if letters[k] == letter { k + 1 } else { k };
                transitions[state][letter as usize - 1] =
                    if next == d { None } else { Some(next) };
            }
        }
        Ok(AvoidanceAutomaton { pattern: pattern.clone(), transitions })
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Runs the word through the automaton; `true` when the pattern never
    /// occurs as a consecutive subsequence.
    pub fn avoids(&self, word: &Word) -> Result<bool> {
        let n = self.pattern.alphabet();
        let mut state = 0usize;
        for &letter in word.letters() {
            if letter == 0 || letter > n {
                return Err(Error::LetterOutOfRange { letter, n });
            }
            match self.transitions[state][letter as usize - 1] {
                Some(next) => state = next,
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Transfer matrix: entry `(u, v)` counts the letters moving state `u`
    /// to state `v` without completing the pattern.
    pub fn transfer_matrix(&self) -> TransferMatrix {
        let d = self.transitions.len();
        let mut entries = vec![vec![0u64; d]; d];
        for (u, row) in self.transitions.iter().enumerate() {
            for next in row.iter().flatten() {
                entries[u][*next] += 1;
            }
        }
        TransferMatrix { entries }
    }
}

/// Nonnegative integer transition-count matrix of an avoidance automaton.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    entries: Vec<Vec<u64>>,
}

impl TransferMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, u: usize, v: usize) -> u64 {
        self.entries[u][v]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    fn apply(&self, v: &[BigUint]) -> Vec<BigUint> {
        let d = self.dim();
        let mut out = vec![BigUint::zero(); d];
        for (u, weight) in v.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            for (next, &count) in self.entries[u].iter().enumerate() {
                if count > 0 {
                    out[next] += weight * count;
                }
            }
        }
        out
    }

    /// Spectral radius by power iteration, stopping when successive
    /// estimates agree to a relative 1e-10 (with an iteration cap for the
    /// slowly converging defective cases; those still resolve well past any
    /// tolerance used downstream).
    pub fn spectral_radius(&self) -> f64 {
        let d = self.dim();
        let mut v: Vec<f64> = vec![1.0; d];
        let mut estimate = 0.0f64;
        for _ in 0..2_000_000 {
            let mut next = vec![0.0f64; d];
            for (u, &weight) in v.iter().enumerate() {
                if weight == 0.0 {
                    continue;
                }
                for (vtx, &count) in self.entries[u].iter().enumerate() {
                    next[vtx] += weight * count as f64;
                }
            }
            let norm: f64 = next.iter().sum();
            if norm == 0.0 {
                return 0.0;
            }
            let new_estimate = norm / v.iter().sum::<f64>();
            for x in &mut next {
                *x /= norm;
            }
            v = next;
            if (new_estimate - estimate).abs() <= 1e-10 * new_estimate.max(1e-300) {
                return new_estimate;
            }
            estimate = new_estimate;
        }
        estimate
    }
}

/// Exact number of length-`len` sequences over `1..=n` in which `pattern`
/// never occurs consecutively.
pub fn count_avoiding(pattern: &Word, len: usize) -> Result<BigUint> {
    let automaton = AvoidanceAutomaton::new(pattern)?;
    let transfer = automaton.transfer_matrix();
    let mut v = vec![BigUint::zero(); transfer.dim()];
    v[0] = BigUint::one();
    for _ in 0..len {
        v = transfer.apply(&v);
    }
    Ok(v.into_iter().sum())
}

/// The explicit growth bound `(n^d - 1)^(1/d)`.
pub fn growth_bound(n: u8, d: usize) -> f64 {
    ((n as f64).powi(d as i32) - 1.0).powf(1.0 / d as f64)
}

/// Growth rate of the avoiding count: the spectral radius of the transfer
/// matrix. Always strictly below the alphabet size.
pub fn growth_rate(pattern: &Word) -> Result<f64> {
    let automaton = AvoidanceAutomaton::new(pattern)?;
    let radius = automaton.transfer_matrix().spectral_radius();
    let n = pattern.alphabet();
    let bound = growth_bound(n, pattern.degree());
    debug_assert!(radius <= bound + 1e-6, "radius {radius} above bound {bound}");
    debug_assert!(radius < n as f64, "radius {radius} not below alphabet {n}");
    Ok(radius)
}

/// One row of a bound check: the exact count against
/// `(n^d - 1)^(len/d) * n^d`.
#[derive(Debug, Clone)]
pub struct PatternBoundRow {
    pub len: usize,
    pub count: BigUint,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct PatternBoundReport {
    pub pattern: Word,
    pub rows: Vec<PatternBoundRow>,
    pub all_hold: bool,
}

/// Checks `count(len) <= (n^d - 1)^(len/d) * n^d` for every `len` up to
/// `len_max`. The comparison is exact: both sides are raised to the d-th
/// power so no real arithmetic is involved.
pub fn check_pattern_bound(pattern: &Word, len_max: usize) -> Result<PatternBoundReport> {
    let d = pattern.degree();
    if d == 0 {
        return Err(Error::pre("the avoided pattern must be nonempty"));
    }
    if len_max < d {
        return Err(Error::pre("the horizon must be at least the pattern length"));
    }
    let n = pattern.alphabet();
    let base = BigUint::from(n).pow(d as u32) - BigUint::one(); // n^d - 1
    let shift = BigUint::from(n).pow((d * d) as u32); // n^(d*d) = (n^d)^d
    let mut rows = Vec::with_capacity(len_max + 1);
    let mut all_hold = true;
    for len in 0..=len_max {
        let count = count_avoiding(pattern, len)?;
        // count <= (n^d - 1)^(len/d) * n^d  iff  count^d <= (n^d-1)^len * n^(d^2)
        let lhs = count.pow(d as u32);
        let rhs = base.pow(len as u32) * &shift;
        let holds = lhs <= rhs;
        all_hold &= holds;
        let bound = base
            .to_f64()
            .map(|b| b.powf(len as f64 / d as f64) * (n as f64).powi(d as i32))
            .unwrap_or(f64::INFINITY);
        rows.push(PatternBoundRow { len, count, bound, holds });
    }
    Ok(PatternBoundReport { pattern: pattern.clone(), rows, all_hold })
}
