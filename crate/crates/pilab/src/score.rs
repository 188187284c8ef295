//! The score order on words and the rewriting engine it makes terminate.
//!
//! A score system for alphabet size `n` and window length `d` fixes the
//! smallest prime `p > 2^(d*n)` and weighs letter `i` at position `j` as
//! the unique integer congruent to `2^((j*n + i) mod d*n)` modulo `p`
//! inside `[j*p, (j+1)*p)`. Since that power of two is already below `p`,
//! the weight is exactly `j*p + 2^((j*n + i) mod d*n)`: a position ramp
//! plus a power-of-two residue. Consequences used throughout:
//!
//! * the score of a word of length `N` lies in
//!   `[p*N(N+1)/2, p*((N+1)(N+2)-2)/2)`, so longer words always outscore
//!   shorter ones;
//! * two equal-length words differing only inside one length-`d` window
//!   have distinct scores (their residue sums differ as sums of `d` powers
//!   of two below `p` drawn from disjoint blocks);
//! * the residue sum of a window depends only on the window's start
//!   position modulo `d`, so "lower score in every window" is a finite
//!   check over `d` offset classes.
//!
//! A [`Relation`] replaces one designated length-`d` head word by a formal
//! combination of strictly lower-scoring words. [`rewrite`] repeatedly
//! clears every maximal-score word containing the head, so the maximal
//! live score strictly decreases per step and the step count stays below
//! `p*(N^2+3N)/2`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::avoidance::{count_avoiding, growth_rate, AvoidanceAutomaton};
use crate::error::{Error, Result};
use crate::words::{basis_size, Word};

/// Largest supported `d*n`; keeps `2^(d*n)` and every score in `u64`.
pub const MAX_DN: u32 = 24;

/// Prime and weight table driving the score order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreSystem {
    n: u8,
    d: usize,
    p: u64,
}

impl ScoreSystem {
    /// Picks the smallest prime above `2^(d*n)`.
    pub fn new(n: u8, d: usize) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::pre("score system needs n >= 1 and d >= 1"));
        }
        let dn = d as u32 * n as u32;
        if dn > MAX_DN {
            return Err(Error::pre(format!(
                "d*n = {dn} exceeds the supported maximum {MAX_DN}"
            )));
        }
        let p = crate::field::next_prime(1u64 << dn);
        Ok(ScoreSystem { n, d, p })
    }

    pub fn alphabet(&self) -> u8 {
        self.n
    }

    pub fn window(&self) -> usize {
        self.d
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The weight of `letter` at 1-based `position`.
    pub fn position_weight(&self, letter: u8, position: u64) -> Result<u64> {
        if letter == 0 || letter > self.n {
            return Err(Error::LetterOutOfRange { letter, n: self.n });
        }
        if position == 0 {
            return Err(Error::pre("positions are 1-based"));
        }
        let dn = self.d as u64 * self.n as u64;
        let r = (position * self.n as u64 + letter as u64) % dn;
        Ok(position * self.p + (1u64 << r))
    }

    /// Sum of position weights; the empty word scores 0.
    pub fn score(&self, word: &Word) -> Result<u64> {
        if word.alphabet() != self.n {
            return Err(Error::AlphabetMismatch(word.alphabet(), self.n));
        }
        let len = word.degree() as u128;
        // (len+1)(len+2)/2 * p must fit; far beyond any practical word.
        if (len + 1) * (len + 2) / 2 * self.p as u128 > u64::MAX as u128 {
            return Err(Error::pre("word too long for 64-bit scores"));
        }
        let mut total = 0u64;
        for (k, &letter) in word.letters().iter().enumerate() {
            total += self.position_weight(letter, k as u64 + 1)?;
        }
        Ok(total)
    }

    /// Inclusive lower and exclusive upper score bound for words of `len`
    /// letters: `p*len(len+1)/2` and `p*((len+1)(len+2)-2)/2`.
    pub fn score_bounds(&self, len: u64) -> (u64, u64) {
        let lower = self.p * len * (len + 1) / 2;
        let upper = self.p * ((len + 1) * (len + 2) - 2) / 2;
        (lower, upper)
    }

    /// Residue part of a window's score when `letters` sit at positions
    /// `start, start+1, ...`: the position ramp cancels in any same-length
    /// comparison, and this sum only depends on `start mod d`.
    fn window_residue(&self, letters: &[u8], start: u64) -> u64 {
        let dn = self.d as u64 * self.n as u64;
        letters
            .iter()
            .enumerate()
            .map(|(k, &letter)| {
                let position = start + k as u64;
                1u64 << ((position * self.n as u64 + letter as u64) % dn)
            })
            .sum()
    }
}

/// Scores two equal-length words that agree outside one window; they can
/// never tie. `window_start` is 1-based.
pub fn check_distinct(
    sys: &ScoreSystem,
    a: &Word,
    b: &Word,
    window_start: usize,
) -> Result<bool> {
    let len = a.degree();
    if b.degree() != len {
        return Err(Error::pre("words must have equal length"));
    }
    if a == b {
        return Err(Error::pre("words must be distinct"));
    }
    let d = sys.window();
    if window_start < 1 || window_start + d - 1 > len {
        return Err(Error::pre("window does not fit inside the words"));
    }
    let inside = |j: usize| j >= window_start && j < window_start + d;
    for j in 1..=len {
        if !inside(j) && a.letters()[j - 1] != b.letters()[j - 1] {
            return Err(Error::pre("words differ outside the window"));
        }
    }
    Ok(sys.score(a)? != sys.score(b)?)
}

/// A head word of length exactly `d` together with the replacement words
/// it may be rewritten to. Each replacement carries a formal tag named by
/// the word itself.
///
/// Construction enforces what the rewriting engine needs: replacements of
/// full length `d` must have a strictly smaller window residue than the
/// head in every offset class; shorter replacements always lower the score
/// because they shorten the word.
#[derive(Debug, Clone)]
pub struct Relation {
    head: Word,
    body: Vec<Word>,
}

impl Relation {
    pub fn new(sys: &ScoreSystem, head: Word, body: Vec<Word>) -> Result<Self> {
        if head.alphabet() != sys.alphabet() {
            return Err(Error::AlphabetMismatch(head.alphabet(), sys.alphabet()));
        }
        if head.degree() != sys.window() {
            return Err(Error::MalformedRelation(format!(
                "head must have length {}, got {}",
                sys.window(),
                head.degree()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for word in &body {
            if word.alphabet() != sys.alphabet() {
                return Err(Error::AlphabetMismatch(word.alphabet(), sys.alphabet()));
            }
            if word.degree() > sys.window() {
                return Err(Error::MalformedRelation(format!(
                    "replacement {word} is longer than the head"
                )));
            }
            if *word == head {
                return Err(Error::MalformedRelation(
                    "head appears in its own replacement list".into(),
                ));
            }
            if !seen.insert(word.clone()) {
                return Err(Error::MalformedRelation(format!(
                    "duplicate replacement {word}"
                )));
            }
            if word.degree() == sys.window() {
                for offset_class in 1..=sys.window() as u64 {
                    let head_res = sys.window_residue(head.letters(), offset_class);
                    let body_res = sys.window_residue(word.letters(), offset_class);
                    if body_res >= head_res {
                        return Err(Error::MalformedRelation(format!(
                            "replacement {word} does not lower the score in windows \
                             starting at {offset_class} mod {}",
                            sys.window()
                        )));
                    }
                }
            }
        }
        let mut body = body;
        body.sort();
        Ok(Relation { head, body })
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn body(&self) -> &[Word] {
        &self.body
    }
}

/// A formal monomial in the replacement tags: tag word -> exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ZMonomial(BTreeMap<Word, u32>);

impl ZMonomial {
    pub fn one() -> Self {
        ZMonomial::default()
    }

    pub fn times_tag(&self, tag: &Word) -> Self {
        let mut exps = self.0.clone();
        *exps.entry(tag.clone()).or_insert(0) += 1;
        ZMonomial(exps)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.0.iter().map(|(w, &e)| (w, e))
    }

    pub fn total_degree(&self) -> u64 {
        self.0.values().map(|&e| e as u64).sum()
    }
}

impl std::fmt::Display for ZMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(word, &exp)| {
                let base = format!("z[{}]", word.letters_string());
                if exp == 1 { base } else { format!("{base}^{exp}") }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// One normal-form term produced by rewriting: an avoiding word scaled by
/// an integer multiple of a tag monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTerm {
    pub word: Word,
    pub coeff: ZMonomial,
    pub multiplicity: BigUint,
}

/// Result of rewriting one input word to normal form.
#[derive(Debug, Clone)]
pub struct RewriteOutcome {
    pub terms: Vec<RewriteTerm>,
    /// Score levels cleared; strictly decreasing, hence bounded by the
    /// maximal score of the input.
    pub steps: u64,
    /// Individual word replacements performed.
    pub replacements: u64,
    pub step_bound: u64,
    pub trace: Vec<String>,
}

type TagPoly = BTreeMap<ZMonomial, BigUint>;

fn add_into(dst: &mut TagPoly, src: &TagPoly, tag: &Word) {
    for (mono, mult) in src {
        *dst.entry(mono.times_tag(tag)).or_insert_with(BigUint::zero) += mult;
    }
}

/// Rewrites `word` modulo the relation until no occurrence of the head
/// remains. Within each chosen word the leftmost occurrence is replaced;
/// across words, every word at the current maximal score is cleared before
/// moving on, so the maximal live score strictly decreases each step.
pub fn rewrite(
    rel: &Relation,
    sys: &ScoreSystem,
    word: &Word,
    want_trace: bool,
) -> Result<RewriteOutcome> {
    if word.alphabet() != sys.alphabet() {
        return Err(Error::AlphabetMismatch(word.alphabet(), sys.alphabet()));
    }
    let len = word.degree() as u64;
    let (_, score_cap) = sys.score_bounds(len);
    let head = rel.head().letters();
    let occurrence = |w: &Word| -> Option<usize> {
        let ls = w.letters();
        if ls.len() < head.len() {
            return None;
        }
        (0..=ls.len() - head.len()).find(|&i| &ls[i..i + head.len()] == head)
    };

    let mut normal: BTreeMap<Word, TagPoly> = BTreeMap::new();
    let mut live: BTreeMap<(u64, Word), TagPoly> = BTreeMap::new();
    let seed: TagPoly = BTreeMap::from([(ZMonomial::one(), BigUint::one())]);
    if occurrence(word).is_some() {
        live.insert((sys.score(word)?, word.clone()), seed);
    } else {
        normal.insert(word.clone(), seed);
    }

    let mut steps = 0u64;
    let mut replacements = 0u64;
    let mut trace = Vec::new();
    while let Some((&(level_score, _), _)) = live.last_key_value() {
        steps += 1;
        if steps >= score_cap {
            // Unreachable when the relation invariants hold.
            return Err(Error::MalformedRelation(format!(
                "rewriting exceeded {score_cap} steps"
            )));
        }
        // Clear every live word at the current maximal score.
        let level: Vec<(Word, TagPoly)> = {
            let keys: Vec<(u64, Word)> = live
                .range((level_score, Word::empty(sys.alphabet()))..)
                .map(|(k, _)| k.clone())
                .collect();
            keys.into_iter()
                .map(|k| {
                    let poly = live.remove(&k).expect("key just listed");
                    (k.1, poly)
                })
                .collect()
        };
        for (bad_word, poly) in level {
            let at = occurrence(&bad_word).expect("live words contain the head");
            replacements += 1;
            if want_trace {
                trace.push(format!(
                    "step {steps} (score {level_score}): {} -> {} replacement(s) at position {}",
                    bad_word.letters_string(),
                    rel.body().len(),
                    at + 1
                ));
            }
            let prefix = &bad_word.letters()[..at];
            let suffix = &bad_word.letters()[at + head.len()..];
            for tag in rel.body() {
                let mut letters = Vec::with_capacity(prefix.len() + tag.degree() + suffix.len());
                letters.extend_from_slice(prefix);
                letters.extend_from_slice(tag.letters());
                letters.extend_from_slice(suffix);
                let new_word = Word::new(sys.alphabet(), letters)?;
                let new_score = sys.score(&new_word)?;
                debug_assert!(
                    new_score < level_score,
                    "replacement must lower the score: {new_score} vs {level_score}"
                );
                if want_trace {
                    trace.push(format!(
                        "    {} (score {new_score}) * z[{}]",
                        new_word.letters_string(),
                        tag.letters_string()
                    ));
                }
                if occurrence(&new_word).is_some() {
                    let slot = live.entry((new_score, new_word)).or_default();
                    add_into(slot, &poly, tag);
                } else {
                    let slot = normal.entry(new_word).or_default();
                    add_into(slot, &poly, tag);
                }
            }
        }
    }

    let mut terms = Vec::new();
    for (out_word, poly) in normal {
        for (coeff, multiplicity) in poly {
            terms.push(RewriteTerm { word: out_word.clone(), coeff, multiplicity });
        }
    }
    Ok(RewriteOutcome { terms, steps, replacements, step_bound: score_cap, trace })
}

/// Exact dimension comparison between the free algebra filtered by degree
/// and the span reachable through a rewriting system: avoiding words times
/// tag monomials of bounded degree.
#[derive(Debug, Clone)]
pub struct DimensionRaceReport {
    pub n: u8,
    pub d: usize,
    pub len: usize,
    pub pattern: Word,
    /// Words of degree at most `len`: `(n^(len+1) - 1)/(n - 1)`.
    pub free_dim: BigUint,
    /// Avoiding words of every degree up to `len`.
    pub avoiding_words: BigUint,
    /// Exclusive degree bound for tag monomials: `p*(len^2+3*len)/2`.
    pub tag_degree_bound: BigUint,
    /// Monomials under that bound in `|basis| - 1` tag variables.
    pub tag_monomials: BigUint,
    /// `avoiding_words * tag_monomials`.
    pub constrained_dim: BigUint,
    pub inequality_closed: bool,
    pub growth_rate: f64,
    pub asymptotic_holds: bool,
}

fn binomial(top: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=k {
        let factor = top - BigUint::from(k - i);
        acc = acc * factor / BigUint::from(i);
    }
    acc
}

/// Compares the two sides at a concrete cutoff `len` and reports the
/// asymptotic verdict from the avoidance growth rate.
pub fn dimension_race(
    sys: &ScoreSystem,
    pattern: &Word,
    len: usize,
) -> Result<DimensionRaceReport> {
    let n = sys.alphabet();
    if n < 2 {
        return Err(Error::pre("dimension race needs at least 2 generators"));
    }
    if pattern.alphabet() != n || pattern.degree() != sys.window() {
        return Err(Error::pre("pattern must be a head word of the score system"));
    }

    let free_dim: BigUint = basis_size(n, len).into();
    let mut avoiding_words = BigUint::zero();
    for m in 0..=len {
        avoiding_words += count_avoiding(pattern, m)?;
    }
    let len_big = len as u64;
    let tag_degree_bound =
        BigUint::from(sys.prime()) * BigUint::from(len_big * len_big + 3 * len_big) / 2u32;
    // Monomials of degree < D in v variables: C(D - 1 + v, v).
    let v = (basis_size(n, sys.window()) - 1) as u64;
    let tag_monomials = if tag_degree_bound.is_zero() {
        BigUint::zero()
    } else {
        binomial(&(tag_degree_bound.clone() - 1u32 + BigUint::from(v)), v)
    };
    let constrained_dim = &avoiding_words * &tag_monomials;
    let rate = growth_rate(pattern)?;
    Ok(DimensionRaceReport {
        n,
        d: sys.window(),
        len,
        pattern: pattern.clone(),
        inequality_closed: free_dim > constrained_dim,
        free_dim,
        avoiding_words,
        tag_degree_bound,
        tag_monomials,
        constrained_dim,
        growth_rate: rate,
        asymptotic_holds: rate < n as f64,
    })
}

/// Checks that every output word of a rewrite avoids the relation head.
pub fn all_avoid(rel: &Relation, terms: &[RewriteTerm]) -> Result<bool> {
    let automaton = AvoidanceAutomaton::new(rel.head())?;
    for term in terms {
        if !automaton.avoids(&term.word)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u8, letters: &[u8]) -> Word {
        Word::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn prime_selection() {
        assert_eq!(ScoreSystem::new(2, 2).unwrap().prime(), 17);
        assert_eq!(ScoreSystem::new(1, 1).unwrap().prime(), 3);
        assert_eq!(ScoreSystem::new(2, 3).unwrap().prime(), 67);
        assert!(ScoreSystem::new(5, 5).is_err());
    }

    #[test]
    fn weight_examples() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        assert_eq!(sys.position_weight(1, 1).unwrap(), 25);
        assert_eq!(sys.position_weight(2, 1).unwrap(), 18);
        assert!(sys.position_weight(3, 1).is_err());
        assert!(sys.position_weight(1, 0).is_err());
    }

    #[test]
    fn weight_is_unique_in_its_window() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let p = sys.prime();
        for letter in 1..=2u8 {
            for j in 1..=40u64 {
                let f = sys.position_weight(letter, j).unwrap();
                assert!(j * p <= f && f < (j + 1) * p);
                let dn = 4u64;
                let r = (j * 2 + letter as u64) % dn;
                assert_eq!(f % p, (1u64 << r) % p);
            }
        }
    }

    #[test]
    fn score_examples_and_bounds() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        assert_eq!(sys.score(&Word::empty(2)).unwrap(), 0);
        let score = sys.score(&w(2, &[1, 2])).unwrap();
        assert_eq!(score, 63);
        let (lo, hi) = sys.score_bounds(2);
        assert!(lo <= score && score < hi);
        assert_eq!(lo, 51);
        assert_eq!(hi, 85);
    }

    #[test]
    fn scores_grow_strictly_with_length() {
        for (n, d) in [(2u8, 2usize), (3, 2), (2, 3)] {
            let sys = ScoreSystem::new(n, d).unwrap();
            // Highest possible at each length stays under the lowest at the next.
            for len in 0..12u64 {
                let (_, hi) = sys.score_bounds(len);
                let (lo_next, _) = sys.score_bounds(len + 1);
                assert!(hi <= lo_next, "n={n} d={d} len={len}");
            }
        }
    }

    #[test]
    fn distinct_window_scores() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        assert!(check_distinct(&sys, &w(2, &[1, 1, 2]), &w(2, &[1, 2, 1]), 2).unwrap());
        assert!(check_distinct(&sys, &w(2, &[1, 2]), &w(2, &[2, 1]), 1).unwrap());
        assert!(check_distinct(&sys, &w(2, &[1, 2]), &w(2, &[1, 2]), 1).is_err());
        // Differ outside the window.
        assert!(check_distinct(&sys, &w(2, &[1, 1, 2]), &w(2, &[2, 1, 1]), 2).is_err());
    }

    #[test]
    fn distinct_exhaustive_small() {
        // Every window position, every pair differing only inside it.
        for (n, d) in [(2u8, 2usize), (3, 2), (2, 3), (3, 3)] {
            let sys = ScoreSystem::new(n, d).unwrap();
            for len in d..=6 {
                let mut letters = vec![1u8; len];
                loop {
                    let a = w(n, &letters);
                    let score_a = sys.score(&a).unwrap();
                    for start in 1..=len - d + 1 {
                        let mut window = vec![1u8; d];
                        loop {
                            let mut alt = letters.clone();
                            alt[start - 1..start - 1 + d].copy_from_slice(&window);
                            if alt != letters {
                                let b = w(n, &alt);
                                assert_ne!(
                                    score_a,
                                    sys.score(&b).unwrap(),
                                    "tie: {a} vs {b} window {start}"
                                );
                            }
                            if !bump(&mut window, n) {
                                break;
                            }
                        }
                    }
                    if !bump(&mut letters, n) {
                        break;
                    }
                }
            }
        }

        fn bump(seq: &mut [u8], n: u8) -> bool {
            for k in (0..seq.len()).rev() {
                if seq[k] < n {
                    seq[k] += 1;
                    return true;
                }
                seq[k] = 1;
            }
            false
        }
    }

    #[test]
    fn relation_validation() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let head = w(2, &[1, 1]);
        // Shorter replacements are always allowed.
        assert!(Relation::new(&sys, head.clone(), vec![w(2, &[2]), Word::empty(2)]).is_ok());
        // Head may not replace itself.
        assert!(Relation::new(&sys, head.clone(), vec![head.clone()]).is_err());
        // Wrong head length.
        assert!(Relation::new(&sys, w(2, &[1]), vec![]).is_err());
        // Full-length replacements need smaller residues in every offset class.
        let ok_full: Vec<Word> = [[1u8, 2], [2, 1], [2, 2]]
            .iter()
            .filter(|cand| {
                Relation::new(&sys, head.clone(), vec![w(2, cand.as_slice())]).is_ok()
            })
            .map(|cand| w(2, cand.as_slice()))
            .collect();
        // Residue sums: the head 11 has residues {2^((j*2+1) mod 4)} and the
        // candidates swap in 2s; which survive is pinned by arithmetic, not
        // guessed here. Verify consistency instead: every accepted word has
        // smaller residue in both offset classes.
        for cand in &ok_full {
            for class in 1..=2u64 {
                assert!(
                    sys.window_residue(cand.letters(), class)
                        < sys.window_residue(head.letters(), class)
                );
            }
        }
    }

    #[test]
    fn rewrite_single_step() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let rel =
            Relation::new(&sys, w(2, &[1, 1]), vec![w(2, &[2])]).unwrap();
        let out = rewrite(&rel, &sys, &w(2, &[1, 1]), false).unwrap();
        assert_eq!(out.terms.len(), 1);
        assert_eq!(out.terms[0].word, w(2, &[2]));
        assert_eq!(out.terms[0].coeff.total_degree(), 1);
        assert_eq!(out.terms[0].multiplicity, BigUint::one());
        assert_eq!(out.steps, 1);
    }

    #[test]
    fn rewrite_leftmost_strategy() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let rel = Relation::new(&sys, w(2, &[1, 1]), vec![w(2, &[2])]).unwrap();
        let out = rewrite(&rel, &sys, &w(2, &[1, 1, 1]), false).unwrap();
        // Leftmost occurrence first: 111 -> z*21, which is already normal.
        assert_eq!(out.terms.len(), 1);
        assert_eq!(out.terms[0].word, w(2, &[2, 1]));
        assert_eq!(out.terms[0].coeff.total_degree(), 1);
    }

    #[test]
    fn rewrite_terminates_within_bound_and_avoids_head() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let head = w(2, &[1, 1]);
        // All valid replacements of any length.
        let body: Vec<Word> = [
            Word::empty(2),
            w(2, &[1]),
            w(2, &[2]),
            w(2, &[1, 2]),
            w(2, &[2, 1]),
            w(2, &[2, 2]),
        ]
        .into_iter()
        .filter(|c| Relation::new(&sys, head.clone(), vec![c.clone()]).is_ok())
        .collect();
        assert!(!body.is_empty());
        let rel = Relation::new(&sys, head.clone(), body).unwrap();
        let input = w(2, &[1, 1, 1, 1, 1, 1, 1, 1]);
        let out = rewrite(&rel, &sys, &input, false).unwrap();
        assert!(out.steps < out.step_bound, "{} steps", out.steps);
        assert!(all_avoid(&rel, &out.terms).unwrap());
        assert!(!out.terms.is_empty());
    }

    #[test]
    fn rewrite_of_avoiding_word_is_identity() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let rel = Relation::new(&sys, w(2, &[1, 1]), vec![w(2, &[2])]).unwrap();
        let input = w(2, &[1, 2, 1, 2]);
        let out = rewrite(&rel, &sys, &input, false).unwrap();
        assert_eq!(out.steps, 0);
        assert_eq!(out.terms.len(), 1);
        assert_eq!(out.terms[0].word, input);
        assert_eq!(out.terms[0].coeff, ZMonomial::one());
    }

    #[test]
    fn dimension_race_small_cutoff() {
        let sys = ScoreSystem::new(2, 2).unwrap();
        let report = dimension_race(&sys, &w(2, &[1, 1]), 5).unwrap();
        assert_eq!(report.free_dim, BigUint::from(63u32));
        // 1 + 2 + 3 + 5 + 8 + 13 avoiding words up to length 5.
        assert_eq!(report.avoiding_words, BigUint::from(32u32));
        assert_eq!(report.tag_degree_bound, BigUint::from(17u32 * 20));
        assert!(!report.inequality_closed);
        assert!(report.asymptotic_holds);
        assert!((report.growth_rate - 1.618033988749895).abs() < 1e-9);
    }

    #[test]
    fn binomial_helper() {
        assert_eq!(binomial(&BigUint::from(5u32), 2), BigUint::from(10u32));
        assert_eq!(binomial(&BigUint::from(345u32), 6), {
            // C(345,6) computed independently below.
            let mut acc = BigUint::one();
            for i in 0..6u32 {
                acc *= BigUint::from(345 - i);
            }
            acc / BigUint::from(720u32)
        });
    }
}
