//! Words over a finite alphabet of generators: the monomials of the free
//! associative algebra.
//!
//! Words order by degree first and lexicographically within each degree.
//! Everything downstream that iterates over words (term maps, trie
//! evaluation, the census bound) relies on this exact order, so it is the
//! `Ord` instance rather than a comparator passed around.

use crate::error::{Error, Result};

/// Default cap on how many basis words a single call may produce.
pub const DEFAULT_BASIS_CAP: u64 = 1 << 22;

/// A monomial: a finite sequence of generator indices in `1..=n`.
///
/// The empty word is the multiplicative identity and has degree 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
    n: u8,
}

impl Word {
    pub fn new(n: u8, letters: impl Into<Vec<u8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::pre("alphabet size must be at least 1"));
        }
        let letters = letters.into();
        for &letter in &letters {
            if letter == 0 || letter > n {
                return Err(Error::LetterOutOfRange { letter, n });
            }
        }
        Ok(Word { letters, n })
    }

    pub fn empty(n: u8) -> Self {
        Word { letters: Vec::new(), n }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; the alphabets must agree.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.n != other.n {
            return Err(Error::AlphabetMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters, n: self.n })
    }

    /// Reinterprets this word over a larger alphabet.
    pub fn widen(&self, n: u8) -> Result<Word> {
        if n < self.n && self.letters.iter().any(|&l| l > n) {
            return Err(Error::pre(format!(
                "cannot shrink alphabet to {n}: word uses larger letters"
            )));
        }
        Ok(Word { letters: self.letters.clone(), n: n.max(self.n) })
    }

    /// Monomial form, e.g. `x1.x2.x1`; the empty word prints as `1`.
    pub fn monomial_string(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_owned();
        }
        self.letters
            .iter()
            .map(|l| format!("x{l}"))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Bare letter form, e.g. `1.2.1`; the empty word prints as `e`.
    pub fn letters_string(&self) -> String {
        if self.letters.is_empty() {
            return "e".to_owned();
        }
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.monomial_string())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Number of words of degree at most `d` over `n` letters:
/// `(n^(d+1) - 1) / (n - 1)`, or `d + 1` when `n = 1`.
pub fn basis_size(n: u8, d: usize) -> u128 {
    if n == 1 {
        return d as u128 + 1;
    }
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=d {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(n as u128);
    }
    total
}

/// All words of degree at most `d`, in degree-then-lex order, starting with
/// the empty word. Uses [`DEFAULT_BASIS_CAP`].
pub fn monomial_basis(n: u8, d: usize) -> Result<Vec<Word>> {
    monomial_basis_capped(n, d, DEFAULT_BASIS_CAP)
}

pub fn monomial_basis_capped(n: u8, d: usize, cap: u64) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(Error::pre("alphabet size must be at least 1"));
    }
    let size = basis_size(n, d);
    if size > cap as u128 {
        return Err(Error::TermBudget { required: size, cap: cap as u128 });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut layer = vec![Word::empty(n)];
    out.extend(layer.iter().cloned());
    for _ in 0..d {
        let mut next = Vec::with_capacity(layer.len() * n as usize);
        for word in &layer {
            for letter in 1..=n {
                let mut letters = word.letters.clone();
                letters.push(letter);
                next.push(Word { letters, n });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}
