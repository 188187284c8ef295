//! Text forms accepted on the command line and in files.
//!
//! Three small hand-rolled parsers:
//! * polynomial specs: term lists like `+3*x1.x2.x1 -1*x2`, the standard
//!   polynomial shorthand `s4`, and bracket trees like `[[x1,x2],x1]`;
//! * letter lists for patterns and words: `1,2,1` (or `1.2.1`, or `e` for
//!   the empty word);
//! * monic univariate polynomials for characteristic-polynomial censuses:
//!   `x^2+x+1`.
//!
//! Printing is canonical (term order, signs, reduced coefficients) and
//! `parse(print(p)) == p` holds for every polynomial.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::poly::{lie_expand, standard_polynomial, BracketExpr, RatPoly};
use crate::words::Word;

/// Nesting cap for bracket trees; keeps recursive descent off deep stacks.
const MAX_BRACKET_DEPTH: u32 = 64;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { bytes: text.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { at: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.bytes.len()
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn small_uint(&mut self, what: &str, max: u64) -> Result<u64> {
        let at = self.pos;
        let text = self.digits()?;
        let v: u64 = text
            .parse()
            .map_err(|_| Error::Parse { at, msg: format!("{what} out of range") })?;
        if v > max {
            return Err(Error::Parse { at, msg: format!("{what} out of range") });
        }
        Ok(v)
    }

    /// A generator token `x<k>` with `k` in `1..=255`.
    fn generator(&mut self) -> Result<u8> {
        self.expect(b'x')?;
        let idx = self.small_uint("generator index", 255)?;
        if idx == 0 {
            return Err(self.err("generator indices start at 1"));
        }
        Ok(idx as u8)
    }

    /// A word token: `x1.x2.x1`, or `1` for the empty word.
    fn word_letters(&mut self) -> Result<Vec<u8>> {
        if self.eat(b'1') {
            // Bare `1` is the empty word; `1` may not be followed by more digits.
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                return Err(self.err("unexpected digits after '1'"));
            }
            return Ok(Vec::new());
        }
        let mut letters = vec![self.generator()?];
        while self.eat(b'.') {
            letters.push(self.generator()?);
        }
        Ok(letters)
    }

    /// Unsigned rational magnitude: `digits` or `digits/digits`.
    fn magnitude(&mut self) -> Result<Rational> {
        let at = self.pos;
        let num: BigInt = self
            .digits()?
            .parse()
            .map_err(|_| Error::Parse { at, msg: "bad integer".into() })?;
        if self.eat(b'/') {
            let at = self.pos;
            let den: BigInt = self
                .digits()?
                .parse()
                .map_err(|_| Error::Parse { at, msg: "bad integer".into() })?;
            if den == BigInt::from(0) {
                return Err(Error::Parse { at, msg: "zero denominator".into() });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn bracket_expr(&mut self, depth: u32) -> Result<BracketExpr> {
        if depth > MAX_BRACKET_DEPTH {
            return Err(self.err("bracket expression nested too deeply"));
        }
        self.skip_ws();
        if self.eat(b'[') {
            let left = self.bracket_expr(depth + 1)?;
            self.skip_ws();
            self.expect(b',')?;
            let right = self.bracket_expr(depth + 1)?;
            self.skip_ws();
            self.expect(b']')?;
            Ok(BracketExpr::Bracket(Box::new(left), Box::new(right)))
        } else {
            Ok(BracketExpr::Gen(self.generator()?))
        }
    }
}

/// Parses a polynomial spec: a term list, `s<m>`, or a bracket tree.
///
/// The alphabet size is the largest generator mentioned, or `n_hint` when
/// that is larger; a hint smaller than a mentioned generator is an error.
pub fn parse_poly_spec(text: &str, n_hint: Option<u8>) -> Result<RatPoly> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse { at: 0, msg: "empty polynomial spec".into() });
    }

    // Standard polynomial shorthand.
    if let Some(rest) = trimmed.strip_prefix('s') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let m: u32 = rest
                .parse()
                .map_err(|_| Error::Parse { at: 1, msg: "bad standard degree".into() })?;
            let poly = standard_polynomial(m)?;
            return widen_to_hint(poly, n_hint);
        }
    }

    if trimmed.starts_with('[') {
        let mut cur = Cursor::new(trimmed);
        let expr = cur.bracket_expr(0)?;
        if !cur.at_end() {
            return Err(cur.err("trailing input after bracket"));
        }
        let n = expr.max_generator().max(n_hint.unwrap_or(1));
        check_hint(expr.max_generator(), n_hint)?;
        return lie_expand(&expr, n);
    }

    parse_term_list(trimmed, n_hint)
}

fn check_hint(max_used: u8, n_hint: Option<u8>) -> Result<()> {
    if let Some(hint) = n_hint {
        if hint < max_used {
            return Err(Error::pre(format!(
                "polynomial uses x{max_used} but alphabet size {hint} was requested"
            )));
        }
    }
    Ok(())
}

fn widen_to_hint(poly: RatPoly, n_hint: Option<u8>) -> Result<RatPoly> {
    check_hint(poly.alphabet(), n_hint)?;
    match n_hint {
        Some(hint) if hint > poly.alphabet() => poly.widen(hint),
        _ => Ok(poly),
    }
}

fn parse_term_list(text: &str, n_hint: Option<u8>) -> Result<RatPoly> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Vec<u8>, Rational)> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let sign = if cur.eat(b'-') {
            -1
        } else if cur.eat(b'+') {
            1
        } else if first {
            1
        } else {
            return Err(cur.err("expected '+' or '-' between terms"));
        };
        first = false;
        cur.skip_ws();
        let (letters, magnitude) = match cur.peek() {
            Some(b'x') => (cur.word_letters()?, Rational::from_integer(1.into())),
            Some(b) if b.is_ascii_digit() => {
                let mag = cur.magnitude()?;
                if cur.eat(b'*') {
                    (cur.word_letters()?, mag)
                } else {
                    (Vec::new(), mag)
                }
            }
            _ => return Err(cur.err("expected a coefficient or a word")),
        };
        let coeff = if sign < 0 { -magnitude } else { magnitude };
        terms.push((letters, coeff));
    }
    if terms.is_empty() {
        return Err(Error::Parse { at: 0, msg: "no terms".into() });
    }
    let max_used = terms
        .iter()
        .flat_map(|(ls, _)| ls.iter().copied())
        .max()
        .unwrap_or(1);
    check_hint(max_used, n_hint)?;
    let n = max_used.max(n_hint.unwrap_or(1)).max(1);
    RatPoly::from_terms(
        n,
        (),
        terms
            .into_iter()
            .map(|(ls, c)| Ok((Word::new(n, ls)?, c)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Parses a letter list like `1,2,1` or `1.2.1`; `e` is the empty word.
pub fn parse_letters(text: &str, n: u8) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed == "e" {
        return Word::new(n, Vec::new());
    }
    let mut letters = Vec::new();
    for (i, piece) in trimmed.split([',', '.']).enumerate() {
        let piece = piece.trim();
        let letter: u8 = piece.parse().map_err(|_| Error::Parse {
            at: i,
            msg: format!("bad letter '{piece}'"),
        })?;
        letters.push(letter);
    }
    Word::new(n, letters)
}

/// Parses a univariate polynomial in `x` with integer coefficients, e.g.
/// `x^2+x+1` or `x^3 + 2*x`. Returns coefficients from degree 0 upward.
pub fn parse_univariate(text: &str) -> Result<Vec<i64>> {
    let mut cur = Cursor::new(text.trim());
    let mut coeffs: Vec<i64> = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let sign: i64 = if cur.eat(b'-') {
            -1
        } else if cur.eat(b'+') {
            1
        } else if first {
            1
        } else {
            return Err(cur.err("expected '+' or '-' between terms"));
        };
        first = false;
        cur.skip_ws();
        let coeff: i64 = match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = cur.small_uint("coefficient", i64::MAX as u64)? as i64;
                cur.skip_ws();
                cur.eat(b'*');
                c
            }
            Some(b'x') => 1,
            _ => return Err(cur.err("expected a term")),
        };
        cur.skip_ws();
        let exp: usize = if cur.eat(b'x') {
            if cur.eat(b'^') {
                cur.small_uint("exponent", 64)? as usize
            } else {
                1
            }
        } else {
            0
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = coeffs[exp]
            .checked_add(sign * coeff)
            .ok_or_else(|| Error::Parse { at: cur.pos, msg: "coefficient overflow".into() })?;
    }
    if coeffs.is_empty() {
        return Err(Error::Parse { at: 0, msg: "empty polynomial".into() });
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    Ok(coeffs)
}
