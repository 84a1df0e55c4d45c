//! Reduced words in the free group on `x1, x2, ...`.
//!
//! Words are stored run-length encoded as syllables `x_var^exp`; every
//! constructor reduces, so a [`Word`] is always in normal form.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    /// 1-based variable index.
    pub var: u32,
    pub exp: i64,
}

impl Syllable {
    pub fn new(var: u32, exp: i64) -> Self {
        Syllable { var, exp }
    }
}

/// A freely reduced word: adjacent syllables never share a variable and no
/// exponent is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// The single-variable word `x_var^exp` (empty when `exp == 0`).
    pub fn power(var: u32, exp: i64) -> Self {
        Word::reduce([Syllable::new(var, exp)])
    }

    /// Free reduction of an arbitrary syllable sequence.
    pub fn reduce(raw: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.var == s.var => {
                    top.exp += s.exp;
                    if top.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s),
            }
        }
        Word { syllables: out }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Largest variable index occurring, 0 for the empty word.
    pub fn arity(&self) -> usize {
        self.syllables.iter().map(|s| s.var as usize).max().unwrap_or(0)
    }

    /// Reduced length in the free group.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn invert(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|s| Syllable::new(s.var, -s.exp)).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(self.syllables.iter().chain(other.syllables.iter()).copied())
    }

    /// Replace `x_i` by `images[i - 1]` and reduce.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        if images.len() < self.arity() {
            return Err(Error::invalid(format!(
                "substitution needs {} images, got {}",
                self.arity(),
                images.len()
            )));
        }
        let inverses: Vec<Word> = images.iter().map(Word::invert).collect();
        let mut raw = Vec::new();
        for s in &self.syllables {
            let i = s.var as usize - 1;
            let piece = if s.exp > 0 { &images[i] } else { &inverses[i] };
            for _ in 0..s.exp.unsigned_abs() {
                raw.extend_from_slice(&piece.syllables);
            }
        }
        Ok(Word::reduce(raw))
    }

    /// Renumber variables: `x_i` becomes `x_{offset + i}`.
    pub fn shift(&self, offset: u32) -> Word {
        Word { syllables: self.syllables.iter().map(|s| Syllable::new(s.var + offset, s.exp)).collect() }
    }

    /// Value of the word map at `args` (`args[i]` is substituted for `x_{i+1}`).
    ///
    /// Panics if `args` is shorter than the arity.
    pub fn evaluate(&self, g: &GroupTable, args: &[Elem]) -> Elem {
        self.syllables.iter().fold(0, |acc, s| g.mul(acc, g.pow(args[s.var as usize - 1], s.exp)))
    }
}

/// The word `v = w(x⁻¹yz) · w(z)⁻¹ · w(y)⁻¹ · w(x)` in `3d` variables with
/// `x_i ↦ i`, `y_i ↦ d + i`, `z_i ↦ 2d + i`.
///
/// A tuple solves `w(x⁻¹yz) = w(x)⁻¹ w(y) w(z)` iff `v` evaluates to the
/// identity on it. `d` must be at least the arity of `w`.
pub fn derived_word_with_arity(w: &Word, d: usize) -> Result<Word> {
    if d < w.arity() {
        return Err(Error::invalid(format!("d = {d} is smaller than the word arity {}", w.arity())));
    }
    let d32 = u32::try_from(d).map_err(|_| Error::invalid("arity too large"))?;
    let images: Vec<Word> = (1..=d32)
        .map(|i| {
            Word::reduce([Syllable::new(i, -1), Syllable::new(d32 + i, 1), Syllable::new(2 * d32 + i, 1)])
        })
        .collect();
    let lhs = w.substitute(&images)?;
    let at_y = w.shift(d32);
    let at_z = w.shift(2 * d32);
    Ok(lhs.concat(&at_z.invert()).concat(&at_y.invert()).concat(w))
}

/// [`derived_word_with_arity`] with `d` equal to the arity of `w`.
pub fn derived_word(w: &Word) -> Word {
    derived_word_with_arity(w, w.arity()).expect("arity is always sufficient")
}

/// Whether the derived equation of `w` is a nontrivial word equation.
pub fn is_nontrivial_derived(w: &Word) -> bool {
    !derived_word(w).is_empty()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", s.var)?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn digits(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a decimal number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn term(&mut self) -> Result<Syllable> {
        match self.peek() {
            Some(b'x' | b'X') => self.pos += 1,
            Some(c) => return Err(Error::parse(self.pos, format!("expected 'x', found {:?}", c as char))),
            None => return Err(Error::parse(self.pos, "expected 'x', found end of input")),
        }
        let idx_pos = self.pos;
        let var = self.digits()?;
        if var == 0 || var > u32::MAX as u64 / 4 {
            return Err(Error::parse(idx_pos, "variable index out of range"));
        }
        let mut exp: i64 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp_pos = self.pos;
            let negative = self.peek() == Some(b'-');
            if negative {
                self.pos += 1;
            }
            let magnitude = self.digits()?;
            if magnitude == 0 {
                return Err(Error::parse(exp_pos, "exponent 0 is not allowed"));
            }
            if magnitude > i32::MAX as u64 {
                return Err(Error::parse(exp_pos, "exponent out of range"));
            }
            exp = if negative { -(magnitude as i64) } else { magnitude as i64 };
        }
        Ok(Syllable::new(var as u32, exp))
    }
}

/// Parse a word such as `x1*x2^-1 x1^3` and reduce it.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut raw = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Ok(Word::empty());
    }
    raw.push(cur.term()?);
    loop {
        let had_ws = cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'*') => {
                cur.pos += 1;
                cur.skip_ws();
            }
            Some(_) if had_ws => {}
            Some(c) => {
                return Err(Error::parse(
                    cur.pos,
                    format!("expected '*' or whitespace, found {:?}", c as char),
                ))
            }
        }
        raw.push(cur.term()?);
    }
    Ok(Word::reduce(raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn syl(v: &[(u32, i64)]) -> Vec<Syllable> {
        v.iter().map(|&(a, b)| Syllable::new(a, b)).collect()
    }

    #[test]
    fn parse_examples() {
        let comm = w("x1*x2*x1^-1*x2^-1");
        assert_eq!(comm.len(), 4);
        assert_eq!(comm.arity(), 2);
        assert_eq!(w("x1^2*x1").syllables(), syl(&[(1, 3)]).as_slice());
        assert!(w("x1*x1^-1").is_empty());
        assert_eq!(w("X1 x2 * x3").to_string(), "x1*x2*x3");
        assert!(w("   ").is_empty());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_word("x1^0").unwrap_err(), Error::parse(3, "exponent 0 is not allowed"));
        assert!(matches!(parse_word("x0"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_word("x1x2"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_word("x1*"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_word("y1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_word("x1^"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_word("x1^99999999999"), Err(Error::Parse { .. })));
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce(syl(&[(1, 1), (1, -1)])).is_empty());
        assert_eq!(
            Word::reduce(syl(&[(1, 2), (2, 1), (2, -1), (1, 1)])).syllables(),
            syl(&[(1, 3)]).as_slice()
        );
        assert_eq!(Word::reduce(syl(&[(2, 0), (1, 1)])).syllables(), syl(&[(1, 1)]).as_slice());
    }

    #[test]
    fn invert_examples() {
        assert!(Word::empty().invert().is_empty());
        assert_eq!(w("x1^2").invert(), w("x1^-2"));
        assert_eq!(w("x1*x2^-3").invert().syllables(), syl(&[(2, 3), (1, -1)]).as_slice());
    }

    #[test]
    fn substitute_examples() {
        let v = w("x1^-1*x2*x3^4");
        assert_eq!(w("x1").substitute(std::slice::from_ref(&v)).unwrap(), v);
        assert_eq!(w("x1^2").substitute(&[w("x1^-1*x2")]).unwrap(), w("x1^-1*x2*x1^-1*x2"));
        assert!(Word::reduce(syl(&[(1, 1), (1, -1)])).substitute(&[]).unwrap().is_empty());
        assert!(w("x1*x2").substitute(&[w("x1")]).is_err());
    }

    #[test]
    fn derived_examples() {
        assert!(derived_word(&w("x1")).is_empty());
        let v = derived_word(&w("x1*x2"));
        assert_eq!(v, w("x1^-1*x3*x5*x2^-1*x4*x5^-1*x4^-1*x3^-1*x1*x2"));
        assert_eq!(v.len(), 10);
        let v = derived_word(&w("x1^2"));
        assert_eq!(v, w("x1^-1*x2*x3*x1^-1*x2*x3^-1*x2^-2*x1^2"));
        assert_eq!(v.len(), 10);
    }

    #[test]
    fn derived_with_padding_uses_blocks_of_d() {
        let v = derived_word_with_arity(&w("x1"), 2).unwrap();
        assert!(v.is_empty());
        let v = derived_word_with_arity(&Word::empty(), 1).unwrap();
        assert!(v.is_empty());
        assert!(derived_word_with_arity(&w("x2"), 1).is_err());
        let v = derived_word_with_arity(&w("x1^2"), 2).unwrap();
        assert_eq!(v, w("x1^-1*x3*x5*x1^-1*x3*x5^-1*x3^-2*x1^2"));
    }

    #[test]
    fn nontriviality() {
        assert!(!is_nontrivial_derived(&w("x1")));
        assert!(is_nontrivial_derived(&w("x1^2")));
        assert!(is_nontrivial_derived(&w("x1^-1")));
        assert!(is_nontrivial_derived(&w("x1*x2")));
    }
}
