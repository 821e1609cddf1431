//! Letters and words over the standard generators `a1 b1 … ag bg` of a
//! surface group, plus the text grammar used everywhere for input and output.
//!
//! Grammar: `word := (term (" " term)*)?`, `term := gen ("^" signed-int)?`,
//! `gen := ("a"|"b"|"A"|"B") index`. Uppercase is the inverse shorthand and
//! the empty string is the identity. Runs of whitespace are accepted as
//! separators.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
}

/// A signed generator.
///
/// Field order matters: the derived `Ord` is the global letter order
/// `a1 < b1 < a2 < … < bg < A1 < B1 < … < Bg`, which every shortlex
/// comparison in the crate relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    inverse: bool,
    handle: u16,
    kind: Kind,
}

impl Letter {
    pub fn new(kind: Kind, handle: u16, inverse: bool) -> Self {
        assert!(handle >= 1, "handle indices start at 1");
        Self { inverse, handle, kind }
    }

    pub fn a(handle: u16) -> Self {
        Self::new(Kind::A, handle, false)
    }

    pub fn b(handle: u16) -> Self {
        Self::new(Kind::B, handle, false)
    }

    /// Builds a letter from the flat generator numbering: `1..=g` are
    /// `A_1..A_g`, `g+1..=2g` are `B_1..B_g`.
    pub fn from_index(index: usize, genus: usize, sign: i8) -> Option<Self> {
        if index == 0 || index > 2 * genus || sign == 0 {
            return None;
        }
        let (kind, handle) = if index <= genus {
            (Kind::A, index)
        } else {
            (Kind::B, index - genus)
        };
        Some(Self::new(kind, handle as u16, sign < 0))
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    pub fn handle(self) -> u16 {
        self.handle
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Position in the flat numbering `1..=2g`.
    pub fn index(self, genus: usize) -> usize {
        match self.kind {
            Kind::A => self.handle as usize,
            Kind::B => genus + self.handle as usize,
        }
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.kind == other.kind && self.handle == other.handle && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.kind, self.inverse) {
            (Kind::A, false) => 'a',
            (Kind::B, false) => 'b',
            (Kind::A, true) => 'A',
            (Kind::B, true) => 'B',
        };
        write!(f, "{}{}", c, self.handle)
    }
}

/// A finite, not necessarily reduced, sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// `self^n` for any integer `n`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Self(v)
    }

    /// `u · self · u⁻¹`, freely reduced.
    pub fn conjugate_by(&self, u: &Word) -> Self {
        free_reduce(&u.concat(self).concat(&u.inverse()))
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Highest handle index used, i.e. the smallest genus this word lives in.
    pub fn min_genus(&self) -> usize {
        self.0.iter().map(|l| l.handle as usize).max().unwrap_or(0)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Length first, then lexicographic in the global letter order.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Parses a word in the text grammar, checking generator indices against
/// `genus`. No reduction is performed.
pub fn parse_word(text: &str, genus: usize) -> Result<Word, Error> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();

    let syntax = |offset: usize, message: &str| Error::Syntax {
        offset,
        message: message.to_string(),
    };

    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        let start = pos;
        let (kind, inverse) = match bytes[pos] {
            b'a' => (Kind::A, false),
            b'b' => (Kind::B, false),
            b'A' => (Kind::A, true),
            b'B' => (Kind::B, true),
            _ => return Err(syntax(pos, "expected generator a, b, A or B")),
        };
        pos += 1;
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits == pos {
            return Err(syntax(pos, "expected generator index"));
        }
        let handle: usize = text[digits..pos]
            .parse()
            .map_err(|_| syntax(digits, "generator index out of range"))?;
        if handle == 0 || handle > genus {
            return Err(Error::GeneratorOutOfRange {
                offset: start,
                handle,
                genus,
            });
        }
        let mut exponent: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let exp_start = pos;
            if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
            }
            let exp_digits = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if exp_digits == pos {
                return Err(syntax(pos, "expected integer exponent"));
            }
            exponent = text[exp_start..pos]
                .parse()
                .map_err(|_| syntax(exp_start, "exponent out of range"))?;
            if exponent.unsigned_abs() > 1 << 16 {
                return Err(syntax(exp_start, "exponent out of range"));
            }
        }
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(syntax(pos, "expected whitespace between terms"));
        }
        let letter = Letter::new(kind, handle as u16, inverse);
        let letter = if exponent < 0 { letter.inv() } else { letter };
        letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(index: usize, sign: i8) -> Letter {
        Letter::from_index(index, 2, sign).unwrap()
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(parse_word("a1 b1", 2).unwrap().0, vec![l(1, 1), l(3, 1)]);
        assert_eq!(parse_word("A1", 2).unwrap().0, vec![l(1, -1)]);
        assert_eq!(parse_word("a1^-2", 2).unwrap().0, vec![l(1, -1), l(1, -1)]);
        assert_eq!(parse_word("B2^-1", 2).unwrap().0, vec![l(4, 1)]);
        assert!(parse_word("", 2).unwrap().is_empty());
        assert!(parse_word("a1^0", 2).unwrap().is_empty());
    }

    #[test]
    fn reports_offsets() {
        match parse_word("a1 c2", 2) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("a1 b3", 2) {
            Err(Error::GeneratorOutOfRange { offset, handle, .. }) => {
                assert_eq!((offset, handle), (3, 3))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_word("a", 2), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_word("a1b1", 2), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_word("a1^", 2), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_word("a0", 2), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn display_round_trips() {
        let w = parse_word("a1 B2 A1^2 b1", 2).unwrap();
        assert_eq!(w.to_string(), "a1 B2 A1 A1 b1");
        assert_eq!(parse_word(&w.to_string(), 2).unwrap(), w);
    }

    #[test]
    fn letter_order() {
        let order = ["a1", "b1", "a2", "b2", "A1", "B1", "A2", "B2"];
        let letters: Vec<Letter> = order
            .iter()
            .map(|s| parse_word(s, 2).unwrap().0[0])
            .collect();
        assert!(letters.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn free_reduction() {
        let w = Word(vec![l(1, 1), l(1, -1), l(4, 1)]);
        assert_eq!(free_reduce(&w).0, vec![l(4, 1)]);
        assert!(free_reduce(&Word::identity()).is_empty());
        let w = parse_word("a1 b1 B1 a2 A2 A1 b2", 2).unwrap();
        assert_eq!(free_reduce(&w).to_string(), "b2");
    }

    #[test]
    fn flat_indices() {
        let b1 = Letter::from_index(3, 2, 1).unwrap();
        assert_eq!((b1.kind(), b1.handle()), (Kind::B, 1));
        assert_eq!(b1.index(2), 3);
        assert!(Letter::from_index(5, 2, 1).is_none());
    }
}
