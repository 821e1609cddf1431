//! The one-relator presentation of the genus-g surface group and Dehn's
//! algorithm for its word problem.
//!
//! The relator `r = [a1,b1]⋯[ag,bg]` with `[x,y] = x y x⁻¹ y⁻¹` contains
//! every letter exactly once as a cyclic word, so two cyclic subwords of
//! relator variants overlap in at most one letter. Pieces therefore have
//! length 1 against a relator of length `4g ≥ 8`, which is well inside the
//! range where greedy Dehn reduction decides the word problem.

use crate::error::{Error, Result};
use crate::word::{free_reduce, Letter, Word};

#[derive(Clone, Debug)]
pub struct Presentation {
    genus: usize,
    relator: Word,
    /// Every cyclic rotation of the relator and of its inverse.
    variants: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Genus(genus));
        }
        let relator: Vec<Letter> = (1..=genus as u16)
            .flat_map(|i| {
                let (a, b) = (Letter::a(i), Letter::b(i));
                [a, b, a.inv(), b.inv()]
            })
            .collect();
        let inverse = Word(relator.clone()).inverse().0;
        let n = relator.len();
        let mut variants = Vec::with_capacity(2 * n);
        for base in [&relator, &inverse] {
            for shift in 0..n {
                let mut v = base[shift..].to_vec();
                v.extend_from_slice(&base[..shift]);
                variants.push(v);
            }
        }
        Ok(Self {
            genus,
            relator: Word(relator),
            variants,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn relator_len(&self) -> usize {
        4 * self.genus
    }

    pub fn variants(&self) -> &[Vec<Letter>] {
        &self.variants
    }

    /// Variants whose first letter is `l`. Each letter occurs once in the
    /// relator and once in its inverse, so there are exactly two.
    pub(crate) fn variants_starting_with(&self, l: Letter) -> impl Iterator<Item = &[Letter]> {
        self.variants
            .iter()
            .filter(move |v| v[0] == l)
            .map(|v| v.as_slice())
    }

    pub fn generators(&self) -> impl Iterator<Item = Letter> + '_ {
        (1..=self.genus as u16).flat_map(|i| [Letter::a(i), Letter::b(i)])
    }

    /// All `4g` letters in the global letter order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.generators().flat_map(|l| [l, l.inv()]).collect();
        v.sort();
        v
    }

    /// Longest prefix of a variant matching `w` read from `start`,
    /// returned as `(variant, length)`. When `cyclic`, reading wraps around
    /// `w` but never covers more than `w.len()` letters.
    pub(crate) fn longest_match(
        &self,
        w: &[Letter],
        start: usize,
        cyclic: bool,
    ) -> Option<(&[Letter], usize)> {
        let n = w.len();
        let limit = if cyclic { n } else { n - start };
        let limit = limit.min(self.relator_len());
        let mut best: Option<(&[Letter], usize)> = None;
        for v in self.variants_starting_with(w[start]) {
            let mut m = 0;
            while m < limit && v[m] == w[(start + m) % n] {
                m += 1;
            }
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((v, m));
            }
        }
        best
    }

    /// Greedy Dehn reduction: repeatedly replaces any subword that is more
    /// than half of a relator variant by the inverse of the shorter
    /// complement, then freely reduces.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let half = 2 * self.genus;
        let mut cur = free_reduce(w).0;
        'outer: loop {
            for start in 0..cur.len() {
                if let Some((variant, m)) = self.longest_match(&cur, start, false) {
                    if m > half {
                        let complement = Word(variant[m..].to_vec()).inverse().0;
                        cur.splice(start..start + m, complement);
                        cur = free_reduce(&Word(cur)).0;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Word(cur)
    }

    /// Decides the word problem.
    pub fn is_identity(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        for (offset, l) in w.letters().iter().enumerate() {
            if l.handle() as usize > self.genus {
                return Err(Error::GeneratorOutOfRange {
                    offset,
                    handle: l.handle() as usize,
                    genus: self.genus,
                });
            }
        }
        Ok(())
    }
}
