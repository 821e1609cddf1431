//! Conjugacy classes as canonical cyclic words.
//!
//! A word is first cyclically Dehn-reduced. Minimal-length cyclic words in
//! one conjugacy class are then connected by three moves: rotation, swapping
//! a subword that is exactly half of a relator variant for the inverse of
//! the other half, and conjugation by a single letter that sweeps across a
//! ring of relator regions, each sharing `2g − 1` letters with the word.
//! The canonical representative is the shortlex-least word in that closure.
//! If a move ever exposes a shorter word, the search restarts from it, so
//! the closure always lives at the minimal length.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{free_reduce, shortlex, Letter, Word};

/// A conjugacy class, identified by its canonical cyclic word. The empty
/// word is the trivial class `[e]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugacyClass {
    canonical: Word,
}

impl ConjugacyClass {
    pub fn identity() -> Self {
        Self {
            canonical: Word::identity(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }
}

impl Ord for ConjugacyClass {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(self.canonical.letters(), other.canonical.letters())
    }
}

impl PartialOrd for ConjugacyClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

/// `root^level` is conjugate to the input and `level` is maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRoot {
    pub root: Word,
    pub level: u32,
}

impl PrimitiveRoot {
    /// The representative `root^level`, a literal member of the class
    /// closure.
    pub fn power(&self) -> Word {
        self.root.pow(self.level as i64)
    }
}

/// Free reduction followed by stripping cancelling end letters.
pub fn cyclic_reduce(w: &Word) -> Vec<Letter> {
    let v = free_reduce(w).0;
    let (mut lo, mut hi) = (0, v.len());
    while hi - lo >= 2 && v[lo].cancels(v[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    v[lo..hi].to_vec()
}

pub(crate) fn rotate(v: &[Letter], shift: usize) -> Vec<Letter> {
    let mut r = Vec::with_capacity(v.len());
    r.extend_from_slice(&v[shift..]);
    r.extend_from_slice(&v[..shift]);
    r
}

pub(crate) fn least_rotation(v: &[Letter]) -> Vec<Letter> {
    (0..v.len().max(1))
        .map(|s| if v.is_empty() { Vec::new() } else { rotate(v, s) })
        .min()
        .unwrap_or_default()
}

/// Smallest period `d` dividing `v.len()` with `v` invariant under rotation by `d`.
fn smallest_period(v: &[Letter]) -> usize {
    let n = v.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (0..n).all(|i| v[i] == v[(i + d) % n]))
        .unwrap_or(n)
}

impl Presentation {
    /// Cyclic word with no cyclic subword longer than half a relator.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> Vec<Letter> {
        let half = 2 * self.genus();
        let mut cur = cyclic_reduce(&self.dehn_reduce(w));
        'outer: loop {
            for start in 0..cur.len() {
                if let Some((variant, m)) = self.longest_match(&cur, start, true) {
                    if m > half {
                        let mut next = Word(variant[m..].to_vec()).inverse().0;
                        next.extend_from_slice(&rotate(&cur, start)[m..]);
                        cur = cyclic_reduce(&self.dehn_reduce(&Word(next)));
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// All minimal-length cyclic words conjugate to `w`, each stored as its
    /// least rotation.
    pub fn conjugacy_closure(&self, w: &Word) -> BTreeSet<Vec<Letter>> {
        let half = 2 * self.genus();
        let mut start = self.cyclic_dehn_reduce(w);
        'restart: loop {
            let n = start.len();
            let mut seen = BTreeSet::new();
            let first = least_rotation(&start);
            seen.insert(first.clone());
            if n < half {
                return seen;
            }
            let mut queue = VecDeque::from([first]);
            let mut neighbours = Vec::new();
            while let Some(c) = queue.pop_front() {
                for pos in 0..n {
                    let Some((variant, m)) = self.longest_match(&c, pos, true) else {
                        continue;
                    };
                    if m < half {
                        continue;
                    }
                    let mut swapped = Word(variant[half..].to_vec()).inverse().0;
                    swapped.extend_from_slice(&rotate(&c, pos)[half..]);
                    neighbours.push(swapped);
                }
                neighbours.extend(self.ring_moves(&c));
                for next in neighbours.drain(..) {
                    let reduced = self.cyclic_dehn_reduce(&Word(next));
                    if reduced.len() < n {
                        start = reduced;
                        continue 'restart;
                    }
                    let key = least_rotation(&reduced);
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
            return seen;
        }
    }

    /// Words `p · c · p⁻¹` obtained by pushing a letter `p` once around the
    /// cyclic word: each block `x` of `2g − 1` letters lies in a relator
    /// variant `p x q y⁻¹`, so `p x = y q⁻¹` and the carried letter becomes
    /// `q⁻¹`. The move applies when the carried letter returns to `p`.
    fn ring_moves(&self, c: &[Letter]) -> Vec<Vec<Letter>> {
        let block = 2 * self.genus() - 1;
        let n = c.len();
        let mut out = Vec::new();
        if n == 0 || !n.is_multiple_of(block) {
            return out;
        }
        for shift in 0..block {
            let rotated = rotate(c, shift);
            for p in self.letters() {
                let mut carry = p;
                let mut next = Vec::with_capacity(n);
                let complete = rotated.chunks(block).all(|x| {
                    let Some(v) = self
                        .variants_starting_with(carry)
                        .find(|v| v[1..=block] == *x)
                    else {
                        return false;
                    };
                    next.extend(v[block + 2..].iter().rev().map(|l| l.inv()));
                    carry = v[block + 1].inv();
                    true
                });
                if complete && carry == p {
                    out.push(next);
                }
            }
        }
        out
    }

    pub fn canonical_class(&self, w: &Word) -> ConjugacyClass {
        let closure = self.conjugacy_closure(w);
        let canonical = closure.into_iter().next().unwrap_or_default();
        ConjugacyClass {
            canonical: Word(canonical),
        }
    }

    pub fn are_conjugate(&self, w1: &Word, w2: &Word) -> bool {
        self.canonical_class(w1) == self.canonical_class(w2)
    }

    /// Maximal `level` with `w` conjugate to `root^level`.
    ///
    /// Every minimal cyclic representative is tested for periodicity; the
    /// best candidate is then confirmed with the conjugacy test.
    pub fn primitive_root(&self, w: &Word) -> Result<PrimitiveRoot> {
        let closure = self.conjugacy_closure(w);
        let mut best: Option<(usize, &Vec<Letter>)> = None;
        for member in &closure {
            if member.is_empty() {
                return Err(Error::LevelOfIdentity);
            }
            let d = smallest_period(member);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, member));
            }
        }
        let (d, member) = best.ok_or(Error::LevelOfIdentity)?;
        let root = PrimitiveRoot {
            root: Word(member[..d].to_vec()),
            level: (member.len() / d) as u32,
        };
        debug_assert!(self.are_conjugate(&root.power(), w));
        Ok(root)
    }

    pub fn level(&self, w: &Word) -> Result<u32> {
        self.primitive_root(w).map(|r| r.level)
    }
}
