//! First homology of the surface and its intersection form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Kind, Word};

/// Coordinates in `H_1(Σ_g; ℤ)` with respect to `A_1..A_g, B_1..B_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn zero(genus: usize) -> Self {
        Self(vec![0; 2 * genus])
    }

    /// Basis vector for the flat generator index `1..=2g`.
    pub fn basis(genus: usize, index: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[index - 1] = 1;
        v
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Exponent sums. Conjugation-invariant and zero on the relator.
    pub fn abelianize(w: &Word, genus: usize) -> Self {
        let mut v = Self::zero(genus);
        for l in w.letters() {
            let slot = match l.kind() {
                Kind::A => l.handle() as usize - 1,
                Kind::B => genus + l.handle() as usize - 1,
            };
            v.0[slot] += l.sign() as i64;
        }
        v
    }

    /// Greatest common divisor of the coordinates.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, &c| gcd(g, c.abs()))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The symplectic form with `⟨A_i, B_j⟩ = δ_ij` and `⟨A_i, A_j⟩ = ⟨B_i, B_j⟩ = 0`.
pub fn intersection_pairing(u: &HomologyVector, v: &HomologyVector) -> Result<i64> {
    if u.0.len() != v.0.len() || !u.0.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch {
            expected: u.0.len(),
            found: v.0.len(),
        });
    }
    let g = u.genus();
    Ok((0..g)
        .map(|i| u.0[i] * v.0[g + i] - u.0[g + i] * v.0[i])
        .sum())
}

impl Add for &HomologyVector {
    type Output = HomologyVector;

    fn add(self, rhs: Self) -> HomologyVector {
        HomologyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &HomologyVector {
    type Output = HomologyVector;

    fn sub(self, rhs: Self) -> HomologyVector {
        HomologyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &HomologyVector {
    type Output = HomologyVector;

    fn neg(self) -> HomologyVector {
        HomologyVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&HomologyVector> for i64 {
    type Output = HomologyVector;

    fn mul(self, rhs: &HomologyVector) -> HomologyVector {
        HomologyVector(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;
    use crate::word::parse_word;

    fn ab(s: &str) -> HomologyVector {
        HomologyVector::abelianize(&parse_word(s, 2).unwrap(), 2)
    }

    #[test]
    fn abelianization_examples() {
        assert!(ab("a1 b1 A1 B1").is_zero());
        assert_eq!(ab("a1^2 b2"), HomologyVector(vec![2, 0, 0, 1]));
        let p = Presentation::new(2).unwrap();
        assert!(HomologyVector::abelianize(p.relator(), 2).is_zero());
        assert_eq!(ab("a1^2 b2").content(), 1);
        assert_eq!(ab("a1^2 b2^-4").content(), 2);
    }

    #[test]
    fn pairing_table() {
        let e = |i| HomologyVector::basis(2, i);
        // a1, a2, b1, b2 at indices 1, 2, 3, 4
        assert_eq!(intersection_pairing(&e(1), &e(3)).unwrap(), 1);
        assert_eq!(intersection_pairing(&e(1), &e(2)).unwrap(), 0);
        assert_eq!(intersection_pairing(&e(3), &e(1)).unwrap(), -1);
        assert_eq!(intersection_pairing(&e(2), &e(4)).unwrap(), 1);
        assert_eq!(intersection_pairing(&e(1), &e(4)).unwrap(), 0);
        assert!(intersection_pairing(&e(1), &HomologyVector::zero(3)).is_err());
    }
}
