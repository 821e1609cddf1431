//! Isometries of the upper half-plane and the Fuchsian representation of
//! the surface group.

mod representation;
pub(crate) mod tiling;

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use representation::Representation;

/// Default tolerance for identity and parabolic tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A real 2×2 matrix acting by `z ↦ (az + b)/(cz + d)`. `M` and `-M` are
/// the same isometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mobius {
    pub const IDENTITY: Mobius = Mobius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// The determinant when it can be computed to about 1e-12 relative
    /// accuracy; for large entries `ad − bc` is dominated by rounding.
    fn reliable_det(&self) -> Option<f64> {
        let scale = (self.a * self.d).abs() + (self.b * self.c).abs();
        let det = self.det();
        (scale <= 1e4 * det.abs()).then_some(det)
    }

    /// Rescales to determinant 1. The determinant must be positive. Matrices
    /// whose determinant is lost to cancellation are returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.reliable_det() {
            Some(det) if det > 0.0 => {
                let s = det.sqrt().recip();
                Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
            }
            _ => *self,
        }
    }

    /// Inverse, assuming determinant 1 when it cannot be computed reliably.
    pub fn inverse(&self) -> Self {
        let det = self.reliable_det().unwrap_or(1.0);
        Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Mobius::IDENTITY, |acc, _| acc * base)
    }

    /// Conjugation by the reflection `z ↦ -z̄`.
    pub fn mirrored(&self) -> Self {
        Self::new(self.a, -self.b, -self.c, self.d)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_boundary(&self, x: Boundary) -> Boundary {
        match x {
            Boundary::Infinity if self.c == 0.0 => Boundary::Infinity,
            Boundary::Infinity => Boundary::Finite(self.a / self.c),
            Boundary::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// `min(‖M − I‖∞, ‖M + I‖∞)`.
    pub fn distance_from_identity(&self) -> f64 {
        let plus = (self.a - 1.0)
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max((self.d - 1.0).abs());
        let minus = (self.a + 1.0)
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max((self.d + 1.0).abs());
        plus.min(minus)
    }

    /// Entry-wise distance in PSL(2,ℝ), i.e. up to sign.
    pub fn distance(&self, other: &Mobius) -> f64 {
        let d = |s: f64| {
            (self.a - s * other.a)
                .abs()
                .max((self.b - s * other.b).abs())
                .max((self.c - s * other.c).abs())
                .max((self.d - s * other.d).abs())
        };
        d(1.0).min(d(-1.0))
    }
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, r: Mobius) -> Mobius {
        Mobius::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:.16e}, {:.16e}, {:.16e}, {:.16e})",
            self.a, self.b, self.c, self.d
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Classification by `|trace|` against 2, after the identity test.
pub fn classify(m: &Mobius, tol: f64) -> IsometryKind {
    let m = m.normalized();
    if m.distance_from_identity() <= tol {
        return IsometryKind::Identity;
    }
    let t = m.trace().abs();
    if (t - 2.0).abs() <= tol {
        IsometryKind::Parabolic
    } else if t < 2.0 {
        IsometryKind::Elliptic
    } else {
        IsometryKind::Hyperbolic
    }
}

/// `2·arccosh(|tr|/2)`, the distance moved along the axis.
pub fn translation_length(m: &Mobius) -> Result<f64> {
    let kind = classify(m, DEFAULT_TOLERANCE);
    if kind != IsometryKind::Hyperbolic {
        return Err(Error::NotHyperbolic(kind));
    }
    Ok(2.0 * (m.normalized().trace().abs() / 2.0).acosh())
}

/// A point of `∂ℍ = ℝ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    Finite(f64),
    Infinity,
}

impl Boundary {
    pub fn approx_eq(&self, other: &Boundary, tol: f64) -> bool {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => true,
            (Boundary::Finite(x), Boundary::Finite(y)) => (x - y).abs() <= tol * (1.0 + x.abs()),
            _ => false,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Finite(x) => write!(f, "{x:.17e}"),
            Boundary::Infinity => f.write_str("inf"),
        }
    }
}

/// An oriented geodesic: the isometry translates from `repelling` toward
/// `attracting`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    pub attracting: Boundary,
    pub repelling: Boundary,
}

impl Geodesic {
    pub fn reversed(&self) -> Self {
        Self {
            attracting: self.repelling,
            repelling: self.attracting,
        }
    }

    /// An isometry of determinant 1 taking `repelling` to 0 and
    /// `attracting` to ∞, so the geodesic becomes the upward imaginary axis.
    pub fn normalizer(&self) -> Mobius {
        match (self.repelling, self.attracting) {
            (Boundary::Finite(p), Boundary::Infinity) => Mobius::new(1.0, -p, 0.0, 1.0),
            (Boundary::Infinity, Boundary::Finite(q)) => Mobius::new(0.0, -1.0, 1.0, -q),
            (Boundary::Finite(p), Boundary::Finite(q)) => {
                if p > q {
                    Mobius::new(1.0, -p, 1.0, -q).normalized()
                } else {
                    Mobius::new(-1.0, p, 1.0, -q).normalized()
                }
            }
            (Boundary::Infinity, Boundary::Infinity) => unreachable!("degenerate geodesic"),
        }
    }
}

/// Fixed points of a hyperbolic isometry, oriented by the derivative there.
pub fn axis(m: &Mobius) -> Result<Geodesic> {
    let kind = classify(m, DEFAULT_TOLERANCE);
    if kind != IsometryKind::Hyperbolic {
        return Err(Error::NotHyperbolic(kind));
    }
    let mut m = m.normalized();
    if m.trace() < 0.0 {
        m = Mobius::new(-m.a, -m.b, -m.c, -m.d);
    }
    let scale = m.a.abs().max(m.b.abs()).max(m.d.abs()).max(1.0);
    if m.c.abs() <= 1e-15 * scale {
        let finite = Boundary::Finite(m.b / (m.d - m.a));
        return Ok(if m.a.abs() > m.d.abs() {
            Geodesic {
                attracting: Boundary::Infinity,
                repelling: finite,
            }
        } else {
            Geodesic {
                attracting: finite,
                repelling: Boundary::Infinity,
            }
        });
    }
    // Roots of c z² + (d − a) z − b; with trace > 0 the root
    // ((a − d) + √(tr² − 4)) / 2c has |cz + d| > 1 and is attracting.
    let disc = (m.trace() * m.trace() - 4.0).sqrt();
    let diff = m.a - m.d;
    let (attracting, repelling) = if diff >= 0.0 {
        let q = diff + disc;
        (q / (2.0 * m.c), -2.0 * m.b / q)
    } else {
        let q = diff - disc;
        (-2.0 * m.b / q, q / (2.0 * m.c))
    };
    Ok(Geodesic {
        attracting: Boundary::Finite(attracting),
        repelling: Boundary::Finite(repelling),
    })
}

/// Hyperbolic distance in the upper half-plane.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    let num = (z - w).norm_sqr();
    (1.0 + num / (2.0 * z.im * w.im)).acosh()
}
