//! Side pairings of the regular `4g`-gon with interior angles `2π/4g`.
//!
//! The polygon `P` is centred at the origin of the Poincaré disk. Its sides,
//! read counterclockwise, carry the labels `a_j, b_j, a_j⁻¹, b_j⁻¹` for each
//! handle `j`. The pairing of a labelled side with its partner maps `P` to
//! the neighbouring tile across that side, and the single vertex cycle of
//! the polygon spells `∏ [a_j, b_j⁻¹]` in those pairings. Taking the inverse
//! pairing as the image of every `b_j` therefore realizes the standard
//! relator `∏ [a_j, b_j]`. Matrices are moved to the upper half-plane by
//! the Cayley map `z ↦ i(1 + z)/(1 − z)`, which sends the centre of `P` to `i`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{axis, classify, IsometryKind, Mobius, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

type Mat = [[Complex64; 2]; 2];

fn cmul(x: &Mat, y: &Mat) -> Mat {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn cinv(x: &Mat) -> Mat {
    let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
    [[x[1][1] / det, -x[0][1] / det], [-x[1][0] / det, x[0][0] / det]]
}

fn capply(m: &Mat, z: Complex64) -> Complex64 {
    (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])
}

/// Disk isometry sending `p` to 0 and `q` onto the positive real axis.
fn frame(p: Complex64, q: Complex64) -> Mat {
    let one = Complex64::new(1.0, 0.0);
    let to_origin = [[one, -p], [-p.conj(), one]];
    let theta = capply(&to_origin, q).arg();
    let rot = [
        [Complex64::from_polar(1.0, -theta / 2.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
    ];
    cmul(&rot, &to_origin)
}

/// Conjugates a disk isometry to a real matrix of determinant 1 on ℍ.
fn to_half_plane(m: &Mat) -> Mobius {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let cayley = [[i, i], [-one, one]];
    let h = cmul(&cmul(&cayley, m), &cinv(&cayley));
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let s = det.sqrt().inv();
    let entries = [h[0][0] * s, h[0][1] * s, h[1][0] * s, h[1][1] * s];
    let big = entries
        .iter()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .copied()
        .unwrap();
    let phase = Complex64::from_polar(1.0, -big.arg());
    let r: Vec<f64> = entries.iter().map(|e| (e * phase).re).collect();
    Mobius::new(r[0], r[1], r[2], r[3]).normalized()
}

/// A discrete faithful representation `π_g → PSL(2,ℝ)` together with the
/// fundamental polygon it was built from.
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Presentation,
    tolerance: f64,
    /// Indexed by `2 * (flat index - 1) + inverse`.
    images: Vec<Mobius>,
    /// Letter whose image maps `P` to the tile across side `k`.
    side_letters: Vec<Letter>,
    disk_vertices: Vec<Complex64>,
    circumradius: f64,
    mirrored: bool,
}

impl Representation {
    pub fn new(genus: usize) -> Result<Self> {
        Self::with_tolerance(genus, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(genus: usize, tolerance: f64) -> Result<Self> {
        let presentation = Presentation::new(genus)?;
        let n = 4 * genus;
        let interior = 2.0 * PI / n as f64;
        let circumradius =
            ((PI / n as f64).tan().recip() * (interior / 2.0).tan().recip()).acosh();
        let r = (circumradius / 2.0).tanh();
        let disk_vertices: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64))
            .collect();
        let vertex = |k: usize| disk_vertices[k % n];

        let mut images = vec![Mobius::IDENTITY; 4 * genus];
        let mut side_letters = Vec::with_capacity(n);
        for j in 0..genus {
            let base = 4 * j;
            let (a, b) = (Letter::a(j as u16 + 1), Letter::b(j as u16 + 1));
            // side `base` (label a_j) pairs with `base + 2` (a_j⁻¹),
            // side `base + 1` (label b_j) with `base + 3` (b_j⁻¹)
            let pairing = |k: usize, partner: usize| {
                let m = cmul(
                    &cinv(&frame(vertex(k), vertex(k + 1))),
                    &frame(vertex(partner + 1), vertex(partner)),
                );
                to_half_plane(&m)
            };
            let ta = pairing(base, base + 2);
            let tb = pairing(base + 1, base + 3);
            images[slot(a, genus)] = ta;
            images[slot(a.inv(), genus)] = ta.inverse();
            images[slot(b, genus)] = tb.inverse();
            images[slot(b.inv(), genus)] = tb;
            side_letters.extend([a, b.inv(), a.inv(), b]);
        }

        let mut rep = Self {
            presentation,
            tolerance,
            images,
            side_letters,
            disk_vertices,
            circumradius,
            mirrored: false,
        };
        let residual = rep.evaluate(rep.presentation.relator()).distance_from_identity();
        if residual.is_nan() || residual > tolerance {
            return Err(Error::Construction {
                residual,
                tolerance,
            });
        }
        for g in rep.presentation.generators() {
            let kind = classify(&rep.image(g), tolerance);
            if kind != IsometryKind::Hyperbolic {
                return Err(Error::NotHyperbolic(kind));
            }
        }
        // Fix the surface orientation so that a1 crosses b1 positively.
        let (a1, b1) = (Letter::a(1), Letter::b(1));
        let sign = crate::goldman::raw_crossing_sign(&rep, &Word(vec![a1]), &Word(vec![b1]))?;
        if sign < 0 {
            rep.mirror();
        }
        Ok(rep)
    }

    fn mirror(&mut self) {
        for m in &mut self.images {
            *m = m.mirrored();
        }
        self.mirrored = !self.mirrored;
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn image(&self, l: Letter) -> Mobius {
        self.images[slot(l, self.genus())]
    }

    /// Left-to-right product of generator images, renormalized every few
    /// letters to keep the determinant at 1.
    pub fn evaluate(&self, w: &Word) -> Mobius {
        let mut m = Mobius::IDENTITY;
        for (i, &l) in w.letters().iter().enumerate() {
            m = m * self.image(l);
            if i % 8 == 7 {
                m = m.normalized();
            }
        }
        m.normalized()
    }

    /// Whether `w` evaluates to `±I` within the tolerance.
    pub fn evaluates_to_identity(&self, w: &Word) -> bool {
        self.evaluate(w).distance_from_identity() <= self.tolerance
    }

    pub fn axis_of(&self, w: &Word) -> Result<super::Geodesic> {
        axis(&self.evaluate(w))
    }

    /// Hyperbolic circumradius of the fundamental polygon.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// The centre of the fundamental polygon in ℍ.
    pub fn base_point(&self) -> Complex64 {
        Complex64::i()
    }

    /// Letters labelling the sides of `P` in counterclockwise order: the
    /// tile across side `k` is `ρ(side_letters[k]) · P`.
    pub fn side_letters(&self) -> &[Letter] {
        &self.side_letters
    }

    /// Vertices of `P` in the half-plane model.
    pub fn polygon_vertices(&self) -> Vec<Complex64> {
        self.disk_vertices.iter().map(|&z| self.from_disk(z)).collect()
    }

    /// Upper half-plane to Poincaré disk, undoing the orientation fix.
    pub fn to_disk(&self, z: Complex64) -> Complex64 {
        let z = if self.mirrored { -z.conj() } else { z };
        (z - Complex64::i()) / (z + Complex64::i())
    }

    pub fn from_disk(&self, z: Complex64) -> Complex64 {
        let w = Complex64::i() * (1.0 + z) / (1.0 - z);
        if self.mirrored {
            -w.conj()
        } else {
            w
        }
    }
}

fn slot(l: Letter, genus: usize) -> usize {
    2 * (l.index(genus) - 1) + l.is_inverse() as usize
}
