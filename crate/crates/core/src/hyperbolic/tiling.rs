//! Walking the tiling of ℍ by translates of the fundamental polygon.
//!
//! The polygon is the Dirichlet domain of the base point `i`, so a point
//! lies in tile `v·P` exactly when `v(i)` is its nearest orbit point, and
//! greedy descent over neighbouring tiles always terminates in that tile.

use std::collections::VecDeque;

use num_complex::Complex64;

use super::{axis, distance, translation_length, Mobius, Representation};
use crate::error::Result;
use crate::word::Word;

#[derive(Clone, Debug)]
pub(crate) struct Tile {
    pub word: Word,
    pub matrix: Mobius,
    pub center: Complex64,
}

impl Tile {
    fn new(rep: &Representation, word: Word) -> Self {
        let word = rep.presentation().dehn_reduce(&word);
        let matrix = rep.evaluate(&word);
        let center = matrix.apply(rep.base_point());
        Self {
            word,
            matrix,
            center,
        }
    }

    fn neighbours<'a>(&'a self, rep: &'a Representation) -> impl Iterator<Item = Tile> + 'a {
        rep.side_letters().iter().map(move |&l| {
            let mut letters = self.word.letters().to_vec();
            letters.push(l);
            Tile::new(rep, Word(letters))
        })
    }
}

/// Coordinates adapted to the axis of a hyperbolic element: the normalizer
/// sends the axis to the imaginary axis with the attracting end at ∞, and
/// `start` is the log-height of the projection of the base point.
#[derive(Clone, Debug)]
pub(crate) struct AxisFrame {
    pub normalizer: Mobius,
    pub inverse: Mobius,
    pub length: f64,
    pub start: f64,
}

impl AxisFrame {
    pub fn new(rep: &Representation, m: &Mobius) -> Result<Self> {
        let normalizer = axis(m)?.normalizer();
        let length = translation_length(m)?;
        let start = normalizer.apply(rep.base_point()).norm().ln();
        Ok(Self {
            inverse: normalizer.inverse(),
            normalizer,
            length,
            start,
        })
    }

    /// The point at log-height `s` on the axis.
    pub fn point(&self, s: f64) -> Complex64 {
        self.inverse.apply(Complex64::new(0.0, s.exp()))
    }
}

/// The tile containing `z`.
pub(crate) fn locate(rep: &Representation, z: Complex64) -> Tile {
    let mut cur = Tile::new(rep, Word::identity());
    let mut best = distance(cur.center, z);
    loop {
        let next = cur
            .neighbours(rep)
            .map(|t| (distance(t.center, z), t))
            .min_by(|x, y| x.0.total_cmp(&y.0));
        match next {
            Some((d, t)) if d < best - 1e-12 => {
                best = d;
                cur = t;
            }
            _ => return cur,
        }
    }
}

/// `z ↦ e^h z`.
fn dilation(h: f64) -> Mobius {
    Mobius::new((h / 2.0).exp(), 0.0, 0.0, (-h / 2.0).exp())
}

/// A tile `ρ(word)·P` seen from an axis frame. The frame coordinates of
/// the tile are `e^height · local(·)`, with `height` chosen so that the
/// centre `local(i)` has modulus 1. Keeping `local` bounded, and updating
/// it one generator at a time, avoids the cancellation that a direct
/// product `N · ρ(word)` suffers once the tile is far along the axis.
#[derive(Clone, Debug)]
pub(crate) struct FramedTile {
    pub word: Word,
    pub local: Mobius,
    pub height: f64,
}

impl FramedTile {
    fn new(word: Word, m: Mobius, height: f64) -> Self {
        let h = m.apply(Complex64::i()).norm().ln();
        Self {
            word,
            local: (dilation(-h) * m).normalized(),
            height: height + h,
        }
    }

    /// Centre in local coordinates.
    pub fn center(&self) -> Complex64 {
        self.local.apply(Complex64::i())
    }

    /// Distance from the centre to the axis segment between log-heights
    /// `lo` and `hi`.
    pub fn distance_to_segment(&self, lo: f64, hi: f64) -> f64 {
        let z = self.center();
        let s = self.height + z.norm().ln();
        let clamped = s.clamp(lo, hi) - self.height;
        if s == s.clamp(lo, hi) {
            (z.re.abs() / z.im).asinh()
        } else {
            distance(z, Complex64::new(0.0, clamped.exp()))
        }
    }

    fn step(&self, rep: &Representation, l: crate::word::Letter) -> Self {
        let mut letters = self.word.letters().to_vec();
        letters.push(l);
        let word = rep.presentation().dehn_reduce(&Word(letters));
        Self::new(word, self.local * rep.image(l), self.height)
    }

    /// Hyperbolic distance between the centres of two tiles of one frame.
    fn separation(&self, other: &FramedTile) -> f64 {
        let z = other.center() * (other.height - self.height).exp();
        distance(self.center(), z)
    }
}

fn same_tile(s: &FramedTile, t: &FramedTile) -> bool {
    (s.height - t.height).abs() < 1.0 && s.separation(t) < 1e-3
}

/// Every tile meeting the segment `[lo, hi]` of the frame's axis, plus
/// possibly a few more whose centres lie within a circumradius of it.
/// Precision degrades like `e^{hi - lo}`, so segments should be short.
fn tiles_along(rep: &Representation, frame: &AxisFrame, lo: f64, hi: f64) -> Vec<FramedTile> {
    let reach = rep.circumradius() + 1e-6;
    let first = locate(rep, frame.point(lo));
    let mut tiles = vec![FramedTile::new(first.word, frame.normalizer * first.matrix, 0.0)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let found: Vec<FramedTile> = rep
            .side_letters()
            .iter()
            .map(|&l| tiles[idx].step(rep, l))
            .filter(|t| t.distance_to_segment(lo, hi) <= reach)
            .collect();
        for t in found {
            if !tiles.iter().any(|s| same_tile(s, &t)) {
                queue.push_back(tiles.len());
                tiles.push(t);
            }
        }
    }
    tiles
}

/// A stretch of one period of the axis of `ρ(k)`, in the frame of the
/// rotation `p⁻¹kp` for a prefix `p` of `k`. That axis is `ρ(p)⁻¹` times
/// the original one and passes by the base tile. `offset` converts heights
/// in this frame to heights in the frame of `k`.
#[derive(Clone, Debug)]
pub(crate) struct Stretch {
    pub prefix: Word,
    pub frame: AxisFrame,
    pub from: f64,
    pub to: f64,
    pub offset: f64,
}

/// Consecutive stretches between the prefixes `p` and `p·l` of `k`,
/// covering one period from the projection of the base point. The frames
/// differ by dilations, found by following the base point across each
/// stretch, so nothing is computed far from the origin of its frame.
pub(crate) fn period_stretches(rep: &Representation, k: &Word) -> Result<Vec<Stretch>> {
    let letters = k.letters();
    let mut frame = AxisFrame::new(rep, &rep.evaluate(k))?;
    let mut offset = 0.0;
    let mut stretches = Vec::with_capacity(letters.len());
    for j in 0..letters.len() {
        let to = (frame.normalizer * rep.image(letters[j]))
            .apply(rep.base_point())
            .norm()
            .ln();
        let rotation = Word([&letters[j + 1..], &letters[..j + 1]].concat());
        let next = AxisFrame::new(rep, &rep.evaluate(&rotation))?;
        let next_offset = offset + to - next.start;
        stretches.push(Stretch {
            prefix: Word(letters[..j].to_vec()),
            from: frame.start,
            to,
            frame,
            offset,
        });
        frame = next;
        offset = next_offset;
    }
    Ok(stretches)
}

/// The frame of the axis of `ρ(k)` and every tile meeting one period of
/// it, from the projection of the base point onward.
pub(crate) fn period_tiles(rep: &Representation, k: &Word) -> Result<(AxisFrame, Vec<FramedTile>)> {
    let p = rep.presentation();
    let stretches = period_stretches(rep, k)?;
    let mut tiles: Vec<FramedTile> = Vec::new();
    for st in &stretches {
        for t in tiles_along(rep, &st.frame, st.from.min(st.to), st.from.max(st.to)) {
            let t = FramedTile {
                word: p.dehn_reduce(&st.prefix.concat(&t.word)),
                local: t.local,
                height: t.height + st.offset,
            };
            if !tiles.iter().any(|s| same_tile(s, &t)) {
                tiles.push(t);
            }
        }
    }
    let frame = stretches.into_iter().next().expect("nonempty word").frame;
    Ok((frame, tiles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn locate_finds_dirichlet_tile() {
        let rep = Representation::new(2).unwrap();
        let w = parse_word("a1 b2 a2 B1", 2).unwrap();
        let m = rep.evaluate(&w);
        let target = m.apply(Complex64::new(0.05, 1.02));
        let tile = locate(&rep, target);
        assert!(rep.presentation().is_identity(&tile.word.concat(&w.inverse())));
    }

    #[test]
    fn tiles_cover_axis_segment() {
        let rep = Representation::new(2).unwrap();
        let w = parse_word("a1 b1 b2", 2).unwrap();
        let (frame, tiles) = period_tiles(&rep, &w).unwrap();
        let (lo, hi) = (frame.start, frame.start + frame.length);
        for k in 0..=50 {
            let p = frame.point(lo + (hi - lo) * k as f64 / 50.0);
            let home = locate(&rep, p);
            assert!(tiles
                .iter()
                .any(|t| rep.presentation().is_identity(&t.word.concat(&home.word.inverse()))));
        }
        for t in &tiles {
            let direct = frame.normalizer * rep.evaluate(&t.word);
            let z = t.center() * t.height.exp();
            assert!(distance(z, direct.apply(Complex64::i())) < 1e-9);
        }
    }

    #[test]
    fn long_period_keeps_translation_symmetry() {
        let rep = Representation::new(3).unwrap();
        let k = parse_word("a1 a3 b1 A1 A3 A1 b2 B3 b1", 3).unwrap();
        let (frame, tiles) = period_tiles(&rep, &k).unwrap();
        let p = rep.presentation();
        let height = |w: &Word| {
            tiles
                .iter()
                .find(|t| p.is_identity(&t.word.concat(&w.inverse())))
                .map(|t| t.height + t.center().norm().ln())
        };
        let base = height(&Word(vec![])).unwrap();
        let top = height(&k).unwrap();
        assert!((top - base - frame.length).abs() < 1e-9, "{}", top - base - frame.length);
    }
}
