//! The Goldman bracket of two conjugacy classes, computed from the
//! intersections of their closed geodesics.
//!
//! Write `h = k^l` with `k` primitive. Intersection points of the closed
//! geodesics correspond to double cosets `⟨h₁⟩ u ⟨h₂⟩` for which the axis
//! of `h₁` crosses the translate `u·axis(h₂)`. The crossings are found
//! geometrically modulo the centralizers `⟨k₁⟩, ⟨k₂⟩`: a crossing can be
//! slid onto one period of each axis, where it lies in a tile met by both
//! periods, so the candidates `v·w⁻¹` over those two finite tile sets are
//! complete. Candidates are merged only when the word problem confirms they
//! lie in the same double coset. Each geometric crossing then splits into `l₁·l₂` double cosets
//! `k₁^i u k₂^j`, and every one contributes `sign · [h₁ · u h₂ u⁻¹]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conjugacy::ConjugacyClass;
use crate::error::{Error, Result};
use crate::hyperbolic::tiling::period_tiles;
use crate::hyperbolic::{distance, Representation};
use crate::word::{shortlex, Word};

/// Transversality threshold on `|sin|` of the crossing angle.
const TANGENCY: f64 = 1e-9;
/// Crossings closer than this in position and angle are compared exactly.
const NEARBY: f64 = 1e-3;
const MAX_DOUBLINGS: usize = 8;

/// `left` and `right` are the exponents in `k₁^left · base · k₂^right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleCosetKey {
    pub base: Word,
    pub left: u32,
    pub right: u32,
}

impl DoubleCosetKey {
    fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        shortlex(self.base.letters(), other.base.letters())
            .then(self.left.cmp(&other.left))
            .then(self.right.cmp(&other.right))
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    /// In the upper half-plane, on the axis of `h₁`.
    pub location: Complex64,
    /// A point in the same orbit as `location`, close to the base tile and
    /// computed without the loss of precision far along the axis.
    pub representative: Complex64,
    pub sign: i8,
    pub conjugator: Word,
    pub key: DoubleCosetKey,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub points: Vec<IntersectionPoint>,
    /// Some crossing needed a conjugator longer than the budget.
    pub truncated: bool,
}

/// A crossing of the primitive axes, modulo both centralizers.
#[derive(Clone, Debug)]
struct Crossing {
    base: Word,
    position: f64,
    angle: f64,
    sign: i8,
    location: Complex64,
    representative: Complex64,
}

/// Crossings of `axis(ρ(k1))` with translates of `axis(ρ(k2))`, one per
/// double coset of the cyclic groups they generate. Signs are taken against
/// the orientation of ℍ.
fn geometric_crossings(rep: &Representation, k1: &Word, k2: &Word) -> Result<Vec<Crossing>> {
    let p = rep.presentation();
    let (f1, w1) = period_tiles(rep, k1)?;
    let (f2, w2) = period_tiles(rep, k2)?;

    let reach = rep.circumradius() + 1e-6;

    let mut crossings: Vec<Crossing> = Vec::new();
    for v in &w1 {
        for w in &w2 {
            // the translate ρ(v w⁻¹)·axis₂ in the local coordinates of both tiles
            let g = (v.local * w.local.inverse()).normalized();
            let scale = g.a.abs().max(g.d.abs()).max(g.b.abs()).max(g.c.abs());
            let tiny = 1e-9 * scale;
            if (g.b.abs() <= tiny && g.c.abs() <= tiny) || (g.a.abs() <= tiny && g.d.abs() <= tiny) {
                return Err(Error::Coincident(k1.to_string(), k2.to_string()));
            }
            let product = g.a * g.b * g.c * g.d;
            if product.is_nan() || product >= 0.0 {
                continue;
            }
            // endpoints of the translate in the frame of the first axis
            let (x, y) = (g.b / g.d, g.a / g.c);
            let t = (-x * y).sqrt();
            let here = Complex64::new(0.0, t);
            let there = g.inverse().apply(here);
            // each crossing is seen from the tiles containing it; farther
            // pairs only repeat it with worse conditioning
            if distance(here, v.center()) > reach || distance(there, w.center()) > reach {
                continue;
            }
            let (mid, radius) = ((x + y) / 2.0, (y - x).abs() / 2.0);
            let (tx, ty) = if y > 0.0 {
                (t / radius, mid / radius)
            } else {
                (-t / radius, -mid / radius)
            };
            // tangent of the first axis is (0, 1)
            let det = -tx;
            if det.abs() < TANGENCY {
                return Err(Error::Tangential(k1.to_string(), k2.to_string(), det.abs()));
            }
            let s = v.height + t.ln();
            let shift = ((s - f1.start) / f1.length).floor();
            let position = s - f1.start - shift * f1.length;
            let angle = det.atan2(ty);
            // where the crossing sits on the second axis, in its own frame
            let s2 = w.height + there.norm().ln();
            let shift2 = ((s2 - f2.start) / f2.length).floor();
            let word = k1
                .pow(-(shift as i64))
                .concat(&v.word)
                .concat(&w.word.inverse())
                .concat(&k2.pow(shift2 as i64));
            let base = p.dehn_reduce(&word);
            let location = f1.point(f1.start + position);
            let representative = v.local.inverse().apply(here);

            let same = crossings.iter_mut().find(|c| {
                let dp = (c.position - position).abs();
                let dp = dp.min(f1.length - dp);
                dp < NEARBY
                    && (c.angle - angle).abs() < NEARBY
                    && same_double_coset(rep, k1, k2, &c.base, &base)
            });
            match same {
                Some(c) => {
                    if shortlex(base.letters(), c.base.letters()).is_lt() {
                        c.base = base;
                        c.location = location;
                        c.representative = representative;
                    }
                }
                None => crossings.push(Crossing {
                    base,
                    position,
                    angle,
                    sign: if det > 0.0 { 1 } else { -1 },
                    location,
                    representative,
                }),
            }
        }
    }
    crossings.sort_by(|a, b| shortlex(a.base.letters(), b.base.letters()));
    Ok(crossings)
}

/// Whether `u2 = k1^i u1 k2^j` for some `i, j ∈ {−1, 0, 1}`. Normalized
/// crossings can only disagree by one period at either end.
fn same_double_coset(rep: &Representation, k1: &Word, k2: &Word, u1: &Word, u2: &Word) -> bool {
    let p = rep.presentation();
    let back = u2.inverse();
    (-1..=1).any(|i| {
        (-1..=1).any(|j| {
            let w = k1.pow(i).concat(u1).concat(&k2.pow(j)).concat(&back);
            p.is_identity(&w)
        })
    })
}

/// Algebraic intersection number of the closed geodesics of two primitive
/// words against the orientation of ℍ; used to orient the representation.
pub(crate) fn raw_crossing_sign(rep: &Representation, k1: &Word, k2: &Word) -> Result<i64> {
    Ok(geometric_crossings(rep, k1, k2)?
        .iter()
        .map(|c| c.sign as i64)
        .sum())
}

struct Roots {
    k1: Word,
    l1: u32,
    k2: Word,
    l2: u32,
}

fn roots(rep: &Representation, c1: &ConjugacyClass, c2: &ConjugacyClass) -> Result<Roots> {
    if c1.is_identity() || c2.is_identity() {
        return Err(Error::TrivialClass);
    }
    let p = rep.presentation();
    let r1 = p.primitive_root(c1.word())?;
    let r2 = p.primitive_root(c2.word())?;
    let root1 = p.canonical_class(&r1.root);
    if root1 == p.canonical_class(&r2.root) || root1 == p.canonical_class(&r2.root.inverse()) {
        return Err(Error::Coincident(c1.to_string(), c2.to_string()));
    }
    Ok(Roots {
        k1: r1.root,
        l1: r1.level,
        k2: r2.root,
        l2: r2.level,
    })
}

/// Intersection points of the closed geodesics of `c1` and `c2`, one per
/// double coset `⟨h₁⟩u⟨h₂⟩`, keeping those whose conjugator has at most
/// `budget` letters.
pub fn enumerate_intersections(
    rep: &Representation,
    c1: &ConjugacyClass,
    c2: &ConjugacyClass,
    budget: usize,
) -> Result<Enumeration> {
    let Roots { k1, l1, k2, l2 } = roots(rep, c1, c2)?;
    let p = rep.presentation();
    let step = rep.evaluate(&k1);
    let mut points = Vec::new();
    let mut truncated = false;
    for crossing in geometric_crossings(rep, &k1, &k2)? {
        let mut location = crossing.location;
        for left in 0..l1 {
            for right in 0..l2 {
                let u = k1
                    .pow(left as i64)
                    .concat(&crossing.base)
                    .concat(&k2.pow(right as i64));
                let conjugator = p.dehn_reduce(&u);
                if conjugator.len() > budget {
                    truncated = true;
                    continue;
                }
                points.push(IntersectionPoint {
                    location,
                    representative: crossing.representative,
                    sign: crossing.sign,
                    conjugator,
                    key: DoubleCosetKey {
                        base: crossing.base.clone(),
                        left,
                        right,
                    },
                });
            }
            location = step.apply(location);
        }
    }
    points.sort_by(|a, b| a.key.cmp_key(&b.key));
    Ok(Enumeration { points, truncated })
}

/// `2(|h₁| + |h₂|) + 4g`.
pub fn default_budget(rep: &Representation, c1: &ConjugacyClass, c2: &ConjugacyClass) -> usize {
    2 * (c1.len() + c2.len()) + 4 * rep.genus()
}

/// A ℤ-linear combination of conjugacy classes with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BracketResult {
    terms: BTreeMap<ConjugacyClass, i64>,
}

impl BracketResult {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ConjugacyClass, i64)>) -> Self {
        let mut r = Self::zero();
        for (c, n) in terms {
            r.add_term(c, n);
        }
        r
    }

    pub fn add_term(&mut self, class: ConjugacyClass, coeff: i64) {
        crate::format::add_coefficient(&mut self.terms, class, coeff);
    }

    pub fn terms(&self) -> &BTreeMap<ConjugacyClass, i64> {
        &self.terms
    }

    pub fn coefficient(&self, class: &ConjugacyClass) -> i64 {
        self.terms.get(class).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&BracketJson::from(self)).expect("serializable")
    }

    /// Parses the JSON form, canonicalizing every class.
    pub fn from_json(text: &str, p: &crate::presentation::Presentation) -> Result<Self> {
        let json: BracketJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut r = Self::zero();
        for t in json.terms {
            let w = crate::word::parse_word(&t.class, p.genus())?;
            r.add_term(p.canonical_class(&w), t.coeff);
        }
        Ok(r)
    }
}

impl Add for &BracketResult {
    type Output = BracketResult;

    fn add(self, rhs: &BracketResult) -> BracketResult {
        let mut r = self.clone();
        for (c, &n) in &rhs.terms {
            r.add_term(c.clone(), n);
        }
        r
    }
}

impl Neg for &BracketResult {
    type Output = BracketResult;

    fn neg(self) -> BracketResult {
        BracketResult {
            terms: self.terms.iter().map(|(c, n)| (c.clone(), -n)).collect(),
        }
    }
}

impl fmt::Display for BracketResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::format::write_combination(
            f,
            self.terms.iter().map(|(c, &n)| (format!("[{c}]"), n)),
        )
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub class: String,
    pub coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    terms: Vec<TermJson>,
}

impl From<&BracketResult> for BracketJson {
    fn from(r: &BracketResult) -> Self {
        Self {
            terms: r
                .terms
                .iter()
                .map(|(c, &coeff)| TermJson {
                    class: c.to_string(),
                    coeff,
                })
                .collect(),
        }
    }
}

/// A bracket together with how its budget was reached.
#[derive(Clone, Debug)]
pub struct BracketOutcome {
    pub result: BracketResult,
    pub budget: usize,
    pub points: usize,
    /// False when the point count was still changing at the last doubling.
    pub stabilized: bool,
}

/// Goldman bracket with the default budget and automatic doubling.
pub fn goldman_bracket(
    rep: &Representation,
    c1: &ConjugacyClass,
    c2: &ConjugacyClass,
) -> Result<BracketResult> {
    goldman_bracket_with_budget(rep, c1, c2, None).map(|o| o.result)
}

/// Evaluates `Σ sign(p) · [h₁ · u h₂ u⁻¹]`, doubling the budget from the
/// given start until the enumeration is no longer truncated.
///
/// The trivial class and pairs of classes with a common primitive root
/// bracket to zero.
pub fn goldman_bracket_with_budget(
    rep: &Representation,
    c1: &ConjugacyClass,
    c2: &ConjugacyClass,
    budget: Option<usize>,
) -> Result<BracketOutcome> {
    let mut budget = budget.unwrap_or_else(|| default_budget(rep, c1, c2)).max(1);
    let zero = |budget| BracketOutcome {
        result: BracketResult::zero(),
        budget,
        points: 0,
        stabilized: true,
    };
    if c1.is_identity() || c2.is_identity() {
        return Ok(zero(budget));
    }
    let Roots { k1, l1, k2, l2 } = match roots(rep, c1, c2) {
        Ok(r) => r,
        Err(Error::Coincident(..)) => return Ok(zero(budget)),
        Err(e) => return Err(e),
    };

    let mut enumeration = enumerate_intersections(rep, c1, c2, budget)?;
    let mut doublings = 0;
    while enumeration.truncated && doublings < MAX_DOUBLINGS {
        budget *= 2;
        doublings += 1;
        enumeration = enumerate_intersections(rep, c1, c2, budget)?;
    }
    if enumeration.truncated {
        log::warn!("bracket of [{c1}] and [{c2}] did not stabilize at budget {budget}");
    }

    let p = rep.presentation();
    let h1 = k1.pow(l1 as i64);
    let h2 = k2.pow(l2 as i64);
    let mut result = BracketResult::zero();
    for point in &enumeration.points {
        let product = h1.concat(&h2.conjugate_by(&point.conjugator));
        result.add_term(p.canonical_class(&product), point.sign as i64);
    }
    Ok(BracketOutcome {
        result,
        budget,
        points: enumeration.points.len(),
        stabilized: !enumeration.truncated,
    })
}

/// Bilinear extension of the bracket.
pub fn bracket_combinations(
    rep: &Representation,
    x: &BracketResult,
    y: &BracketResult,
) -> Result<BracketResult> {
    let mut out = BracketResult::zero();
    for (c1, &n1) in x.terms() {
        for (c2, &n2) in y.terms() {
            let b = goldman_bracket(rep, c1, c2)?;
            for (c, &n) in b.terms() {
                out.add_term(c.clone(), n * n1 * n2);
            }
        }
    }
    Ok(out)
}
