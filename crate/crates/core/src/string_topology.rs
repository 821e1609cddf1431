//! The homology of the free loop space of `Σ_g` and its BV-algebra
//! operations.
//!
//! Components of `LΣ_g` are indexed by conjugacy classes. The trivial
//! component is homotopy equivalent to `Σ_g`; every other component is a
//! circle. A basis of the homology is therefore:
//!
//! * degree 0: one class `[h]` per conjugacy class, `[e]` included;
//! * degree 1: `H_1(Σ_g)` on the trivial component, and one generator `h̃`
//!   per nontrivial class, oriented by the positive-level primitive root;
//! * degree 2: the unit `E`, the fundamental class of the constant loops.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::conjugacy::ConjugacyClass;
use crate::error::{Error, Result};
use crate::format::{add_coefficient, write_combination};
use crate::goldman::{goldman_bracket_with_budget, TermJson};
use crate::homology::{intersection_pairing, HomologyVector};
use crate::hyperbolic::{Representation, DEFAULT_TOLERANCE};
use crate::presentation::Presentation;
use crate::word::{parse_word, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyElement {
    pub deg0: BTreeMap<ConjugacyClass, i64>,
    pub deg1_e: HomologyVector,
    /// Never keyed by `[e]`.
    pub deg1_tilde: BTreeMap<ConjugacyClass, i64>,
    pub deg2: i64,
}

/// One basis vector of the homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    Class(ConjugacyClass),
    /// Flat generator index `1..=2g` of `H_1(Σ_g)`.
    Surface(usize),
    Tilde(ConjugacyClass),
    Unit,
}

impl Basis {
    pub fn degree(&self) -> u8 {
        match self {
            Basis::Class(_) => 0,
            Basis::Surface(_) | Basis::Tilde(_) => 1,
            Basis::Unit => 2,
        }
    }
}

impl HomologyElement {
    pub fn zero(genus: usize) -> Self {
        Self {
            deg0: BTreeMap::new(),
            deg1_e: HomologyVector::zero(genus),
            deg1_tilde: BTreeMap::new(),
            deg2: 0,
        }
    }

    pub fn genus(&self) -> usize {
        self.deg1_e.genus()
    }

    pub fn unit(genus: usize) -> Self {
        Self {
            deg2: 1,
            ..Self::zero(genus)
        }
    }

    pub fn class(genus: usize, c: ConjugacyClass) -> Self {
        let mut x = Self::zero(genus);
        x.deg0.insert(c, 1);
        x
    }

    pub fn tilde(genus: usize, c: ConjugacyClass) -> Result<Self> {
        if c.is_identity() {
            return Err(Error::TrivialClass);
        }
        let mut x = Self::zero(genus);
        x.deg1_tilde.insert(c, 1);
        Ok(x)
    }

    pub fn surface(v: HomologyVector) -> Self {
        Self {
            deg0: BTreeMap::new(),
            deg1_e: v,
            deg1_tilde: BTreeMap::new(),
            deg2: 0,
        }
    }

    pub fn from_basis(genus: usize, b: &Basis) -> Self {
        match b {
            Basis::Class(c) => Self::class(genus, c.clone()),
            Basis::Surface(i) => Self::surface(HomologyVector::basis(genus, *i)),
            Basis::Tilde(c) => Self::tilde(genus, c.clone()).expect("nontrivial class"),
            Basis::Unit => Self::unit(genus),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_empty() && self.deg1_e.is_zero() && self.deg1_tilde.is_empty() && self.deg2 == 0
    }

    /// Nonzero coordinates in the basis.
    pub fn terms(&self) -> Vec<(Basis, i64)> {
        let mut out: Vec<(Basis, i64)> = self
            .deg0
            .iter()
            .map(|(c, &n)| (Basis::Class(c.clone()), n))
            .collect();
        out.extend(
            self.deg1_e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(i, &n)| (Basis::Surface(i + 1), n)),
        );
        out.extend(
            self.deg1_tilde
                .iter()
                .map(|(c, &n)| (Basis::Tilde(c.clone()), n)),
        );
        if self.deg2 != 0 {
            out.push((Basis::Unit, self.deg2));
        }
        out
    }

    /// `self += n · other`.
    pub fn add_scaled(&mut self, other: &HomologyElement, n: i64) {
        for (c, &m) in &other.deg0 {
            add_coefficient(&mut self.deg0, c.clone(), n * m);
        }
        for (c, &m) in &other.deg1_tilde {
            add_coefficient(&mut self.deg1_tilde, c.clone(), n * m);
        }
        for (a, b) in self.deg1_e.0.iter_mut().zip(&other.deg1_e.0) {
            *a += n * b;
        }
        self.deg2 += n * other.deg2;
    }

    pub fn scaled(&self, n: i64) -> Self {
        let mut out = Self::zero(self.genus());
        out.add_scaled(self, n);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str, p: &Presentation) -> Result<Self> {
        let json: ElementJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let g = p.genus();
        if json.deg1_e.len() != 2 * g {
            return Err(Error::LengthMismatch {
                expected: 2 * g,
                found: json.deg1_e.len(),
            });
        }
        let mut x = Self::zero(g);
        x.deg1_e = HomologyVector(json.deg1_e);
        x.deg2 = json.deg2;
        for t in json.deg0 {
            let c = p.canonical_class(&parse_word(&t.class, g)?);
            add_coefficient(&mut x.deg0, c, t.coeff);
        }
        for t in json.deg1_tilde {
            let c = p.canonical_class(&parse_word(&t.class, g)?);
            if c.is_identity() {
                return Err(Error::TrivialClass);
            }
            add_coefficient(&mut x.deg1_tilde, c, t.coeff);
        }
        Ok(x)
    }

    /// Parses the text notation: a sum of terms `n*atom` separated by `+`
    /// or `-`, where an atom is `unit`, `[w]` (degree 0), `H[w]` (the
    /// homology class of `w` on the trivial component) or `~[w]` (the
    /// degree-1 generator of the component of `w`). `0` is the zero element.
    pub fn parse(text: &str, p: &Presentation) -> Result<Self> {
        ElementParser { text, pos: 0, p }.parse()
    }
}

fn surface_atom(genus: usize, index: usize) -> String {
    let l = Letter::from_index(index, genus, 1).expect("index in range");
    format!("H[{l}]")
}

impl fmt::Display for HomologyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus();
        let terms = self.terms().into_iter().map(|(b, n)| {
            let atom = match b {
                Basis::Class(c) => format!("[{c}]"),
                Basis::Surface(i) => surface_atom(g, i),
                Basis::Tilde(c) => format!("~[{c}]"),
                Basis::Unit => "unit".to_string(),
            };
            (atom, n)
        });
        write_combination(f, terms)
    }
}

struct ElementParser<'a> {
    text: &'a str,
    pos: usize,
    p: &'a Presentation,
}

impl ElementParser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn bracketed_word(&mut self) -> Result<Word> {
        if !self.rest().starts_with('[') {
            return Err(self.err("expected '['"));
        }
        self.pos += 1;
        let close = self
            .rest()
            .find(']')
            .ok_or_else(|| self.err("missing ']'"))?;
        let inner = &self.text[self.pos..self.pos + close];
        let w = parse_word(inner, self.p.genus()).map_err(|e| match e {
            Error::Syntax { offset, message } => Error::Syntax {
                offset: offset + self.pos,
                message,
            },
            Error::GeneratorOutOfRange {
                offset,
                handle,
                genus,
            } => Error::GeneratorOutOfRange {
                offset: offset + self.pos,
                handle,
                genus,
            },
            other => other,
        })?;
        self.pos += close + 1;
        Ok(w)
    }

    fn parse(mut self) -> Result<HomologyElement> {
        let g = self.p.genus();
        let mut out = HomologyElement::zero(g);
        self.skip_ws();
        if self.rest().trim() == "0" {
            return Ok(out);
        }
        let mut sign = 1;
        loop {
            self.skip_ws();
            if self.rest().starts_with('-') {
                sign = -sign;
                self.pos += 1;
                self.skip_ws();
            } else if self.rest().starts_with('+') {
                self.pos += 1;
                self.skip_ws();
            }
            let digits = self.rest().len() - self.rest().trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let mut coeff = 1;
            if digits > 0 {
                coeff = self.rest()[..digits]
                    .parse::<i64>()
                    .map_err(|_| self.err("coefficient out of range"))?;
                self.pos += digits;
                self.skip_ws();
                if !self.rest().starts_with('*') {
                    return Err(self.err("expected '*' after coefficient"));
                }
                self.pos += 1;
                self.skip_ws();
            }
            let atom = if self.rest().starts_with("unit") {
                self.pos += 4;
                HomologyElement::unit(g)
            } else if self.rest().starts_with("~[") {
                self.pos += 1;
                let c = self.p.canonical_class(&self.bracketed_word()?);
                HomologyElement::tilde(g, c)?
            } else if self.rest().starts_with("H[") {
                self.pos += 1;
                let w = self.bracketed_word()?;
                HomologyElement::surface(HomologyVector::abelianize(&w, g))
            } else if self.rest().starts_with('[') {
                let c = self.p.canonical_class(&self.bracketed_word()?);
                HomologyElement::class(g, c)
            } else {
                return Err(self.err("expected unit, [w], H[w] or ~[w]"));
            };
            out.add_scaled(&atom, sign * coeff);
            self.skip_ws();
            if self.rest().is_empty() {
                return Ok(out);
            }
            sign = match self.rest().as_bytes()[0] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            self.pos += 1;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    deg0: Vec<TermJson>,
    deg1_e: Vec<i64>,
    deg1_tilde: Vec<TermJson>,
    deg2: i64,
}

impl From<&HomologyElement> for ElementJson {
    fn from(x: &HomologyElement) -> Self {
        let terms = |m: &BTreeMap<ConjugacyClass, i64>| {
            m.iter()
                .map(|(c, &coeff)| TermJson {
                    class: c.to_string(),
                    coeff,
                })
                .collect()
        };
        Self {
            deg0: terms(&x.deg0),
            deg1_e: x.deg1_e.0.clone(),
            deg1_tilde: terms(&x.deg1_tilde),
            deg2: x.deg2,
        }
    }
}

/// Degree-0 ⊗ degree-0 output of the coproduct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoproductResult {
    pub pairs: BTreeMap<(ConjugacyClass, ConjugacyClass), i64>,
}

impl CoproductResult {
    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn coefficient(&self, c1: &ConjugacyClass, c2: &ConjugacyClass) -> i64 {
        self.pairs
            .get(&(c1.clone(), c2.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let json = CoproductJson {
            terms: self
                .pairs
                .iter()
                .map(|((a, b), &coeff)| PairJson {
                    pair: [a.to_string(), b.to_string()],
                    coeff,
                })
                .collect(),
        };
        serde_json::to_string(&json).expect("serializable")
    }

    /// Parses the JSON form, canonicalizing every class.
    pub fn from_json(text: &str, p: &Presentation) -> Result<Self> {
        let json: CoproductJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let mut out = Self::default();
        for t in json.terms {
            let [a, b] = t.pair;
            let a = p.canonical_class(&parse_word(&a, p.genus())?);
            let b = p.canonical_class(&parse_word(&b, p.genus())?);
            add_coefficient(&mut out.pairs, (a, b), t.coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    pair: [String; 2],
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct CoproductJson {
    terms: Vec<PairJson>,
}

impl fmt::Display for CoproductResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.pairs
                .iter()
                .map(|((a, b), &n)| (format!("([{a}] x [{b}])"), n)),
        )
    }
}

/// Ranks of `H_0, H_1, H_2` of one component of the loop space.
pub fn component_homology(genus: usize, c: &ConjugacyClass) -> (usize, usize, usize) {
    if c.is_identity() {
        (1, 2 * genus, 1)
    } else {
        (1, 1, 0)
    }
}

/// The BV algebra of a fixed genus. The hyperbolic structure is only built
/// when a product first needs a Goldman bracket.
#[derive(Debug)]
pub struct StringTopology {
    presentation: Presentation,
    tolerance: f64,
    budget: Option<usize>,
    representation: OnceLock<std::result::Result<Representation, Error>>,
}

impl StringTopology {
    pub fn new(genus: usize) -> Result<Self> {
        Ok(Self {
            presentation: Presentation::new(genus)?,
            tolerance: DEFAULT_TOLERANCE,
            budget: None,
            representation: OnceLock::new(),
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn representation(&self) -> Result<&Representation> {
        self.representation
            .get_or_init(|| Representation::with_tolerance(self.genus(), self.tolerance))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn class(&self, w: &Word) -> ConjugacyClass {
        self.presentation.canonical_class(w)
    }

    pub fn level(&self, c: &ConjugacyClass) -> Result<u32> {
        self.presentation.level(c.word())
    }

    pub fn component_homology(&self, c: &ConjugacyClass) -> (usize, usize, usize) {
        component_homology(self.genus(), c)
    }

    /// The BV operator: `[h] ↦ l([h]) · h̃` for `[h] ≠ [e]`, zero on `[e]`
    /// and on all of degrees 1 and 2.
    pub fn delta(&self, x: &HomologyElement) -> Result<HomologyElement> {
        let mut out = HomologyElement::zero(self.genus());
        for (c, &n) in &x.deg0 {
            if c.is_identity() {
                continue;
            }
            let l = self.level(c)? as i64;
            add_coefficient(&mut out.deg1_tilde, c.clone(), n * l);
        }
        Ok(out)
    }

    /// The string coproduct: `E ↦ χ(Σ_g) [e] ⊗ [e]`, zero elsewhere.
    pub fn coproduct(&self, x: &HomologyElement) -> CoproductResult {
        let mut out = CoproductResult::default();
        let chi = 2 - 2 * self.genus() as i64;
        if x.deg2 != 0 {
            out.pairs.insert(
                (ConjugacyClass::identity(), ConjugacyClass::identity()),
                x.deg2 * chi,
            );
        }
        out
    }

    /// The string product, of degree −2.
    pub fn product(&self, x: &HomologyElement, y: &HomologyElement) -> Result<HomologyElement> {
        let g = self.genus();
        let mut out = HomologyElement::zero(g);
        for (bx, nx) in x.terms() {
            for (by, ny) in y.terms() {
                let p = self.basis_product(&bx, &by)?;
                out.add_scaled(&p, nx * ny);
            }
        }
        Ok(out)
    }

    fn basis_product(&self, x: &Basis, y: &Basis) -> Result<HomologyElement> {
        let g = self.genus();
        let e = |i: usize| HomologyVector::basis(g, i);
        Ok(match (x, y) {
            (Basis::Unit, other) | (other, Basis::Unit) => HomologyElement::from_basis(g, other),
            (Basis::Surface(i), Basis::Surface(j)) => {
                let n = intersection_pairing(&e(*i), &e(*j))?;
                HomologyElement::class(g, ConjugacyClass::identity()).scaled(n)
            }
            (Basis::Surface(i), Basis::Tilde(c)) => {
                let n = intersection_pairing(&e(*i), &self.abelianize(c))?;
                self.divided_class(c, n)?
            }
            (Basis::Tilde(c), Basis::Surface(i)) => {
                let n = intersection_pairing(&self.abelianize(c), &e(*i))?;
                self.divided_class(c, n)?
            }
            (Basis::Tilde(c1), Basis::Tilde(c2)) => {
                let rep = self.representation()?;
                let bracket = goldman_bracket_with_budget(rep, c1, c2, self.budget)?.result;
                let divisor = (self.level(c1)? * self.level(c2)?) as i64;
                let mut out = HomologyElement::zero(g);
                for (c, &n) in bracket.terms() {
                    out.deg0.insert(c.clone(), exact_div(c, n, divisor)?);
                }
                out
            }
            // degree 0 against degree 0 or 1 lands in negative degree
            _ => HomologyElement::zero(g),
        })
    }

    fn abelianize(&self, c: &ConjugacyClass) -> HomologyVector {
        HomologyVector::abelianize(c.word(), self.genus())
    }

    fn divided_class(&self, c: &ConjugacyClass, n: i64) -> Result<HomologyElement> {
        let l = self.level(c)? as i64;
        let q = exact_div(c, n, l)?;
        Ok(HomologyElement::class(self.genus(), c.clone()).scaled(q))
    }
}

fn exact_div(c: &ConjugacyClass, value: i64, divisor: i64) -> Result<i64> {
    if value % divisor != 0 {
        return Err(Error::Integrality {
            class: c.to_string(),
            value,
            divisor,
        });
    }
    Ok(value / divisor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st() -> StringTopology {
        StringTopology::new(2).unwrap()
    }

    fn parse(st: &StringTopology, s: &str) -> HomologyElement {
        HomologyElement::parse(s, st.presentation()).unwrap()
    }

    #[test]
    fn ranks() {
        let st = st();
        assert_eq!(st.component_homology(&ConjugacyClass::identity()), (1, 4, 1));
        let a1 = st.class(&parse_word("a1", 2).unwrap());
        let a1sq = st.class(&parse_word("a1^2", 2).unwrap());
        assert_eq!(st.component_homology(&a1), (1, 1, 0));
        assert_eq!(st.component_homology(&a1sq), (1, 1, 0));
    }

    #[test]
    fn delta_examples() {
        let st = st();
        assert_eq!(st.delta(&parse(&st, "[a1^2]")).unwrap(), parse(&st, "2*~[a1 a1]"));
        assert!(st.delta(&parse(&st, "[]")).unwrap().is_zero());
        assert!(st.delta(&parse(&st, "~[a1]")).unwrap().is_zero());
        assert!(st.delta(&parse(&st, "unit + H[a1]")).unwrap().is_zero());
    }

    #[test]
    fn coproduct_examples() {
        for (g, chi) in [(2, -2), (3, -4), (5, -8)] {
            let st = StringTopology::new(g).unwrap();
            let c = st.coproduct(&HomologyElement::unit(g));
            let e = ConjugacyClass::identity();
            assert_eq!(c.coefficient(&e, &e), chi);
            assert_eq!(c.pairs.len(), 1);
        }
        let st = st();
        assert!(st.coproduct(&parse(&st, "~[a1] + [b2] + H[a1]")).is_zero());
        assert_eq!(
            st.coproduct(&HomologyElement::unit(2)).to_json(),
            r#"{"terms":[{"pair":["",""],"coeff":-2}]}"#
        );
    }

    #[test]
    fn surface_times_tilde() {
        let st = st();
        let x = st.product(&parse(&st, "H[b1]"), &parse(&st, "~[a1^2]")).unwrap();
        assert_eq!(x, parse(&st, "-[a1 a1]"));
        let x = st.product(&parse(&st, "H[a1]"), &parse(&st, "~[a1 b1]")).unwrap();
        assert_eq!(x, parse(&st, "[a1 b1]"));
        let x = st.product(&parse(&st, "~[a1 b1]"), &parse(&st, "H[a1]")).unwrap();
        assert_eq!(x, parse(&st, "-[a1 b1]"));
    }

    #[test]
    fn surface_products() {
        let st = st();
        assert_eq!(st.product(&parse(&st, "H[a1]"), &parse(&st, "H[b1]")).unwrap(), parse(&st, "[]"));
        assert!(st.product(&parse(&st, "H[a1]"), &parse(&st, "H[a2]")).unwrap().is_zero());
        assert_eq!(st.product(&parse(&st, "H[b1]"), &parse(&st, "H[a1]")).unwrap(), parse(&st, "-[]"));
        assert!(st.product(&parse(&st, "[a1]"), &parse(&st, "[b1]")).unwrap().is_zero());
        assert!(st.product(&parse(&st, "[a1]"), &parse(&st, "~[b1]")).unwrap().is_zero());
    }

    #[test]
    fn unit_laws() {
        let st = st();
        let unit = HomologyElement::unit(2);
        for s in ["unit", "[a1 b2]", "[]", "H[a1 b2]", "~[a2 a2]", "3*[b1] - ~[a1]"] {
            let x = parse(&st, s);
            assert_eq!(st.product(&unit, &x).unwrap(), x);
            assert_eq!(st.product(&x, &unit).unwrap(), x);
        }
    }

    #[test]
    fn text_round_trip() {
        let st = st();
        let x = parse(&st, "2*[a1 a1] - ~[b1 a1] + H[a1 b2^2] - 3*unit");
        assert_eq!(x.to_string(), "2*[a1 a1] + H[a1] + 2*H[b2] - ~[a1 b1] - 3*unit");
        assert_eq!(parse(&st, &x.to_string()), x);
        assert_eq!(HomologyElement::zero(2).to_string(), "0");
        assert!(parse(&st, "0").is_zero());
        assert!(HomologyElement::parse("~[]", st.presentation()).is_err());
        assert!(matches!(
            HomologyElement::parse("[a1] * 2", st.presentation()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            HomologyElement::parse("[a1 c1]", st.presentation()),
            Err(Error::Syntax { offset: 4, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let st = st();
        let x = parse(&st, "2*[a1 a1] - ~[b1 a1] + H[a1] + unit");
        let text = x.to_json();
        assert_eq!(
            text,
            r#"{"deg0":[{"class":"a1 a1","coeff":2}],"deg1_e":[1,0,0,0],"deg1_tilde":[{"class":"a1 b1","coeff":-1}],"deg2":1}"#
        );
        let back = HomologyElement::from_json(&text, st.presentation()).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_json(), text);
    }
}
