//! Computations in the fundamental group of a closed orientable surface of
//! genus `g ≥ 2`: word problem and conjugacy, a Fuchsian realization, the
//! Goldman bracket, and the string topology BV algebra of the free loop
//! space.

pub mod conjugacy;
pub mod error;
mod format;
pub mod goldman;
pub mod homology;
pub mod hyperbolic;
pub mod presentation;
pub mod render;
pub mod string_topology;
pub mod word;

pub use conjugacy::{ConjugacyClass, PrimitiveRoot};
pub use error::{Error, Result};
pub use goldman::{
    bracket_combinations, enumerate_intersections, goldman_bracket, goldman_bracket_with_budget,
    BracketOutcome, BracketResult, Enumeration, IntersectionPoint,
};
pub use homology::{intersection_pairing, HomologyVector};
pub use hyperbolic::{Mobius, Representation};
pub use presentation::Presentation;
pub use render::render_svg;
pub use string_topology::{component_homology, CoproductResult, HomologyElement, StringTopology};
pub use word::{parse_word, Letter, Word};
