//! Rational self-maps of the projective line over `K`.

pub(crate) mod forms;
mod improve;
mod map;
mod mobius;
mod pairs;

pub use improve::{improve_reduction, isotriviality_diagnostic, Improvement, Isotriviality, EXPONENT_RANGE};
pub use map::{BadPlaces, EndoMap, ReducedMap};
pub use mobius::{conjugate, Mobius};
pub use pairs::{constant_pair_system, constant_pairs, ConstantPairs};
