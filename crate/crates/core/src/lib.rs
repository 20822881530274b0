//! Exact arithmetic for twisted (Ore) polynomial rings `H[t, σ]`, their
//! fraction fields `H(t, σ)` and twisted Laurent series `H((t, σ))`, plus the
//! scalar-extension machinery `H(t, σ) ⊗ L` for Galois extensions `L` of the
//! central subfield `k^σ(tⁿ)` that embed into `k^σ((tⁿ))`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: ground
//! fields are number fields or quaternion algebras over number fields, with
//! rational coordinates.
//!
//! Module map:
//!
//! * [`ground`]: the skew field `H` with its automorphism `σ`.
//! * [`skewpoly`]: `H[t, σ]`, Euclidean division, gcld, Ore witnesses.
//! * [`skewfrac`]: reduced left fractions `den⁻¹·num` in `H(t, σ)`.
//! * [`laurent`]: truncated twisted Laurent series and Newton lifting.
//! * [`central`]: the commutative field `k^σ(tⁿ)` and finite extensions of it.
//! * [`extend`]: scalar extension, inversion, Galois action, `τ`.
//! * [`tower`]: finite towers realizing systems of finite groups.
//! * [`catalog`]: built-in validated scenarios.

#![no_std]

extern crate alloc;

mod display;
pub mod catalog;
pub mod central;
pub mod error;
pub mod extend;
pub mod ground;
pub mod group;
pub mod irreducible;
pub mod laurent;
pub mod linalg;
mod modp;
pub mod random;
pub mod rational;
pub mod skewfrac;
pub mod skewpoly;
pub mod tower;
pub mod upoly;

pub use central::{CentralFn, CentralPoly, LElem, LField};
pub use error::{Error, Result};
pub use extend::{ExtensionScenario, ScenarioDescription, TensorElement};
pub use ground::{FieldDescriptor, FieldKind, GroundElement, GroundField};
pub use group::{FiniteGroup, GroupSystem};
pub use laurent::TwistedSeries;
pub use rational::Q;
pub use skewfrac::SkewFraction;
pub use skewpoly::SkewPolynomial;
pub use tower::{TowerDescription, TowerScenario};

/// Degree cap for the irreducibility test over `ℚ`.
pub const MAX_IRREDUCIBLE_DEGREE: usize = 8;
/// Cap on the search for the order of `σ`.
pub const MAX_SIGMA_ORDER: usize = 24;
/// Default cap for [`skewfrac::center_basis`].
pub const MAX_CENTER_DEGREE: usize = 8;
/// Default working precision for series.
pub const DEFAULT_PRECISION: i64 = 64;
