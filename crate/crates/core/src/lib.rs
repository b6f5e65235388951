//! Exact calculator for the spectral and geometric invariants of compact
//! CR-Seifert 3-manifolds: orbifold circle bundles of negative degree over
//! orbifold surfaces, with the CR structure pulled back from the base.
//!
//! Every closed-form invariant is a finite Laurent polynomial in π with
//! rational coefficients, so the exact path never touches floating point.
//! Floats appear only in the cotangent oracle for Dedekind sums, in user
//! supplied non-constant-curvature integrals, and in spectral lines whose
//! discriminant is not a rational square.

pub mod battery;
pub mod berger;
pub mod dedekind;
pub mod error;
pub mod exactq;
pub mod invariants;
pub mod obstruct;
pub mod report;
pub mod rrketa;
pub mod seifert;
pub mod spectrum;
pub mod sweep;

pub use error::{Error, Result};
pub use exactq::{Integral, LaurentEps, Number, PiLaurent, Rational};
pub use seifert::{ConePoint, GeomIntegrals, SeifertData, SeifertInput};
