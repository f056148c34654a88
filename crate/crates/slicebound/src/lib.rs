//! Exact computation of Seifert-matrix invariants and certified lower bounds
//! for slice genera.
//!
//! Everything is carried out in exact rational arithmetic.  Signatures come
//! from symmetric congruence reduction, the signature-function machinery
//! isolates jump points with Sturm sequences, and the real-valued integral
//! invariant is returned as a certified enclosure that can be refined on
//! demand.  On top of those sit the Alexander-module tools (Smith form over
//! the Laurent ring, linking-form computations) and the genus-certification
//! rules that consume them.

pub mod alexmod;
pub mod bounds;
pub mod construct;
pub mod io;
pub mod mat;
pub mod ring;
pub mod seifert;
pub mod signatures;

pub use ring::{LaurentPoly, Poly, Rational};
