//! Maximum weight spectrum (MWS) linear codes over finite fields.
//!
//! An `[n, k]_q` code is MWS when its nonzero codewords take exactly
//! `theta_q(k-1) = (q^k - 1)/(q - 1)` distinct Hamming weights, the most any
//! such code can have. This crate builds MWS codes with several geometric and
//! algebraic constructions and verifies them exactly, either by enumerating
//! codewords or by evaluating the hyperplane characters of the associated
//! projective system.

pub mod bounds;
pub mod code;
pub mod construct;
pub mod gf;
pub mod io;
mod linalg;
pub mod pg;

pub use code::{
    code_from_system, distribution, mws_via_characters, system_from_code, weight, CharacterReport, CodeError,
    DistributionVector, LinearCode, RepetitionVector, WeightSet,
};
pub use gf::{make_field, FieldElement, FieldSpec, GfError};
pub use pg::{theta, Hyperplane, PgError, ProjectivePoint, ProjectiveSystem};
