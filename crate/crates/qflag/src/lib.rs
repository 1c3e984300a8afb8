//! Exact models of quantized flag manifolds and their operator representations.
//!
//! The crate is organized in layers:
//!
//! * [`rootsys`] — root systems, Weyl groups, parabolic quotients and
//!   Schubert-cell combinatorics (exact integer arithmetic).
//! * [`charutil`] — classical character oracles (Freudenthal multiplicities,
//!   tensor product decompositions) used as independent cross-checks.
//! * [`uqmod`] — finite dimensional modules over the quantized enveloping
//!   algebra at a fixed rational deformation parameter, with exact generator
//!   action matrices and contravariant Gram data.
//! * [`funalg`] — the quantized function algebra stored through its
//!   matrix-coefficient components, with exact product, star involution and
//!   Haar functional.
//! * [`flagalg`] — quantum Pluecker coordinates, invariant subalgebras and
//!   degree-by-degree generation checks.
//! * [`rep`] — representations on truncated sequence spaces, built from the
//!   rank-one operator model, with relation, classification and norm checks.

pub mod charutil;
pub mod error;
pub mod flagalg;
pub mod funalg;
pub mod rat;
pub mod rep;
pub mod rootsys;
pub mod uqmod;

pub use error::{Error, Result};
