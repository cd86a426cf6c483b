//! Exceptional solutions of Painleve VI.
//!
//! Picard-type solutions are labelled by rational vectors `(mu, nu)`; their
//! branch count is the length of a `Gamma[2]` orbit ([`orbit`]). They are
//! evaluated through Weierstrass functions ([`elliptic`]), their defining
//! curves and all polynomial identities around them are handled exactly
//! ([`poly`], [`curves`]), and candidate curves are certified against the ODE
//! by residuals ([`verifier`]).

pub mod curves;
pub mod elliptic;
pub mod error;
pub mod ffield;
pub mod orbit;
pub mod params;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod selftest;
pub mod verifier;

pub use error::{Error, Result};
