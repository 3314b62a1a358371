//! Exact integer certificates for nilpotent Lie algebras with hyperbolic
//! lattice-preserving automorphisms.
//!
//! The crate builds several families of such algebras from algebraic units,
//! emits a machine-verifiable certificate (integer structure constants, an
//! integer unimodular automorphism, factored characteristic polynomial, and
//! an exact no-eigenvalue-on-the-unit-circle proof), and re-verifies
//! certificates from scratch.

pub mod cert;
pub mod error;
pub mod families;
pub mod lie;
pub mod matrix;
pub mod poly;
pub mod qlinalg;
pub mod units;

pub use cert::{AnosovCertificate, VerificationReport};
pub use error::{CoreError, Result};
pub use poly::IntPolynomial;
