//! Numerical elliptic functions and integrable dynamics.
//!
//! The crate is organized around five subsystems:
//!
//! - [`lattice`]: period lattices, Eisenstein series, invariants g2/g3 and
//!   argument reduction to the fundamental cell;
//! - [`weierstrass`]: wp, wp', zeta, sigma, quasi-periods, the addition
//!   law, inversion, and divisor-prescribed elliptic functions;
//! - [`integrals`]: Legendre-form incomplete and complete elliptic
//!   integrals with their series expansions;
//! - [`jacobi`]: the amplitude am and the functions sn, cn, dn;
//! - [`dynamics`]: closed-form elliptic solutions of the pendulum, the
//!   Euler rigid body, a quartic integrable family, the reduced coupled
//!   nonlinear Schrodinger flow with its Lax pair, and the SU(2) Yang-Mills
//!   reduction, all validated against a bundled RK4 oracle.
//!
//! Every function is pure; types are immutable after construction and safe
//! to share across threads.

pub mod dynamics;
pub mod error;
pub mod integrals;
pub mod jacobi;
pub mod lattice;
pub mod suite;
pub mod weierstrass;

pub use error::{EllipticError, Result};
pub use lattice::{Lattice, ReducedArgument};

/// Convenience alias used throughout the API.
pub type Complex = num_complex::Complex64;
