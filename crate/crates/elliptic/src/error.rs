//! Error type shared by all modules.

use thiserror::Error;

/// Library-wide error. Variant names are stable and surfaced verbatim by the
/// CLI on standard error.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("DegenerateLattice: {0}")]
    DegenerateLattice(String),
    #[error("SingularCurve: discriminant g2^3 - 27 g3^2 vanishes ({0})")]
    SingularCurve(String),
    #[error("OddOrder: Eisenstein order must be even and >= 4, got {0}")]
    OddOrder(u32),
    #[error("PoleAtLatticePoint: argument within {0:e} of a lattice point")]
    PoleAtLatticePoint(f64),
    #[error("DegenerateSecant: wp(u) and wp(v) coincide; perturb the arguments")]
    DegenerateSecant,
    #[error("NoConvergence: {0}")]
    NoConvergence(String),
    #[error("InvalidDivisor: {0}")]
    InvalidDivisor(String),
    #[error("DivergentIntegral: {0}")]
    DivergentIntegral(String),
    #[error("CharacteristicPole: 1 + l sin^2(phi) vanishes on the integration path")]
    CharacteristicPole,
    #[error("ModulusOne: complete integral of the first kind diverges at k = 1")]
    ModulusOne,
    #[error("DegenerateDenominator: 1 - k^2 sn^2(t) sn^2(tau) vanishes")]
    DegenerateDenominator,
    #[error("RegimeMismatch: {0}")]
    RegimeMismatch(String),
    #[error("ParameterDomain: {0}")]
    ParameterDomain(String),
    #[error("SpectralPole: spectral parameter h coincides with -a")]
    SpectralPole,
    #[error("ComplexLeak: {0}")]
    ComplexLeak(String),
    #[error("NonFiniteState: integration produced a non-finite component at step {0}")]
    NonFiniteState(usize),
}

pub type Result<T> = std::result::Result<T, EllipticError>;
