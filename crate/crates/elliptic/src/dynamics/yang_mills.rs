//! SU(2) Yang-Mills reduction: the two-mode Hamiltonian
//! H = (p1^2 + p2^2 + q1^2 q2^2) / 2 maps under the symplectic substitution
//!
//! ```text
//! p1 = (x1 + x2) sqrt(2)/2,    q1 = 2^(3/4) (y1 + i y2) / 2,
//! p2 = (x1 - x2) sqrt(2)/2,    q2 = 2^(3/4) (y1 - i y2) / 2,
//! ```
//!
//! onto H = (x1^2 + x2^2)/2 + (y1^2 + y2^2)^2/4, the quartic family at
//! a = c = 0, b = 1/2. Real phase points correspond to the slice
//! q2 = conj(q1).

use num_complex::Complex64;

use crate::dynamics::PhaseState;
use crate::error::{EllipticError, Result};

/// Inverts the symplectic substitution; fails with `ComplexLeak` when
/// (q1, q2) does not sit on the real slice.
pub fn yang_mills_transform(p1: f64, p2: f64, q1: Complex64, q2: Complex64) -> Result<PhaseState> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let x1 = (p1 + p2) / sqrt2;
    let x2 = (p1 - p2) / sqrt2;
    let scale = 2.0f64.powf(0.75) / 2.0; // coefficient of (y1 +- i y2)
    let y1c = (q1 + q2) / (2.0 * scale);
    let y2c = (q1 - q2) / (Complex64::new(0.0, 2.0) * scale);
    let leak = y1c.im.abs().max(y2c.im.abs());
    if leak > 1e-10 {
        return Err(EllipticError::ComplexLeak(format!(
            "recovered coordinates have imaginary part {:e}; q2 must be conj(q1)",
            leak
        )));
    }
    Ok(PhaseState::new(y1c.re, y2c.re, x1, x2))
}

/// Hamiltonian on the gauge side, H = (p1^2 + p2^2 + q1^2 q2^2) / 2.
pub fn yang_mills_hamiltonian_pq(p1: f64, p2: f64, q1: Complex64, q2: Complex64) -> Complex64 {
    (p1 * p1 + p2 * p2 + q1 * q1 * q2 * q2) / 2.0
}

/// Hamiltonian on the reduced side, H = (x1^2 + x2^2)/2 + (y1^2 + y2^2)^2/4.
pub fn yang_mills_hamiltonian_xy(s: &PhaseState) -> f64 {
    let r2 = s.y1 * s.y1 + s.y2 * s.y2;
    0.5 * (s.x1 * s.x1 + s.x2 * s.x2) + 0.25 * r2 * r2
}

/// Forward substitution, exposed for round-trip checks: (p1, p2, q1, q2)
/// from a real phase point.
pub fn yang_mills_forward(s: &PhaseState) -> (f64, f64, Complex64, Complex64) {
    let sqrt2 = std::f64::consts::SQRT_2;
    let scale = 2.0f64.powf(0.75) / 2.0;
    let p1 = sqrt2 / 2.0 * (s.x1 + s.x2);
    let p2 = sqrt2 / 2.0 * (s.x1 - s.x2);
    let q1 = scale * Complex64::new(s.y1, s.y2);
    let q2 = scale * Complex64::new(s.y1, -s.y2);
    (p1, p2, q1, q2)
}
