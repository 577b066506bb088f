//! The integrable Hamiltonian family on R^4,
//!
//! ```text
//! H1 = (x1^2 + x2^2 + a r^2 + b r^4 + c r^6) / 2,    r^2 = y1^2 + y2^2,
//! ```
//!
//! with the angular momentum H2 = x1 y2 - x2 y1 in involution. Level sets
//! (c1, c2) of (H1, H2) are carried by the quartic curve
//! w^2 + a z^2 + b z^3 + c z^4 - 2 c1 z + c2^2 = 0 in (z, w) = (r^2, r r').

use crate::dynamics::PhaseState;

/// Phase-space derivative of the Hamiltonian flow at `s`.
pub fn family_vector_field(a: f64, b: f64, c: f64, s: &PhaseState) -> PhaseState {
    let r2 = s.y1 * s.y1 + s.y2 * s.y2;
    let factor = a + 2.0 * b * r2 + 3.0 * c * r2 * r2;
    PhaseState {
        y1: s.x1,
        y2: s.x2,
        x1: -factor * s.y1,
        x2: -factor * s.y2,
    }
}

/// Same field in the flat `&[f64]` form used by `rk4_integrate`.
pub fn family_field(a: f64, b: f64, c: f64) -> impl Fn(&[f64], &mut [f64]) {
    move |s, out| {
        let d = family_vector_field(a, b, c, &PhaseState::from_slice(s));
        out[0] = d.y1;
        out[1] = d.y2;
        out[2] = d.x1;
        out[3] = d.x2;
    }
}

/// The two first integrals (H1, H2) at `s`.
pub fn family_invariants(a: f64, b: f64, c: f64, s: &PhaseState) -> (f64, f64) {
    let r2 = s.y1 * s.y1 + s.y2 * s.y2;
    let h1 = 0.5 * (s.x1 * s.x1 + s.x2 * s.x2 + a * r2 + b * r2 * r2 + c * r2 * r2 * r2);
    let h2 = s.x1 * s.y2 - s.x2 * s.y1;
    (h1, h2)
}

/// Gradient of H1 in state order (y1, y2, x1, x2); feeds the analytic
/// Poisson bracket.
pub fn family_h1_gradient(a: f64, b: f64, c: f64, s: &PhaseState) -> [f64; 4] {
    let r2 = s.y1 * s.y1 + s.y2 * s.y2;
    let factor = a + 2.0 * b * r2 + 3.0 * c * r2 * r2;
    [factor * s.y1, factor * s.y2, s.x1, s.x2]
}

/// Gradient of H2 = x1 y2 - x2 y1 in state order.
pub fn family_h2_gradient(s: &PhaseState) -> [f64; 4] {
    [-s.x2, s.x1, s.y2, -s.y1]
}

/// Coefficients (z^4, z^3, z^2, z, 1) of the curve w^2 = poly(z) on the
/// invariant level (c1, c2): w^2 = -c z^4 - b z^3 - a z^2 + 2 c1 z - c2^2.
pub fn family_quartic_curve(a: f64, b: f64, c: f64, c1: f64, c2: f64) -> [f64; 5] {
    [-c, -b, -a, 2.0 * c1, -c2 * c2]
}

/// Residual of the curve equation at the phase point `s`, with
/// z = r^2 and w = r dr/dt = y1 x1 + y2 x2.
pub fn family_curve_residual(a: f64, b: f64, c: f64, c1: f64, c2: f64, s: &PhaseState) -> f64 {
    let z = s.y1 * s.y1 + s.y2 * s.y2;
    let w = s.y1 * s.x1 + s.y2 * s.x2;
    w * w + a * z * z + b * z * z * z + c * z * z * z * z - 2.0 * c1 * z + c2 * c2
}
