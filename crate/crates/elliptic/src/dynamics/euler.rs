//! Torque-free Euler rigid body: the angular momentum obeys
//!
//! ```text
//! m1' = (l3 - l2) m2 m3,   m2' = (l1 - l3) m1 m3,   m3' = (l2 - l1) m1 m2
//! ```
//!
//! with inverse inertia l1 > l2 > l3 > 0, conserving the energy
//! 2 H1 = l1 m1^2 + l2 m2^2 + l3 m3^2 and the total momentum r^2 = |m|^2.
//! With the radius convention r^2 > 2 H1 / l2 and the clock fixed by
//! m2(0) = 0, the motion is (A cn, B sn, C dn) at modulus
//! k^2 = (l1 - l2)(2H1 - r^2 l3) / ((l2 - l3)(r^2 l1 - 2H1)).

use crate::error::{EllipticError, Result};
use crate::jacobi::jacobi_triple;

/// Inverse inertia triple with the two conserved levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParams {
    pub lambda: [f64; 3],
    pub h1: f64,
    pub r2: f64,
}

impl EulerParams {
    /// Validates the ordering l1 > l2 > l3 > 0 and the sphere-ellipsoid
    /// admissibility 2 H1 / l1 < r^2 < 2 H1 / l3.
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64, h1: f64, r2: f64) -> Result<Self> {
        if !(lambda1 > lambda2 && lambda2 > lambda3 && lambda3 > 0.0) {
            return Err(EllipticError::ParameterDomain(format!(
                "inverse inertias must satisfy l1 > l2 > l3 > 0, got ({}, {}, {})",
                lambda1, lambda2, lambda3
            )));
        }
        if h1 <= 0.0 {
            return Err(EllipticError::ParameterDomain(
                "energy H1 must be positive".into(),
            ));
        }
        if !(r2 > 2.0 * h1 / lambda1 && r2 < 2.0 * h1 / lambda3) {
            return Err(EllipticError::ParameterDomain(format!(
                "momentum sphere misses the energy ellipsoid: need {} < r2 < {}, got {}",
                2.0 * h1 / lambda1,
                2.0 * h1 / lambda3,
                r2
            )));
        }
        Ok(EulerParams {
            lambda: [lambda1, lambda2, lambda3],
            h1,
            r2,
        })
    }
}

/// Modulus k of the elliptic solution;
/// k^2 = (l1-l2)(2H1 - r^2 l3) / ((l2-l3)(r^2 l1 - 2H1)), in (0, 1) under
/// the convention r^2 > 2 H1 / l2.
pub fn euler_top_modulus(e: &EulerParams) -> Result<f64> {
    let [l1, l2, l3] = e.lambda;
    if e.r2 * l2 <= 2.0 * e.h1 {
        return Err(EllipticError::ParameterDomain(format!(
            "sn-form convention needs r2 > 2 H1 / l2 = {}, got {}",
            2.0 * e.h1 / l2,
            e.r2
        )));
    }
    let k2 = (l1 - l2) * (2.0 * e.h1 - e.r2 * l3) / ((l2 - l3) * (e.r2 * l1 - 2.0 * e.h1));
    if !(k2 > 0.0 && k2 < 1.0) {
        return Err(EllipticError::ParameterDomain(format!(
            "modulus k^2 = {} falls outside (0, 1)",
            k2
        )));
    }
    Ok(k2.sqrt())
}

/// The closed-form solution with its amplitude, frequency and modulus made
/// explicit; `m1_sign` records the branch fixed against the vector field at
/// t = 0+.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerClosedForm {
    pub params: EulerParams,
    pub amplitude: [f64; 3],
    pub omega: f64,
    pub k: f64,
    pub m1_sign: f64,
}

impl EulerClosedForm {
    pub fn new(e: &EulerParams) -> Result<Self> {
        let [l1, l2, l3] = e.lambda;
        let k = euler_top_modulus(e)?;
        let a = ((2.0 * e.h1 - e.r2 * l3) / (l1 - l3)).sqrt();
        let b = ((2.0 * e.h1 - e.r2 * l3) / (l2 - l3)).sqrt();
        let c = ((e.r2 * l1 - 2.0 * e.h1) / (l1 - l3)).sqrt();
        let omega = ((l2 - l3) * (e.r2 * l1 - 2.0 * e.h1)).sqrt();

        // The radicals leave the m1 branch open; pick the sign whose time
        // derivative at t = 0 matches the vector field. At t = 0 the only
        // nonzero components are m2' = b omega (closed form) and
        // (l1 - l3) s a c (field).
        let residual = |s: f64| (b * omega - (l1 - l3) * s * a * c).abs();
        let m1_sign = if residual(1.0) <= residual(-1.0) {
            1.0
        } else {
            -1.0
        };
        Ok(EulerClosedForm {
            params: *e,
            amplitude: [a, b, c],
            omega,
            k,
            m1_sign,
        })
    }

    /// Momentum triple (m1, m2, m3) at time t.
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let j = jacobi_triple(self.omega * t, self.k).expect("modulus in (0,1)");
        [
            self.m1_sign * self.amplitude[0] * j.cn,
            self.amplitude[1] * j.sn,
            self.amplitude[2] * j.dn,
        ]
    }
}

/// Momentum triple of the generic solution at time t (m2(0) = 0 convention).
pub fn euler_top_solution(e: &EulerParams, t: f64) -> Result<[f64; 3]> {
    Ok(EulerClosedForm::new(e)?.eval(t))
}

/// Symmetric-top special case l1 = l2: m3 = A stays constant and (m1, m2)
/// precess as C (cos, sin)(A (l1 - l3) t).
pub fn symmetric_top_solution(lambda1: f64, lambda3: f64, a: f64, c: f64, t: f64) -> [f64; 3] {
    let phase = a * (lambda1 - lambda3) * t;
    [c * phase.cos(), c * phase.sin(), a]
}

/// Right-hand side of the Euler equations for RK4 runs.
pub fn euler_field(lambda: [f64; 3]) -> impl Fn(&[f64], &mut [f64]) {
    move |m, out| {
        out[0] = (lambda[2] - lambda[1]) * m[1] * m[2];
        out[1] = (lambda[0] - lambda[2]) * m[0] * m[2];
        out[2] = (lambda[1] - lambda[0]) * m[0] * m[1];
    }
}

/// Energy level 2 H1 = l1 m1^2 + l2 m2^2 + l3 m3^2, returned as H1.
pub fn euler_energy(lambda: [f64; 3], m: &[f64]) -> f64 {
    0.5 * (lambda[0] * m[0] * m[0] + lambda[1] * m[1] * m[1] + lambda[2] * m[2] * m[2])
}

/// Squared momentum norm r^2 = m1^2 + m2^2 + m3^2 (twice H2).
pub fn euler_spin_sq(m: &[f64]) -> f64 {
    m[0] * m[0] + m[1] * m[1] + m[2] * m[2]
}
