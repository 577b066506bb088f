//! Simple pendulum x'' + (g/l) sin x = 0 in its three closed-form regimes.
//!
//! The oscillatory branch is parameterized by the turning angle x0 with the
//! clock started at the bottom of the swing (x(0) = 0, positive velocity),
//! so sin(x/2) = sin(x0/2) sn(sqrt(g/l) t) with modulus k = sin(x0/2). The
//! circulating branch is parameterized by the angular velocity at the
//! bottom instead; see `CirculatingPendulum`.

use crate::error::{EllipticError, Result};
use crate::integrals::complete_k;
use crate::jacobi::{am, jacobi_triple};

/// Length, gravity and turning angle of the bounded regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    pub l: f64,
    pub g: f64,
    pub x0: f64,
}

impl PendulumParams {
    pub fn new(l: f64, g: f64, x0: f64) -> Result<Self> {
        if l <= 0.0 || g <= 0.0 {
            return Err(EllipticError::ParameterDomain(
                "pendulum needs l > 0 and g > 0".into(),
            ));
        }
        Ok(PendulumParams { l, g, x0 })
    }

    fn is_separatrix(&self) -> bool {
        (self.x0.abs() - std::f64::consts::PI).abs() <= 1e-12
    }
}

/// Oscillatory solution x(t) = 2 arcsin(k sn(sqrt(g/l) t; k)), k = sin(x0/2).
pub fn pendulum_oscillatory(p: &PendulumParams, t: f64) -> Result<f64> {
    let amp = p.x0.abs();
    if amp == 0.0 || amp >= std::f64::consts::PI {
        return Err(EllipticError::RegimeMismatch(format!(
            "oscillatory regime needs 0 < |x0| < pi, got x0 = {}",
            p.x0
        )));
    }
    let k = (amp / 2.0).sin();
    let j = jacobi_triple((p.g / p.l).sqrt() * t, k)?;
    Ok(2.0 * (k * j.sn).asin())
}

/// Oscillation period 4 sqrt(l/g) K(sin(x0/2)).
pub fn pendulum_period(p: &PendulumParams) -> Result<f64> {
    if p.x0.abs() >= std::f64::consts::PI {
        return Err(EllipticError::RegimeMismatch(format!(
            "period diverges at the separatrix; |x0| = {} >= pi",
            p.x0.abs()
        )));
    }
    let k = (p.x0.abs() / 2.0).sin();
    Ok(4.0 * (p.l / p.g).sqrt() * complete_k(k)?)
}

/// Separatrix solution x(t) = 4 arctan(exp(sqrt(g/l) t)) - pi for |x0| = pi.
pub fn pendulum_separatrix(p: &PendulumParams, t: f64) -> Result<f64> {
    if !p.is_separatrix() {
        return Err(EllipticError::RegimeMismatch(format!(
            "separatrix regime needs |x0| = pi, got x0 = {}",
            p.x0
        )));
    }
    Ok(4.0 * ((p.g / p.l).sqrt() * t).exp().atan() - std::f64::consts::PI)
}

/// Circulating regime, parameterized by the angular velocity omega0 at the
/// bottom of the circle (the energy lies above the separatrix when
/// omega0^2 > 4 g / l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirculatingPendulum {
    pub l: f64,
    pub g: f64,
    pub omega0: f64,
}

impl CirculatingPendulum {
    pub fn new(l: f64, g: f64, omega0: f64) -> Result<Self> {
        if l <= 0.0 || g <= 0.0 {
            return Err(EllipticError::ParameterDomain(
                "pendulum needs l > 0 and g > 0".into(),
            ));
        }
        if omega0 * omega0 <= 4.0 * g / l {
            return Err(EllipticError::RegimeMismatch(format!(
                "circulating regime needs omega0^2 > 4 g / l; got omega0 = {}",
                omega0
            )));
        }
        Ok(CirculatingPendulum { l, g, omega0 })
    }

    /// Modulus of the amplitude form x = 2 am(omega0 t / 2; k): energy
    /// matching at the bottom gives k = 2 sqrt(g/l) / omega0 < 1.
    pub fn modulus(&self) -> f64 {
        2.0 * (self.g / self.l).sqrt() / self.omega0.abs()
    }
}

/// Circulating solution x(t) = 2 am(omega0 t / 2; k).
pub fn pendulum_circulating(p: &CirculatingPendulum, t: f64) -> Result<f64> {
    let sign = self::sign(p.omega0);
    Ok(2.0 * am(p.omega0.abs() * t / 2.0, p.modulus())? * sign)
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Vector field of Eq. x'' = -(g/l) sin x on the state [x, x'].
pub fn pendulum_field(l: f64, g: f64) -> impl Fn(&[f64], &mut [f64]) {
    move |s, out| {
        out[0] = s[1];
        out[1] = -(g / l) * s[0].sin();
    }
}

/// Energy (per unit mass and length) v^2/2 - (g/l) cos x; conserved.
pub fn pendulum_energy(l: f64, g: f64, state: &[f64]) -> f64 {
    0.5 * state[1] * state[1] - (g / l) * state[0].cos()
}
