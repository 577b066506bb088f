//! Jacobi amplitude and the elliptic functions sn, cn, dn.
//!
//! Evaluation uses the descending-Landen / AGM phase recursion: run the AGM
//! on (1, k'), seed the phase with 2^N a_N t, then unwind
//! sin(2 phi_{j-1} - phi_j) = (c_j / a_j) sin(phi_j). Newton inversion of
//! F(k, phi) is kept out of the hot path and serves as the test oracle.
//! The degenerate moduli fall back to the closed forms am(t; 0) = t and
//! sn(t; 1) = tanh t.

use crate::error::Result;
use crate::integrals::complete_k;

/// Simultaneous values of the three Jacobi functions at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// sn, cn, dn at real argument `t` and modulus `k` in [0, 1].
pub fn jacobi_triple(t: f64, k: f64) -> Result<JacobiTriple> {
    crate::integrals::JacobiModulus::new(k)?;
    Ok(triple_unchecked(t, k))
}

fn triple_unchecked(t: f64, k: f64) -> JacobiTriple {
    if k == 0.0 {
        return JacobiTriple {
            sn: t.sin(),
            cn: t.cos(),
            dn: 1.0,
        };
    }
    if k == 1.0 {
        let sech = 1.0 / t.cosh();
        return JacobiTriple {
            sn: t.tanh(),
            cn: sech,
            dn: sech,
        };
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    // Reduce modulo the real period 4K to keep the seeded phase small.
    let quarter = complete_k(k).expect("k < 1 here");
    let t = t - 4.0 * quarter * (t / (4.0 * quarter)).round();

    let mut a = 1.0_f64;
    let mut b = kp;
    let mut scale = [0.0_f64; 32];
    let mut ratio = [0.0_f64; 32];
    let mut n = 0;
    for j in 0..32 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        scale[j] = an;
        ratio[j] = c / an;
        a = an;
        b = bn;
        n = j;
        if c.abs() <= f64::EPSILON * an {
            break;
        }
    }
    let mut phi = (1u64 << (n + 1)) as f64 * a * t;
    for j in (0..=n).rev() {
        let s = (ratio[j] * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    // dn via k'^2 + k^2 cn^2 avoids cancellation near sn = 1.
    let dn = (kp * kp + (k * cn) * (k * cn)).sqrt();
    JacobiTriple { sn, cn, dn }
}

/// Jacobi amplitude am(t; k), the inverse of F(k, .); odd and strictly
/// increasing, with am(t + 2K) = am(t) + pi for k < 1.
pub fn am(t: f64, k: f64) -> Result<f64> {
    crate::integrals::JacobiModulus::new(k)?;
    if k == 0.0 {
        return Ok(t);
    }
    if k == 1.0 {
        return Ok(t.tanh().asin());
    }
    let quarter = complete_k(k)?;
    let n = (t / (2.0 * quarter)).round();
    let tr = t - 2.0 * quarter * n;
    let triple = triple_unchecked(tr, k);
    Ok(n * std::f64::consts::PI + triple.sn.clamp(-1.0, 1.0).asin())
}

/// Derivatives (sn', cn', dn') = (cn dn, -sn dn, -k^2 sn cn).
pub fn jacobi_derivatives(t: f64, k: f64) -> Result<(f64, f64, f64)> {
    let j = jacobi_triple(t, k)?;
    Ok((j.cn * j.dn, -j.sn * j.dn, -k * k * j.sn * j.cn))
}

/// Addition formulas for sn, cn, dn at t + tau; all three share the
/// denominator 1 - k^2 sn^2(t) sn^2(tau).
pub fn jacobi_addition(t: f64, tau: f64, k: f64) -> Result<JacobiTriple> {
    let a = jacobi_triple(t, k)?;
    let b = jacobi_triple(tau, k)?;
    let denom = 1.0 - k * k * a.sn * a.sn * b.sn * b.sn;
    if denom.abs() <= 1e-12 {
        return Err(crate::error::EllipticError::DegenerateDenominator);
    }
    Ok(JacobiTriple {
        sn: (a.sn * b.cn * b.dn + b.sn * a.cn * a.dn) / denom,
        cn: (a.cn * b.cn - a.sn * b.sn * a.dn * b.dn) / denom,
        dn: (a.dn * b.dn - k * k * a.sn * b.sn * a.cn * b.cn) / denom,
    })
}

/// Residuals of the three first-order ODEs,
/// e.g. (d sn/dt)^2 - (1 - sn^2)(1 - k^2 sn^2).
pub fn jacobi_ode_residuals(t: f64, k: f64) -> Result<(f64, f64, f64)> {
    let j = jacobi_triple(t, k)?;
    let (dsn, dcn, ddn) = jacobi_derivatives(t, k)?;
    let k2 = k * k;
    let kp2 = 1.0 - k2;
    let r1 = dsn * dsn - (1.0 - j.sn * j.sn) * (1.0 - k2 * j.sn * j.sn);
    let r2 = dcn * dcn - (1.0 - j.cn * j.cn) * (kp2 + k2 * j.cn * j.cn);
    let r3 = ddn * ddn - (1.0 - j.dn * j.dn) * (j.dn * j.dn - kp2);
    Ok((r1, r2, r3))
}
