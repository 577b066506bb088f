//! Legendre-form elliptic integrals.
//!
//! ```text
//!              phi                                phi
//!             ⌠        d t                       ⌠     ________________
//! F(k, phi) = |  _________________   E(k, phi) = |   \/ 1 - k² sin²(t)   dt
//!             ⌡  \/ 1 - k² sin²(t)               ⌡
//!            0                                  0
//!
//!                  phi
//!                 ⌠               d t
//! Pi(k, l, phi) = |  ______________________________
//!                 ⌡  (1 + l sin²(t)) \/ 1 - k² sin²(t)
//!                0
//! ```
//!
//! The modulus convention is k (not the parameter m = k²). Incomplete
//! integrals go through adaptive Gauss-Kronrod quadrature; the complete
//! integrals K(k) and E(k) use the arithmetic-geometric mean.

use crate::error::{EllipticError, Result};

const FRAC_PI_2: f64 = std::f64::consts::FRAC_PI_2;

// 15-point Kronrod / 7-point Gauss pair on [-1, 1]; reference values kept
// at full published precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod panel: returns (K15 value, |K15 - G7| error gauge).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    ((kronrod * half), ((kronrod - gauss) * half).abs())
}

/// Adaptive bisection driven by the Kronrod-Gauss discrepancy. The gauge
/// grossly overestimates the K15 error on smooth integrands, which buys the
/// 1e-12 targets without a fuss.
fn adaptive_quad<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut stack = vec![(a, b, tol.max(1e-15))];
    let mut panels = 0usize;
    while let Some((a, b, tol)) = stack.pop() {
        panels += 1;
        if panels > 20_000 {
            return Err(EllipticError::NoConvergence(
                "adaptive quadrature exceeded its panel budget".into(),
            ));
        }
        let (v, e) = gk15(f, a, b);
        if e <= tol || (b - a).abs() < 1e-15 {
            total += v;
        } else {
            let m = 0.5 * (a + b);
            stack.push((a, m, 0.5 * tol));
            stack.push((m, b, 0.5 * tol));
        }
    }
    Ok(total)
}

fn check_modulus(k: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&k) {
        return Err(EllipticError::ParameterDomain(format!(
            "modulus k = {} outside [0, 1]",
            k
        )));
    }
    Ok(())
}

/// Incomplete integral of the first kind F(k, phi).
///
/// Amplitudes beyond the quarter period reduce through
/// F(k, phi + pi) = F(k, phi) + 2K(k).
pub fn incomplete_f(k: f64, phi: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 0.0 {
        return Ok(phi);
    }
    if k == 1.0 {
        if phi.abs() >= FRAC_PI_2 {
            return Err(EllipticError::DivergentIntegral(format!(
                "F(1, phi) diverges for |phi| >= pi/2 (phi = {})",
                phi
            )));
        }
        return Ok(phi.sin().atanh());
    }
    let n = (phi / std::f64::consts::PI).round();
    let phi_r = phi - n * std::f64::consts::PI;
    let mut out = adaptive_quad(
        &|t: f64| {
            let s = k * t.sin();
            1.0 / (1.0 - s * s).sqrt()
        },
        0.0,
        phi_r,
        1e-13,
    )?;
    if n != 0.0 {
        out += 2.0 * n * complete_k(k)?;
    }
    Ok(out)
}

/// Incomplete integral of the second kind E(k, phi).
pub fn incomplete_e(k: f64, phi: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 0.0 {
        return Ok(phi);
    }
    let n = (phi / std::f64::consts::PI).round();
    let phi_r = phi - n * std::f64::consts::PI;
    let mut out = adaptive_quad(
        &|t: f64| {
            let s = k * t.sin();
            (1.0 - s * s).sqrt()
        },
        0.0,
        phi_r,
        1e-13,
    )?;
    if n != 0.0 {
        out += 2.0 * n * complete_e(k)?;
    }
    Ok(out)
}

/// Incomplete integral of the third kind Pi(k, l, phi), with the
/// characteristic entering as 1 + l sin^2.
pub fn incomplete_pi(k: f64, l: f64, phi: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 1.0 && phi.abs() >= FRAC_PI_2 {
        return Err(EllipticError::DivergentIntegral(format!(
            "Pi(1, l, phi) diverges for |phi| >= pi/2 (phi = {})",
            phi
        )));
    }
    // The characteristic factor must stay away from zero along the path.
    let s_max = if phi.abs() >= FRAC_PI_2 {
        1.0
    } else {
        phi.sin().abs()
    };
    if 1.0 + l * s_max * s_max <= 1e-12 * (1.0 + l.abs()) {
        return Err(EllipticError::CharacteristicPole);
    }
    adaptive_quad(
        &|t: f64| {
            let s = t.sin();
            let s2 = s * s;
            1.0 / ((1.0 + l * s2) * (1.0 - k * k * s2).sqrt())
        },
        0.0,
        phi,
        1e-12,
    )
}

/// Complete integral of the first kind, K(k) = pi / (2 agm(1, k')).
pub fn complete_k(k: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 1.0 {
        return Err(EllipticError::ModulusOne);
    }
    let mut a = 1.0;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    for _ in 0..40 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
    }
    Ok(FRAC_PI_2 / a)
}

/// Complete integral of the second kind through the AGM with the
/// c_j^2 correction sum: E = K (1 - sum 2^{j-1} c_j^2).
pub fn complete_e(k: f64) -> Result<f64> {
    check_modulus(k)?;
    if k == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    let mut sum = 0.5 * k * k;
    let mut pow = 0.5;
    for _ in 0..40 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
    }
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// Partial sum of the hypergeometric series for K,
/// (pi/2) [1 + (1/2)^2 k^2 + ((1*3)/(2*4))^2 k^4 + ...], `terms` terms.
pub fn series_k(k: f64, terms: usize) -> Result<f64> {
    check_modulus(k)?;
    let k2 = k * k;
    let mut term = 1.0;
    let mut sum = 0.0;
    for n in 0..terms {
        if n > 0 {
            let r = (2.0 * n as f64 - 1.0) / (2.0 * n as f64);
            term *= r * r * k2;
        }
        sum += term;
    }
    Ok(FRAC_PI_2 * sum)
}

/// Partial sum of the series for E,
/// (pi/2) [1 - (1/2)^2 k^2 - ((1*3)/(2*4))^2 k^4/3 - ...], `terms` terms.
pub fn series_e(k: f64, terms: usize) -> Result<f64> {
    check_modulus(k)?;
    let k2 = k * k;
    let mut coeff = 1.0; // ((2n-1)!! / (2n)!!)^2 k^{2n}
    let mut sum = 0.0;
    for n in 0..terms {
        if n == 0 {
            sum += 1.0;
        } else {
            let r = (2.0 * n as f64 - 1.0) / (2.0 * n as f64);
            coeff *= r * r * k2;
            sum -= coeff / (2.0 * n as f64 - 1.0);
        }
    }
    Ok(FRAC_PI_2 * sum)
}

/// Real modulus with its complementary modulus and quarter periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiModulus {
    pub k: f64,
    pub k_prime: f64,
    pub big_k: f64,
    pub big_k_prime: f64,
}

impl JacobiModulus {
    pub fn new(k: f64) -> Result<Self> {
        check_modulus(k)?;
        let k_prime = ((1.0 - k) * (1.0 + k)).sqrt();
        let big_k = if k == 1.0 {
            f64::INFINITY
        } else {
            complete_k(k)?
        };
        let big_k_prime = if k == 0.0 {
            f64::INFINITY
        } else {
            complete_k(k_prime)?
        };
        Ok(JacobiModulus {
            k,
            k_prime,
            big_k,
            big_k_prime,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson oracle, independent of the Gauss-Kronrod path.
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let n = n + n % 2;
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn first_kind_degenerate_moduli() {
        for phi in [-1.2, 0.0, 0.4, 1.5, 3.0] {
            assert_eq!(incomplete_f(0.0, phi).unwrap(), phi);
        }
        // k = 1: F = argtanh(sin phi) = ln tan(phi/2 + pi/4).
        for phi in [-1.2, 0.3, 1.4] {
            let f = incomplete_f(1.0, phi).unwrap();
            let expect = ((phi / 2.0 + std::f64::consts::FRAC_PI_4).tan()).ln();
            assert!((f - expect).abs() < 1e-12);
        }
        assert!(matches!(
            incomplete_f(1.0, FRAC_PI_2),
            Err(EllipticError::DivergentIntegral(_))
        ));
    }

    #[test]
    fn first_kind_at_quarter_period_equals_complete() {
        let f = incomplete_f(0.5, FRAC_PI_2).unwrap();
        let k = complete_k(0.5).unwrap();
        assert!((f - k).abs() < 1e-12);
    }

    #[test]
    fn first_kind_block_additivity() {
        for (k, phi) in [(0.3, 0.7), (0.8, -0.4), (0.6, 1.2)] {
            let blocked = incomplete_f(k, phi + std::f64::consts::PI).unwrap();
            let oracle = simpson(
                |t: f64| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(),
                0.0,
                phi + std::f64::consts::PI,
                400_000,
            );
            assert!(
                (blocked - oracle).abs() < 1e-11,
                "block rule mismatch {} vs {}",
                blocked,
                oracle
            );
        }
    }

    #[test]
    fn second_kind_values() {
        assert_eq!(incomplete_e(0.0, 0.83).unwrap(), 0.83);
        assert!((incomplete_e(1.0, FRAC_PI_2).unwrap() - 1.0).abs() < 1e-13);
        let quad = simpson(
            |t: f64| (1.0 - (0.7 * t.sin()).powi(2)).sqrt(),
            0.0,
            0.3,
            200_000,
        );
        assert!((incomplete_e(0.7, 0.3).unwrap() - quad).abs() < 1e-12);
        // Monotone in phi.
        let mut last = 0.0;
        for i in 1..=10 {
            let e = incomplete_e(0.9, i as f64 * 0.5).unwrap();
            assert!(e > last);
            last = e;
        }
    }

    #[test]
    fn third_kind_reduces_to_first_kind_at_zero_characteristic() {
        for (k, phi) in [(0.4, 0.9), (0.9, 1.3)] {
            let p = incomplete_pi(k, 0.0, phi).unwrap();
            let f = incomplete_f(k, phi).unwrap();
            assert!((p - f).abs() < 1e-10);
        }
    }

    #[test]
    fn third_kind_closed_form_at_zero_modulus() {
        // Pi(0, l, pi/2) = pi / (2 sqrt(1 + l)) for l > 0.
        for l in [0.5, 1.0, 3.0] {
            let p = incomplete_pi(0.0, l, FRAC_PI_2).unwrap();
            let expect = FRAC_PI_2 / (1.0 + l).sqrt();
            assert!((p - expect).abs() < 1e-10, "{} vs {}", p, expect);
        }
    }

    #[test]
    fn third_kind_characteristic_pole() {
        assert!(matches!(
            incomplete_pi(0.5, -2.0, FRAC_PI_2),
            Err(EllipticError::CharacteristicPole)
        ));
    }

    #[test]
    fn complete_first_kind() {
        assert!((complete_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let k = complete_k(0.5).unwrap();
        let f = incomplete_f(0.5, FRAC_PI_2).unwrap();
        assert!((k - f).abs() < 1e-12);
        assert!(matches!(complete_k(1.0), Err(EllipticError::ModulusOne)));
        // Logarithmic divergence K = ln(4/k') + (k'^2/4)(ln(4/k') - 1) + ...
        // as k -> 1; k' = 1e-3 keeps the construction of k well clear of
        // the rounding cliff at 1.
        let kp: f64 = 1e-3;
        let k_near_one = (1.0 - kp * kp).sqrt();
        let kk = complete_k(k_near_one).unwrap();
        let log_term = (4.0 / kp).ln();
        let asymptotic = log_term + 0.25 * kp * kp * (log_term - 1.0);
        assert!((kk - asymptotic).abs() < 1e-9, "diff {}", kk - asymptotic);
    }

    #[test]
    fn complete_second_kind() {
        assert!((complete_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(complete_e(1.0).unwrap(), 1.0);
        let quad = simpson(
            |t: f64| (1.0 - (0.3 * t.sin()).powi(2)).sqrt(),
            0.0,
            FRAC_PI_2,
            200_000,
        );
        assert!((complete_e(0.3).unwrap() - quad).abs() < 1e-12);
    }

    #[test]
    fn series_match_agm_for_small_modulus() {
        assert!((series_k(0.0, 7).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((series_k(0.1, 20).unwrap() - complete_k(0.1).unwrap()).abs() < 1e-14);
        assert!((series_e(0.1, 20).unwrap() - complete_e(0.1).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn series_converge_monotonically() {
        let k = 0.9;
        let target_k = complete_k(k).unwrap();
        let target_e = complete_e(k).unwrap();
        let mut last_err_k = f64::INFINITY;
        let mut last_err_e = f64::INFINITY;
        for terms in [5usize, 10, 20, 40, 80] {
            let err_k = (series_k(k, terms).unwrap() - target_k).abs();
            let err_e = (series_e(k, terms).unwrap() - target_e).abs();
            assert!(err_k < last_err_k);
            assert!(err_e < last_err_e);
            last_err_k = err_k;
            last_err_e = err_e;
        }
        // Tail ratio per added term is bounded by k^2.
        let e40 = (series_k(k, 41).unwrap() - series_k(k, 40).unwrap()).abs();
        let e41 = (series_k(k, 42).unwrap() - series_k(k, 41).unwrap()).abs();
        assert!(e41 / e40 <= k * k + 1e-9);
    }

    #[test]
    fn legendre_relation_for_complete_integrals() {
        for i in 1..=9 {
            let k = i as f64 / 10.0;
            let kp = ((1.0 - k) * (1.0 + k)).sqrt();
            let kk = complete_k(k).unwrap();
            let kkp = complete_k(kp).unwrap();
            let e = complete_e(k).unwrap();
            let ep = complete_e(kp).unwrap();
            let res = e * kkp + ep * kk - kk * kkp - FRAC_PI_2;
            assert!(res.abs() < 1e-12, "Legendre residual {} at k = {}", res, k);
        }
    }

    #[test]
    fn jacobi_modulus_quarter_periods() {
        let m = JacobiModulus::new(0.6).unwrap();
        assert!((m.k * m.k + m.k_prime * m.k_prime - 1.0).abs() < 1e-15);
        assert!((m.big_k - incomplete_f(0.6, FRAC_PI_2).unwrap()).abs() < 1e-12);
        assert!((m.big_k_prime - complete_k(0.8).unwrap()).abs() < 1e-13);
        assert!(JacobiModulus::new(1.0).unwrap().big_k.is_infinite());
        assert!(JacobiModulus::new(1.5).is_err());
    }
}
