//! Weierstrass functions wp, zeta, sigma and the machinery built on them:
//! half-period values, quasi-periods, the addition law, curve points,
//! inversion, and divisor-based construction of general elliptic functions.
//!
//! Evaluation strategy for wp: reduce the argument to the fundamental cell,
//! halve it until it sits well inside the Laurent disk, evaluate the series
//! (coefficients cached on the lattice), then climb back up with the
//! tangent-line duplication formula
//!
//! ```text
//! wp(2z) = (wp''(z) / (2 wp'(z)))^2 - 2 wp(z),    wp'' = 6 wp^2 - g2/2.
//! ```
//!
//! zeta and sigma use the same ladder through zeta(2z) = 2 zeta(z) +
//! wp''(z)/(2 wp'(z)) and sigma(2z) = -wp'(z) sigma(z)^4, then quasi-period
//! shifts carry the values across the lattice.

use num_complex::Complex64;

use crate::error::{EllipticError, Result};
use crate::lattice::Lattice;

/// Fraction of the shortest lattice vector inside which the Laurent series
/// is evaluated directly.
const SERIES_RADIUS: f64 = 0.4;

/// Basis-coordinate distance below which an argument counts as a pole.
const POLE_THRESHOLD: f64 = 1e-13;

/// Values of wp at the three half-periods; the roots of 4x^3 - g2 x - g3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriodValues {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
}

/// Quasi-period increments of zeta across the two periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiPeriods {
    pub tau1: Complex64,
    pub tau2: Complex64,
}

impl QuasiPeriods {
    /// Residual of the Legendre relation tau1 omega2 - tau2 omega1 = 2 pi i.
    pub fn legendre_residual(&self, lat: &Lattice) -> f64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        (self.tau1 * lat.omega2() - self.tau2 * lat.omega1() - two_pi_i).norm()
    }
}

/// Laurent-series values of (wp, wp') at small arguments.
fn wp_series(lat: &Lattice, z: Complex64) -> (Complex64, Complex64) {
    let c = lat.wp_coefficients();
    let z2 = z * z;
    let mut p = 1.0 / z2;
    let mut d = -2.0 / (z2 * z);
    let mut zeven = z2; // z^{2k}
    for (k, ck) in c.iter().enumerate().skip(1) {
        p += ck * zeven;
        d += (2 * k) as f64 * ck * zeven / z;
        zeven *= z2;
    }
    (p, d)
}

/// One duplication step on the curve: (wp(z), wp'(z)) -> (wp(2z), wp'(2z)).
fn duplicate(lat: &Lattice, p: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let a = (6.0 * p * p - lat.g2() / 2.0) / d;
    let b = d - a * p;
    let p2 = a * a / 4.0 - 2.0 * p;
    let d2 = -(a * p2 + b);
    (p2, d2)
}

/// (wp, wp') without argument reduction; the caller guarantees z is not a
/// lattice point.
fn wp_with_prime_raw(lat: &Lattice, z: Complex64) -> (Complex64, Complex64) {
    let radius = SERIES_RADIUS * lat.shortest_vector();
    let mut w = z;
    let mut halvings = 0u32;
    while w.norm() > radius {
        w *= 0.5;
        halvings += 1;
    }
    let (mut p, mut d) = wp_series(lat, w);
    for _ in 0..halvings {
        (p, d) = duplicate(lat, p, d);
    }
    (p, d)
}

fn reduced_or_pole(lat: &Lattice, z: Complex64) -> Result<Complex64> {
    if lat.lattice_distance(z) < POLE_THRESHOLD {
        return Err(EllipticError::PoleAtLatticePoint(POLE_THRESHOLD));
    }
    Ok(lat.reduce_argument(z).z_reduced)
}

/// Weierstrass wp(z).
pub fn wp(lat: &Lattice, z: Complex64) -> Result<Complex64> {
    let zr = reduced_or_pole(lat, z)?;
    Ok(wp_with_prime_raw(lat, zr).0)
}

/// Derivative wp'(z).
pub fn wp_prime(lat: &Lattice, z: Complex64) -> Result<Complex64> {
    let zr = reduced_or_pole(lat, z)?;
    Ok(wp_with_prime_raw(lat, zr).1)
}

/// Both wp(z) and wp'(z) in one evaluation.
pub fn wp_with_prime(lat: &Lattice, z: Complex64) -> Result<(Complex64, Complex64)> {
    let zr = reduced_or_pole(lat, z)?;
    Ok(wp_with_prime_raw(lat, zr))
}

/// e1 = wp(omega1/2), e2 = wp(omega2/2), e3 = wp((omega1+omega2)/2).
pub fn half_period_values(lat: &Lattice) -> HalfPeriodValues {
    let half1 = lat.omega1() / 2.0;
    let half2 = lat.omega2() / 2.0;
    HalfPeriodValues {
        e1: wp_with_prime_raw(lat, half1).0,
        e2: wp_with_prime_raw(lat, half2).0,
        e3: wp_with_prime_raw(lat, half1 + half2).0,
    }
}

/// wp(u + v) from the chord form of the addition law,
/// wp(u+v) = ((wp'(u)-wp'(v))/(wp(u)-wp(v)))^2 / 4 - wp(u) - wp(v).
pub fn wp_addition(lat: &Lattice, u: Complex64, v: Complex64) -> Result<Complex64> {
    let (pu, du) = wp_with_prime(lat, u)?;
    let (pv, dv) = wp_with_prime(lat, v)?;
    if (pu - pv).norm() <= 1e-10 {
        return Err(EllipticError::DegenerateSecant);
    }
    if lat.lattice_distance(u + v) < POLE_THRESHOLD {
        return Err(EllipticError::PoleAtLatticePoint(POLE_THRESHOLD));
    }
    let slope = (du - dv) / (pu - pv);
    Ok(slope * slope / 4.0 - pu - pv)
}

/// wp'(u + v) from the secant-line relation wp'(u+v) = -(a wp(u+v) + b)
/// where y = a x + b is the chord through (wp(u), wp'(u)) and (wp(v), wp'(v)).
pub fn wp_prime_addition(lat: &Lattice, u: Complex64, v: Complex64) -> Result<Complex64> {
    let (pu, du) = wp_with_prime(lat, u)?;
    let (pv, dv) = wp_with_prime(lat, v)?;
    if (pu - pv).norm() <= 1e-10 {
        return Err(EllipticError::DegenerateSecant);
    }
    if lat.lattice_distance(u + v) < POLE_THRESHOLD {
        return Err(EllipticError::PoleAtLatticePoint(POLE_THRESHOLD));
    }
    let a = (du - dv) / (pu - pv);
    let b = (dv * pu - du * pv) / (pu - pv);
    let x3 = a * a / 4.0 - pu - pv;
    Ok(-(a * x3 + b))
}

/// wp(2z) by the duplication (tangent) formula.
pub fn wp_duplication(lat: &Lattice, z: Complex64) -> Result<Complex64> {
    let (p, d) = wp_with_prime(lat, z)?;
    if lat.lattice_distance(2.0 * z) < POLE_THRESHOLD {
        return Err(EllipticError::PoleAtLatticePoint(POLE_THRESHOLD));
    }
    Ok(duplicate(lat, p, d).0)
}

/// Inverts w = wp(z): returns z in the fundamental cell, unique up to sign.
///
/// Newton iteration on wp seeded from a coarse grid over the cell; the
/// defining integral-inversion identity is honored by round-trip rather
/// than by quadrature.
pub fn invert_wp(lat: &Lattice, w: Complex64) -> Result<Complex64> {
    let e = half_period_values(lat);
    for ei in [e.e1, e.e2, e.e3] {
        if (w - ei).norm() < 1e-10 {
            return Err(EllipticError::NoConvergence(
                "target value is a branch point e_i where wp' vanishes".into(),
            ));
        }
    }
    let tol = 1e-11 * w.norm().max(1.0);
    // Candidate seeds: the pole-side estimate wp ~ 1/z^2 plus a coarse grid
    // over the cell, ranked by initial residual.
    let mut seeds: Vec<(f64, Complex64)> = Vec::new();
    let pole_seed = 1.0 / w.sqrt();
    for cand in [pole_seed, -pole_seed] {
        if cand.is_finite() && lat.lattice_distance(cand) > 1e-6 {
            let (p, _) = wp_with_prime_raw(lat, cand);
            seeds.push(((p - w).norm(), cand));
        }
    }
    for i in -4i32..=4 {
        for j in -4i32..=4 {
            if i == 0 && j == 0 {
                continue;
            }
            let z = (i as f64 / 9.0) * lat.omega1() + (j as f64 / 9.0) * lat.omega2();
            let (p, _) = wp_with_prime_raw(lat, z);
            seeds.push(((p - w).norm(), z));
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (_, seed) in seeds.into_iter().take(8) {
        if let Some(z) = damped_newton(lat, w, seed, tol) {
            return Ok(lat.reduce_argument(z).z_reduced);
        }
    }
    Err(EllipticError::NoConvergence(
        "Newton iteration for invert_wp did not converge".into(),
    ))
}

/// Newton on wp(z) - w with backtracking: each step must shrink the
/// residual, which rules out the cycling plain Newton is prone to between
/// basins.
fn damped_newton(lat: &Lattice, w: Complex64, seed: Complex64, tol: f64) -> Option<Complex64> {
    let mut z = seed;
    let mut res = (wp_with_prime_raw(lat, z).0 - w).norm();
    for _ in 0..60 {
        if res <= tol {
            return Some(z);
        }
        let (p, d) = wp_with_prime_raw(lat, z);
        let step = (p - w) / d;
        let mut lambda = 1.0;
        let mut moved = false;
        for _ in 0..10 {
            let zn = z - lambda * step;
            if lat.lattice_distance(zn) > 1e-12 {
                let rn = (wp_with_prime_raw(lat, zn).0 - w).norm();
                if rn < res {
                    z = zn;
                    res = rn;
                    moved = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !moved {
            return None;
        }
    }
    if res <= tol {
        Some(z)
    } else {
        None
    }
}

/// The point (wp(z), wp'(z)) on the curve y^2 = 4x^3 - g2 x - g3.
pub fn curve_point(lat: &Lattice, z: Complex64) -> Result<(Complex64, Complex64)> {
    wp_with_prime(lat, z)
}

/// zeta Laurent series: 1/z - sum_{k>=1} c_k/(2k+1) z^{2k+1}.
fn zeta_series(lat: &Lattice, z: Complex64) -> Complex64 {
    let c = lat.wp_coefficients();
    let z2 = z * z;
    let mut out = 1.0 / z;
    let mut zodd = z * z2; // z^{2k+1}
    for (k, ck) in c.iter().enumerate().skip(1) {
        out -= ck / (2 * k + 1) as f64 * zodd;
        zodd *= z2;
    }
    out
}

/// zeta without reduction, via zeta(2w) = 2 zeta(w) + wp''(w) / (2 wp'(w)).
fn zeta_raw(lat: &Lattice, z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_RADIUS * lat.shortest_vector() {
        return zeta_series(lat, z);
    }
    let w = z * 0.5;
    let (p, d) = wp_with_prime_raw(lat, w);
    2.0 * zeta_raw(lat, w) + (6.0 * p * p - lat.g2() / 2.0) / (2.0 * d)
}

/// Quasi-periods tau_k = 2 zeta(omega_k / 2); oddness of zeta pins the value.
pub fn quasi_periods(lat: &Lattice) -> QuasiPeriods {
    QuasiPeriods {
        tau1: 2.0 * zeta_raw(lat, lat.omega1() / 2.0),
        tau2: 2.0 * zeta_raw(lat, lat.omega2() / 2.0),
    }
}

/// Weierstrass zeta(z).
pub fn zeta_w(lat: &Lattice, z: Complex64) -> Result<Complex64> {
    if lat.lattice_distance(z) < POLE_THRESHOLD {
        return Err(EllipticError::PoleAtLatticePoint(POLE_THRESHOLD));
    }
    let r = lat.reduce_argument(z);
    let mut out = zeta_raw(lat, r.z_reduced);
    if r.m != 0 || r.n != 0 {
        let q = quasi_periods(lat);
        out += r.m as f64 * q.tau1 + r.n as f64 * q.tau2;
    }
    Ok(out)
}

/// sigma Taylor form inside the series disk: z exp(-sum c_k z^{2k+2}/((2k+1)(2k+2))),
/// the integrated form of sigma'/sigma = zeta.
fn sigma_series(lat: &Lattice, z: Complex64) -> Complex64 {
    let c = lat.wp_coefficients();
    let z2 = z * z;
    let mut expo = Complex64::new(0.0, 0.0);
    let mut zpow = z2 * z2; // z^{2k+2}
    for (k, ck) in c.iter().enumerate().skip(1) {
        expo -= ck / ((2 * k + 1) as f64 * (2 * k + 2) as f64) * zpow;
        zpow *= z2;
    }
    z * expo.exp()
}

/// sigma without reduction, via sigma(2w) = -wp'(w) sigma(w)^4.
fn sigma_raw(lat: &Lattice, z: Complex64) -> Complex64 {
    if z.norm() <= SERIES_RADIUS * lat.shortest_vector() {
        return sigma_series(lat, z);
    }
    let w = z * 0.5;
    let (_, d) = wp_with_prime_raw(lat, w);
    let s = sigma_raw(lat, w);
    -d * s * s * s * s
}

/// Weierstrass sigma(z); entire, with simple zeros on the lattice.
pub fn sigma_w(lat: &Lattice, z: Complex64) -> Complex64 {
    let r = lat.reduce_argument(z);
    let s = sigma_raw(lat, r.z_reduced);
    if r.m == 0 && r.n == 0 {
        return s;
    }
    // Iterated quasi-periodicity: sigma(z + m w1 + n w2) picks up the sign
    // (-1)^{m + n + mn} and the factor exp(eta (z_red + omega/2)).
    let q = quasi_periods(lat);
    let eta = r.m as f64 * q.tau1 + r.n as f64 * q.tau2;
    let omega = r.m as f64 * lat.omega1() + r.n as f64 * lat.omega2();
    let sign = if (r.m + r.n + r.m * r.n) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    sign * (eta * (r.z_reduced + omega / 2.0)).exp() * s
}

/// Zeros and poles (with multiplicities) prescribing an elliptic function.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisor {
    pub zeros: Vec<(Complex64, u32)>,
    pub poles: Vec<(Complex64, u32)>,
}

impl Divisor {
    pub fn new(zeros: Vec<(Complex64, u32)>, poles: Vec<(Complex64, u32)>) -> Self {
        Divisor { zeros, poles }
    }

    fn order(points: &[(Complex64, u32)]) -> u32 {
        points.iter().map(|(_, m)| m).sum()
    }

    /// Checks the two divisor constraints: equal zero/pole counts, and
    /// weighted sum difference lying in the lattice.
    pub fn validate(&self, lat: &Lattice) -> Result<()> {
        let nz = Self::order(&self.zeros);
        let np = Self::order(&self.poles);
        if nz != np {
            return Err(EllipticError::InvalidDivisor(format!(
                "zero count {} differs from pole count {}",
                nz, np
            )));
        }
        if np < 2 {
            return Err(EllipticError::InvalidDivisor(
                "an elliptic function has order at least 2".into(),
            ));
        }
        let mut diff = Complex64::new(0.0, 0.0);
        for (a, m) in &self.zeros {
            diff += *m as f64 * a;
        }
        for (b, m) in &self.poles {
            diff -= *m as f64 * b;
        }
        let (x, y) = lat.basis_coordinates(diff);
        if (x - x.round()).abs() > 1e-8 || (y - y.round()).abs() > 1e-8 {
            return Err(EllipticError::InvalidDivisor(format!(
                "weighted zero/pole sum {} is not a lattice period",
                diff
            )));
        }
        Ok(())
    }
}

/// Builds the elliptic function with the prescribed divisor,
///
/// ```text
/// f(z) = C sigma(z + sum_{j>=2} a_j - sum_j b_j) prod_{j>=2} sigma(z - a_j)
///        / prod_j sigma(z - b_j),
/// ```
///
/// where the a_j are the zeros and b_j the poles listed with multiplicity.
pub fn elliptic_from_divisor<'a>(
    lat: &'a Lattice,
    divisor: &Divisor,
    scale: Complex64,
) -> Result<impl Fn(Complex64) -> Complex64 + 'a> {
    divisor.validate(lat)?;
    let mut zeros = Vec::new();
    for (a, m) in &divisor.zeros {
        for _ in 0..*m {
            zeros.push(*a);
        }
    }
    let mut poles = Vec::new();
    for (b, m) in &divisor.poles {
        for _ in 0..*m {
            poles.push(*b);
        }
    }
    let lead_shift: Complex64 =
        zeros[1..].iter().sum::<Complex64>() - poles.iter().sum::<Complex64>();
    let rest: Vec<Complex64> = zeros[1..].to_vec();
    Ok(move |z: Complex64| {
        let mut out = scale * sigma_w(lat, z + lead_shift);
        for a in &rest {
            out *= sigma_w(lat, z - a);
        }
        for b in &poles {
            out /= sigma_w(lat, z - b);
        }
        out
    })
}

/// Integrates `f` counterclockwise around the boundary of the fundamental
/// cell centered at 0, with Gauss-Legendre nodes on each edge. For an
/// elliptic function with no poles on the boundary the result is
/// 2 pi i times the residue sum, i.e. zero.
pub fn cell_contour_integral<F>(lat: &Lattice, f: F, nodes_per_edge: usize) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let c1 = (lat.omega1() + lat.omega2()) / 2.0;
    let c2 = (-lat.omega1() + lat.omega2()) / 2.0;
    let c3 = (-lat.omega1() - lat.omega2()) / 2.0;
    let c4 = (lat.omega1() - lat.omega2()) / 2.0;
    let (nodes, weights) = gauss_legendre(nodes_per_edge);
    let mut total = Complex64::new(0.0, 0.0);
    for (z0, z1) in [(c1, c2), (c2, c3), (c3, c4), (c4, c1)] {
        let mid = (z0 + z1) / 2.0;
        let half = (z1 - z0) / 2.0;
        for (x, w) in nodes.iter().zip(&weights) {
            total += w * f(mid + x * half) * half;
        }
    }
    total
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre polynomial.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}
