//! Period lattices, Eisenstein series and the Weierstrass invariants g2, g3.
//!
//! A lattice is spanned by two complex periods with Im(omega2/omega1) > 0
//! (the constructor swaps the periods if the orientation is reversed). The
//! invariants are
//!
//! ```text
//! g2 = 60 G4,   g3 = 140 G6,   G_k = sum over nonzero lattice points of w^-k
//! ```
//!
//! and the cubic 4x^3 - g2 x - g3 must have nonzero discriminant.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{EllipticError, Result};

/// Number of cached Laurent coefficients for the wp series (index k holds
/// the coefficient of z^{2k}); 28 terms cover the 0.4 * dmin series radius
/// down to ~1e-22.
const WP_COEFF_COUNT: usize = 28;

/// Shell cap for the direct Eisenstein summation.
const EISENSTEIN_MAX_SHELLS: i64 = 2000;

/// A period lattice with precomputed invariants.
#[derive(Debug)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    g2: Complex64,
    g3: Complex64,
    /// Laurent coefficients c_k of wp(z) = 1/z^2 + sum_{k>=1} c_k z^{2k}.
    wp_coeffs: Vec<Complex64>,
    /// Length of the shortest nonzero lattice vector.
    shortest: f64,
    eisenstein_cache: Mutex<BTreeMap<u32, Complex64>>,
}

/// Argument reduced to the fundamental cell centered at 0, together with the
/// integer shift that reconstructs the original point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedArgument {
    pub z_reduced: Complex64,
    pub m: i64,
    pub n: i64,
}

impl Lattice {
    /// Builds the lattice spanned by `omega1` and `omega2`.
    ///
    /// Fails with `DegenerateLattice` when the periods are R-linearly
    /// dependent and with `SingularCurve` when g2^3 - 27 g3^2 vanishes.
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        if omega1.norm() == 0.0 || omega2.norm() == 0.0 {
            return Err(EllipticError::DegenerateLattice(
                "periods must be nonzero".into(),
            ));
        }
        let ratio = omega2 / omega1;
        if !ratio.is_finite() || ratio.im.abs() < 1e-9 * (1.0 + ratio.norm()) {
            return Err(EllipticError::DegenerateLattice(format!(
                "omega2/omega1 = {} is real within tolerance",
                ratio
            )));
        }
        // Orientation: swap rather than negate so user-supplied values survive.
        let (omega1, omega2) = if ratio.im > 0.0 {
            (omega1, omega2)
        } else {
            (omega2, omega1)
        };

        let (b1, b2) = gauss_reduced_basis(omega1, omega2);
        let shortest = b1.norm();
        let (g4, g6) = eisenstein_g4_g6(b1, b2);
        let g2 = 60.0 * g4;
        let g3 = 140.0 * g6;

        let disc = g2 * g2 * g2 - 27.0 * g3 * g3;
        let scale = g2.norm().powi(3) + 27.0 * g3.norm().powi(2);
        if disc.norm() <= 1e-10 * scale.max(f64::MIN_POSITIVE) {
            return Err(EllipticError::SingularCurve(format!(
                "|disc| = {:e}",
                disc.norm()
            )));
        }

        let wp_coeffs = wp_laurent_coefficients(g2, g3);

        Ok(Lattice {
            omega1,
            omega2,
            g2,
            g3,
            wp_coeffs,
            shortest,
            eisenstein_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }

    pub fn g3(&self) -> Complex64 {
        self.g3
    }

    pub fn discriminant(&self) -> Complex64 {
        self.g2 * self.g2 * self.g2 - 27.0 * self.g3 * self.g3
    }

    /// Length of the shortest nonzero lattice vector.
    pub fn shortest_vector(&self) -> f64 {
        self.shortest
    }

    pub(crate) fn wp_coefficients(&self) -> &[Complex64] {
        &self.wp_coeffs
    }

    /// Eisenstein series G_order summed shell by shell over the lattice.
    ///
    /// Shells are the parallelogram rings max(|m|, |n|) = k; summation stops
    /// once a shell contributes less than 1e-14 of the accumulated value
    /// (with a hard cap of 2000 shells). Odd orders vanish identically and
    /// are rejected, as are orders below 4 where the double sum diverges.
    pub fn eisenstein(&self, order: u32) -> Result<Complex64> {
        if order % 2 == 1 || order < 4 {
            return Err(EllipticError::OddOrder(order));
        }
        if let Some(v) = self.eisenstein_cache.lock().unwrap().get(&order) {
            return Ok(*v);
        }
        let mut total = Complex64::new(0.0, 0.0);
        // Absolute floor keeps lattices with symmetric cancellation (e.g. G6
        // on the square lattice, which is exactly 0) from running to the cap.
        let floor = 1e-14 * self.shortest.powi(-(order as i32));
        for k in 1..=EISENSTEIN_MAX_SHELLS {
            let ring = self.shell_sum(k, order as i32);
            total += ring;
            if ring.norm() < (1e-14 * total.norm()).max(floor) {
                break;
            }
        }
        self.eisenstein_cache.lock().unwrap().insert(order, total);
        Ok(total)
    }

    fn shell_sum(&self, k: i64, order: i32) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        let kf = k as f64;
        for m in -k..=k {
            let mf = m as f64;
            s += (mf * self.omega1 + kf * self.omega2).powi(-order);
            s += (mf * self.omega1 - kf * self.omega2).powi(-order);
        }
        for n in (-k + 1)..k {
            let nf = n as f64;
            s += (kf * self.omega1 + nf * self.omega2).powi(-order);
            s += (-kf * self.omega1 + nf * self.omega2).powi(-order);
        }
        s
    }

    /// Coordinates of `z` in the lattice basis: z = a*omega1 + b*omega2,
    /// via Cramer's rule with the determinant Im(conj(omega1) omega2).
    pub fn basis_coordinates(&self, z: Complex64) -> (f64, f64) {
        let det = (self.omega1.conj() * self.omega2).im;
        let a = (z.conj() * self.omega2).im / det;
        let b = (self.omega1.conj() * z).im / det;
        (a, b)
    }

    /// Reduces `z` to the fundamental cell centered at 0, so that both basis
    /// coordinates of the result lie in [-1/2, 1/2].
    pub fn reduce_argument(&self, z: Complex64) -> ReducedArgument {
        let (a, b) = self.basis_coordinates(z);
        let m = a.round();
        let n = b.round();
        ReducedArgument {
            z_reduced: z - m * self.omega1 - n * self.omega2,
            m: m as i64,
            n: n as i64,
        }
    }

    /// Distance of `z` to the nearest lattice point, in basis coordinates.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let (a, b) = self.basis_coordinates(z);
        let da = a - a.round();
        let db = b - b.round();
        (da * da + db * db).sqrt()
    }

    /// JSON form: {omega1: [re, im], omega2: [re, im], g2: [re, im], g3: [re, im]}.
    pub fn to_json(&self) -> serde_json::Value {
        let pair = |c: Complex64| serde_json::json!([c.re, c.im]);
        serde_json::json!({
            "omega1": pair(self.omega1),
            "omega2": pair(self.omega2),
            "g2": pair(self.g2),
            "g3": pair(self.g3),
        })
    }
}

/// Lagrange-Gauss reduction of the basis; returns (b1, b2) spanning the same
/// lattice with |b1| minimal and Im(b2/b1) > 0. Used internally so the
/// invariant series converge quickly even for skewed input bases; the
/// user-visible periods are left untouched.
fn gauss_reduced_basis(omega1: Complex64, omega2: Complex64) -> (Complex64, Complex64) {
    let mut b1 = omega1;
    let mut b2 = omega2;
    if b1.norm() > b2.norm() {
        std::mem::swap(&mut b1, &mut b2);
    }
    for _ in 0..64 {
        let t = ((b2 * b1.conj()).re / b1.norm_sqr()).round();
        b2 -= t * b1;
        if b2.norm() >= b1.norm() {
            break;
        }
        std::mem::swap(&mut b1, &mut b2);
    }
    if (b2 / b1).im < 0.0 {
        b2 = -b2;
    }
    (b1, b2)
}

/// G4 and G6 through the Lambert-series form of the classical row-by-row
/// partial-fraction reduction:
///
/// ```text
/// G4 = (pi^4 / 45  w1^4) (1 + 240 sum d^3 q^d / (1 - q^d))
/// G6 = (2 pi^6 / 945 w1^6) (1 - 504 sum d^5 q^d / (1 - q^d))
/// ```
///
/// with q = exp(2 pi i w2/w1). On a Gauss-reduced basis |q| <= exp(-pi sqrt 3),
/// so a handful of terms reach machine precision.
fn eisenstein_g4_g6(b1: Complex64, b2: Complex64) -> (Complex64, Complex64) {
    let tau = b2 / b1;
    let q = (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau).exp();
    let mut s3 = Complex64::new(0.0, 0.0);
    let mut s5 = Complex64::new(0.0, 0.0);
    let mut qd = Complex64::new(1.0, 0.0);
    for d in 1..512u32 {
        qd *= q;
        if qd.norm() < 1e-60 {
            break;
        }
        let base = qd / (1.0 - qd);
        let d3 = (d as f64).powi(3);
        let t3 = d3 * base;
        let t5 = d3 * (d as f64) * (d as f64) * base;
        s3 += t3;
        s5 += t5;
        if t3.norm() < 1e-18 * s3.norm() + 1e-40 && t5.norm() < 1e-18 * s5.norm() + 1e-40 {
            break;
        }
    }
    let pi = std::f64::consts::PI;
    let w4 = b1.powi(4);
    let w6 = b1.powi(6);
    let g4 = pi.powi(4) / 45.0 * (1.0 + 240.0 * s3) / w4;
    let g6 = 2.0 * pi.powi(6) / 945.0 * (1.0 - 504.0 * s5) / w6;
    (g4, g6)
}

/// Laurent coefficients of wp around 0: c1 = g2/20, c2 = g3/28, and for
/// k >= 3 the recurrence obtained by differentiating the wp differential
/// equation,
///
/// ```text
/// c_k = 3 / ((2k+3)(k-2)) * sum_{m=1}^{k-2} c_m c_{k-1-m}.
/// ```
fn wp_laurent_coefficients(g2: Complex64, g3: Complex64) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); WP_COEFF_COUNT + 1];
    c[1] = g2 / 20.0;
    c[2] = g3 / 28.0;
    for k in 3..=WP_COEFF_COUNT {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 1..=(k - 2) {
            acc += c[m] * c[k - 1 - m];
        }
        c[k] = 3.0 / ((2 * k + 3) as f64 * (k - 2) as f64) * acc;
    }
    c
}
