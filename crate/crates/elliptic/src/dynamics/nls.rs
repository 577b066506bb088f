//! Traveling-wave reduction of the coupled nonlinear Schrodinger equations:
//! the plane-wave ansatz turns the PDE pair into the R^4 flow
//!
//! ```text
//! y1' = x1,  y2' = x2,  x1' = -(a + r^2) y1,  x2' = -(a + r^2) y2,
//! ```
//!
//! which is the quartic-family flow with b = 1/2, c = 0. The flow admits a
//! Lax pair A_h, B_h rational in the spectral parameter h; the
//! characteristic polynomial of A_h packs both integrals into the spectral
//! curve w^2 = h^3 + 2 a h^2 + (a^2 - H1) h - H2 with w = lambda (h + a).

use num_complex::Complex64;

use crate::dynamics::family;
use crate::dynamics::PhaseState;
use crate::error::{EllipticError, Result};

/// 2x2 Lax matrices at one phase point and spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxPair {
    pub a_mat: [[Complex64; 2]; 2],
    pub b_mat: [[Complex64; 2]; 2],
    pub h: Complex64,
}

impl LaxPair {
    /// Commutator [B, A] = B A - A B.
    pub fn commutator(&self) -> [[Complex64; 2]; 2] {
        let a = &self.a_mat;
        let b = &self.b_mat;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out[i][j] += b[i][k] * a[k][j] - a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    pub fn det_a(&self) -> Complex64 {
        self.a_mat[0][0] * self.a_mat[1][1] - self.a_mat[0][1] * self.a_mat[1][0]
    }
}

/// Vector field of the reduced flow (the family field at b = 1/2, c = 0).
pub fn nls_field(a: f64) -> impl Fn(&[f64], &mut [f64]) {
    family::family_field(a, 0.5, 0.0)
}

/// Lax matrices
///
/// ```text
/// A_h = | U_h   V_h |        B_h = | 0    1 |
///       | W_h  -U_h |              | R_h  0 |
/// ```
///
/// with U = (x1 y1 + x2 y2) / (2(a+h)), V = -1 - r^2 / (2(a+h)),
/// W = (x1^2 + x2^2) / (2(a+h)) - h + r^2 / 2, R = h - r^2.
pub fn nls_lax_matrices(s: &PhaseState, a: f64, h: Complex64) -> Result<LaxPair> {
    let shift = h + a;
    if shift.norm() < 1e-12 * (1.0 + h.norm()) {
        return Err(EllipticError::SpectralPole);
    }
    let r2 = s.y1 * s.y1 + s.y2 * s.y2;
    let u = 0.5 * (s.x1 * s.y1 + s.x2 * s.y2) / shift;
    let v = -1.0 - 0.5 * r2 / shift;
    let w = 0.5 * (s.x1 * s.x1 + s.x2 * s.x2) / shift - h + 0.5 * r2;
    let r = h - r2;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(LaxPair {
        a_mat: [[u, v], [w, -u]],
        b_mat: [[zero, one], [r, zero]],
        h,
    })
}

/// The two first integrals: H1 is the family Hamiltonian at b = 1/2, c = 0
/// and H2 = a H1 + (x1 y2 - x2 y1)^2 / 4.
pub fn nls_spectral_invariants(s: &PhaseState, a: f64) -> (f64, f64) {
    let (h1, angular) = family::family_invariants(a, 0.5, 0.0, s);
    (h1, a * h1 + 0.25 * angular * angular)
}

/// Value of the spectral curve's right-hand side read off the Lax matrix:
/// -det(A_h) (h + a)^2, which the curve identity equates to
/// h^3 + 2 a h^2 + (a^2 - H1) h - H2.
pub fn nls_char_poly_value(s: &PhaseState, a: f64, h: Complex64) -> Result<Complex64> {
    let lax = nls_lax_matrices(s, a, h)?;
    Ok(-lax.det_a() * (h + a) * (h + a))
}

/// Cubic coefficients (h^3, h^2, h, 1) from the invariants:
/// (1, 2a, a^2 - H1, -H2).
pub fn nls_spectral_cubic(s: &PhaseState, a: f64) -> [f64; 4] {
    let (h1, h2) = nls_spectral_invariants(s, a);
    [1.0, 2.0 * a, a * a - h1, -h2]
}

/// Cubic coefficients measured from the Lax matrix alone: -det(A_h)(h+a)^2
/// sampled at four spectral nodes and resolved through the Lagrange basis.
/// Along the flow these stay constant (isospectrality).
pub fn nls_spectral_curve_coefficients(s: &PhaseState, a: f64) -> Result<[f64; 4]> {
    let base = a.abs() + 1.0;
    let nodes = [base, base + 1.0, base + 2.0, base + 3.0];
    let mut values = [0.0f64; 4];
    for (i, &h) in nodes.iter().enumerate() {
        values[i] = nls_char_poly_value(s, a, Complex64::new(h, 0.0))?.re;
    }
    // Newton's divided differences, then expansion of the Newton form
    // p(h) = dd0 + dd1 (h-x0) + dd2 (h-x0)(h-x1) + dd3 (h-x0)(h-x1)(h-x2)
    // into descending monomial coefficients.
    let mut dd = values;
    for level in 1..4 {
        for i in (level..4).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }
    let mut poly = vec![dd[3]];
    for i in (0..3).rev() {
        let mut next = vec![0.0; poly.len() + 1];
        for (j, &p) in poly.iter().enumerate() {
            next[j] += p;
            next[j + 1] -= nodes[i] * p;
        }
        *next.last_mut().unwrap() += dd[i];
        poly = next;
    }
    Ok([poly[0], poly[1], poly[2], poly[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::rk4_integrate;
    use rand::{Rng, SeedableRng};

    const A: f64 = 0.8;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lax_matrices_at_origin() {
        let s = PhaseState::new(0.0, 0.0, 0.0, 0.0);
        let h = c(0.7, 0.0);
        let lax = nls_lax_matrices(&s, A, h).unwrap();
        assert_eq!(lax.a_mat[0][0], c(0.0, 0.0));
        assert_eq!(lax.a_mat[0][1], c(-1.0, 0.0));
        assert_eq!(lax.a_mat[1][0], -h);
        assert_eq!(lax.b_mat[1][0], h);
        // Trace A = 0 by construction.
        assert_eq!(lax.a_mat[0][0] + lax.a_mat[1][1], c(0.0, 0.0));
    }

    #[test]
    fn spectral_pole_is_rejected() {
        let s = PhaseState::new(0.1, 0.2, 0.3, 0.4);
        assert!(matches!(
            nls_lax_matrices(&s, A, c(-A, 0.0)),
            Err(EllipticError::SpectralPole)
        ));
    }

    #[test]
    fn invariants_at_origin_vanish() {
        let s = PhaseState::new(0.0, 0.0, 0.0, 0.0);
        assert_eq!(nls_spectral_invariants(&s, A), (0.0, 0.0));
    }

    #[test]
    fn h2_identity_is_exact() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(71);
        for _ in 0..50 {
            let s = PhaseState::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let (h1, h2) = nls_spectral_invariants(&s, A);
            let angular = s.x1 * s.y2 - s.x2 * s.y1;
            assert_eq!(h2, A * h1 + 0.25 * angular * angular);
        }
    }

    #[test]
    fn curve_identity_links_det_and_invariants() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(73);
        for _ in 0..20 {
            let s = PhaseState::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            let cubic = nls_spectral_cubic(&s, A);
            for h in [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)] {
                let measured = nls_char_poly_value(&s, A, h).unwrap();
                let expected = h * h * h + cubic[1] * h * h + cubic[2] * h + cubic[3];
                assert!(
                    (measured - expected).norm() <= 1e-8 * expected.norm().max(1.0),
                    "curve mismatch at h = {}",
                    h
                );
            }
        }
    }

    #[test]
    fn measured_coefficients_match_invariant_form() {
        let s = PhaseState::new(0.4, -0.2, 0.1, 0.3);
        let measured = nls_spectral_curve_coefficients(&s, A).unwrap();
        let formula = nls_spectral_cubic(&s, A);
        for i in 0..4 {
            assert!(
                (measured[i] - formula[i]).abs() < 1e-9 * formula[i].abs().max(1.0),
                "coefficient {}: {} vs {}",
                i,
                measured[i],
                formula[i]
            );
        }
    }

    #[test]
    fn invariants_are_conserved_along_the_flow() {
        let s0 = [0.4, -0.2, 0.1, 0.3];
        let h1 = |s: &[f64]| nls_spectral_invariants(&PhaseState::from_slice(s), A).0;
        let h2 = |s: &[f64]| nls_spectral_invariants(&PhaseState::from_slice(s), A).1;
        let traj = rk4_integrate(
            nls_field(A),
            &s0,
            1e-4,
            100_000,
            &[("h1", &h1), ("h2", &h2)],
        )
        .unwrap();
        assert!(traj.drift("h1").unwrap() < 1e-9);
        assert!(traj.drift("h2").unwrap() < 1e-9);
    }

    #[test]
    fn lax_equation_holds_along_the_flow() {
        // dA/dt from central differences along an RK4 trajectory against
        // [B, A] at the center point.
        let s0 = [0.4, -0.2, 0.1, 0.3];
        let dt = 1e-4;
        let traj = rk4_integrate(nls_field(A), &s0, dt, 20_000, &[]).unwrap();
        for h in [c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.0)] {
            for idx in [1000usize, 7000, 15_000] {
                let sm = PhaseState::from_slice(&traj.states[idx - 1]);
                let s0 = PhaseState::from_slice(&traj.states[idx]);
                let sp = PhaseState::from_slice(&traj.states[idx + 1]);
                let am = nls_lax_matrices(&sm, A, h).unwrap().a_mat;
                let ap = nls_lax_matrices(&sp, A, h).unwrap().a_mat;
                let lax = nls_lax_matrices(&s0, A, h).unwrap();
                let comm = lax.commutator();
                let mut worst = 0.0f64;
                for i in 0..2 {
                    for j in 0..2 {
                        let d = (ap[i][j] - am[i][j]) / (2.0 * dt);
                        worst = worst.max((d - comm[i][j]).norm());
                    }
                }
                assert!(worst < 1e-7, "Lax residual {} at h = {}", worst, h);
            }
        }
    }
}
