//! Named identity suites behind the CLI `identities` subcommand: each check
//! evaluates one invariant at a deterministic sample (fixed RNG seeds) and
//! reports the worst residual against its tolerance.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use crate::dynamics::{self, PhaseState};
use crate::integrals;
use crate::jacobi;
use crate::lattice::Lattice;
use crate::weierstrass as ws;

/// Which module's invariants to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteScope {
    Weierstrass,
    Jacobi,
    Integrals,
    Dynamics,
    All,
}

impl SuiteScope {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "weierstrass" => Some(SuiteScope::Weierstrass),
            "jacobi" => Some(SuiteScope::Jacobi),
            "integrals" => Some(SuiteScope::Integrals),
            "dynamics" => Some(SuiteScope::Dynamics),
            "all" => Some(SuiteScope::All),
            _ => None,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

/// Runs the requested scope; `tol_override` replaces every default
/// tolerance (clamped to machine epsilon from below).
pub fn run_suite(scope: SuiteScope, tol_override: Option<f64>) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    if matches!(scope, SuiteScope::Weierstrass | SuiteScope::All) {
        weierstrass_checks(&mut checks);
    }
    if matches!(scope, SuiteScope::Jacobi | SuiteScope::All) {
        jacobi_checks(&mut checks);
    }
    if matches!(scope, SuiteScope::Integrals | SuiteScope::All) {
        integrals_checks(&mut checks);
    }
    if matches!(scope, SuiteScope::Dynamics | SuiteScope::All) {
        dynamics_checks(&mut checks);
    }
    if let Some(tol) = tol_override {
        let tol = tol.max(f64::EPSILON);
        for c in &mut checks {
            c.tolerance = tol;
            c.pass = c.residual.is_finite() && c.residual <= tol;
        }
    }
    checks
}

fn suite_lattices() -> Vec<Lattice> {
    vec![
        Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap(),
        Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.7)).unwrap(),
        Lattice::new(Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.9)).unwrap(),
    ]
}

fn cell_point(lat: &Lattice, rng: &mut impl Rng) -> Complex64 {
    loop {
        let a: f64 = rng.gen_range(-0.5..0.5);
        let b: f64 = rng.gen_range(-0.5..0.5);
        let z = a * lat.omega1() + b * lat.omega2();
        if lat.lattice_distance(z) > 0.05 {
            return z;
        }
    }
}

fn weierstrass_checks(out: &mut Vec<CheckResult>) {
    let lattices = suite_lattices();
    let mut rng = rand::rngs::StdRng::seed_from_u64(101);

    let mut ode = 0.0f64;
    let mut addition = 0.0f64;
    for lat in &lattices {
        for _ in 0..25 {
            let z = cell_point(lat, &mut rng);
            let (p, d) = ws::wp_with_prime(lat, z).unwrap();
            let res = (d * d - (4.0 * p * p * p - lat.g2() * p - lat.g3())).norm()
                / p.norm().powi(3).max(1.0);
            ode = ode.max(res);
        }
        let mut done = 0;
        while done < 10 {
            let u = cell_point(lat, &mut rng);
            let v = cell_point(lat, &mut rng);
            if lat.lattice_distance(u + v) < 0.05 {
                continue;
            }
            match ws::wp_addition(lat, u, v) {
                Ok(sum) => {
                    let direct = ws::wp(lat, u + v).unwrap();
                    addition = addition.max((sum - direct).norm() / direct.norm().max(1.0));
                    done += 1;
                }
                Err(_) => continue,
            }
        }
    }
    out.push(CheckResult::new("weierstrass.ode_residual", ode, 1e-8));
    out.push(CheckResult::new("weierstrass.addition_law", addition, 1e-8));

    let mut legendre = 0.0f64;
    let mut vieta = 0.0f64;
    for lat in &lattices {
        let q = ws::quasi_periods(lat);
        legendre = legendre.max(q.legendre_residual(lat));
        let e = ws::half_period_values(lat);
        let scale = e.e1.norm().max(e.e2.norm()).max(e.e3.norm()).max(1.0);
        vieta = vieta.max((e.e1 + e.e2 + e.e3).norm() / scale);
        vieta = vieta.max(
            (e.e1 * e.e2 + e.e2 * e.e3 + e.e3 * e.e1 + lat.g2() / 4.0).norm() / (scale * scale),
        );
        vieta = vieta.max((e.e1 * e.e2 * e.e3 - lat.g3() / 4.0).norm() / scale.powi(3));
    }
    out.push(CheckResult::new(
        "weierstrass.legendre_relation",
        legendre,
        1e-10,
    ));
    out.push(CheckResult::new(
        "weierstrass.half_period_vieta",
        vieta,
        1e-9,
    ));

    let lat = &lattices[1];
    let q = ws::quasi_periods(lat);
    let mut zeta_odd = 0.0f64;
    let mut zeta_shift = 0.0f64;
    let mut sigma_shift = 0.0f64;
    for _ in 0..5 {
        let z = cell_point(lat, &mut rng);
        let zv = ws::zeta_w(lat, z).unwrap();
        zeta_odd = zeta_odd.max((zv + ws::zeta_w(lat, -z).unwrap()).norm() / zv.norm().max(1.0));
        let shifted = ws::zeta_w(lat, z + lat.omega1()).unwrap();
        zeta_shift = zeta_shift.max((shifted - zv - q.tau1).norm() / q.tau1.norm().max(1.0));
        let s = ws::sigma_w(lat, z);
        let lhs = ws::sigma_w(lat, z + lat.omega1());
        let rhs = -(q.tau1 * (z + lat.omega1() / 2.0)).exp() * s;
        sigma_shift = sigma_shift.max((lhs - rhs).norm() / lhs.norm().max(1e-300));
    }
    out.push(CheckResult::new("weierstrass.zeta_oddness", zeta_odd, 1e-9));
    out.push(CheckResult::new(
        "weierstrass.zeta_quasi_periods",
        zeta_shift,
        1e-9,
    ));
    out.push(CheckResult::new(
        "weierstrass.sigma_quasi_periods",
        sigma_shift,
        1e-6,
    ));

    let residue_wp = ws::cell_contour_integral(lat, |z| ws::wp(lat, z).unwrap(), 64).norm();
    out.push(CheckResult::new(
        "weierstrass.residue_sum_wp",
        residue_wp,
        1e-9,
    ));
    let div = ws::Divisor::new(
        vec![
            (Complex64::new(0.1, 0.2), 1),
            (Complex64::new(-0.1, -0.2), 1),
        ],
        vec![(Complex64::new(0.0, 0.0), 2)],
    );
    let f = ws::elliptic_from_divisor(lat, &div, Complex64::new(1.0, 0.0)).unwrap();
    let residue_div = ws::cell_contour_integral(lat, &f, 64).norm();
    out.push(CheckResult::new(
        "weierstrass.residue_sum_divisor",
        residue_div,
        1e-6,
    ));
}

fn jacobi_checks(out: &mut Vec<CheckResult>) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(103);

    let mut identity = 0.0f64;
    let mut ode = 0.0f64;
    for _ in 0..1000 {
        let t = rng.gen_range(-20.0..20.0);
        let k = rng.gen_range(0.0..1.0);
        let j = jacobi::jacobi_triple(t, k).unwrap();
        identity = identity.max((j.sn * j.sn + j.cn * j.cn - 1.0).abs());
        identity = identity.max((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs());
        let (r1, r2, r3) = jacobi::jacobi_ode_residuals(t, k).unwrap();
        ode = ode.max(r1.abs()).max(r2.abs()).max(r3.abs());
    }
    out.push(CheckResult::new(
        "jacobi.fundamental_identities",
        identity,
        1e-12,
    ));
    out.push(CheckResult::new("jacobi.ode_residuals", ode, 1e-10));

    let mut period = 0.0f64;
    for k in [0.3, 0.8] {
        let quarter = integrals::complete_k(k).unwrap();
        for _ in 0..10 {
            let t = rng.gen_range(-3.0..3.0);
            let j = jacobi::jacobi_triple(t, k).unwrap();
            let jp = jacobi::jacobi_triple(t + 4.0 * quarter, k).unwrap();
            period = period.max((j.sn - jp.sn).abs()).max((j.cn - jp.cn).abs());
            let jd = jacobi::jacobi_triple(t + 2.0 * quarter, k).unwrap();
            period = period.max((j.dn - jd.dn).abs());
        }
    }
    out.push(CheckResult::new("jacobi.periods_4k_2k", period, 1e-10));

    let mut derivative = 0.0f64;
    let h = 1e-5;
    for _ in 0..40 {
        let t = rng.gen_range(-5.0..5.0);
        let k = rng.gen_range(0.05..0.95);
        let (dsn, dcn, ddn) = jacobi::jacobi_derivatives(t, k).unwrap();
        let p = jacobi::jacobi_triple(t + h, k).unwrap();
        let m = jacobi::jacobi_triple(t - h, k).unwrap();
        derivative = derivative
            .max((dsn - (p.sn - m.sn) / (2.0 * h)).abs())
            .max((dcn - (p.cn - m.cn) / (2.0 * h)).abs())
            .max((ddn - (p.dn - m.dn) / (2.0 * h)).abs());
    }
    out.push(CheckResult::new(
        "jacobi.derivatives_vs_fd",
        derivative,
        1e-7,
    ));

    let mut addition = 0.0f64;
    for _ in 0..100 {
        let t = rng.gen_range(-4.0..4.0);
        let tau = rng.gen_range(-4.0..4.0);
        let sum = jacobi::jacobi_addition(t, tau, 0.7).unwrap();
        let direct = jacobi::jacobi_triple(t + tau, 0.7).unwrap();
        addition = addition
            .max((sum.sn - direct.sn).abs())
            .max((sum.cn - direct.cn).abs())
            .max((sum.dn - direct.dn).abs());
    }
    out.push(CheckResult::new("jacobi.addition_theorem", addition, 1e-10));

    let mut inversion = 0.0f64;
    for _ in 0..40 {
        let k = rng.gen_range(0.05..0.95);
        let phi: f64 = rng.gen_range(-1.4..1.4);
        let t = integrals::incomplete_f(k, phi).unwrap();
        let j = jacobi::jacobi_triple(t, k).unwrap();
        inversion = inversion.max((j.sn - phi.sin()).abs());
    }
    out.push(CheckResult::new(
        "jacobi.inversion_round_trip",
        inversion,
        1e-10,
    ));

    let mut limits = 0.0f64;
    for t in [-1.3, 0.4, 2.1] {
        let j0 = jacobi::jacobi_triple(t, 0.0).unwrap();
        limits = limits
            .max((j0.sn - t.sin()).abs())
            .max((j0.cn - t.cos()).abs())
            .max((j0.dn - 1.0).abs());
        let j1 = jacobi::jacobi_triple(t, 1.0).unwrap();
        limits = limits
            .max((j1.sn - t.tanh()).abs())
            .max((j1.cn - 1.0 / t.cosh()).abs())
            .max((j1.dn - 1.0 / t.cosh()).abs());
    }
    out.push(CheckResult::new("jacobi.degenerate_limits", limits, 1e-12));
}

fn integrals_checks(out: &mut Vec<CheckResult>) {
    let mut series = 0.0f64;
    for i in 1..=5 {
        let k = i as f64 / 10.0;
        series = series
            .max((integrals::series_k(k, 20).unwrap() - integrals::complete_k(k).unwrap()).abs());
        series = series
            .max((integrals::series_e(k, 20).unwrap() - integrals::complete_e(k).unwrap()).abs());
    }
    out.push(CheckResult::new("integrals.agm_vs_series", series, 1e-13));

    let mut quad = 0.0f64;
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let f = integrals::incomplete_f(k, std::f64::consts::FRAC_PI_2).unwrap();
        quad = quad.max((integrals::complete_k(k).unwrap() - f).abs());
        let e = integrals::incomplete_e(k, std::f64::consts::FRAC_PI_2).unwrap();
        quad = quad.max((integrals::complete_e(k).unwrap() - e).abs());
    }
    out.push(CheckResult::new("integrals.agm_vs_quadrature", quad, 1e-12));

    let mut legendre = 0.0f64;
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let kp = ((1.0 - k) * (1.0 + k)).sqrt();
        let res = integrals::complete_e(k).unwrap() * integrals::complete_k(kp).unwrap()
            + integrals::complete_e(kp).unwrap() * integrals::complete_k(k).unwrap()
            - integrals::complete_k(k).unwrap() * integrals::complete_k(kp).unwrap()
            - std::f64::consts::FRAC_PI_2;
        legendre = legendre.max(res.abs());
    }
    out.push(CheckResult::new(
        "integrals.legendre_relation",
        legendre,
        1e-12,
    ));

    // Block additivity against a plain Simpson sum over the joined interval.
    let simpson = |k: f64, a: f64, b: f64| {
        let n = 200_000usize;
        let h = (b - a) / n as f64;
        let f = |t: f64| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt();
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
        }
        s * h / 3.0
    };
    let mut block = 0.0f64;
    for (k, phi) in [(0.4, 0.8), (0.7, -0.5)] {
        let joined = phi + std::f64::consts::PI;
        block = block
            .max((integrals::incomplete_f(k, joined).unwrap() - simpson(k, 0.0, joined)).abs());
    }
    out.push(CheckResult::new("integrals.block_additivity", block, 1e-11));

    let mut pi_red = 0.0f64;
    for (k, phi) in [(0.4, 0.9), (0.9, 1.3)] {
        pi_red = pi_red.max(
            (integrals::incomplete_pi(k, 0.0, phi).unwrap()
                - integrals::incomplete_f(k, phi).unwrap())
            .abs(),
        );
    }
    out.push(CheckResult::new("integrals.pi_reduces_to_f", pi_red, 1e-10));
}

#[allow(clippy::needless_range_loop)]
fn dynamics_checks(out: &mut Vec<CheckResult>) {
    let mut rng = rand::rngs::StdRng::seed_from_u64(107);

    // Pendulum closed form against RK4 on [0, 2].
    let (l, g, x0) = (1.0, 9.81, 2.0);
    let p = dynamics::PendulumParams::new(l, g, x0).unwrap();
    let k = (x0 / 2.0f64).sin();
    let v0 = 2.0 * k * (g / l).sqrt();
    let dt = 1e-4;
    let traj = dynamics::rk4_integrate(dynamics::pendulum_field(l, g), &[0.0, v0], dt, 20_000, &[])
        .unwrap();
    let mut pend = 0.0f64;
    for idx in (0..=20_000).step_by(500) {
        let t = idx as f64 * dt;
        pend = pend
            .max((dynamics::pendulum_oscillatory(&p, t).unwrap() - traj.states[idx][0]).abs() / x0);
    }
    out.push(CheckResult::new("dynamics.pendulum_vs_rk4", pend, 1e-6));

    let small = dynamics::PendulumParams::new(l, g, 0.01).unwrap();
    let t0 = 2.0 * std::f64::consts::PI * (l / g).sqrt();
    let period_dev = (dynamics::pendulum_period(&small).unwrap() - t0).abs() / t0;
    out.push(CheckResult::new(
        "dynamics.pendulum_small_angle_period",
        period_dev,
        1e-4,
    ));

    // Euler top: structural conservation and RK4 agreement on [0, 2].
    let e = dynamics::EulerParams::new(3.0, 2.0, 1.0, 1.0, 1.3).unwrap();
    let form = dynamics::EulerClosedForm::new(&e).unwrap();
    let mut conserve = 0.0f64;
    for i in 0..40 {
        let m = form.eval(i as f64 * 0.13);
        conserve = conserve.max((dynamics::euler_energy(e.lambda, &m) - e.h1).abs());
        conserve = conserve.max((dynamics::euler_spin_sq(&m) - e.r2).abs());
    }
    out.push(CheckResult::new(
        "dynamics.euler_conservation",
        conserve,
        1e-10,
    ));

    let m0 = form.eval(0.0);
    let traj =
        dynamics::rk4_integrate(dynamics::euler_field(e.lambda), &m0, 1e-4, 20_000, &[]).unwrap();
    let mut euler_rk4 = 0.0f64;
    for idx in (0..=20_000).step_by(500) {
        let m = form.eval(idx as f64 * 1e-4);
        for j in 0..3 {
            euler_rk4 = euler_rk4.max((m[j] - traj.states[idx][j]).abs());
        }
    }
    out.push(CheckResult::new("dynamics.euler_vs_rk4", euler_rk4, 1e-7));

    // Integrable family: involution, drift, quartic curve.
    let (a, b, c) = (0.7, -0.3, 0.2);
    let mut involution = 0.0f64;
    for _ in 0..50 {
        let s = PhaseState::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let h1 = |st: &PhaseState| dynamics::family_invariants(a, b, c, st).0;
        let h2 = |st: &PhaseState| dynamics::family_invariants(a, b, c, st).1;
        involution = involution.max(dynamics::poisson_bracket(&h1, &h2, &s).abs());
    }
    out.push(CheckResult::new(
        "dynamics.family_involution",
        involution,
        1e-7,
    ));

    let s0 = [0.4, -0.2, 0.1, 0.3];
    let h1f = |s: &[f64]| dynamics::family_invariants(a, b, c, &PhaseState::from_slice(s)).0;
    let h2f = |s: &[f64]| dynamics::family_invariants(a, b, c, &PhaseState::from_slice(s)).1;
    let traj = dynamics::rk4_integrate(
        dynamics::family_field(a, b, c),
        &s0,
        1e-4,
        100_000,
        &[("h1", &h1f), ("h2", &h2f)],
    )
    .unwrap();
    let drift = traj.drift("h1").unwrap().max(traj.drift("h2").unwrap());
    out.push(CheckResult::new(
        "dynamics.family_invariant_drift",
        drift,
        1e-9,
    ));

    let (c1, c2) = dynamics::family_invariants(a, b, c, &PhaseState::from_slice(&s0));
    let mut curve = 0.0f64;
    for s in traj.states.iter().step_by(2000) {
        curve = curve.max(
            dynamics::family_curve_residual(a, b, c, c1, c2, &PhaseState::from_slice(s)).abs(),
        );
    }
    out.push(CheckResult::new(
        "dynamics.family_quartic_curve",
        curve,
        1e-8,
    ));

    // NLS Lax pair along its flow.
    let a_nls = 0.8;
    let traj = dynamics::rk4_integrate(dynamics::nls_field(a_nls), &s0, 1e-4, 20_000, &[]).unwrap();
    let mut lax_res = 0.0f64;
    let mut iso = 0.0f64;
    let coeff0 =
        dynamics::nls_spectral_curve_coefficients(&PhaseState::from_slice(&traj.states[0]), a_nls)
            .unwrap();
    for h in [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-3.0, 0.0),
    ] {
        for idx in [2000usize, 10_000, 18_000] {
            let sm = PhaseState::from_slice(&traj.states[idx - 1]);
            let s0p = PhaseState::from_slice(&traj.states[idx]);
            let sp = PhaseState::from_slice(&traj.states[idx + 1]);
            let am = dynamics::nls_lax_matrices(&sm, a_nls, h).unwrap().a_mat;
            let ap = dynamics::nls_lax_matrices(&sp, a_nls, h).unwrap().a_mat;
            let lax = dynamics::nls_lax_matrices(&s0p, a_nls, h).unwrap();
            let comm = lax.commutator();
            for i in 0..2 {
                for j in 0..2 {
                    let d = (ap[i][j] - am[i][j]) / (2.0 * 1e-4);
                    lax_res = lax_res.max((d - comm[i][j]).norm());
                }
            }
        }
    }
    for idx in (0..=20_000).step_by(1000) {
        let coeff = dynamics::nls_spectral_curve_coefficients(
            &PhaseState::from_slice(&traj.states[idx]),
            a_nls,
        )
        .unwrap();
        for i in 0..4 {
            iso = iso.max((coeff[i] - coeff0[i]).abs() / coeff0[i].abs().max(1.0));
        }
    }
    out.push(CheckResult::new("dynamics.nls_lax_residual", lax_res, 1e-7));
    out.push(CheckResult::new(
        "dynamics.nls_isospectral_coefficients",
        iso,
        1e-8,
    ));

    let mut h2_identity = 0.0f64;
    for _ in 0..50 {
        let s = PhaseState::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let (h1, h2) = dynamics::nls_spectral_invariants(&s, a_nls);
        let angular = s.x1 * s.y2 - s.x2 * s.y1;
        h2_identity = h2_identity.max((h2 - a_nls * h1 - 0.25 * angular * angular).abs());
    }
    out.push(CheckResult::new(
        "dynamics.nls_h2_identity",
        h2_identity,
        1e-12,
    ));

    let mut ym = 0.0f64;
    for _ in 0..100 {
        let s = PhaseState::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let (p1, p2, q1, q2) = dynamics::yang_mills::yang_mills_forward(&s);
        let h_pq = dynamics::yang_mills_hamiltonian_pq(p1, p2, q1, q2);
        let h_xy = dynamics::yang_mills_hamiltonian_xy(&s);
        ym = ym.max((h_pq - h_xy).norm() / h_xy.max(1.0));
    }
    out.push(CheckResult::new(
        "dynamics.yang_mills_hamiltonian",
        ym,
        1e-12,
    ));
}
