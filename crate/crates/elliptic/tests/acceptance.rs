//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with the worst observed residual against the pinned tolerance (run with
//! `cargo test --test acceptance -- --nocapture` to see the lines).

use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use elliptic::dynamics::{self, PhaseState};
use elliptic::integrals;
use elliptic::jacobi;
use elliptic::lattice::Lattice;
use elliptic::weierstrass as ws;

fn report(criterion: &str, worst: f64, tol: f64) {
    let verdict = if worst.is_finite() && worst <= tol {
        "PASS"
    } else {
        "FAIL"
    };
    println!("acceptance {criterion}: {verdict} (worst {worst:.3e}, tolerance {tol:.1e})");
    assert!(
        worst.is_finite() && worst <= tol,
        "{criterion}: worst residual {worst:.3e} exceeds {tol:.1e}"
    );
}

fn random_lattice(rng: &mut StdRng) -> Lattice {
    let r = rng.gen_range(0.7..1.5);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let omega1 = r * Complex64::new(theta.cos(), theta.sin());
    let tau = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0));
    Lattice::new(omega1, tau * omega1).unwrap()
}

fn cell_point(lat: &Lattice, rng: &mut StdRng) -> Complex64 {
    loop {
        let a: f64 = rng.gen_range(-0.5..0.5);
        let b: f64 = rng.gen_range(-0.5..0.5);
        let z = a * lat.omega1() + b * lat.omega2();
        if lat.lattice_distance(z) > 0.05 {
            return z;
        }
    }
}

#[test]
fn criterion_01_weierstrass_ode() {
    let start = std::time::Instant::now();
    let mut rng = StdRng::seed_from_u64(2001);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let lat = random_lattice(&mut rng);
        for _ in 0..100 {
            let z = cell_point(&lat, &mut rng);
            let (p, d) = ws::wp_with_prime(&lat, z).unwrap();
            let res = (d * d - (4.0 * p * p * p - lat.g2() * p - lat.g3())).norm();
            worst = worst.max(res / p.norm().powi(3).max(1.0));
        }
    }
    report("01 weierstrass ODE", worst, 1e-8);
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance 01 runtime: {elapsed:.2} s (limit 5 s)");
    assert!(elapsed < 5.0);
}

#[test]
fn criterion_02_legendre_relation() {
    let start = std::time::Instant::now();
    let mut rng = StdRng::seed_from_u64(2002);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let lat = random_lattice(&mut rng);
        worst = worst.max(ws::quasi_periods(&lat).legendre_residual(&lat));
    }
    report("02 Legendre relation", worst, 1e-10);
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance 02 runtime: {elapsed:.2} s (limit 2 s)");
    assert!(elapsed < 2.0);
}

#[test]
fn criterion_03_half_period_vieta() {
    let mut rng = StdRng::seed_from_u64(2003);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let lat = random_lattice(&mut rng);
        let e = ws::half_period_values(&lat);
        let scale = e.e1.norm().max(e.e2.norm()).max(e.e3.norm()).max(1.0);
        worst = worst.max((e.e1 + e.e2 + e.e3).norm() / scale);
        worst = worst.max(
            (e.e1 * e.e2 + e.e2 * e.e3 + e.e3 * e.e1 + lat.g2() / 4.0).norm() / (scale * scale),
        );
        worst = worst.max((e.e1 * e.e2 * e.e3 - lat.g3() / 4.0).norm() / scale.powi(3));
    }
    report("03 half-period Vieta", worst, 1e-9);
}

#[test]
fn criterion_04_addition_laws() {
    let mut rng = StdRng::seed_from_u64(2004);
    // Weierstrass chord law against direct evaluation.
    let mut worst_w = 0.0f64;
    let lattices: Vec<Lattice> = (0..5).map(|_| random_lattice(&mut rng)).collect();
    let mut done = 0;
    while done < 500 {
        let lat = &lattices[done % lattices.len()];
        let u = cell_point(lat, &mut rng);
        let v = cell_point(lat, &mut rng);
        if lat.lattice_distance(u + v) < 0.05 {
            continue;
        }
        match ws::wp_addition(lat, u, v) {
            Ok(sum) => {
                let direct = ws::wp(lat, u + v).unwrap();
                worst_w = worst_w.max((sum - direct).norm() / direct.norm().max(1.0));
                done += 1;
            }
            Err(_) => continue,
        }
    }
    report("04a Weierstrass addition law", worst_w, 1e-8);

    let mut worst_j = 0.0f64;
    for _ in 0..500 {
        let t = rng.gen_range(-6.0..6.0);
        let tau = rng.gen_range(-6.0..6.0);
        let k = rng.gen_range(0.05..0.95);
        let sum = jacobi::jacobi_addition(t, tau, k).unwrap();
        let direct = jacobi::jacobi_triple(t + tau, k).unwrap();
        worst_j = worst_j
            .max((sum.sn - direct.sn).abs())
            .max((sum.cn - direct.cn).abs())
            .max((sum.dn - direct.dn).abs());
    }
    report("04b Jacobi addition law", worst_j, 1e-10);
}

#[test]
fn criterion_05_jacobi_identities_and_limits() {
    let mut rng = StdRng::seed_from_u64(2005);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t = rng.gen_range(-20.0..20.0);
        let k = rng.gen_range(0.0..1.0);
        let j = jacobi::jacobi_triple(t, k).unwrap();
        worst = worst.max((j.sn * j.sn + j.cn * j.cn - 1.0).abs());
        worst = worst.max((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs());
        let (r1, r2, r3) = jacobi::jacobi_ode_residuals(t, k).unwrap();
        worst = worst.max(r1.abs()).max(r2.abs()).max(r3.abs());
        let (dsn, dcn, ddn) = jacobi::jacobi_derivatives(t, k).unwrap();
        worst = worst.max((dsn - j.cn * j.dn).abs());
        worst = worst.max((dcn + j.sn * j.dn).abs());
        worst = worst.max((ddn + k * k * j.sn * j.cn).abs());
    }
    report("05a Jacobi identity & ODE suite", worst, 1e-10);

    let mut worst_lim = 0.0f64;
    for _ in 0..200 {
        let t = rng.gen_range(-3.0..3.0);
        let j0 = jacobi::jacobi_triple(t, 0.0).unwrap();
        worst_lim = worst_lim
            .max((j0.sn - t.sin()).abs())
            .max((j0.cn - t.cos()).abs())
            .max((j0.dn - 1.0).abs());
        worst_lim = worst_lim.max((jacobi::am(t, 0.0).unwrap() - t).abs());
        let j1 = jacobi::jacobi_triple(t, 1.0).unwrap();
        worst_lim = worst_lim
            .max((j1.sn - t.tanh()).abs())
            .max((j1.cn - 1.0 / t.cosh()).abs())
            .max((j1.dn - 1.0 / t.cosh()).abs());
    }
    report("05b degenerate limits k = 0, 1", worst_lim, 1e-12);
}

#[test]
fn criterion_06_complete_integral_cross_validation() {
    // AGM against the corrected hypergeometric series, 20 terms, k <= 0.5.
    let mut worst_series = 0.0f64;
    for i in 0..=10 {
        let k = 0.05 * i as f64;
        worst_series = worst_series
            .max((integrals::complete_k(k).unwrap() - integrals::series_k(k, 20).unwrap()).abs());
        worst_series = worst_series
            .max((integrals::complete_e(k).unwrap() - integrals::series_e(k, 20).unwrap()).abs());
    }
    report("06a AGM vs series (k <= 0.5)", worst_series, 1e-13);

    // AGM against adaptive quadrature of the defining integrals.
    let mut worst_quad = 0.0f64;
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let f = integrals::incomplete_f(k, std::f64::consts::FRAC_PI_2).unwrap();
        worst_quad = worst_quad.max((integrals::complete_k(k).unwrap() - f).abs());
        let e = integrals::incomplete_e(k, std::f64::consts::FRAC_PI_2).unwrap();
        worst_quad = worst_quad.max((integrals::complete_e(k).unwrap() - e).abs());
    }
    report("06b AGM vs quadrature", worst_quad, 1e-12);
}

#[test]
fn criterion_07_pendulum() {
    let (l, g) = (1.0, 9.81);
    let dt = 1e-5;

    // Oscillatory closed form and period against RK4 for three amplitudes.
    let mut worst_sol = 0.0f64;
    let mut worst_period = 0.0f64;
    for x0 in [0.5, 1.5, 2.5] {
        let p = dynamics::PendulumParams::new(l, g, x0).unwrap();
        let v0 = 2.0 * (x0 / 2.0f64).sin() * (g / l).sqrt();
        let period = dynamics::pendulum_period(&p).unwrap();
        let steps = (1.3 * period / dt).ceil() as usize;
        let traj =
            dynamics::rk4_integrate(dynamics::pendulum_field(l, g), &[0.0, v0], dt, steps, &[])
                .unwrap();
        for idx in (0..=steps).step_by(2500) {
            let t = idx as f64 * dt;
            let xc = dynamics::pendulum_oscillatory(&p, t).unwrap();
            worst_sol = worst_sol.max((xc - traj.states[idx][0]).abs() / x0);
        }
        // Rising zero crossing after half a period marks one full period.
        let mut crossing = None;
        for i in 1..=steps {
            let (a, b) = (traj.states[i - 1][0], traj.states[i][0]);
            if traj.times[i] > 0.5 * period && a < 0.0 && b >= 0.0 {
                crossing = Some(traj.times[i - 1] + dt * (-a) / (b - a));
                break;
            }
        }
        let crossing = crossing.expect("no period crossing found");
        worst_period = worst_period.max((period - crossing).abs() / period);
    }
    report("07a pendulum oscillatory vs RK4 (dt 1e-5)", worst_sol, 1e-6);
    report("07b pendulum period vs RK4 crossing", worst_period, 1e-6);

    // Separatrix formula against RK4 started at the bottom with the
    // separatrix velocity.
    let p = dynamics::PendulumParams::new(l, g, std::f64::consts::PI).unwrap();
    let v0 = 2.0 * (g / l).sqrt();
    let steps = 200_000;
    let traj = dynamics::rk4_integrate(dynamics::pendulum_field(l, g), &[0.0, v0], dt, steps, &[])
        .unwrap();
    let mut worst_sep = 0.0f64;
    for idx in (0..=steps).step_by(5000) {
        let t = idx as f64 * dt;
        let xc = dynamics::pendulum_separatrix(&p, t).unwrap();
        worst_sep = worst_sep.max((xc - traj.states[idx][0]).abs());
    }
    report("07c pendulum separatrix vs RK4", worst_sep, 1e-6);

    // Small-angle period within 0.01%.
    let small = dynamics::PendulumParams::new(l, g, 0.01).unwrap();
    let t0 = 2.0 * std::f64::consts::PI * (l / g).sqrt();
    let dev = (dynamics::pendulum_period(&small).unwrap() - t0).abs() / t0;
    report("07d small-angle period limit", dev, 1e-4);
}

#[test]
#[allow(clippy::needless_range_loop)]
fn criterion_08_euler_top() {
    // Five admissible parameter sets spread over the r2 window.
    let sets: Vec<dynamics::EulerParams> = [
        (3.0, 2.0, 1.0, 1.0, 1.3),
        (3.0, 2.0, 1.0, 1.0, 1.7),
        (5.0, 2.5, 1.5, 2.0, 2.0),
        (4.0, 3.0, 2.0, 3.0, 2.4),
        (2.5, 1.8, 0.6, 1.0, 2.2),
    ]
    .iter()
    .map(|&(l1, l2, l3, h1, r2)| dynamics::EulerParams::new(l1, l2, l3, h1, r2).unwrap())
    .collect();

    let mut worst_ode = 0.0f64;
    let mut worst_cons = 0.0f64;
    let mut worst_rk4 = 0.0f64;
    for e in &sets {
        let form = dynamics::EulerClosedForm::new(e).unwrap();
        let field = dynamics::euler_field(e.lambda);
        // Finite-difference ODE residual, step 1e-5.
        let h = 1e-5;
        for i in 0..50 {
            let t = 0.1 * i as f64;
            let plus = form.eval(t + h);
            let minus = form.eval(t - h);
            let mut rhs = [0.0; 3];
            field(&form.eval(t), &mut rhs);
            for j in 0..3 {
                worst_ode = worst_ode.max(((plus[j] - minus[j]) / (2.0 * h) - rhs[j]).abs());
            }
            let m = form.eval(t);
            worst_cons = worst_cons.max((dynamics::euler_energy(e.lambda, &m) - e.h1).abs());
            worst_cons = worst_cons.max((dynamics::euler_spin_sq(&m) - e.r2).abs());
        }
        // RK4 agreement over t in [0, 5].
        let dt = 1e-4;
        let steps = 50_000;
        let traj = dynamics::rk4_integrate(field, &form.eval(0.0), dt, steps, &[]).unwrap();
        for idx in (0..=steps).step_by(1000) {
            let m = form.eval(idx as f64 * dt);
            for j in 0..3 {
                worst_rk4 = worst_rk4.max((m[j] - traj.states[idx][j]).abs());
            }
        }
    }
    report("08a Euler closed form ODE residual", worst_ode, 1e-6);
    report("08b Euler conservation", worst_cons, 1e-10);
    report("08c Euler vs RK4 (t in [0,5])", worst_rk4, 1e-7);

    // Symmetric-top limit against the trig solution.
    let (l1, l3, a, c) = (3.0, 1.0, 0.8, 0.5);
    let l2 = l1 - 1e-9;
    let traj = dynamics::rk4_integrate(
        dynamics::euler_field([l1, l2, l3]),
        &[c, 0.0, a],
        1e-4,
        20_000,
        &[],
    )
    .unwrap();
    let mut worst_sym = 0.0f64;
    for idx in (0..=20_000usize).step_by(2000) {
        let m = dynamics::symmetric_top_solution(l1, l3, a, c, idx as f64 * 1e-4);
        for j in 0..3 {
            worst_sym = worst_sym.max((m[j] - traj.states[idx][j]).abs());
        }
    }
    report("08d symmetric-top trig limit", worst_sym, 1e-4);
}

#[test]
fn criterion_09_integrable_family() {
    let (a, b, c) = (0.7, -0.3, 0.2);
    let s0 = [0.4, -0.2, 0.1, 0.3];

    // Invariant drift along RK4 over t in [0, 10] at dt = 1e-4.
    let h1 = move |s: &[f64]| dynamics::family_invariants(a, b, c, &PhaseState::from_slice(s)).0;
    let h2 = move |s: &[f64]| dynamics::family_invariants(a, b, c, &PhaseState::from_slice(s)).1;
    let traj = dynamics::rk4_integrate(
        dynamics::family_field(a, b, c),
        &s0,
        1e-4,
        100_000,
        &[("h1", &h1), ("h2", &h2)],
    )
    .unwrap();
    let drift = traj.drift("h1").unwrap().max(traj.drift("h2").unwrap());
    report("09a family invariant drift", drift, 1e-9);

    // Involution at 100 random states through finite differences.
    let mut rng = StdRng::seed_from_u64(2009);
    let mut worst_pb = 0.0f64;
    for _ in 0..100 {
        let s = PhaseState::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let f1 = |st: &PhaseState| dynamics::family_invariants(a, b, c, st).0;
        let f2 = |st: &PhaseState| dynamics::family_invariants(a, b, c, st).1;
        worst_pb = worst_pb.max(dynamics::poisson_bracket(&f1, &f2, &s).abs());
    }
    report("09b family involution {H1,H2}", worst_pb, 1e-7);

    // Quartic curve residual along the trajectory.
    let (c1, c2) = dynamics::family_invariants(a, b, c, &PhaseState::from_slice(&s0));
    let mut worst_curve = 0.0f64;
    for s in traj.states.iter().step_by(1000) {
        worst_curve = worst_curve.max(
            dynamics::family_curve_residual(a, b, c, c1, c2, &PhaseState::from_slice(s)).abs(),
        );
    }
    report("09c family quartic-curve residual", worst_curve, 1e-8);
}

#[test]
fn criterion_10_nls_lax_pair() {
    let a = 0.8;
    let s0 = [0.4, -0.2, 0.1, 0.3];
    let dt = 1e-4;
    let traj = dynamics::rk4_integrate(dynamics::nls_field(a), &s0, dt, 30_000, &[]).unwrap();

    // Lax equation residual at three spectral values.
    let spectral = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(-3.0, 0.0),
    ];
    let mut worst_lax = 0.0f64;
    for &h in &spectral {
        for idx in (1000..30_000usize).step_by(2000) {
            let sm = PhaseState::from_slice(&traj.states[idx - 1]);
            let sc = PhaseState::from_slice(&traj.states[idx]);
            let sp = PhaseState::from_slice(&traj.states[idx + 1]);
            let am = dynamics::nls_lax_matrices(&sm, a, h).unwrap().a_mat;
            let ap = dynamics::nls_lax_matrices(&sp, a, h).unwrap().a_mat;
            let lax = dynamics::nls_lax_matrices(&sc, a, h).unwrap();
            let comm = lax.commutator();
            for i in 0..2 {
                for j in 0..2 {
                    let d = (ap[i][j] - am[i][j]) / (2.0 * dt);
                    worst_lax = worst_lax.max((d - comm[i][j]).norm());
                }
            }
        }
    }
    report("10a Lax residual dA/dt - [B,A]", worst_lax, 1e-7);

    // Spectral-curve coefficients constant along the flow.
    let coeff0 =
        dynamics::nls_spectral_curve_coefficients(&PhaseState::from_slice(&traj.states[0]), a)
            .unwrap();
    let mut worst_iso = 0.0f64;
    for idx in (0..=30_000usize).step_by(1000) {
        let coeff = dynamics::nls_spectral_curve_coefficients(
            &PhaseState::from_slice(&traj.states[idx]),
            a,
        )
        .unwrap();
        for i in 0..4 {
            worst_iso = worst_iso.max((coeff[i] - coeff0[i]).abs() / coeff0[i].abs().max(1.0));
        }
    }
    report("10b isospectral curve coefficients", worst_iso, 1e-8);

    // H2 = a H1 + (x1 y2 - x2 y1)^2 / 4, read off the measured curve
    // constant term.
    let mut rng = StdRng::seed_from_u64(2010);
    let mut worst_h2 = 0.0f64;
    for _ in 0..100 {
        let s = PhaseState::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let measured = dynamics::nls_spectral_curve_coefficients(&s, a).unwrap();
        let (h1, _) = dynamics::nls_spectral_invariants(&s, a);
        let angular = s.x1 * s.y2 - s.x2 * s.y1;
        let h2_formula = a * h1 + 0.25 * angular * angular;
        worst_h2 = worst_h2.max((measured[3] + h2_formula).abs() / h2_formula.abs().max(1.0));
    }
    report("10c H2 spectral identity", worst_h2, 1e-11);
}

#[test]
fn criterion_11_yang_mills_reduction() {
    let mut rng = StdRng::seed_from_u64(2011);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = PhaseState::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let (p1, p2, q1, q2) = dynamics::yang_mills::yang_mills_forward(&s);
        let recovered = dynamics::yang_mills_transform(p1, p2, q1, q2).unwrap();
        for (u, v) in s.to_array().iter().zip(recovered.to_array()) {
            worst = worst.max((u - v).abs());
        }
        let h_pq = dynamics::yang_mills_hamiltonian_pq(p1, p2, q1, q2);
        let h_xy = dynamics::yang_mills_hamiltonian_xy(&s);
        worst = worst.max((h_pq - h_xy).norm() / h_xy.max(1.0));
    }
    report("11 Yang-Mills Hamiltonian equality", worst, 1e-12);
}

#[test]
fn criterion_12_divisor_construction() {
    let lat = Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.7)).unwrap();
    let div = ws::Divisor::new(
        vec![
            (Complex64::new(0.1, 0.2), 1),
            (Complex64::new(-0.1, -0.2), 1),
        ],
        vec![(Complex64::new(0.0, 0.0), 2)],
    );
    let f = ws::elliptic_from_divisor(&lat, &div, Complex64::new(1.0, 0.0)).unwrap();

    let mut rng = StdRng::seed_from_u64(2012);
    let mut worst_periodic = 0.0f64;
    for _ in 0..20 {
        let z = cell_point(&lat, &mut rng);
        let base = f(z);
        worst_periodic = worst_periodic
            .max((f(z + lat.omega1()) - base).norm() / base.norm())
            .max((f(z + lat.omega2()) - base).norm() / base.norm());
    }
    report(
        "12a divisor function double periodicity",
        worst_periodic,
        1e-6,
    );

    let residue = ws::cell_contour_integral(&lat, &f, 64).norm();
    report("12b divisor function residue sum", residue, 1e-6);
}
