//! Closed-form elliptic solutions for integrable systems, plus the generic
//! numerical machinery they are validated against: a fixed-step RK4
//! integrator with conserved-quantity tracking and finite-difference
//! Poisson brackets.

pub mod euler;
pub mod family;
pub mod nls;
pub mod pendulum;
pub mod yang_mills;

pub use euler::{
    euler_energy, euler_field, euler_spin_sq, euler_top_modulus, euler_top_solution,
    symmetric_top_solution, EulerClosedForm, EulerParams,
};
pub use family::{
    family_curve_residual, family_field, family_h1_gradient, family_h2_gradient, family_invariants,
    family_quartic_curve, family_vector_field,
};
pub use nls::{
    nls_char_poly_value, nls_field, nls_lax_matrices, nls_spectral_cubic,
    nls_spectral_curve_coefficients, nls_spectral_invariants, LaxPair,
};
pub use pendulum::{
    pendulum_circulating, pendulum_energy, pendulum_field, pendulum_oscillatory, pendulum_period,
    pendulum_separatrix, CirculatingPendulum, PendulumParams,
};
pub use yang_mills::{yang_mills_hamiltonian_pq, yang_mills_hamiltonian_xy, yang_mills_transform};

use crate::error::{EllipticError, Result};

/// Four-dimensional real phase point in the order (y1, y2, x1, x2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub y1: f64,
    pub y2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl PhaseState {
    pub fn new(y1: f64, y2: f64, x1: f64, x2: f64) -> Self {
        PhaseState { y1, y2, x1, x2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.y1, self.y2, self.x1, self.x2]
    }

    pub fn from_slice(s: &[f64]) -> Self {
        PhaseState {
            y1: s[0],
            y2: s[1],
            x1: s[2],
            x2: s[3],
        }
    }
}

/// Time-stamped states with a ledger of conserved quantities sampled along
/// the way.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub conserved: Vec<(String, Vec<f64>)>,
}

impl Trajectory {
    /// Maximum drift |q(t) - q(0)| of a tracked conserved quantity.
    pub fn drift(&self, name: &str) -> Option<f64> {
        let (_, values) = self.conserved.iter().find(|(n, _)| n == name)?;
        let first = *values.first()?;
        values
            .iter()
            .map(|v| (v - first).abs())
            .fold(None, |acc: Option<f64>, d| {
                Some(acc.map_or(d, |a| a.max(d)))
            })
    }

    pub fn to_csv(&self, state_labels: &[&str]) -> String {
        assert_eq!(state_labels.len(), self.states[0].len());
        let mut out = String::from("t");
        for l in state_labels {
            out.push(',');
            out.push_str(l);
        }
        for (name, _) in &self.conserved {
            out.push(',');
            out.push_str(name);
        }
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            out.push_str(&format!("{:.15e}", t));
            for v in &self.states[i] {
                out.push_str(&format!(",{:.15e}", v));
            }
            for (_, values) in &self.conserved {
                out.push_str(&format!(",{:.15e}", values[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, state_labels: &[&str]) -> serde_json::Value {
        serde_json::json!({
            "times": self.times,
            "labels": state_labels,
            "states": self.states,
            "conserved": self.conserved.iter()
                .map(|(n, v)| serde_json::json!({"name": n, "values": v}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Named conserved quantity sampled along a trajectory.
pub type ConservedFn<'a> = (&'a str, &'a dyn Fn(&[f64]) -> f64);

/// Classical fixed-step fourth-order Runge-Kutta. The field writes the state
/// derivative into its second argument.
pub fn rk4_integrate<F>(
    field: F,
    s0: &[f64],
    dt: f64,
    steps: usize,
    conserved: &[ConservedFn],
) -> Result<Trajectory>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dt <= 0.0 || steps == 0 {
        return Err(EllipticError::ParameterDomain(
            "rk4_integrate needs dt > 0 and steps >= 1".into(),
        ));
    }
    let dim = s0.len();
    let mut state = s0.to_vec();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut conserved_values: Vec<(String, Vec<f64>)> = conserved
        .iter()
        .map(|(n, _)| (n.to_string(), Vec::with_capacity(steps + 1)))
        .collect();

    let record =
        |t: f64, s: &[f64], states: &mut Vec<Vec<f64>>, cv: &mut Vec<(String, Vec<f64>)>| {
            states.push(s.to_vec());
            for ((_, values), (_, eval)) in cv.iter_mut().zip(conserved) {
                values.push(eval(s));
            }
            t
        };

    times.push(record(0.0, &state, &mut states, &mut conserved_values));
    for step in 1..=steps {
        field(&state, &mut k1);
        for i in 0..dim {
            tmp[i] = state[i] + 0.5 * dt * k1[i];
        }
        field(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = state[i] + 0.5 * dt * k2[i];
        }
        field(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = state[i] + dt * k3[i];
        }
        field(&tmp, &mut k4);
        for i in 0..dim {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if state.iter().any(|v| !v.is_finite()) {
            return Err(EllipticError::NonFiniteState(step));
        }
        times.push(record(
            step as f64 * dt,
            &state,
            &mut states,
            &mut conserved_values,
        ));
    }

    Ok(Trajectory {
        times,
        states,
        conserved: conserved_values,
    })
}

fn partial<F>(f: &F, s: &PhaseState, idx: usize) -> f64
where
    F: Fn(&PhaseState) -> f64,
{
    // Central difference with one Richardson step; base step 1e-6.
    let diff = |h: f64| {
        let mut plus = s.to_array();
        let mut minus = s.to_array();
        plus[idx] += h;
        minus[idx] -= h;
        (f(&PhaseState::from_slice(&plus)) - f(&PhaseState::from_slice(&minus))) / (2.0 * h)
    };
    let d1 = diff(1e-6);
    let d2 = diff(5e-7);
    (4.0 * d2 - d1) / 3.0
}

/// Poisson bracket {f, g} = sum_k (df/dx_k dg/dy_k - df/dy_k dg/dx_k) by
/// Richardson-extrapolated central differences.
pub fn poisson_bracket<F, G>(f: &F, g: &G, s: &PhaseState) -> f64
where
    F: Fn(&PhaseState) -> f64,
    G: Fn(&PhaseState) -> f64,
{
    // State order is (y1, y2, x1, x2): y at 0, 1 and x at 2, 3.
    let mut sum = 0.0;
    for k in 0..2 {
        sum += partial(f, s, k + 2) * partial(g, s, k) - partial(f, s, k) * partial(g, s, k + 2);
    }
    sum
}

/// Poisson bracket from analytic gradients in state order (y1, y2, x1, x2).
pub fn poisson_bracket_with_gradients(grad_f: &[f64; 4], grad_g: &[f64; 4]) -> f64 {
    grad_f[2] * grad_g[0] - grad_f[0] * grad_g[2] + grad_f[3] * grad_g[1] - grad_f[1] * grad_g[3]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic(s: &[f64], out: &mut [f64]) {
        out[0] = s[1];
        out[1] = -s[0];
    }

    #[test]
    fn rk4_returns_to_start_after_one_period() {
        let period = 2.0 * std::f64::consts::PI;
        let steps = 4000;
        let dt = period / steps as f64;
        let traj = rk4_integrate(harmonic, &[1.0, 0.0], dt, steps, &[]).unwrap();
        let end = traj.states.last().unwrap();
        let err = ((end[0] - 1.0).powi(2) + end[1].powi(2)).sqrt();
        assert!(err < 1e-11, "return error {}", err);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let run = |steps: usize| {
            let dt = 1.0 / steps as f64;
            let traj = rk4_integrate(harmonic, &[1.0, 0.0], dt, steps, &[]).unwrap();
            let end = traj.states.last().unwrap();
            let exact = (1.0f64.cos(), -(1.0f64.sin()));
            ((end[0] - exact.0).powi(2) + (end[1] - exact.1).powi(2)).sqrt()
        };
        let ratio = run(50) / run(100);
        assert!((ratio - 16.0).abs() < 2.0, "order ratio {}", ratio);
    }

    #[test]
    fn rk4_records_conserved_quantities() {
        let energy = |s: &[f64]| 0.5 * (s[0] * s[0] + s[1] * s[1]);
        let traj =
            rk4_integrate(harmonic, &[1.0, 0.0], 1e-3, 1000, &[("energy", &energy)]).unwrap();
        assert_eq!(traj.conserved[0].1.len(), 1001);
        assert!(traj.drift("energy").unwrap() < 1e-12);
        assert!(traj.drift("missing").is_none());
    }

    #[test]
    fn rk4_rejects_bad_arguments_and_blowups() {
        assert!(matches!(
            rk4_integrate(harmonic, &[1.0, 0.0], 0.0, 10, &[]),
            Err(EllipticError::ParameterDomain(_))
        ));
        let explode = |s: &[f64], out: &mut [f64]| {
            out[0] = s[0] * s[0];
        };
        assert!(matches!(
            rk4_integrate(explode, &[10.0], 1.0, 100, &[]),
            Err(EllipticError::NonFiniteState(_))
        ));
    }

    #[test]
    fn trajectory_csv_and_json_shape() {
        let energy = |s: &[f64]| 0.5 * (s[0] * s[0] + s[1] * s[1]);
        let traj = rk4_integrate(harmonic, &[1.0, 0.0], 0.5, 2, &[("energy", &energy)]).unwrap();
        let csv = traj.to_csv(&["x", "v"]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,x,v,energy");
        assert_eq!(lines.len(), 4);
        let json = traj.to_json(&["x", "v"]);
        assert_eq!(json["times"].as_array().unwrap().len(), 3);
        assert_eq!(json["conserved"][0]["name"], "energy");
    }

    #[test]
    fn poisson_bracket_canonical_pairs() {
        let s = PhaseState::new(0.3, -0.2, 0.7, 0.1);
        let x1 = |s: &PhaseState| s.x1;
        let y1 = |s: &PhaseState| s.y1;
        let y2 = |s: &PhaseState| s.y2;
        assert!((poisson_bracket(&x1, &y1, &s) - 1.0).abs() < 1e-9);
        assert!(poisson_bracket(&x1, &y2, &s).abs() < 1e-9);
        // Antisymmetry: {H, H} = 0.
        let h = |s: &PhaseState| 0.5 * (s.x1 * s.x1 + s.x2 * s.x2) + s.y1 * s.y1 * s.y2;
        assert!(poisson_bracket(&h, &h, &s).abs() < 1e-10);
    }

    #[test]
    fn gradient_bracket_matches_finite_differences() {
        let s = PhaseState::new(0.4, 0.1, -0.3, 0.8);
        let f = |s: &PhaseState| s.x1 * s.y2 - s.x2 * s.y1;
        let g = |s: &PhaseState| 0.5 * (s.x1 * s.x1 + s.x2 * s.x2) + s.y1 * s.y2;
        let grad_f = [-s.x2, s.x1, s.y2, -s.y1];
        let grad_g = [s.y2, s.y1, s.x1, s.x2];
        let exact = poisson_bracket_with_gradients(&grad_f, &grad_g);
        let fd = poisson_bracket(&f, &g, &s);
        assert!((exact - fd).abs() < 1e-8);
    }
}
