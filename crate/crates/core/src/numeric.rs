//! Small dense least-squares solver and torus parametrization shared by the
//! numeric probes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

/// Stopping rules for [`levenberg_marquardt`].
#[derive(Clone, Copy, Debug)]
pub(crate) struct Descent {
    pub max_iter: usize,
    /// Stop once `‖r‖²` drops below this.
    pub target: f64,
}

/// Minimizes `‖r(x)‖²` with damped Gauss–Newton steps and a central
/// difference Jacobian. `project` is applied after every step. Returns the
/// final point and its cost.
pub(crate) fn levenberg_marquardt<R, P>(r: R, project: P, x0: Vec<f64>, opts: Descent) -> (Vec<f64>, f64)
where
    R: Fn(&[f64]) -> Vec<f64>,
    P: Fn(&mut [f64]),
{
    let mut x = x0;
    project(&mut x);
    let mut res = DVector::from_vec(r(&x));
    let mut cost = res.norm_squared();
    let mut damping = 1e-3;
    let mut stalled = 0;
    let p = x.len();
    for _ in 0..opts.max_iter {
        if cost < opts.target || cost.is_nan() {
            break;
        }
        let jac = jacobian(&r, &x, res.len());
        let jt = jac.transpose();
        let a = &jt * &jac;
        let g = &jt * &res;
        let diag: Vec<f64> = (0..p).map(|i| a[(i, i)].max(1e-12)).collect();
        let mut accepted = false;
        while damping < 1e12 {
            let mut m = a.clone();
            for (i, d) in diag.iter().enumerate() {
                m[(i, i)] += damping * d;
            }
            let Some(step) = m.lu().solve(&(-&g)) else {
                damping *= 4.0;
                continue;
            };
            let mut trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            project(&mut trial);
            let trial_res = DVector::from_vec(r(&trial));
            let trial_cost = trial_res.norm_squared();
            if trial_cost < cost {
                stalled = if cost - trial_cost < 1e-6 * cost {
                    stalled + 1
                } else {
                    0
                };
                x = trial;
                res = trial_res;
                cost = trial_cost;
                damping = (damping / 3.0).max(1e-12);
                accepted = true;
                break;
            }
            damping *= 4.0;
        }
        // Stop at a rejected step or after three negligible improvements.
        if !accepted || stalled >= 3 {
            break;
        }
    }
    (x, cost)
}

fn jacobian<R: Fn(&[f64]) -> Vec<f64>>(r: &R, x: &[f64], m: usize) -> DMatrix<f64> {
    let mut jac = DMatrix::zeros(m, x.len());
    let mut probe = x.to_vec();
    for c in 0..x.len() {
        let h = 1e-7 * (1.0 + x[c].abs());
        probe[c] = x[c] + h;
        let plus = r(&probe);
        probe[c] = x[c] - h;
        let minus = r(&probe);
        probe[c] = x[c];
        for i in 0..m {
            jac[(i, c)] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    jac
}

/// `x = (s_1..s_m, θ_1..θ_m)` ↦ `z_j = exp(s_j + iθ_j)`.
pub(crate) fn torus(x: &[f64]) -> Vec<Complex64> {
    let m = x.len() / 2;
    (0..m).map(|j| Complex64::from_polar(x[j].exp(), x[m + j])).collect()
}

/// Random log-moduli in `[-spread, spread]` and uniform angles.
pub(crate) fn random_start<G: Rng>(rng: &mut G, m: usize, spread: f64) -> Vec<f64> {
    let mut x: Vec<f64> = (0..m).map(|_| rng.gen_range(-spread..=spread)).collect();
    x.extend((0..m).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)));
    x
}

/// Clamps the log-modulus half of a torus coordinate vector.
pub(crate) fn clamp_moduli(x: &mut [f64], bound: f64) {
    let m = x.len() / 2;
    for s in &mut x[..m] {
        *s = s.clamp(-bound, bound);
    }
}
