//! Fixed-step time integrators for small ODE systems.
//!
//! Four schemes cover the crate's needs: explicit Euler (reference first-order
//! scheme), the classical Runge–Kutta method (workhorse for non-stiff
//! trajectories), implicit Euler (A-stable, used on stiff relaxation limits)
//! and Crank–Nicolson (A-stable and second order, used for parabolic
//! semi-discretizations). The implicit schemes solve their stage equations by
//! a damped Newton iteration with a finite-difference Jacobian, which is
//! appropriate for the low-dimensional systems this module targets; the PDE
//! modules assemble their own banded implicit systems instead.

use crate::{Error, Result};

/// Time-integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ExplicitEuler,
    Rk4,
    ImplicitEuler,
    CrankNicolson,
}

impl Scheme {
    /// Classical order of accuracy.
    pub fn order(&self) -> usize {
        match self {
            Scheme::ExplicitEuler | Scheme::ImplicitEuler => 1,
            Scheme::CrankNicolson => 2,
            Scheme::Rk4 => 4,
        }
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self, Scheme::ImplicitEuler | Scheme::CrankNicolson)
    }
}

/// A scheme together with its fixed step size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeStepper {
    pub scheme: Scheme,
    pub dt: f64,
}

impl TimeStepper {
    pub fn new(scheme: Scheme, dt: f64) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid("dt", dt, "step size must be positive and finite"));
        }
        Ok(TimeStepper { scheme, dt })
    }
}

/// Tolerance on the Newton update for implicit stage equations.
const NEWTON_TOL: f64 = 1e-12;
/// Iteration cap for the implicit stage solves.
const NEWTON_MAX_ITER: usize = 50;

/// Advances `y' = f(t, y)` by one step of `stepper.scheme` from time `t`.
///
/// `f` writes the derivative of `y` into its third argument. Returns the new
/// state; `y` is not modified. Non-finite derivatives or states are reported
/// as [`Error::NonFinite`], failed implicit solves as [`Error::NoConvergence`].
pub fn step_ode(
    f: &dyn Fn(f64, &[f64], &mut [f64]),
    y: &[f64],
    t: f64,
    stepper: &TimeStepper,
) -> Result<Vec<f64>> {
    let dt = stepper.dt;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", dt, "step size must be positive and finite"));
    }
    let n = y.len();
    let mut eval = |t: f64, y: &[f64], out: &mut [f64]| -> Result<()> {
        f(t, y, out);
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "step_ode derivative",
            });
        }
        Ok(())
    };

    let out = match stepper.scheme {
        Scheme::ExplicitEuler => {
            let mut k = vec![0.0; n];
            eval(t, y, &mut k)?;
            y.iter().zip(&k).map(|(yi, ki)| yi + dt * ki).collect()
        }
        Scheme::Rk4 => {
            let mut k1 = vec![0.0; n];
            let mut k2 = vec![0.0; n];
            let mut k3 = vec![0.0; n];
            let mut k4 = vec![0.0; n];
            let mut tmp = vec![0.0; n];
            eval(t, y, &mut k1)?;
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * dt * k1[i];
            }
            eval(t + 0.5 * dt, &tmp, &mut k2)?;
            for i in 0..n {
                tmp[i] = y[i] + 0.5 * dt * k2[i];
            }
            eval(t + 0.5 * dt, &tmp, &mut k3)?;
            for i in 0..n {
                tmp[i] = y[i] + dt * k3[i];
            }
            eval(t + dt, &tmp, &mut k4)?;
            (0..n)
                .map(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect()
        }
        Scheme::ImplicitEuler => {
            // Solve z = y + dt f(t+dt, z).
            solve_implicit_stage(&mut eval, y, t + dt, dt, y)?
        }
        Scheme::CrankNicolson => {
            // Solve z = y + dt/2 [f(t, y) + f(t+dt, z)] by shifting the
            // explicit half into the base state.
            let mut k = vec![0.0; n];
            eval(t, y, &mut k)?;
            let base: Vec<f64> = y.iter().zip(&k).map(|(yi, ki)| yi + 0.5 * dt * ki).collect();
            solve_implicit_stage(&mut eval, &base, t + dt, 0.5 * dt, y)?
        }
    };
    if out.iter().any(|v: &f64| !v.is_finite()) {
        return Err(Error::NonFinite { context: "step_ode state" });
    }
    Ok(out)
}

/// Newton iteration for `z = base + w · f(t_eval, z)` starting from an
/// explicit predictor. The Jacobian is approximated by forward differences
/// and factored densely — systems here are a handful of equations.
fn solve_implicit_stage(
    eval: &mut impl FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    base: &[f64],
    t_eval: f64,
    w: f64,
    predictor_from: &[f64],
) -> Result<Vec<f64>> {
    let n = base.len();
    let mut fz = vec![0.0; n];
    eval(t_eval, predictor_from, &mut fz)?;
    let mut z: Vec<f64> = (0..n).map(|i| base[i] + w * fz[i]).collect();

    for iter in 0..NEWTON_MAX_ITER {
        eval(t_eval, &z, &mut fz)?;
        // Residual g(z) = z − base − w f(z).
        let g: Vec<f64> = (0..n).map(|i| z[i] - base[i] - w * fz[i]).collect();
        let res = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let scale = 1.0 + z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if res <= NEWTON_TOL * scale {
            return Ok(z);
        }

        // Forward-difference Jacobian of g: I − w ∂f/∂y.
        let mut jac = vec![vec![0.0; n]; n];
        let mut z_pert = z.clone();
        let mut f_pert = vec![0.0; n];
        for col in 0..n {
            let delta = 1e-7 * (1.0 + z[col].abs());
            z_pert[col] = z[col] + delta;
            eval(t_eval, &z_pert, &mut f_pert)?;
            z_pert[col] = z[col];
            for row in 0..n {
                let dfdy = (f_pert[row] - fz[row]) / delta;
                jac[row][col] = if row == col { 1.0 - w * dfdy } else { -w * dfdy };
            }
        }
        let neg_g: Vec<f64> = g.iter().map(|v| -v).collect();
        let dz = solve_dense_small(jac, neg_g).ok_or(Error::NoConvergence {
            context: "implicit stage Newton (singular Jacobian)",
            iterations: iter,
            residual: res,
        })?;
        for i in 0..n {
            z[i] += dz[i];
        }
    }

    eval(t_eval, &z, &mut fz)?;
    let res = (0..n)
        .map(|i| (z[i] - base[i] - w * fz[i]).abs())
        .fold(0.0f64, f64::max);
    let scale = 1.0 + z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if res <= NEWTON_TOL * scale {
        Ok(z)
    } else {
        Err(Error::NoConvergence {
            context: "implicit stage Newton",
            iterations: NEWTON_MAX_ITER,
            residual: res,
        })
    }
}

/// Gaussian elimination with partial pivoting for the tiny Newton systems.
fn solve_dense_small(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
