//! Planar pendulum: stiff-spring formulation and its rigid limit.
//!
//! A bob of mass `m` hangs from a stiff spring of natural length `L` and
//! stiffness `k` in Cartesian coordinates `(x1, x2)` with `x2` pointing
//! *downward* (gravity acts in `+x2`):
//!
//! ```text
//! m ẍ1 = −k x1 (1 − L/r),        r = √(x1² + x2²)
//! m ẍ2 = −k x2 (1 − L/r) + m g
//! ```
//!
//! The factor `λ_k = k (1 − L/r)` plays the role of a spring tension per unit
//! length. As `k → ∞` the radial oscillation (period `2π√(m/k)`) becomes
//! infinitely fast, `r → L`, and `λ_k` converges to the Lagrange multiplier
//! `λ = m (g cos θ + L θ̇²)/L` that enforces the rigid constraint `r = L` in
//! the limit model `L θ̈ = −g sin θ`. The rigid pendulum's period from rest at
//! angle `θ0` is `T = 4 √(L/g) · K(sin²(θ0/2))` with `K` the complete
//! elliptic integral of the first kind, which [`rigid_period_quadrature`]
//! evaluates numerically.

use crate::quadrature::quad_trapezoid;
use crate::stepper::{step_ode, TimeStepper};
use crate::{Error, Result};

/// Parameters of the pendulum; `k` is the spring stiffness of the resolved
/// model and is ignored by the rigid-limit integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    /// Bob mass.
    pub m: f64,
    /// Natural spring length / rigid rod length.
    pub length: f64,
    /// Spring stiffness.
    pub k: f64,
    /// Gravitational acceleration.
    pub g: f64,
    /// Release angle from the downward vertical, radians.
    pub theta0: f64,
}

impl PendulumParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v, positive) in [
            ("m", self.m, true),
            ("length", self.length, true),
            ("k", self.k, true),
            ("g", self.g, true),
            ("theta0", self.theta0, false),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, v, "must be finite"));
            }
            if positive && v <= 0.0 {
                return Err(Error::invalid(name, v, "must be positive"));
            }
        }
        if self.theta0.abs() >= std::f64::consts::PI {
            return Err(Error::invalid(
                "theta0",
                self.theta0,
                "release angle must lie strictly inside (−π, π)",
            ));
        }
        Ok(())
    }

    /// Radial (spring) oscillation period `2π√(m/k)` — the fast scale.
    pub fn spring_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.m / self.k).sqrt()
    }

    /// Small-angle pendulum period `2π√(L/g)` — the slow scale.
    pub fn small_angle_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.length / self.g).sqrt()
    }
}

/// One state sample of the stiff-spring trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffSample {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub v1: f64,
    pub v2: f64,
}

impl StiffSample {
    /// Instantaneous spring length.
    pub fn r(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Angle from the downward vertical recovered from the Cartesian state.
    pub fn theta_equiv(&self) -> f64 {
        self.x1.atan2(self.x2)
    }

    /// Absolute violation `|r − L|` of the rigid-rod constraint.
    pub fn constraint_violation(&self, p: &PendulumParams) -> f64 {
        (self.r() - p.length).abs()
    }

    /// Spring tension per unit length `λ_k = k (1 − L/r)`.
    pub fn lambda_k(&self, p: &PendulumParams) -> f64 {
        p.k * (1.0 - p.length / self.r())
    }
}

/// Trajectory of the stiff-spring pendulum, sampled at every step.
#[derive(Debug, Clone)]
pub struct StiffPendulumTrajectory {
    pub params: PendulumParams,
    pub samples: Vec<StiffSample>,
}

impl StiffPendulumTrajectory {
    /// Largest constraint violation along the trajectory.
    pub fn max_constraint_violation(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.constraint_violation(&self.params))
            .fold(0.0, f64::max)
    }

    /// Linear interpolation of the equivalent angle at time `t`.
    pub fn theta_at(&self, t: f64) -> f64 {
        interp_samples(self.samples.iter().map(|s| (s.t, s.theta_equiv())), t)
    }
}

/// One state sample of the rigid-limit trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidSample {
    pub t: f64,
    pub theta: f64,
    pub omega: f64,
}

/// Trajectory of the rigid pendulum `L θ̈ = −g sin θ`.
#[derive(Debug, Clone)]
pub struct RigidPendulumTrajectory {
    pub params: PendulumParams,
    pub samples: Vec<RigidSample>,
}

impl RigidPendulumTrajectory {
    pub fn theta_at(&self, t: f64) -> f64 {
        interp_samples(self.samples.iter().map(|s| (s.t, s.theta)), t)
    }

    /// Relative drift of the conserved energy `½L²ω² − gL cos θ` (per unit
    /// mass) between the first and the worst sample.
    pub fn energy_drift(&self) -> f64 {
        let p = &self.params;
        let energy = |s: &RigidSample| {
            0.5 * p.length * p.length * s.omega * s.omega - p.g * p.length * s.theta.cos()
        };
        let e0 = energy(&self.samples[0]);
        let scale = p.g * p.length;
        self.samples
            .iter()
            .map(|s| (energy(s) - e0).abs() / scale)
            .fold(0.0, f64::max)
    }
}

fn interp_samples(mut it: impl Iterator<Item = (f64, f64)>, t: f64) -> f64 {
    let mut prev = it.next().expect("trajectory has at least one sample");
    if t <= prev.0 {
        return prev.1;
    }
    for cur in it {
        if t <= cur.0 {
            let w = (t - prev.0) / (cur.0 - prev.0);
            return prev.1 * (1.0 - w) + cur.1 * w;
        }
        prev = cur;
    }
    prev.1
}

/// Default integrator for the stiff model: RK4 with 40 steps per spring
/// period, which keeps the fast radial mode both stable and accurate.
pub fn default_stiff_stepper(p: &PendulumParams) -> Result<TimeStepper> {
    TimeStepper::new(crate::stepper::Scheme::Rk4, p.spring_period() / 40.0)
}

/// Integrates the stiff-spring pendulum released from rest at angle `theta0`
/// with the spring at its natural length.
///
/// The step size must resolve the fast radial oscillation: `dt ≤ τ/20` with
/// `τ = 2π√(m/k)` is enforced, otherwise the radial mode would be aliased
/// into spurious swing dynamics.
pub fn simulate_stiff_pendulum(
    p: &PendulumParams,
    stepper: &TimeStepper,
    t_end: f64,
) -> Result<StiffPendulumTrajectory> {
    p.validate()?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::invalid("t_end", t_end, "must be positive and finite"));
    }
    let resolution_bound = p.spring_period() / 20.0;
    if stepper.dt > resolution_bound {
        return Err(Error::StepSizeUnstable {
            context: "stiff pendulum (fast spring mode must be resolved)",
            dt: stepper.dt,
            bound: resolution_bound,
        });
    }

    let (s0, c0) = p.theta0.sin_cos();
    let mut y = vec![p.length * s0, p.length * c0, 0.0, 0.0];
    let rhs = |_t: f64, y: &[f64], out: &mut [f64]| {
        let r = y[0].hypot(y[1]);
        let lam = p.k * (1.0 - p.length / r);
        out[0] = y[2];
        out[1] = y[3];
        out[2] = -lam * y[0] / p.m;
        out[3] = -lam * y[1] / p.m + p.g;
    };

    let n_steps = (t_end / stepper.dt).ceil() as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut t = 0.0;
    samples.push(StiffSample {
        t,
        x1: y[0],
        x2: y[1],
        v1: y[2],
        v2: y[3],
    });
    for _ in 0..n_steps {
        y = step_ode(&rhs, &y, t, stepper)?;
        t += stepper.dt;
        samples.push(StiffSample {
            t,
            x1: y[0],
            x2: y[1],
            v1: y[2],
            v2: y[3],
        });
    }
    Ok(StiffPendulumTrajectory { params: *p, samples })
}

/// Integrates the rigid pendulum `L θ̈ = −g sin θ` released from rest.
pub fn simulate_rigid_pendulum(
    p: &PendulumParams,
    stepper: &TimeStepper,
    t_end: f64,
) -> Result<RigidPendulumTrajectory> {
    p.validate()?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::invalid("t_end", t_end, "must be positive and finite"));
    }
    let rhs = |_t: f64, y: &[f64], out: &mut [f64]| {
        out[0] = y[1];
        out[1] = -(p.g / p.length) * y[0].sin();
    };
    let mut y = vec![p.theta0, 0.0];
    let n_steps = (t_end / stepper.dt).ceil() as usize;
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut t = 0.0;
    samples.push(RigidSample {
        t,
        theta: y[0],
        omega: y[1],
    });
    for _ in 0..n_steps {
        y = step_ode(&rhs, &y, t, stepper)?;
        t += stepper.dt;
        samples.push(RigidSample {
            t,
            theta: y[0],
            omega: y[1],
        });
    }
    Ok(RigidPendulumTrajectory { params: *p, samples })
}

/// Rigid-pendulum period from rest at `theta0` via the complete elliptic
/// integral of the first kind: `T = 4 √(L/g) K(m)`, `m = sin²(θ0/2)`,
/// evaluated with `n_panels` trapezoid panels (the integrand is smooth on
/// `[0, π/2]` for `|θ0| < π`).
pub fn rigid_period_quadrature(p: &PendulumParams, n_panels: usize) -> Result<f64> {
    p.validate()?;
    let m = (0.5 * p.theta0).sin().powi(2);
    let k_complete = quad_trapezoid(
        |phi| 1.0 / (1.0 - m * phi.sin().powi(2)).sqrt(),
        0.0,
        std::f64::consts::FRAC_PI_2,
        n_panels,
    )?;
    Ok(4.0 * (p.length / p.g).sqrt() * k_complete)
}

/// Measures the period of a trajectory released from rest at a positive
/// angle as four times the first downward zero crossing of the angle,
/// locating the crossing by linear interpolation between samples.
pub fn period_from_first_crossing(samples: impl Iterator<Item = (f64, f64)>) -> Result<f64> {
    let mut prev: Option<(f64, f64)> = None;
    for (t, theta) in samples {
        if let Some((tp, thp)) = prev {
            if thp > 0.0 && theta <= 0.0 {
                let w = thp / (thp - theta);
                return Ok(4.0 * (tp + w * (t - tp)));
            }
        }
        prev = Some((t, theta));
    }
    Err(Error::NoConvergence {
        context: "period_from_first_crossing (no zero crossing in trajectory)",
        iterations: 0,
        residual: f64::NAN,
    })
}
