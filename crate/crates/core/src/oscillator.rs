//! Damped harmonic oscillator: regimes, closed-form solutions and the
//! overdamped (quasi-static) limit.
//!
//! The model is `m ẍ = −k x − γ ẋ` with mass `m > 0`, spring constant
//! `k ≥ 0` and damping coefficient `γ ≥ 0`. Three time scales govern it:
//!
//! * `t0 = √(m/k)` — the undamped oscillation scale,
//! * `td = m/γ` — the inertial (velocity-relaxation) scale,
//! * `tγ = γ/k` — the creep scale of the spring against the damper,
//!
//! linked by `td · tγ = t0²`. Their ratio `f = t0/td = γ/√(mk)` classifies
//! the dynamics: `f < 2` underdamped, `f = 2` critically damped, `f > 2`
//! overdamped. When `f ≫ 2` the inertial term becomes negligible after a
//! short initial layer of width `O(td)` and the motion collapses onto the
//! damper–spring balance `γ ẋ = −k x`, i.e. `x + tγ ẋ = 0` — the system turns
//! into a differential-algebraic one in which velocity is slaved to position.
//! [`overdamped_limit_solution`] returns that limit trajectory,
//! `x(t) = x0 e^{−t/tγ}`.

use crate::{Error, Result};

/// Parameters of the damped oscillator `m ẍ = −k x − γ ẋ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    m: f64,
    k: f64,
    gamma: f64,
}

/// Qualitative regime of the damped oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatorRegime {
    /// `γ = 0`, `k > 0`: undamped oscillation at frequency `ω`.
    Undamped,
    /// `0 < γ < 2√(mk)`: decaying oscillation.
    Underdamped,
    /// `γ = 2√(mk)` (within round-off): fastest non-oscillatory decay.
    CriticallyDamped,
    /// `γ > 2√(mk)`: two real decay rates, one fast and one slow.
    Overdamped,
    /// `k = 0`: no restoring force; velocity relaxes, position saturates at
    /// `x0 + v0 m/γ` (or drifts freely when `γ = 0` too).
    NoSpring,
}

/// Relative tolerance on the discriminant below which the regime is treated
/// as critically damped; `γ̃² − 4ω²` is compared against this times its own
/// magnitude scale, so equal parameter rescalings classify identically.
const CRITICAL_REL_TOL: f64 = 1e-12;

impl OscillatorParams {
    pub fn new(m: f64, k: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("k", k), ("gamma", gamma)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, v, "must be finite"));
            }
        }
        if m <= 0.0 {
            return Err(Error::invalid("m", m, "mass must be positive"));
        }
        if k < 0.0 {
            return Err(Error::invalid("k", k, "spring constant must be non-negative"));
        }
        if gamma < 0.0 {
            return Err(Error::invalid("gamma", gamma, "damping must be non-negative"));
        }
        Ok(OscillatorParams { m, k, gamma })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Natural frequency `ω = √(k/m)`.
    pub fn omega(&self) -> f64 {
        (self.k / self.m).sqrt()
    }

    /// Damping rate per unit mass, `γ̃ = γ/m`.
    pub fn gamma_tilde(&self) -> f64 {
        self.gamma / self.m
    }

    /// Oscillation time scale `t0 = √(m/k)`; infinite when `k = 0`.
    pub fn t0(&self) -> f64 {
        (self.m / self.k).sqrt()
    }

    /// Inertial relaxation scale `td = m/γ`; infinite when `γ = 0`.
    pub fn td(&self) -> f64 {
        self.m / self.gamma
    }

    /// Creep scale `tγ = γ/k`; this is the decay time of the overdamped limit.
    pub fn t_gamma(&self) -> f64 {
        self.gamma / self.k
    }

    /// Dimensionless damping strength `f = t0/td = γ/√(mk)`; the regime
    /// boundary sits at `f = 2`.
    pub fn damping_f(&self) -> f64 {
        self.gamma / (self.m * self.k).sqrt()
    }

    /// Discriminant `γ̃² − 4ω²` of the characteristic polynomial.
    pub fn discriminant(&self) -> f64 {
        let gt = self.gamma_tilde();
        gt * gt - 4.0 * self.k / self.m
    }

    /// First-order form of the equation of motion: `d(x, v)/dt`.
    pub fn rhs(&self, state: &[f64], out: &mut [f64]) {
        out[0] = state[1];
        out[1] = -(self.k * state[0] + self.gamma * state[1]) / self.m;
    }

    /// Total mechanical energy `½ m v² + ½ k x²`.
    pub fn energy(&self, x: f64, v: f64) -> f64 {
        0.5 * self.m * v * v + 0.5 * self.k * x * x
    }
}

/// Classifies the oscillator regime from its parameters.
///
/// `k = 0` takes precedence (no restoring force), then `γ = 0`, then the sign
/// of the discriminant with a relative round-off band for critical damping.
/// The classification is invariant under the rescaling
/// `(m, k, γ) → (α m, α k, α γ)`, which leaves the trajectory unchanged.
pub fn classify_regime(p: &OscillatorParams) -> OscillatorRegime {
    if p.k == 0.0 {
        return OscillatorRegime::NoSpring;
    }
    if p.gamma == 0.0 {
        return OscillatorRegime::Undamped;
    }
    let gt2 = p.gamma_tilde() * p.gamma_tilde();
    let w2 = 4.0 * p.k / p.m;
    let delta = gt2 - w2;
    if delta.abs() <= CRITICAL_REL_TOL * gt2.max(w2) {
        OscillatorRegime::CriticallyDamped
    } else if delta < 0.0 {
        OscillatorRegime::Underdamped
    } else {
        OscillatorRegime::Overdamped
    }
}

/// Closed-form solution `(x(t), v(t))` for initial data `(x0, v0)` at `t = 0`.
///
/// Every regime is covered, including the degenerate `k = 0` cases. The
/// overdamped branch computes the slow root as `λ₊ = −2ω²/(γ̃ + √Δ)` to avoid
/// the catastrophic cancellation of `(−γ̃ + √Δ)/2` at strong damping.
pub fn analytic_solution(p: &OscillatorParams, x0: f64, v0: f64, t: f64) -> (f64, f64) {
    let gt = p.gamma_tilde();
    match classify_regime(p) {
        OscillatorRegime::NoSpring => {
            if p.gamma == 0.0 {
                // Free motion.
                (x0 + v0 * t, v0)
            } else {
                // Velocity relaxes on td = 1/γ̃; position saturates at
                // x0 + v0/γ̃ = x0 + v0 m/γ.
                let e = (-gt * t).exp();
                (x0 + v0 / gt * (1.0 - e), v0 * e)
            }
        }
        OscillatorRegime::Undamped => {
            let w = p.omega();
            let (s, c) = (w * t).sin_cos();
            (x0 * c + v0 / w * s, -x0 * w * s + v0 * c)
        }
        OscillatorRegime::Underdamped => {
            // x = e^{−γ̃ t/2} [x0 cos μt + (v0 + γ̃ x0/2)/μ · sin μt],
            // μ² = ω² − γ̃²/4.
            let mu = (p.k / p.m - 0.25 * gt * gt).sqrt();
            let a = x0;
            let b = (v0 + 0.5 * gt * x0) / mu;
            let e = (-0.5 * gt * t).exp();
            let (s, c) = (mu * t).sin_cos();
            let x = e * (a * c + b * s);
            let dxdt_osc = -a * mu * s + b * mu * c;
            let v = e * (dxdt_osc - 0.5 * gt * (a * c + b * s));
            (x, v)
        }
        OscillatorRegime::CriticallyDamped => {
            // Double root λ = −γ̃/2: x = (x0 + (v0 − λ x0) t) e^{λt}.
            let lam = -0.5 * gt;
            let b = v0 - lam * x0;
            let e = (lam * t).exp();
            let x = (x0 + b * t) * e;
            let v = (b + lam * (x0 + b * t)) * e;
            (x, v)
        }
        OscillatorRegime::Overdamped => {
            let sqrt_d = p.discriminant().sqrt();
            let w2 = p.k / p.m;
            // Slow root (rationalized) and fast root; λ₊ λ₋ = ω², λ₊ + λ₋ = −γ̃.
            let lam_slow = -2.0 * w2 / (gt + sqrt_d);
            let lam_fast = -0.5 * (gt + sqrt_d);
            let c_slow = (v0 - lam_fast * x0) / (lam_slow - lam_fast);
            let c_fast = x0 - c_slow;
            let e_slow = (lam_slow * t).exp();
            let e_fast = (lam_fast * t).exp();
            (
                c_slow * e_slow + c_fast * e_fast,
                c_slow * lam_slow * e_slow + c_fast * lam_fast * e_fast,
            )
        }
    }
}

/// Quasi-static (overdamped-limit) trajectory: `x = x0 e^{−t/tγ}`, with the
/// velocity slaved to position through the constraint `x + tγ ẋ = 0`.
///
/// This is the `td/tγ → 0` limit of the full dynamics; the full solution
/// approaches it after an initial layer of width `O(td)` during which the
/// velocity adjusts from `v0` to the slaved value `−x/tγ`.
pub fn overdamped_limit_solution(t_gamma: f64, x0: f64, t: f64) -> (f64, f64) {
    let x = x0 * (-t / t_gamma).exp();
    (x, -x / t_gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepper::{step_ode, Scheme, TimeStepper};

    fn params(m: f64, k: f64, gamma: f64) -> OscillatorParams {
        OscillatorParams::new(m, k, gamma).unwrap()
    }

    #[test]
    fn classification_covers_all_regimes() {
        assert_eq!(classify_regime(&params(1.0, 4.0, 0.0)), OscillatorRegime::Undamped);
        assert_eq!(classify_regime(&params(1.0, 4.0, 1.0)), OscillatorRegime::Underdamped);
        assert_eq!(classify_regime(&params(1.0, 4.0, 4.0)), OscillatorRegime::CriticallyDamped);
        assert_eq!(classify_regime(&params(1.0, 4.0, 10.0)), OscillatorRegime::Overdamped);
        assert_eq!(classify_regime(&params(1.0, 0.0, 3.0)), OscillatorRegime::NoSpring);
        assert_eq!(classify_regime(&params(1.0, 0.0, 0.0)), OscillatorRegime::NoSpring);
    }

    #[test]
    fn classification_is_invariant_under_parameter_rescaling() {
        for alpha in [1e-6, 0.3, 7.0, 1e6] {
            let base = params(2.0, 3.0, 1.5);
            let scaled = params(2.0 * alpha, 3.0 * alpha, 1.5 * alpha);
            assert_eq!(classify_regime(&base), classify_regime(&scaled));
            assert!((base.damping_f() - scaled.damping_f()).abs() < 1e-12);
        }
    }

    #[test]
    fn time_scales_satisfy_td_times_tgamma_equals_t0_squared() {
        let p = params(2.0, 5.0, 3.0);
        let lhs = p.td() * p.t_gamma();
        let rhs = p.t0() * p.t0();
        assert!((lhs - rhs).abs() < 1e-14 * rhs);
    }

    #[test]
    fn initial_conditions_are_reproduced_exactly() {
        for p in [
            params(1.0, 4.0, 0.0),
            params(1.0, 4.0, 1.0),
            params(1.0, 4.0, 4.0),
            params(1.0, 4.0, 10.0),
            params(1.0, 0.0, 3.0),
            params(1.0, 0.0, 0.0),
        ] {
            let (x, v) = analytic_solution(&p, 1.3, -0.7, 0.0);
            assert!((x - 1.3).abs() < 1e-14);
            assert!((v + 0.7).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_forms_match_rk4_integration() {
        let cases = [
            params(1.0, 4.0, 0.0),
            params(1.5, 4.0, 1.0),
            params(1.0, 4.0, 4.0),
            params(1.0, 4.0, 12.0),
            params(2.0, 0.0, 3.0),
        ];
        for p in cases {
            let stepper = TimeStepper::new(Scheme::Rk4, 1e-3).unwrap();
            let f = |_t: f64, y: &[f64], out: &mut [f64]| p.rhs(y, out);
            let mut y = vec![1.0, 0.5];
            let mut t = 0.0;
            for _ in 0..4000 {
                y = step_ode(&f, &y, t, &stepper).unwrap();
                t += 1e-3;
            }
            let (x, v) = analytic_solution(&p, 1.0, 0.5, t);
            assert!((y[0] - x).abs() < 1e-9, "x mismatch for {p:?}: {} vs {x}", y[0]);
            assert!((y[1] - v).abs() < 1e-9, "v mismatch for {p:?}: {} vs {v}", y[1]);
        }
    }

    #[test]
    fn energy_is_non_increasing_when_damped() {
        let p = params(1.0, 4.0, 0.8);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let t = i as f64 * 0.05;
            let (x, v) = analytic_solution(&p, 1.0, 0.0, t);
            let e = p.energy(x, v);
            assert!(e <= prev + 1e-12, "energy grew at t={t}");
            prev = e;
        }
    }

    #[test]
    fn no_spring_position_saturates_at_the_terminal_displacement() {
        // x(∞) = x0 + v0 m/γ.
        let p = params(2.0, 0.0, 5.0);
        let (x, v) = analytic_solution(&p, 1.0, 3.0, 50.0 * p.td());
        assert!((x - (1.0 + 3.0 * 2.0 / 5.0)).abs() < 1e-12);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn undamped_motion_is_periodic_with_period_two_pi_t0() {
        let p = params(1.0, 4.0, 0.0);
        let period = 2.0 * std::f64::consts::PI * p.t0();
        let (x, v) = analytic_solution(&p, 0.7, -0.2, 3.0 * period);
        assert!((x - 0.7).abs() < 1e-12);
        assert!((v + 0.2).abs() < 1e-12);
    }

    #[test]
    fn solution_is_continuous_across_the_critical_boundary() {
        // Slightly under- and over-damped parameters bracketing critical
        // damping must give nearly identical trajectories.
        let eps = 1e-8;
        let under = params(1.0, 4.0, 4.0 * (1.0 - eps));
        let critical = params(1.0, 4.0, 4.0);
        let over = params(1.0, 4.0, 4.0 * (1.0 + eps));
        for i in 1..=10 {
            let t = i as f64 * 0.3;
            let (xu, _) = analytic_solution(&under, 1.0, -0.5, t);
            let (xc, _) = analytic_solution(&critical, 1.0, -0.5, t);
            let (xo, _) = analytic_solution(&over, 1.0, -0.5, t);
            assert!((xu - xc).abs() < 1e-6, "under vs critical at t={t}");
            assert!((xo - xc).abs() < 1e-6, "over vs critical at t={t}");
        }
    }

    #[test]
    fn overdamped_limit_decays_on_the_creep_scale() {
        let (x, v) = overdamped_limit_solution(2.0, 3.0, 2.0);
        assert!((x - 3.0 * (-1.0f64).exp()).abs() < 1e-14);
        // Constraint x + tγ v = 0.
        assert!((x + 2.0 * v).abs() < 1e-14);
    }

    #[test]
    fn strongly_overdamped_solution_tracks_the_limit_after_the_layer() {
        // f = t0/tγ ratio 1e-3: after t ≳ 5 td the slow mode dominates and
        // matches x0 e^{−t/tγ} to O((t0/tγ)²).
        let (m, k, gamma) = (1e-6, 1.0, 1.0); // t0 = 1e-3, tγ = 1, td = 1e-6
        let p = params(m, k, gamma);
        for i in 1..=20 {
            let t = 0.1 * i as f64;
            let (x, _) = analytic_solution(&p, 1.0, 0.0, t);
            let (xl, _) = overdamped_limit_solution(p.t_gamma(), 1.0, t);
            assert!(
                (x - xl).abs() <= 1e-5 * xl.abs().max(1e-3),
                "t={t}: {x} vs {xl}"
            );
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(OscillatorParams::new(0.0, 1.0, 1.0).is_err());
        assert!(OscillatorParams::new(-1.0, 1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, -1.0, 1.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, -1.0).is_err());
        assert!(OscillatorParams::new(f64::NAN, 1.0, 1.0).is_err());
    }
}
