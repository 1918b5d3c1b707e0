//! Characteristic analysis of the 1D compressible Euler equations.
//!
//! In primitive variables `V = (ρ, u, p)` the equations read
//! `∂V/∂t + M(V) ∂V/∂x = 0` with the quasilinear matrix
//!
//! ```text
//!         ⎡ u    ρ    0  ⎤
//! M(V) =  ⎢ 0    u   1/ρ ⎥ ,      a² = Γ p / ρ,
//!         ⎣ 0   ρa²   u  ⎦
//! ```
//!
//! whose characteristic polynomial factors as `(λ − u)((λ − u)² − a²)`: the
//! eigenvalues are `u` and `u ± a`. They are real — the system is
//! hyperbolic — exactly when `a² > 0`. States with non-positive pressure or
//! density take `a²` through zero and the acoustic pair turns complex, which
//! is the same degeneracy the shallow-water solvers must avoid at drying
//! fronts; this module supplies the diagnostic used to reject such states.

use crate::{Error, Result};
use num_complex::Complex64;

/// Primitive state `(ρ, u, p)` of the 1D Euler equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerPrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl EulerPrimitiveState {
    /// Squared sound speed `a² = Γ p / ρ` for adiabatic exponent `Γ`.
    pub fn sound_speed_squared(&self, gamma: f64) -> f64 {
        gamma * self.p / self.rho
    }

    /// A state is hyperbolic when the acoustic eigenvalues are real and
    /// distinct, i.e. `a² > 0` (requires `ρ > 0` as well for `M` to exist).
    pub fn is_hyperbolic(&self, gamma: f64) -> bool {
        self.rho > 0.0 && self.sound_speed_squared(gamma) > 0.0
    }
}

/// Quasilinear coefficient matrix `M(V)` in primitive variables, row-major.
pub fn quasilinear_matrix(v: &EulerPrimitiveState, gamma: f64) -> Result<[[f64; 3]; 3]> {
    validate(v, gamma)?;
    let a2 = v.sound_speed_squared(gamma);
    Ok([
        [v.u, v.rho, 0.0],
        [0.0, v.u, 1.0 / v.rho],
        [0.0, v.rho * a2, v.u],
    ])
}

/// Real eigenvalues `{u − a, u, u + a}` of `M(V)`, ascending.
///
/// Fails with a descriptive error when `a² ≤ 0` (non-hyperbolic state):
/// the acoustic eigenvalues would be the complex pair `u ± i√(−a²)` and no
/// real characteristic decomposition exists. Use
/// [`euler_eigenvalues_complex`] to inspect that pair.
pub fn euler_eigenvalues(v: &EulerPrimitiveState, gamma: f64) -> Result<[f64; 3]> {
    validate(v, gamma)?;
    let a2 = v.sound_speed_squared(gamma);
    if a2 <= 0.0 {
        return Err(Error::invalid(
            "sound_speed_squared",
            a2,
            "state is non-hyperbolic: acoustic eigenvalues are complex",
        ));
    }
    let a = a2.sqrt();
    Ok([v.u - a, v.u, v.u + a])
}

/// Eigenvalues of `M(V)` over the complex numbers; always defined for
/// `ρ > 0`. For `a² < 0` the acoustic pair is `u ± i√(−a²)`.
pub fn euler_eigenvalues_complex(v: &EulerPrimitiveState, gamma: f64) -> Result<[Complex64; 3]> {
    validate(v, gamma)?;
    let a2 = v.sound_speed_squared(gamma);
    let root = Complex64::new(a2, 0.0).sqrt();
    let u = Complex64::new(v.u, 0.0);
    Ok([u - root, u, u + root])
}

/// Characteristic polynomial `det(λI − M)` of a 3×3 matrix, evaluated at
/// `lambda`; used to cross-check the closed-form eigenvalues.
pub fn char_poly_at(m: &[[f64; 3]; 3], lambda: f64) -> f64 {
    let a = [
        [lambda - m[0][0], -m[0][1], -m[0][2]],
        [-m[1][0], lambda - m[1][1], -m[1][2]],
        [-m[2][0], -m[2][1], lambda - m[2][2]],
    ];
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn validate(v: &EulerPrimitiveState, gamma: f64) -> Result<()> {
    if !(v.rho.is_finite() && v.u.is_finite() && v.p.is_finite()) {
        return Err(Error::NonFinite {
            context: "EulerPrimitiveState",
        });
    }
    if v.rho <= 0.0 {
        return Err(Error::invalid("rho", v.rho, "density must be positive"));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::invalid("gamma", gamma, "adiabatic exponent must be positive"));
    }
    Ok(())
}
