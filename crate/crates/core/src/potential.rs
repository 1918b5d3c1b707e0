//! Wall potentials for the sorption models and the adsorption length `M`.
//!
//! A solute diffusing near an attracting wall feels a potential `V(x)` that
//! acts only inside a thin layer of width `O(ε)`. In wall units
//! `ξ = distance/ε` the potential is a fixed dimensionless profile `U(ξ)`
//! (measured in units of `k_B T`, so the Boltzmann factor is `e^{−U}`).
//! Integrating the excess equilibrium concentration across the layer yields
//! the *adsorption length*
//!
//! ```text
//! M = ε ∫ e^{−U(ξ)} dξ     over the layer  ξ ∈ [ξ_floor, L + 1],
//! ```
//!
//! the single parameter through which the layer survives in the reduced
//! model's boundary condition `M ∂c/∂t = D ∂c/∂n`. The dimensionless cutoff
//! `L` truncates the (rapidly decaying) potential tail; `L = 2` is the
//! conventional choice. For the Lennard-Jones wall the integrand is pushed
//! to zero by the `ξ^{−12}` core well before `ξ = 0.35`, which is used as
//! the numerical floor `ξ_floor` (and as the wall position of the resolved
//! model); the other profiles are bounded and use `ξ_floor = 0`.

use crate::quadrature::quad_trapezoid;
use crate::{Error, Result};

/// Numerical floor of the Lennard-Jones layer coordinate: below this the
/// Boltzmann factor `e^{−U}` underflows for any meaningful well depth, so
/// the resolved model places its wall here.
pub const LJ_XI_FLOOR: f64 = 0.35;

/// Default number of trapezoid panels for [`compute_M`].
pub const DEFAULT_M_PANELS: usize = 2000;

/// Wall-potential profile in layer units, together with the layer width
/// `eps` and the dimensionless cutoff `cutoff` (the `L` above).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialSpec {
    /// `U(ξ) = φ (ξ^{−12} − 2 ξ^{−6})` with `ξ = (x + ε)/ε`: a hard core at
    /// `ξ = 0` (i.e. `x = −ε`) and a well of depth `φ` at `ξ = 1` (`x = 0`).
    LennardJones { eps: f64, phi: f64, cutoff: f64 },
    /// `U(ξ) = a1 e^{−b1 ξ²} − a2 e^{−b2 ξ²}` with `ξ = (x − x0)/ε`:
    /// a smooth repulsive shoulder of height `a1 − a2` at the wall `x0`
    /// followed by an attractive well.
    GaussianWell {
        eps: f64,
        a1: f64,
        b1: f64,
        a2: f64,
        b2: f64,
        x0: f64,
        cutoff: f64,
    },
    /// `U(ξ) = −φ` on the layer `0 ≤ ξ ≤ L + 1` and `0` beyond, with
    /// `ξ = x/ε`: the square sink whose reduced model is exactly solvable.
    SquareWell { eps: f64, phi: f64, cutoff: f64 },
    /// `U ≡ 0`: no wall interaction; `M = ε (L + 1 − ξ_floor)` exactly.
    Flat { eps: f64, cutoff: f64 },
}

impl PotentialSpec {
    /// Layer width `ε`.
    pub fn eps(&self) -> f64 {
        match *self {
            PotentialSpec::LennardJones { eps, .. }
            | PotentialSpec::GaussianWell { eps, .. }
            | PotentialSpec::SquareWell { eps, .. }
            | PotentialSpec::Flat { eps, .. } => eps,
        }
    }

    /// Dimensionless tail cutoff `L`; the layer integral runs to `ξ = L + 1`.
    pub fn cutoff(&self) -> f64 {
        match *self {
            PotentialSpec::LennardJones { cutoff, .. }
            | PotentialSpec::GaussianWell { cutoff, .. }
            | PotentialSpec::SquareWell { cutoff, .. }
            | PotentialSpec::Flat { cutoff, .. } => cutoff,
        }
    }

    /// Lower end of the layer in `ξ` units.
    pub fn xi_floor(&self) -> f64 {
        match self {
            PotentialSpec::LennardJones { .. } => LJ_XI_FLOOR,
            _ => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let eps = self.eps();
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::invalid("eps", eps, "layer width must be positive"));
        }
        let cutoff = self.cutoff();
        if !(cutoff.is_finite() && cutoff > self.xi_floor()) {
            return Err(Error::invalid(
                "cutoff",
                cutoff,
                "cutoff must exceed the layer floor",
            ));
        }
        let finite = match *self {
            PotentialSpec::LennardJones { phi, .. } | PotentialSpec::SquareWell { phi, .. } => {
                phi.is_finite() && phi >= 0.0
            }
            PotentialSpec::GaussianWell { a1, b1, a2, b2, x0, .. } => {
                [a1, b1, a2, b2, x0].iter().all(|v| v.is_finite()) && b1 > 0.0 && b2 > 0.0
            }
            PotentialSpec::Flat { .. } => true,
        };
        if !finite {
            return Err(Error::NonFinite {
                context: "PotentialSpec parameters",
            });
        }
        Ok(())
    }

    /// Maps physical position to the layer coordinate `ξ`.
    pub fn xi_of_x(&self, x: f64) -> f64 {
        match *self {
            PotentialSpec::LennardJones { eps, .. } => (x + eps) / eps,
            PotentialSpec::GaussianWell { eps, x0, .. } => (x - x0) / eps,
            PotentialSpec::SquareWell { eps, .. } | PotentialSpec::Flat { eps, .. } => x / eps,
        }
    }

    /// Inverse of [`Self::xi_of_x`].
    pub fn x_of_xi(&self, xi: f64) -> f64 {
        match *self {
            PotentialSpec::LennardJones { eps, .. } => eps * (xi - 1.0),
            PotentialSpec::GaussianWell { eps, x0, .. } => x0 + eps * xi,
            PotentialSpec::SquareWell { eps, .. } | PotentialSpec::Flat { eps, .. } => eps * xi,
        }
    }

    /// Physical position of the resolved model's wall (`ξ = ξ_floor`).
    pub fn wall_x(&self) -> f64 {
        self.x_of_xi(self.xi_floor())
    }

    /// Dimensionless profile `U(ξ)`.
    pub fn u(&self, xi: f64) -> f64 {
        match *self {
            PotentialSpec::LennardJones { phi, .. } => {
                let inv6 = xi.powi(-6);
                phi * (inv6 * inv6 - 2.0 * inv6)
            }
            PotentialSpec::GaussianWell { a1, b1, a2, b2, .. } => {
                a1 * (-b1 * xi * xi).exp() - a2 * (-b2 * xi * xi).exp()
            }
            PotentialSpec::SquareWell { phi, cutoff, .. } => {
                if (0.0..=cutoff + 1.0).contains(&xi) {
                    -phi
                } else {
                    0.0
                }
            }
            PotentialSpec::Flat { .. } => 0.0,
        }
    }

    /// Derivative `dU/dξ` (zero almost everywhere for the square well).
    pub fn u_prime(&self, xi: f64) -> f64 {
        match *self {
            PotentialSpec::LennardJones { phi, .. } => {
                let inv6 = xi.powi(-6);
                let inv7 = xi.powi(-7);
                phi * (-12.0 * inv6 * inv7 + 12.0 * inv7)
            }
            PotentialSpec::GaussianWell { a1, b1, a2, b2, .. } => {
                -2.0 * xi * (a1 * b1 * (-b1 * xi * xi).exp() - a2 * b2 * (-b2 * xi * xi).exp())
            }
            PotentialSpec::SquareWell { .. } | PotentialSpec::Flat { .. } => 0.0,
        }
    }
}

/// Evaluates the potential at the physical position `x`, in units of
/// `k_B T` (so the drift factor in the flux is `∂V/∂x` directly).
///
/// For the Lennard-Jones wall, positions at or below the hard core
/// (`ξ ≤ 0`) are rejected.
pub fn eval_potential(p: &PotentialSpec, x: f64) -> Result<f64> {
    p.validate()?;
    let xi = p.xi_of_x(x);
    if matches!(p, PotentialSpec::LennardJones { .. }) && xi <= 0.0 {
        return Err(Error::invalid(
            "x",
            x,
            "position at or below the Lennard-Jones hard core",
        ));
    }
    let v = p.u(xi);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite {
            context: "eval_potential",
        })
    }
}

/// Spatial derivative `∂V/∂x = U'(ξ)/ε` at physical position `x`.
pub fn eval_potential_gradient(p: &PotentialSpec, x: f64) -> Result<f64> {
    p.validate()?;
    let xi = p.xi_of_x(x);
    if matches!(p, PotentialSpec::LennardJones { .. }) && xi <= 0.0 {
        return Err(Error::invalid(
            "x",
            x,
            "position at or below the Lennard-Jones hard core",
        ));
    }
    let g = p.u_prime(xi) / p.eps();
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::NonFinite {
            context: "eval_potential_gradient",
        })
    }
}

/// Adsorption length `M = ε ∫_{ξ_floor}^{L+1} e^{−U(ξ)} dξ` by composite
/// trapezoid quadrature with `n_quad` panels.
///
/// The integrand is smooth and bounded for every profile (the Lennard-Jones
/// core underflows to zero, it does not overflow), so the quadrature
/// converges at second order; `n_quad = 2000` gives ~1e-9 relative accuracy
/// for the profiles shipped here.
#[allow(non_snake_case)]
pub fn compute_M(p: &PotentialSpec, n_quad: usize) -> Result<f64> {
    p.validate()?;
    if n_quad == 0 {
        return Err(Error::invalid("n_quad", 0.0, "need at least one panel"));
    }
    let integral = quad_trapezoid(
        |xi| (-p.u(xi)).exp(),
        p.xi_floor(),
        p.cutoff() + 1.0,
        n_quad,
    )?;
    Ok(p.eps() * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_potential_gives_the_layer_width_exactly() {
        let p = PotentialSpec::Flat { eps: 0.05, cutoff: 2.0 };
        let m = compute_M(&p, 1).unwrap();
        assert!((m - 0.05 * 3.0).abs() < 1e-15);
    }

    #[test]
    fn square_well_matches_its_closed_form() {
        for phi in [0.5, 1.0, 2.0] {
            let p = PotentialSpec::SquareWell { eps: 0.05, phi, cutoff: 2.0 };
            let m = compute_M(&p, 16).unwrap();
            let exact = 0.05 * 3.0 * phi.exp();
            assert!((m - exact).abs() < 1e-13 * exact, "phi={phi}: {m} vs {exact}");
        }
    }

    #[test]
    fn lennard_jones_at_zero_depth_reduces_to_the_flat_layer() {
        let p = PotentialSpec::LennardJones { eps: 0.05, phi: 0.0, cutoff: 2.0 };
        let m = compute_M(&p, 8).unwrap();
        assert!((m - 0.05 * (3.0 - LJ_XI_FLOOR)).abs() < 1e-15);
    }

    #[test]
    fn lennard_jones_m_agrees_with_a_richardson_extrapolated_reference() {
        let p = PotentialSpec::LennardJones { eps: 0.05, phi: 1.0, cutoff: 2.0 };
        let coarse = compute_M(&p, 4000).unwrap();
        let fine = compute_M(&p, 8000).unwrap();
        let reference = (4.0 * fine - coarse) / 3.0;
        let m = compute_M(&p, DEFAULT_M_PANELS).unwrap();
        assert!(
            ((m - reference) / reference).abs() < 1e-8,
            "M={m}, reference={reference}"
        );
    }

    #[test]
    fn deeper_wells_adsorb_more() {
        let m_of = |phi| {
            compute_M(
                &PotentialSpec::LennardJones { eps: 0.05, phi, cutoff: 2.0 },
                2000,
            )
            .unwrap()
        };
        let (m0, m1, m3) = (m_of(0.0), m_of(1.0), m_of(3.0));
        assert!(m0 < m1 && m1 < m3, "{m0} {m1} {m3}");
    }

    #[test]
    fn lennard_jones_well_minimum_sits_at_xi_one() {
        let p = PotentialSpec::LennardJones { eps: 0.1, phi: 2.5, cutoff: 2.0 };
        assert!((p.u(1.0) + 2.5).abs() < 1e-12);
        assert!(p.u_prime(1.0).abs() < 1e-10);
        assert!(p.u(0.9) > p.u(1.0) && p.u(1.2) > p.u(1.0));
    }

    #[test]
    fn gaussian_wall_height_is_the_amplitude_difference() {
        // Repulsive shoulder a1 − a2 right at the wall position.
        let p = PotentialSpec::GaussianWell {
            eps: 0.05,
            a1: 6.0,
            b1: 30.0,
            a2: 3.0,
            b2: 10.0,
            x0: 0.5,
            cutoff: 2.0,
        };
        assert!((eval_potential(&p, 0.5).unwrap() - 3.0).abs() < 1e-12);
        // Attractive well further out, then decay to zero.
        let well = eval_potential(&p, 0.5 + 0.05 * 0.6).unwrap();
        assert!(well < 0.0, "expected attraction, got {well}");
        assert!(eval_potential(&p, 1.0).unwrap().abs() < 1e-8);
    }

    #[test]
    fn potential_gradient_matches_finite_differences() {
        let specs = [
            PotentialSpec::LennardJones { eps: 0.05, phi: 1.5, cutoff: 2.0 },
            PotentialSpec::GaussianWell {
                eps: 0.05,
                a1: 6.0,
                b1: 30.0,
                a2: 3.0,
                b2: 10.0,
                x0: 0.5,
                cutoff: 2.0,
            },
        ];
        for p in specs {
            for frac in [0.3, 0.7, 1.3, 2.0] {
                let x = p.x_of_xi(p.xi_floor().max(0.2) + frac);
                let h = 1e-6;
                let fd = (eval_potential(&p, x + h).unwrap() - eval_potential(&p, x - h).unwrap())
                    / (2.0 * h);
                let an = eval_potential_gradient(&p, x).unwrap();
                assert!(
                    (fd - an).abs() < 1e-5 * (1.0 + an.abs()),
                    "{p:?} at x={x}: fd {fd} vs analytic {an}"
                );
            }
        }
    }

    #[test]
    fn wall_positions_follow_the_layer_mapping() {
        let lj = PotentialSpec::LennardJones { eps: 0.05, phi: 1.0, cutoff: 2.0 };
        assert!((lj.wall_x() - 0.05 * (LJ_XI_FLOOR - 1.0)).abs() < 1e-15);
        let gw = PotentialSpec::GaussianWell {
            eps: 0.05,
            a1: 6.0,
            b1: 30.0,
            a2: 3.0,
            b2: 10.0,
            x0: 0.5,
            cutoff: 2.0,
        };
        assert!((gw.wall_x() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hard_core_positions_are_rejected() {
        let p = PotentialSpec::LennardJones { eps: 0.05, phi: 1.0, cutoff: 2.0 };
        assert!(eval_potential(&p, -0.05).is_err());
        assert!(eval_potential(&p, -0.06).is_err());
        assert!(eval_potential(&p, -0.04).is_ok());
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(PotentialSpec::LennardJones { eps: 0.0, phi: 1.0, cutoff: 2.0 }
            .validate()
            .is_err());
        assert!(PotentialSpec::LennardJones { eps: 0.05, phi: -1.0, cutoff: 2.0 }
            .validate()
            .is_err());
        assert!(PotentialSpec::LennardJones { eps: 0.05, phi: 1.0, cutoff: 0.2 }
            .validate()
            .is_err());
    }
}
