//! Closed-form reference solution of the reduced sorption model for a
//! square-well wall layer.
//!
//! For the square well the adsorption length has the closed form
//! `M = ε (L + 1) e^φ` (constant integrand over the well). The reduced
//! problem on `[0, 1]`,
//!
//! ```text
//! ∂c/∂t = D ∂²c/∂x²,   M ∂c/∂t(0) = D ∂c/∂x(0),   ∂c/∂x(1) = 0,
//! ```
//!
//! separates: modes `X(x) = cos(μ (1 − x))` satisfy the right Neumann wall,
//! and the dynamic left condition `M (−D μ²) X(0) = D X'(0)` yields the
//! transcendental eigenrelation
//!
//! ```text
//! tan μ = −M μ        ⟺        g(μ) = sin μ + M μ cos μ = 0.
//! ```
//!
//! For `M > 0` the n-th root lies in `((n − ½)π, nπ)`; for `M = 0` it sits at
//! the Neumann value `nπ`. The eigenfunctions are orthogonal in the
//! sorption-weighted inner product
//!
//! ```text
//! ⟨u, v⟩ = ∫₀¹ u v dx + M u(0) v(0),
//! ```
//!
//! under which the series projection of the initial profile is
//! straightforward; the constant mode carries the equilibrium value
//! `c_∞ = (∫ c₀ + M c₀(0)) / (1 + M)`.

use crate::quadrature::quad_trapezoid;
use crate::{Error, Result};

/// Default quadrature resolution for the projection integrals.
pub const DEFAULT_PROJECTION_PANELS: usize = 4000;

/// First `n_modes` positive roots of `sin μ + M μ cos μ = 0`, bisected inside
/// the bracket `[(n − ½)π, nπ]`.
pub fn sink_eigenvalues(m: f64, n_modes: usize) -> Result<Vec<f64>> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::invalid("m", m, "adsorption length must be ≥ 0"));
    }
    if n_modes == 0 {
        return Err(Error::invalid("n_modes", 0.0, "need at least one mode"));
    }
    let g = |mu: f64| mu.sin() + m * mu * mu.cos();
    let mut roots = Vec::with_capacity(n_modes);
    for n in 1..=n_modes {
        let mut lo = (n as f64 - 0.5) * std::f64::consts::PI;
        let mut hi = n as f64 * std::f64::consts::PI;
        let (glo, ghi) = (g(lo), g(hi));
        // Roots can sit exactly on a bracket endpoint (M = 0 puts them at
        // nπ, where sin evaluates to ±1e-16 rather than zero).
        let tol = 1e-13 * (1.0 + m * hi);
        if glo.abs() <= tol {
            roots.push(lo);
            continue;
        }
        if ghi.abs() <= tol {
            roots.push(hi);
            continue;
        }
        if glo * ghi > 0.0 {
            return Err(Error::NoConvergence {
                context: "sink_eigenvalues bracket",
                iterations: n,
                residual: glo.min(ghi),
            });
        }
        // Bisection: ~52 halvings reach machine precision on these brackets.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if g(mid) * glo.signum() > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    Ok(roots)
}

/// One decaying mode of the series: amplitude, eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
struct SinkMode {
    mu: f64,
    amplitude: f64,
}

/// Separated-variables solution of the reduced sorption model.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareSinkSolution {
    /// Adsorption length at the `x = 0` wall.
    pub m: f64,
    pub diffusivity: f64,
    /// Equilibrium value the solution relaxes to.
    c_inf: f64,
    modes: Vec<SinkMode>,
}

impl SquareSinkSolution {
    /// Projects `c0` onto the first `n_modes` eigenfunctions using
    /// `n_quad`-panel trapezoid quadrature in the weighted inner product.
    pub fn project(
        m: f64,
        diffusivity: f64,
        n_modes: usize,
        n_quad: usize,
        c0: &dyn Fn(f64) -> f64,
    ) -> Result<Self> {
        if !(diffusivity.is_finite() && diffusivity > 0.0) {
            return Err(Error::invalid("diffusivity", diffusivity, "must be positive"));
        }
        let mus = sink_eigenvalues(m, n_modes)?;
        let integral_c0 = quad_trapezoid(c0, 0.0, 1.0, n_quad)?;
        let c_wall = c0(0.0);
        let c_inf = (integral_c0 + m * c_wall) / (1.0 + m);

        let mut modes = Vec::with_capacity(n_modes);
        for mu in mus {
            let psi = move |x: f64| (mu * (1.0 - x)).cos();
            let numer = quad_trapezoid(&|x| (c0(x) - c_inf) * psi(x), 0.0, 1.0, n_quad)?
                + m * (c_wall - c_inf) * psi(0.0);
            // ∫₀¹ cos²(μ(1−x)) dx = ½ + sin(2μ)/(4μ).
            let denom = 0.5 + (2.0 * mu).sin() / (4.0 * mu) + m * psi(0.0) * psi(0.0);
            modes.push(SinkMode {
                mu,
                amplitude: numer / denom,
            });
        }
        Ok(SquareSinkSolution {
            m,
            diffusivity,
            c_inf,
            modes,
        })
    }

    /// Series value at `(x, t)`.
    pub fn eval(&self, x: f64, t: f64) -> f64 {
        let mut c = self.c_inf;
        for mode in &self.modes {
            let decay = (-self.diffusivity * mode.mu * mode.mu * t).exp();
            c += mode.amplitude * decay * (mode.mu * (1.0 - x)).cos();
        }
        c
    }

    /// Bulk value at the sorbing wall, `c(0, t)`.
    pub fn surface_value(&self, t: f64) -> f64 {
        self.eval(0.0, t)
    }

    /// Long-time uniform value `(∫c₀ + M c₀(0)) / (1 + M)`.
    pub fn equilibrium(&self) -> f64 {
        self.c_inf
    }

    /// Eigenvalues retained in the truncation.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.mu).collect()
    }
}

/// Reference solution for a square-well layer of depth `φ` (in `k_B T`),
/// dimensionless width parameter `L` (well support `[0, L+1]` in layer
/// coordinates) and layer scale `ε`: builds `M = ε (L+1) e^φ` in closed form
/// and projects the initial profile `c0` onto `n_modes` decay modes.
pub fn analytic_square_sink_solution(
    depth: f64,
    width: f64,
    eps: f64,
    diffusivity: f64,
    n_modes: usize,
    c0: &dyn Fn(f64) -> f64,
) -> Result<SquareSinkSolution> {
    if !(depth.is_finite() && depth >= 0.0) {
        return Err(Error::invalid("depth", depth, "well depth must be ≥ 0"));
    }
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::invalid("width", width, "well width must be positive"));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::invalid("eps", eps, "layer scale must be positive"));
    }
    let m = eps * (width + 1.0) * depth.exp();
    SquareSinkSolution::project(m, diffusivity, n_modes, DEFAULT_PROJECTION_PANELS, c0)
}
