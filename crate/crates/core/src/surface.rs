//! Concentration traces on embedded boundaries and their surface Laplacian.
//!
//! The 2D sorption model carries a concentration trace on the bubble
//! boundary `Σ` which evolves by `M ∂c/∂t = M D Δ⊥ c + D ∂c/∂ν`. On a
//! circle of radius `R` the surface Laplacian reduces to
//! `Δ⊥ = (1/R²) ∂²/∂θ²`; with a uniform angular sampling the periodic
//! three-point second difference is second-order accurate and diagonalizes
//! on the Fourier modes `cos(kθ)` with discrete symbol
//! `−(2 − 2 cos kΔθ)/(RΔθ)² → −k²/R²`.
//!
//! Open traces (the edges of a polygonal hole) use the same interior stencil
//! with one-sided evaluation at the ends.

use crate::{Error, Result};

/// Minimum number of samples for which the periodic stencil makes sense.
pub const MIN_SURFACE_SAMPLES: usize = 8;

/// A sampled concentration trace along a boundary curve, with uniform
/// arclength spacing `ds`; `closed` distinguishes a full loop (periodic
/// stencils) from a single edge of a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceField {
    values: Vec<f64>,
    ds: f64,
    closed: bool,
}

impl SurfaceField {
    pub fn closed(values: Vec<f64>, ds: f64) -> Result<Self> {
        Self::build(values, ds, true, MIN_SURFACE_SAMPLES)
    }

    pub fn open(values: Vec<f64>, ds: f64) -> Result<Self> {
        Self::build(values, ds, false, 3)
    }

    fn build(values: Vec<f64>, ds: f64, closed: bool, min: usize) -> Result<Self> {
        if values.len() < min {
            return Err(Error::DimensionMismatch {
                context: "SurfaceField samples",
                expected: min,
                got: values.len(),
            });
        }
        if !(ds.is_finite() && ds > 0.0) {
            return Err(Error::invalid("ds", ds, "sample spacing must be positive"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "SurfaceField values",
            });
        }
        Ok(SurfaceField { values, ds, closed })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn ds(&self) -> f64 {
        self.ds
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Arclength second derivative `∂²/∂s²` of the trace.
    pub fn second_derivative(&self) -> Vec<f64> {
        second_difference(&self.values, self.ds, self.closed)
    }

    /// Trace integral by the rectangle rule (exact for the periodic case) or
    /// the trapezoid rule on an open edge.
    pub fn integral(&self) -> f64 {
        if self.closed {
            self.values.iter().sum::<f64>() * self.ds
        } else {
            let inner: f64 = self.values[1..self.values.len() - 1].iter().sum();
            self.ds * (0.5 * (self.values[0] + self.values[self.values.len() - 1]) + inner)
        }
    }
}

fn second_difference(values: &[f64], ds: f64, closed: bool) -> Vec<f64> {
    let n = values.len();
    let inv_ds2 = 1.0 / (ds * ds);
    let mut out = vec![0.0; n];
    for i in 0..n {
        let (prev, next) = if closed {
            (values[(i + n - 1) % n], values[(i + 1) % n])
        } else if i == 0 {
            // One-sided: reuse the first interior stencil.
            out[i] = (values[0] - 2.0 * values[1] + values[2]) * inv_ds2;
            continue;
        } else if i == n - 1 {
            out[i] = (values[n - 3] - 2.0 * values[n - 2] + values[n - 1]) * inv_ds2;
            continue;
        } else {
            (values[i - 1], values[i + 1])
        };
        out[i] = (prev - 2.0 * values[i] + next) * inv_ds2;
    }
    out
}

/// Laplace–Beltrami operator on a circle of radius `radius`: the periodic
/// second difference of uniformly spaced angular samples divided by `R²Δθ²`.
///
/// Requires at least [`MIN_SURFACE_SAMPLES`] samples.
pub fn laplace_beltrami_circle(values: &[f64], radius: f64) -> Result<Vec<f64>> {
    if values.len() < MIN_SURFACE_SAMPLES {
        return Err(Error::DimensionMismatch {
            context: "laplace_beltrami_circle samples",
            expected: MIN_SURFACE_SAMPLES,
            got: values.len(),
        });
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::invalid("radius", radius, "radius must be positive"));
    }
    let dtheta = 2.0 * std::f64::consts::PI / values.len() as f64;
    Ok(second_difference(values, radius * dtheta, true))
}

/// Periodic cubic (4-point Lagrange) interpolation of uniformly spaced
/// samples around a closed curve; `frac` is the position in curve fractions,
/// any real value (wrapped into `[0, 1)`).
pub fn interp_periodic_cubic(values: &[f64], frac: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 4);
    let s = (frac.rem_euclid(1.0)) * n as f64;
    let i1 = s.floor() as usize % n;
    let u = s - s.floor();
    let v = |k: isize| values[((i1 as isize + k).rem_euclid(n as isize)) as usize];
    // Lagrange basis on nodes −1, 0, 1, 2 evaluated at u ∈ [0, 1).
    let (a, b, c, d) = (v(-1), v(0), v(1), v(2));
    let w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    let w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    let w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    let w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    a * w0 + b * w1 + c * w2 + d * w3
}

/// Cubic interpolation on an open uniformly spaced trace; `s` in units of the
/// spacing (node `i` sits at `s = i`), clamped stencils at the ends.
pub fn interp_open_cubic(values: &[f64], s: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 4);
    let s = s.clamp(0.0, (n - 1) as f64);
    // Choose the 4-node stencil with the evaluation point in its middle cell
    // where possible.
    let base = ((s.floor() as isize) - 1).clamp(0, n as isize - 4) as usize;
    let u = s - base as f64; // u ∈ [0, 3]
    let mut out = 0.0;
    for (k, &vk) in values[base..base + 4].iter().enumerate() {
        let mut w = 1.0;
        for j in 0..4 {
            if j != k {
                w *= (u - j as f64) / (k as f64 - j as f64);
            }
        }
        out += vk * w;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cos_mode(k: usize, n: usize) -> Vec<f64> {
        (0..n)
            .map(|j| (k as f64 * 2.0 * PI * j as f64 / n as f64).cos())
            .collect()
    }

    #[test]
    fn constants_are_annihilated_exactly() {
        let lb = laplace_beltrami_circle(&vec![3.7; 64], 0.5).unwrap();
        assert!(lb.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn cosine_modes_are_eigenfunctions_with_symbol_near_minus_k_squared() {
        let radius = 0.4;
        for k in 1..=3usize {
            let n = 128;
            let f = cos_mode(k, n);
            let lb = laplace_beltrami_circle(&f, radius).unwrap();
            let exact = -(k as f64 * k as f64) / (radius * radius);
            for (j, (&lbj, &fj)) in lb.iter().zip(&f).enumerate() {
                assert!(
                    (lbj - exact * fj).abs() < 2e-3 * exact.abs(),
                    "k={k} j={j}: {lbj} vs {}",
                    exact * fj
                );
            }
        }
    }

    #[test]
    fn angular_stencil_converges_at_second_order() {
        let radius = 1.0;
        for k in 1..=3usize {
            let err = |n: usize| -> f64 {
                let f = cos_mode(k, n);
                let lb = laplace_beltrami_circle(&f, radius).unwrap();
                let exact = -(k as f64 * k as f64);
                lb.iter()
                    .zip(&f)
                    .map(|(l, v)| (l - exact * v).abs())
                    .fold(0.0, f64::max)
            };
            let (e1, e2) = (err(64), err(128));
            let order = (e1 / e2).log2();
            assert!(order > 1.9, "k={k}: measured order {order}");
        }
    }

    #[test]
    fn too_few_samples_are_rejected() {
        assert!(laplace_beltrami_circle(&[1.0; 4], 1.0).is_err());
        assert!(SurfaceField::closed(vec![0.0; 5], 0.1).is_err());
    }

    #[test]
    fn closed_integral_matches_the_circumference_weighting() {
        let n = 256;
        let radius = 0.3;
        let ds = 2.0 * PI * radius / n as f64;
        // ∮ (2 + cos θ) ds = 2 · 2πR.
        let values: Vec<f64> = (0..n).map(|j| 2.0 + (2.0 * PI * j as f64 / n as f64).cos()).collect();
        let f = SurfaceField::closed(values, ds).unwrap();
        assert!((f.integral() - 2.0 * 2.0 * PI * radius).abs() < 1e-12);
    }

    #[test]
    fn periodic_cubic_interpolation_reproduces_smooth_modes() {
        let n = 64;
        let f = cos_mode(2, n);
        for &frac in &[0.0, 0.1234, 0.499, 0.75, 0.999] {
            let exact = (2.0 * 2.0 * PI * frac).cos();
            let got = interp_periodic_cubic(&f, frac);
            assert!((got - exact).abs() < 5e-5, "frac={frac}: {got} vs {exact}");
        }
        // Node values are reproduced exactly (Lagrange property).
        let got = interp_periodic_cubic(&f, 5.0 / n as f64);
        assert!((got - f[5]).abs() < 1e-14);
    }

    #[test]
    fn open_cubic_interpolation_is_exact_on_cubics() {
        let values: Vec<f64> = (0..10).map(|i| {
            let x = i as f64;
            0.5 * x * x * x - x * x + 2.0
        }).collect();
        for &s in &[0.0, 0.5, 2.7, 8.9, 9.0] {
            let exact = 0.5 * s * s * s - s * s + 2.0;
            assert!((interp_open_cubic(&values, s) - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn open_second_difference_matches_interior_stencil() {
        let values: Vec<f64> = (0..12).map(|i| (i as f64 * 0.3).sin()).collect();
        let f = SurfaceField::open(values.clone(), 0.3).unwrap();
        let d2 = f.second_derivative();
        for i in 1..11 {
            let expect = (values[i - 1] - 2.0 * values[i] + values[i + 1]) / 0.09;
            assert!((d2[i] - expect).abs() < 1e-12);
        }
        // End values fall back to the adjacent interior stencil.
        let expect0 = (values[0] - 2.0 * values[1] + values[2]) / 0.09;
        assert!((d2[0] - expect0).abs() < 1e-12);
    }
}
