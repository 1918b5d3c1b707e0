//! Composite trapezoid quadrature.
//!
//! The trapezoid rule is second-order accurate on smooth integrands and is
//! exact for linear ones; it is all the quadrature this crate needs (adsorption
//! lengths, elliptic-integral periods, eigenfunction projections). Richardson
//! extrapolation over the panel count is used in tests to manufacture
//! reference values of higher accuracy.

use crate::{Error, Result};

/// Composite trapezoid rule for `∫_a^b f dx` with `n ≥ 1` uniform panels.
///
/// `a > b` is allowed and flips the sign. Errors if any sample is non-finite,
/// naming the quadrature so the caller can trace which integral blew up.
pub fn quad_trapezoid(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", 0.0, "need at least one panel"));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite {
            context: "quad_trapezoid bounds",
        });
    }
    let h = (b - a) / n as f64;
    let mut sum = 0.5 * (f(a) + f(b));
    for i in 1..n {
        sum += f(a + h * i as f64);
    }
    let value = sum * h;
    if !value.is_finite() {
        return Err(Error::NonFinite {
            context: "quad_trapezoid",
        });
    }
    Ok(value)
}

/// Trapezoid rule over already-sampled values with uniform spacing `h`.
pub fn trapezoid_samples(values: &[f64], h: f64) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::DimensionMismatch {
            context: "trapezoid_samples",
            expected: 2,
            got: values.len(),
        });
    }
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    Ok(h * (0.5 * (values[0] + values[values.len() - 1]) + inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Richardson extrapolation of the trapezoid rule (one step of the
    /// Romberg tableau): `(4 T(2n) − T(n)) / 3` cancels the `O(h²)` term.
    fn richardson(f: impl Fn(f64) -> f64 + Copy, a: f64, b: f64, n: usize) -> f64 {
        let t1 = quad_trapezoid(f, a, b, n).unwrap();
        let t2 = quad_trapezoid(f, a, b, 2 * n).unwrap();
        (4.0 * t2 - t1) / 3.0
    }

    #[test]
    fn exact_on_linear_integrands() {
        let v = quad_trapezoid(|x| 2.0 * x + 1.0, 0.0, 3.0, 7).unwrap();
        assert!((v - 12.0).abs() < 1e-13, "got {v}");
    }

    #[test]
    fn polynomial_with_known_antiderivative() {
        // ∫_0^1 x³ dx = 1/4; trapezoid error for f=x³ on n panels is
        // exactly h²/4 · (b−a) · f''-average → 1/(4n²) · 3/2 · ... measured
        // against the exact value instead of a hand-computed constant.
        let exact = 0.25;
        let v = quad_trapezoid(|x| x * x * x, 0.0, 1.0, 1000).unwrap();
        assert!((v - exact).abs() < 1e-6);
        let r = richardson(|x| x * x * x, 0.0, 1.0, 1000);
        assert!((r - exact).abs() < 1e-12);
    }

    #[test]
    fn second_order_convergence_on_smooth_integrand() {
        let exact = 1.0 - (-1.0f64).exp(); // ∫_0^1 e^{−x} dx
        let e1 = (quad_trapezoid(|x| (-x).exp(), 0.0, 1.0, 100).unwrap() - exact).abs();
        let e2 = (quad_trapezoid(|x| (-x).exp(), 0.0, 1.0, 200).unwrap() - exact).abs();
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.05, "measured order {order}");
    }

    #[test]
    fn reversed_bounds_flip_the_sign() {
        let fwd = quad_trapezoid(|x| x.sin(), 0.0, 2.0, 64).unwrap();
        let bwd = quad_trapezoid(|x| x.sin(), 2.0, 0.0, 64).unwrap();
        assert!((fwd + bwd).abs() < 1e-14);
    }

    #[test]
    fn non_finite_samples_are_reported() {
        let r = quad_trapezoid(|x| 1.0 / x, 0.0, 1.0, 10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn sampled_variant_matches_closure_variant() {
        let g = crate::Grid1D::new(0.0, 1.0, 64, crate::GridLayout::Edges).unwrap();
        let values: Vec<f64> = g.nodes().map(|x| x.cos()).collect();
        let a = trapezoid_samples(&values, g.spacing()).unwrap();
        let b = quad_trapezoid(|x| x.cos(), 0.0, 1.0, 64).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}
