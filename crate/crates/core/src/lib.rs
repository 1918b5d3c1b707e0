//! Numerical laboratory for multiscale ordinary and partial differential
//! equations.
//!
//! The crate collects three model families that share one theme: a small
//! parameter separates fast and slow scales, and a reduced model obtained in
//! the singular limit can be validated against the resolved one.
//!
//! * [`oscillator`] / [`pendulum`] — damped oscillators across all damping
//!   regimes, the overdamped limit as a differential-algebraic constraint, and
//!   a stiff-spring pendulum converging to the rigid pendulum as the spring
//!   stiffness grows.
//! * [`potential`] / [`sorption1d`] / [`sorption2d`] — drift-diffusion of a
//!   solute near an attracting wall, reduced to pure diffusion with a dynamic
//!   sorption boundary condition `M ∂c/∂t = D ∂c/∂n` carrying an adsorption
//!   length `M`; in two dimensions the wall is an embedded bubble boundary
//!   handled with level sets and ghost points.
//! * [`swe`] — shallow-water channel networks where one-dimensional channels
//!   couple through genuinely two-dimensional junction elements via rotated
//!   Riemann problems; [`euler`] provides the hyperbolicity diagnostics used
//!   to motivate the characteristic analysis.
//!
//! Shared numerical kernels (grids, quadrature, tridiagonal solves, time
//! steppers) live in [`grid`], [`quadrature`], [`tridiagonal`] and
//! [`stepper`].

pub mod error;
pub mod euler;
pub mod grid;
pub mod oscillator;
pub mod pendulum;
pub mod potential;
pub mod quadrature;
pub mod sorption1d;
pub mod sorption2d;
pub mod square_sink;
pub mod stepper;
pub mod surface;
pub mod swe;
pub mod tridiagonal;

pub mod level_set {
    //! Re-exports of the level-set machinery used by [`crate::sorption2d`].
    pub use crate::sorption2d::level_set::*;
}

pub use error::{Error, Result};
pub use grid::{Grid1D, Grid2D, GridLayout, ScalarField1D, ScalarField2D};
pub use oscillator::{OscillatorParams, OscillatorRegime};
pub use pendulum::PendulumParams;
pub use potential::PotentialSpec;
pub use sorption1d::{FullModelConfig, MultiscaleModelConfig, SorptionDiagnostics};
pub use sorption2d::level_set::{GhostClassification, LevelSetField, ShapeDescriptor};
pub use sorption2d::SurfaceField;
pub use stepper::{Scheme, TimeStepper};
pub use swe::{ChannelNetwork, JunctionElement, RotationAngle, SwState1d, SwState2d};
