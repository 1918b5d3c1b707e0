//! Uniform grids and sampled scalar fields.
//!
//! Every PDE solver in the crate works on uniform tensor-product grids. A
//! [`Grid1D`] stores the interval, the cell count and a [`GridLayout`] flag
//! saying whether degrees of freedom sit at cell *edges* (finite-difference
//! style, `n + 1` nodes including both endpoints) or at cell *centers*
//! (finite-volume style, `n` nodes). [`Grid2D`] is the tensor product of two
//! such grids; 2D fields are stored row-major (`x` fastest).

use crate::{Error, Result};

/// Placement of the degrees of freedom of a [`Grid1D`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridLayout {
    /// `n_cells + 1` nodes at the cell edges, endpoints included.
    Edges,
    /// `n_cells` nodes at the cell midpoints.
    Centers,
}

/// Uniform one-dimensional grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
    layout: GridLayout,
}

impl Grid1D {
    /// Creates a uniform grid with `n_cells ≥ 1` cells on a non-degenerate
    /// interval.
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, layout: GridLayout) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::NonFinite {
                context: "Grid1D::new interval",
            });
        }
        if x_max <= x_min {
            return Err(Error::invalid(
                "x_max",
                x_max,
                "interval must satisfy x_max > x_min",
            ));
        }
        if n_cells == 0 {
            return Err(Error::invalid("n_cells", 0.0, "need at least one cell"));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            n_cells,
            layout,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn layout(&self) -> GridLayout {
        self.layout
    }

    /// Uniform spacing `h = (x_max − x_min) / n_cells`.
    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    /// Number of stored degrees of freedom.
    pub fn n_nodes(&self) -> usize {
        match self.layout {
            GridLayout::Edges => self.n_cells + 1,
            GridLayout::Centers => self.n_cells,
        }
    }

    /// Coordinate of node `i`; panics if `i` is out of range.
    pub fn node(&self, i: usize) -> f64 {
        assert!(i < self.n_nodes(), "node index {i} out of range");
        let h = self.spacing();
        match self.layout {
            // Evaluate from the nearest endpoint so that node n == x_max holds
            // exactly and interior nodes stay symmetric.
            GridLayout::Edges => {
                if i == self.n_cells {
                    self.x_max
                } else {
                    self.x_min + h * i as f64
                }
            }
            GridLayout::Centers => self.x_min + h * (i as f64 + 0.5),
        }
    }

    /// Iterator over all node coordinates.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes()).map(move |i| self.node(i))
    }
}

/// Uniform tensor-product grid; `x` and `y` may differ in extent and cell
/// count but the solvers in this crate additionally require equal spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    x: Grid1D,
    y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Result<Self> {
        if x.layout() != y.layout() {
            return Err(Error::Geometry {
                message: "Grid2D axes must share a layout".to_string(),
            });
        }
        Ok(Grid2D { x, y })
    }

    /// Square grid on `[min, max]²` with `n_cells` cells per axis.
    pub fn square(min: f64, max: f64, n_cells: usize, layout: GridLayout) -> Result<Self> {
        let axis = Grid1D::new(min, max, n_cells, layout)?;
        Grid2D::new(axis, axis)
    }

    pub fn x(&self) -> &Grid1D {
        &self.x
    }

    pub fn y(&self) -> &Grid1D {
        &self.y
    }

    /// Number of nodes in x (fastest-running index).
    pub fn nx(&self) -> usize {
        self.x.n_nodes()
    }

    pub fn ny(&self) -> usize {
        self.y.n_nodes()
    }

    pub fn n_nodes(&self) -> usize {
        self.nx() * self.ny()
    }

    /// Flat row-major index of node `(i, j)`.
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx() && j < self.ny());
        j * self.nx() + i
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x.node(i), self.y.node(j))
    }
}

/// Scalar samples attached to the nodes of a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField1D {
    grid: Grid1D,
    values: Vec<f64>,
}

impl ScalarField1D {
    /// Wraps existing values; the length must match the grid.
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::DimensionMismatch {
                context: "ScalarField1D::new",
                expected: grid.n_nodes(),
                got: values.len(),
            });
        }
        Ok(ScalarField1D { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        ScalarField1D { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Largest absolute nodal value.
    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Piecewise-linear interpolation at `x` (clamped to the grid range).
    pub fn interp_linear(&self, x: f64) -> f64 {
        let n = self.values.len();
        let x0 = self.grid.node(0);
        let h = self.grid.spacing();
        let s = ((x - x0) / h).clamp(0.0, (n - 1) as f64);
        let i = (s.floor() as usize).min(n - 2);
        let w = s - i as f64;
        self.values[i] * (1.0 - w) + self.values[i + 1] * w
    }
}

/// Scalar samples attached to the nodes of a [`Grid2D`], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField2D {
    grid: Grid2D,
    values: Vec<f64>,
}

impl ScalarField2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_nodes() {
            return Err(Error::DimensionMismatch {
                context: "ScalarField2D::new",
                expected: grid.n_nodes(),
                got: values.len(),
            });
        }
        Ok(ScalarField2D { grid, values })
    }

    pub fn from_fn(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.n_nodes());
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let (x, y) = grid.node(i, j);
                values.push(f(x, y));
            }
        }
        ScalarField2D { grid, values }
    }

    pub fn constant(grid: Grid2D, value: f64) -> Self {
        ScalarField2D {
            values: vec![value; grid.n_nodes()],
            grid,
        }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.grid.idx(i, j);
        self.values[k] = v;
    }
}
