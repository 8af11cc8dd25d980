//! Uniform grids, scalar fields with ghost padding, and boundary rules.
//!
//! Periodic domains are node-identified: a grid with `n` nodes on `[a, b)`
//! stores nodes `a + i*dx` for `i in 0..n` and treats node `n` as node `0`.
//! Every field carries [`GHOST_WIDTH`] ghost nodes per side so that the
//! 7-point reconstruction window fits at every interior node.

use std::sync::Arc;

use crate::{HjError, Result};

/// Ghost nodes per side; the reconstruction window {i-3, ..., i+3} needs 3.
pub const GHOST_WIDTH: usize = 3;

/// Boundary-value callable `(x, y, t) -> phi`; `y` is ignored in 1D.
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Uniform 1D grid on `[a, b)` with `n` nodes and spacing `dx = (b - a)/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1d {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub dx: f64,
}

impl Grid1d {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        // partial_cmp keeps NaN bounds out as well
        if a.partial_cmp(&b) != Some(std::cmp::Ordering::Less) {
            return Err(HjError::InvalidGrid(format!(
                "right end {b} must exceed left end {a}"
            )));
        }
        if n < 8 {
            return Err(HjError::InvalidGrid(format!(
                "need at least 8 nodes for the 7-point stencil, got {n}"
            )));
        }
        Ok(Self {
            a,
            b,
            n,
            dx: (b - a) / n as f64,
        })
    }

    /// Coordinate of node `i`; ghost indices (negative or >= n) are valid.
    pub fn node(&self, i: isize) -> f64 {
        self.a + i as f64 * self.dx
    }
}

/// Tensor-product 2D grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2d {
    pub x: Grid1d,
    pub y: Grid1d,
}

impl Grid2d {
    pub fn new(x: Grid1d, y: Grid1d) -> Self {
        Self { x, y }
    }

    pub fn square(a: f64, b: f64, n: usize) -> Result<Self> {
        let axis = Grid1d::new(a, b, n)?;
        Ok(Self { x: axis, y: axis })
    }
}

/// Ghost-filling rule for one axis.
#[derive(Clone)]
pub enum BoundaryRule {
    /// Wrap-around; node `n` identified with node `0`.
    Periodic,
    /// Continue the slope of the outermost interior cell.
    LinearExtrapolation,
    /// Sample a known solution at ghost coordinates and time `t`.
    DirichletExact(SpaceTimeFn),
}

impl std::fmt::Debug for BoundaryRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Periodic => write!(f, "Periodic"),
            Self::LinearExtrapolation => write!(f, "LinearExtrapolation"),
            Self::DirichletExact(_) => write!(f, "DirichletExact(..)"),
        }
    }
}

/// Grid-sampled phi values with ghost padding on both sides.
#[derive(Debug, Clone)]
pub struct ScalarField1d {
    pub grid: Grid1d,
    data: Vec<f64>,
}

impl ScalarField1d {
    pub fn zeros(grid: Grid1d) -> Self {
        Self {
            grid,
            data: vec![0.0; grid.n + 2 * GHOST_WIDTH],
        }
    }

    pub fn from_fn(grid: Grid1d, f: impl Fn(f64) -> f64) -> Self {
        let mut field = Self::zeros(grid);
        for i in 0..grid.n {
            field.data[GHOST_WIDTH + i] = f(grid.node(i as isize));
        }
        field
    }

    pub fn from_interior(grid: Grid1d, values: &[f64]) -> Self {
        assert_eq!(values.len(), grid.n, "interior length must match grid");
        let mut field = Self::zeros(grid);
        field.data[GHOST_WIDTH..GHOST_WIDTH + grid.n].copy_from_slice(values);
        field
    }

    pub fn interior(&self) -> &[f64] {
        &self.data[GHOST_WIDTH..GHOST_WIDTH + self.grid.n]
    }

    pub fn interior_mut(&mut self) -> &mut [f64] {
        let n = self.grid.n;
        &mut self.data[GHOST_WIDTH..GHOST_WIDTH + n]
    }

    /// Full padded line, ghosts included.
    pub fn padded(&self) -> &[f64] {
        &self.data
    }

    /// The 7-point window {i-3, ..., i+3} around interior node `i`.
    pub fn window(&self, i: usize) -> &[f64] {
        &self.data[i..i + 2 * GHOST_WIDTH + 1]
    }

    pub fn fill_ghosts(&mut self, rule: &BoundaryRule, t: f64) {
        let n = self.grid.n;
        let g = GHOST_WIDTH;
        match rule {
            BoundaryRule::Periodic => {
                for k in 1..=g {
                    self.data[g - k] = self.data[g + n - k];
                    self.data[g + n - 1 + k] = self.data[g + k - 1];
                }
            }
            BoundaryRule::LinearExtrapolation => {
                let left = self.data[g];
                let left_slope = self.data[g + 1] - self.data[g];
                let right = self.data[g + n - 1];
                let right_slope = self.data[g + n - 1] - self.data[g + n - 2];
                for k in 1..=g {
                    self.data[g - k] = left - k as f64 * left_slope;
                    self.data[g + n - 1 + k] = right + k as f64 * right_slope;
                }
            }
            BoundaryRule::DirichletExact(oracle) => {
                for k in 1..=g {
                    self.data[g - k] = oracle(self.grid.node(-(k as isize)), 0.0, t);
                    self.data[g + n - 1 + k] = oracle(self.grid.node((n - 1 + k) as isize), 0.0, t);
                }
            }
        }
    }

    pub fn all_finite(&self) -> bool {
        self.interior().iter().all(|v| v.is_finite())
    }
}

/// 2D scalar field stored row-major (x contiguous) with a ghost ring.
#[derive(Debug, Clone)]
pub struct ScalarField2d {
    pub grid: Grid2d,
    stride: usize,
    data: Vec<f64>,
}

impl ScalarField2d {
    pub fn zeros(grid: Grid2d) -> Self {
        let stride = grid.x.n + 2 * GHOST_WIDTH;
        let rows = grid.y.n + 2 * GHOST_WIDTH;
        Self {
            grid,
            stride,
            data: vec![0.0; stride * rows],
        }
    }

    pub fn from_fn(grid: Grid2d, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut field = Self::zeros(grid);
        for j in 0..grid.y.n {
            let y = grid.y.node(j as isize);
            for i in 0..grid.x.n {
                let idx = field.index(i, j);
                field.data[idx] = f(grid.x.node(i as isize), y);
            }
        }
        field
    }

    /// Flat index of interior node `(i, j)`.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        (j + GHOST_WIDTH) * self.stride + i + GHOST_WIDTH
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = self.index(i, j);
        self.data[idx] = v;
    }

    /// Value at `(i, j)` where indices may step into the ghost ring.
    #[inline]
    pub fn get_signed(&self, i: isize, j: isize) -> f64 {
        let gi = (i + GHOST_WIDTH as isize) as usize;
        let gj = (j + GHOST_WIDTH as isize) as usize;
        self.data[gj * self.stride + gi]
    }

    /// Padded row `j` (interior row index), x ghosts included.
    pub fn row_padded(&self, j: usize) -> &[f64] {
        let start = (j + GHOST_WIDTH) * self.stride;
        &self.data[start..start + self.stride]
    }

    /// Copy padded column `i` (interior column index) into `buf`.
    pub fn col_padded(&self, i: usize, buf: &mut Vec<f64>) {
        buf.clear();
        let rows = self.grid.y.n + 2 * GHOST_WIDTH;
        for r in 0..rows {
            buf.push(self.data[r * self.stride + i + GHOST_WIDTH]);
        }
    }

    /// Interior values flattened row-major, ghosts excluded.
    pub fn interior_to_vec(&self) -> Vec<f64> {
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn set_interior_from(&mut self, values: &[f64]) {
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        assert_eq!(values.len(), nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                self.set(i, j, values[j * nx + i]);
            }
        }
    }

    /// Fill x ghosts row by row, then y ghosts over the full padded width,
    /// so the corner ghosts end up consistent with both rules.
    pub fn fill_ghosts(&mut self, rule_x: &BoundaryRule, rule_y: &BoundaryRule, t: f64) {
        let g = GHOST_WIDTH;
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        for j in 0..ny {
            let base = (j + g) * self.stride;
            let y = self.grid.y.node(j as isize);
            match rule_x {
                BoundaryRule::Periodic => {
                    for k in 1..=g {
                        self.data[base + g - k] = self.data[base + g + nx - k];
                        self.data[base + g + nx - 1 + k] = self.data[base + g + k - 1];
                    }
                }
                BoundaryRule::LinearExtrapolation => {
                    let left = self.data[base + g];
                    let left_slope = self.data[base + g + 1] - self.data[base + g];
                    let right = self.data[base + g + nx - 1];
                    let right_slope = self.data[base + g + nx - 1] - self.data[base + g + nx - 2];
                    for k in 1..=g {
                        self.data[base + g - k] = left - k as f64 * left_slope;
                        self.data[base + g + nx - 1 + k] = right + k as f64 * right_slope;
                    }
                }
                BoundaryRule::DirichletExact(oracle) => {
                    for k in 1..=g {
                        self.data[base + g - k] = oracle(self.grid.x.node(-(k as isize)), y, t);
                        self.data[base + g + nx - 1 + k] =
                            oracle(self.grid.x.node((nx - 1 + k) as isize), y, t);
                    }
                }
            }
        }
        let full_width = self.stride;
        for col in 0..full_width {
            match rule_y {
                BoundaryRule::Periodic => {
                    for k in 1..=g {
                        self.data[(g - k) * self.stride + col] =
                            self.data[(g + ny - k) * self.stride + col];
                        self.data[(g + ny - 1 + k) * self.stride + col] =
                            self.data[(g + k - 1) * self.stride + col];
                    }
                }
                BoundaryRule::LinearExtrapolation => {
                    let bottom = self.data[g * self.stride + col];
                    let bottom_slope =
                        self.data[(g + 1) * self.stride + col] - self.data[g * self.stride + col];
                    let top = self.data[(g + ny - 1) * self.stride + col];
                    let top_slope = self.data[(g + ny - 1) * self.stride + col]
                        - self.data[(g + ny - 2) * self.stride + col];
                    for k in 1..=g {
                        self.data[(g - k) * self.stride + col] = bottom - k as f64 * bottom_slope;
                        self.data[(g + ny - 1 + k) * self.stride + col] =
                            top + k as f64 * top_slope;
                    }
                }
                BoundaryRule::DirichletExact(oracle) => {
                    let x = self.grid.x.node(col as isize - g as isize);
                    for k in 1..=g {
                        self.data[(g - k) * self.stride + col] =
                            oracle(x, self.grid.y.node(-(k as isize)), t);
                        self.data[(g + ny - 1 + k) * self.stride + col] =
                            oracle(x, self.grid.y.node((ny - 1 + k) as isize), t);
                    }
                }
            }
        }
    }

    pub fn all_finite(&self) -> bool {
        let (nx, ny) = (self.grid.x.n, self.grid.y.n);
        (0..ny).all(|j| (0..nx).all(|i| self.get(i, j).is_finite()))
    }
}
