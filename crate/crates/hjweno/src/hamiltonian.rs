//! Hamiltonian abstraction, Lax-Friedrichs numerical Hamiltonian, and
//! semi-discrete right-hand-side assembly in 1D and 2D.
//!
//! The semi-discrete form is d phi_i / dt = L(phi)_i = -Hhat(x_i, t, u+, u-)
//! with the monotone Lax-Friedrichs flux
//! Hhat = H((u+ + u-)/2) - alpha (u+ - u-)/2, alpha >= max |dH/du|.
//! 2D is handled dimension by dimension: row sweeps produce (u-, u+), column
//! sweeps produce (v-, v+), and the flux subtracts one dissipation term per
//! direction.

use std::sync::Arc;

use crate::mesh::{BoundaryRule, Grid1d, Grid2d, ScalarField1d, ScalarField2d, SpaceTimeFn};
use crate::reconstruction::{weno_derivative_pair, WeightParams, WINDOW};
use crate::{HjError, Result};

/// Safety factor applied to the wave-speed bound from the gradient box.
pub const ALPHA_INFLATION: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    One,
    Two,
}

/// Hamiltonian callable `(x, y, t, u, v) -> H`; `y`, `v` are 0 in 1D.
pub type HamiltonianFn = Arc<dyn Fn(f64, f64, f64, f64, f64) -> f64 + Send + Sync>;
/// Wave-speed bound `(box of one-sided derivative values) -> (alpha_x, alpha_y)`.
pub type AlphaBoundFn = Arc<dyn Fn(&GradientBox) -> (f64, f64) + Send + Sync>;
/// Initial-condition callable `(x, y) -> phi0`; `y` is 0 in 1D.
pub type SpaceFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Bounding box of the one-sided derivative values of the current solution.
#[derive(Debug, Clone, Copy)]
pub struct GradientBox {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl GradientBox {
    pub fn from_u(u_min: f64, u_max: f64) -> Self {
        Self {
            u_min,
            u_max,
            v_min: 0.0,
            v_max: 0.0,
        }
    }
}

/// Curvature formula variant: `Printed` uses (1 + phi_y)^2 factors in the
/// numerator, `Canonical` the mean-curvature form (1 + phi_y^2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureForm {
    Printed,
    Canonical,
}

/// A Hamilton-Jacobi problem: Hamiltonian, wave-speed bound, domain, initial
/// state, boundary rules, and an optional exact-solution oracle.
#[derive(Clone)]
pub struct HjProblem {
    pub dimension: Dimension,
    pub hamiltonian: HamiltonianFn,
    pub alpha_bound: AlphaBoundFn,
    pub x_range: (f64, f64),
    pub y_range: Option<(f64, f64)>,
    pub initial: SpaceFn,
    pub boundary_x: BoundaryRule,
    pub boundary_y: Option<BoundaryRule>,
    /// `(x, y, t) -> phi`, valid on the problem's stated time range.
    pub exact: Option<SpaceTimeFn>,
    /// Curvature coefficient for mean-curvature-regularized fronts.
    pub curvature_eps: Option<f64>,
    pub curvature_form: CurvatureForm,
}

impl HjProblem {
    pub fn grid_1d(&self, n: usize) -> Result<Grid1d> {
        Grid1d::new(self.x_range.0, self.x_range.1, n)
    }

    pub fn grid_2d(&self, nx: usize, ny: usize) -> Result<Grid2d> {
        let y_range = self
            .y_range
            .ok_or_else(|| HjError::Config("2D grid requested for a 1D problem".into()))?;
        Ok(Grid2d::new(
            Grid1d::new(self.x_range.0, self.x_range.1, nx)?,
            Grid1d::new(y_range.0, y_range.1, ny)?,
        ))
    }
}

/// Lax-Friedrichs flux in 1D. `h_at_node` is the Hamiltonian with the node's
/// position and time already bound.
pub fn lax_friedrichs_1d(h_at_node: impl Fn(f64) -> f64, u_plus: f64, u_minus: f64, alpha: f64) -> f64 {
    h_at_node(0.5 * (u_plus + u_minus)) - 0.5 * alpha * (u_plus - u_minus)
}

/// Lax-Friedrichs flux in 2D with one dissipation term per direction.
pub fn lax_friedrichs_2d(
    h_at_node: impl Fn(f64, f64) -> f64,
    u_plus: f64,
    u_minus: f64,
    v_plus: f64,
    v_minus: f64,
    alpha_x: f64,
    alpha_y: f64,
) -> f64 {
    h_at_node(0.5 * (u_plus + u_minus), 0.5 * (v_plus + v_minus))
        - 0.5 * alpha_x * (u_plus - u_minus)
        - 0.5 * alpha_y * (v_plus - v_minus)
}

// (phi_x^-, phi_x^+) at every interior node of one padded line.
fn derivative_pairs_line(
    line: &[f64],
    n: usize,
    dx: f64,
    params: &WeightParams,
    minus: &mut Vec<f64>,
    plus: &mut Vec<f64>,
) {
    debug_assert_eq!(line.len(), n + WINDOW - 1);
    minus.clear();
    plus.clear();
    for i in 0..n {
        let (lo, hi) = weno_derivative_pair(&line[i..i + WINDOW], dx, params);
        minus.push(lo);
        plus.push(hi);
    }
}

// Divided-difference range over a padded line; brackets the one-sided
// derivative values that feed the flux.
fn slope_range(line: &[f64], dx: f64) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for m in 0..line.len() - 1 {
        let s = (line[m + 1] - line[m]) / dx;
        lo = lo.min(s);
        hi = hi.max(s);
    }
    (lo, hi)
}

/// Gradient box of a 1D field from its divided differences (ghosts included).
pub fn gradient_box_1d(field: &ScalarField1d) -> GradientBox {
    let (u_min, u_max) = slope_range(field.padded(), field.grid.dx);
    GradientBox::from_u(u_min, u_max)
}

/// Gradient box of a 2D field: x-differences along rows, y-differences along
/// columns.
pub fn gradient_box_2d(field: &ScalarField2d) -> GradientBox {
    let mut bx = GradientBox {
        u_min: f64::INFINITY,
        u_max: f64::NEG_INFINITY,
        v_min: f64::INFINITY,
        v_max: f64::NEG_INFINITY,
    };
    let (nx, ny) = (field.grid.x.n, field.grid.y.n);
    for j in 0..ny {
        let (lo, hi) = slope_range(field.row_padded(j), field.grid.x.dx);
        bx.u_min = bx.u_min.min(lo);
        bx.u_max = bx.u_max.max(hi);
    }
    let mut col = Vec::new();
    for i in 0..nx {
        field.col_padded(i, &mut col);
        let (lo, hi) = slope_range(&col, field.grid.y.dx);
        bx.v_min = bx.v_min.min(lo);
        bx.v_max = bx.v_max.max(hi);
    }
    bx
}

/// Inflated wave speed for a 1D field at the current state.
pub fn alpha_from_field_1d(problem: &HjProblem, field: &ScalarField1d) -> f64 {
    let (ax, _) = (problem.alpha_bound)(&gradient_box_1d(field));
    ALPHA_INFLATION * ax
}

/// Inflated per-direction wave speeds for a 2D field at the current state.
pub fn alpha_from_field_2d(problem: &HjProblem, field: &ScalarField2d) -> (f64, f64) {
    let (ax, ay) = (problem.alpha_bound)(&gradient_box_2d(field));
    (ALPHA_INFLATION * ax, ALPHA_INFLATION * ay)
}

/// Semi-discrete right side L(phi) = -Hhat over the interior of a 1D field.
/// Ghosts must be filled for time `t`; the wave speed is taken from the
/// current field.
pub fn rhs_1d(
    field: &ScalarField1d,
    problem: &HjProblem,
    params: &WeightParams,
    t: f64,
) -> Result<Vec<f64>> {
    let alpha = alpha_from_field_1d(problem, field);
    rhs_1d_with_alpha(field, problem, params, t, alpha)
}

/// [`rhs_1d`] with a caller-supplied wave speed (held fixed across RK stages).
pub fn rhs_1d_with_alpha(
    field: &ScalarField1d,
    problem: &HjProblem,
    params: &WeightParams,
    t: f64,
    alpha: f64,
) -> Result<Vec<f64>> {
    let n = field.grid.n;
    let dx = field.grid.dx;
    let line = field.padded();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (um, up) = weno_derivative_pair(&line[i..i + WINDOW], dx, params);
        let x = field.grid.node(i as isize);
        let h = |u: f64| (problem.hamiltonian)(x, 0.0, t, u, 0.0);
        let l = -lax_friedrichs_1d(h, up, um, alpha);
        if !l.is_finite() {
            return Err(HjError::Blowup { t, step: 0, node: i });
        }
        out.push(l);
    }
    Ok(out)
}

/// Semi-discrete right side over the interior of a 2D field, row-major.
pub fn rhs_2d(
    field: &ScalarField2d,
    problem: &HjProblem,
    params: &WeightParams,
    t: f64,
) -> Result<Vec<f64>> {
    let alphas = alpha_from_field_2d(problem, field);
    rhs_2d_with_alpha(field, problem, params, t, alphas)
}

/// [`rhs_2d`] with caller-supplied wave speeds.
pub fn rhs_2d_with_alpha(
    field: &ScalarField2d,
    problem: &HjProblem,
    params: &WeightParams,
    t: f64,
    (alpha_x, alpha_y): (f64, f64),
) -> Result<Vec<f64>> {
    let (nx, ny) = (field.grid.x.n, field.grid.y.n);
    let (dx, dy) = (field.grid.x.dx, field.grid.y.dx);

    let mut u_minus = vec![0.0; nx * ny];
    let mut u_plus = vec![0.0; nx * ny];
    let mut row_minus = Vec::new();
    let mut row_plus = Vec::new();
    for j in 0..ny {
        derivative_pairs_line(field.row_padded(j), nx, dx, params, &mut row_minus, &mut row_plus);
        u_minus[j * nx..(j + 1) * nx].copy_from_slice(&row_minus);
        u_plus[j * nx..(j + 1) * nx].copy_from_slice(&row_plus);
    }

    let mut v_minus = vec![0.0; nx * ny];
    let mut v_plus = vec![0.0; nx * ny];
    let mut col = Vec::new();
    let mut col_minus = Vec::new();
    let mut col_plus = Vec::new();
    for i in 0..nx {
        field.col_padded(i, &mut col);
        derivative_pairs_line(&col, ny, dy, params, &mut col_minus, &mut col_plus);
        for j in 0..ny {
            v_minus[j * nx + i] = col_minus[j];
            v_plus[j * nx + i] = col_plus[j];
        }
    }

    let curvature = match problem.curvature_eps {
        Some(eps) if eps > 0.0 => Some(curvature_term(field, eps, problem.curvature_form)),
        _ => None,
    };

    let mut out = vec![0.0; nx * ny];
    for j in 0..ny {
        let y = field.grid.y.node(j as isize);
        for i in 0..nx {
            let x = field.grid.x.node(i as isize);
            let k = j * nx + i;
            let h = |u: f64, v: f64| (problem.hamiltonian)(x, y, t, u, v);
            let mut l = -lax_friedrichs_2d(
                h, u_plus[k], u_minus[k], v_plus[k], v_minus[k], alpha_x, alpha_y,
            );
            if let Some(curv) = &curvature {
                l += curv[k];
            }
            if !l.is_finite() {
                return Err(HjError::Blowup { t, step: 0, node: k });
            }
            out[k] = l;
        }
    }
    Ok(out)
}

/// Contribution of the curvature regularization to d phi/dt for a front
/// moving at speed 1 - eps K: -eps * K * sqrt(1 + phi_x^2 + phi_y^2), with
/// all derivatives taken by second-order central differences and K oriented
/// as the negated graph divergence (the convention that makes the term a
/// forward diffusion; the opposite orientation is ill-posed and blows up).
/// Zero field when `eps == 0`.
pub fn curvature_term(field: &ScalarField2d, eps: f64, form: CurvatureForm) -> Vec<f64> {
    let (nx, ny) = (field.grid.x.n, field.grid.y.n);
    if eps == 0.0 {
        return vec![0.0; nx * ny];
    }
    let (dx, dy) = (field.grid.x.dx, field.grid.y.dx);
    let mut out = vec![0.0; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            let (si, sj) = (i as isize, j as isize);
            let c = field.get(i, j);
            let e = field.get_signed(si + 1, sj);
            let w = field.get_signed(si - 1, sj);
            let nn = field.get_signed(si, sj + 1);
            let s = field.get_signed(si, sj - 1);
            let ne = field.get_signed(si + 1, sj + 1);
            let nw = field.get_signed(si - 1, sj + 1);
            let se = field.get_signed(si + 1, sj - 1);
            let sw = field.get_signed(si - 1, sj - 1);

            let px = (e - w) / (2.0 * dx);
            let py = (nn - s) / (2.0 * dy);
            let pxx = (e - 2.0 * c + w) / (dx * dx);
            let pyy = (nn - 2.0 * c + s) / (dy * dy);
            let pxy = (ne - se - nw + sw) / (4.0 * dx * dy);

            let (fx, fy) = match form {
                CurvatureForm::Printed => ((1.0 + py) * (1.0 + py), (1.0 + px) * (1.0 + px)),
                CurvatureForm::Canonical => (1.0 + py * py, 1.0 + px * px),
            };
            let grad2 = px * px + py * py + 1.0;
            let k_num = pxx * fx - 2.0 * pxy * px * py + pyy * fy;
            // K = -k_num / grad2^{3/2}, so -eps K sqrt(grad2) = eps k_num/grad2
            out[j * nx + i] = eps * k_num / grad2;
        }
    }
    out
}
