//! Fifth-order WENO finite-difference solver for Hamilton-Jacobi equations
//! `phi_t + H(x, t, grad phi) = 0` on uniform 1D/2D grids.
//!
//! Two flavors of smoothness indicator drive the nonlinear weights: squared
//! arc length of the sub-stencil derivative polynomials (`weno-l`) and the
//! classical Jiang-Peng quadratic forms (`weno-jp`). Spatial reconstruction is paired with a Lax-Friedrichs
//! numerical Hamiltonian and TVD-RK3 time integration.
//!
//! The [`problems`] module carries a catalog of thirteen benchmark problems
//! and the [`harness`] module produces grid-convergence tables and plot data
//! for them.

pub mod cli;
pub mod hamiltonian;
pub mod harness;
pub mod mesh;
pub mod problems;
pub mod reconstruction;
pub mod timestepper;

pub use hamiltonian::{
    alpha_from_field_1d, alpha_from_field_2d, curvature_term, lax_friedrichs_1d,
    lax_friedrichs_2d, rhs_1d, rhs_2d, CurvatureForm, Dimension, GradientBox, HjProblem,
};
pub use harness::{
    convergence_study, emit_solution_1d, emit_solution_2d, emit_table, error_norms_1d,
    error_norms_2d, ConvergenceTable, ErrorPair, L1Convention, TableFormat, TableRow,
};
pub use mesh::{BoundaryRule, Grid1d, Grid2d, ScalarField1d, ScalarField2d, GHOST_WIDTH};
pub use problems::{catalog, characteristic_solution, ProblemId, ProblemSpec, Reference};
pub use reconstruction::{
    arc_length, big_stencil_derivative_minus, big_stencil_derivative_plus, candidates_minus,
    candidates_plus, forward_differences, nonlinear_weights, poly_coefficients,
    smoothness_arclength, smoothness_classical, weno_derivative_pair, Indicator, Side,
    WeightParams, LINEAR_WEIGHTS,
};
pub use timestepper::{dt_from_cfl, integrate, rk3_step, DtMode, Solution, TimeControls};

/// Errors surfaced by grid construction, configuration, and time integration.
#[derive(Debug, thiserror::Error)]
pub enum HjError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical blowup at t = {t:.6e}, step {step}: non-finite value at node {node}")]
    Blowup { t: f64, step: usize, node: usize },
    #[error("time integration exceeded max_steps = {max_steps} at t = {t:.6e}")]
    MaxSteps { max_steps: usize, t: f64 },
    #[error("characteristic root bracketing failed: {0}")]
    Bracketing(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HjError>;
