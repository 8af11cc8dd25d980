//! WENO reconstruction of the one-sided derivatives phi_x^-, phi_x^+.
//!
//! The divided differences u_j = (phi_{j+1} - phi_j)/dx are cell averages of
//! phi_x, so the point values of phi_x at node i are recovered with the
//! classical fifth-order WENO machinery: three third-order candidates from
//! 3-cell sub-stencils, blended by nonlinear weights. Two smoothness
//! indicators are available:
//!
//! * [`Indicator::ArcLength`]: beta_k is the squared arc length of the
//!   sub-stencil derivative polynomial over one cell,
//!   beta_k = (int_{x_{i-1}}^{x_i} sqrt(1 + p_k'(x)^2) dx)^2.
//! * [`Indicator::ClassicalJp`]: the Jiang-Peng quadratic forms in the
//!   divided differences.
//!
//! The plus side is everywhere obtained by reflecting the window about node
//! i, which keeps the linear weights (1/10, 6/10, 3/10) unchanged.

/// Window length: nodes {i-3, ..., i+3}.
pub const WINDOW: usize = 7;

/// Optimal linear weights (d0, d1, d2) that combine the three third-order
/// candidates into the fifth-order big-stencil value.
pub const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

/// Which one-sided derivative a stencil-indexed quantity belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Smoothness-indicator family selecting the scheme variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indicator {
    /// Squared arc length of the sub-stencil derivative polynomials.
    ArcLength,
    /// Classical Jiang-Peng quadratic forms, kept as the baseline.
    ClassicalJp,
}

impl Indicator {
    pub fn scheme_name(self) -> &'static str {
        match self {
            Indicator::ArcLength => "weno-l",
            Indicator::ClassicalJp => "weno-jp",
        }
    }

    pub fn table_label(self) -> &'static str {
        match self {
            Indicator::ArcLength => "WENO-L",
            Indicator::ClassicalJp => "WENO-JP",
        }
    }
}

/// Parameters of the nonlinear weighting.
#[derive(Debug, Clone, Copy)]
pub struct WeightParams {
    /// Regularization in the weight denominators.
    pub epsilon: f64,
    /// Linear weights; the standard values unless experimenting.
    pub d: [f64; 3],
    pub indicator: Indicator,
}

impl WeightParams {
    pub fn new(indicator: Indicator) -> Self {
        Self {
            epsilon: 1e-6,
            d: LINEAR_WEIGHTS,
            indicator,
        }
    }
}

impl Default for WeightParams {
    fn default() -> Self {
        Self::new(Indicator::ArcLength)
    }
}

/// Forward divided differences u_j = (phi_{j+1} - phi_j)/dx over the window;
/// entry m corresponds to cell i-3+m.
pub fn forward_differences(window: &[f64], dx: f64) -> [f64; 6] {
    debug_assert_eq!(window.len(), WINDOW);
    debug_assert!(dx > 0.0);
    let mut u = [0.0; 6];
    for (m, slot) in u.iter_mut().enumerate() {
        *slot = (window[m + 1] - window[m]) / dx;
    }
    u
}

/// Third-order candidate derivatives at node i from the minus-side
/// sub-stencils; `u` holds the five cell averages u_{i-3}, ..., u_{i+1}.
pub fn candidates_minus(u: &[f64; 5]) -> [f64; 3] {
    [
        u[0] / 3.0 - 7.0 * u[1] / 6.0 + 11.0 * u[2] / 6.0,
        -u[1] / 6.0 + 5.0 * u[2] / 6.0 + u[3] / 3.0,
        u[2] / 3.0 + 5.0 * u[3] / 6.0 - u[4] / 6.0,
    ]
}

/// Plus-side candidates; `u` holds u_{i-2}, ..., u_{i+2}. Sub-stencils are
/// enumerated in the reflected order so [`LINEAR_WEIGHTS`] applies unchanged.
pub fn candidates_plus(u: &[f64; 5]) -> [f64; 3] {
    [
        u[4] / 3.0 - 7.0 * u[3] / 6.0 + 11.0 * u[2] / 6.0,
        -u[3] / 6.0 + 5.0 * u[2] / 6.0 + u[1] / 3.0,
        u[2] / 3.0 + 5.0 * u[1] / 6.0 - u[0] / 6.0,
    ]
}

/// Fifth-order derivative from the full minus-side stencil (cells i-3..i+1).
/// Equals the d-weighted combination of [`candidates_minus`].
pub fn big_stencil_derivative_minus(u: &[f64; 5]) -> f64 {
    u[0] / 30.0 - 13.0 * u[1] / 60.0 + 47.0 * u[2] / 60.0 + 9.0 * u[3] / 20.0 - u[4] / 20.0
}

/// Fifth-order derivative from the full plus-side stencil (cells i-2..i+2).
pub fn big_stencil_derivative_plus(u: &[f64; 5]) -> f64 {
    u[4] / 30.0 - 13.0 * u[3] / 60.0 + 47.0 * u[2] / 60.0 + 9.0 * u[1] / 20.0 - u[0] / 20.0
}

/// Linear and quadratic coefficients (b_k, c_k) of the minus-side sub-stencil
/// polynomials p_k(x) = a_k + b_k x + c_k x^2 in local coordinates (x_i = 0).
///
/// Each p_k matches the cell averages u_j over its three cells, so
/// c_k = (second difference of u)/(2 dx^2) and b_k = p_k'(0).
pub fn poly_coefficients(window: &[f64], dx: f64) -> [(f64, f64); 3] {
    debug_assert_eq!(window.len(), WINDOW);
    let dx2 = dx * dx;
    let dx3 = dx2 * dx;
    let w = window;
    let b0 = (-w[0] + 4.0 * w[1] - 5.0 * w[2] + 2.0 * w[3]) / dx2;
    let c0 = (-w[0] + 3.0 * w[1] - 3.0 * w[2] + w[3]) / (2.0 * dx3);
    let b1 = (w[2] - 2.0 * w[3] + w[4]) / dx2;
    let c1 = (-w[1] + 3.0 * w[2] - 3.0 * w[3] + w[4]) / (2.0 * dx3);
    let b2 = (w[2] - 2.0 * w[3] + w[4]) / dx2;
    let c2 = (-w[2] + 3.0 * w[3] - 3.0 * w[4] + w[5]) / (2.0 * dx3);
    [(b0, c0), (b1, c1), (b2, c2)]
}

// Use the straight-line branch when the quadratic term cannot influence the
// result beyond rounding. Exact zero alone is not enough in floating point.
fn curvature_negligible(b: f64, c: f64, z0: f64, z1: f64) -> bool {
    c.abs() * (z0.abs() + z1.abs() + 1.0) < 1e-12 * (1.0 + b.abs())
}

// x*sqrt(1+x^2) evaluated as a difference at w1, w0. When both arguments
// share a sign the difference is rationalized, with the exactly-known
// dw = w1 - w0 factored out, so nearby w's do not cancel.
fn sqrt_term_diff(w1: f64, w0: f64, dw: f64) -> f64 {
    let s1 = (1.0 + w1 * w1).sqrt();
    let s0 = (1.0 + w0 * w0).sqrt();
    if w1 * w0 > 0.0 {
        // w1*s1 - w0*s0 = dw (w1 + w0)(1 + w1^2 + w0^2) / (w1*s1 + w0*s0)
        dw * (w1 + w0) * (1.0 + w1 * w1 + w0 * w0) / (w1 * s1 + w0 * s0)
    } else {
        w1 * s1 - w0 * s0
    }
}

// asinh(w1) - asinh(w0) via the addition identity when both arguments share
// a sign; the identity argument is rationalized the same way.
fn asinh_diff(w1: f64, w0: f64, dw: f64) -> f64 {
    if w1 * w0 > 0.0 {
        let s1 = (1.0 + w1 * w1).sqrt();
        let s0 = (1.0 + w0 * w0).sqrt();
        // asinh w1 - asinh w0 = asinh(w1*s0 - w0*s1), rationalized
        (dw * (w1 + w0) / (w1 * s0 + w0 * s1)).asinh()
    } else {
        w1.asinh() - w0.asinh()
    }
}

/// Arc length of p(x) = a + b x + c x^2 over [z0, z1]:
/// int sqrt(1 + (b + 2 c x)^2) dx.
///
/// The closed form ((w sqrt(w^2+1) + asinh w)/(4c) at w = b + 2 c z) is
/// evaluated as a single difference with the increment 2c(z1 - z0) carried
/// exactly, so that small `c` does not blow up rounding errors; `|c| -> 0`
/// joins the straight-line branch smoothly.
pub fn arc_length(b: f64, c: f64, z0: f64, z1: f64) -> f64 {
    debug_assert!(z1 > z0);
    if curvature_negligible(b, c, z0, z1) {
        return (1.0 + b * b).sqrt() * (z1 - z0);
    }
    let w0 = b + 2.0 * c * z0;
    let w1 = b + 2.0 * c * z1;
    let dw = 2.0 * c * (z1 - z0);
    (sqrt_term_diff(w1, w0, dw) + asinh_diff(w1, w0, dw)) / (4.0 * c)
}

/// Minus-side smoothness indicators: beta_k = (arc length of p_k over the
/// cell [x_{i-1}, x_i])^2, i.e. over [-dx, 0] in local coordinates.
pub fn smoothness_arclength(window: &[f64], dx: f64) -> [f64; 3] {
    let coeffs = poly_coefficients(window, dx);
    let mut beta = [0.0; 3];
    for (k, &(b, c)) in coeffs.iter().enumerate() {
        let len = arc_length(b, c, -dx, 0.0);
        beta[k] = len * len;
    }
    beta
}

/// Classical Jiang-Peng indicators. For [`Side::Minus`], `u` holds
/// u_{i-3}, ..., u_{i+1}; for [`Side::Plus`], u_{i-2}, ..., u_{i+2}. The
/// plus side is the reflection, matching the [`candidates_plus`] enumeration.
pub fn smoothness_classical(u: &[f64; 5], side: Side) -> [f64; 3] {
    let v: [f64; 5] = match side {
        Side::Minus => *u,
        Side::Plus => [u[4], u[3], u[2], u[1], u[0]],
    };
    let sq = |x: f64| x * x;
    [
        13.0 / 12.0 * sq(v[0] - 2.0 * v[1] + v[2]) + 0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]),
        13.0 / 12.0 * sq(v[1] - 2.0 * v[2] + v[3]) + 0.25 * sq(v[1] - v[3]),
        13.0 / 12.0 * sq(v[2] - 2.0 * v[3] + v[4]) + 0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]),
    ]
}

/// Nonlinear weights omega_k = alpha_k / sum(alpha),
/// alpha_k = d_k / (epsilon + beta_k)^2.
pub fn nonlinear_weights(beta: &[f64; 3], params: &WeightParams) -> [f64; 3] {
    debug_assert!(params.epsilon > 0.0);
    let mut alpha = [0.0; 3];
    for k in 0..3 {
        let denom = params.epsilon + beta[k];
        alpha[k] = params.d[k] / (denom * denom);
    }
    let total = alpha[0] + alpha[1] + alpha[2];
    [alpha[0] / total, alpha[1] / total, alpha[2] / total]
}

fn reversed(window: &[f64]) -> [f64; WINDOW] {
    let mut r: [f64; WINDOW] = window.try_into().expect("7-point window");
    r.reverse();
    r
}

// One-sided WENO derivative using the minus-side stencils of `window`.
fn minus_side_derivative(window: &[f64], dx: f64, params: &WeightParams) -> f64 {
    let u = forward_differences(window, dx);
    let u5: [f64; 5] = [u[0], u[1], u[2], u[3], u[4]];
    let q = candidates_minus(&u5);
    let beta = match params.indicator {
        Indicator::ArcLength => smoothness_arclength(window, dx),
        Indicator::ClassicalJp => smoothness_classical(&u5, Side::Minus),
    };
    let w = nonlinear_weights(&beta, params);
    w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
}

/// The pair (phi_x^-, phi_x^+) at the window's central node. The plus side
/// reuses the minus-side path on the reflected window and flips the sign,
/// which is exactly the symmetric reconstruction.
pub fn weno_derivative_pair(window: &[f64], dx: f64, params: &WeightParams) -> (f64, f64) {
    debug_assert_eq!(window.len(), WINDOW);
    let minus = minus_side_derivative(window, dx, params);
    let plus = -minus_side_derivative(&reversed(window), dx, params);
    (minus, plus)
}
