//! Catalog of the benchmark problems P1-P13: Hamiltonians, wave-speed
//! bounds, initial data, boundary rules, final times, and exact or reference
//! solution oracles.
//!
//! Pre-shock oracles use the method of characteristics: solve
//! x = x0 + H'(phi0'(x0)) t for the foot point x0, then
//! phi(x, t) = phi0(x0) + t (phi0'(x0) H'(phi0'(x0)) - H(phi0'(x0))).
//! The 2D problems P3/P4/P9 reduce to 1D in w = x + y because their initial
//! data depend on x + y only. Post-shock runs are compared against fine-grid
//! solves instead.

use std::f64::consts::PI;
use std::str::FromStr;
use std::sync::Arc;

use crate::hamiltonian::{CurvatureForm, Dimension, GradientBox, HjProblem};
use crate::mesh::BoundaryRule;
use crate::reconstruction::{Indicator, WeightParams};
use crate::timestepper::{integrate, Solution, TimeControls};
use crate::{HjError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
}

impl ProblemId {
    pub fn all() -> [ProblemId; 13] {
        use ProblemId::*;
        [P1, P2, P3, P4, P5, P6, P7, P8, P9, P10, P11, P12, P13]
    }
}

impl std::fmt::Display for ProblemId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P{}", *self as usize + 1)
    }
}

impl FromStr for ProblemId {
    type Err = HjError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let digits = t.strip_prefix('P').unwrap_or(&t);
        let k: usize = digits
            .parse()
            .map_err(|_| HjError::Config(format!("unknown problem id '{s}'")))?;
        ProblemId::all()
            .get(k.wrapping_sub(1))
            .copied()
            .ok_or_else(|| HjError::Config(format!("unknown problem id '{s}'")))
    }
}

/// How errors for this problem are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    /// Closed-form exact solution, valid at all times.
    Analytic,
    /// Method-of-characteristics oracle, valid pre-shock.
    Characteristic,
    /// Fine-grid solve at the suggested resolution.
    FineGrid(usize),
}

/// A catalog entry: the problem plus its benchmark defaults.
#[derive(Clone)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub title: &'static str,
    pub problem: HjProblem,
    pub default_final_times: Vec<f64>,
    pub default_grids: Vec<usize>,
    pub reference: Reference,
}

/// Wrap `s` into `[a, b)`.
pub fn wrap_periodic(s: f64, a: f64, b: f64) -> f64 {
    let width = b - a;
    s - width * ((s - a) / width).floor()
}

/// max |sin| over the interval `[lo, hi]`.
fn max_abs_sin_on(lo: f64, hi: f64) -> f64 {
    debug_assert!(hi >= lo);
    if hi - lo >= PI {
        return 1.0;
    }
    let k = ((lo - PI / 2.0) / PI).ceil();
    if PI / 2.0 + k * PI <= hi {
        1.0
    } else {
        lo.sin().abs().max(hi.sin().abs())
    }
}

/// max |cos| over the interval `[lo, hi]`.
fn max_abs_cos_on(lo: f64, hi: f64) -> f64 {
    max_abs_sin_on(lo + PI / 2.0, hi + PI / 2.0)
}

/// Solve the characteristic equations for a 1D Hamilton-Jacobi problem at a
/// pre-shock time; the foot point is found by safeguarded Newton iteration
/// with a bisection fallback.
pub fn characteristic_solution(
    phi0: &dyn Fn(f64) -> f64,
    phi0_prime: &dyn Fn(f64) -> f64,
    h: &dyn Fn(f64) -> f64,
    h_prime: &dyn Fn(f64) -> f64,
    x: f64,
    t: f64,
) -> Result<f64> {
    if t == 0.0 {
        return Ok(phi0(x));
    }
    let g = |x0: f64| x0 + h_prime(phi0_prime(x0)) * t - x;

    // g is increasing pre-shock; expand a bracket around x until it straddles 0
    let mut radius = t.abs().max(1e-3);
    let (mut lo, mut hi) = (x - radius, x + radius);
    let mut bracketed = false;
    for _ in 0..64 {
        if g(lo) <= 0.0 && g(hi) >= 0.0 {
            bracketed = true;
            break;
        }
        radius *= 2.0;
        lo = x - radius;
        hi = x + radius;
    }
    if !bracketed {
        return Err(HjError::Bracketing(format!(
            "no sign change around x = {x} at t = {t}; post-shock misuse?"
        )));
    }

    let mut x0 = 0.5 * (lo + hi);
    for _ in 0..200 {
        let val = g(x0);
        if val.abs() < 1e-13 || hi - lo < 1e-16 * (1.0 + x0.abs()) {
            break;
        }
        if val > 0.0 {
            hi = x0;
        } else {
            lo = x0;
        }
        let step = 1e-7 * (1.0 + x0.abs());
        let slope = (g(x0 + step) - g(x0 - step)) / (2.0 * step);
        let newton = x0 - val / slope;
        x0 = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }

    let u0 = phi0_prime(x0);
    Ok(phi0(x0) + t * (u0 * h_prime(u0) - h(u0)))
}

// Composite profile of the linear-advection figure test (P5) on [-1, 1).
// The 15/2 constant in the third branch makes the profile continuous at the
// branch points and at the periodic seam.
fn p5_base(x: f64) -> f64 {
    let ramp = -(3.0_f64.sqrt() / 2.0 + 4.5 + 2.0 * PI / 3.0) * (x + 1.0);
    let bump = if x < -1.0 / 3.0 {
        2.0 * (1.5 * PI * x * x).cos() - 3.0_f64.sqrt()
    } else if x < 0.0 {
        1.5 + 3.0 * (2.0 * PI * x).cos()
    } else if x < 1.0 / 3.0 {
        7.5 - 3.0 * (2.0 * PI * x).cos()
    } else {
        (28.0 + 4.0 * PI + (3.0 * PI * x).cos()) / 3.0 + 6.0 * PI * x * (x - 1.0)
    };
    ramp + bump
}

// P8 Hamiltonian derivative H'(u) = u (2u^2 - 5)/2; its extrema on an
// interval sit at the endpoints or at u = +-sqrt(5/6).
fn p8_alpha(u_lo: f64, u_hi: f64) -> f64 {
    let hp = |u: f64| (u * (2.0 * u * u - 5.0) / 2.0).abs();
    let mut best = hp(u_lo).max(hp(u_hi));
    let crit = (5.0_f64 / 6.0).sqrt();
    for c in [crit, -crit] {
        if c > u_lo && c < u_hi {
            best = best.max(hp(c));
        }
    }
    best
}

// Eikonal-type wave speed: max |u| / sqrt(u^2 + v^2 + 1) over the box is
// attained at the largest |u| and the smallest |v|.
fn eikonal_alpha(b: &GradientBox) -> (f64, f64) {
    let u_amp = b.u_min.abs().max(b.u_max.abs());
    let v_amp = b.v_min.abs().max(b.v_max.abs());
    let u_small = if b.u_min <= 0.0 && b.u_max >= 0.0 {
        0.0
    } else {
        b.u_min.abs().min(b.u_max.abs())
    };
    let v_small = if b.v_min <= 0.0 && b.v_max >= 0.0 {
        0.0
    } else {
        b.v_min.abs().min(b.v_max.abs())
    };
    let ax = u_amp / (u_amp * u_amp + v_small * v_small + 1.0).sqrt();
    let ay = v_amp / (v_amp * v_amp + u_small * u_small + 1.0).sqrt();
    (ax, ay)
}

// Characteristic oracle for the diagonal 2D problems, reduced to w = x + y.
fn diagonal_characteristic(
    g: impl Fn(f64) -> f64,
    g_prime: impl Fn(f64) -> f64,
    w: f64,
    t: f64,
) -> f64 {
    let psi0 = |w: f64| -(PI * w / 2.0).cos();
    let psi0_prime = |w: f64| PI / 2.0 * (PI * w / 2.0).sin();
    characteristic_solution(&psi0, &psi0_prime, &g, &g_prime, w, t)
        .expect("pre-shock characteristic oracle")
}

/// Look up one benchmark problem with its defaults.
pub fn catalog(id: ProblemId) -> ProblemSpec {
    let t2 = 0.5 / (PI * PI);
    match id {
        ProblemId::P1 => ProblemSpec {
            id,
            title: "1D linear advection, phi_t + phi_x = 0, phi0 = -cos(pi x)",
            problem: HjProblem {
                dimension: Dimension::One,
                hamiltonian: Arc::new(|_, _, _, u, _| u),
                alpha_bound: Arc::new(|_| (1.0, 0.0)),
                x_range: (-1.0, 1.0),
                y_range: None,
                initial: Arc::new(|x, _| -(PI * x).cos()),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: None,
                exact: Some(Arc::new(|x, _, t| -(PI * (x - t)).cos())),
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![2.0],
            default_grids: vec![20, 40, 80, 160, 320],
            reference: Reference::Analytic,
        },
        ProblemId::P2 => ProblemSpec {
            id,
            title: "1D nonconvex flux, phi_t - cos(phi_x + 1) = 0",
            problem: HjProblem {
                dimension: Dimension::One,
                hamiltonian: Arc::new(|_, _, _, u, _| -(u + 1.0).cos()),
                alpha_bound: Arc::new(|b: &GradientBox| {
                    (max_abs_sin_on(b.u_min + 1.0, b.u_max + 1.0), 0.0)
                }),
                x_range: (-1.0, 1.0),
                y_range: None,
                initial: Arc::new(|x, _| -(PI * x).cos()),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: None,
                exact: Some(Arc::new(|x, _, t| {
                    characteristic_solution(
                        &|s| -(PI * s).cos(),
                        &|s| PI * (PI * s).sin(),
                        &|u| -(u + 1.0).cos(),
                        &|u| (u + 1.0).sin(),
                        x,
                        t,
                    )
                    .expect("pre-shock characteristic oracle")
                })),
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![t2],
            default_grids: vec![20, 40, 80, 160, 320],
            reference: Reference::Characteristic,
        },
        ProblemId::P3 => ProblemSpec {
            id,
            title: "2D Burgers, phi_t + (phi_x + phi_y + 1)^2/2 = 0",
            problem: HjProblem {
                dimension: Dimension::Two,
                hamiltonian: Arc::new(|_, _, _, u, v| {
                    let s = u + v + 1.0;
                    0.5 * s * s
                }),
                alpha_bound: Arc::new(|b: &GradientBox| {
                    let lo = b.u_min + b.v_min + 1.0;
                    let hi = b.u_max + b.v_max + 1.0;
                    let a = lo.abs().max(hi.abs());
                    (a, a)
                }),
                x_range: (-2.0, 2.0),
                y_range: Some((-2.0, 2.0)),
                initial: Arc::new(|x, y| -(PI * (x + y) / 2.0).cos()),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: Some(BoundaryRule::Periodic),
                exact: Some(Arc::new(|x, y, t| {
                    diagonal_characteristic(
                        |s| {
                            let r = 2.0 * s + 1.0;
                            0.5 * r * r
                        },
                        |s| 2.0 * (2.0 * s + 1.0),
                        x + y,
                        t,
                    )
                })),
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![t2],
            default_grids: vec![20, 40, 80, 160, 320],
            reference: Reference::Characteristic,
        },
        ProblemId::P4 => ProblemSpec {
            id,
            title: "2D nonconvex flux, phi_t - cos(phi_x + phi_y + 1) = 0",
            problem: HjProblem {
                dimension: Dimension::Two,
                hamiltonian: Arc::new(|_, _, _, u, v| -(u + v + 1.0).cos()),
                alpha_bound: Arc::new(|b: &GradientBox| {
                    let a = max_abs_sin_on(b.u_min + b.v_min + 1.0, b.u_max + b.v_max + 1.0);
                    (a, a)
                }),
                x_range: (-2.0, 2.0),
                y_range: Some((-2.0, 2.0)),
                initial: Arc::new(|x, y| -(PI * (x + y) / 2.0).cos()),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: Some(BoundaryRule::Periodic),
                exact: Some(Arc::new(|x, y, t| {
                    diagonal_characteristic(
                        |s| -(2.0 * s + 1.0).cos(),
                        |s| 2.0 * (2.0 * s + 1.0).sin(),
                        x + y,
                        t,
                    )
                })),
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![t2],
            default_grids: vec![20, 40, 80, 160, 320],
            reference: Reference::Characteristic,
        },
        ProblemId::P5 => ProblemSpec {
            id,
            title: "1D linear advection of a composite wave profile",
            problem: HjProblem {
                dimension: Dimension::One,
                hamiltonian: Arc::new(|_, _, _, u, _| u),
                alpha_bound: Arc::new(|_| (1.0, 0.0)),
                x_range: (-1.0, 1.0),
                y_range: None,
                initial: Arc::new(|x, _| p5_base(wrap_periodic(x - 0.5, -1.0, 1.0))),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: None,
                exact: Some(Arc::new(|x, _, t| {
                    p5_base(wrap_periodic(x - 0.5 - t, -1.0, 1.0))
                })),
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![2.0, 8.0],
            default_grids: vec![100],
            reference: Reference::Analytic,
        },
        ProblemId::P6 => ProblemSpec {
            id,
            title: "1D Burgers, phi_t + (phi_x + 1)^2/2 = 0",
            problem: HjProblem {
                dimension: Dimension::One,
                hamiltonian: Arc::new(|_, _, _, u, _| 0.5 * (u + 1.0) * (u + 1.0)),
                alpha_bound: Arc::new(|b: &GradientBox| {
                    ((b.u_min + 1.0).abs().max((b.u_max + 1.0).abs()), 0.0)
                }),
                x_range: (-1.0, 1.0),
                y_range: None,
                initial: Arc::new(|x, _| -(PI * x).cos()),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: None,
                exact: None,
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![3.5 / (PI * PI)],
            default_grids: vec![40, 80],
            reference: Reference::FineGrid(1280),
        },
        ProblemId::P7 => ProblemSpec {
            id,
            title: "1D nonconvex flux at a later, kinked time",
            problem: catalog(ProblemId::P2).problem,
            default_final_times: vec![1.5 / (PI * PI), 3.5 / (PI * PI)],
            default_grids: vec![40, 80],
            reference: Reference::FineGrid(1280),
        },
        ProblemId::P8 => ProblemSpec {
            id,
            title: "1D double-well flux, phi_t + (phi_x^2-1)(phi_x^2-4)/4 = 0",
            problem: HjProblem {
                dimension: Dimension::One,
                hamiltonian: Arc::new(|_, _, _, u, _| {
                    0.25 * (u * u - 1.0) * (u * u - 4.0)
                }),
                alpha_bound: Arc::new(|b: &GradientBox| (p8_alpha(b.u_min, b.u_max), 0.0)),
                x_range: (-1.0, 1.0),
                y_range: None,
                initial: Arc::new(|x, _| -2.0 * x.abs()),
                boundary_x: BoundaryRule::LinearExtrapolation,
                boundary_y: None,
                exact: None,
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![1.0],
            default_grids: vec![100],
            reference: Reference::FineGrid(1600),
        },
        ProblemId::P9 => ProblemSpec {
            id,
            title: "2D Burgers at a later, kinked time",
            problem: catalog(ProblemId::P3).problem,
            default_final_times: vec![1.5 / (PI * PI)],
            default_grids: vec![40],
            reference: Reference::FineGrid(320),
        },
        ProblemId::P10 => ProblemSpec {
            id,
            title: "2D nonconvex flux, phi_t + sin(phi_x + phi_y) = 0",
            problem: {
                let phi0 = |x: f64, y: f64| PI * (y.abs() - x.abs());
                // wave speeds are at most 1, so the boundary data stay equal
                // to the initial state up to t = 1; hold them fixed there
                let dirichlet: crate::mesh::SpaceTimeFn = Arc::new(move |x, y, _t| phi0(x, y));
                HjProblem {
                    dimension: Dimension::Two,
                    hamiltonian: Arc::new(|_, _, _, u, v| (u + v).sin()),
                    alpha_bound: Arc::new(|b: &GradientBox| {
                        let a = max_abs_cos_on(b.u_min + b.v_min, b.u_max + b.v_max);
                        (a, a)
                    }),
                    x_range: (-1.0, 1.0),
                    y_range: Some((-1.0, 1.0)),
                    initial: Arc::new(phi0),
                    boundary_x: BoundaryRule::DirichletExact(dirichlet.clone()),
                    boundary_y: Some(BoundaryRule::DirichletExact(dirichlet)),
                    exact: None,
                    curvature_eps: None,
                    curvature_form: CurvatureForm::Printed,
                }
            },
            default_final_times: vec![1.0],
            default_grids: vec![80],
            reference: Reference::FineGrid(320),
        },
        ProblemId::P11 => ProblemSpec {
            id,
            title: "2D optimal control with space-dependent Hamiltonian",
            problem: HjProblem {
                dimension: Dimension::Two,
                // sign(phi_y) phi_y is |phi_y|, which keeps H continuous
                hamiltonian: Arc::new(|x, y, _, u, v| {
                    y.sin() * u + x.sin() * v + v.abs() - 0.5 * y.sin() * y.sin()
                        - (1.0 - x.cos())
                }),
                alpha_bound: Arc::new(|_| (1.0, 2.0)),
                x_range: (-PI, PI),
                y_range: Some((-PI, PI)),
                initial: Arc::new(|_, _| 0.0),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: Some(BoundaryRule::Periodic),
                exact: None,
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![1.0],
            default_grids: vec![60],
            reference: Reference::FineGrid(240),
        },
        ProblemId::P12 => ProblemSpec {
            id,
            title: "2D eikonal equation of geometric optics",
            problem: HjProblem {
                dimension: Dimension::Two,
                hamiltonian: Arc::new(|_, _, _, u, v| (u * u + v * v + 1.0).sqrt()),
                alpha_bound: Arc::new(eikonal_alpha),
                x_range: (0.0, 1.0),
                y_range: Some((0.0, 1.0)),
                initial: Arc::new(|x, y| {
                    0.25 * ((2.0 * PI * x).cos() - 1.0) * ((2.0 * PI * y).cos() - 1.0) - 1.0
                }),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: Some(BoundaryRule::Periodic),
                exact: None,
                curvature_eps: None,
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![0.6],
            default_grids: vec![80],
            reference: Reference::FineGrid(320),
        },
        ProblemId::P13 => ProblemSpec {
            id,
            title: "2D front propagation with curvature regularization",
            problem: HjProblem {
                dimension: Dimension::Two,
                hamiltonian: Arc::new(|_, _, _, u, v| -(u * u + v * v + 1.0).sqrt()),
                alpha_bound: Arc::new(eikonal_alpha),
                x_range: (0.0, 1.0),
                y_range: Some((0.0, 1.0)),
                initial: Arc::new(|x, y| {
                    1.0 - 0.25 * ((2.0 * PI * x).cos() - 1.0) * ((2.0 * PI * y).cos() - 1.0)
                }),
                boundary_x: BoundaryRule::Periodic,
                boundary_y: Some(BoundaryRule::Periodic),
                exact: None,
                curvature_eps: Some(0.1),
                curvature_form: CurvatureForm::Printed,
            },
            default_final_times: vec![0.1],
            default_grids: vec![60],
            reference: Reference::FineGrid(240),
        },
    }
}

/// A fine-grid solve usable as a nodal reference where no closed-form
/// solution exists.
pub struct FineReference {
    pub solution: Solution,
    pub steps: usize,
}

impl FineReference {
    /// Value at `x` by index snap (exact when the coarse grid divides the
    /// fine one) or linear interpolation otherwise.
    pub fn value_1d(&self, x: f64) -> f64 {
        let field = self.solution.as_1d();
        let grid = field.grid;
        sample_line(field.interior(), grid.a, grid.dx, grid.n, x)
    }

    pub fn value_2d(&self, x: f64, y: f64) -> f64 {
        let field = self.solution.as_2d();
        let (gx, gy) = (field.grid.x, field.grid.y);
        // bilinear on the fine grid with wrap-around indexing
        let sx = (x - gx.a) / gx.dx;
        let sy = (y - gy.a) / gy.dx;
        let (i0, fx) = split_index(sx, gx.n);
        let (j0, fy) = split_index(sy, gy.n);
        let i1 = (i0 + 1) % gx.n;
        let j1 = (j0 + 1) % gy.n;
        let v00 = field.get(i0, j0);
        let v10 = field.get(i1, j0);
        let v01 = field.get(i0, j1);
        let v11 = field.get(i1, j1);
        v00 * (1.0 - fx) * (1.0 - fy) + v10 * fx * (1.0 - fy) + v01 * (1.0 - fx) * fy
            + v11 * fx * fy
    }

    pub fn min_max(&self) -> (f64, f64) {
        let values: Vec<f64> = match &self.solution {
            Solution::One(f) => f.interior().to_vec(),
            Solution::Two(f) => f.interior_to_vec(),
        };
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }
}

fn split_index(s: f64, n: usize) -> (usize, f64) {
    let snapped = s.round();
    if (s - snapped).abs() < 1e-9 {
        let i = (snapped as i64).rem_euclid(n as i64) as usize;
        return (i, 0.0);
    }
    let fl = s.floor();
    let i = (fl as i64).rem_euclid(n as i64) as usize;
    (i, s - fl)
}

fn sample_line(values: &[f64], a: f64, dx: f64, n: usize, x: f64) -> f64 {
    let s = (x - a) / dx;
    let (i0, f) = split_index(s, n);
    if f == 0.0 {
        return values[i0];
    }
    let i1 = (i0 + 1) % n;
    values[i0] * (1.0 - f) + values[i1] * f
}

/// Solve `spec` with the arc-length scheme on an `n_ref` grid at time `t`.
/// Callers should keep `n_ref` at 8x the production grid or finer.
pub fn reference_fine_grid(spec: &ProblemSpec, t: f64, n_ref: usize) -> Result<FineReference> {
    let controls = TimeControls::new(t);
    let params = WeightParams::new(Indicator::ArcLength);
    let (solution, steps) = integrate(&spec.problem, n_ref, None, &controls, &params)?;
    Ok(FineReference { solution, steps })
}
