//! Shared test oracles: dense linear solves for reconstruction constraints,
//! adaptive Gauss-Legendre quadrature, and refinement-slope fitting. All of
//! these are independent of the library's own evaluation paths.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Solve A x = b by Gaussian elimination with partial pivoting.
pub fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        assert!(m[col][col].abs() > 1e-14, "singular constraint system");
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                let pivot = m[col][k];
                m[row][k] -= f * pivot;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = rhs[row];
        for k in row + 1..n {
            s -= m[row][k] * x[k];
        }
        x[row] = s / m[row][row];
    }
    x
}

/// Fit p(z) = a + b z + c z^2 to three cell averages over consecutive cells
/// of width `dx` starting at `z_start`; returns (a, b, c).
pub fn fit_quadratic_from_cell_averages(u: &[f64; 3], z_start: f64, dx: f64) -> (f64, f64, f64) {
    let mut rows = Vec::new();
    for k in 0..3 {
        let s = z_start + k as f64 * dx;
        rows.push(vec![1.0, s + dx / 2.0, s * s + s * dx + dx * dx / 3.0]);
    }
    let sol = solve_dense(&rows, u);
    (sol[0], sol[1], sol[2])
}

/// Fit a degree-4 polynomial to five cell averages over consecutive cells of
/// width `dx` starting at `z_start`; returns its value at z = 0.
pub fn fit_quartic_value_at_zero(u: &[f64; 5], z_start: f64, dx: f64) -> f64 {
    let mut rows = Vec::new();
    for k in 0..5 {
        let s = z_start + k as f64 * dx;
        let e = s + dx;
        // cell average of z^m over [s, s+dx]
        let row: Vec<f64> = (1..=5)
            .map(|p| (e.powi(p) - s.powi(p)) / (p as f64 * dx))
            .collect();
        rows.push(row);
    }
    let coeffs = solve_dense(&rows, u);
    coeffs[0]
}

// 5-point Gauss-Legendre nodes/weights on [-1, 1], from the closed forms.
fn gl5() -> [(f64, f64); 5] {
    let s = (10.0_f64 / 7.0).sqrt();
    let x_inner = (5.0 - 2.0 * s).sqrt() / 3.0;
    let x_outer = (5.0 + 2.0 * s).sqrt() / 3.0;
    let w_inner = (322.0 + 13.0 * 70.0_f64.sqrt()) / 900.0;
    let w_outer = (322.0 - 13.0 * 70.0_f64.sqrt()) / 900.0;
    [
        (0.0, 128.0 / 225.0),
        (x_inner, w_inner),
        (-x_inner, w_inner),
        (x_outer, w_outer),
        (-x_outer, w_outer),
    ]
}

fn gl5_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gl5().iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

fn adaptive_gl(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let whole = gl5_panel(f, a, b);
    let mid = 0.5 * (a + b);
    let halves = gl5_panel(f, a, mid) + gl5_panel(f, mid, b);
    if (whole - halves).abs() < tol || depth >= 40 {
        halves
    } else {
        adaptive_gl(f, a, mid, tol / 2.0, depth + 1) + adaptive_gl(f, mid, b, tol / 2.0, depth + 1)
    }
}

/// Adaptive Gauss-Legendre quadrature of `f` over [a, b].
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    adaptive_gl(&f, a, b, tol, 0)
}

/// Quadrature oracle for the arc length of a + b z + c z^2 over [z0, z1].
pub fn arc_length_quadrature(b: f64, c: f64, z0: f64, z1: f64) -> f64 {
    integrate_adaptive(
        |z| {
            let w = b + 2.0 * c * z;
            (1.0 + w * w).sqrt()
        },
        z0,
        z1,
        1e-14,
    )
}

/// Least-squares slope of log2(err) against the refinement level, assuming
/// successive halvings; positive means the error shrinks.
pub fn regression_slope(errs: &[f64]) -> f64 {
    let n = errs.len() as f64;
    let mean_k = (errs.len() - 1) as f64 / 2.0;
    let logs: Vec<f64> = errs.iter().map(|e| e.log2()).collect();
    let mean_log = logs.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (k, l) in logs.iter().enumerate() {
        num += (k as f64 - mean_k) * (l - mean_log);
        den += (k as f64 - mean_k) * (k as f64 - mean_k);
    }
    -num / den
}

/// Random 7-point window with values in [-scale, scale].
pub fn random_window(rng: &mut StdRng, scale: f64) -> [f64; 7] {
    let mut w = [0.0; 7];
    for v in &mut w {
        *v = rng.gen_range(-scale..scale);
    }
    w
}

/// Self-check used by the property suite: 5-node Gauss-Legendre must be
/// exact through degree 9 and the dense solver must round-trip.
pub fn verify_oracles() {
    for m in 0..=9u32 {
        let exact = (1.0 - (-1.0_f64).powi(m as i32 + 1)) / (m as f64 + 1.0);
        let got = gl5_panel(&|x: f64| x.powi(m as i32), -1.0, 1.0);
        assert!((got - exact).abs() < 1e-14, "degree {m}: {got} vs {exact}");
    }
    let a = vec![
        vec![2.0, 1.0, -1.0],
        vec![-3.0, -1.0, 2.0],
        vec![-2.0, 1.0, 2.0],
    ];
    let x = solve_dense(&a, &[8.0, -11.0, -3.0]);
    for (got, want) in x.iter().zip([2.0, 3.0, -1.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}
