//! Error norms, grid-convergence tables, and plot-data emission.

use crate::mesh::{ScalarField1d, ScalarField2d};
use crate::problems::ProblemSpec;
use crate::reconstruction::{Indicator, WeightParams};
use crate::timestepper::{integrate, DtMode, Solution, TimeControls};
use crate::{HjError, Result};

/// L-infinity and L1 error of a field against an oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorPair {
    pub l_inf: f64,
    pub l_1: f64,
}

/// L1 normalization. The paper-style convention weights the sum of absolute
/// nodal errors by the cell measure; the alternative reports a plain mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum L1Convention {
    MeasureWeighted,
    MeanAbsolute,
}

pub fn error_norms_1d(
    field: &ScalarField1d,
    oracle: impl Fn(f64) -> f64,
    convention: L1Convention,
) -> ErrorPair {
    let grid = field.grid;
    let mut linf = 0.0_f64;
    let mut sum = 0.0_f64;
    for (i, v) in field.interior().iter().enumerate() {
        let e = (v - oracle(grid.node(i as isize))).abs();
        linf = linf.max(e);
        sum += e;
    }
    let l1 = match convention {
        L1Convention::MeasureWeighted => grid.dx * sum,
        L1Convention::MeanAbsolute => sum / grid.n as f64,
    };
    ErrorPair { l_inf: linf, l_1: l1 }
}

pub fn error_norms_2d(
    field: &ScalarField2d,
    oracle: impl Fn(f64, f64) -> f64,
    convention: L1Convention,
) -> ErrorPair {
    let (gx, gy) = (field.grid.x, field.grid.y);
    let mut linf = 0.0_f64;
    let mut sum = 0.0_f64;
    for j in 0..gy.n {
        let y = gy.node(j as isize);
        for i in 0..gx.n {
            let e = (field.get(i, j) - oracle(gx.node(i as isize), y)).abs();
            linf = linf.max(e);
            sum += e;
        }
    }
    let l1 = match convention {
        L1Convention::MeasureWeighted => gx.dx * gy.dx * sum,
        L1Convention::MeanAbsolute => sum / (gx.n * gy.n) as f64,
    };
    ErrorPair { l_inf: linf, l_1: l1 }
}

/// One resolution of a convergence study; `errors` is `None` when the solve
/// blew up.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    pub errors: Option<ErrorPair>,
    pub order_inf: Option<f64>,
    pub order_1: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub scheme: Indicator,
    pub two_dimensional: bool,
    pub rows: Vec<TableRow>,
}

impl ConvergenceTable {
    pub fn new(scheme: Indicator, two_dimensional: bool) -> Self {
        Self {
            scheme,
            two_dimensional,
            rows: Vec::new(),
        }
    }

    pub fn push_errors(&mut self, n: usize, errors: Option<ErrorPair>) {
        self.rows.push(TableRow {
            n,
            errors,
            order_inf: None,
            order_1: None,
        });
    }

    /// Observed orders from successive rows: log(e_coarse/e_fine) / log(ratio).
    pub fn compute_orders(&mut self) {
        for k in 1..self.rows.len() {
            let ratio = self.rows[k].n as f64 / self.rows[k - 1].n as f64;
            let (prev, cur) = (self.rows[k - 1].errors, self.rows[k].errors);
            if let (Some(p), Some(c)) = (prev, cur) {
                if p.l_inf > 0.0 && c.l_inf > 0.0 {
                    self.rows[k].order_inf = Some((p.l_inf / c.l_inf).ln() / ratio.ln());
                }
                if p.l_1 > 0.0 && c.l_1 > 0.0 {
                    self.rows[k].order_1 = Some((p.l_1 / c.l_1).ln() / ratio.ln());
                }
            }
        }
    }

    pub fn row_label(&self, n: usize) -> String {
        if self.two_dimensional {
            format!("{n}x{n}")
        } else {
            format!("{n}")
        }
    }
}

/// Knobs of a convergence study.
#[derive(Debug, Clone, Copy)]
pub struct StudyConfig {
    pub t_final: f64,
    pub cfl: f64,
    /// Shrink dt by (dx/dx_ref)^(2/3), dx_ref from the coarsest grid, so the
    /// time error cannot mask fifth-order spatial convergence.
    pub accuracy_scaled: bool,
    pub epsilon: f64,
    pub convention: L1Convention,
    pub workers: usize,
}

impl StudyConfig {
    pub fn new(t_final: f64) -> Self {
        Self {
            t_final,
            cfl: 0.6,
            accuracy_scaled: true,
            epsilon: 1e-6,
            convention: L1Convention::MeasureWeighted,
            workers: 1,
        }
    }
}

/// Solve `spec` on every grid in `ns` and assemble the error/order table.
/// Requires an exact or characteristic oracle on the problem.
pub fn convergence_study(
    spec: &ProblemSpec,
    ns: &[usize],
    scheme: Indicator,
    config: &StudyConfig,
) -> Result<ConvergenceTable> {
    if ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HjError::Config("grid list must be strictly increasing".into()));
    }
    let oracle = spec
        .problem
        .exact
        .clone()
        .ok_or_else(|| HjError::Config(format!("{} has no exact oracle for tables", spec.id)))?;

    let width = spec.problem.x_range.1 - spec.problem.x_range.0;
    let dx_ref = width / ns[0] as f64;
    let two_dimensional = matches!(spec.problem.dimension, crate::hamiltonian::Dimension::Two);

    let mut params = WeightParams::new(scheme);
    params.epsilon = config.epsilon;

    let run_one = |n: usize| -> Option<ErrorPair> {
        let mut controls = TimeControls::new(config.t_final);
        controls.cfl = config.cfl;
        if config.accuracy_scaled {
            controls.mode = DtMode::AccuracyScaled { dx_ref };
        }
        match integrate(&spec.problem, n, None, &controls, &params) {
            Ok((Solution::One(field), _)) => Some(error_norms_1d(
                &field,
                |x| oracle(x, 0.0, config.t_final),
                config.convention,
            )),
            Ok((Solution::Two(field), _)) => Some(error_norms_2d(
                &field,
                |x, y| oracle(x, y, config.t_final),
                config.convention,
            )),
            Err(_) => None,
        }
    };

    let results: Vec<Option<ErrorPair>> = if config.workers > 1 {
        let mut slots: Vec<Option<ErrorPair>> = vec![None; ns.len()];
        let chunk = ns.len().div_ceil(config.workers);
        std::thread::scope(|scope| {
            for (ns_chunk, slot_chunk) in ns.chunks(chunk).zip(slots.chunks_mut(chunk)) {
                scope.spawn(|| {
                    for (n, slot) in ns_chunk.iter().zip(slot_chunk.iter_mut()) {
                        *slot = run_one(*n);
                    }
                });
            }
        });
        slots
    } else {
        ns.iter().map(|&n| run_one(n)).collect()
    };

    let mut table = ConvergenceTable::new(scheme, two_dimensional);
    for (&n, errors) in ns.iter().zip(results) {
        table.push_errors(n, errors);
    }
    table.compute_orders();
    Ok(table)
}

/// Output layout for convergence tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    AlignedText,
}

/// Scientific notation with 3 significant digits and a 2-digit exponent,
/// matching the convergence-table style (e.g. 2.74e-03).
pub fn sci3(x: f64) -> String {
    if !x.is_finite() {
        return "nan".into();
    }
    let s = format!("{x:.2e}");
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

fn order_text(order: Option<f64>, placeholder: &str) -> String {
    match order {
        Some(o) => format!("{o:.2}"),
        None => placeholder.to_string(),
    }
}

/// Render a convergence table; byte-stable for identical input.
pub fn emit_table(table: &ConvergenceTable, format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str("N,Linf_error,Linf_order,L1_error,L1_order\n");
            for row in &table.rows {
                let (linf, l1) = match row.errors {
                    Some(e) => (sci3(e.l_inf), sci3(e.l_1)),
                    None => ("blowup".into(), "blowup".into()),
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    table.row_label(row.n),
                    linf,
                    order_text(row.order_inf, ""),
                    l1,
                    order_text(row.order_1, ""),
                ));
            }
        }
        TableFormat::AlignedText => {
            out.push_str(&format!("{}\n", table.scheme.table_label()));
            out.push_str(&format!(
                "{:>10} {:>12} {:>7} {:>12} {:>7}\n",
                "N", "Linf error", "Order", "L1 error", "Order"
            ));
            for row in &table.rows {
                let (linf, l1) = match row.errors {
                    Some(e) => (sci3(e.l_inf), sci3(e.l_1)),
                    None => ("blowup".into(), "blowup".into()),
                };
                out.push_str(&format!(
                    "{:>10} {:>12} {:>7} {:>12} {:>7}\n",
                    table.row_label(row.n),
                    linf,
                    order_text(row.order_inf, "..."),
                    l1,
                    order_text(row.order_1, "..."),
                ));
            }
        }
    }
    out
}

/// Output layout for solution data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionFormat {
    Csv,
    GnuplotGrid,
}

fn value_text(v: f64) -> String {
    format!("{v:.12e}")
}

/// Emit nodal values of a 1D field, optionally alongside an oracle column.
pub fn emit_solution_1d(
    field: &ScalarField1d,
    oracle: Option<&dyn Fn(f64) -> f64>,
    format: SolutionFormat,
) -> String {
    let grid = field.grid;
    let mut out = String::new();
    if format == SolutionFormat::Csv {
        out.push_str(match oracle {
            Some(_) => "x,numeric,exact\n",
            None => "x,numeric\n",
        });
    }
    let sep = match format {
        SolutionFormat::Csv => ",",
        SolutionFormat::GnuplotGrid => " ",
    };
    for (i, v) in field.interior().iter().enumerate() {
        let x = grid.node(i as isize);
        out.push_str(&value_text(x));
        out.push_str(sep);
        out.push_str(&value_text(*v));
        if let Some(f) = oracle {
            out.push_str(sep);
            out.push_str(&value_text(f(x)));
        }
        out.push('\n');
    }
    out
}

/// Emit a 2D field; the gnuplot-grid layout writes one x-block per column
/// of nodes, blocks separated by blank lines, ready for contour/surface
/// plotting.
pub fn emit_solution_2d(
    field: &ScalarField2d,
    oracle: Option<&dyn Fn(f64, f64) -> f64>,
    format: SolutionFormat,
) -> String {
    let (gx, gy) = (field.grid.x, field.grid.y);
    let mut out = String::new();
    match format {
        SolutionFormat::Csv => {
            out.push_str(match oracle {
                Some(_) => "x,y,numeric,exact\n",
                None => "x,y,numeric\n",
            });
            for j in 0..gy.n {
                let y = gy.node(j as isize);
                for i in 0..gx.n {
                    let x = gx.node(i as isize);
                    out.push_str(&value_text(x));
                    out.push(',');
                    out.push_str(&value_text(y));
                    out.push(',');
                    out.push_str(&value_text(field.get(i, j)));
                    if let Some(f) = oracle {
                        out.push(',');
                        out.push_str(&value_text(f(x, y)));
                    }
                    out.push('\n');
                }
            }
        }
        SolutionFormat::GnuplotGrid => {
            for i in 0..gx.n {
                let x = gx.node(i as isize);
                for j in 0..gy.n {
                    let y = gy.node(j as isize);
                    out.push_str(&value_text(x));
                    out.push(' ');
                    out.push_str(&value_text(y));
                    out.push(' ');
                    out.push_str(&value_text(field.get(i, j)));
                    out.push('\n');
                }
                if i + 1 < gx.n {
                    out.push('\n');
                }
            }
        }
    }
    out
}
