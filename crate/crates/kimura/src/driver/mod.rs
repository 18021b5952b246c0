//! Command-line driver: a validated [`RunConfig`] in, text and files out.
//!
//! The `kimura` binary only parses arguments into a [`RunConfig`] (or reads
//! one from JSON) and calls [`run`].

mod convergence;
mod documents;
mod fields;
mod verify;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub use convergence::{
    coefficient_study, decay_slope, dirichlet_study, probe_points, CoefficientRow, DirichletRow,
};
pub use documents::{float, Cell, ChartDoc, Csv, DirichletDoc};
pub use fields::{FieldSpec, PolynomialFile, PolynomialModel, PolynomialTerm};
pub use verify::{run_verify, EigenRow, Failure, SuiteReport, VerifyOptions, VerifyReport, EXACT_BASIS_MAX_DIM};

use crate::dirichlet::{default_order, solve_dirichlet, BoundaryData, DirichletProblem};
use crate::error::{KimuraError, Result};
use crate::jacobi1d::{gauss_quadrature, JacobiWeight};
use crate::regular::{solve_regular, RegularProblem};
use crate::simplex::{
    eigenspace_multiplicity, face_eigenvalue, simplex_quadrature, FaceSet, SimplexBasis,
};

/// Process exit status for a contract error (bad input or parameters).
pub const EXIT_CONTRACT: i32 = 2;
/// Process exit status for a numerical or verification failure.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Basis,
    Quad,
    Eigen,
    SolveRegular,
    SolveDirichlet,
    Verify,
    Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Study {
    Coefficients,
    Dirichlet,
}

/// Everything a run needs. Unset parameters take per-command defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub dmax: Option<usize>,
    #[serde(default, rename = "N")]
    pub order: Option<usize>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    /// Weight exponents `α_1..α_{k+1}`.
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    /// Projective points at which `basis` evaluates every member.
    #[serde(default)]
    pub points: Vec<Vec<f64>>,
    #[serde(default)]
    pub f: Option<FieldSpec>,
    #[serde(default)]
    pub g: Option<FieldSpec>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub report: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub cases: Option<usize>,
    #[serde(default)]
    pub study: Option<Study>,
    /// Quadrature orders for the Dirichlet convergence study.
    #[serde(default)]
    pub orders: Option<Vec<usize>>,
    #[serde(default)]
    pub perturb_operator: bool,
    /// Treat under-resolution warnings as failures.
    #[serde(default)]
    pub strict: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            n: None,
            k: None,
            dmax: None,
            order: None,
            epsilon: None,
            weights: None,
            points: Vec::new(),
            f: None,
            g: None,
            out: None,
            report: None,
            seed: None,
            cases: None,
            study: None,
            orders: None,
            perturb_operator: false,
            strict: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Simplex dimension for `basis` (default 2) and `quad` (default 1).
    fn face_dim(&self) -> usize {
        self.k.unwrap_or(if self.command == Command::Basis { 2 } else { 1 })
    }

    fn dmax_or(&self, default: usize) -> usize {
        self.dmax.unwrap_or(default)
    }

    /// Default order: twice the guard `dmax/2 + 1`.
    fn order_for(&self, dmax: usize) -> usize {
        self.order.unwrap_or(dmax + 2)
    }

    fn require_positive(name: &str, v: usize) -> Result<usize> {
        if v == 0 {
            Err(KimuraError::contract(format!("--{name} must be at least 1")))
        } else {
            Ok(v)
        }
    }

    /// Checks parameter ranges for the selected command.
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.n {
            Self::require_positive("n", n)?;
        }
        if let Some(k) = self.k {
            Self::require_positive("k", k)?;
        }
        if let Some(o) = self.order {
            Self::require_positive("N", o)?;
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e < 0.5) {
                return Err(KimuraError::contract(format!("--epsilon must lie in (0, 1/2), got {e}")));
            }
        }
        if let Some(w) = &self.weights {
            if let Some(a) = w.iter().find(|a| !(**a > -1.0)) {
                return Err(KimuraError::contract(format!("weight exponents must exceed -1, got {a}")));
            }
            let k = self.face_dim();
            if w.len() != k + 1 {
                return Err(KimuraError::contract(format!(
                    "--weights needs k + 1 = {} exponents, got {}",
                    k + 1,
                    w.len()
                )));
            }
        }
        match self.command {
            Command::SolveRegular | Command::SolveDirichlet if self.f.is_none() => {
                Err(KimuraError::contract("a right-hand side --f is required"))
            }
            Command::Convergence if self.study.unwrap_or(Study::Coefficients) == Study::Coefficients && self.f.is_none() => {
                Err(KimuraError::contract("the coefficient study needs a data function --f"))
            }
            _ => Ok(()),
        }
    }
}

/// Result of a run: standard output, diagnostics and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: Vec::new(),
            exit_code: 0,
        }
    }
}

/// Exit status for a library error.
pub fn exit_code(err: &KimuraError) -> i32 {
    match err {
        KimuraError::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_CONTRACT,
    }
}

/// Writes `text` to `path` if given; otherwise returns it for stdout.
fn emit(path: &Option<PathBuf>, text: String) -> Result<String> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::Basis => run_basis(cfg),
        Command::Quad => run_quad(cfg),
        Command::Eigen => run_eigen(cfg),
        Command::SolveRegular => run_solve_regular(cfg),
        Command::SolveDirichlet => run_solve_dirichlet(cfg),
        Command::Verify => run_verify_command(cfg),
        Command::Convergence => run_convergence(cfg),
    }
}

fn weights_or_ones(cfg: &RunConfig, k: usize) -> Vec<f64> {
    cfg.weights.clone().unwrap_or_else(|| vec![1.0; k + 1])
}

/// CSV `m,degree,norm_sq,value_1,..`: every basis member with its squared
/// norm under a quadrature rule and its values at the requested points.
fn run_basis(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.face_dim();
    let dmax = cfg.dmax_or(4);
    let alphas = weights_or_ones(cfg, k);
    let basis = SimplexBasis::new(k, &alphas, dmax)?;
    for p in &cfg.points {
        if p.len() != k {
            return Err(KimuraError::DimensionMismatch { expected: k, got: p.len() });
        }
    }
    let rule = simplex_quadrature(&alphas, cfg.order_for(dmax))?;
    let mut norms = vec![0.0; basis.len()];
    let mut vals = vec![0.0; basis.len()];
    for (y, w) in rule.iter() {
        basis.evaluate_all_into(y, &mut vals);
        for (s, v) in norms.iter_mut().zip(&vals) {
            *s += w * v * v;
        }
    }
    let mut header = vec!["m".to_string(), "degree".into(), "norm_sq".into()];
    header.extend((1..=cfg.points.len()).map(|i| format!("value_{i}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header);
    let at: Vec<Vec<f64>> = cfg.points.iter().map(|p| basis.evaluate_all(p)).collect();
    for (i, m) in basis.indices().iter().enumerate() {
        let label = m.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let mut row = vec![Cell::Text(label), Cell::Int(m.degree() as i64), Cell::Float(norms[i])];
        row.extend(at.iter().map(|v| Cell::Float(v[i])));
        csv.row(&row);
    }
    Ok(Outcome::ok(emit(&cfg.out, csv.finish())?))
}

/// CSV `y_1..y_k,weight` for the weighted simplex rule; for `k = 1` the
/// Gauss–Jacobi rule itself.
fn run_quad(cfg: &RunConfig) -> Result<Outcome> {
    let k = cfg.face_dim();
    let order = cfg.order.unwrap_or(8);
    let alphas = weights_or_ones(cfg, k);
    let header: Vec<String> = (1..=k).map(|i| format!("y{i}")).chain(["weight".to_string()]).collect();
    let mut csv = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>());
    if k == 1 {
        let rule = gauss_quadrature(JacobiWeight::new(alphas[0], alphas[1])?, order)?;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            csv.row(&[Cell::Float(*x), Cell::Float(*w)]);
        }
    } else {
        let rule = simplex_quadrature(&alphas, order)?;
        for (y, w) in rule.iter() {
            let mut row: Vec<Cell> = y.iter().map(|&v| Cell::Float(v)).collect();
            row.push(Cell::Float(w));
            csv.row(&row);
        }
    }
    Ok(Outcome::ok(emit(&cfg.out, csv.finish())?))
}

/// CSV `k,d,eigenvalue,multiplicity,faces` for every face dimension of the
/// n-simplex.
fn run_eigen(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n.unwrap_or(2);
    let dmax = cfg.dmax_or(6);
    let mut csv = Csv::new(&["k", "d", "eigenvalue", "multiplicity", "faces"]);
    for k in 1..=n {
        let faces = FaceSet::all_of_dim(n, k).len();
        for d in 0..=dmax {
            csv.row(&[
                Cell::Int(k as i64),
                Cell::Int(d as i64),
                Cell::Float(face_eigenvalue(k, d)),
                Cell::Int(eigenspace_multiplicity(k, d) as i64),
                Cell::Int(faces as i64),
            ]);
        }
    }
    Ok(Outcome::ok(emit(&cfg.out, csv.finish())?))
}

fn finish_with_warnings(cfg: &RunConfig, stdout: String, warnings: Vec<String>, report_json: String) -> Result<Outcome> {
    if let Some(p) = &cfg.report {
        std::fs::write(p, report_json)?;
    }
    let exit_code = if cfg.strict && !warnings.is_empty() { EXIT_NUMERIC } else { 0 };
    Ok(Outcome {
        stdout,
        stderr: warnings.into_iter().map(|w| format!("warning: {w}")).collect(),
        exit_code,
    })
}

/// Writes the solution as SpectralExpansion JSON.
fn run_solve_regular(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n.unwrap_or(2);
    let dmax = cfg.dmax_or(8);
    let f = cfg.f.as_ref().expect("validated").build(n)?;
    let prob = RegularProblem::new(n, dmax, cfg.order_for(dmax));
    let sol = solve_regular(&prob, |x: &[f64]| f.value(x))?;
    let report = serde_json::to_string_pretty(&sol.report)?;
    let stdout = emit(&cfg.out, sol.u.to_json())?;
    finish_with_warnings(cfg, stdout, sol.report.warnings.clone(), report)
}

/// Writes a [`DirichletDoc`].
fn run_solve_dirichlet(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n.unwrap_or(2);
    let dmax = cfg.dmax_or(24);
    let order = cfg.order.unwrap_or_else(|| default_order(n).max(dmax / 2 + 1));
    let fspec = cfg.f.clone().expect("validated");
    let gspec = cfg.g.clone().unwrap_or(FieldSpec::Constant { value: 0.0 });
    let mut prob = DirichletProblem::new(n, dmax, order);
    prob.epsilon = cfg.epsilon;
    let sol = solve_dirichlet(&prob, fspec.build(n)?, &BoundaryData::Global(gspec.build(n)?))?;
    let report = serde_json::to_string_pretty(&sol.report)?;
    let doc = DirichletDoc::new(&sol, fspec, gspec);
    let stdout = emit(&cfg.out, doc.to_json())?;
    finish_with_warnings(cfg, stdout, sol.report.warnings.clone(), report)
}

/// JSON report on stdout; exit status 3 if any identity fails.
fn run_verify_command(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n.unwrap_or(2);
    let mut opts = VerifyOptions::new(n, cfg.dmax_or(4), cfg.seed.unwrap_or(0));
    if let Some(c) = cfg.cases {
        opts.cases = c;
    }
    opts.perturb_operator = cfg.perturb_operator;
    let report = run_verify(&opts)?;
    let text = serde_json::to_string_pretty(&report)?;
    let mut out = Outcome::ok(emit(&cfg.out, text)?);
    if !report.passed {
        out.exit_code = EXIT_NUMERIC;
        for s in report.suites.iter().filter(|s| !s.passed) {
            for f in &s.failures {
                out.stderr.push(format!("{} failed: {} ({})", s.name, f.identity, f.inputs));
            }
        }
    }
    Ok(out)
}

/// CSV `d,max_abs_coefficient,probe_residual` or
/// `N,dmax,max_error` depending on the study.
fn run_convergence(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.n.unwrap_or(2);
    let text = match cfg.study.unwrap_or(Study::Coefficients) {
        Study::Coefficients => {
            let dmax = cfg.dmax_or(24);
            let f = cfg.f.as_ref().expect("validated").build(n)?;
            let rows = coefficient_study(n, dmax, cfg.order_for(dmax), &f)?;
            let mut csv = Csv::new(&["d", "max_abs_coefficient", "probe_residual"]);
            for r in rows {
                csv.row(&[Cell::Int(r.d as i64), Cell::Float(r.max_abs_coefficient), Cell::Float(r.probe_residual)]);
            }
            csv.finish()
        }
        Study::Dirichlet => {
            let orders = cfg.orders.clone().unwrap_or_else(|| vec![24, 48, 96]);
            let rows = dirichlet_study(n, &orders, cfg.epsilon)?;
            let mut csv = Csv::new(&["N", "dmax", "max_error"]);
            for r in rows {
                csv.row(&[Cell::Int(r.order as i64), Cell::Int(r.dmax as i64), Cell::Float(r.max_error)]);
            }
            csv.finish()
        }
    };
    Ok(Outcome::ok(emit(&cfg.out, text)?))
}
