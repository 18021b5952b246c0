//! File formats written by the command-line driver.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dirichlet::{assemble_singular_parts, CutoffSpec, DirichletReport, DirichletSolution};
use crate::error::{KimuraError, Result};
use crate::regular::StageReport;
use crate::simplex::{ExpansionDoc, SpectralExpansion};

use super::fields::FieldSpec;

/// Cutoff descriptor of one chart; `j` is the 1-based vertex index. The
/// inclusion–exclusion subsets are implicit (all nonempty subsets).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartDoc {
    pub j: usize,
    pub epsilon: f64,
}

/// A Dirichlet solution: enough to evaluate `u` anywhere in the simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletDoc {
    pub n: usize,
    pub f: FieldSpec,
    pub g: FieldSpec,
    pub tg: ExpansionDoc,
    pub v0: ExpansionDoc,
    pub charts: Vec<ChartDoc>,
}

impl DirichletDoc {
    pub fn new(sol: &DirichletSolution, f: FieldSpec, g: FieldSpec) -> Self {
        DirichletDoc {
            n: sol.n,
            f,
            g,
            tg: sol.tg.to_document(),
            v0: sol.v0.to_document(),
            charts: sol
                .singular
                .iter()
                .map(|s| ChartDoc {
                    j: s.chart() + 1,
                    epsilon: s.cutoff().epsilon,
                })
                .collect(),
        }
    }

    /// Rebuilds the solution; the singular parts are recomputed from `f`
    /// and `tg`.
    pub fn restore(&self) -> Result<DirichletSolution> {
        let tg = SpectralExpansion::from_document(&self.tg)?;
        let v0 = SpectralExpansion::from_document(&self.v0)?;
        if tg.n() != self.n || v0.n() != self.n {
            return Err(KimuraError::Format("expansion dimensions disagree with n".into()));
        }
        let charts: Vec<usize> = self.charts.iter().map(|c| c.j).collect();
        if charts != (1..=self.n + 1).collect::<Vec<_>>() {
            return Err(KimuraError::Format(format!(
                "expected charts 1..={} in order, found {charts:?}",
                self.n + 1
            )));
        }
        let epsilon = self.charts[0].epsilon;
        if self.charts.iter().any(|c| c.epsilon != epsilon) {
            return Err(KimuraError::Format("charts use different cutoff widths".into()));
        }
        let cutoff = CutoffSpec::new(epsilon)?;
        let (_, singular) = assemble_singular_parts(self.f.build(self.n)?, &tg, cutoff)?;
        let report = DirichletReport {
            epsilon,
            boundary_stages: Vec::new(),
            interior: StageReport {
                k: self.n,
                faces: Vec::new(),
            },
            boundary_trace_error: 0.0,
            warnings: Vec::new(),
        };
        DirichletSolution::from_parts(tg, singular, v0, report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// CSV text: a header row, then rows of floats printed with 17
/// significant digits.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            text: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, cells: &[Cell]) {
        let mut first = true;
        for c in cells {
            if !first {
                self.text.push(',');
            }
            first = false;
            match c {
                Cell::Int(v) => write!(self.text, "{v}"),
                Cell::Float(v) => write!(self.text, "{}", float(*v)),
                Cell::Text(s) => write!(self.text, "{s}"),
            }
            .expect("writing to a string");
        }
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// `{:.16e}` formatting: 17 significant digits, exact round trip.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}
