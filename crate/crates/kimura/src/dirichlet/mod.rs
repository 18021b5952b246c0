//! Dirichlet problem `L_K u = f` in the simplex, `u = g` on its boundary.
//!
//! The solution is assembled as `u = tg + Σ_j ṽ₁^{(j)} + v₀`:
//!
//! * `tg` extends `g` stratum by stratum into the simplex, with `L_K tg`
//!   known from its coefficients;
//! * `f₁ = f - L_K tg` is split by a partition of unity `{φ_j}`, and in the
//!   chart of each vertex the explicit logarithmic part `ṽ₁^{(j)}` of
//!   `φ_j f₁` is written down;
//! * `v₀` solves `L_K v₀ = f₁ - Σ_j L_K ṽ₁^{(j)}`, a right-hand side that
//!   vanishes on the boundary, by expansion in interior eigenfunctions.

mod boundary;
mod closed_form;
mod cutoff;
mod singular;

use std::sync::Arc;

pub use boundary::{extend_boundary_data, BoundaryData, BoundaryExtension, CONSISTENCY_TOLERANCE};
pub use closed_form::{closed_form_mean_exit, eta};
pub use cutoff::{partition_of_unity, smooth_step, CutoffSpec, PartitionOfUnity};
pub use singular::{build_singular_part, SingularPart};

use serde::Serialize;

use crate::error::{KimuraError, Result};
use crate::field::Field;
use crate::regular::{stratify, StageReport};
use crate::scalar::{Jet, MAX_JET_DIM};
use crate::simplex::{ExpansionEvaluator, SpectralExpansion};

/// Largest cutoff width used when none is requested.
pub const DEFAULT_EPSILON: f64 = 0.2;

/// Default cutoff width: 0.2, reduced to the inner radius `1/(2(n+1))` of
/// the partition of unity so that the cutoff is 1 on the support of each
/// localized piece.
pub fn default_epsilon(n: usize) -> f64 {
    DEFAULT_EPSILON.min(PartitionOfUnity::new(n).inner_radius())
}

/// Default quadrature order for the interior correction.
pub fn default_order(n: usize) -> usize {
    if n <= 2 {
        48
    } else {
        24
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletProblem {
    pub n: usize,
    pub dmax: usize,
    pub order: usize,
    pub epsilon: Option<f64>,
}

impl DirichletProblem {
    pub fn new(n: usize, dmax: usize, order: usize) -> Self {
        DirichletProblem {
            n,
            dmax,
            order,
            epsilon: None,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or_else(|| default_epsilon(self.n))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_JET_DIM {
            return Err(KimuraError::contract(format!(
                "the Dirichlet solver supports 1 <= n <= {MAX_JET_DIM}, got n = {}",
                self.n
            )));
        }
        if self.order < self.dmax / 2 + 1 {
            return Err(KimuraError::contract(format!(
                "quadrature order {} is below the resolution guard dmax/2 + 1 = {}",
                self.order,
                self.dmax / 2 + 1
            )));
        }
        let eps = self.epsilon();
        CutoffSpec::new(eps)?;
        let limit = PartitionOfUnity::new(self.n).inner_radius();
        if eps > limit + 1e-15 {
            return Err(KimuraError::contract(format!(
                "cutoff width {eps} exceeds 1/(2(n+1)) = {limit}; the cutoff would not be 1 on the support \
                 of the localized data"
            )));
        }
        Ok(())
    }
}

/// `f₁ = f - L_K tg`.
struct ReducedData {
    f: Arc<dyn Field>,
    ltg: ExpansionEvaluator,
}

impl Field for ReducedData {
    fn value(&self, x: &[f64]) -> f64 {
        self.f.value(x) - self.ltg.evaluate(x)
    }
    fn jet(&self, x: &[Jet]) -> Jet {
        self.f.jet(x) - self.ltg.evaluate(x)
    }
}

/// `φ_j f₁`.
struct Localized {
    partition: PartitionOfUnity,
    j: usize,
    inner: Arc<dyn Field>,
}

impl Field for Localized {
    fn value(&self, x: &[f64]) -> f64 {
        let phi = self.partition.eval(self.j, x);
        if phi == 0.0 {
            return 0.0;
        }
        phi * self.inner.value(x)
    }
    fn jet(&self, x: &[Jet]) -> Jet {
        let phi = self.partition.eval(self.j, x);
        if phi.v == 0.0 && phi.g.iter().all(|&g| g == 0.0) {
            return Jet::constant(0.0);
        }
        phi * self.inner.jet(x)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DirichletReport {
    pub epsilon: f64,
    pub boundary_stages: Vec<StageReport>,
    pub interior: StageReport,
    /// Largest `|tg - g|` over sample points of the boundary.
    pub boundary_trace_error: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct DirichletSolution {
    pub n: usize,
    pub tg: SpectralExpansion,
    pub singular: Vec<SingularPart>,
    pub v0: SpectralExpansion,
    pub report: DirichletReport,
    tg_eval: ExpansionEvaluator,
    v0_eval: ExpansionEvaluator,
}

impl DirichletSolution {
    /// Reassembles a solution from its parts.
    pub fn from_parts(tg: SpectralExpansion, singular: Vec<SingularPart>, v0: SpectralExpansion, report: DirichletReport) -> Result<Self> {
        let n = tg.n();
        if v0.n() != n || singular.iter().any(|s| s.n() != n) {
            return Err(KimuraError::contract("solution parts disagree on the dimension"));
        }
        Ok(DirichletSolution {
            n,
            tg_eval: tg.evaluator()?,
            v0_eval: v0.evaluator()?,
            tg,
            singular,
            v0,
            report,
        })
    }

    /// `u(x) = tg(x) + Σ ṽ₁(x) + v₀(x)`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let base = self.tg_eval.value(x)?;
        Ok(base + self.singular_value(x) + self.v0_eval.evaluate(x))
    }

    pub fn singular_value(&self, x: &[f64]) -> f64 {
        self.singular.iter().map(|s| s.value(x)).sum()
    }
}

/// Forms `f₁ = f - L_K tg` and the singular part of `φ_j f₁` in every
/// chart. Returns `f₁` alongside the parts.
pub fn assemble_singular_parts(
    f: Arc<dyn Field>,
    tg: &SpectralExpansion,
    cutoff: CutoffSpec,
) -> Result<(Arc<dyn Field>, Vec<SingularPart>)> {
    let n = tg.n();
    let reduced: Arc<dyn Field> = Arc::new(ReducedData {
        f,
        ltg: tg.apply_operator_diagonal().evaluator()?,
    });
    let partition = PartitionOfUnity::new(n);
    let singular = (0..=n)
        .map(|j| {
            let local: Arc<dyn Field> = Arc::new(Localized {
                partition,
                j,
                inner: reduced.clone(),
            });
            build_singular_part(local, n, j, cutoff)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((reduced, singular))
}

/// Solves the Dirichlet problem.
pub fn solve_dirichlet(prob: &DirichletProblem, f: Arc<dyn Field>, g: &BoundaryData) -> Result<DirichletSolution> {
    prob.validate()?;
    let n = prob.n;
    let eps = prob.epsilon();
    let cutoff = CutoffSpec::new(eps)?;

    let ext = extend_boundary_data(g, n, prob.dmax, prob.order)?;
    let tg = ext.tg;
    let (reduced, singular) = assemble_singular_parts(f, &tg, cutoff)?;

    let rhs = |x: &[f64]| reduced.value(x) - singular.iter().map(|s| s.apply_kimura(x)).sum::<f64>();
    let (v0, _, mut stages) = stratify(n, n..=n, prob.dmax, prob.order, &rhs, SpectralExpansion::new(n), true)?;
    let interior = stages.pop().expect("one stage");

    let tg_eval = tg.evaluator()?;
    let mut trace: f64 = 0.0;
    for x in boundary_samples(n) {
        trace = trace.max((tg_eval.evaluate(&x) - g.value(&x)).abs());
    }

    let mut warnings = Vec::new();
    for s in ext.stages.iter().chain(std::iter::once(&interior)) {
        for fr in s.faces.iter().filter(|fr| fr.under_resolved) {
            warnings.push(format!(
                "face {:?}: top degree shell carries {:.2e} of the coefficient energy",
                fr.face, fr.tail_fraction
            ));
        }
    }
    let report = DirichletReport {
        epsilon: eps,
        boundary_stages: ext.stages,
        interior,
        boundary_trace_error: trace,
        warnings,
    };
    DirichletSolution::from_parts(tg, singular, v0, report)
}

/// Deterministic points on every facet of the n-simplex.
pub fn boundary_samples(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for j in 0..=n {
        for s in 0..12 {
            let mut x = vec![0.0; n + 1];
            let mut total = 0.0;
            for (i, v) in x.iter_mut().enumerate() {
                if i != j {
                    *v = 0.05 + ((s * 7 + i * 3) % 11) as f64;
                    total += *v;
                }
            }
            x.iter_mut().for_each(|v| *v /= total);
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Constant;

    #[test]
    fn one_dimensional_mean_exit_time() {
        // the cutoff band is narrow, so the interior correction needs a high degree
        let prob = DirichletProblem::new(1, 512, 600);
        let sol = solve_dirichlet(&prob, Arc::new(Constant(-1.0)), &BoundaryData::zero()).unwrap();
        let mut worst: f64 = 0.0;
        for i in 1..20 {
            let t = i as f64 / 20.0;
            let x = [t, 1.0 - t];
            worst = worst.max((sol.evaluate(&x).unwrap() - closed_form_mean_exit(&x, 1).unwrap()).abs());
        }
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn constant_boundary_data() {
        let prob = DirichletProblem::new(2, 6, 6);
        let g = BoundaryData::Global(Arc::new(Constant(1.5)));
        let sol = solve_dirichlet(&prob, Arc::new(Constant(0.0)), &g).unwrap();
        for x in [[0.2, 0.3, 0.5], [0.6, 0.2, 0.2]] {
            assert!((sol.evaluate(&x).unwrap() - 1.5).abs() < 1e-12);
            assert!(sol.singular_value(&x).abs() < 1e-14);
        }
    }

    #[test]
    fn epsilon_contract() {
        let mut prob = DirichletProblem::new(2, 4, 4);
        assert!((prob.epsilon() - 1.0 / 6.0).abs() < 1e-15);
        prob.epsilon = Some(0.2);
        assert!(matches!(prob.validate(), Err(KimuraError::Contract(_))));
        assert!(DirichletProblem::new(5, 4, 4).validate().is_err());
    }
}
