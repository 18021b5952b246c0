//! Regular problem `L_K u = f`, solved one boundary stratum at a time.
//!
//! Stage `k` expands `f - L_K(u_1 + .. + u_{k-1})` on every open k-face (the
//! residual vanishes on the (k-1)-skeleton), divides each coefficient by its
//! eigenvalue and extends the result canonically to the whole simplex.
//! `L_K` of the earlier stages is known exactly from their coefficients.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{KimuraError, Result};
use crate::simplex::{
    expand_with_rule, face_eigenvalue, lebesgue_rule, FaceSet, MultiIndex, SimplexBasis, SimplexRule,
    SpectralExpansion,
};

/// Largest vertex value of `f` treated as zero when vanishing is required.
pub const VERTEX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RegularProblem {
    pub n: usize,
    /// Truncation degree of every face expansion.
    pub dmax: usize,
    /// Gauss points per cube direction.
    pub order: usize,
    /// Values of `u` at the vertices (the null space of `L_K`); zero if unset.
    pub vertex_values: Option<Vec<f64>>,
    /// Reject `f` that does not vanish at the vertices instead of
    /// subtracting its vertex values.
    pub require_vanishing_vertices: bool,
}

impl RegularProblem {
    pub fn new(n: usize, dmax: usize, order: usize) -> Self {
        RegularProblem {
            n,
            dmax,
            order,
            vertex_values: None,
            require_vanishing_vertices: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(KimuraError::contract("the simplex dimension must be at least 1"));
        }
        if self.order < self.dmax / 2 + 1 {
            return Err(KimuraError::contract(format!(
                "quadrature order {} is below the resolution guard dmax/2 + 1 = {}",
                self.order,
                self.dmax / 2 + 1
            )));
        }
        if let Some(v) = &self.vertex_values {
            if v.len() != self.n + 1 {
                return Err(KimuraError::DimensionMismatch {
                    expected: self.n + 1,
                    got: v.len(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FaceReport {
    /// 1-based face indices.
    pub face: Vec<usize>,
    pub tail_fraction: f64,
    pub under_resolved: bool,
    pub max_abs_coefficient: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StageReport {
    pub k: usize,
    pub faces: Vec<FaceReport>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ResidualReport {
    /// `f(e_j)`, removed from the right-hand side before solving.
    pub removed_vertex_values: Vec<f64>,
    pub stages: Vec<StageReport>,
    pub warnings: Vec<String>,
}

impl ResidualReport {
    pub fn is_resolved(&self) -> bool {
        self.stages.iter().all(|s| s.faces.iter().all(|f| !f.under_resolved))
    }
}

#[derive(Debug, Clone)]
pub struct RegularSolution {
    pub u: SpectralExpansion,
    pub report: ResidualReport,
}

/// Solves `L_K u = f` with `f` given on affine points of the closed simplex.
pub fn solve_regular<F>(prob: &RegularProblem, f: F) -> Result<RegularSolution>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    prob.validate()?;
    let n = prob.n;
    let vertex: Vec<f64> = (0..=n)
        .map(|j| {
            let mut e = vec![0.0; n + 1];
            e[j] = 1.0;
            f(&e)
        })
        .collect();
    let mut warnings = Vec::new();
    if let Some(v) = vertex.iter().find(|v| v.abs() > VERTEX_TOLERANCE) {
        if prob.require_vanishing_vertices {
            return Err(KimuraError::contract(format!(
                "f does not vanish at the vertices (found {v:e}); the regular problem has no solution"
            )));
        }
        warnings.push(format!(
            "f does not vanish at the vertices; solved with Σ f(e_j) x_j removed (values {vertex:?})"
        ));
    }
    let shifted = |x: &[f64]| f(x) - x.iter().zip(&vertex).map(|(a, b)| a * b).sum::<f64>();

    let mut u = SpectralExpansion::new(n);
    let values = prob.vertex_values.clone().unwrap_or_else(|| vec![0.0; n + 1]);
    for (j, &v) in values.iter().enumerate() {
        u.insert(FaceSet::vertex(n, j)?, MultiIndex(Vec::new()), v)?;
    }
    let applied = SpectralExpansion::new(n);
    let (solved, _, stages) = stratify(n, 1..=n, prob.dmax, prob.order, &shifted, applied, true)?;
    let u = u.merged(&solved)?;

    for s in &stages {
        for fr in s.faces.iter().filter(|fr| fr.under_resolved) {
            warnings.push(format!(
                "face {:?}: top degree shell carries {:.2e} of the coefficient energy",
                fr.face, fr.tail_fraction
            ));
        }
    }
    Ok(RegularSolution {
        u,
        report: ResidualReport {
            removed_vertex_values: vertex,
            stages,
            warnings,
        },
    })
}

/// Hierarchical expansion of `f` itself: its vertex values, then the face
/// coefficients of what the lower strata leave over, with no division.
pub fn expand_data<F>(n: usize, dmax: usize, order: usize, f: F) -> Result<(SpectralExpansion, Vec<StageReport>)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    RegularProblem::new(n, dmax, order).validate()?;
    let mut vertices = SpectralExpansion::new(n);
    for j in 0..=n {
        let v = FaceSet::vertex(n, j)?;
        let x = v.embed(&[]);
        vertices.insert(v, MultiIndex(Vec::new()), f(&x))?;
    }
    let (out, _, stages) = stratify(n, 1..=n, dmax, order, &f, vertices.clone(), false)?;
    Ok((vertices.merged(&out)?, stages))
}

pub(crate) struct BasisCache {
    dmax: usize,
    order: usize,
    entries: HashMap<usize, (SimplexBasis, SimplexRule)>,
}

impl BasisCache {
    pub(crate) fn new(dmax: usize, order: usize) -> Self {
        BasisCache {
            dmax,
            order,
            entries: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, k: usize) -> Result<&(SimplexBasis, SimplexRule)> {
        if !self.entries.contains_key(&k) {
            let basis = SimplexBasis::new(k, &vec![1.0; k + 1], self.dmax)?;
            let rule = lebesgue_rule(k, self.order)?;
            self.entries.insert(k, (basis, rule));
        }
        Ok(&self.entries[&k])
    }
}

/// Expands `target - applied` over the faces of the dimensions in `dims`,
/// stage by stage.
///
/// The face coefficients `c` are added to `applied` (the running
/// approximation of `target`); the returned expansion holds `c / λ` when
/// `divide` is set and `c` otherwise.
pub(crate) fn stratify<F>(
    n: usize,
    dims: std::ops::RangeInclusive<usize>,
    dmax: usize,
    order: usize,
    target: &F,
    mut applied: SpectralExpansion,
    divide: bool,
) -> Result<(SpectralExpansion, SpectralExpansion, Vec<StageReport>)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut cache = BasisCache::new(dmax, order);
    let mut out = SpectralExpansion::new(n);
    let mut stages = Vec::new();
    for k in dims {
        let (basis, rule) = cache.get(k)?;
        let current = applied.evaluator()?;
        let mut report = StageReport { k, faces: Vec::new() };
        for face in FaceSet::all_of_dim(n, k) {
            let residual = |y: &[f64]| {
                let x = face.embed(y);
                target(&x) - current.evaluate_within(&x, &face)
            };
            let exp = expand_with_rule(residual, basis, rule)?;
            let mut max_abs: f64 = 0.0;
            for (m, &c) in basis.indices().iter().zip(&exp.coefficients) {
                if c == 0.0 {
                    continue;
                }
                max_abs = max_abs.max(c.abs());
                applied.accumulate(face.clone(), m.clone(), c)?;
                let stored = if divide { c / face_eigenvalue(k, m.degree()) } else { c };
                out.accumulate(face.clone(), m.clone(), stored)?;
            }
            report.faces.push(FaceReport {
                face: face.indices().iter().map(|i| i + 1).collect(),
                tail_fraction: exp.tail_fraction,
                under_resolved: exp.under_resolved,
                max_abs_coefficient: max_abs,
            });
        }
        stages.push(report);
    }
    Ok((out, applied, stages))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_product() {
        let prob = RegularProblem::new(1, 4, 4);
        let sol = solve_regular(&prob, |x| x[0] * x[1]).unwrap();
        let v = sol.u.evaluate(&[0.5, 0.5]).unwrap();
        assert!((v + 0.125).abs() < 1e-14);
        for t in [0.1, 0.37, 0.9] {
            let v = sol.u.evaluate(&[t, 1.0 - t]).unwrap();
            assert!((v + 0.5 * t * (1.0 - t)).abs() < 1e-14);
        }
    }

    #[test]
    fn data_expansion_reproduces_polynomials() {
        let f = |x: &[f64]| x[0] * x[0] * x[1] - 0.5 * x[2] + 1.0;
        let (exp, _) = expand_data(2, 3, 4, f).unwrap();
        for x in [[0.2, 0.3, 0.5], [0.0, 0.6, 0.4], [1.0, 0.0, 0.0]] {
            assert!((exp.evaluate(&x).unwrap() - f(&x)).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_data() {
        let prob = RegularProblem::new(2, 5, 4);
        let sol = solve_regular(&prob, |_| 0.0).unwrap();
        assert!(sol.u.terms().all(|(_, _, c)| c == 0.0));
    }

    #[test]
    fn triangle_bubble() {
        let prob = RegularProblem::new(2, 3, 4);
        let sol = solve_regular(&prob, |x| x[0] * x[1] * x[2]).unwrap();
        let x = [0.2, 0.3, 0.5];
        assert!((sol.u.evaluate(&x).unwrap() + 0.03 / 6.0).abs() < 1e-14);
        let full = FaceSet::full(2);
        let c = sol.u.get(&full, &MultiIndex(vec![0, 0])).unwrap();
        // ψ_00 = √(1/mass) with mass 1/120
        assert!((c + 1.0 / (6.0 * 120f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn vertex_handling() {
        let mut prob = RegularProblem::new(1, 2, 3);
        let sol = solve_regular(&prob, |x| 1.0 + x[0]).unwrap();
        assert_eq!(sol.report.removed_vertex_values, vec![2.0, 1.0]);
        assert_eq!(sol.report.warnings.len(), 1);
        prob.require_vanishing_vertices = true;
        assert!(matches!(solve_regular(&prob, |x| 1.0 + x[0]), Err(KimuraError::Contract(_))));
        prob.require_vanishing_vertices = false;
        prob.vertex_values = Some(vec![3.0, -1.0]);
        let sol = solve_regular(&prob, |_| 0.0).unwrap();
        assert_eq!(sol.u.evaluate(&[1.0, 0.0]).unwrap(), 3.0);
        assert_eq!(sol.u.evaluate(&[0.25, 0.75]).unwrap(), 0.0);
    }

    #[test]
    fn resolution_guard() {
        let prob = RegularProblem::new(2, 10, 5);
        assert!(matches!(prob.validate(), Err(KimuraError::Contract(_))));
    }
}
