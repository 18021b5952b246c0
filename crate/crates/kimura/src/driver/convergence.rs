//! Convergence studies: coefficient decay of data expansions and Dirichlet
//! error against the closed-form mean exit time.

use std::sync::Arc;

use crate::dirichlet::{closed_form_mean_exit, solve_dirichlet, BoundaryData, DirichletProblem};
use crate::error::Result;
use crate::field::{Constant, Field};
use crate::regular::expand_data;
use crate::simplex::SpectralExpansion;

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub d: usize,
    /// Largest `|c|` over the degree-d shells of every face.
    pub max_abs_coefficient: f64,
    /// Largest `|f - f_d|` over the probe points, with `f_d` the expansion
    /// truncated at degree `d`.
    pub probe_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletRow {
    pub order: usize,
    pub dmax: usize,
    pub max_error: f64,
}

/// Interior probe points of the n-simplex on a fixed lattice, at most
/// `limit` of them.
pub fn probe_points(n: usize, limit: usize) -> Vec<Vec<f64>> {
    let steps = match n {
        1 => limit + 1,
        2 => 13,
        3 => 8,
        _ => 6,
    };
    let mut out = Vec::new();
    let mut idx = vec![1usize; n];
    loop {
        let used: usize = idx.iter().sum();
        if used < steps {
            let mut x: Vec<f64> = idx.iter().map(|&i| i as f64 / steps as f64).collect();
            x.push((steps - used) as f64 / steps as f64);
            out.push(x);
        }
        let mut a = 0;
        loop {
            if a == n {
                return finish(out, limit);
            }
            idx[a] += 1;
            if idx[a] < steps {
                break;
            }
            idx[a] = 1;
            a += 1;
        }
    }
}

fn finish(mut pts: Vec<Vec<f64>>, limit: usize) -> Vec<Vec<f64>> {
    if pts.len() > limit {
        let stride = pts.len() as f64 / limit as f64;
        pts = (0..limit).map(|i| pts[(i as f64 * stride) as usize].clone()).collect();
    }
    pts
}

/// Shell-by-shell decay of the hierarchical expansion of `f`.
pub fn coefficient_study(n: usize, dmax: usize, order: usize, f: &Arc<dyn Field>) -> Result<Vec<CoefficientRow>> {
    let (exp, _) = expand_data(n, dmax, order, |x: &[f64]| f.value(x))?;
    let probes = probe_points(n, 50);
    let targets: Vec<f64> = probes.iter().map(|x| f.value(x)).collect();
    let mut rows = Vec::with_capacity(dmax + 1);
    for d in 0..=dmax {
        let max_abs = exp
            .terms()
            .filter(|(_, m, _)| m.degree() == d)
            .map(|(_, _, c)| c.abs())
            .fold(0.0, f64::max);
        let mut truncated = SpectralExpansion::new(n);
        for (face, m, c) in exp.terms().filter(|(_, m, _)| m.degree() <= d) {
            truncated.insert(face.clone(), m.clone(), c)?;
        }
        let eval = truncated.evaluator()?;
        let residual = probes
            .iter()
            .zip(&targets)
            .map(|(x, t)| (eval.evaluate(x) - t).abs())
            .fold(0.0, f64::max);
        rows.push(CoefficientRow {
            d,
            max_abs_coefficient: max_abs,
            probe_residual: residual,
        });
    }
    Ok(rows)
}

/// Least-squares slope of `log max|c|` against `log d` over `lo..=hi`,
/// skipping shells that vanish.
pub fn decay_slope(rows: &[CoefficientRow], lo: usize, hi: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.d >= lo.max(1) && r.d <= hi && r.max_abs_coefficient > 0.0)
        .map(|r| ((r.d as f64).ln(), r.max_abs_coefficient.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

/// Error of the Dirichlet solver for `f = -1`, `g = 0` against the closed
/// form, for each quadrature order with `dmax = order / 2`.
pub fn dirichlet_study(n: usize, orders: &[usize], epsilon: Option<f64>) -> Result<Vec<DirichletRow>> {
    let probes = probe_points(n, 50);
    let mut rows = Vec::with_capacity(orders.len());
    for &order in orders {
        let mut prob = DirichletProblem::new(n, order / 2, order);
        prob.epsilon = epsilon;
        let sol = solve_dirichlet(&prob, Arc::new(Constant(-1.0)), &BoundaryData::zero())?;
        let mut worst: f64 = 0.0;
        for x in &probes {
            worst = worst.max((sol.evaluate(x)? - closed_form_mean_exit(x, n)?).abs());
        }
        rows.push(DirichletRow {
            order,
            dmax: order / 2,
            max_error: worst,
        });
    }
    Ok(rows)
}
