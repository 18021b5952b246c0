use std::sync::Arc;

use crate::error::{KimuraError, Result};
use crate::field::Field;
use crate::scalar::{Jet, MAX_JET_DIM};

use super::closed_form::{eta_unchecked, tau_eta_prime};
use super::cutoff::CutoffSpec;

/// Explicit logarithmic part of a Dirichlet solution in the chart that puts
/// vertex `e_j` at the origin.
///
/// With chart coordinates `y` (the affine coordinates other than `x_j`),
///
/// ```text
/// v₁(y) = Σ_{S ≠ ∅} (-1)^{|S|-1} F(P_S y) η(Σ_{i∈S} y_i)
/// ```
///
/// where `P_S` zeroes the coordinates in `S`, and the part stored here is
/// `ṽ₁ = ψ(Σ y) v₁`. `v₁` vanishes on every `{y_i = 0}` and
/// `L_K v₁ = F` there.
#[derive(Clone)]
pub struct SingularPart {
    n: usize,
    chart: usize,
    cutoff: CutoffSpec,
    data: Arc<dyn Field>,
    coords: Vec<usize>,
    subsets: Vec<(usize, f64)>,
}

impl std::fmt::Debug for SingularPart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SingularPart")
            .field("n", &self.n)
            .field("chart", &self.chart)
            .field("cutoff", &self.cutoff)
            .field("subsets", &self.subsets.len())
            .finish()
    }
}

/// Builds `ṽ₁` for localized data `F` (a function of the affine
/// coordinates, supported where the cutoff is 1) in chart `chart`.
pub fn build_singular_part(data: Arc<dyn Field>, n: usize, chart: usize, cutoff: CutoffSpec) -> Result<SingularPart> {
    if n == 0 || n > MAX_JET_DIM {
        return Err(KimuraError::contract(format!(
            "singular parts are supported for 1 <= n <= {MAX_JET_DIM}, got n = {n}"
        )));
    }
    if chart > n {
        return Err(KimuraError::domain(format!("chart {chart} out of range for n = {n}")));
    }
    let subsets = (1usize..1 << n)
        .map(|mask| (mask, if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 }))
        .collect();
    Ok(SingularPart {
        n,
        chart,
        cutoff,
        data,
        coords: (0..=n).filter(|&i| i != chart).collect(),
        subsets,
    })
}

impl SingularPart {
    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based index of the vertex placed at the chart origin.
    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn cutoff(&self) -> CutoffSpec {
        self.cutoff
    }

    /// Number of inclusion–exclusion terms, `2^n - 1`.
    pub fn subset_count(&self) -> usize {
        self.subsets.len()
    }

    /// Chart coordinates of an affine point.
    pub fn to_chart(&self, x: &[f64]) -> Vec<f64> {
        self.coords.iter().map(|&i| x[i]).collect()
    }

    fn to_affine(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.n + 1];
        for (&i, &v) in self.coords.iter().zip(y) {
            x[i] = v;
        }
        x[self.chart] = 1.0 - y.iter().sum::<f64>();
        x
    }

    fn project(&self, y: &[f64], mask: usize) -> (Vec<f64>, f64) {
        let mut p = y.to_vec();
        let mut s = 0.0;
        for (i, v) in p.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                s += *v;
                *v = 0.0;
            }
        }
        (p, s)
    }

    /// `(F, L_K F, R F)` at a chart point, derivatives taken in the chart.
    fn data_jet(&self, p: &[f64]) -> (f64, f64, f64) {
        let y = Jet::seed(p);
        let mut x = vec![Jet::constant(0.0); self.n + 1];
        let mut rest = Jet::constant(1.0);
        for (&i, &yi) in self.coords.iter().zip(&y) {
            x[i] = yi;
            rest = rest - yi;
        }
        x[self.chart] = rest;
        let j = self.data.jet(&x);
        let mut lk = 0.0;
        let mut r = 0.0;
        for a in 0..self.n {
            r += p[a] * j.g[a];
            for b in 0..self.n {
                let delta = if a == b { 1.0 } else { 0.0 };
                lk += p[a] * (delta - p[b]) * j.h[a][b];
            }
        }
        (j.v, lk, r)
    }

    /// `v₁` at chart point `y`, without the cutoff.
    pub fn raw_value(&self, y: &[f64]) -> f64 {
        let mut total = 0.0;
        for &(mask, sign) in &self.subsets {
            let (p, s) = self.project(y, mask);
            if s <= 0.0 {
                continue;
            }
            total += sign * self.data.value(&self.to_affine(&p)) * eta_unchecked(s);
        }
        total
    }

    /// `(v₁, L_K v₁, R v₁)` at chart point `y`, from the product rules
    ///
    /// ```text
    /// L_K[G η(s)] = η(s) (L_K F)(P_S y) + (1 - s) G - 2 s η'(s) (R F)(P_S y)
    /// R[G η(s)]   = η(s) (R F)(P_S y) + s η'(s) G
    /// ```
    /// with `G = F(P_S y)`.
    pub fn raw_with_derivatives(&self, y: &[f64]) -> (f64, f64, f64) {
        let (mut v, mut lv, mut rv) = (0.0, 0.0, 0.0);
        for &(mask, sign) in &self.subsets {
            let (p, s) = self.project(y, mask);
            let (g, lf, rf) = self.data_jet(&p);
            let e = eta_unchecked(s);
            let se = tau_eta_prime(s);
            v += sign * g * e;
            lv += sign * (e * lf + (1.0 - s) * g - 2.0 * se * rf);
            rv += sign * (e * rf + se * g);
        }
        (v, lv, rv)
    }

    /// `ṽ₁` at an affine point.
    pub fn value(&self, x: &[f64]) -> f64 {
        let y = self.to_chart(x);
        let tau: f64 = y.iter().sum();
        if self.cutoff.vanishes_at(tau) {
            return 0.0;
        }
        self.cutoff.eval(tau) * self.raw_value(&y)
    }

    /// `(ṽ₁, L_K ṽ₁)` at an affine point, using
    /// `L_K(ψ v) = ψ L_K v + 2 (1 - τ) ψ' R v + τ (1 - τ) ψ'' v`.
    pub fn value_and_operator(&self, x: &[f64]) -> (f64, f64) {
        let y = self.to_chart(x);
        let tau: f64 = y.iter().sum();
        if self.cutoff.vanishes_at(tau) {
            return (0.0, 0.0);
        }
        let (c, c1, c2) = self.cutoff.derivatives(tau);
        let (v, lv, rv) = self.raw_with_derivatives(&y);
        let op = c * lv + 2.0 * (1.0 - tau) * c1 * rv + tau * (1.0 - tau) * c2 * v;
        (c * v, op)
    }

    /// `L_K ṽ₁` at an affine point.
    pub fn apply_kimura(&self, x: &[f64]) -> f64 {
        self.value_and_operator(x).1
    }
}
