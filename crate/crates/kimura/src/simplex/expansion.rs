use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{KimuraError, Result};
use crate::scalar::Scalar;

use super::basis::SimplexBasis;
use super::face::FaceSet;
use super::face_eigenvalue;
use super::multi_index::MultiIndex;

/// Distance from the affine plane `Σ x_i = 1` (and below zero per
/// coordinate) tolerated by point evaluation.
pub const PLANE_TOLERANCE: f64 = 1e-12;

/// A function on the n-simplex written as `Σ c_{I,m} w_I ψ_{I,m}`.
///
/// `w_I = Π_{i∈I} x_i` and `ψ_{I,m}` is the orthonormal basis member of the
/// face `K_I` (weight exponents all 1) evaluated on the face chart of `x`.
/// Vertex terms have an empty multi-index and contribute `c x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralExpansion {
    n: usize,
    b: Vec<f64>,
    terms: BTreeMap<(FaceSet, MultiIndex), f64>,
}

impl SpectralExpansion {
    pub fn new(n: usize) -> Self {
        SpectralExpansion {
            n,
            b: vec![0.0; n + 1],
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FaceSet, &MultiIndex, f64)> + '_ {
        self.terms.iter().map(|((f, m), &c)| (f, m, c))
    }

    pub fn get(&self, face: &FaceSet, m: &MultiIndex) -> Option<f64> {
        self.terms.get(&(face.clone(), m.clone())).copied()
    }

    fn check_term(&self, face: &FaceSet, m: &MultiIndex) -> Result<()> {
        if face.n() != self.n {
            return Err(KimuraError::DimensionMismatch {
                expected: self.n,
                got: face.n(),
            });
        }
        if m.dim() != face.dim() {
            return Err(KimuraError::DimensionMismatch {
                expected: face.dim(),
                got: m.dim(),
            });
        }
        Ok(())
    }

    /// Sets the coefficient of `(face, m)`, replacing any previous value.
    pub fn insert(&mut self, face: FaceSet, m: MultiIndex, c: f64) -> Result<()> {
        self.check_term(&face, &m)?;
        self.terms.insert((face, m), c);
        Ok(())
    }

    /// Adds `c` to the coefficient of `(face, m)`.
    pub fn accumulate(&mut self, face: FaceSet, m: MultiIndex, c: f64) -> Result<()> {
        self.check_term(&face, &m)?;
        *self.terms.entry((face, m)).or_insert(0.0) += c;
        Ok(())
    }

    /// Term-wise sum.
    pub fn merged(&self, other: &SpectralExpansion) -> Result<SpectralExpansion> {
        if other.n != self.n {
            return Err(KimuraError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (f, m, c) in other.terms() {
            *out.terms.entry((f.clone(), m.clone())).or_insert(0.0) += c;
        }
        Ok(out)
    }

    pub fn scaled(&self, s: f64) -> SpectralExpansion {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    /// `L_K` applied term by term: each coefficient is multiplied by its
    /// eigenvalue; vertex terms map to zero.
    pub fn apply_operator_diagonal(&self) -> SpectralExpansion {
        let mut out = self.clone();
        for ((f, m), c) in out.terms.iter_mut() {
            *c *= face_eigenvalue(f.dim(), m.degree());
        }
        out
    }

    /// Inverse of [`Self::apply_operator_diagonal`] on the non-vertex terms;
    /// vertex terms are dropped.
    pub fn solve_diagonal(&self) -> SpectralExpansion {
        let mut out = SpectralExpansion::new(self.n);
        for ((f, m), &c) in &self.terms {
            if !f.is_vertex() {
                out.terms.insert((f.clone(), m.clone()), c / face_eigenvalue(f.dim(), m.degree()));
            }
        }
        out
    }

    /// Value at an affine point of the closed simplex.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.evaluator()?.value(x)
    }

    /// Prepared evaluator with one basis per face dimension.
    pub fn evaluator(&self) -> Result<ExpansionEvaluator> {
        ExpansionEvaluator::new(self)
    }

    pub fn to_document(&self) -> ExpansionDoc {
        ExpansionDoc {
            n: self.n,
            b: self.b.clone(),
            terms: self
                .terms
                .iter()
                .map(|((f, m), &c)| TermDoc {
                    face: f.indices().iter().map(|i| i + 1).collect(),
                    m: m.0.clone(),
                    c: Coefficient::Text(format!("{c:?}")),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &ExpansionDoc) -> Result<Self> {
        if doc.b.len() != doc.n + 1 {
            return Err(KimuraError::Format(format!(
                "weight vector has length {}, expected {}",
                doc.b.len(),
                doc.n + 1
            )));
        }
        if doc.b.iter().any(|&b| b != 0.0) {
            return Err(KimuraError::contract("only the neutral weight vector b = 0 is supported"));
        }
        let mut out = SpectralExpansion::new(doc.n);
        for t in &doc.terms {
            if t.face.iter().any(|&i| i == 0) {
                return Err(KimuraError::Format("face indices are 1-based".into()));
            }
            let face = FaceSet::new(doc.n, t.face.iter().map(|i| i - 1).collect())?;
            let c = t.c.value()?;
            out.insert(face, MultiIndex(t.m.clone()), c)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("expansion documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        SpectralExpansion::from_document(&serde_json::from_str(s)?)
    }
}

/// Serialized form: `{n, b, terms: [{I, m, c}]}` with 1-based face indices
/// and coefficients as round-trip decimal strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExpansionDoc {
    pub n: usize,
    pub b: Vec<f64>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermDoc {
    #[serde(rename = "I")]
    pub face: Vec<usize>,
    pub m: Vec<usize>,
    pub c: Coefficient,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Coefficient {
    Text(String),
    Number(f64),
}

impl Coefficient {
    pub fn value(&self) -> Result<f64> {
        match self {
            Coefficient::Number(v) => Ok(*v),
            Coefficient::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| KimuraError::Format(format!("cannot parse coefficient {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
struct FaceGroup {
    face: FaceSet,
    basis: Option<Arc<SimplexBasis>>,
    coefficients: Vec<f64>,
}

/// Evaluation-ready form of a [`SpectralExpansion`].
#[derive(Debug, Clone)]
pub struct ExpansionEvaluator {
    n: usize,
    groups: Vec<FaceGroup>,
}

impl ExpansionEvaluator {
    pub fn new(exp: &SpectralExpansion) -> Result<Self> {
        let mut dmax = vec![0usize; exp.n + 1];
        for (f, m, _) in exp.terms() {
            dmax[f.dim()] = dmax[f.dim()].max(m.degree());
        }
        let mut bases: Vec<Option<Arc<SimplexBasis>>> = vec![None; exp.n + 1];
        for (k, slot) in bases.iter_mut().enumerate().skip(1) {
            if exp.terms().any(|(f, _, _)| f.dim() == k) {
                *slot = Some(Arc::new(SimplexBasis::new(k, &vec![1.0; k + 1], dmax[k])?));
            }
        }

        let mut groups: Vec<FaceGroup> = Vec::new();
        for (f, m, c) in exp.terms() {
            if groups.last().map_or(true, |g| &g.face != f) {
                let basis = bases[f.dim()].clone();
                let len = basis.as_ref().map_or(1, |b| b.len());
                groups.push(FaceGroup {
                    face: f.clone(),
                    basis,
                    coefficients: vec![0.0; len],
                });
            }
            let g = groups.last_mut().unwrap();
            let pos = match &g.basis {
                Some(b) => b.position(m).expect("basis covers every stored degree"),
                None => 0,
            };
            g.coefficients[pos] += c;
        }
        Ok(ExpansionEvaluator { n: exp.n, groups })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Value at `x`, which must lie on the closed simplex.
    pub fn value(&self, x: &[f64]) -> Result<f64> {
        check_simplex_point(self.n, x)?;
        Ok(self.evaluate(x))
    }

    /// Sum over all terms at an affine point (no validation). Generic so the
    /// same code yields derivatives when called with jets.
    pub fn evaluate<T: Scalar>(&self, x: &[T]) -> T {
        self.evaluate_filtered(x, |_| true)
    }

    /// Sum over the terms whose face is contained in `face`; these are the
    /// only terms that can be nonzero on `K_face`.
    pub fn evaluate_within<T: Scalar>(&self, x: &[T], face: &FaceSet) -> T {
        self.evaluate_filtered(x, |g| g.is_subset_of(face))
    }

    fn evaluate_filtered<T: Scalar>(&self, x: &[T], keep: impl Fn(&FaceSet) -> bool) -> T {
        let mut total = T::cst(0.0);
        let mut vals: Vec<T> = Vec::new();
        for g in &self.groups {
            if !keep(&g.face) {
                continue;
            }
            let w = g.face.weight(x);
            match &g.basis {
                None => total = total + w * g.coefficients[0],
                Some(b) => {
                    vals.resize(b.len(), T::cst(0.0));
                    b.evaluate_all_into(&g.face.chart(x), &mut vals);
                    let mut s = T::cst(0.0);
                    for (v, &c) in vals.iter().zip(&g.coefficients) {
                        if c != 0.0 {
                            s = s + *v * c;
                        }
                    }
                    total = total + w * s;
                }
            }
        }
        total
    }
}

pub(crate) fn check_simplex_point(n: usize, x: &[f64]) -> Result<()> {
    if x.len() != n + 1 {
        return Err(KimuraError::DimensionMismatch {
            expected: n + 1,
            got: x.len(),
        });
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > PLANE_TOLERANCE || x.iter().any(|&v| v < -PLANE_TOLERANCE || !v.is_finite()) {
        return Err(KimuraError::domain(format!(
            "point {x:?} is not on the closed simplex (coordinate sum {sum})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(n: usize, i: &[usize]) -> FaceSet {
        FaceSet::new(n, i.to_vec()).unwrap()
    }

    #[test]
    fn vertex_term() {
        let mut u = SpectralExpansion::new(2);
        u.insert(face(2, &[1]), MultiIndex(vec![]), 1.0).unwrap();
        assert_eq!(u.evaluate(&[0.0, 1.0, 0.0]).unwrap(), 1.0);
        assert_eq!(u.evaluate(&[0.5, 0.0, 0.5]).unwrap(), 0.0);
    }

    #[test]
    fn one_dimensional_closed_form() {
        // -x(1-x)/2 = c w ψ_0 with ψ_0 = √6
        let mut u = SpectralExpansion::new(1);
        u.insert(face(1, &[0, 1]), MultiIndex(vec![0]), -0.5 / 6f64.sqrt()).unwrap();
        assert!((u.evaluate(&[0.5, 0.5]).unwrap() + 0.125).abs() < 1e-15);
    }

    #[test]
    fn disjoint_face_vanishes() {
        let mut u = SpectralExpansion::new(3);
        u.insert(face(3, &[0, 1]), MultiIndex(vec![2]), 0.7).unwrap();
        u.insert(face(3, &[0, 1, 3]), MultiIndex(vec![1, 1]), -0.3).unwrap();
        assert_eq!(u.evaluate(&[0.0, 0.0, 0.4, 0.6]).unwrap(), 0.0);
    }

    #[test]
    fn off_plane_is_rejected() {
        let u = SpectralExpansion::new(2);
        assert!(u.evaluate(&[0.5, 0.5, 0.1]).is_err());
        assert!(u.evaluate(&[0.5, 0.5]).is_err());
    }

    #[test]
    fn diagonal_round_trip() {
        let mut u = SpectralExpansion::new(2);
        u.insert(face(2, &[0]), MultiIndex(vec![]), 3.0).unwrap();
        u.insert(face(2, &[0, 2]), MultiIndex(vec![3]), 0.25).unwrap();
        u.insert(face(2, &[0, 1, 2]), MultiIndex(vec![1, 2]), -1.5).unwrap();
        let lu = u.apply_operator_diagonal();
        assert_eq!(lu.get(&face(2, &[0]), &MultiIndex(vec![])), Some(0.0));
        assert_eq!(lu.get(&face(2, &[0, 2]), &MultiIndex(vec![3])), Some(0.25 * -20.0));
        let back = lu.solve_diagonal();
        assert_eq!(back.len(), 2);
        for (f, m, c) in back.terms() {
            assert!((c - u.get(f, m).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut u = SpectralExpansion::new(2);
        u.insert(face(2, &[1]), MultiIndex(vec![]), 0.1).unwrap();
        u.insert(face(2, &[0, 1, 2]), MultiIndex(vec![2, 0]), -1.0 / 3.0).unwrap();
        let s = u.to_json();
        assert!(s.contains("\"I\""));
        let v = SpectralExpansion::from_json(&s).unwrap();
        assert_eq!(u, v);
        assert!(SpectralExpansion::from_json(r#"{"n":1,"b":[0,0],"terms":[{"I":[0],"m":[],"c":1}]}"#).is_err());
        let w = SpectralExpansion::from_json(r#"{"n":1,"b":[0,0],"terms":[{"I":[1,2],"m":[0],"c":2.5}]}"#).unwrap();
        assert_eq!(w.len(), 1);
    }
}
