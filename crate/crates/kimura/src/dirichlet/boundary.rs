use std::sync::Arc;

use crate::error::{KimuraError, Result};
use crate::field::Field;
use crate::regular::{stratify, StageReport};
use crate::simplex::{FaceSet, MultiIndex, SpectralExpansion};

/// Relative disagreement tolerated between facet data on shared sub-faces.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-9;

/// Dirichlet data on the boundary of the n-simplex.
#[derive(Clone)]
pub enum BoundaryData {
    /// One function whose restriction to the boundary is the data.
    Global(Arc<dyn Field>),
    /// One function per facet `{x_j = 0}`, `j = 1..n+1`, in affine
    /// coordinates; they must agree where facets meet.
    PerFacet(Vec<Arc<dyn Field>>),
}

impl std::fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryData::Global(_) => write!(f, "BoundaryData::Global"),
            BoundaryData::PerFacet(v) => write!(f, "BoundaryData::PerFacet({} facets)", v.len()),
        }
    }
}

impl BoundaryData {
    pub fn zero() -> Self {
        BoundaryData::Global(Arc::new(crate::field::Constant(0.0)))
    }

    /// Value at a boundary point; per-facet data is read from the facet of
    /// the smallest coordinate.
    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            BoundaryData::Global(g) => g.value(x),
            BoundaryData::PerFacet(gs) => {
                let j = x
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map_or(0, |(j, _)| j);
                gs[j].value(x)
            }
        }
    }

    /// Checks the facet count and agreement on every codimension-2 face.
    pub fn check(&self, n: usize) -> Result<()> {
        let BoundaryData::PerFacet(gs) = self else {
            return Ok(());
        };
        if gs.len() != n + 1 {
            return Err(KimuraError::DimensionMismatch {
                expected: n + 1,
                got: gs.len(),
            });
        }
        if n < 2 {
            return Ok(());
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let rest: Vec<usize> = (0..=n).filter(|&k| k != i && k != j).collect();
                for x in sample_face_points(n, &rest) {
                    let (a, b) = (gs[i].value(&x), gs[j].value(&x));
                    if (a - b).abs() > CONSISTENCY_TOLERANCE * (1.0 + a.abs().max(b.abs())) {
                        return Err(KimuraError::contract(format!(
                            "boundary data disagree on the face shared by facets {} and {} at {x:?}: {a} vs {b}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A handful of deterministic points on the closed face spanned by `idx`.
fn sample_face_points(n: usize, idx: &[usize]) -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for &i in idx {
        let mut x = vec![0.0; n + 1];
        x[i] = 1.0;
        pts.push(x);
    }
    for s in 1..=5 {
        let mut x = vec![0.0; n + 1];
        let mut total = 0.0;
        for (r, &i) in idx.iter().enumerate() {
            let w = 1.0 + ((s * (r + 2)) % 7) as f64;
            x[i] = w;
            total += w;
        }
        x.iter_mut().for_each(|v| *v /= total);
        pts.push(x);
    }
    pts
}

/// Extension `tg` of boundary data into the simplex.
#[derive(Debug, Clone)]
pub struct BoundaryExtension {
    pub tg: SpectralExpansion,
    pub stages: Vec<StageReport>,
}

/// `tg = g_0 + g_1 + .. + g_{n-1}`: the vertex interpolant `Σ g(e_j) x_j`
/// followed by the expansions of what remains on each k-skeleton,
/// `k = 1..n-1`, extended canonically.
pub fn extend_boundary_data(g: &BoundaryData, n: usize, dmax: usize, order: usize) -> Result<BoundaryExtension> {
    if n == 0 {
        return Err(KimuraError::contract("the simplex dimension must be at least 1"));
    }
    g.check(n)?;
    let mut g0 = SpectralExpansion::new(n);
    for j in 0..=n {
        let mut e = vec![0.0; n + 1];
        e[j] = 1.0;
        g0.insert(FaceSet::vertex(n, j)?, MultiIndex(Vec::new()), g.value(&e))?;
    }
    if n == 1 {
        return Ok(BoundaryExtension {
            tg: g0,
            stages: Vec::new(),
        });
    }
    let target = |x: &[f64]| g.value(x);
    let (rest, _, stages) = stratify(n, 1..=n - 1, dmax, order, &target, g0.clone(), false)?;
    Ok(BoundaryExtension {
        tg: g0.merged(&rest)?,
        stages,
    })
}
