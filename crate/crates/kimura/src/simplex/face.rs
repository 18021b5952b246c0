use std::cmp::Ordering;
use std::fmt;

use crate::error::{KimuraError, Result};

/// A face `K_I` of the n-simplex, given by the (0-based, increasing) set `I`
/// of affine coordinates that are allowed to be nonzero on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceSet {
    n: usize,
    indices: Vec<usize>,
}

impl FaceSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.is_empty() || indices.len() > n + 1 {
            return Err(KimuraError::domain(format!(
                "a face of the {n}-simplex needs between 1 and {} indices, got {}",
                n + 1,
                indices.len()
            )));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(KimuraError::domain(format!("repeated index in face {indices:?}")));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i > n) {
            return Err(KimuraError::domain(format!(
                "face index {bad} out of range for the {n}-simplex"
            )));
        }
        Ok(FaceSet { n, indices })
    }

    /// The whole simplex, `I = {0, .., n}`.
    pub fn full(n: usize) -> Self {
        FaceSet {
            n,
            indices: (0..=n).collect(),
        }
    }

    pub fn vertex(n: usize, j: usize) -> Result<Self> {
        FaceSet::new(n, vec![j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Dimension `k = |I| - 1` of the face.
    pub fn dim(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn is_vertex(&self) -> bool {
        self.indices.len() == 1
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..=self.n).filter(|i| !self.indices.contains(i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &FaceSet) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// Projective chart coordinates of an affine point: the coordinates
    /// indexed by the first `k` entries of `I`.
    pub fn chart<T: Copy>(&self, x: &[T]) -> Vec<T> {
        self.indices[..self.dim()].iter().map(|&i| x[i]).collect()
    }

    /// Affine point of the face with chart coordinates `y`; the last index of
    /// `I` receives `1 - Σ y` and coordinates outside `I` are zero.
    pub fn embed(&self, y: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.n + 1];
        let mut rest = 1.0;
        for (a, &i) in self.indices[..self.dim()].iter().enumerate() {
            x[i] = y[a];
            rest -= y[a];
        }
        x[*self.indices.last().unwrap()] = rest;
        x
    }

    /// `w_I(x) = Π_{i∈I} x_i`.
    pub fn weight<T: std::ops::Mul<Output = T> + Copy>(&self, x: &[T]) -> T {
        let mut acc = x[self.indices[0]];
        for &i in &self.indices[1..] {
            acc = acc * x[i];
        }
        acc
    }

    /// All faces of dimension `k` of the n-simplex in lexicographic order.
    pub fn all_of_dim(n: usize, k: usize) -> Vec<FaceSet> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut cur = Vec::with_capacity(k + 1);
        combos(n + 1, k + 1, 0, &mut cur, &mut |c| {
            out.push(FaceSet {
                n,
                indices: c.to_vec(),
            })
        });
        out
    }
}

fn combos(m: usize, r: usize, start: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if cur.len() == r {
        emit(cur);
        return;
    }
    for i in start..m {
        if m - i < r - cur.len() {
            break;
        }
        cur.push(i);
        combos(m, r, i + 1, cur, emit);
        cur.pop();
    }
}

/// Faces order by dimension first, then lexicographically.
impl Ord for FaceSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.indices.len().cmp(&other.indices.len()))
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for FaceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
