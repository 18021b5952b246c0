use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(m_1, .., m_k)` labelling a basis polynomial on a
/// k-simplex.
///
/// Ordered first by degree and then by comparing entries from the last one
/// backwards, so `(d, 0, .., 0)` is the smallest index of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(m: Vec<usize>) -> Self {
        MultiIndex(m)
    }

    pub fn zero(k: usize) -> Self {
        MultiIndex(vec![0; k])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `S_j = Σ_{i>j} m_i` for each position `j`.
    pub fn suffix_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.0.len()];
        let mut acc = 0;
        for j in (0..self.0.len()).rev() {
            s[j] = acc;
            acc += self.0[j];
        }
        s
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All multi-indices of length `k` and degree exactly `d`, in order.
pub fn indices_of_degree(k: usize, d: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    fill(&mut cur, 0, d, &mut out);
    out.sort();
    out
}

fn fill(cur: &mut Vec<usize>, pos: usize, left: usize, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for v in 0..=left {
        cur[pos] = v;
        fill(cur, pos + 1, left - v, out);
    }
}

/// All multi-indices of length `k` and degree at most `dmax`, in order.
pub fn indices_up_to(k: usize, dmax: usize) -> Vec<MultiIndex> {
    (0..=dmax).flat_map(|d| indices_of_degree(k, d)).collect()
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
