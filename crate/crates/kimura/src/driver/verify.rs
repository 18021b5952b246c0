//! Exact identity suites behind the `verify` command.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exactpoly::{
    apply_kimura, int, kappa, orthogonalize_monomials, random_poly, rat, sato_check, shimakura_residual_with,
    Extension, Model, MomentTable, RationalPoly, WeightVector,
};
use crate::simplex::{eigenspace_multiplicity, face_eigenvalue, FaceSet, MultiIndex, SimplexBasis};

/// Largest face dimension for which the eigenfunction and Gram suites run.
pub const EXACT_BASIS_MAX_DIM: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub n: usize,
    pub dmax: usize,
    pub seed: u64,
    /// Cases per randomized suite.
    pub cases: usize,
    /// Adds a drift term to the operator used by the Shimakura suite.
    pub perturb_operator: bool,
}

impl VerifyOptions {
    pub fn new(n: usize, dmax: usize, seed: u64) -> Self {
        VerifyOptions {
            n,
            dmax,
            seed,
            cases: 20,
            perturb_operator: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Failure {
    pub identity: String,
    pub inputs: String,
    pub residual: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EigenRow {
    pub k: usize,
    pub d: usize,
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerifyReport {
    pub passed: bool,
    pub n: usize,
    pub dmax: usize,
    pub seed: u64,
    pub perturbed_operator: bool,
    pub suites: Vec<SuiteReport>,
    /// `λ_d = -(d+1)(d+2)` on an edge, `d = 0..=max(dmax, 3)`.
    pub one_dimensional_eigenvalues: Vec<f64>,
    pub eigenvalues: Vec<EigenRow>,
}

struct Suite {
    name: &'static str,
    cases: usize,
    failures: Vec<Failure>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, identity: impl Into<String>, inputs: impl FnOnce() -> String, residual: &RationalPoly) {
        self.cases += 1;
        if !residual.is_zero() {
            self.failures.push(Failure {
                identity: identity.into(),
                inputs: inputs(),
                residual: clip(&residual.to_string()),
            });
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.into(),
            cases: self.cases,
            passed: self.failures.is_empty(),
            failures: self.failures,
        }
    }
}

fn clip(s: &str) -> String {
    const LIMIT: usize = 240;
    if s.chars().count() <= LIMIT {
        s.to_string()
    } else {
        let head: String = s.chars().take(LIMIT).collect();
        format!("{head}...")
    }
}

fn random_face(rng: &mut ChaCha8Rng, n: usize, min_dim: usize) -> FaceSet {
    let k = rng.gen_range(min_dim..=n);
    let mut all: Vec<usize> = (0..=n).collect();
    all.shuffle(rng);
    let mut idx = all[..=k].to_vec();
    idx.sort_unstable();
    FaceSet::new(n, idx).expect("distinct in-range indices")
}

/// `L_b p + x_1 ∂_1 p / 3`.
fn perturbed(p: &RationalPoly, b: &WeightVector) -> Result<RationalPoly> {
    let base = apply_kimura(p, b, Model::Affine)?;
    let mut e = vec![0u32; p.nvars()];
    e[0] = 1;
    Ok(&base + &p.derivative(0).shift(&e).scale(&rat(1, 3)))
}

fn sato_suite(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let n = opts.n;
    let d = opts.dmax as u32;
    let mut suite = Suite::new("sato");
    for case in 0..opts.cases {
        let face = random_face(rng, n, 1);
        let p = random_poly(rng, face.dim(), d);
        let q = random_poly(rng, n + 1, d.saturating_sub(1));
        let ext = match case % 3 {
            0 => Extension::Constant,
            1 => Extension::VanishingOnFace(q),
            _ => Extension::VanishingOnSimplex(q),
        };
        let r = sato_check(&p, &face, &ext)?;
        suite.record("(L_K p̂)|_face = L_face p", || format!("face {face}, p = {}, extension {ext:?}", clip(&p.to_string())), &r);
    }
    Ok(suite.finish())
}

fn shimakura_suite(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let n = opts.n;
    let mut suite = Suite::new("shimakura");
    for _ in 0..opts.cases {
        let face = random_face(rng, n, 0);
        let b: Vec<i64> = (0..=n)
            .map(|i| if face.contains(i) { rng.gen_range(-1..=1) } else { rng.gen_range(-1..=2) })
            .collect();
        let b = WeightVector::from_ints(&b);
        let psi = random_poly(rng, n + 1, opts.dmax as u32);
        let r = if opts.perturb_operator {
            shimakura_residual_with(&psi, &face, &b, perturbed)?
        } else {
            shimakura_residual_with(&psi, &face, &b, |p, w| apply_kimura(p, w, Model::Affine))?
        };
        suite.record(
            "L_b(w_I ψ) = w_I (L_b' - κ_I) ψ",
            || format!("face {face}, b = {:?}, ψ = {}", b.b.iter().map(|v| v.to_string()).collect::<Vec<_>>(), clip(&psi.to_string())),
            &r,
        );
    }
    Ok(suite.finish())
}

fn self_adjoint_suite(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    let n = opts.n;
    let mut suite = Suite::new("self_adjointness");
    for _ in 0..opts.cases {
        let b: Vec<i64> = (0..=n).map(|_| rng.gen_range(1..=3)).collect();
        let alphas: Vec<u32> = b.iter().map(|&v| (v - 1) as u32).collect();
        let w = WeightVector::from_ints(&b);
        let p = random_poly(rng, n, opts.dmax as u32);
        let q = random_poly(rng, n, opts.dmax as u32);
        let mut table = MomentTable::new(n, &alphas)?;
        let lhs = table.inner(&apply_kimura(&p, &w, Model::Projective)?, &q);
        let rhs = table.inner(&p, &apply_kimura(&q, &w, Model::Projective)?);
        let r = RationalPoly::constant(n, lhs - rhs);
        suite.record(
            "⟨L_b p, q⟩_b = ⟨p, L_b q⟩_b",
            || format!("b = {b:?}, p = {}, q = {}", clip(&p.to_string()), clip(&q.to_string())),
            &r,
        );
    }
    Ok(suite.finish())
}

/// Monic orthogonal polynomials of every face dimension up to
/// [`EXACT_BASIS_MAX_DIM`] satisfy `L_{b'} q = λ q` with `b' = 2`, and the
/// face eigenvalue `λ - κ_I` matches the closed form.
fn eigen_suite(opts: &VerifyOptions) -> Result<(SuiteReport, Vec<EigenRow>)> {
    let mut suite = Suite::new("eigenfunctions");
    let mut rows = Vec::new();
    for k in 1..=opts.n.min(EXACT_BASIS_MAX_DIM) {
        let gram = orthogonalize_monomials(k, &vec![1; k + 1], opts.dmax)?;
        let b_prime = WeightVector::uniform(k, 2);
        let shift = kappa(&FaceSet::full(k), &WeightVector::zero(k));
        for d in 0..=opts.dmax {
            let lambda = int(-((d * (d + 2 * k + 1)) as i64));
            let members: Vec<&(MultiIndex, RationalPoly)> = gram.iter().filter(|(m, _)| m.degree() == d).collect();
            for (m, q) in &members {
                let r = &apply_kimura(q, &b_prime, Model::Projective)? - &q.scale(&lambda);
                suite.record(format!("L_b' q_m = λ_d q_m, k = {k}, d = {d}"), || format!("m = {m}"), &r);
            }
            let face_lambda = &lambda - &shift;
            let closed = face_eigenvalue(k, d);
            let multiplicity = members.len();
            let agree = face_lambda.to_f64() == Some(closed) && multiplicity == eigenspace_multiplicity(k, d);
            suite.record(
                format!("λ_(k,d) table, k = {k}, d = {d}"),
                || format!("symbolic {face_lambda} with multiplicity {multiplicity}; table {closed}"),
                &RationalPoly::constant(0, if agree { int(0) } else { int(1) }),
            );
            rows.push(EigenRow {
                k,
                d,
                eigenvalue: closed,
                multiplicity: eigenspace_multiplicity(k, d),
            });
        }
    }
    Ok((suite.finish(), rows))
}

/// Exact pairwise orthogonality of the Gram–Schmidt polynomials, and
/// agreement of their normalized values with the floating-point basis.
fn gram_suite(opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<SuiteReport> {
    const VALUE_TOLERANCE: f64 = 1e-10;
    let mut suite = Suite::new("gram");
    let dmax = opts.dmax.min(4);
    for k in 1..=opts.n.min(EXACT_BASIS_MAX_DIM) {
        let alphas: Vec<u32> = (0..=k).map(|_| rng.gen_range(0..=2)).collect();
        let gram = orthogonalize_monomials(k, &alphas, dmax)?;
        let mut table = MomentTable::new(k, &alphas)?;
        for (a, (ma, qa)) in gram.iter().enumerate() {
            for (mb, qb) in &gram[..a] {
                let ip = table.inner(qa, qb);
                suite.record(
                    "⟨q_m, q_l⟩ = 0",
                    || format!("k = {k}, alphas = {alphas:?}, m = {ma}, l = {mb}"),
                    &RationalPoly::constant(0, ip),
                );
            }
        }
        let float_alphas: Vec<f64> = alphas.iter().map(|&a| a as f64).collect();
        let basis = SimplexBasis::new(k, &float_alphas, dmax)?;
        let points: Vec<Vec<f64>> = (0..4)
            .map(|_| {
                let mut e: Vec<f64> = (0..=k).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
                let s: f64 = e.iter().sum();
                e.iter_mut().for_each(|v| *v /= s);
                e.truncate(k);
                e
            })
            .collect();
        for (m, q) in &gram {
            let norm = table.inner(q, q).to_f64().unwrap_or(f64::NAN).sqrt();
            let mut worst: f64 = 0.0;
            for y in &points {
                let exact = q.eval_f64(y) / norm;
                let float = basis.evaluate(m, y)?;
                worst = worst.max((exact.abs() - float.abs()).abs() / (1.0 + exact.abs()));
            }
            let bad = !(worst <= VALUE_TOLERANCE);
            suite.record(
                "ψ_m = ±q_m/‖q_m‖",
                || format!("k = {k}, alphas = {alphas:?}, m = {m}, max relative difference {worst:e}"),
                &RationalPoly::constant(0, if bad { int(1) } else { int(0) }),
            );
        }
    }
    Ok(suite.finish())
}

/// Runs every suite. The report passes iff every identity holds exactly.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut suites = vec![
        sato_suite(opts, &mut rng)?,
        shimakura_suite(opts, &mut rng)?,
    ];
    let (eigen, eigenvalues) = eigen_suite(opts)?;
    suites.push(eigen);
    suites.push(self_adjoint_suite(opts, &mut rng)?);
    suites.push(gram_suite(opts, &mut rng)?);
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        passed,
        n: opts.n,
        dmax: opts.dmax,
        seed: opts.seed,
        perturbed_operator: opts.perturb_operator,
        suites,
        one_dimensional_eigenvalues: (0..=opts.dmax.max(3)).map(|d| face_eigenvalue(1, d)).collect(),
        eigenvalues,
    })
}
