//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned
//! below. The process fails if any criterion fails that is not listed in
//! `KNOWN_GAPS`.

use std::sync::Arc;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kimura::dirichlet::{
    boundary_samples, build_singular_part, closed_form_mean_exit, solve_dirichlet, BoundaryData, CutoffSpec,
    DirichletProblem,
};
use kimura::driver::{coefficient_study, decay_slope, probe_points};
use kimura::exactpoly::{
    apply_kimura, exact_moment, int, kappa, orthogonalize_monomials, random_poly, regular_solve_exact, sato_check,
    shimakura_residual, Extension, Model, Rational, RationalPoly, WeightVector,
};
use kimura::field::{Constant, CubicKink, Exponential, Field, Polynomial};
use kimura::jacobi1d::{gauss_quadrature, recurrence_coefficients, JacobiWeight};
use kimura::simplex::{
    eigenspace_multiplicity, face_eigenvalue, indices_of_degree, reproducing_kernel, FaceSet, MultiIndex,
    SimplexBasis,
};

const RECURRENCE_TOL: f64 = 1e-15;
const MOMENT_TOL: f64 = 1e-13;
const LISTED_BASIS_TOL: f64 = 1e-10;
const KERNEL_TOL: f64 = 1e-9;
const DIRICHLET_1D_TOL: f64 = 1e-6;
const DIRICHLET_2D_TOL: f64 = 1e-3;
const DIRICHLET_SECONDS: f64 = 60.0;
const TRACE_TOL: f64 = 1e-10;
const HYPERSURFACE_TOL: f64 = 1e-8;
const ANALYTIC_SLOPE: f64 = -4.0;
const KINK_SLOPE: (f64, f64) = (-6.0, -1.0);

/// Criteria that fail at the prescribed resolution; see the README.
const KNOWN_GAPS: &[&str] = &["8b"];

struct Outcome {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, name: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, name, pass, detail }
}

fn random_interior(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let mut e: Vec<f64> = (0..=k).map(|_| -rng.gen::<f64>().max(1e-12).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter_mut().for_each(|v| *v /= s);
    e.truncate(k);
    e
}

fn recurrence() -> Outcome {
    let rec = recurrence_coefficients(JacobiWeight::new(1.0, 1.0).unwrap(), 50).unwrap();
    let mut worst: f64 = 0.0;
    for m in 0..=50 {
        worst = worst.max((rec.a[m] - 0.5).abs());
        if m >= 1 {
            let mf = m as f64;
            let exact = mf * (mf + 2.0) / (4.0 * (4.0 * (mf + 1.0).powi(2) - 1.0));
            worst = worst.max((rec.b[m] - exact).abs());
        }
    }
    let b1 = (rec.b[1] - 1.0 / 20.0).abs();
    outcome(
        "1",
        "recurrence coefficients, alpha = beta = 1, m <= 50",
        worst <= RECURRENCE_TOL && b1 <= RECURRENCE_TOL,
        format!("max error {worst:.2e}, |b_1 - 1/20| = {b1:.2e}"),
    )
}

fn quadrature() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in 0..=3u32 {
        for beta in 0..=3u32 {
            let w = JacobiWeight::new(alpha as f64, beta as f64).unwrap();
            for order in 1..=12 {
                let rule = gauss_quadrature(w, order).unwrap();
                for j in 0..2 * order as u32 {
                    let exact = exact_moment(&[alpha + j, beta], 1).unwrap().to_f64().unwrap();
                    let got = rule.integrate(|x| x.powi(j as i32));
                    worst = worst.max((got - exact).abs() / exact);
                }
            }
        }
    }
    outcome(
        "2",
        "Gauss-Jacobi moments, (alpha, beta) in {0..3}^2, N <= 12",
        worst <= MOMENT_TOL,
        format!("max relative error {worst:.2e}"),
    )
}

/// The ten lowest orthonormal polynomials of the tetrahedron with weight
/// `x y z (1 - x - y - z)`, in closed form.
fn listed_tetrahedron_basis() -> Vec<([usize; 3], fn(f64, f64, f64) -> f64)> {
    vec![
        ([0, 0, 0], |_, _, _| 12.0 * 35f64.sqrt()),
        ([1, 0, 0], |x, _, _| 12.0 * 105f64.sqrt() * (4.0 * x - 1.0)),
        ([0, 1, 0], |x, y, _| 12.0 * 210f64.sqrt() * (x + 3.0 * y - 1.0)),
        ([0, 0, 1], |x, y, z| 36.0 * 70f64.sqrt() * (-1.0 + x + y + 2.0 * z)),
        ([2, 0, 0], |x, _, _| 24.0 * 55f64.sqrt() * (1.0 - 9.0 * x + 15.0 * x * x)),
        ([1, 1, 0], |x, y, _| 6.0 * 2310f64.sqrt() * (-1.0 + 5.0 * x) * (-1.0 + x + 3.0 * y)),
        ([0, 2, 0], |x, y, _| {
            6.0 * 330f64.sqrt() * (3.0 + 3.0 * x * x - 21.0 * y + 28.0 * y * y + 3.0 * x * (-2.0 + 7.0 * y))
        }),
        ([1, 0, 1], |x, y, z| 18.0 * 770f64.sqrt() * (-1.0 + 5.0 * x) * (-1.0 + x + y + 2.0 * z)),
        ([0, 1, 1], |x, y, z| 30.0 * 462f64.sqrt() * (-1.0 + x + 4.0 * y) * (-1.0 + x + y + 2.0 * z)),
        ([0, 0, 2], |x, y, z| {
            24.0 * 1155f64.sqrt()
                * (1.0 + x * x + y * y - 5.0 * z + 5.0 * z * z + y * (-2.0 + 5.0 * z) + x * (-2.0 + 2.0 * y + 5.0 * z))
        }),
    ]
}

fn listed_basis() -> Outcome {
    let basis = SimplexBasis::new(3, &[1.0; 4], 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points: Vec<Vec<f64>> = (0..20).map(|_| random_interior(&mut rng, 3)).collect();
    let mut worst: f64 = 0.0;
    for (m, closed) in listed_tetrahedron_basis() {
        let m = MultiIndex::new(m.to_vec());
        let got: Vec<f64> = points.iter().map(|p| basis.evaluate(&m, p).unwrap()).collect();
        let want: Vec<f64> = points.iter().map(|p| closed(p[0], p[1], p[2])).collect();
        let dot: f64 = got.iter().zip(&want).map(|(a, b)| a * b).sum();
        let sign = dot.signum();
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((sign * g - w).abs() / (1.0 + w.abs()));
        }
    }
    outcome(
        "3",
        "ten listed tetrahedron polynomials at 20 random points",
        worst <= LISTED_BASIS_TOL,
        format!("max relative difference {worst:.2e}"),
    )
}

fn kernel() -> Outcome {
    let basis = SimplexBasis::new(3, &[1.0; 4], 1).unwrap();
    let g = reproducing_kernel(&basis, 1, &[0.0; 3], &[0.0; 3]).unwrap();
    let rel = (g - 136080.0).abs() / 136080.0;
    outcome("4", "reproducing kernel G_1(0, 0) = 136080", rel <= KERNEL_TOL, format!("G_1(0,0) = {g:.6}, relative error {rel:.2e}"))
}

fn random_face(rng: &mut ChaCha8Rng, n: usize, min_dim: usize) -> FaceSet {
    let k = rng.gen_range(min_dim..=n);
    let mut idx: Vec<usize> = (0..=n).collect();
    for i in (1..idx.len()).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    let mut idx = idx[..=k].to_vec();
    idx.sort_unstable();
    FaceSet::new(n, idx).unwrap()
}

/// Monic orthogonal polynomials for weight `x^1` on k-simplices, `k <= 3`,
/// up to degree 6, grouped by `k`.
fn exact_bases() -> Vec<(usize, Vec<(MultiIndex, RationalPoly)>)> {
    (1..=3).map(|k| (k, orthogonalize_monomials(k, &vec![1; k + 1], 6).unwrap())).collect()
}

fn identities(bases: &[(usize, Vec<(MultiIndex, RationalPoly)>)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut shimakura_bad = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let face = random_face(&mut rng, n, 0);
        let deg = rng.gen_range(0..=5);
        let psi = random_poly(&mut rng, n + 1, deg);
        if !shimakura_residual(&psi, &face, &WeightVector::zero(n)).unwrap().is_zero() {
            shimakura_bad += 1;
        }
    }
    let mut sato_bad = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=4);
        let face = random_face(&mut rng, n, 1);
        let deg = rng.gen_range(1..=5);
        let p = random_poly(&mut rng, face.dim(), deg);
        let q = random_poly(&mut rng, n + 1, deg - 1);
        let ext = match case % 3 {
            0 => Extension::Constant,
            1 => Extension::VanishingOnFace(q),
            _ => Extension::VanishingOnSimplex(q),
        };
        if !sato_check(&p, &face, &ext).unwrap().is_zero() {
            sato_bad += 1;
        }
    }
    let mut eigen_bad = 0;
    let mut members = 0;
    for (k, gram) in bases {
        let b_prime = WeightVector::uniform(*k, 2);
        for (m, q) in gram {
            let d = m.degree() as i64;
            let lambda = int(-d * (d + 2 * *k as i64 + 1));
            members += 1;
            if !(&apply_kimura(q, &b_prime, Model::Projective).unwrap() - &q.scale(&lambda)).is_zero() {
                eigen_bad += 1;
            }
        }
    }
    outcome(
        "5",
        "exact Shimakura, Sato and L_b' q = lambda q identities",
        shimakura_bad + sato_bad + eigen_bad == 0,
        format!("nonzero residuals: Shimakura {shimakura_bad}/100, Sato {sato_bad}/100, eigen {eigen_bad}/{members}"),
    )
}

fn eigen_table(bases: &[(usize, Vec<(MultiIndex, RationalPoly)>)]) -> Outcome {
    let mut bad = Vec::new();
    for (k, gram) in bases {
        let shift = kappa(&FaceSet::full(*k), &WeightVector::zero(*k));
        let b_prime = WeightVector::uniform(*k, 2);
        for d in 0..=6 {
            for (m, q) in gram.iter().filter(|(m, _)| m.degree() == d) {
                let lq = apply_kimura(q, &b_prime, Model::Projective).unwrap();
                let (e, c) = q.terms().max_by_key(|(e, _)| e.iter().sum::<u32>()).unwrap();
                let lambda: Rational = lq.coefficient(e) / c - &shift;
                if lambda.to_f64() != Some(face_eigenvalue(*k, d)) {
                    bad.push(format!("k={k} m={m}"));
                }
            }
        }
    }
    let seq: Vec<f64> = (0..4).map(|d| face_eigenvalue(1, d)).collect();
    let seq_ok = seq == [-2.0, -6.0, -12.0, -20.0];
    outcome(
        "6",
        "eigenvalue table k <= 3, |m| <= 6 and the n = 1 sequence",
        bad.is_empty() && seq_ok,
        format!("{} mismatches, n = 1 sequence {seq:?}", bad.len()),
    )
}

fn regular_exactness(bases: &[(usize, Vec<(MultiIndex, RationalPoly)>)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let deg = rng.gen_range(1..=6);
        let mut f = random_poly(&mut rng, n + 1, deg);
        for j in 0..=n {
            let mut e = vec![int(0); n + 1];
            e[j] = int(1);
            let v = f.eval(&e);
            f = &f - &RationalPoly::var(n + 1, j).scale(&v);
        }
        if !regular_solve_exact(&f).unwrap().residual.is_zero() {
            bad += 1;
        }
    }
    let mut mult_bad = 0;
    for (k, gram) in bases {
        for d in 0..=6 {
            let expect = kimura::simplex::binomial(d + k - 1, k - 1);
            let shell = gram.iter().filter(|(m, _)| m.degree() == d).count();
            if shell != expect || indices_of_degree(*k, d).len() != expect || eigenspace_multiplicity(*k, d) != expect {
                mult_bad += 1;
            }
        }
    }
    outcome(
        "7",
        "exact regular solver on 50 seeded polynomials; multiplicities",
        bad == 0 && mult_bad == 0,
        format!("nonzero residuals {bad}/50, multiplicity mismatches {mult_bad}"),
    )
}

fn mean_exit_error(n: usize, dmax: usize, order: usize, probes: usize) -> (f64, f64) {
    let start = Instant::now();
    let sol = solve_dirichlet(&DirichletProblem::new(n, dmax, order), Arc::new(Constant(-1.0)), &BoundaryData::zero())
        .unwrap();
    let mut worst: f64 = 0.0;
    for x in probe_points(n, probes) {
        worst = worst.max((sol.evaluate(&x).unwrap() - closed_form_mean_exit(&x, n).unwrap()).abs());
    }
    (worst, start.elapsed().as_secs_f64())
}

fn dirichlet() -> Vec<Outcome> {
    let (e1, t1) = mean_exit_error(1, 512, 600, 20);
    let (e2, t2) = mean_exit_error(2, 24, 48, 50);
    let (e3, t3) = mean_exit_error(2, 200, 216, 50);
    vec![
        outcome(
            "8a",
            "mean exit time, n = 1, 20 points (dmax 512, N 600)",
            e1 <= DIRICHLET_1D_TOL && t1 <= DIRICHLET_SECONDS,
            format!("max error {e1:.2e} in {t1:.1} s"),
        ),
        outcome(
            "8b",
            "mean exit time, n = 2, 50 points (dmax 24, N 48)",
            e2 <= DIRICHLET_2D_TOL && t2 <= DIRICHLET_SECONDS,
            format!("max error {e2:.2e} in {t2:.1} s"),
        ),
        outcome(
            "8c",
            "mean exit time, n = 2, 50 points (dmax 200, N 216)",
            e3 <= DIRICHLET_2D_TOL && t3 <= DIRICHLET_SECONDS,
            format!("max error {e3:.2e} in {t3:.1} s"),
        ),
    ]
}

fn singular_traces() -> Outcome {
    let mut trace: f64 = 0.0;
    let mut hyper: f64 = 0.0;
    let cases: Vec<(usize, Polynomial)> = vec![
        (1, Polynomial::new(2, vec![(vec![1, 1], 2.0), (vec![0, 0], -1.0)]).unwrap()),
        (2, Polynomial::new(3, vec![(vec![1, 1, 0], 3.0), (vec![0, 0, 2], 1.0), (vec![0, 0, 0], -0.5)]).unwrap()),
        (3, Polynomial::new(4, vec![(vec![0, 1, 1, 0], 2.0), (vec![0, 0, 0, 1], -1.0), (vec![1, 0, 0, 0], 0.25)]).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (n, data) in cases {
        let cutoff = CutoffSpec::new(0.2).unwrap();
        for chart in 0..=n {
            let sp = build_singular_part(Arc::new(data.clone()), n, chart, cutoff).unwrap();
            for x in boundary_samples(n) {
                trace = trace.max(sp.value(&x).abs());
            }
            // points on {y_i = 0} inside the region where the cutoff is 1
            for _ in 0..20 {
                let mut y = random_interior(&mut rng, n);
                let zero = rng.gen_range(0..n);
                y[zero] = 0.0;
                let s: f64 = y.iter().sum();
                if s > 0.7 {
                    y.iter_mut().for_each(|v| *v *= 0.7 / s);
                }
                let mut x = Vec::with_capacity(n + 1);
                let mut it = y.iter();
                for i in 0..=n {
                    x.push(if i == chart { 1.0 - y.iter().sum::<f64>() } else { *it.next().unwrap() });
                }
                let (_, op) = sp.value_and_operator(&x);
                hyper = hyper.max((op - data.value(&x)).abs());
            }
        }
    }
    outcome(
        "9",
        "singular part traces and hypersurface equation, n = 1..3",
        trace <= TRACE_TOL && hyper <= HYPERSURFACE_TOL,
        format!("max |v1| on boundary {trace:.2e}, max |L v1 - f1| on hypersurfaces {hyper:.2e}"),
    )
}

fn decay() -> Outcome {
    let analytic: Arc<dyn Field> = Arc::new(Exponential { a: vec![1.0, 2.0, -1.0] });
    let kink: Arc<dyn Field> = Arc::new(CubicKink {
        coordinate: 0,
        center: 0.4,
        scale: 1.0,
    });
    let sa = decay_slope(&coefficient_study(2, 24, 26, &analytic).unwrap(), 8, 24).unwrap();
    let sk = decay_slope(&coefficient_study(2, 24, 26, &kink).unwrap(), 8, 24).unwrap();
    outcome(
        "10",
        "shell coefficient decay on the triangle, d in [8, 24]",
        sa < ANALYTIC_SLOPE && sk > KINK_SLOPE.0 && sk < KINK_SLOPE.1,
        format!("analytic slope {sa:.2}, C2 kink slope {sk:.2}"),
    )
}

fn main() {
    let bases = exact_bases();
    let mut results = vec![recurrence(), quadrature(), listed_basis(), kernel()];
    results.push(identities(&bases));
    results.push(eigen_table(&bases));
    results.push(regular_exactness(&bases));
    results.extend(dirichlet());
    results.push(singular_traces());
    results.push(decay());

    let mut unexpected = 0;
    for r in &results {
        let known = KNOWN_GAPS.contains(&r.id);
        let tag = match (r.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{tag:<17} [{:>3}] {}: {}", r.id, r.name, r.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
