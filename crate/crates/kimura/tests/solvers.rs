use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kimura::dirichlet::{boundary_samples, closed_form_mean_exit, solve_dirichlet, BoundaryData, DirichletProblem};
use kimura::exactpoly::{int, random_poly, regular_solve_exact, RationalPoly};
use kimura::field::{Constant, Exponential, Field, Polynomial};
use kimura::regular::{expand_data, solve_regular, RegularProblem};
use kimura::simplex::{eigenspace_multiplicity, SpectralExpansion};

/// `L_K v` at an interior affine point by central differences in the
/// projective coordinates.
fn fd_kimura(v: impl Fn(&[f64]) -> f64, x: &[f64]) -> f64 {
    let n = x.len() - 1;
    let h = 1e-4;
    let at = |y: &[f64]| {
        let mut p = y.to_vec();
        p.push(1.0 - y.iter().sum::<f64>());
        v(&p)
    };
    let y = &x[..n];
    let mut out = 0.0;
    for i in 0..n {
        for j in 0..n {
            let coef = y[i] * (f64::from(u8::from(i == j)) - y[j]);
            let d2 = {
                let mut pp = y.to_vec();
                let mut pm = y.to_vec();
                let mut mp = y.to_vec();
                let mut mm = y.to_vec();
                pp[i] += h;
                pp[j] += h;
                pm[i] += h;
                pm[j] -= h;
                mp[i] -= h;
                mp[j] += h;
                mm[i] -= h;
                mm[j] -= h;
                (at(&pp) - at(&pm) - at(&mp) + at(&mm)) / (4.0 * h * h)
            };
            out += coef * d2;
        }
    }
    out
}

fn seeded_vanishing_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> RationalPoly {
    let mut f = random_poly(rng, n + 1, deg);
    for j in 0..=n {
        let mut e = vec![int(0); n + 1];
        e[j] = int(1);
        let v = f.eval(&e);
        f = &f - &RationalPoly::var(n + 1, j).scale(&v);
    }
    f
}

#[test]
fn spectral_regular_solver_matches_exact_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for case in 0..12 {
        let n = 1 + case % 3;
        let deg = rng.gen_range(2..=5);
        let f = seeded_vanishing_poly(&mut rng, n, deg);
        let exact = regular_solve_exact(&f).unwrap();
        assert!(exact.residual.is_zero());
        let sol = solve_regular(&RegularProblem::new(n, 6, 8), |x| f.eval_f64(x)).unwrap();
        for _ in 0..10 {
            let mut x: Vec<f64> = (0..=n).map(|_| rng.gen::<f64>()).collect();
            let s: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= s);
            let got = sol.u.evaluate(&x).unwrap();
            let want = exact.u.eval_f64(&x);
            assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()), "case {case}: {got} vs {want}");
        }
    }
}

#[test]
fn exact_solution_shells_fit_the_eigenspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = seeded_vanishing_poly(&mut rng, 3, 5);
    let exact = regular_solve_exact(&f).unwrap();
    let mut shells: std::collections::BTreeMap<(Vec<usize>, usize), usize> = Default::default();
    for t in &exact.terms {
        *shells.entry((t.face.indices().to_vec(), t.m.degree())).or_default() += 1;
    }
    assert!(!shells.is_empty());
    for ((face, d), count) in shells {
        assert!(count <= eigenspace_multiplicity(face.len() - 1, d), "face {face:?}, degree {d}");
    }
}

#[test]
fn regular_solution_satisfies_the_equation_pointwise() {
    // analytic data with its vertex values removed
    let g = Exponential { a: vec![0.5, -1.0, 0.25] };
    let vertex: Vec<f64> = (0..3)
        .map(|j| {
            let mut e = [0.0; 3];
            e[j] = 1.0;
            g.value(&e)
        })
        .collect();
    let f = |x: &[f64]| g.value(x) - x.iter().zip(&vertex).map(|(a, b)| a * b).sum::<f64>();
    let sol = solve_regular(&RegularProblem::new(2, 20, 22), f).unwrap();
    let eval = sol.u.evaluator().unwrap();
    for x in [[0.2, 0.3, 0.5], [0.6, 0.1, 0.3], [0.33, 0.33, 0.34], [0.1, 0.8, 0.1]] {
        let lu = fd_kimura(|p| eval.evaluate(p), &x);
        assert!((lu - f(&x)).abs() < 1e-5, "{x:?}: {lu} vs {}", f(&x));
    }
}

#[test]
fn data_expansion_telescopes_over_the_strata() {
    // the vertex, edge and interior contributions add up to f itself
    let f = Exponential { a: vec![1.0, -0.5, 0.75] };
    let (exp, _) = expand_data(2, 20, 22, |x: &[f64]| f.value(x)).unwrap();
    let eval = exp.evaluator().unwrap();
    for x in [[1.0, 0.0, 0.0], [0.3, 0.7, 0.0], [0.0, 0.45, 0.55], [0.2, 0.3, 0.5], [0.6, 0.2, 0.2]] {
        assert!((eval.evaluate(&x) - f.value(&x)).abs() < 1e-12, "{x:?}");
    }
    let mut partial = SpectralExpansion::new(2);
    for (face, m, c) in exp.terms().filter(|(face, _, _)| face.dim() < 2) {
        partial.insert(face.clone(), m.clone(), c).unwrap();
    }
    let p = partial.evaluator().unwrap();
    for x in [[0.3, 0.7, 0.0], [0.0, 0.45, 0.55], [0.25, 0.0, 0.75]] {
        assert!((p.evaluate(&x) - f.value(&x)).abs() < 1e-12, "boundary part alone on {x:?}");
    }
}

#[test]
fn dirichlet_solution_takes_boundary_values() {
    let g: Arc<dyn Field> = Arc::new(Polynomial::new(3, vec![(vec![1, 1, 0], 2.0), (vec![0, 0, 1], 1.0)]).unwrap());
    let sol = solve_dirichlet(&DirichletProblem::new(2, 16, 24), Arc::new(Constant(-1.0)), &BoundaryData::Global(g.clone()))
        .unwrap();
    for x in boundary_samples(2) {
        assert!((sol.evaluate(&x).unwrap() - g.value(&x)).abs() < 1e-10, "{x:?}");
    }
}

#[test]
fn one_dimensional_dirichlet_solution_obeys_the_maximum_principle() {
    // L u = -1 <= 0 with zero boundary values: 0 <= u <= the closed form max
    let sol = solve_dirichlet(&DirichletProblem::new(1, 256, 300), Arc::new(Constant(-1.0)), &BoundaryData::zero()).unwrap();
    let peak = closed_form_mean_exit(&[0.5, 0.5], 1).unwrap();
    for i in 0..=200 {
        let t = i as f64 / 200.0;
        let u = sol.evaluate(&[t, 1.0 - t]).unwrap();
        assert!(u >= -1e-9 && u <= peak + 1e-3, "u({t}) = {u}");
    }
}

#[test]
fn dirichlet_residual_by_finite_differences() {
    let sol = solve_dirichlet(&DirichletProblem::new(1, 512, 600), Arc::new(Constant(-1.0)), &BoundaryData::zero()).unwrap();
    for t in [0.05, 0.1, 0.15, 0.2, 0.25, 0.35, 0.5, 0.8] {
        let lu = fd_kimura(|p| sol.evaluate(p).unwrap(), &[t, 1.0 - t]);
        // the steep cutoff band near t = 0.2 and 0.8 carries the largest residual
        assert!((lu + 1.0).abs() < 5e-3, "L u({t}) = {lu}");
    }
}
