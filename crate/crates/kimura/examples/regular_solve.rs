//! Regular problem L_K u = f on the triangle, against the exact solver.

use kimura::exactpoly::{int, regular_solve_exact, RationalPoly};
use kimura::regular::{solve_regular, RegularProblem};

fn main() -> kimura::Result<()> {
    // f = x1 x2 (1 + x3) - 2 x2^2 x3, vanishing at every vertex
    let mut f = RationalPoly::zero(3);
    f.add_term(vec![1, 1, 0], int(1));
    f.add_term(vec![1, 1, 1], int(1));
    f.add_term(vec![0, 2, 1], int(-2));
    let exact = regular_solve_exact(&f)?;
    println!("exact solution has {} face terms; residual {}", exact.terms.len(), exact.residual);

    let prob = RegularProblem::new(2, 6, 8);
    let sol = solve_regular(&prob, |x| f.eval_f64(x))?;
    let mut worst: f64 = 0.0;
    for x in [[0.2, 0.3, 0.5], [0.6, 0.1, 0.3], [0.0, 0.4, 0.6], [0.33, 0.33, 0.34]] {
        worst = worst.max((sol.u.evaluate(&x)? - exact.u.eval_f64(&x)).abs());
    }
    println!("spectral vs exact: max difference {worst:.2e} at four points");
    for s in &sol.report.stages {
        for fr in &s.faces {
            println!("  face {:?}: tail {:.1e}", fr.face, fr.tail_fraction);
        }
    }
    Ok(())
}
