//! Mean exit time of the Wright–Fisher diffusion: L_K u = -1, u = 0 on the
//! boundary, compared with the closed form.

use std::sync::Arc;

use kimura::dirichlet::{closed_form_mean_exit, solve_dirichlet, BoundaryData, DirichletProblem};
use kimura::field::Constant;

fn main() -> kimura::Result<()> {
    let prob = DirichletProblem::new(1, 512, 600);
    let sol = solve_dirichlet(&prob, Arc::new(Constant(-1.0)), &BoundaryData::zero())?;
    println!("n = 1, dmax 512:");
    for t in [0.05, 0.25, 0.5, 0.8] {
        let x = [t, 1.0 - t];
        println!("  u({t:.2}) = {:.10}  closed form {:.10}", sol.evaluate(&x)?, closed_form_mean_exit(&x, 1)?);
    }

    for dmax in [24, 96] {
        let prob = DirichletProblem::new(2, dmax, dmax + 16);
        let sol = solve_dirichlet(&prob, Arc::new(Constant(-1.0)), &BoundaryData::zero())?;
        let x = [1.0 / 3.0; 3];
        println!(
            "n = 2, dmax {dmax}: u(barycenter) = {:.6} (closed form {:.6}), {} warnings",
            sol.evaluate(&x)?,
            closed_form_mean_exit(&x, 2)?,
            sol.report.warnings.len()
        );
    }
    Ok(())
}
