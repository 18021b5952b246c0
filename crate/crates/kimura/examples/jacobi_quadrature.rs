//! Gauss–Jacobi rules on [0, 1] and the orthonormal recurrence behind them.

use kimura::jacobi1d::{evaluate_polynomials, gauss_quadrature, recurrence_coefficients, JacobiWeight};

fn main() -> kimura::Result<()> {
    let w = JacobiWeight::new(1.0, 1.0)?;
    let rec = recurrence_coefficients(w, 6)?;
    println!("weight x(1-x): mass {:.6}", w.mass());
    for m in 0..=4 {
        println!("  a_{m} = {:.6}  b_{m} = {:.6}", rec.a[m], rec.b[m]);
    }

    let rule = gauss_quadrature(w, 4)?;
    println!("4-point rule:");
    for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
        println!("  x = {x:.15}  w = {wt:.15}");
    }
    // exact through degree 7 against the weight
    let got = rule.integrate(|x| x.powi(7));
    println!("∫ x^7 x(1-x) dx = {got:.16} (exact 1/90 = {:.16})", 1.0 / 90.0);

    // the polynomials are orthonormal under the rule
    let p = |x: f64| evaluate_polynomials(&rec, x, 3).unwrap();
    let gram = rule.integrate(|x| p(x)[2] * p(x)[3]);
    let norm = rule.integrate(|x| p(x)[3] * p(x)[3]);
    println!("<p2, p3> = {gram:.2e}, <p3, p3> = {norm:.15}");
    Ok(())
}
