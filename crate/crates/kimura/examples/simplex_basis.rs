//! Orthonormal polynomial basis of the weighted triangle and its Gram
//! matrix under the collapsed Gauss rule.

use kimura::simplex::{simplex_quadrature, SimplexBasis};

fn main() -> kimura::Result<()> {
    let alphas = [1.0, 1.0, 1.0];
    let basis = SimplexBasis::new(2, &alphas, 3)?;
    let rule = simplex_quadrature(&alphas, 4)?;

    let mut gram = vec![vec![0.0; basis.len()]; basis.len()];
    for (y, w) in rule.iter() {
        let v = basis.evaluate_all(y);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                gram[i][j] += w * v[i] * v[j];
            }
        }
    }
    let mut off: f64 = 0.0;
    let mut diag: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            if i == j {
                diag = diag.max((g - 1.0).abs());
            } else {
                off = off.max(g.abs());
            }
        }
    }
    println!("{} members up to degree 3; max |G - I|: diagonal {diag:.1e}, off-diagonal {off:.1e}", basis.len());

    let y = [0.2, 0.3];
    for (m, v) in basis.indices().iter().zip(basis.evaluate_all(&y)) {
        println!("  psi_{m}({:.1}, {:.1}) = {v:+.12}", y[0], y[1]);
    }
    Ok(())
}
