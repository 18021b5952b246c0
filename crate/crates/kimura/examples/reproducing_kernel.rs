//! Degree-d reproducing kernels of the tetrahedron with weight x1 x2 x3 x4.

use kimura::simplex::{reproducing_kernel, SimplexBasis};

fn main() -> kimura::Result<()> {
    let basis = SimplexBasis::new(3, &[1.0; 4], 3)?;
    let origin = [0.0; 3];
    for d in 0..=3 {
        println!("G_{d}(0, 0) = {:.6}", reproducing_kernel(&basis, d, &origin, &origin)?);
    }
    let x = [0.1, 0.2, 0.3];
    let y = [0.4, 0.1, 0.25];
    let a = reproducing_kernel(&basis, 2, &x, &y)?;
    let b = reproducing_kernel(&basis, 2, &y, &x)?;
    println!("G_2(x, y) = {a:.12}, G_2(y, x) = {b:.12}");
    Ok(())
}
