//! Coefficient decay of smooth and of twice-differentiable data on the
//! triangle.

use kimura::driver::{coefficient_study, decay_slope, FieldSpec};

fn main() -> kimura::Result<()> {
    for name in ["exp:3,-2,1", "kink:1:0.4"] {
        let f = FieldSpec::parse(name)?.build(2)?;
        let rows = coefficient_study(2, 24, 26, &f)?;
        let slope = decay_slope(&rows, 8, 24).unwrap_or(f64::NAN);
        println!("{name}: log-log slope over d in [8, 24] = {slope:.2}");
        for r in rows.iter().step_by(4) {
            println!("  d = {:2}  max|c| = {:.3e}  probe residual = {:.3e}", r.d, r.max_abs_coefficient, r.probe_residual);
        }
    }
    Ok(())
}
