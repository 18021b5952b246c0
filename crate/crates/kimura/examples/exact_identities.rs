//! Exact rational checks of the operator identities on random polynomials.

use kimura::exactpoly::{random_poly, sato_check, shimakura_residual, Extension, WeightVector};
use kimura::simplex::FaceSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> kimura::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let face = FaceSet::new(3, vec![0, 2, 3])?;

    let psi = random_poly(&mut rng, 4, 4);
    let r = shimakura_residual(&psi, &face, &WeightVector::zero(3))?;
    println!("Shimakura on {face}: psi has {} terms, residual = {r}", psi.len());

    let p = random_poly(&mut rng, face.dim(), 4);
    let q = random_poly(&mut rng, 4, 2);
    for ext in [Extension::Constant, Extension::VanishingOnFace(q.clone()), Extension::VanishingOnSimplex(q)] {
        let name = format!("{ext:?}");
        let r = sato_check(&p, &face, &ext)?;
        println!("restriction with {} extension: residual = {r}", name.split('(').next().unwrap_or(""));
    }

    let report = kimura::driver::run_verify(&kimura::driver::VerifyOptions::new(2, 4, 3))?;
    for s in &report.suites {
        println!("suite {:<18} {} cases, passed: {}", s.name, s.cases, s.passed);
    }
    Ok(())
}
