//! Sparse interpolation of smooth Genz-style functions as the budget grows.
//!
//! Run with `cargo run --release --example interpolate_genz`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zappl::builtin::Builtin;
use zappl::transform::ValueVector;
use zappl::{build_zappl, make_leja_points, BasisFamily, Interpolant, SimplexIndexSet};

fn main() -> zappl::Result<()> {
    let d = 4;
    let fam = BasisFamily::chebyshev();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let probes: Vec<Vec<f64>> = (0..500)
        .map(|_| (0..d).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();

    for spec in ["oscillatory", "product-peak"] {
        let f = Builtin::parse(spec, d, fam.domain())?;
        println!("{spec}, D={d}");
        for b in 0..=10 {
            let z = build_zappl(&fam, &make_leja_points(&fam, b + 1, 0.0)?, b + 1)?;
            let axes = vec![z; d];
            let set = SimplexIndexSet::new(d, b)?;
            let values: Vec<f64> = set
                .iter()
                .map(|i| {
                    let x: Vec<f64> = i
                        .iter()
                        .zip(&axes)
                        .map(|(&ik, z)| z.points().points()[ik - 1])
                        .collect();
                    f.eval(&x)
                })
                .collect();
            let itp = Interpolant::fit(&ValueVector(values), axes, set, None)?;
            let err = probes
                .iter()
                .map(|x| (itp.eval(x).unwrap() - f.eval(x)).abs())
                .fold(0.0, f64::max);
            println!(
                "  b={b:2}  points {:5}  max error {err:.3e}",
                itp.set().len()
            );
        }
    }
    Ok(())
}
