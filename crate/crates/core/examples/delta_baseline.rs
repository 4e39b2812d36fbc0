//! The same sparse interpolant evaluated two ways: from hierarchical
//! coefficients, and as a signed sum of tensor-product interpolants.
//!
//! Run with `cargo run --release --example delta_baseline`.

use std::time::Instant;

use zappl::transform::ValueVector;
use zappl::{
    build_zappl, make_leja_points, BasisFamily, DeltaBaseline, Interpolant, SimplexIndexSet,
};

fn main() -> zappl::Result<()> {
    let fam = BasisFamily::chebyshev();
    for (d, b) in [(1, 5), (2, 5), (3, 5), (4, 5)] {
        let z = build_zappl(&fam, &make_leja_points(&fam, b + 1, 0.0)?, b + 1)?;
        let axes = vec![z; d];
        let set = SimplexIndexSet::new(d, b)?;
        let values = ValueVector((0..set.len()).map(|k| (k as f64 * 0.37).sin()).collect());

        let itp = Interpolant::fit(&values, axes.clone(), set.clone(), None)?;
        let base = DeltaBaseline::new(axes, set, values)?;

        let points: Vec<Vec<f64>> = (0..100)
            .map(|t| {
                (0..d)
                    .map(|k| ((t * (k + 2)) as f64 * 0.731).sin())
                    .collect()
            })
            .collect();
        let t = Instant::now();
        let a: Vec<f64> = points.iter().map(|x| itp.eval(x).unwrap()).collect();
        let t_itp = t.elapsed();
        let t = Instant::now();
        let c: Vec<f64> = points.iter().map(|x| base.eval(x).unwrap()).collect();
        let t_base = t.elapsed();
        let dev = a
            .iter()
            .zip(&c)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        println!("D={d} b={b}: max difference {dev:.2e}; coefficients {t_itp:?}, difference form {t_base:?}");
    }
    Ok(())
}
