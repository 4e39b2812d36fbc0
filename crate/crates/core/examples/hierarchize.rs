//! Nodal values to coefficients with sequential 1-D sums, checked against a
//! dense solve and against the closed-form multiplication count.
//!
//! Run with `cargo run --release --example hierarchize`.

use std::time::Instant;

use zappl::costmodel::n_mult_sequential;
use zappl::transform::{dehierarchize, dense_oracle, hierarchize, MultCounter, ValueVector};
use zappl::{build_zappl, make_leja_points, BasisFamily, SimplexIndexSet};

fn main() -> zappl::Result<()> {
    let fam = BasisFamily::chebyshev();
    for (d, b) in [(2, 6), (4, 6), (6, 5), (10, 4)] {
        let z = build_zappl(&fam, &make_leja_points(&fam, b + 1, 0.0)?, b + 1)?;
        let axes = vec![z; d];
        let set = SimplexIndexSet::new(d, b)?;
        let values = ValueVector(
            (0..set.len())
                .map(|k| ((k * 7919) % 113) as f64 / 56.0 - 1.0)
                .collect(),
        );

        let mut counter = MultCounter::new();
        let t = Instant::now();
        let coeffs = hierarchize(&values, &axes, &set, Some(&mut counter))?;
        let fast = t.elapsed();
        let back = dehierarchize(&coeffs, &axes, &set)?;
        let round_trip = back
            .0
            .iter()
            .zip(&values.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);

        print!(
            "D={d:2} b={b}: N={:5}  mults {} (closed form {})  {fast:?}  round trip {round_trip:.1e}",
            set.len(),
            counter.count(),
            n_mult_sequential(d, b)?
        );
        if set.len() <= 2000 {
            let t = Instant::now();
            let oracle = dense_oracle(&values, &axes, &set)?;
            let dev = oracle
                .0
                .iter()
                .zip(&coeffs.0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            print!("  dense solve {:?}, max deviation {dev:.1e}", t.elapsed());
        }
        println!();
    }
    Ok(())
}
