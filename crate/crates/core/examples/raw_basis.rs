//! Converting hierarchical coefficients to coefficients on products of the
//! raw Chebyshev polynomials, and back.
//!
//! Run with `cargo run --example raw_basis`.

use zappl::transform::{from_raw_basis, hierarchize, to_raw_basis, ValueVector};
use zappl::{build_zappl, make_leja_points, BasisFamily, SimplexIndexSet};

fn main() -> zappl::Result<()> {
    let (d, b) = (2, 3);
    let fam = BasisFamily::chebyshev();
    let z = build_zappl(&fam, &make_leja_points(&fam, b + 1, 0.0)?, b + 1)?;
    let axes = vec![z; d];
    let set = SimplexIndexSet::new(d, b)?;

    // f = T_2(x) T_1(y) - 0.5 T_3(x) + 2, a member of the retained span
    let f = |x: &[f64]| fam.eval(3, x[0]) * fam.eval(2, x[1]) - 0.5 * fam.eval(4, x[0]) + 2.0;
    let values: Vec<f64> = set
        .iter()
        .map(|i| {
            f(&[
                axes[0].points().points()[i[0] - 1],
                axes[1].points().points()[i[1] - 1],
            ])
        })
        .collect();

    let coeffs = hierarchize(&ValueVector(values), &axes, &set, None)?;
    let raw = to_raw_basis(&coeffs, &axes, &set)?;
    println!("{:>8} {:>14} {:>14}", "index", "hierarchical", "raw");
    for ((i, c), r) in set.iter().zip(&coeffs.0).zip(&raw.0) {
        println!("{:>8} {c:>14.6} {r:>14.6}", format!("{i:?}"));
    }
    let back = from_raw_basis(&raw, &axes, &set)?;
    let dev = back
        .0
        .iter()
        .zip(&coeffs.0)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("round trip deviation {dev:.1e}");
    Ok(())
}
