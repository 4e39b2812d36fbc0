//! Inverting the retained block of the Kronecker collocation matrix gives
//! the retained block of the Kronecker inverse.
//!
//! Run with `cargo run --release --example chop_identity`.

use zappl::transform::verify_chop_identity_levels;
use zappl::{build_zappl, make_leja_points, BasisFamily};

fn main() -> zappl::Result<()> {
    let fam = BasisFamily::chebyshev();
    for (d, b) in [(1, 255), (2, 63), (3, 15), (4, 7), (6, 3), (12, 1)] {
        let z = build_zappl(&fam, &make_leja_points(&fam, b + 1, 0.0)?, b + 1)?;
        let reps = verify_chop_identity_levels(&vec![z; d], d, b)?;
        let worst = reps.iter().map(|r| r.scaled_deviation).fold(0.0, f64::max);
        let last = reps.last().unwrap();
        println!(
            "D={d:2} b<={b:3}: retained {:5} of {:5}, worst scaled deviation over all budgets {worst:.2e}",
            last.n_sparse, last.n_full
        );
    }
    Ok(())
}
