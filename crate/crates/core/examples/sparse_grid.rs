//! The total-degree index set, its ordering, and the grid it induces.
//!
//! Run with `cargo run --example sparse_grid`.

use std::io;

use zappl::{make_leja_points, BasisFamily, SimplexIndexSet, SparseGrid};

fn main() -> zappl::Result<()> {
    let set = SimplexIndexSet::new(2, 3)?;
    println!("D=2, b=3: {} indices in graded colex order", set.len());
    for (offset, i) in set.iter().enumerate() {
        println!("  {offset:2}  {i:?}  rank -> {}", set.rank(i)?);
    }
    println!(
        "contains [2, 3]: {}, contains [3, 3]: {}",
        set.contains(&[2, 3]),
        set.contains(&[3, 3])
    );

    // Pencils are the 1-D lines the transform sweeps over.
    for k in 0..set.dim() {
        let lens: Vec<usize> = set.pencils(k).iter().map(|p| p.len()).collect();
        println!("dimension {k}: {} pencils of lengths {lens:?}", lens.len());
    }

    let fam = BasisFamily::chebyshev();
    let axis = make_leja_points(&fam, 4, 0.0)?;
    let grid = SparseGrid::new(set, vec![axis.clone(), axis])?;
    println!("\ngrid CSV (offset, i_1, i_2, x_1, x_2):");
    grid.write_csv(io::stdout().lock())?;

    for (d, b) in [(5, 5), (10, 4), (20, 3)] {
        println!(
            "D={d:2} b={b}: {:>6} sparse points vs {:>12} full-grid points",
            zappl::index_set::size(d, b)?,
            (b as u128 + 1).pow(d as u32)
        );
    }
    Ok(())
}
