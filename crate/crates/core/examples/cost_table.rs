//! Multiplication counts: sequential sums versus separate tensor grids.
//!
//! Run with `cargo run --example cost_table`; add a path to also write CSV.

use std::fs::File;

use zappl::costmodel::sweep;

fn main() -> zappl::Result<()> {
    let rep = sweep(1..=20, &[4, 9, 14])?;
    for b in [4, 9, 14] {
        println!("b = {b}");
        println!(
            "   D {:>12} {:>22} {:>12}",
            "N_mult_seq", "N_sep_total", "ratio"
        );
        for d in 1..=20 {
            let row = rep.row(d, b).unwrap();
            match &row.counts {
                Some(c) => println!(
                    "  {d:2} {:>12} {:>22} {:>12.3e}",
                    c.n_mult_seq,
                    c.n_sep_total,
                    c.ratio()
                ),
                None => println!("  {d:2} overflow"),
            }
        }
    }
    if let Some(path) = std::env::args().nth(1) {
        rep.write_csv(File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
