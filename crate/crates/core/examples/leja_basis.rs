//! Leja points and the zero-at-previous-points basis built on them.
//!
//! Run with `cargo run --example leja_basis`.

use zappl::{build_zappl, make_leja_points, BasisFamily, PointSequence};

fn main() -> zappl::Result<()> {
    // Hand-checkable case: monomials on the points 0, 1, -1.
    let mono = BasisFamily::monomial();
    let pts = PointSequence::user_supplied(vec![0.0, 1.0, -1.0], &mono)?;
    let z = build_zappl(&mono, &pts, 3)?;
    println!("monomials on 0, 1, -1");
    for (name, m) in [("A", z.a()), ("B", z.b()), ("Binv", z.binv())] {
        println!("  {name}:");
        for row in m.to_dense() {
            println!("    {row:?}");
        }
    }

    // The default setup: Chebyshev polynomials on classic Leja points.
    let cheb = BasisFamily::chebyshev();
    let leja = make_leja_points(&cheb, 8, cheb.default_seed())?;
    println!("\nfirst 8 Leja points on [-1, 1]: {:.6?}", leja.points());
    let z = build_zappl(&cheb, &leja, 8)?;
    println!("max |Binv| = {:.3}", z.binv().max_abs());

    // Each zphi_i vanishes at the earlier points and not at its own.
    let r = leja.points();
    for i in 1..=8 {
        let before: f64 = r[..i - 1]
            .iter()
            .map(|&x| z.eval(i, x).unwrap().abs())
            .fold(0.0, f64::max);
        println!(
            "  zphi_{i}: max |value| at earlier points {before:.1e}, at r_{i} {:+.4}",
            z.eval(i, r[i - 1])?
        );
    }

    // Cardinal functions over the first 4 points.
    let x = 0.3;
    let ell: Vec<f64> = (1..=4)
        .map(|a| z.lagrange_type_level(4, a, x).unwrap())
        .collect();
    println!(
        "\ncardinal functions at x = {x}: {ell:.6?} (sum {:.15})",
        ell.iter().sum::<f64>()
    );
    Ok(())
}
