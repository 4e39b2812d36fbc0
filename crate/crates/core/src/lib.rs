//! Sparse-grid interpolation in zero-at-previous-points (ZAPPL) bases.
//!
//! Any importance-ordered 1-D basis plus a nested point sequence (one new
//! point per level) yields ZAPPL functions whose collocation matrix is lower
//! triangular. On the simplex grid `{ a : |a - 1|_1 <= b }` this lets values be
//! turned into basis coefficients with `D` sequential 1-D passes instead of a
//! dense solve; the pass costs exactly `D (b/(D+1) + 1) N_sparse`
//! multiplications.
//!
//! ```
//! use zappl::basis1d::{build_zappl, make_leja_points, BasisFamily};
//! use zappl::index_set::SimplexIndexSet;
//! use zappl::smolyak::Interpolant;
//! use zappl::transform::ValueVector;
//!
//! let fam = BasisFamily::chebyshev();
//! let (dim, budget) = (3, 4);
//! let pts = make_leja_points(&fam, budget + 1, 0.0).unwrap();
//! let axis = build_zappl(&fam, &pts, budget + 1).unwrap();
//! let set = SimplexIndexSet::new(dim, budget).unwrap();
//!
//! let f = |x: &[f64]| x[0] * x[1] + x[2].powi(3);
//! let values: Vec<f64> = set
//!     .iter()
//!     .map(|a| f(&a.iter().map(|&i| pts.points()[i - 1]).collect::<Vec<_>>()))
//!     .collect();
//! let itp = Interpolant::fit(&ValueVector(values), vec![axis; dim], set, None).unwrap();
//! let x = [0.3, -0.2, 0.7];
//! assert!((itp.eval(&x).unwrap() - f(&x)).abs() < 1e-12);
//! ```

pub mod basis1d;
pub mod builtin;
pub mod cli;
pub mod costmodel;
pub mod error;
pub mod index_set;
pub mod smolyak;
pub mod transform;
pub mod tri;

pub use basis1d::{build_zappl, make_leja_points, BasisFamily, FamilyKind, PointSequence, Zappl1D};
pub use error::{Error, Result};
pub use index_set::{MultiIndex, SimplexIndexSet, SparseGrid};
pub use smolyak::{DeltaBaseline, Interpolant};
pub use transform::{
    dehierarchize, dense_oracle, hierarchize, hierarchize_full, to_raw_basis, verify_chop_identity,
    CoeffVector, MultCounter, ValueVector,
};
