//! Grid values to ZAPPL coefficients and back.
//!
//! Because every 1-D collocation matrix is lower triangular, the inverse of
//! the sparse collocation matrix is the simplex block of the Kronecker product
//! of the 1-D inverses. The transform is therefore `D` sequential passes; pass
//! `k` multiplies every pencil along coordinate `k` by `Binv_k`, summing only
//! over `a_k <= i_k`. The pencil length already encodes the upper limit on
//! `i_k` left by the other coordinates.

use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};

use crate::basis1d::Zappl1D;
use crate::error::{Error, Result};
use crate::index_set::SimplexIndexSet;
use crate::tri::{lower_inverse_rows, LowerTri};

/// Largest system the dense oracle will factor.
pub const DENSE_ORACLE_LIMIT: usize = 20_000;
/// Largest full tensor grid the chopping check will materialize against.
pub const CHOP_CHECK_LIMIT: usize = 4096;

/// Function values `f(r_a)` in rank order of the index set.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueVector(pub Vec<f64>);

/// Basis coefficients `C_i` in rank order of the index set.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector(pub Vec<f64>);

macro_rules! flat_vector {
    ($t:ty) => {
        impl $t {
            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn as_slice(&self) -> &[f64] {
                &self.0
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }

            /// `offset,i_1..i_D,value` per line, no header.
            pub fn write_csv<W: Write>(&self, set: &SimplexIndexSet, mut w: W) -> Result<()> {
                check_len(set, self.0.len())?;
                for (offset, (idx, v)) in set.iter().zip(&self.0).enumerate() {
                    let mut line = offset.to_string();
                    for a in idx {
                        line.push(',');
                        line.push_str(&a.to_string());
                    }
                    writeln!(w, "{line},{v}")?;
                }
                Ok(())
            }

            /// Reads rows joined to the set by offset. Every offset must
            /// appear exactly once, its index columns must match, and every
            /// value must be finite.
            pub fn read_csv<R: Read>(set: &SimplexIndexSet, r: R) -> Result<Self> {
                read_indexed_csv(set, r).map(Self)
            }
        }
    };
}

flat_vector!(ValueVector);
flat_vector!(CoeffVector);

fn read_indexed_csv<R: Read>(set: &SimplexIndexSet, r: R) -> Result<Vec<f64>> {
    let d = set.dim();
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(r);
    let mut out: Vec<Option<f64>> = vec![None; set.len()];
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != d + 2 {
            return Err(Error::Data(format!(
                "expected {} columns (offset, {d} indices, value), got {}",
                d + 2,
                rec.len()
            )));
        }
        let offset: usize = rec[0]
            .parse()
            .map_err(|_| Error::Data(format!("bad offset {:?}", &rec[0])))?;
        if offset >= set.len() {
            return Err(Error::Data(format!(
                "extra row: offset {offset} outside grid of {}",
                set.len()
            )));
        }
        for (k, want) in set.index(offset).iter().enumerate() {
            let got: usize = rec[k + 1]
                .parse()
                .map_err(|_| Error::Data(format!("bad index {:?}", &rec[k + 1])))?;
            if got != *want {
                return Err(Error::Data(format!(
                    "row {offset}: index column {} is {got}, grid has {want}",
                    k + 1
                )));
            }
        }
        let v: f64 = rec[d + 1]
            .parse()
            .map_err(|_| Error::Data(format!("bad value {:?}", &rec[d + 1])))?;
        if !v.is_finite() {
            return Err(Error::Data(format!("non-finite value at offset {offset}")));
        }
        if out[offset].replace(v).is_some() {
            return Err(Error::Data(format!("duplicate row for offset {offset}")));
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(o, v)| v.ok_or(Error::MissingSample(o)))
        .collect()
}

/// Counts scalar multiplications inside the sequential sweeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MultCounter {
    count: u64,
}

impl MultCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn add(&mut self, n: u64) {
        self.count += n;
    }
}

fn check_len(set: &SimplexIndexSet, len: usize) -> Result<()> {
    if len != set.len() {
        Err(Error::LengthMismatch {
            expected: set.len(),
            got: len,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_axes(axes: &[Zappl1D], dim: usize, budget: usize) -> Result<()> {
    if axes.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: axes.len(),
        });
    }
    for (k, ax) in axes.iter().enumerate() {
        if ax.len() < budget + 1 {
            return Err(Error::AxisTooShort {
                axis: k,
                len: ax.len(),
                needed: budget + 1,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy)]
enum Triangle {
    /// `out[i] = sum_{a <= i} M[i][a] in[a]`
    Lower,
    /// `out[j] = sum_{i >= j} in[i] M[i][j]`
    Transposed,
}

/// Applies a lower-triangular 1-D operator along every pencil, one coordinate
/// at a time, in place.
fn sweep(
    data: &mut [f64],
    set: &SimplexIndexSet,
    ops: &[&LowerTri],
    shape: Triangle,
    mut counter: Option<&mut MultCounter>,
) {
    let mut scratch = Vec::with_capacity(set.budget() + 1);
    for (k, op) in ops.iter().enumerate() {
        let mut mults = 0u64;
        for pencil in set.pencils(k).iter() {
            let len = pencil.len();
            match shape {
                Triangle::Lower => {
                    // Row i only reads entries a <= i, so top-down in place is safe.
                    for i in (0..len).rev() {
                        let row = op.row(i);
                        let mut s = 0.0;
                        for a in 0..=i {
                            s += row[a] * data[pencil[a]];
                        }
                        data[pencil[i]] = s;
                        mults += i as u64 + 1;
                    }
                }
                Triangle::Transposed => {
                    scratch.clear();
                    scratch.extend(pencil.iter().map(|&o| data[o]));
                    for j in 0..len {
                        let mut s = 0.0;
                        for i in j..len {
                            s += scratch[i] * op.get(i, j);
                        }
                        data[pencil[j]] = s;
                        mults += (len - j) as u64;
                    }
                }
            }
        }
        if let Some(c) = counter.as_deref_mut() {
            c.add(mults);
        }
    }
}

/// Values on the sparse grid to ZAPPL coefficients by sequential summation.
pub fn hierarchize(
    values: &ValueVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
    counter: Option<&mut MultCounter>,
) -> Result<CoeffVector> {
    check_axes(axes, set.dim(), set.budget())?;
    check_len(set, values.len())?;
    let mut data = values.0.clone();
    let ops: Vec<&LowerTri> = axes.iter().map(|z| z.binv()).collect();
    sweep(&mut data, set, &ops, Triangle::Lower, counter);
    Ok(CoeffVector(data))
}

/// Inverse of [`hierarchize`]: the same sweeps with `B` in place of `Binv`.
pub fn dehierarchize(
    coeffs: &CoeffVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
) -> Result<ValueVector> {
    dehierarchize_counted(coeffs, axes, set, None)
}

pub fn dehierarchize_counted(
    coeffs: &CoeffVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
    counter: Option<&mut MultCounter>,
) -> Result<ValueVector> {
    check_axes(axes, set.dim(), set.budget())?;
    check_len(set, coeffs.len())?;
    let mut data = coeffs.0.clone();
    let ops: Vec<&LowerTri> = axes.iter().map(|z| z.b()).collect();
    sweep(&mut data, set, &ops, Triangle::Lower, counter);
    Ok(ValueVector(data))
}

/// Full tensor-grid transform: `values` has `(b+1)^D` entries in row-major
/// order (last coordinate fastest); `Binv_k` is applied along every line.
pub fn hierarchize_full(values: &[f64], axes: &[Zappl1D], budget: usize) -> Result<Vec<f64>> {
    let dim = axes.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("no axes".into()));
    }
    check_axes(axes, dim, budget)?;
    let n = budget + 1;
    let total = full_size(n, dim)?;
    if values.len() != total {
        return Err(Error::LengthMismatch {
            expected: total,
            got: values.len(),
        });
    }
    let mut data = values.to_vec();
    let mut line = vec![0.0; n];
    for (k, z) in axes.iter().enumerate() {
        let binv = z.binv();
        let stride = n.pow((dim - 1 - k) as u32);
        for base in 0..total {
            // line starts are those with coordinate k equal to zero
            if !(base / stride).is_multiple_of(n) {
                continue;
            }
            for (t, l) in line.iter_mut().enumerate() {
                *l = data[base + t * stride];
            }
            for i in 0..n {
                let row = binv.row(i);
                data[base + i * stride] = (0..=i).map(|a| row[a] * line[a]).sum();
            }
        }
    }
    Ok(data)
}

fn full_size(n: usize, dim: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..dim {
        total = total
            .checked_mul(n)
            .ok_or_else(|| Error::Overflow("(b+1)^D".into()))?;
    }
    Ok(total)
}

/// Solves the sparse collocation system `B C = f` directly. `B[a][i]` is the
/// product of 1-D ZAPPL values, materialized densely and LU factored.
pub fn dense_oracle(
    values: &ValueVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
) -> Result<CoeffVector> {
    check_axes(axes, set.dim(), set.budget())?;
    check_len(set, values.len())?;
    let n = set.len();
    if n > DENSE_ORACLE_LIMIT {
        return Err(Error::TooLarge {
            what: "N_sparse",
            size: n,
            limit: DENSE_ORACLE_LIMIT,
        });
    }
    let m = sparse_collocation(axes, set);
    let lu = m.lu();
    let sol = lu
        .solve(&DVector::from_column_slice(&values.0))
        .ok_or(Error::Singular)?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(CoeffVector(sol.iter().copied().collect()))
}

/// `B[a][i] = prod_k B_k[a_k][i_k]` over the simplex, rank ordered.
fn sparse_collocation(axes: &[Zappl1D], set: &SimplexIndexSet) -> DMatrix<f64> {
    let n = set.len();
    DMatrix::from_fn(n, n, |a, i| {
        set.index(a)
            .iter()
            .zip(set.index(i))
            .zip(axes)
            .map(|((&ak, &ik), z)| z.b().get(ak - 1, ik - 1))
            .product()
    })
}

/// Outcome of comparing chop-then-invert with invert-then-chop.
#[derive(Clone, Debug)]
pub struct ChopReport {
    pub budget: usize,
    /// `max |(C^T Bk C)^-1 - C^T Bk^-1 C|` over retained entries.
    pub max_deviation: f64,
    /// `max_deviation` divided by the largest retained entry of `Bk^-1`.
    pub scaled_deviation: f64,
    /// Retained block size.
    pub n_sparse: usize,
    pub n_full: usize,
}

impl ChopReport {
    pub fn passes(&self, tolerance: f64) -> bool {
        self.scaled_deviation <= tolerance
    }
}

struct SparseRow {
    // (first column, start in `vals`, length)
    runs: Vec<(usize, usize, usize)>,
    vals: Vec<f64>,
}

impl SparseRow {
    fn from_dense(entries: impl Iterator<Item = f64>) -> Self {
        let mut runs: Vec<(usize, usize, usize)> = Vec::new();
        let mut vals = Vec::new();
        for (i, v) in entries.enumerate() {
            if v == 0.0 {
                continue;
            }
            match runs.last_mut() {
                Some((first, _, len)) if *first + *len == i => *len += 1,
                _ => runs.push((i, vals.len(), 1)),
            }
            vals.push(v);
        }
        Self { runs, vals }
    }

    fn last_col(&self) -> Option<usize> {
        self.runs.last().map(|&(f, _, l)| f + l - 1)
    }

    fn get_last(&self) -> f64 {
        *self.vals.last().expect("nonempty row")
    }

    /// Runs left of the diagonal (the diagonal is the last stored entry).
    fn for_each_strict_run(&self, f: &mut dyn FnMut(usize, &[f64])) {
        let last = self.runs.len() - 1;
        for (k, &(first, start, len)) in self.runs.iter().enumerate() {
            let len = if k == last { len - 1 } else { len };
            if len > 0 {
                f(first, &self.vals[start..start + len]);
            }
        }
    }
}

/// Checks that chopping and inverting commute for the simplex block of
/// `Bk = kron_k B_k`.
///
/// One route takes the retained block of `Bk` and inverts it by forward
/// substitution in rank order (graded order makes the block lower
/// triangular). The other takes the retained block of `Bk^-1`, formed as the
/// Kronecker product of the 1-D inverses.
pub fn verify_chop_identity(axes: &[Zappl1D], dim: usize, budget: usize) -> Result<ChopReport> {
    Ok(verify_chop_identity_levels(axes, dim, budget)?
        .pop()
        .expect("one report per budget"))
}

/// [`verify_chop_identity`] for every budget `0..=budget` at once.
///
/// The simplex for a smaller budget is a rank prefix of the larger one, and
/// forward substitution never reads rows below the one it is solving, so the
/// smaller blocks' inverses are exactly the leading blocks of the larger one.
pub fn verify_chop_identity_levels(
    axes: &[Zappl1D],
    dim: usize,
    budget: usize,
) -> Result<Vec<ChopReport>> {
    check_axes(axes, dim, budget)?;
    let n = budget + 1;
    let n_full = full_size(n, dim).unwrap_or(usize::MAX);
    if n_full > CHOP_CHECK_LIMIT {
        return Err(Error::TooLarge {
            what: "N_full",
            size: n_full,
            limit: CHOP_CHECK_LIMIT,
        });
    }
    let set = SimplexIndexSet::new(dim, budget)?;
    let ns = set.len();
    let level: Vec<usize> = set.iter().map(|i| i.iter().map(|&e| e - 1).sum()).collect();

    let kron = |a: usize, i: usize, m: &dyn Fn(&Zappl1D) -> &LowerTri| -> f64 {
        set.index(a)
            .iter()
            .zip(set.index(i))
            .zip(axes)
            .map(|((&ak, &ik), z)| m(z).get(ak - 1, ik - 1))
            .product()
    };

    // Retained block of Bk. Each row keeps only its nonzeros, grouped into
    // runs of consecutive columns.
    let rows: Vec<SparseRow> = (0..ns)
        .map(|a| SparseRow::from_dense((0..ns).map(|i| kron(a, i, &|z| z.b()))))
        .collect();
    for (a, row) in rows.iter().enumerate() {
        match row.last_col() {
            Some(last) if last > a => {
                return Err(Error::InvalidArgument(
                    "retained block is not lower triangular in rank order".into(),
                ))
            }
            Some(last) if last == a => {}
            _ => return Err(Error::Singular),
        }
    }

    // Per level L: extremes over entries whose row or column has level L and
    // neither exceeds it.
    let mut dev_at = vec![0.0_f64; n];
    let mut max_at = vec![0.0_f64; n];
    let mut record = |a: usize, c: usize, chop_inv: f64| {
        let inv_chop = kron(a, c, &|z| z.binv());
        let l = level[a].max(level[c]);
        max_at[l] = max_at[l].max(inv_chop.abs());
        dev_at[l] = dev_at[l].max((inv_chop - chop_inv).abs());
    };
    lower_inverse_rows(
        ns,
        |j| rows[j].get_last(),
        |j, f| rows[j].for_each_strict_run(f),
        |a, x| {
            for c in 0..ns {
                record(a, c, if c <= a { x[c] } else { 0.0 });
            }
        },
    );

    let mut reports = Vec::with_capacity(n);
    let (mut dev, mut big) = (0.0_f64, 0.0_f64);
    for b in 0..n {
        dev = dev.max(dev_at[b]);
        big = big.max(max_at[b]);
        reports.push(ChopReport {
            budget: b,
            max_deviation: dev,
            scaled_deviation: if big > 0.0 { dev / big } else { dev },
            n_sparse: crate::index_set::size(dim, b)?,
            n_full: (b + 1).pow(dim as u32),
        });
    }
    Ok(reports)
}

/// ZAPPL coefficients to raw-basis coefficients,
/// `d_j = sum_{i >= j} C_i prod_k A_k[i_k][j_k]`.
pub fn to_raw_basis(
    coeffs: &CoeffVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
) -> Result<CoeffVector> {
    check_axes(axes, set.dim(), set.budget())?;
    check_len(set, coeffs.len())?;
    let mut data = coeffs.0.clone();
    let ops: Vec<&LowerTri> = axes.iter().map(|z| z.a()).collect();
    sweep(&mut data, set, &ops, Triangle::Transposed, None);
    Ok(CoeffVector(data))
}

/// Inverse of [`to_raw_basis`], sweeping with `A^-1`.
pub fn from_raw_basis(
    raw: &CoeffVector,
    axes: &[Zappl1D],
    set: &SimplexIndexSet,
) -> Result<CoeffVector> {
    check_axes(axes, set.dim(), set.budget())?;
    check_len(set, raw.len())?;
    let inverses: Vec<LowerTri> = axes.iter().map(|z| z.a().inverse()).collect();
    let ops: Vec<&LowerTri> = inverses.iter().collect();
    let mut data = raw.0.clone();
    sweep(&mut data, set, &ops, Triangle::Transposed, None);
    Ok(CoeffVector(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis1d::{build_zappl, make_leja_points, BasisFamily, PointSequence};

    fn mono_axis(points: &[f64]) -> Zappl1D {
        let fam = BasisFamily::monomial();
        let pts = PointSequence::user_supplied(points.to_vec(), &fam).unwrap();
        build_zappl(&fam, &pts, points.len()).unwrap()
    }

    fn leja_axes(dim: usize, n: usize) -> Vec<Zappl1D> {
        let fam = BasisFamily::chebyshev();
        let pts = make_leja_points(&fam, n, 0.0).unwrap();
        let z = build_zappl(&fam, &pts, n).unwrap();
        vec![z; dim]
    }

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn one_dim_square() {
        let axes = vec![mono_axis(&[0.0, 1.0, -1.0])];
        let set = SimplexIndexSet::new(1, 2).unwrap();
        let c = hierarchize(&ValueVector(vec![0.0, 1.0, 1.0]), &axes, &set, None).unwrap();
        close(&c.0, &[0.0, 1.0, 1.0], 1e-15);
        let v = dehierarchize(&c, &axes, &set).unwrap();
        close(&v.0, &[0.0, 1.0, 1.0], 1e-15);
    }

    #[test]
    fn two_dim_sum() {
        let ax = mono_axis(&[0.0, 1.0]);
        let axes = vec![ax.clone(), ax];
        let set = SimplexIndexSet::new(2, 1).unwrap();
        let c = hierarchize(&ValueVector(vec![0.0, 1.0, 1.0]), &axes, &set, None).unwrap();
        close(&c.0, &[0.0, 1.0, 1.0], 1e-15);
    }

    #[test]
    fn constant_function_is_level_one() {
        let ax = mono_axis(&[0.0, 1.0, -1.0, 0.5]);
        for d in 1..=3 {
            let set = SimplexIndexSet::new(d, 3).unwrap();
            let v = ValueVector(vec![2.5; set.len()]);
            let c = hierarchize(&v, &vec![ax.clone(); d], &set, None).unwrap();
            assert!((c.0[0] - 2.5).abs() < 1e-14);
            assert!(c.0[1..].iter().all(|x| x.abs() < 1e-13));
        }
    }

    #[test]
    fn unit_coefficient_gives_ones() {
        let ax = mono_axis(&[0.0, 1.0, -1.0]);
        let set = SimplexIndexSet::new(2, 2).unwrap();
        let mut c = vec![0.0; set.len()];
        c[0] = 1.0;
        let v = dehierarchize(&CoeffVector(c), &[ax.clone(), ax], &set).unwrap();
        assert!(v.0.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn full_grid_product() {
        let ax = mono_axis(&[0.0, 1.0]);
        let c = hierarchize_full(&[0.0, 0.0, 0.0, 1.0], &[ax.clone(), ax], 1).unwrap();
        close(&c, &[0.0, 0.0, 0.0, 1.0], 1e-15);
    }

    #[test]
    fn full_grid_constant() {
        let axes = leja_axes(3, 4);
        let c = hierarchize_full(&vec![3.0; 64], &axes, 3).unwrap();
        assert!((c[0] - 3.0).abs() < 1e-13);
        assert!(c[1..].iter().all(|x| x.abs() < 1e-12));
        assert!(matches!(
            hierarchize_full(&[1.0; 10], &axes, 3),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn full_grid_agrees_on_pruned_span() {
        // f = sum of simplex ZAPPL products with known coefficients; both
        // transforms must return those coefficients.
        let d = 3;
        let b = 3;
        let axes = leja_axes(d, b + 1);
        let set = SimplexIndexSet::new(d, b).unwrap();
        let truth: Vec<f64> = (0..set.len())
            .map(|o| ((o * 7 % 11) as f64) - 5.0)
            .collect();
        let n = b + 1;
        let pts = axes[0].points().points().to_vec();
        let eval = |x: &[f64]| -> f64 {
            set.iter()
                .zip(&truth)
                .map(|(idx, c)| {
                    c * idx
                        .iter()
                        .zip(x)
                        .zip(&axes)
                        .map(|((&i, &xk), z)| z.eval(i, xk).unwrap())
                        .product::<f64>()
                })
                .sum()
        };
        let mut full_vals = Vec::new();
        for p in 0..n.pow(d as u32) {
            let x: Vec<f64> = (0..d)
                .map(|k| pts[(p / n.pow((d - 1 - k) as u32)) % n])
                .collect();
            full_vals.push(eval(&x));
        }
        let full = hierarchize_full(&full_vals, &axes, b).unwrap();
        let sparse_vals: Vec<f64> = set
            .iter()
            .map(|idx| eval(&idx.iter().map(|&a| pts[a - 1]).collect::<Vec<_>>()))
            .collect();
        let sparse = hierarchize(&ValueVector(sparse_vals), &axes, &set, None).unwrap();
        for (o, idx) in set.iter().enumerate() {
            let p = idx.iter().fold(0, |acc, &a| acc * n + a - 1);
            assert!((full[p] - sparse.0[o]).abs() < 1e-10);
            assert!((sparse.0[o] - truth[o]).abs() < 1e-10);
        }
    }

    #[test]
    fn dense_oracle_small_cases() {
        let axes = vec![mono_axis(&[0.0, 1.0, -1.0])];
        let set = SimplexIndexSet::new(1, 2).unwrap();
        let c = dense_oracle(&ValueVector(vec![0.0, 1.0, 1.0]), &axes, &set).unwrap();
        close(&c.0, &[0.0, 1.0, 1.0], 1e-14);

        let axes = leja_axes(3, 1);
        let set = SimplexIndexSet::new(3, 0).unwrap();
        let c = dense_oracle(&ValueVector(vec![4.0]), &axes, &set).unwrap();
        assert!((c.0[0] - 4.0).abs() < 1e-15);
    }

    #[test]
    fn dense_oracle_matches_sequential() {
        let axes = leja_axes(4, 6);
        let set = SimplexIndexSet::new(4, 5).unwrap();
        let v = ValueVector((0..set.len()).map(|o| ((o as f64) * 0.37).sin()).collect());
        let a = hierarchize(&v, &axes, &set, None).unwrap();
        let b = dense_oracle(&v, &axes, &set).unwrap();
        let scale = b.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        for (x, y) in a.0.iter().zip(&b.0) {
            assert!((x - y).abs() <= 1e-8 * scale);
        }
    }

    #[test]
    fn chop_identity_examples() {
        let ax = mono_axis(&[0.0, 1.0]);
        let r = verify_chop_identity(&[ax.clone(), ax], 2, 1).unwrap();
        assert_eq!((r.n_sparse, r.n_full), (3, 4));
        assert!(r.passes(1e-12));

        let r = verify_chop_identity(&leja_axes(1, 7), 1, 6).unwrap();
        assert!(r.scaled_deviation < 1e-14);

        let r = verify_chop_identity(&leja_axes(3, 3), 3, 2).unwrap();
        assert!(r.passes(1e-12));

        assert!(matches!(
            verify_chop_identity(&leja_axes(7, 4), 7, 3),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn raw_basis_examples() {
        let axes = vec![mono_axis(&[0.0, 1.0, -1.0])];
        let set = SimplexIndexSet::new(1, 2).unwrap();
        let d = to_raw_basis(&CoeffVector(vec![0.0, 1.0, 1.0]), &axes, &set).unwrap();
        close(&d.0, &[0.0, 0.0, 1.0], 1e-15);

        // Points 0, 1 with monomials: zphi = {1, x}, A = I.
        let ax = mono_axis(&[0.0, 1.0]);
        let set = SimplexIndexSet::new(2, 1).unwrap();
        let c = CoeffVector(vec![0.3, -1.2, 4.0]);
        let d = to_raw_basis(&c, &[ax.clone(), ax], &set).unwrap();
        assert_eq!(d, c);
    }

    #[test]
    fn raw_basis_round_trip() {
        let axes = leja_axes(3, 4);
        let set = SimplexIndexSet::new(3, 3).unwrap();
        let c = CoeffVector(
            (0..set.len())
                .map(|o| ((o * o) as f64 * 0.13).cos())
                .collect(),
        );
        let back = from_raw_basis(&to_raw_basis(&c, &axes, &set).unwrap(), &axes, &set).unwrap();
        close(&back.0, &c.0, 1e-12);
    }

    #[test]
    fn shape_errors() {
        let axes = leja_axes(2, 3);
        let set = SimplexIndexSet::new(2, 3).unwrap();
        let v = ValueVector(vec![0.0; set.len()]);
        assert!(matches!(
            hierarchize(&v, &axes, &set, None),
            Err(Error::AxisTooShort { .. })
        ));
        let set = SimplexIndexSet::new(2, 2).unwrap();
        assert!(matches!(
            hierarchize(&v, &axes, &set, None),
            Err(Error::LengthMismatch { .. })
        ));
        let v = ValueVector(vec![0.0; set.len()]);
        assert!(matches!(
            hierarchize(&v, &axes[..1], &set, None),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn counter_matches_hand_count() {
        let axes = leja_axes(1, 4);
        let set = SimplexIndexSet::new(1, 3).unwrap();
        let mut ctr = MultCounter::new();
        hierarchize(&ValueVector(vec![1.0; 4]), &axes, &set, Some(&mut ctr)).unwrap();
        assert_eq!(ctr.count(), 10);
        let mut ctr2 = MultCounter::new();
        dehierarchize_counted(&CoeffVector(vec![1.0; 4]), &axes, &set, Some(&mut ctr2)).unwrap();
        assert_eq!(ctr2.count(), 10);
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let set = SimplexIndexSet::new(2, 2).unwrap();
        let v = ValueVector(vec![0.1, -2.0, 1e-300, 3.5, std::f64::consts::PI, -0.0]);
        let mut buf = Vec::new();
        v.write_csv(&set, &mut buf).unwrap();
        assert_eq!(ValueVector::read_csv(&set, &buf[..]).unwrap(), v);

        let text = String::from_utf8(buf).unwrap();
        let missing: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            ValueVector::read_csv(&set, missing.as_bytes()),
            Err(Error::MissingSample(0))
        ));
        let extra = format!("{text}6,1,1,0.0\n");
        assert!(ValueVector::read_csv(&set, extra.as_bytes()).is_err());
        let dup = format!("{text}0,1,1,0.0\n");
        assert!(ValueVector::read_csv(&set, dup.as_bytes()).is_err());
        let nan = text.replacen("0.1", "NaN", 1);
        assert!(ValueVector::read_csv(&set, nan.as_bytes()).is_err());
        let wrong_idx = text.replacen("0,1,1,", "0,2,1,", 1);
        assert!(ValueVector::read_csv(&set, wrong_idx.as_bytes()).is_err());
    }
}
