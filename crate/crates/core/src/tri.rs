//! Packed row-major storage for square lower-triangular matrices.

use nalgebra::{DMatrix, DMatrixView};

/// An `n x n` lower-triangular matrix stored as `n(n+1)/2` values, row by row.
/// Entries above the diagonal are structurally zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTri {
    n: usize,
    data: Vec<f64>,
}

/// Dot product with four independent accumulators so the loop vectorizes.
#[inline]
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len().min(y.len());
    let (x, y) = (&x[..n], &y[..n]);
    let mut acc = [0.0; 4];
    let mut xc = x.chunks_exact(4);
    let mut yc = y.chunks_exact(4);
    for (a, b) in (&mut xc).zip(&mut yc) {
        for l in 0..4 {
            acc[l] += a[l] * b[l];
        }
    }
    let tail: f64 = xc
        .remainder()
        .iter()
        .zip(yc.remainder())
        .map(|(a, b)| a * b)
        .sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

const INVERSE_BLOCK: usize = 32;
const RECURSION_LEAF: usize = 96;

/// Inverse of a dense lower-triangular block, by splitting into 2 x 2 blocks:
/// `[[L11, 0], [L21, L22]]^-1 = [[X11, 0], [-X22 L21 X11, X22]]`.
pub fn lower_inverse_dense(l: DMatrixView<f64>) -> DMatrix<f64> {
    let n = l.nrows();
    if n <= RECURSION_LEAF {
        // column-oriented forward substitution on e_c
        let mut x = DMatrix::zeros(n, n);
        for c in 0..n {
            let mut col = x.column_mut(c);
            col[c] = 1.0;
            for j in c..n {
                let v = col[j] / l[(j, j)];
                col[j] = v;
                if v != 0.0 {
                    for r in j + 1..n {
                        col[r] -= v * l[(r, j)];
                    }
                }
            }
        }
        return x;
    }
    let h = n / 2;
    let x11 = lower_inverse_dense(l.view((0, 0), (h, h)));
    let x22 = lower_inverse_dense(l.view((h, h), (n - h, n - h)));
    let t = &x22 * l.view((h, 0), (n - h, h));
    let mut x = DMatrix::zeros(n, n);
    x.view_mut((0, 0), (h, h)).copy_from(&x11);
    x.view_mut((h, h), (n - h, n - h)).copy_from(&x22);
    x.view_mut((h, 0), (n - h, h)).gemm(-1.0, &t, &x11, 0.0);
    x
}

/// Rows of `M^-1` for an `n x n` lower-triangular `M`, from `X M = I`.
///
/// `diag(j)` is `M[j][j]`; `strict(j, f)` calls `f(first_col, values)` for
/// each run of stored entries of row `j` left of the diagonal. `sink(r, x)`
/// receives row `r` of the inverse, columns `0..=r`, in ascending `r`.
/// Rows are solved in blocks so each row of `M` is streamed once per block.
pub fn lower_inverse_rows(
    n: usize,
    diag: impl Fn(usize) -> f64,
    strict: impl Fn(usize, &mut dyn FnMut(usize, &[f64])),
    mut sink: impl FnMut(usize, &[f64]),
) {
    let mut r0 = 0;
    while r0 < n {
        let r1 = (r0 + INVERSE_BLOCK).min(n);
        // acc[t][j]: running sum for j not yet solved, X[r][j] once solved.
        let mut acc: Vec<Vec<f64>> = (r0..r1).map(|r| vec![0.0; r + 1]).collect();
        for j in (0..r1).rev() {
            let d = diag(j);
            let first_t = j.saturating_sub(r0);
            for (t, row) in acc.iter_mut().enumerate().skip(first_t) {
                let delta = if r0 + t == j { 1.0 } else { 0.0 };
                row[j] = (delta - row[j]) / d;
            }
            strict(j, &mut |first, vals| {
                for row in acc.iter_mut().skip(first_t) {
                    let x = row[j];
                    if x != 0.0 {
                        for (a, v) in row[first..first + vals.len()].iter_mut().zip(vals) {
                            *a += x * v;
                        }
                    }
                }
            });
        }
        for (t, row) in acc.iter().enumerate() {
            sink(r0 + t, row);
        }
        r0 = r1;
    }
}

#[inline]
fn row_start(row: usize) -> usize {
    row * (row + 1) / 2
}

impl LowerTri {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        }
    }

    /// Builds from a dense row-major closure; only `col <= row` is queried.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..=r {
                m.data[row_start(r) + c] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based entry; returns exact zero above the diagonal.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.n && col < self.n);
        if col > row {
            0.0
        } else {
            self.data[row_start(row) + col]
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        assert!(col <= row && row < self.n, "write above diagonal");
        self.data[row_start(row) + col] = value;
    }

    /// The stored part of row `row`: columns `0..=row`.
    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row_start(row)..row_start(row) + row + 1]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.get(i, i))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest row 1-norm.
    pub fn max_row_norm(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Inverse of a matrix with nonzero diagonal.
    pub fn inverse(&self) -> LowerTri {
        let dense = DMatrix::from_fn(self.n, self.n, |r, c| self.get(r, c));
        let inv = lower_inverse_dense(dense.as_view());
        LowerTri::from_fn(self.n, |r, c| inv[(r, c)])
    }

    /// Dense `n x n` copy, row-major.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// `y = M x` restricted to the leading `x.len()` block.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..x.len())
            .map(|r| self.row(r).iter().zip(x).map(|(m, v)| m * v).sum())
            .collect()
    }
}
