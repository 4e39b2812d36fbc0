//! Exact operation counts for the sequential transform and for the
//! separate-grids method, plus the sweep tables behind the scaling plots.
//!
//! All counts are `u128`; the largest table entries (b = 14, D = 20) are far
//! beyond `u64` for the full grid size.

use std::io::Write;

use crate::basis1d::Zappl1D;
use crate::error::{Error, Result};
use crate::index_set::SimplexIndexSet;
use crate::transform::{hierarchize, MultCounter, ValueVector};

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

/// `C(n, k)` in `u128`.
pub fn binomial(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k {
        acc = acc
            .checked_mul(n - k + j)
            .ok_or_else(|| overflow("binomial"))?
            / j;
    }
    Ok(acc)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `N_sparse = C(D+b, D)`.
pub fn n_sparse(dim: usize, budget: usize) -> Result<u128> {
    check_dim(dim)?;
    binomial((dim + budget) as u128, dim as u128)
}

/// `N_full = (b+1)^D`.
pub fn n_full(dim: usize, budget: usize) -> Result<u128> {
    check_dim(dim)?;
    (budget as u128 + 1)
        .checked_pow(dim as u32)
        .ok_or_else(|| overflow("(b+1)^D"))
}

/// Closed form `D (b/(D+1) + 1) N_sparse`, evaluated as
/// `D * N_sparse * (b+D+1) / (D+1)` with an exactness check on the division.
pub fn n_mult_sequential(dim: usize, budget: usize) -> Result<u128> {
    let ns = n_sparse(dim, budget)?;
    let d = dim as u128;
    let num = d
        .checked_mul(ns)
        .and_then(|v| v.checked_mul(budget as u128 + d + 1))
        .ok_or_else(|| overflow("N_mult"))?;
    if num % (d + 1) != 0 {
        return Err(Error::InvalidArgument(format!(
            "N_mult not integral for D={dim}, b={budget}"
        )));
    }
    Ok(num / (d + 1))
}

/// Direct evaluation of the nested sums that count one pass of the
/// sequential transform (outer `a_D .. a_2`, then `i_1`, then `a_1 <= i_1`),
/// times `D`.
pub fn n_mult_nested_sums(dim: usize, budget: usize) -> Result<u128> {
    check_dim(dim)?;
    // `free` is the budget left after the outer coordinates: the next upper
    // limit is `free + 1`.
    fn outer(depth: usize, free: usize) -> u128 {
        if depth == 0 {
            let mut s = 0u128;
            for i1 in 1..=free + 1 {
                for _a1 in 1..=i1 {
                    s += 1;
                }
            }
            return s;
        }
        (1..=free + 1)
            .map(|a| outer(depth - 1, free - (a - 1)))
            .sum()
    }
    (dim as u128)
        .checked_mul(outer(dim - 1, budget))
        .ok_or_else(|| overflow("nested sums"))
}

/// `sum_{|l-1|_1 <= b} prod_k l_k^n`, via truncated products of the 1-D
/// generating series `sum_e (e+1)^n t^e`.
pub fn n_mult_separate(dim: usize, budget: usize, exponent: u32) -> Result<u128> {
    check_dim(dim)?;
    let series: Vec<u128> = (0..=budget as u128)
        .map(|e| (e + 1).checked_pow(exponent).ok_or_else(|| overflow("l^n")))
        .collect::<Result<_>>()?;
    let mut acc = vec![0u128; budget + 1];
    acc[0] = 1;
    for _ in 0..dim {
        let mut next = vec![0u128; budget + 1];
        for (s, &p) in acc.iter().enumerate() {
            if p == 0 {
                continue;
            }
            for (e, &g) in series[..=budget - s].iter().enumerate() {
                let term = p.checked_mul(g).ok_or_else(|| overflow("N_sep"))?;
                next[s + e] = next[s + e]
                    .checked_add(term)
                    .ok_or_else(|| overflow("N_sep"))?;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .try_fold(0u128, |t, v| t.checked_add(v))
        .ok_or_else(|| overflow("N_sep"))
}

/// Same quantity by walking the index set. Only feasible for small sets.
pub fn n_mult_separate_enumerated(dim: usize, budget: usize, exponent: u32) -> Result<u128> {
    let set = SimplexIndexSet::new(dim, budget)?;
    let total = set.iter().try_fold(0u128, |t, l| {
        let p = l
            .iter()
            .try_fold(1u128, |p, &lk| p.checked_mul((lk as u128).pow(exponent)))
            .ok_or_else(|| overflow("N_sep"))?;
        t.checked_add(p).ok_or_else(|| overflow("N_sep"))
    });
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountCheck {
    pub dim: usize,
    pub budget: usize,
    pub measured: u128,
    pub formula: u128,
}

impl CountCheck {
    pub fn passed(&self) -> bool {
        self.measured == self.formula
    }
}

/// Runs an instrumented transform on arbitrary values and compares the
/// multiplication count with the closed form.
pub fn count_verify(dim: usize, budget: usize, axes: &[Zappl1D]) -> Result<CountCheck> {
    let set = SimplexIndexSet::new(dim, budget)?;
    let values = ValueVector((0..set.len()).map(|o| 1.0 + o as f64).collect());
    let mut counter = MultCounter::new();
    hierarchize(&values, axes, &set, Some(&mut counter))?;
    Ok(CountCheck {
        dim,
        budget,
        measured: counter.count() as u128,
        formula: n_mult_sequential(dim, budget)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostCounts {
    pub n_sparse: u128,
    pub n_full: u128,
    pub n_mult_seq: u128,
    pub n_sep_mvp: u128,
    pub n_sep_inv: u128,
    pub n_sep_total: u128,
}

impl CostCounts {
    pub fn compute(dim: usize, budget: usize) -> Result<Self> {
        let n_sep_mvp = n_mult_separate(dim, budget, 2)?;
        let n_sep_inv = n_mult_separate(dim, budget, 3)?;
        Ok(Self {
            n_sparse: n_sparse(dim, budget)?,
            n_full: n_full(dim, budget)?,
            n_mult_seq: n_mult_sequential(dim, budget)?,
            n_sep_mvp,
            n_sep_inv,
            n_sep_total: n_sep_mvp
                .checked_add(n_sep_inv)
                .ok_or_else(|| overflow("N_sep total"))?,
        })
    }

    /// Separate-grids cost over sequential cost.
    pub fn ratio(&self) -> f64 {
        self.n_sep_total as f64 / self.n_mult_seq as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CostRow {
    pub dim: usize,
    pub budget: usize,
    /// `None` when some count overflowed.
    pub counts: Option<CostCounts>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CostReport {
    pub rows: Vec<CostRow>,
}

pub const COST_CSV_HEADER: &str =
    "D,b,N_sparse,N_full,N_mult_seq,N_sep_mvp,N_sep_inv,N_sep_total,ratio_sep_over_seq";

impl CostReport {
    pub fn row(&self, dim: usize, budget: usize) -> Option<&CostRow> {
        self.rows
            .iter()
            .find(|r| r.dim == dim && r.budget == budget)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{COST_CSV_HEADER}")?;
        for r in &self.rows {
            match &r.counts {
                Some(c) => writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{}",
                    r.dim,
                    r.budget,
                    c.n_sparse,
                    c.n_full,
                    c.n_mult_seq,
                    c.n_sep_mvp,
                    c.n_sep_inv,
                    c.n_sep_total,
                    c.ratio()
                )?,
                None => writeln!(
                    w,
                    "{},{},overflow,overflow,overflow,overflow,overflow,overflow,",
                    r.dim, r.budget
                )?,
            }
        }
        Ok(())
    }
}

/// Cost table over every `(D, b)` pair, budgets outermost.
pub fn sweep(
    dims: impl IntoIterator<Item = usize> + Clone,
    budgets: &[usize],
) -> Result<CostReport> {
    let mut rows = Vec::new();
    for &b in budgets {
        for d in dims.clone() {
            check_dim(d)?;
            rows.push(CostRow {
                dim: d,
                budget: b,
                counts: CostCounts::compute(d, b).ok(),
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("empty sweep".into()));
    }
    Ok(CostReport { rows })
}
