//! Nested 1-D point sequences and zero-at-previous-points (ZAPPL) bases.
//!
//! A raw family `phi_1, phi_2, ...` is importance ordered: level `l` uses the
//! first `l` functions and the first `l` points. The ZAPPL function of level
//! `i` is the combination
//!
//! ```text
//! zphi_i(x) = sum_{j <= i} A[i][j] phi_j(x),   A[i][i] = 1,
//! zphi_i(r_a) = 0 for every a < i,
//! ```
//!
//! so the collocation matrix `B[a][i] = zphi_i(r_a)` is lower triangular.

use std::f64::consts::PI;
use std::io::{Read, Write};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tri::{lower_inverse_dense, LowerTri};

/// Number of Chebyshev-distributed candidates scanned when building Leja points.
pub const LEJA_CANDIDATES: usize = 10001;

/// Pivots smaller than this times `max |V|` are treated as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

const BUILD_BLOCK: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `x^(j-1)` in the unscaled coordinate.
    Monomial,
    /// `T_(j-1)` of the coordinate mapped affinely onto `[-1, 1]`.
    Chebyshev,
}

/// An importance-ordered 1-D basis on an interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisFamily {
    kind: FamilyKind,
    lo: f64,
    hi: f64,
}

impl BasisFamily {
    pub fn new(kind: FamilyKind, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "domain [{lo}, {hi}] must be a finite nonempty interval"
            )));
        }
        Ok(Self { kind, lo, hi })
    }

    pub fn chebyshev() -> Self {
        Self {
            kind: FamilyKind::Chebyshev,
            lo: -1.0,
            hi: 1.0,
        }
    }

    pub fn monomial() -> Self {
        Self {
            kind: FamilyKind::Monomial,
            lo: -1.0,
            hi: 1.0,
        }
    }

    /// Looks a family up by the name used in configs and file headers.
    pub fn by_name(name: &str, lo: f64, hi: f64) -> Result<Self> {
        let kind = match name.to_ascii_lowercase().as_str() {
            "monomial" | "monomials" => FamilyKind::Monomial,
            "chebyshev" | "chebyshev-first-kind" | "cheb" => FamilyKind::Chebyshev,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown basis family {other:?} (expected monomial or chebyshev)"
                )))
            }
        };
        Self::new(kind, lo, hi)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Monomial => "monomial",
            FamilyKind::Chebyshev => "chebyshev",
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Seed for Leja sequences: 0 on symmetric domains, the midpoint otherwise.
    pub fn default_seed(&self) -> f64 {
        if self.lo == -self.hi {
            0.0
        } else {
            0.5 * (self.lo + self.hi)
        }
    }

    fn reference(&self, x: f64) -> f64 {
        (2.0 * x - self.lo - self.hi) / (self.hi - self.lo)
    }

    /// `phi_j(x)` for `j >= 1`.
    pub fn eval(&self, j: usize, x: f64) -> f64 {
        assert!(j >= 1, "basis functions are numbered from 1");
        let mut out = vec![0.0; j];
        self.eval_all(x, &mut out);
        out[j - 1]
    }

    /// Fills `out[j] = phi_(j+1)(x)` for all `j < out.len()`.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        if out.is_empty() {
            return;
        }
        out[0] = 1.0;
        match self.kind {
            FamilyKind::Monomial => {
                for j in 1..out.len() {
                    out[j] = out[j - 1] * x;
                }
            }
            FamilyKind::Chebyshev => {
                let t = self.reference(x);
                if out.len() > 1 {
                    out[1] = t;
                }
                for j in 2..out.len() {
                    out[j] = 2.0 * t * out[j - 1] - out[j - 2];
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Leja,
    UserSupplied,
}

/// Nested 1-D points: the first `m` entries are the level-`m` point set.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSequence {
    points: Vec<f64>,
    generator: Generator,
}

impl PointSequence {
    /// Validates a user-supplied sequence against a family's domain.
    pub fn user_supplied(points: Vec<f64>, family: &BasisFamily) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("point sequence is empty".into()));
        }
        for &p in &points {
            if !p.is_finite() || !family.contains(p) {
                let (lo, hi) = family.domain();
                return Err(Error::OutsideDomain {
                    axis: 0,
                    value: p,
                    lo,
                    hi,
                });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidArgument(format!("duplicate point {p}")));
            }
        }
        Ok(Self {
            points,
            generator: Generator::UserSupplied,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    /// The level-`n` prefix.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            points: self.points[..n.min(self.points.len())].to_vec(),
            generator: self.generator,
        }
    }

    /// One real per line, shortest round-trip decimal.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        for p in &self.points {
            writeln!(w, "{p}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R, family: &BasisFamily) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(r);
        let mut points = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let field = rec
                .get(0)
                .ok_or_else(|| Error::Data("empty line in point file".into()))?;
            let v: f64 = field
                .parse()
                .map_err(|_| Error::Data(format!("not a number: {field:?}")))?;
            points.push(v);
        }
        Self::user_supplied(points, family)
    }
}

/// Candidate grid: Chebyshev-Lobatto nodes on the domain, ascending, mirrored
/// exactly about the midpoint.
fn leja_candidates(family: &BasisFamily) -> Vec<f64> {
    let n = LEJA_CANDIDATES;
    let last = n - 1;
    let mut t = vec![0.0; n];
    for j in 0..=last / 2 {
        t[j] = -(PI * j as f64 / last as f64).cos();
        t[last - j] = -t[j];
    }
    if last.is_multiple_of(2) {
        t[last / 2] = 0.0;
    }
    t[0] = -1.0;
    t[last] = 1.0;
    let (lo, hi) = family.domain();
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    t.into_iter()
        .map(|t| (mid + half * t).clamp(lo, hi))
        .collect()
}

/// Classic unweighted Leja sequence starting at `seed_point`: each new point
/// maximizes the product of distances to all earlier points over a fixed
/// candidate grid. Ties go to the smallest candidate.
pub fn make_leja_points(family: &BasisFamily, n: usize, seed_point: f64) -> Result<PointSequence> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    if !seed_point.is_finite() || !family.contains(seed_point) {
        let (lo, hi) = family.domain();
        return Err(Error::OutsideDomain {
            axis: 0,
            value: seed_point,
            lo,
            hi,
        });
    }
    if n > LEJA_CANDIDATES {
        return Err(Error::InsufficientCandidates {
            requested: n,
            available: LEJA_CANDIDATES,
        });
    }
    let cand = leja_candidates(family);
    // log of the distance product; -inf marks candidates already used.
    let mut log_prod: Vec<f64> = cand.iter().map(|&x| (x - seed_point).abs().ln()).collect();
    let mut points = Vec::with_capacity(n);
    points.push(seed_point);
    while points.len() < n {
        let mut best = None;
        let mut best_val = f64::NEG_INFINITY;
        for (c, &v) in log_prod.iter().enumerate() {
            if v > best_val {
                best_val = v;
                best = Some(c);
            }
        }
        let Some(best) = best else {
            return Err(Error::InsufficientCandidates {
                requested: n,
                available: points.len(),
            });
        };
        let x = cand[best];
        points.push(x);
        for (lp, &c) in log_prod.iter_mut().zip(&cand) {
            *lp += (c - x).abs().ln();
        }
    }
    Ok(PointSequence {
        points,
        generator: Generator::Leja,
    })
}

/// A ZAPPL basis on one axis, together with its collocation matrix and inverse.
/// Immutable once built.
#[derive(Clone, Debug)]
pub struct Zappl1D {
    family: BasisFamily,
    points: PointSequence,
    a: LowerTri,
    b: LowerTri,
    binv: LowerTri,
}

/// Builds the first `n` ZAPPL functions on the first `n` points.
///
/// Each new function is the raw one minus its interpolant in the earlier
/// ZAPPL functions; the coefficients come from forward substitution against
/// the already lower-triangular leading block of `B`.
pub fn build_zappl(family: &BasisFamily, points: &PointSequence, n: usize) -> Result<Zappl1D> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "need at least one basis function".into(),
        ));
    }
    if n > points.len() {
        return Err(Error::AxisTooShort {
            axis: 0,
            len: points.len(),
            needed: n,
        });
    }
    let pts = &points.points()[..n];
    // m[(a, j)] = phi_j(r_a), factored in place as V = B U with B lower
    // triangular and U unit upper triangular; then A = (U^T)^-1.
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut row = vec![0.0; n];
    for (r, &x) in pts.iter().enumerate() {
        family.eval_all(x, &mut row);
        for (j, &y) in row.iter().enumerate() {
            m[(r, j)] = y;
        }
    }
    let vmax = m.amax();
    let tolerance = PIVOT_TOLERANCE * vmax;

    let mut k0 = 0;
    while k0 < n {
        let k1 = (k0 + BUILD_BLOCK).min(n);
        for j in k0..k1 {
            let pivot = m[(j, j)];
            if !(pivot.abs() >= tolerance) || pivot == 0.0 {
                return Err(Error::Degenerate {
                    level: j + 1,
                    pivot,
                    tolerance,
                });
            }
            for jj in j + 1..k1 {
                let u = m[(j, jj)] / pivot;
                m[(j, jj)] = u;
                if u != 0.0 {
                    for r in j + 1..n {
                        m[(r, jj)] -= m[(r, j)] * u;
                    }
                }
            }
        }
        if k1 < n {
            let l11 = m.view((k0, k0), (k1 - k0, k1 - k0)).lower_triangle();
            let mut u12 = m.view((k0, k1), (k1 - k0, n - k1)).into_owned();
            if !l11.solve_lower_triangular_mut(&mut u12) {
                return Err(Error::Singular);
            }
            m.view_mut((k0, k1), (k1 - k0, n - k1)).copy_from(&u12);
            let l21 = m.view((k1, k0), (n - k1, k1 - k0)).into_owned();
            m.view_mut((k1, k1), (n - k1, n - k1))
                .gemm(-1.0, &l21, &u12, 1.0);
        }
        k0 = k1;
    }

    let b = LowerTri::from_fn(n, |r, c| m[(r, c)]);
    let mut ut = m.transpose();
    ut.fill_diagonal(1.0);
    ut.fill_upper_triangle(0.0, 1);
    let a_dense = lower_inverse_dense(ut.as_view());
    let a = LowerTri::from_fn(n, |r, c| a_dense[(r, c)]);
    let binv = b.inverse();
    Ok(Zappl1D {
        family: *family,
        points: points.truncated(n),
        a,
        b,
        binv,
    })
}

impl Zappl1D {
    pub fn family(&self) -> &BasisFamily {
        &self.family
    }

    pub fn points(&self) -> &PointSequence {
        &self.points
    }

    /// Number of functions (and points).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Change of basis, `zphi_i = sum_j A[i][j] phi_j`.
    pub fn a(&self) -> &LowerTri {
        &self.a
    }

    /// Collocation, `B[a][i] = zphi_i(r_a)`.
    pub fn b(&self) -> &LowerTri {
        &self.b
    }

    pub fn binv(&self) -> &LowerTri {
        &self.binv
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `zphi_i(x)`, 1-based.
    pub fn eval(&self, i: usize, x: f64) -> Result<f64> {
        self.check_index(i)?;
        let mut raw = vec![0.0; i];
        self.family.eval_all(x, &mut raw);
        Ok(self.a.row(i - 1).iter().zip(&raw).map(|(a, p)| a * p).sum())
    }

    /// Fills `out[i] = zphi_(i+1)(x)` for `i < out.len()`.
    pub fn eval_all(&self, x: f64, out: &mut [f64]) {
        let n = out.len();
        assert!(n <= self.len());
        let mut raw = vec![0.0; n];
        self.family.eval_all(x, &mut raw);
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.a.row(i).iter().zip(&raw).map(|(a, p)| a * p).sum();
        }
    }

    /// Lagrange-type (cardinal) function of point `a` over all `n` points.
    pub fn lagrange_type(&self, a: usize, x: f64) -> Result<f64> {
        self.lagrange_type_level(self.len(), a, x)
    }

    /// Cardinal function of point `a` over the first `level` points. The
    /// leading block of `Binv` inverts the leading block of `B`, so every
    /// level reuses the same matrix.
    pub fn lagrange_type_level(&self, level: usize, a: usize, x: f64) -> Result<f64> {
        self.check_index(level)?;
        if a == 0 || a > level {
            return Err(Error::IndexOutOfRange {
                index: a,
                max: level,
            });
        }
        let mut z = vec![0.0; level];
        self.eval_all(x, &mut z);
        Ok((a - 1..level).map(|j| self.binv.get(j, a - 1) * z[j]).sum())
    }
}
