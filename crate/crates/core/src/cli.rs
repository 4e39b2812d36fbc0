//! Command implementations behind the `zappl` binary: `grid`, `fit`, `eval`,
//! `verify` and `cost`. Everything here writes to caller-supplied sinks so
//! the commands can be driven from tests and other programs as well.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis1d::{build_zappl, make_leja_points, BasisFamily, PointSequence, Zappl1D};
use crate::builtin::Builtin;
use crate::costmodel::{count_verify, n_mult_sequential, sweep, CostReport};
use crate::error::{Error, Result};
use crate::index_set::{SimplexIndexSet, SparseGrid};
use crate::smolyak::{DeltaBaseline, Interpolant};
use crate::transform::{
    dense_oracle, verify_chop_identity, CoeffVector, MultCounter, ValueVector, CHOP_CHECK_LIMIT,
    DENSE_ORACLE_LIMIT,
};

pub const DENSE_ORACLE_TOL: f64 = 1e-8;
pub const CHOP_TOL: f64 = 1e-12;
pub const BASELINE_TOL: f64 = 1e-9;
pub const BASELINE_POINTS: usize = 100;

/// One job's settings. Loaded from JSON; command-line flags override fields.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub dim: usize,
    pub budget: usize,
    pub basis: String,
    pub domain: (f64, f64),
    /// `leja`, or a path to a one-point-per-line CSV.
    pub points: String,
    pub seed_point: Option<f64>,
    /// Builtin function spec, see [`crate::builtin`].
    pub function: Option<String>,
    /// Value CSV joined to the grid by offset.
    pub values: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub rng_seed: u64,
    /// Added to one hierarchized coefficient before the dense-oracle check.
    pub perturb: Option<f64>,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            dim: 2,
            budget: 4,
            basis: "chebyshev".into(),
            domain: (-1.0, 1.0),
            points: "leja".into(),
            seed_point: None,
            function: None,
            values: None,
            out: None,
            rng_seed: 0,
            perturb: None,
        }
    }
}

impl JobConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidArgument("--dim must be at least 1".into()));
        }
        self.family().map(|_| ())
    }

    pub fn family(&self) -> Result<BasisFamily> {
        BasisFamily::by_name(&self.basis, self.domain.0, self.domain.1)
    }

    pub fn seed_point(&self) -> Result<f64> {
        Ok(self.seed_point.unwrap_or(self.family()?.default_seed()))
    }

    pub fn point_sequence(&self, n: usize) -> Result<PointSequence> {
        let fam = self.family()?;
        if self.points.eq_ignore_ascii_case("leja") {
            make_leja_points(&fam, n, self.seed_point()?)
        } else {
            PointSequence::read_csv(File::open(&self.points)?, &fam)
        }
    }

    /// `dim` copies of the ZAPPL axis with `budget + 1` functions.
    pub fn axes(&self) -> Result<Vec<Zappl1D>> {
        self.axes_for(self.dim, self.budget)
    }

    fn axes_for(&self, dim: usize, budget: usize) -> Result<Vec<Zappl1D>> {
        let n = budget + 1;
        let fam = self.family()?;
        let z = build_zappl(&fam, &self.point_sequence(n)?, n)?;
        Ok(vec![z; dim])
    }

    fn metadata(&self) -> String {
        let mut s = format!(
            "# zappl dim={} budget={} basis={} lo={} hi={} points={}",
            self.dim, self.budget, self.basis, self.domain.0, self.domain.1, self.points
        );
        if let Some(p) = self.seed_point {
            s.push_str(&format!(" seed={p}"));
        }
        s
    }

    fn from_metadata(line: &str) -> Result<Self> {
        let body = line.trim().strip_prefix("# zappl").ok_or_else(|| {
            Error::Data("coefficient file lacks a `# zappl` metadata line".into())
        })?;
        let kv: BTreeMap<&str, &str> = body
            .split_whitespace()
            .filter_map(|t| t.split_once('='))
            .collect();
        let get = |k: &str| {
            kv.get(k)
                .copied()
                .ok_or_else(|| Error::Data(format!("metadata missing {k}")))
        };
        let num = |k: &str| -> Result<f64> {
            get(k)?
                .parse()
                .map_err(|_| Error::Data(format!("metadata {k} is not a number")))
        };
        let int = |k: &str| -> Result<usize> {
            get(k)?
                .parse()
                .map_err(|_| Error::Data(format!("metadata {k} is not an integer")))
        };
        Ok(Self {
            dim: int("dim")?,
            budget: int("budget")?,
            basis: get("basis")?.to_string(),
            domain: (num("lo")?, num("hi")?),
            points: get("points")?.to_string(),
            seed_point: kv.get("seed").map(|_| num("seed")).transpose()?,
            ..Self::default()
        })
    }
}

pub fn cmd_grid(cfg: &JobConfig, out: &mut dyn Write) -> Result<SparseGrid> {
    cfg.validate()?;
    let set = SimplexIndexSet::new(cfg.dim, cfg.budget)?;
    let axis = cfg.point_sequence(cfg.budget + 1)?;
    let grid = SparseGrid::new(set, vec![axis; cfg.dim])?;
    grid.write_csv(out)?;
    Ok(grid)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FitReport {
    pub dim: usize,
    pub budget: usize,
    pub n_sparse: usize,
    pub measured_mults: u64,
    pub formula_mults: u128,
    pub max_node_residual: f64,
    pub max_node_residual_relative: f64,
}

fn sample_values(cfg: &JobConfig, grid: &SparseGrid) -> Result<ValueVector> {
    match (&cfg.function, &cfg.values) {
        (Some(spec), None) => {
            let f = Builtin::parse(spec, cfg.dim, cfg.domain)?;
            let v: Vec<f64> = (0..grid.set().len())
                .map(|o| f.eval(&grid.point(o)))
                .collect();
            if let Some(o) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::Data(format!(
                    "non-finite function value at offset {o}"
                )));
            }
            Ok(ValueVector(v))
        }
        (None, Some(path)) => ValueVector::read_csv(grid.set(), File::open(path)?),
        (Some(_), Some(_)) => Err(Error::InvalidArgument(
            "give either --function or --values, not both".into(),
        )),
        (None, None) => Err(Error::InvalidArgument(
            "fit needs --function or --values".into(),
        )),
    }
}

/// Samples (or reads) values, hierarchizes, writes the coefficient CSV and
/// returns a report with the measured multiplication count and the largest
/// interpolation residual at the grid points.
pub fn cmd_fit(cfg: &JobConfig, coeff_out: &mut dyn Write) -> Result<FitReport> {
    cfg.validate()?;
    let set = SimplexIndexSet::new(cfg.dim, cfg.budget)?;
    let axes = cfg.axes()?;
    let grid = SparseGrid::new(
        set.clone(),
        axes.iter().map(|z| z.points().clone()).collect(),
    )?;
    let values = sample_values(cfg, &grid)?;
    let mut counter = MultCounter::new();
    let itp = Interpolant::fit(&values, axes, set.clone(), Some(&mut counter))?;

    let mut resid = 0.0_f64;
    let mut scale = 0.0_f64;
    for (o, v) in values.0.iter().enumerate() {
        resid = resid.max((itp.eval(&grid.point(o))? - v).abs());
        scale = scale.max(v.abs());
    }

    writeln!(coeff_out, "{}", cfg.metadata())?;
    itp.coeffs().write_csv(&set, &mut *coeff_out)?;
    Ok(FitReport {
        dim: cfg.dim,
        budget: cfg.budget,
        n_sparse: set.len(),
        measured_mults: counter.count(),
        formula_mults: n_mult_sequential(cfg.dim, cfg.budget)?,
        max_node_residual: resid,
        max_node_residual_relative: if scale > 0.0 { resid / scale } else { resid },
    })
}

/// Reads a coefficient CSV (as written by `fit`) back into an interpolant.
pub fn load_interpolant<R: Read>(coeffs: R) -> Result<Interpolant> {
    let mut text = String::new();
    BufReader::new(coeffs).read_to_string(&mut text)?;
    let meta = text
        .lines()
        .find(|l| l.trim_start().starts_with("# zappl"))
        .ok_or_else(|| Error::Data("coefficient file lacks a `# zappl` metadata line".into()))?;
    let cfg = JobConfig::from_metadata(meta)?;
    cfg.validate()?;
    let set = SimplexIndexSet::new(cfg.dim, cfg.budget)?;
    let c = CoeffVector::read_csv(&set, text.as_bytes())?;
    Interpolant::new(c, cfg.axes()?, set)
}

/// Evaluates a fitted interpolant at every point of `points` (one point per
/// line, `D` comma-separated reals) and writes `x_1..x_D,value` lines.
pub fn cmd_eval<R: Read, P: Read>(coeffs: R, points: P, out: &mut dyn Write) -> Result<Vec<f64>> {
    let itp = load_interpolant(coeffs)?;
    let d = itp.set().dim();
    let mut results = Vec::new();
    for (lineno, line) in BufReader::new(points).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let x: Vec<f64> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("line {}: bad number {t:?}", lineno + 1)))
            })
            .collect::<Result<_>>()?;
        if x.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.len(),
            });
        }
        let v = itp.eval(&x)?;
        let fields: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{},{v}", fields.join(","))?;
        results.push(v);
    }
    Ok(results)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub check: &'static str,
    pub dim: usize,
    pub budget: usize,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

fn max_rel_diff(got: &[f64], want: &[f64]) -> f64 {
    let scale = want.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let dev = got
        .iter()
        .zip(want)
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    if scale > 0.0 {
        dev / scale
    } else {
        dev
    }
}

/// Runs the oracle checks for every `(d, b)` with `1 <= d <= dim` and
/// `0 <= b <= budget`, writing one JSON line per check.
pub fn cmd_verify(cfg: &JobConfig, out: &mut dyn Write) -> Result<VerifyReport> {
    cfg.validate()?;
    let mut checks = Vec::new();
    for d in 1..=cfg.dim {
        for b in 0..=cfg.budget {
            let axes = cfg.axes_for(d, b)?;
            let set = SimplexIndexSet::new(d, b)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ ((d as u64) << 32 | b as u64));
            let values = ValueVector(
                (0..set.len())
                    .map(|_| rng.random_range(-1.0..1.0))
                    .collect(),
            );

            let itp = Interpolant::fit(&values, axes.clone(), set.clone(), None)?;
            if set.len() <= DENSE_ORACLE_LIMIT {
                let mut c = itp.coeffs().0.clone();
                if let Some(eps) = cfg.perturb {
                    c[0] += eps;
                }
                let oracle = dense_oracle(&values, &axes, &set)?;
                let dev = max_rel_diff(&c, &oracle.0);
                checks.push(CheckResult {
                    check: "dense_oracle",
                    dim: d,
                    budget: b,
                    deviation: dev,
                    tolerance: DENSE_ORACLE_TOL,
                    pass: dev <= DENSE_ORACLE_TOL,
                    note: cfg
                        .perturb
                        .map(|e| format!("coefficient 0 perturbed by {e}")),
                });
            }

            if (b + 1)
                .checked_pow(d as u32)
                .is_some_and(|n| n <= CHOP_CHECK_LIMIT)
            {
                let r = verify_chop_identity(&axes, d, b)?;
                checks.push(CheckResult {
                    check: "chop_identity",
                    dim: d,
                    budget: b,
                    deviation: r.scaled_deviation,
                    tolerance: CHOP_TOL,
                    pass: r.passes(CHOP_TOL),
                    note: None,
                });
            }

            let base = DeltaBaseline::new(axes.clone(), set.clone(), values.clone())?;
            let (lo, hi) = cfg.domain;
            let mut got = Vec::with_capacity(BASELINE_POINTS);
            let mut want = Vec::with_capacity(BASELINE_POINTS);
            for _ in 0..BASELINE_POINTS {
                let x: Vec<f64> = (0..d).map(|_| rng.random_range(lo..=hi)).collect();
                got.push(itp.eval(&x)?);
                want.push(base.eval(&x)?);
            }
            let dev = max_rel_diff(&got, &want);
            checks.push(CheckResult {
                check: "delta_baseline",
                dim: d,
                budget: b,
                deviation: dev,
                tolerance: BASELINE_TOL,
                pass: dev <= BASELINE_TOL,
                note: None,
            });

            let cc = count_verify(d, b, &axes)?;
            checks.push(CheckResult {
                check: "mult_count",
                dim: d,
                budget: b,
                deviation: (cc.measured as f64 - cc.formula as f64).abs(),
                tolerance: 0.0,
                pass: cc.passed(),
                note: Some(format!("measured {} formula {}", cc.measured, cc.formula)),
            });
        }
    }
    for c in &checks {
        writeln!(out, "{}", serde_json::to_string(c)?)?;
    }
    let all_passed = checks.iter().all(|c| c.pass);
    writeln!(
        out,
        "{}",
        serde_json::json!({ "summary": { "checks": checks.len(), "all_passed": all_passed } })
    )?;
    Ok(VerifyReport { checks, all_passed })
}

/// Default budgets for the cost tables.
pub const DEFAULT_COST_BUDGETS: [usize; 3] = [4, 9, 14];

pub fn cmd_cost(d_max: usize, budgets: &[usize], out: &mut dyn Write) -> Result<CostReport> {
    if d_max == 0 {
        return Err(Error::InvalidArgument("--dmax must be at least 1".into()));
    }
    let rep = sweep(1..=d_max, budgets)?;
    rep.write_csv(out)?;
    Ok(rep)
}
