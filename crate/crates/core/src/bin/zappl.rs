use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zappl::cli::{self, JobConfig};

#[derive(Parser)]
#[command(
    name = "zappl",
    version,
    about = "Sparse-grid interpolation with sequential-sum hierarchization"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the sparse grid as `offset,i_1..i_D,x_1..x_D`.
    Grid(JobArgs),
    /// Hierarchize sampled values and write coefficients.
    Fit(JobArgs),
    /// Evaluate a fitted interpolant at points read from a CSV.
    Eval {
        /// Coefficient CSV written by `fit`.
        #[arg(long)]
        coeffs: PathBuf,
        /// One point per line, `D` comma-separated reals.
        #[arg(long)]
        at: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run oracle checks for every dimension up to --dim and budget up to --budget.
    Verify(JobArgs),
    /// Emit operation-count tables.
    Cost {
        #[arg(long, default_value_t = 20)]
        dmax: usize,
        /// Comma-separated budgets.
        #[arg(long, value_delimiter = ',', default_values_t = cli::DEFAULT_COST_BUDGETS)]
        blist: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct JobArgs {
    /// JSON config; flags below override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    /// monomial | chebyshev
    #[arg(long)]
    basis: Option<String>,
    /// Interval as `lo,hi`.
    #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
    domain: Option<Vec<f64>>,
    /// `leja` or a CSV with one point per line.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed_point: Option<f64>,
    /// Builtin function, e.g. `oscillatory` or `poly:3`.
    #[arg(long)]
    function: Option<String>,
    /// Value CSV `offset,a_1..a_D,value`.
    #[arg(long)]
    values: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    rng_seed: Option<u64>,
    /// Perturb one coefficient before the dense-oracle check.
    #[arg(long, allow_hyphen_values = true)]
    perturb: Option<f64>,
}

impl JobArgs {
    fn resolve(self) -> zappl::Result<JobConfig> {
        let mut c = match &self.config {
            Some(p) => JobConfig::from_json_file(p)?,
            None => JobConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { c.$f = v; } )* };
        }
        set!(dim, budget, basis, points, rng_seed);
        if let Some(d) = self.domain {
            c.domain = (d[0], d[1]);
        }
        c.seed_point = self.seed_point.or(c.seed_point);
        c.function = self.function.or(c.function);
        c.values = self.values.or(c.values);
        c.out = self.out.or(c.out);
        c.perturb = self.perturb.or(c.perturb);
        Ok(c)
    }
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn run(cmd: Cmd) -> zappl::Result<bool> {
    match cmd {
        Cmd::Grid(args) => {
            let c = args.resolve()?;
            let mut w = sink(c.out.as_ref())?;
            cli::cmd_grid(&c, &mut w)?;
            w.flush()?;
        }
        Cmd::Fit(args) => {
            let c = args.resolve()?;
            let mut w = sink(c.out.as_ref())?;
            let rep = cli::cmd_fit(&c, &mut w)?;
            w.flush()?;
            eprintln!("{}", serde_json::to_string(&rep)?);
        }
        Cmd::Eval { coeffs, at, out } => {
            let mut w = sink(out.as_ref())?;
            cli::cmd_eval(File::open(coeffs)?, File::open(at)?, &mut w)?;
            w.flush()?;
        }
        Cmd::Verify(args) => {
            let c = args.resolve()?;
            let mut w = sink(c.out.as_ref())?;
            let rep = cli::cmd_verify(&c, &mut w)?;
            w.flush()?;
            return Ok(rep.all_passed);
        }
        Cmd::Cost { dmax, blist, out } => {
            let mut w = sink(out.as_ref())?;
            cli::cmd_cost(dmax, &blist, &mut w)?;
            w.flush()?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
