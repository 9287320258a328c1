use clap::{Args, ValueEnum};
use factorpoly::enumeration::{DpOptions, DEFAULT_BRUTE_CAP, DEFAULT_STATE_CAP};
use factorpoly::inequalities::DEFAULT_MAX_MINOR_ORDER;
use factorpoly::polynomials::Tolerances;
use factorpoly::verify::HarnessConfig;

/// Variable that caps the scanner's worker threads.
pub const THREADS_VAR: &str = "FACTORPOLY_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] factorpoly::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for unreadable or malformed input, 3 for a cap, 4 for a dp/brute
    /// disagreement, 5 when the root finder gives up.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(factorpoly::Error::CapExceeded { .. }) => 3,
            CliError::Core(factorpoly::Error::Mismatch { .. }) => 4,
            CliError::Core(factorpoly::Error::NoConvergence { .. }) => 5,
            CliError::Core(_) | CliError::Io { .. } | CliError::Usage(_) => 2,
        }
    }

    pub fn io(path: &str, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_string(), source }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Relative residual a root must reach.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Relative distance under which a root counts as on a region boundary.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub boundary_tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; `count` and `analyze` default to text, `verify` and `scan` to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest Toeplitz / Hurwitz minor order checked.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MINOR_ORDER)]
    pub max_minor_order: usize,
    /// Largest edge count brute force will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CAP)]
    pub brute_cap: usize,
    /// Largest number of live states in the elimination DP.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: u128,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tol: Tolerances,
    pub brute_cap: usize,
    pub max_minor_order: usize,
    pub dp: DpOptions,
    pub seed: u64,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_args(a: &GlobalArgs) -> CliResult<Self> {
        for (name, v) in [("--tol", a.tol), ("--boundary-tol", a.boundary_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if a.brute_cap == 0 || a.state_cap == 0 || a.max_minor_order == 0 {
            return Err(CliError::Usage("caps must be at least 1".into()));
        }
        Ok(RunConfig {
            tol: Tolerances { residual: a.tol, boundary: a.boundary_tol, ..Tolerances::default() },
            brute_cap: a.brute_cap,
            max_minor_order: a.max_minor_order,
            dp: DpOptions { state_cap: a.state_cap, order: None },
            seed: a.seed,
            format: a.format,
        })
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn harness(&self) -> HarnessConfig {
        HarnessConfig { tol: self.tol, dp: self.dp.clone(), max_minor_order: self.max_minor_order }
    }
}

/// One worker everywhere except the scanner, which takes `FACTORPOLY_THREADS`
/// or the rayon default.
pub fn init_threads(parallel: bool) -> CliResult<()> {
    let threads = if parallel {
        match std::env::var(THREADS_VAR) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(n) if n >= 1 => n,
                _ => return Err(CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
            },
            Err(_) => 0,
        }
    } else {
        1
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}
