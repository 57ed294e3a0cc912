use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symqubo::{CoeffMode, MpsFormat, PenaltyWeights, SignatureConfig};

#[derive(Debug, Parser)]
#[command(name = "symqubo", version, about = "Formulation symmetries of MIPs as QUBO zero-energy states")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = MpsKind::Free)]
    pub mps_format: MpsKind,
    #[command(flatten)]
    pub signature: SignatureArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MpsKind {
    Free,
    Fixed,
}

impl From<MpsKind> for MpsFormat {
    fn from(k: MpsKind) -> Self {
        match k {
            MpsKind::Free => MpsFormat::Free,
            MpsKind::Fixed => MpsFormat::Fixed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SignatureArgs {
    /// Ignore variable bounds in signatures and symmetry checks.
    #[arg(long, global = true)]
    pub no_bounds_signature: bool,
    /// Ignore constraint senses in signatures and symmetry checks.
    #[arg(long, global = true)]
    pub no_sense_signature: bool,
    /// Separate variables by the number of constraints they appear in.
    #[arg(long, global = true)]
    pub sharpen_var_degree: bool,
    /// Separate constraints by their number of nonzeros.
    #[arg(long, global = true)]
    pub sharpen_con_size: bool,
    /// Separate variables by the multiset of their column coefficients.
    #[arg(long, global = true)]
    pub sharpen_var_coeffs: bool,
    /// Separate constraints by the multiset of their row coefficients.
    #[arg(long, global = true)]
    pub sharpen_con_coeffs: bool,
    /// Compare coefficients after rounding to this many significant digits.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub coeff_tolerance_digits: Option<u32>,
}

impl SignatureArgs {
    pub fn config(&self) -> SignatureConfig {
        SignatureConfig {
            use_bounds: !self.no_bounds_signature,
            use_sense: !self.no_sense_signature,
            sharpen_var_degree: self.sharpen_var_degree,
            sharpen_con_size: self.sharpen_con_size,
            sharpen_var_coeffs: self.sharpen_var_coeffs,
            sharpen_con_coeffs: self.sharpen_con_coeffs,
            coeff_mode: self.coeff_tolerance_digits.map_or(CoeffMode::Exact, CoeffMode::Digits),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    #[arg(long, default_value_t = 1.0)]
    pub w_bpi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_bsigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_pi: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub w_fix: f64,
    /// Penalty for moving QUBO-Plus constraints into the objective.
    #[arg(long, default_value_t = 1.0)]
    pub penalty: f64,
    /// How a decomposition pins off-class diagonal entries.
    #[arg(long, value_enum, default_value_t = FixArg::Constants)]
    pub fix_mode: FixArg,
}

impl WeightArgs {
    pub fn weights(&self) -> PenaltyWeights {
        PenaltyWeights {
            w_bpi: self.w_bpi,
            w_bsigma: self.w_bsigma,
            w_pi: self.w_pi,
            w_sigma: self.w_sigma,
            w_a: self.w_a,
            w_fix: self.w_fix,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixArg {
    Constants,
    Penalty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Exact,
    Anneal,
    Brute,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size statistics for every MPS file (directories are searched recursively).
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Report instances with more variables as errors without analysing them.
        #[arg(long)]
        max_n: Option<usize>,
        /// Skip building the reduced model (term count) above this size.
        #[arg(long)]
        max_q: Option<usize>,
    },
    /// Write a QUBO (`.qubo`) or QUBO-Plus (JSON) formulation.
    Build {
        #[arg(long)]
        mps: PathBuf,
        /// full | reduced | decomp:<class> | plus-full | plus-reduced | plus-decomp:<class>;
        /// <class> is `max`, a class id, or a variable name.
        #[arg(long)]
        form: String,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Find, verify and report symmetries and orbits.
    Detect {
        #[arg(long)]
        mps: PathBuf,
        #[arg(long, default_value = "reduced")]
        form: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        sweeps: usize,
        /// Largest model enumerated exhaustively.
        #[arg(long, default_value_t = symqubo::sample::DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        /// Largest candidate count for the brute-force method.
        #[arg(long, default_value_t = symqubo::symmetry::DEFAULT_BRUTE_FORCE_LIMIT)]
        brute_limit: u128,
        #[arg(long)]
        max_q: Option<usize>,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Zephyr resource bounds for a variable count or an instance.
    Estimate {
        #[arg(long, conflicts_with = "mps", required_unless_present = "mps")]
        q: Option<usize>,
        #[arg(long)]
        mps: Option<PathBuf>,
    },
    /// Power-law fits over an `analyze` CSV.
    Regress { stats: PathBuf },
}
