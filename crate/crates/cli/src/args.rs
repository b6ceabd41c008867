use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "fliftlab",
    version,
    about = "F-purity and F-liftability of isolated singularities over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the singularity at the origin of the given equations.
    Classify(ClassifyArgs),
    /// Recompute the RDP table.
    Table(TableArgs),
    /// Classify every admissible tuple of a cusp family.
    Sweep(SweepArgs),
    /// Check the closed-form residual and Δ₁ identities.
    Identity(IdentityArgs),
    /// Export the equation catalog with reference values as JSON.
    Catalog(CatalogArgs),
}

#[derive(Debug, Args, Clone)]
pub struct Output {
    /// text, json, csv or md.
    #[arg(long)]
    pub format: Option<String>,
    /// Report real per-stage timings instead of zeros.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args, Clone)]
pub struct Engine {
    /// Monomial order for Gröbner computations: degrevlex (alias grevlex) or lex.
    #[arg(long, default_value = "degrevlex")]
    pub order: String,
    /// Largest total degree any intermediate polynomial may reach.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Track and emit membership cofactors.
    #[arg(long)]
    pub certificates: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u64,
    /// Comma-separated variable names.
    #[arg(long, default_value = "x,y,z")]
    pub vars: String,
    /// An equation; repeat for a complete intersection.
    #[arg(long = "poly", required = true)]
    pub polys: Vec<String>,
    /// auto, hypersurface or complete_intersection.
    #[arg(long, default_value = "auto")]
    pub criterion: String,
    #[command(flatten)]
    pub engine: Engine,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    /// Characteristics for rows valid in every characteristic above a bound.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    pub p_set: Vec<u64>,
    /// Exit with status 4 if any computed value differs from the table.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub engine: Engine,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// cusp_hyp or cusp_ci.
    pub family: String,
    #[arg(long, conflicts_with = "p_set")]
    pub p: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub p_set: Option<Vec<u64>>,
    /// Largest exponent.
    #[arg(long, default_value_t = 10)]
    pub max: u32,
    /// All primes up to 19 and exponents up to 30. Hours of work.
    #[arg(long, conflicts_with_all = ["p", "p_set", "max"])]
    pub full_range: bool,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Continue after the tuple named in the cursor file.
    #[arg(long)]
    pub resume: bool,
    #[arg(long, default_value = "fliftlab-sweep.cursor")]
    pub cursor: PathBuf,
    /// Exit with status 4 if any tuple is not F-liftable.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    pub engine: Engine,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
    pub p_set: Vec<u64>,
}
