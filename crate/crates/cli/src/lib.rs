//! Input language, dispatch and JSON verdicts for the `hopfpi` binary.

use clap::Parser;

pub mod commands;
pub mod session;

pub const COMMANDS: &[&str] = &[
    "normalize",
    "adjoint",
    "delta-dim",
    "identity-check",
    "identity-kernel",
    "min-identity-degree",
    "pi-decide",
    "hfin-decide",
    "datum-validate",
    "char-kernel",
    "group-profile",
    "colorlie-validate",
    "tlsabw-verify",
    "tlsabw-search",
    "rep-check",
    "bilinear-bound",
    "run",
];

/// Exact computations with pointed Hopf algebras, polynomial identities and
/// color Lie superalgebras. Prints one JSON document on stdout.
#[derive(Debug, Parser)]
#[command(name = "hopfpi", version)]
pub struct Args {
    /// Command to run; `run` takes the command name from the `[command]` section.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    pub command: String,
    /// TOML input file.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `exhaustive` or `sample:k`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Wall-clock budget in seconds for exhaustive identity checks.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub element: Option<String>,
    /// Acting element for `adjoint`.
    #[arg(long)]
    pub h: Option<String>,
    /// Use the standard polynomial of this degree.
    #[arg(long)]
    pub standard: Option<usize>,
    /// `vn`, `matrices`, `rep` or `algebra`.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub max: Option<usize>,
    /// Monomial bound for `--target algebra`.
    #[arg(long)]
    pub bound: Option<u32>,
}
