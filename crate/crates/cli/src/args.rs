use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "jacring",
    version,
    about = "Jacobian rings, Hodge numbers of cyclic covers and Yukawa coupling lengths"
)]
pub struct Cli {
    /// Coefficient field: `rational` or `prime:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Seed for random smooth forms.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Emit CSV instead of JSON (tables only).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Refuse rings whose socle degree exceeds this bound.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded ring data.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Hodge numbers.
    Hodge {
        #[command(subcommand)]
        cmd: HodgeCmd,
    },
    /// Griffiths-Yukawa coupling lengths.
    Yukawa {
        #[command(subcommand)]
        cmd: YukawaCmd,
    },
    /// Bundled property checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum RingCmd {
    Info(Selector),
}

#[derive(Debug, Subcommand)]
pub enum HodgeCmd {
    Diamond(Selector),
    Primitive(Selector),
    Eigen(EigenArgs),
}

#[derive(Debug, Subcommand)]
pub enum YukawaCmd {
    Length(LengthArgs),
    Profile(Selector),
    Table(TableArgs),
}

/// One way of naming a ring.
#[derive(Debug, Args, Clone, Default)]
pub struct Selector {
    /// Fermat form `x0^d + ... + x{k-1}^d`.
    #[arg(long)]
    pub fermat: bool,
    /// Seeded random smooth form.
    #[arg(long)]
    pub random: bool,
    /// Form text, e.g. "x0^3 + x1^3 - 2*x0*x1*x2 + x2^3".
    #[arg(long)]
    pub form: Option<String>,
    /// File holding form text.
    #[arg(long)]
    pub form_file: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of variables.
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["i", "all"])))]
pub struct EigenArgs {
    #[arg(long)]
    pub d: usize,
    /// Variables of the base form.
    #[arg(long)]
    pub base_vars: usize,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub all: bool,
    /// Random base instead of Fermat.
    #[arg(long)]
    pub random: bool,
}

#[derive(Debug, Args)]
pub struct LengthArgs {
    /// Tower of root covers over a base in `P^{n-levels}`.
    #[arg(long)]
    pub tower: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<i64>,
    #[command(flatten)]
    pub sel: Selector,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
    /// Random bases instead of Fermat.
    #[arg(long)]
    pub random: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Macaulay,
    Hilbert,
    Koszul,
    Prop64,
    Lemma18,
    Tower,
    Theorem65,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Fibre dimension for `prop64` and `theorem65`.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub sel: Selector,
}
