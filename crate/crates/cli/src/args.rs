use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "zzlie", version, about = "Exact computations for Z×Z-graded Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one bracket [L_left, L_right].
    Bracket {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Export the structure table on a window.
    Table {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run verification sweeps or symbolic proofs.
    Verify {
        #[arg(value_enum)]
        check: VerifyCheck,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Virasoro modules of the intermediate series.
    Module {
        #[arg(value_enum)]
        action: ModuleAction,
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classification systems for the coefficients c(i,j).
    Classify {
        #[arg(value_enum)]
        action: ClassifyAction,
        #[command(flatten)]
        params: ClassifyArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// vir, d, block, bplus-, bplus+, c, cbar
    #[arg(long, default_value = "vir")]
    pub family: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    /// Rational, or `sym` to keep it symbolic.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a2: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a2p: String,
    /// Use the printed target index L_{i+l,k+j} for the C family.
    #[arg(long)]
    pub literal_c_index: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArgs {
    /// ab (A_{alpha,beta}), a (A(alpha)) or b (B(alpha))
    #[arg(long, default_value = "ab")]
    pub module: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: String,
    /// Second module for `intertwine`; defaults to the first one's values.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta2: Option<String>,
    /// Pass to the irreducible subquotient first.
    #[arg(long)]
    pub subquotient: bool,
    /// Index i of L_i for `act`.
    #[arg(long, allow_hyphen_values = true)]
    pub left: Option<i64>,
    /// Index k of v_k for `act`.
    #[arg(long, allow_hyphen_values = true)]
    pub right: Option<i64>,
    #[arg(long, default_value_t = 5)]
    pub window: i64,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta1: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub betam1: String,
    #[arg(long, default_value_t = 3)]
    pub window: i64,
    #[arg(long, value_enum, default_value_t = Equations::Full)]
    pub equations: Equations,
    #[arg(long, value_enum, default_value_t = Guard::Literal)]
    pub guard: Guard,
    /// `i,j` of the recurrence instance.
    #[arg(long, allow_hyphen_values = true)]
    pub left: Option<String>,
    /// Step `k` of the recurrence instance.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to FILE instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyCheck {
    Antisymmetry,
    Jacobi,
    Grading,
    All,
    Symbolic,
    Quotient,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleAction {
    Act,
    Axiom,
    Subquotient,
    Intertwine,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyAction {
    Solve,
    Constraints,
    Cases,
    Impossibility,
    Recurrence,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equations {
    Full,
    Diagonal,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    Literal,
    Conservative,
}
