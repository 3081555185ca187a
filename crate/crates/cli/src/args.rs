use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact dimension calculus for definable sets over valued fields.
///
/// Every INPUT is an inline string, `@path` for a file, or `-` for stdin.
#[derive(Debug, Parser)]
#[command(name = "valdim", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Instances per randomized suite (each suite has its own default).
    #[arg(long, global = true)]
    pub cases: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower sets of ℕ² or ℕ³, written as JSON point lists.
    #[command(subcommand)]
    Lowerset(LowersetCmd),
    /// Linear formulas over the value group.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Formulas in one valued-field variable and value-group variables.
    #[command(subcommand)]
    Mixed(MixedCmd),
    /// Tropical hypersurfaces and monomial images.
    #[command(subcommand)]
    Trop(TropCmd),
    /// Seeded property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum LowersetCmd {
    /// Smallest lower set containing the points.
    Closure { set: String },
    /// Union.
    Join { a: String, b: String },
    /// Minkowski sum.
    Add { a: String, b: String },
    /// Closure under the projection shifts.
    Shift { set: String },
    /// Largest coordinate sum.
    Dimnat { set: String },
    /// ASCII diagram (ℕ² only).
    Render { set: String },
}

#[derive(Debug, Args)]
pub struct GammaInput {
    pub formula: String,
    /// Number of variables; inferred from the highest index when omitted.
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum GammaCmd {
    /// Dimension, `-inf` for the empty set.
    Dim(GammaInput),
    /// Cell decomposition.
    Cells(GammaInput),
    /// Projection onto the listed variables (1-based).
    Project {
        #[command(flatten)]
        input: GammaInput,
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
    },
    /// Topological closure.
    Closure(GammaInput),
    /// Maximal intervals and isolated points of a one-variable set.
    Type1d(GammaInput),
}

#[derive(Debug, Args)]
pub struct MixedInput {
    pub formula: String,
    /// Number of value-group variables; inferred when omitted.
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum MixedCmd {
    /// Mixed dimension as a lower set of ℕ².
    Dim(MixedInput),
    /// Relative cell decomposition.
    Cells(MixedInput),
    /// Projection to the value-group variables.
    Project(MixedInput),
}

#[derive(Debug, Subcommand)]
pub enum TropCmd {
    /// Faces of the tropical hypersurface.
    Hypersurface { poly: String },
    /// Image of a domain under a monomial map, with its closure checks.
    Image {
        /// Domain over the input valuations.
        domain: String,
        /// Integer exponent rows as JSON, e.g. `[[1,1],[0,1]]`.
        #[arg(long)]
        map: String,
    },
    /// Whether every face has the given dimension.
    CheckPure {
        poly: String,
        /// Expected dimension; one less than the number of variables by default.
        #[arg(long)]
        dim: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// The lower-set figure values.
    Figures,
    /// Every randomized property suite.
    Axioms,
    /// Figures and property suites together.
    PaperSuite,
}
