//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moncat::lawcheck::Fault;
use moncat::Policy;

#[derive(Debug, Clone, Parser)]
#[command(name = "mcat", version, about = "Law checks and process decompositions in monoidal categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the category, bifunctor, naturality and coherence laws of the
    /// document's instance.
    CheckLaws(LawArgs),
    /// Look for a sequential decomposition f = f₂ ∘ f₁.
    DecomposeSeq(QueryArgs),
    /// Look for a parallel decomposition f ≅ f₁ ⊗ f₂.
    DecomposePar(QueryArgs),
    /// Decide whether a state I → A ⊗ B is entangled (exit 1) or a product
    /// state (exit 0).
    Entangled(QueryArgs),
    /// Coupling measure 1 − σ₁²/Σσᵢ² of an operator across a tensor split.
    Coupling(QueryArgs),
    /// Solve M x = b.
    Solve(SolveArgs),
    /// Emit a morphism or a decomposition witness as a DOT digraph.
    Diagram(DiagramArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckLaws(_) => "check-laws",
            Command::DecomposeSeq(_) => "decompose-seq",
            Command::DecomposePar(_) => "decompose-par",
            Command::Entangled(_) => "entangled",
            Command::Coupling(_) => "coupling",
            Command::Solve(_) => "solve",
            Command::Diagram(_) => "diagram",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::CheckLaws(a) => &a.common,
            Command::DecomposeSeq(a) | Command::DecomposePar(a) | Command::Entangled(a) | Command::Coupling(a) => {
                &a.common
            }
            Command::Solve(a) => &a.query.common,
            Command::Diagram(a) => &a.query.common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fixed,
    UpToIso,
    Search,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fixed => "fixed",
            Mode::UpToIso => "up-to-iso",
            Mode::Search => "search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecompositionKind {
    Seq,
    Par,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Document path, or `-` for stdin.
    pub document: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides MCAT_TOLERANCE and the document's tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add the elapsed time to the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub morphism: String,
    #[arg(long, default_value = "nondegenerate", value_parser = parse_policy)]
    pub policy: Policy,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// A split declared in the document (defaults to the only split of the
    /// morphism, if there is one).
    #[arg(long)]
    pub split: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Right-hand side, comma separated, e.g. `3,1` or `1+2i,-0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: String,
}

#[derive(Debug, Clone, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    /// Draw a decomposition witness instead of the bare morphism.
    #[arg(long, value_enum)]
    pub decomposition: Option<DecompositionKind>,
}

#[derive(Debug, Clone, Args)]
pub struct LawArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Object size bounds `LO,HI` (cardinality or dimension).
    #[arg(long, value_parser = parse_sizes)]
    pub sizes: Option<(usize, usize)>,
    /// Enumerate every object and morphism up to the largest size instead
    /// of sampling (finite sets only).
    #[arg(long)]
    pub exhaustive: bool,
    /// Corrupt the instance with a single fault before checking.
    #[arg(long, value_parser = parse_fault)]
    pub inject: Option<Fault>,
}

fn parse_policy(s: &str) -> Result<Policy, String> {
    s.parse()
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected `LO,HI`, got `{s}`");
    match s.split_once(',') {
        Some((lo, hi)) => Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    let name = s.replace('-', "_");
    serde_json::from_value(serde_json::Value::String(name)).map_err(|_| {
        let known: Vec<String> = Fault::ALL
            .iter()
            .map(|f| serde_json::to_value(f).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
            .collect();
        format!("unknown fault `{s}`; expected one of {}", known.join(", "))
    })
}
