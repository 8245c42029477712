use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "foliation-lab", version, about = "Exact and numeric experiments with foliations by curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOptions,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOptions {
    /// Maximal blow-up depth.
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,
    /// Truncation order for series and tangency checks.
    #[arg(long, global = true, default_value_t = 8)]
    pub order: usize,
    /// Radius grid `a:b:steps`, geometrically spaced with both ends included.
    #[arg(long, global = true, default_value = "1:64:7")]
    pub radii: String,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized self-tests.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A germ, curve or polynomial given inline, from a file (`@path`) or on
/// standard input (`-`).
#[derive(Debug, Clone, Args)]
pub struct Input {
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity, eigenvalues, reduced / simple status and dicriticality.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Log divisor as 1-based axes, e.g. `{1,2}`.
        #[arg(long)]
        divisor: Option<String>,
    },
    /// One point blow-up with the classification of every singular point
    /// on the exceptional divisor.
    Blowup {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Resolution tower: Seidenberg reduction, or simple singularities
    /// relative to a divisor.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        divisor: Option<String>,
        #[arg(long, value_enum, default_value_t = Target::Reduced)]
        target: Target,
    },
    /// Certificate for the weakly reduced condition.
    WeaklyReduced {
        #[command(flatten)]
        input: Input,
    },
    /// Formal separatrices along eigendirections, or the corner check when
    /// the divisor has at least two components.
    Separatrix {
        #[command(flatten)]
        input: Input,
        /// 1-based eigendirection; all nonzero directions when omitted.
        #[arg(long)]
        direction: Option<usize>,
        #[arg(long)]
        divisor: Option<String>,
    },
    /// Growth functions and identities for a parametrized curve.
    Nevanlinna {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Mode::Profile)]
        mode: Mode,
        #[command(flatten)]
        extra: NevanlinnaOptions,
    },
    /// Section count on projective space and exceptional multiplicities.
    Effectivity {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 16)]
        k: u64,
        /// Defaults to ⌈(n!)^{1/n}⌉ + 1.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// `(r, value)` series of a growth function.
    PlotData {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Quantity::T)]
        quantity: Quantity,
        #[command(flatten)]
        extra: NevanlinnaOptions,
    },
    /// Run the built-in acceptance checks.
    Selftest,
}

#[derive(Debug, Clone, Args)]
pub struct NevanlinnaOptions {
    /// Generators of an ideal in the target coordinates x, y, z, ...
    #[arg(long)]
    pub ideal: Option<String>,
    /// Common zeros of the pulled-back generators, `point:order` separated
    /// by `;`.
    #[arg(long)]
    pub ideal_zeros: Option<String>,
    /// Form for `T` (default Fubini–Study) or tangent metric for the
    /// tautological pairing (default Euclidean).
    #[arg(long, value_enum)]
    pub form: Option<FormChoice>,
    /// Vector field for the multiplicity bookkeeping.
    #[arg(long)]
    pub field: Option<String>,
    /// Parameter value for the multiplicity bookkeeping.
    #[arg(long, default_value = "0")]
    pub at: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Reduced,
    Simple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Profile,
    Fmt,
    Jensen,
    Tautological,
    LogDerivative,
    Bookkeeping,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    #[value(name = "T")]
    T,
    #[value(name = "N")]
    N,
    #[value(name = "m")]
    M,
    /// `T − N − m` against the ideal.
    #[value(name = "fmt")]
    Fmt,
    /// The normalized tautological pairing.
    #[value(name = "tautological")]
    Tautological,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormChoice {
    FubiniStudy,
    Euclidean,
}

/// `a:b:steps` with `1 ≤ a ≤ b`: `steps` radii in geometric progression.
pub fn parse_radii(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("--radii expects a:b:steps, got `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, steps] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite()) || a < 1.0 || b < a || steps == 0 || (steps == 1 && a != b) {
        return Err(bad());
    }
    if steps == 1 {
        return Ok(vec![a]);
    }
    let ratio = (b / a).powf(1.0 / (steps - 1) as f64);
    let mut grid: Vec<f64> = (0..steps).map(|k| a * ratio.powi(k as i32)).collect();
    grid[steps - 1] = b;
    grid.dedup();
    if grid.len() != steps {
        return Err(bad());
    }
    Ok(grid)
}
