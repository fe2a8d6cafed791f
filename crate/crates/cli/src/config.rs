//! Command-line grammar and validated run configuration.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use growthbound_core::{RationalExponent, TaskSpec};

#[derive(Debug, Parser)]
#[command(
    name = "growthbound",
    version,
    about = "Certified growth-rate bounds for power-free languages",
    after_help = "Exponents use the a[/b][+] notation, e.g. `3`, `7/3`, `3/2+`; the \
trailing `+` forbids only powers strictly above the threshold. The period cap -m \
selects the regular approximation; growth rates of larger caps descend toward the \
true rate. GROWTHBOUND_CACHE overrides --cache when set."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified enclosure for one approximation (single period cap)
    Bound(TaskArgs),
    /// Enclosure series over a period-cap range, with an extrapolated limit
    Series(TaskArgs),
    /// Certified interval for the growth-rate jump between `e` and `e+`
    Jump(TaskArgs),
    /// Exact word counts by brute-force enumeration
    Count(CountArgs),
    /// Self-check: oracle equivalence and reference bracketing
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// `INT` or `A..B` period-cap selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapRange {
    pub from: usize,
    pub to: usize,
}

impl FromStr for CapRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| format!("`{t}` is not a positive integer"))
        };
        let (from, to) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let m = parse(s)?;
                (m, m)
            }
        };
        if from == 0 {
            return Err("period cap must be at least 1".to_string());
        }
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok(CapRange { from, to })
    }
}

fn parse_exponent(s: &str) -> Result<RationalExponent, String> {
    s.parse::<RationalExponent>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct TaskArgs {
    /// Alphabet size (2..=36)
    #[arg(short = 'k', long = "alphabet")]
    pub alphabet: u8,

    /// Exponent threshold, `a[/b][+]`
    #[arg(short = 'e', long = "exponent", value_parser = parse_exponent)]
    pub exponent: RationalExponent,

    /// Period cap `INT`, or range `A..B` for series
    #[arg(short = 'm', long = "period-cap")]
    pub caps: CapRange,

    /// Target enclosure width
    #[arg(long, default_value_t = TaskSpec::DEFAULT_PRECISION)]
    pub precision: f64,

    /// Disable the alphabet-renaming quotient (default: on for k >= 3)
    #[arg(long)]
    pub no_symmetry: bool,

    /// Abort builds beyond this many states
    #[arg(long, default_value_t = TaskSpec::DEFAULT_STATE_CAP)]
    pub state_cap: usize,

    /// Directory for cached graphs (GROWTHBOUND_CACHE overrides)
    #[arg(long)]
    pub cache: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Round displayed bounds to nearest instead of outward
    #[arg(long)]
    pub paper_rounding: bool,
}

impl TaskArgs {
    /// The task at the range's first cap; errors surface as usage errors.
    pub fn task(&self) -> Result<TaskSpec, growthbound_core::Error> {
        let t = TaskSpec::new(self.alphabet, self.exponent, self.caps.from)?
            .with_precision(self.precision)?
            .with_state_cap(self.state_cap)?;
        Ok(if self.no_symmetry {
            t.with_symmetry(false)
        } else {
            t
        })
    }

    /// Cache directory after the environment override.
    pub fn cache_dir(&self) -> Option<PathBuf> {
        match std::env::var_os("GROWTHBOUND_CACHE") {
            Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
            _ => self.cache.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Alphabet size (2..=36)
    #[arg(short = 'k', long = "alphabet")]
    pub alphabet: u8,

    /// Exponent threshold, `a[/b][+]`
    #[arg(short = 'e', long = "exponent", value_parser = parse_exponent)]
    pub exponent: RationalExponent,

    /// Period cap; omit to count the true power-free language
    #[arg(short = 'm', long = "period-cap")]
    pub period_cap: Option<usize>,

    /// Longest word length to count
    #[arg(long, default_value_t = 12)]
    pub max_len: usize,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Target enclosure width for the bracketing bounds
    #[arg(long, default_value_t = TaskSpec::DEFAULT_PRECISION)]
    pub precision: f64,

    /// Cache directory for the round-trip check (a temp dir by default)
    #[arg(long)]
    pub cache: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}
