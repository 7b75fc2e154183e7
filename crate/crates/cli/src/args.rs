use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

#[derive(Debug, Parser)]
#[command(name = "numlab", version, about = "Four cubes, prime coverings, self-powers and rotation words")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Working precision for interval arithmetic (at least 32). Defaults to
    /// DOI2_PRECISION_BITS, then 128.
    #[arg(long, global = true, value_parser = parse_u32)]
    pub precision_bits: Option<u32>,
    /// Worker threads (defaults to the number of logical CPUs).
    #[arg(long, global = true, value_parser = parse_u64)]
    pub workers: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sums of four cubes.
    #[command(subcommand)]
    Waring(WaringCmd),
    /// Prime coverings of integer runs.
    #[command(subcommand)]
    Covering(CoveringCmd),
    /// Digit counts of self-powers.
    #[command(subcommand)]
    Selfpower(SelfpowerCmd),
    /// Rotation words and their parity statistics.
    #[command(subcommand)]
    Sturmian(SturmianCmd),
    /// Run every reference check and write the artifacts.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Subcommand)]
pub enum WaringCmd {
    /// List the sorted quads with the given cube sum.
    Reps {
        #[arg(long, value_parser = parse_u64)]
        target: u64,
        /// Require every component to be positive.
        #[arg(long)]
        positive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Number of ordered solutions.
    Count {
        #[arg(long, value_parser = parse_u64)]
        target: u64,
    },
    /// Multiply a root solution by a power of ten.
    Lift {
        /// Comma-separated components, e.g. 1,2,3,4.
        #[arg(long, value_parser = parse_quad)]
        root: [u64; 4],
        #[arg(long, value_parser = parse_u32)]
        b: u32,
    },
    /// Solutions that are not tower lifts.
    Primitive {
        #[arg(long, value_parser = parse_u64)]
        target: u64,
        #[arg(long, value_parser = parse_u64)]
        limit_first: Option<u64>,
        /// Reject any component ending in zero.
        #[arg(long)]
        strong: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoveringCmd {
    /// Complete effective coverings of a run.
    Search {
        #[arg(long, value_parser = parse_u64)]
        length: u64,
        #[arg(long, conflicts_with = "first_found")]
        exhaustive: bool,
        #[arg(long)]
        first_found: bool,
        /// Comma-separated primes that may not be used.
        #[arg(long, value_delimiter = ',', value_parser = parse_u64)]
        exclude: Vec<u64>,
    },
    /// First-come-first-served extension of the minimal covering.
    Fcfs {
        /// Last box of the extended run.
        #[arg(long, value_parser = parse_u64)]
        to: u64,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "two-pearls")]
        availability: AvailabilityArg,
        /// Include the number of available primes after every fill.
        #[arg(long)]
        report_available: bool,
    },
    /// Check that every integer of a run shares a prime with another member.
    Verify {
        #[arg(long, value_parser = parse_big)]
        start: BigUint,
        #[arg(long, value_parser = parse_u64)]
        length: u64,
        #[arg(long, value_delimiter = ',', value_parser = parse_u64)]
        exclude: Vec<u64>,
    },
    /// Smallest run start realising a set of placements.
    Instantiate {
        #[arg(long, value_parser = parse_u64)]
        length: Option<u64>,
        /// prime:offset pairs, e.g. 2:0,3:1. Defaults to the minimal covering.
        #[arg(long, value_delimiter = ',', value_parser = parse_placement)]
        placements: Option<Vec<(u64, u64)>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
    Alternate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AvailabilityArg {
    TwoPearls,
    HalfLength,
}

#[derive(Debug, Subcommand)]
pub enum SelfpowerCmd {
    /// Digit count of n^n (or n^exp).
    Count {
        #[arg(long, value_parser = parse_big)]
        n: BigUint,
        #[arg(long, value_parser = parse_u64)]
        exp: Option<u64>,
    },
    /// All n up to a limit whose self-power has a repdigit digit count.
    Search {
        #[arg(long, value_parser = parse_u64)]
        limit: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Cyclic tuples whose consecutive powers have repdigit digit counts.
    Amicable {
        #[arg(long, value_parser = parse_u64, default_value = "2")]
        k: u64,
        #[arg(long, value_parser = parse_u64, default_value = "100")]
        bound: u64,
        #[arg(long, value_parser = parse_u64, default_value = "100")]
        limit: u64,
        /// Ignore digit counts below this.
        #[arg(long, value_parser = parse_u64, default_value = "1")]
        min_digits: u64,
        /// Check one tuple instead of searching, e.g. 26,62,49.
        #[arg(long, value_delimiter = ',', value_parser = parse_u64)]
        verify: Option<Vec<u64>>,
    },
    /// Consecutive differences of a sequence.
    Gaps {
        #[arg(long, value_enum)]
        seq: SeqArg,
        #[arg(long, value_parser = parse_u64)]
        count: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    /// Repdigits.
    #[value(name = "S1", alias = "s1")]
    S1,
    /// Digit counts of n^n.
    #[value(name = "S2", alias = "s2")]
    S2,
}

#[derive(Debug, Args, Clone)]
pub struct WordArgs {
    /// Slope: decimal, P/Q, sqrtD, sqrtD/Q, pi/Q or fib.
    #[arg(long, default_value = "sqrt7/7")]
    pub theta: String,
    /// Intercept; defaults to 0.2, or the matching intercept for fib.
    #[arg(long)]
    pub phi: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SturmianCmd {
    /// First letters of the word.
    Prefix {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64)]
        len: u64,
    },
    /// Distinct factors of each length in a prefix.
    Complexity {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64, default_value = "10")]
        max_n: u64,
        #[arg(long, value_parser = parse_u64, default_value = "100000")]
        sample: u64,
    },
    /// Odd-even turtle curve.
    Curve {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64)]
        steps: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Divisor-parity walk.
    Walk {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64)]
        steps: u64,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Swap left and right turns.
        #[arg(long)]
        mirror: bool,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// Proportion of b letters.
    Density {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64)]
        sample: u64,
    },
    /// Weighted average of the parity differences.
    Slope {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, value_parser = parse_u64)]
        x: u64,
        #[arg(long, value_enum, default_value = "riesz")]
        weight: WeightArg,
    },
}

#[derive(Debug, Args, Clone)]
pub struct StyleArgs {
    /// Pixels per lattice step.
    #[arg(long, value_parser = parse_u32, default_value = "4")]
    pub unit: u32,
    #[arg(long, default_value = "black")]
    pub stroke: String,
    #[arg(long, default_value = "red")]
    pub mark_color: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Riesz,
    Literal,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "reproduce-out")]
    pub out: PathBuf,
}

/// Parses a nonnegative integer, accepting exact scientific notation such as
/// `1e8` or `2.5e3`.
pub fn parse_natural(s: &str) -> Result<BigUint, String> {
    let bad = || format!("'{s}' is not a nonnegative integer");
    let t = s.trim().replace('_', "");
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m.to_string(), e.trim_start_matches('+').parse::<u32>().map_err(|_| bad())?),
        None => (t.clone(), 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((&mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let frac = frac.trim_end_matches('0');
    if frac.len() as u32 > exp {
        return Err(bad());
    }
    let digits: BigUint = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    Ok(digits * BigUint::from(10u32).pow(exp - frac.len() as u32))
}

pub fn parse_big(s: &str) -> Result<BigUint, String> {
    parse_natural(s)
}

pub fn parse_u64(s: &str) -> Result<u64, String> {
    parse_natural(s)?.to_u64().ok_or_else(|| format!("'{s}' is too large"))
}

pub fn parse_u32(s: &str) -> Result<u32, String> {
    parse_natural(s)?.to_u32().ok_or_else(|| format!("'{s}' is too large"))
}

pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_u64).collect()
}

fn parse_quad(s: &str) -> Result<[u64; 4], String> {
    let v = parse_list(s)?;
    v.try_into().map_err(|_| format!("'{s}' must have four components"))
}

fn parse_placement(s: &str) -> Result<(u64, u64), String> {
    let (p, r) = s.split_once(':').ok_or_else(|| format!("'{s}' is not prime:offset"))?;
    Ok((parse_u64(p)?, parse_u64(r)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_is_exact() {
        assert_eq!(parse_u64("1e8").unwrap(), 100_000_000);
        assert_eq!(parse_u64("2.5e3").unwrap(), 2500);
        assert_eq!(parse_u64("1E11").unwrap(), 100_000_000_000);
        assert_eq!(parse_u64("17").unwrap(), 17);
        assert_eq!(parse_natural("1e30").unwrap().to_string(), format!("1{}", "0".repeat(30)));
        assert!(parse_u64("2.5e0").is_err());
        assert!(parse_u64("banana").is_err());
        assert!(parse_u64("-3").is_err());
        assert!(parse_u64("").is_err());
        assert!(parse_u64("1e30").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("").unwrap(), Vec::<u64>::new());
        assert_eq!(parse_list("3,5").unwrap(), vec![3, 5]);
        assert_eq!(parse_quad("1,2,3,4").unwrap(), [1, 2, 3, 4]);
        assert!(parse_quad("1,2,3").is_err());
        assert_eq!(parse_placement("3:1").unwrap(), (3, 1));
        assert!(parse_placement("3").is_err());
    }
}
