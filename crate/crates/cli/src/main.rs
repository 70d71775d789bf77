//! `bsymbol`: exact b-symbol weight spectra, bounds, sweeps and constructions.
//!
//! Exit status: 0 on success, 1 when a checked invariant or bound fails, 2 on bad input,
//! 3 when a computation would exceed its cap.

mod commands;
mod render;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use render::Format;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Cap(String),
    Failed(String),
}

impl From<bsymbol::Error> for CliError {
    fn from(e: bsymbol::Error) -> Self {
        match e {
            bsymbol::Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "invalid input: {m}"),
            CliError::Cap(m) => write!(f, "cap exceeded: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bsymbol", version, about = "Exact b-symbol weight spectra, bounds and constructions", args_override_self = true)]
pub struct Cli {
    /// JSON object whose keys are long flag names (and optionally "command").
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Worker threads for enumeration and sweeps; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// A single `b`, or an inclusive range `lo-hi` (also `lo..hi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BRange {
    pub lo: usize,
    pub hi: usize,
}

impl std::str::FromStr for BRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(s)?, num(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("{s:?} is not a range within [1, n]"));
        }
        Ok(BRange { lo, hi })
    }
}

impl BRange {
    pub fn check(self, n: usize) -> Result<Self, CliError> {
        if self.hi > n {
            return Err(CliError::Parse(format!("b = {} exceeds n = {n}", self.hi)));
        }
        Ok(self)
    }
}

/// A code given by flags, by `--code` (inline JSON or a file), or both; flags win.
#[derive(Debug, Clone, Args, Default)]
pub struct CodeArgs {
    /// Code definition as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub code: Option<String>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Generator polynomial, lowest degree first, e.g. 1101.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Check polynomial, lowest degree first.
    #[arg(long)]
    pub check: Option<String>,
    /// Coset leaders of the zeros, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub defining_set: Option<Vec<u64>>,
    /// Irreducible trace code over F_q inside F_Q.
    #[arg(long = "Q")]
    pub big_q: Option<u64>,
    #[arg(long = "N")]
    pub big_n: Option<u64>,
    /// Generator matrix rows as digit strings separated by ';'.
    #[arg(long, value_delimiter = ';')]
    pub matrix: Option<Vec<String>>,
}

impl CodeArgs {
    pub fn spec(&self) -> Result<spec::CodeSpec, CliError> {
        let mut s = match &self.code {
            Some(c) => spec::CodeSpec::from_json_arg(c)?,
            None => spec::CodeSpec::default(),
        };
        macro_rules! take {
            ($($f:ident <- $v:expr),*) => {$( if let Some(v) = $v { s.$f = Some(v); } )*};
        }
        take!(q <- self.q, p <- self.p, s <- self.s, n <- self.n, big_q <- self.big_q, big_n <- self.big_n);
        take!(defining_set <- self.defining_set.clone());
        take!(generator_poly <- self.generator.clone().map(spec::Entries::Digits));
        take!(check_poly <- self.check.clone().map(spec::Entries::Digits));
        take!(generator_matrix <- self.matrix.clone().map(|rows| rows.into_iter().map(spec::Entries::Digits).collect()));
        if s.q.is_none() && s.p.is_none() {
            s.q = Some(2);
        }
        if s.n.is_none() {
            // a generator given alone does not fix the length
            if s.big_q.is_none() && s.generator_matrix.is_none() && s.additive_basis.is_none() {
                return Err(CliError::Parse("missing --n".into()));
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact W_b of a code (or w_b of a single word), with multiplicities.
    Spectrum(commands::SpectrumArgs),
    /// Every applicable bound on |W_b|, checked against the exact value when affordable.
    Bounds(commands::BoundsArgs),
    /// Soundness sweep over all small cyclic codes, and the Gaussian-period identity sweep.
    Sweep(commands::SweepArgs),
    /// Codes and combinatorial objects with verification certificates.
    Construct {
        #[command(subcommand)]
        what: commands::Construct,
    },
    /// Gaussian periods, U-set sizes and the per-class weights of an irreducible trace code.
    Gauss(commands::GaussArgs),
    /// End-to-end checks: the worked example and randomized weight identities.
    Verify(commands::VerifyArgs),
}

const SUBCOMMANDS: [&str; 6] = ["spectrum", "bounds", "sweep", "construct", "gauss", "verify"];

/// Turns a `--config` JSON object into flags and splices them in after the subcommand
/// (and its construct kind), so explicit flags given later take precedence.
fn expand_config(mut argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let Some(pos) = argv.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(argv);
    };
    let path = match argv[pos].strip_prefix("--config=") {
        Some(p) => p.to_string(),
        None => argv.get(pos + 1).cloned().ok_or_else(|| CliError::Parse("--config needs a path".into()))?,
    };
    let end = if argv[pos].contains('=') { pos + 1 } else { pos + 2 };
    argv.drain(pos..end);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let obj: serde_json::Map<String, Value> =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let mut flags = Vec::new();
    let mut command: Vec<String> = Vec::new();
    for (k, v) in obj {
        if k == "command" {
            let s = v.as_str().ok_or_else(|| CliError::Parse("\"command\" must be a string".into()))?;
            command = s.split_whitespace().map(String::from).collect();
            continue;
        }
        let flag = format!("--{}", k.replace('_', "-"));
        match v {
            Value::Bool(true) => flags.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(a) => {
                flags.push(flag);
                flags.push(a.iter().map(value_arg).collect::<Vec<_>>().join(","));
            }
            Value::Object(_) => {
                flags.push(flag);
                flags.push(v.to_string());
            }
            other => {
                flags.push(flag);
                flags.push(value_arg(&other));
            }
        }
    }
    let sub = argv.iter().position(|a| SUBCOMMANDS.contains(&a.as_str()));
    let at = match sub {
        Some(i) if argv[i] == "construct" => (i + 2).min(argv.len()),
        Some(i) => i + 1,
        None => {
            if command.is_empty() {
                return Err(CliError::Parse("no subcommand given on the command line or in the config".into()));
            }
            let at = argv.len().min(1);
            argv.splice(at..at, command.clone());
            at + command.len()
        }
    };
    argv.splice(at..at, flags);
    Ok(argv)
}

fn value_arg(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code());
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(env) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = render::emit(&env, cli.format, &mut out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if env.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_ranges() {
        assert_eq!("3".parse::<BRange>().unwrap(), BRange { lo: 3, hi: 3 });
        assert_eq!("1-4".parse::<BRange>().unwrap(), BRange { lo: 1, hi: 4 });
        assert_eq!("2..=5".parse::<BRange>().unwrap(), BRange { lo: 2, hi: 5 });
        assert!("0".parse::<BRange>().is_err());
        assert!("4-2".parse::<BRange>().is_err());
    }

    #[test]
    fn config_flags_are_spliced_after_the_subcommand() {
        let dir = std::env::temp_dir().join(format!("bsymbol-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"command": "spectrum", "q": 2, "n": 7, "gen": "1101", "b": 2}"#).unwrap();
        let argv = vec!["bsymbol".to_string(), "--config".into(), path.display().to_string(), "--b".into(), "3".into()];
        let out = expand_config(argv).unwrap();
        assert_eq!(out, ["bsymbol", "spectrum", "--q", "2", "--n", "7", "--gen", "1101", "--b", "2", "--b", "3"]);
        let cli = Cli::try_parse_from(out).unwrap();
        match cli.command {
            Command::Spectrum(a) => assert_eq!(a.b, Some(BRange { lo: 3, hi: 3 })),
            other => panic!("{other:?}"),
        }
    }
}
