//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` usage or parse
//! error, `3` domain error (a word outside the subgroup, an infinite-index
//! subgroup where finite index is required).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::error::Error;
use crate::magnus::{lcs_weight, Weight};
use crate::stallings::Index;
use crate::subgroup_file::SubgroupDescription;
use crate::theorem::{self, VerifyLimits};
use crate::word::{omega, Alphabet, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable overriding the default Magnus cap.
pub const CAP_ENV: &str = "FGLAB_MAGNUS_CAP";

/// Largest `n` accepted by `omega`; `|ω_n| = 2^{n+2} + 2` for `n ≥ 1`.
pub const OMEGA_N_LIMIT: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Json,
}

/// Defaults used when flags are omitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliConfig {
    pub magnus_cap: usize,
    pub n_max: u64,
    pub d_bound: u64,
    pub output: OutputMode,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            magnus_cap: 8,
            n_max: 100,
            d_bound: 12,
            output: OutputMode::Human,
        }
    }
}

impl CliConfig {
    /// Defaults with `FGLAB_MAGNUS_CAP` applied.
    pub fn from_env() -> Result<Self, String> {
        let mut config = CliConfig::default();
        if let Ok(v) = std::env::var(CAP_ENV) {
            config.magnus_cap = match v.trim().parse::<usize>() {
                Ok(c) if c >= 1 => c,
                _ => return Err(format!("{CAP_ENV} must be a positive integer, got {v:?}")),
            };
        }
        Ok(config)
    }
}

#[derive(Parser, Debug)]
#[command(name = "fglab", version, about = "Free-group lower central series toolkit")]
struct Cli {
    /// Emit structured JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical reduced form of a word.
    Reduce {
        #[arg(short, long, default_value = "x,y")]
        alphabet: String,
        word: String,
    },
    /// Print the left-normed commutator ω_n = [x, y, x, …, x].
    Omega { n: u64 },
    /// Queries on a subgroup description file.
    Subgroup {
        #[command(subcommand)]
        query: SubgroupQuery,
    },
    /// Lower-central-series weight of a word via truncated Magnus expansion.
    Weight {
        #[arg(short, long, default_value = "x,y")]
        alphabet: String,
        /// Truncation degree (default 8, or $FGLAB_MAGNUS_CAP).
        #[arg(long)]
        cap: Option<usize>,
        word: String,
    },
    /// Issue a verified certificate that ω_{m−2} ∈ F_m but not in G_2.
    Witness {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: usize,
        /// Magnus truncation degree, at least m (default m).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check for 2 ≤ d ≤ d-max.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Largest modulus checked (default 12).
    #[arg(long)]
    d_max: Option<u64>,
    /// Largest power n for the exact nonvanishing check (default 100).
    #[arg(long)]
    n_max: Option<u64>,
    /// Highest n for which ω_n is rewritten explicitly (default min(n-max, 16)).
    #[arg(long)]
    rewrite_n_max: Option<usize>,
    /// Highest n for the floating-point spectral reconstruction (default min(n-max, 20)).
    #[arg(long)]
    spectral_n_max: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum SubgroupQuery {
    /// Index in the ambient free group, or `infinite`.
    Index { file: PathBuf },
    /// Whether the (finite-index) subgroup is normal.
    Normal { file: PathBuf },
    /// Membership of a word.
    Contains { file: PathBuf, word: String },
    /// Reidemeister–Schreier rewrite of a subgroup element in the Schreier basis.
    Rewrite { file: PathBuf, word: String },
    /// Transversal and Schreier basis.
    Basis { file: PathBuf },
    /// Graphviz rendering of the subgroup graph.
    Dot { file: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInSubgroup(_) | Error::InfiniteIndex => EXIT_DOMAIN,
            Error::Verification(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    writeln!(out, "{text}").map_err(|e| Failure::from(Error::Io(e)))
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Outcome {
    emit(out, &serde_json::to_string_pretty(value).expect("json value"))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut config = match CliConfig::from_env() {
        Ok(c) => c,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_USAGE;
        }
    };
    if cli.json {
        config.output = OutputMode::Json;
    }
    match dispatch(cli.command, &config, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, config: &CliConfig, out: &mut dyn Write) -> Outcome {
    let json = config.output == OutputMode::Json;
    match command {
        Command::Reduce { alphabet, word } => {
            let alphabet = Alphabet::from_list(&alphabet)?;
            let w = Word::parse(&word, &alphabet)?;
            if json {
                emit_json(out, &json!({ "word": w.to_string(), "length": w.len() }))
            } else {
                emit(out, &w.to_string())
            }
        }
        Command::Omega { n } => {
            if n > OMEGA_N_LIMIT {
                return Err(usage(format!(
                    "n = {n} is too large (omega_n has 2^(n+2) + 2 letters; limit {OMEGA_N_LIMIT})"
                )));
            }
            let w = omega(n as usize);
            if json {
                emit_json(out, &json!({ "n": n, "word": w.to_string(), "length": w.len() }))
            } else {
                emit(out, &w.to_string())
            }
        }
        Command::Subgroup { query } => subgroup(query, json, out),
        Command::Weight { alphabet, cap, word } => {
            let cap = cap.unwrap_or(config.magnus_cap);
            if cap == 0 {
                return Err(usage("cap must be at least 1"));
            }
            let alphabet = Alphabet::from_list(&alphabet)?;
            let w = Word::parse(&word, &alphabet)?;
            let weight = lcs_weight(&w, cap)?;
            if json {
                let value = match weight {
                    Weight::Identity => json!("identity"),
                    Weight::Exact(k) => json!(k),
                    Weight::AtLeast(_) => json!("at_least"),
                };
                emit_json(out, &json!({ "cap": cap, "value": value }))
            } else {
                emit(out, &weight.to_string())
            }
        }
        Command::Witness { d, m, cap, out: path } => {
            if d < 2 {
                return Err(usage(format!("--d must be at least 2, got {d}")));
            }
            if m < 2 {
                return Err(usage(format!("--m must be at least 2, got {m}")));
            }
            let cert = theorem::witness(d, m, cap)?;
            cert.verify()?;
            let text = cert.to_json();
            match path {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n")).map_err(Error::from)?;
                    if json {
                        emit_json(out, &json!({ "written": path.display().to_string(), "verified": true }))
                    } else {
                        emit(
                            out,
                            &format!(
                                "verified certificate for d = {d}, m = {m} written to {}",
                                path.display()
                            ),
                        )
                    }
                }
                None => emit(out, &text),
            }
        }
        Command::Verify(args) => verify(args, config, out),
    }
}

fn subgroup(query: SubgroupQuery, json: bool, out: &mut dyn Write) -> Outcome {
    let load = |file: &PathBuf| SubgroupDescription::load(file).and_then(|d| d.build());
    match query {
        SubgroupQuery::Index { file } => {
            let s = load(&file)?;
            let index = s.graph.index();
            if json {
                let v = match index {
                    Index::Finite(n) => json!(n),
                    Index::Infinite => json!("infinite"),
                };
                emit_json(out, &json!({ "index": v, "rank": s.graph.rank() }))
            } else {
                emit(out, &index.to_string())
            }
        }
        SubgroupQuery::Normal { file } => {
            let normal = load(&file)?.graph.is_normal()?;
            if json {
                emit_json(out, &json!({ "normal": normal }))
            } else {
                emit(out, &normal.to_string())
            }
        }
        SubgroupQuery::Contains { file, word } => {
            let s = load(&file)?;
            let w = s.parse_word(&word)?;
            let member = s.graph.contains(&w)?;
            if json {
                emit_json(out, &json!({ "word": w.to_string(), "contains": member }))
            } else {
                emit(out, &member.to_string())
            }
        }
        SubgroupQuery::Rewrite { file, word } => {
            let s = load(&file)?;
            let w = s.parse_word(&word)?;
            let system = s.system()?;
            let r = system.rewrite(&w)?;
            if json {
                let sums: serde_json::Map<String, serde_json::Value> = system
                    .basis
                    .names()
                    .names()
                    .iter()
                    .zip(r.exponent_sums().0)
                    .map(|(n, c)| (n.clone(), json!(c.to_i64())))
                    .collect();
                emit_json(
                    out,
                    &json!({
                        "word": w.to_string(),
                        "rewrite": r.to_string(),
                        "exponent_sums": sums,
                        "in_derived_subgroup": r.exponent_sums().is_zero(),
                    }),
                )
            } else {
                emit(out, &r.to_string())
            }
        }
        SubgroupQuery::Basis { file } => {
            let system = load(&file)?.system()?;
            let names = system.basis.names();
            let reps: Vec<String> = system
                .transversal
                .representatives()
                .iter()
                .map(ToString::to_string)
                .collect();
            if json {
                let basis: Vec<_> = system
                    .basis
                    .words()
                    .iter()
                    .enumerate()
                    .map(|(i, w)| json!({ "name": names.name(i), "word": w.to_string() }))
                    .collect();
                emit_json(out, &json!({ "transversal": reps, "basis": basis }))
            } else {
                let shown: Vec<String> = reps
                    .iter()
                    .map(|r| if r.is_empty() { "1".to_string() } else { r.clone() })
                    .collect();
                emit(out, &format!("transversal: {}", shown.join(", ")))?;
                for (i, w) in system.basis.words().iter().enumerate() {
                    emit(out, &format!("{} = {w}", names.name(i)))?;
                }
                Ok(())
            }
        }
        SubgroupQuery::Dot { file } => {
            let s = load(&file)?;
            write!(out, "{}", s.graph.to_dot()).map_err(|e| Failure::from(Error::Io(e)))
        }
    }
}

fn verify(args: VerifyArgs, config: &CliConfig, out: &mut dyn Write) -> Outcome {
    let d_max = args.d_max.unwrap_or(config.d_bound);
    let n_max = args.n_max.unwrap_or(config.n_max);
    if d_max < 2 {
        return Err(usage(format!("--d-max must be at least 2, got {d_max}")));
    }
    if n_max < 1 {
        return Err(usage("--n-max must be at least 1"));
    }
    let mut limits = VerifyLimits::new(n_max);
    if let Some(r) = args.rewrite_n_max {
        limits.rewrite_n_max = r;
    }
    if let Some(s) = args.spectral_n_max {
        limits.spectral_n_max = s;
    }

    let reports = (2..=d_max)
        .into_par_iter()
        .map(|d| theorem::verify_modulus(d, limits))
        .collect::<crate::Result<Vec<_>>>()?;

    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            let mut what = Vec::new();
            if let Err(e) = &r.recurrence {
                what.push(e.clone());
            }
            if let Err(e) = &r.conjugation {
                what.push(e.clone());
            }
            if !r.char_poly {
                what.push(format!("d = {}: characteristic polynomial mismatch", r.d));
            }
            if !r.eigen {
                what.push(format!("d = {}: eigenpair identity fails", r.d));
            }
            if let Err(e) = &r.spectral {
                what.push(e.clone());
            }
            if !r.nonvanishing {
                what.push(format!("d = {}: A^n v_0 vanishes for some n <= {n_max}", r.d));
            }
            what.join("; ")
        })
        .collect();

    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    if config.output == OutputMode::Json {
        let rows: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "d": r.d,
                    "recurrence": r.recurrence.is_ok(),
                    "conjugation": r.conjugation.is_ok(),
                    "char_poly": r.char_poly,
                    "eigen": r.eigen,
                    "spectral": r.spectral.is_ok(),
                    "max_nontrivial_alpha": r.spectral.as_ref().map(|s| s.max_nontrivial_alpha).ok(),
                    "nonvanishing": r.nonvanishing,
                    "passed": r.passed(),
                })
            })
            .collect();
        emit_json(
            out,
            &json!({
                "d_max": d_max,
                "n_max": n_max,
                "rewrite_n_max": limits.rewrite_n_max,
                "spectral_n_max": limits.spectral_n_max,
                "moduli": rows,
                "passed": failures.is_empty(),
            }),
        )?;
    } else {
        emit(
            out,
            &format!(
                "{:>3}  {:<11}  {:<11}  {:<9}  {:<5}  {:<8}  {:<12}",
                "d", "recurrence", "conjugation", "char_poly", "eigen", "spectral", "nonvanishing"
            ),
        )?;
        for r in &reports {
            emit(
                out,
                &format!(
                    "{:>3}  {:<11}  {:<11}  {:<9}  {:<5}  {:<8}  {:<12}",
                    r.d,
                    mark(r.recurrence.is_ok()),
                    mark(r.conjugation.is_ok()),
                    mark(r.char_poly),
                    mark(r.eigen),
                    mark(r.spectral.is_ok()),
                    mark(r.nonvanishing),
                ),
            )?;
        }
        emit(
            out,
            &format!(
                "rewriting checked for n <= {}, spectral reconstruction for n <= {}, nonvanishing for n <= {n_max}",
                limits.rewrite_n_max, limits.spectral_n_max
            ),
        )?;
        if failures.is_empty() {
            emit(out, "all checks passed")?;
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: failures.join("\n"),
        })
    }
}
