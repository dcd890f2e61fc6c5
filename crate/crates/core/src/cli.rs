//! The `zsm` command-line surface.
//!
//! Exit codes: 0 success, 1 invalid input or failed check, 2 internal
//! invariant violation, 3 I/O failure.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::balancer::{balance, Case, Trace};
use crate::error::Error;
use crate::generators::{
    clique_split_colouring, corpus_seed, random_balanced_colouring, random_k_colouring,
    random_matching,
};
use crate::graph::{ColouredGraph, EdgeColouring, Matching};
use crate::oracle::{
    balanced_matchings, decompose_balanced, enumerate_balanced_colourings, enumerate_matchings,
    kcolour_balanced_matching, DECOMPOSE_CAP, MATCHING_CAP,
};
use crate::text::{
    format_instance, format_kcolour_instance, format_matching, format_trace, parse_instance,
    parse_matching, parse_trace,
};
use crate::verify::{replay_trace, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(
    name = "zsm",
    version,
    about = "Colour-balanced perfect matchings with certified swap traces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Balance a matching on an instance and print it.
    Solve(SolveArgs),
    /// Check a matching (and optionally a trace) against an instance.
    Verify(VerifyArgs),
    /// Run the balancer over an exhaustive or sampled corpus, cross-checked by brute force.
    Exhaust(ExhaustArgs),
    /// Case frequencies and step counts over a random corpus.
    Stats(StatsArgs),
    /// Brute-force probes of the k-colour and decomposition questions.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Write a generated instance to standard output.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Starting matching file.
    #[arg(long, conflicts_with_all = ["seed", "canonical"])]
    pub matching: Option<PathBuf>,
    /// Seed for a random starting matching.
    #[arg(long, conflicts_with = "canonical")]
    pub seed: Option<u64>,
    /// Start from {0-1, 2-3, ...} (the default).
    #[arg(long)]
    pub canonical: bool,
    /// Write the step trace here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub matching: PathBuf,
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExhaustArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Does a random k-colouring of K_2kn have a matching with n edges of each colour?
    Kcolour {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Does a balanced K_4n split into 4n-1 balanced perfect matchings?
    Decompose {
        #[arg(long)]
        n: usize,
        /// Every balanced colouring (n = 1 only).
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    Clique {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    Kcolour {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation { .. } => EXIT_INVARIANT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Exhaust(a) => cmd_exhaust(&a, out, err),
        Command::Stats(a) => cmd_stats(&a, out, err),
        Command::Experiment(c) => cmd_experiment(&c, out),
        Command::Gen(c) => cmd_gen(&c, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type CmdResult = Result<i32, Error>;

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), Error> {
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let g = parse_instance(&read(&a.instance)?)?;
    let start = match (&a.matching, a.seed) {
        (Some(path), _) => parse_matching(&read(path)?)?,
        (None, Some(seed)) => random_matching(g.order(), seed)?,
        (None, None) => Matching::canonical(g.order())?,
    };
    let trace = balance(&g, Some(&start))?;
    if let Some(path) = &a.trace {
        fs::write(path, format_trace(&trace))?;
    }
    write_out(
        out,
        &format!("{}\n", format_matching(&trace.final_matching)),
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = parse_instance(&read(&a.instance)?)?;
    let m = parse_matching(&read(&a.matching)?)?;
    let trace = match &a.trace {
        Some(path) => Some(parse_trace(&read(path)?)?),
        None => None,
    };
    match verify(&g, &m, trace.as_ref()) {
        Ok(()) => {
            write_out(out, "ok\n")?;
            Ok(EXIT_OK)
        }
        Err(f) => {
            write_out(out, &format!("{f}\n"))?;
            Ok(EXIT_INVALID)
        }
    }
}

/// Outcome of one balancer run inside a corpus sweep.
#[derive(Debug)]
struct RunOutcome {
    trace: Trace,
    problem: Option<String>,
}

/// Balances, replays, and (when `oracle` is given) checks membership in the
/// brute-force balanced set.
fn checked_run(
    g: &ColouredGraph,
    start: &Matching,
    oracle: Option<&HashSet<Matching>>,
) -> Result<RunOutcome, Error> {
    let trace = balance(g, Some(start))?;
    let mut problem = None;
    if let Err(f) = replay_trace(g, &trace) {
        problem = Some(format!("trace does not verify: {f}"));
    } else if let Some(set) = oracle {
        if !set.contains(&trace.final_matching) {
            problem = Some("final matching is not in the oracle's balanced set".into());
        }
    }
    Ok(RunOutcome { trace, problem })
}

#[derive(Default)]
struct Histogram(BTreeMap<Case, usize>);

impl Histogram {
    fn record(&mut self, t: &Trace) {
        for s in &t.steps {
            *self.0.entry(s.case).or_default() += 1;
        }
        *self.0.entry(Case::Balanced).or_default() += 1;
    }

    fn write(&self, out: &mut dyn Write) -> Result<(), Error> {
        for (case, count) in &self.0 {
            writeln!(out, "case {case} {count}")?;
        }
        Ok(())
    }
}

fn oracle_set(g: &ColouredGraph) -> Result<HashSet<Matching>, Error> {
    Ok(balanced_matchings(g)?.into_iter().collect())
}

pub fn cmd_exhaust(a: &ExhaustArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let started = Instant::now();
    let jobs: Vec<(ColouredGraph, Vec<Matching>)> = match a.order {
        4 => {
            let starts: Vec<Matching> = enumerate_matchings(4)?.collect();
            enumerate_balanced_colourings(4)?
                .map(|g| (g, starts.clone()))
                .collect()
        }
        8 | 12 | 16 => {
            let n = a.order / 4;
            (0..a.samples as u64)
                .map(|i| {
                    let g = random_balanced_colouring(n, corpus_seed(a.seed, 2 * i))?;
                    let starts = vec![
                        Matching::canonical(a.order)?,
                        random_matching(a.order, corpus_seed(a.seed, 2 * i + 1))?,
                    ];
                    Ok((g, starts))
                })
                .collect::<Result<_, Error>>()?
        }
        other => {
            return Err(Error::BadParameter(format!(
                "order must be 4 (exhaustive) or 8, 12, {MATCHING_CAP} (sampled), got {other}"
            )))
        }
    };

    let results: Vec<Result<Vec<RunOutcome>, Error>> = jobs
        .par_iter()
        .map(|(g, starts)| {
            let set = oracle_set(g)?;
            starts
                .iter()
                .map(|m| checked_run(g, m, Some(&set)))
                .collect()
        })
        .collect();

    let mut hist = Histogram::default();
    let mut runs = 0;
    let mut failures = 0;
    for (idx, r) in results.into_iter().enumerate() {
        for outcome in r? {
            runs += 1;
            hist.record(&outcome.trace);
            if let Some(p) = outcome.problem {
                failures += 1;
                writeln!(out, "failure instance {idx}: {p}")?;
                write_out(out, &format_instance(&jobs[idx].0))?;
            }
        }
    }
    writeln!(
        out,
        "exhaust order {} runs {runs} balanced {} failures {failures}",
        a.order,
        runs - failures
    )?;
    hist.write(out)?;
    writeln!(err, "runtime {:.3}s", started.elapsed().as_secs_f64())?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INVALID })
}

pub fn cmd_stats(a: &StatsArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if a.n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let started = Instant::now();
    let order = 4 * a.n;
    let traces: Vec<Result<Trace, Error>> = (0..a.samples as u64)
        .into_par_iter()
        .map(|i| {
            let g = random_balanced_colouring(a.n, corpus_seed(a.seed, 2 * i))?;
            let m = random_matching(order, corpus_seed(a.seed, 2 * i + 1))?;
            balance(&g, Some(&m))
        })
        .collect();
    let mut hist = Histogram::default();
    let mut total_steps = 0usize;
    let mut max_steps = 0usize;
    for t in traces {
        let t = t?;
        total_steps += t.steps.len();
        max_steps = max_steps.max(t.steps.len());
        hist.record(&t);
    }
    let mean = if a.samples == 0 {
        0.0
    } else {
        total_steps as f64 / a.samples as f64
    };
    writeln!(out, "stats n {} samples {} seed {}", a.n, a.samples, a.seed)?;
    writeln!(out, "steps mean {mean:.4} max {max_steps} bound {}", a.n)?;
    hist.write(out)?;
    writeln!(err, "runtime {:.3}s", started.elapsed().as_secs_f64())?;
    Ok(EXIT_OK)
}

/// First 8 bytes of the SHA-256 of `text`, as lowercase hex.
pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn indented(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    for line in text.lines() {
        writeln!(out, "  {line}")?;
    }
    Ok(())
}

pub fn cmd_experiment(c: &ExperimentCommand, out: &mut dyn Write) -> CmdResult {
    match *c {
        ExperimentCommand::Kcolour {
            k,
            n,
            samples,
            seed,
        } => {
            if k < 2 || n == 0 || 2 * k * n > MATCHING_CAP {
                return Err(Error::BadParameter(format!(
                    "need k >= 2, n >= 1, 2kn <= {MATCHING_CAP}; got k={k} n={n}"
                )));
            }
            let verdicts: Vec<Result<_, Error>> = (0..samples as u64)
                .into_par_iter()
                .map(|i| {
                    let g = random_k_colouring(k, n, corpus_seed(seed, i))?;
                    let found = kcolour_balanced_matching(&g)?;
                    Ok((g, found))
                })
                .collect();
            writeln!(
                out,
                "experiment kcolour k {k} n {n} samples {samples} seed {seed}"
            )?;
            let (mut found_count, mut none_count) = (0, 0);
            for (i, v) in verdicts.into_iter().enumerate() {
                let (g, found) = v?;
                let text = format_kcolour_instance(&g);
                match found {
                    Some(m) => {
                        found_count += 1;
                        writeln!(
                            out,
                            "instance {i} digest {} verdict found {}",
                            digest(&text),
                            format_matching(&m)
                        )?;
                    }
                    None => {
                        none_count += 1;
                        writeln!(out, "instance {i} digest {} verdict none", digest(&text))?;
                        indented(out, &text)?;
                    }
                }
            }
            writeln!(
                out,
                "summary instances {samples} found {found_count} none {none_count}"
            )?;
            Ok(EXIT_OK)
        }
        ExperimentCommand::Decompose {
            n,
            exhaustive,
            samples,
            seed,
        } => {
            if n == 0 || 4 * n > DECOMPOSE_CAP {
                return Err(Error::BadParameter(format!(
                    "need 1 <= n and 4n <= {DECOMPOSE_CAP}; got n={n}"
                )));
            }
            let graphs: Vec<ColouredGraph> = if exhaustive {
                if n != 1 {
                    return Err(Error::BadParameter(
                        "--exhaustive is only available for n = 1".into(),
                    ));
                }
                enumerate_balanced_colourings(4)?.collect()
            } else {
                let samples = samples.unwrap_or(DEFAULT_SAMPLES);
                let seed = seed.unwrap_or(DEFAULT_SEED);
                (0..samples as u64)
                    .map(|i| random_balanced_colouring(n, corpus_seed(seed, i)))
                    .collect::<Result<_, _>>()?
            };
            let verdicts: Vec<Result<_, Error>> =
                graphs.par_iter().map(decompose_balanced).collect();
            let mode = if exhaustive { "exhaustive" } else { "sampled" };
            writeln!(
                out,
                "experiment decompose n {n} {mode} instances {}",
                graphs.len()
            )?;
            let (mut yes, mut no) = (0, 0);
            for (i, (g, v)) in graphs.iter().zip(verdicts).enumerate() {
                let text = format_instance(g);
                match v? {
                    Some(factors) => {
                        yes += 1;
                        let parts: Vec<String> = factors
                            .iter()
                            .map(|m| {
                                format_matching(m)
                                    .trim_start_matches("matching ")
                                    .to_string()
                            })
                            .collect();
                        writeln!(
                            out,
                            "instance {i} digest {} verdict decomposable factors {}",
                            digest(&text),
                            parts.join(" | ")
                        )?;
                    }
                    None => {
                        no += 1;
                        writeln!(out, "instance {i} digest {} verdict none", digest(&text))?;
                        indented(out, &text)?;
                    }
                }
            }
            writeln!(
                out,
                "summary instances {} decomposable {yes} none {no}",
                graphs.len()
            )?;
            Ok(EXIT_OK)
        }
    }
}

pub fn cmd_gen(c: &GenCommand, out: &mut dyn Write) -> CmdResult {
    let text = match *c {
        GenCommand::Random { n, seed } => format_instance(&random_balanced_colouring(n, seed)?),
        GenCommand::Clique { n, s } => format_instance(&clique_split_colouring(n, s)?),
        GenCommand::Kcolour { k, n, seed } => {
            format_kcolour_instance(&random_k_colouring(k, n, seed)?)
        }
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["zsm"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_clique_matches_fixture() {
        let (code, out, _) = run_capture(&["gen", "clique", "--n", "1", "--s", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "zsm v1\norder 4\ncolours BBRBRR\n");
        let (code, _, err) = run_capture(&["gen", "clique", "--n", "1", "--s", "4"]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["frobnicate"]).0, 1);
        assert_eq!(run_capture(&["stats"]).0, 1);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn exhaust_rejects_large_order() {
        let (code, _, err) = run_capture(&["exhaust", "--order", "20"]);
        assert_eq!(code, 1);
        assert!(err.contains("order"));
    }

    #[test]
    fn missing_file_is_io_failure() {
        let (code, _, _) = run_capture(&["solve", "/nonexistent/instance.zsm"]);
        assert_eq!(code, 3);
    }
}
