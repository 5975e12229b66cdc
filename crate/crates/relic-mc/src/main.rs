//! Command-line driver: parse inputs, run the engine, emit verdicts,
//! certificates, and statistics.
//!
//! Exit codes follow solver-harness practice: 10 safe, 20 unsafe, 1 input
//! or soundness error, 2 resource limit. With several inputs the worst
//! class wins (1 over 2 over 20 over 10).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use relic_mc::engine::{prove, EngineConfig, ProveOutcome, ProveResult};
use relic_mc::report::RunReport;
use relic_mc::{aiger, certify, oracle, sysfile};
use relic_mc::{LimitKind, TransitionSystem, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "relic-mc",
    about = "SAT-based safety model checker for AIGER circuits",
    version
)]
struct Cli {
    /// Input files: AIGER (.aag/.aig) or the textual system format (.sys)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Write the inductive strengthening here on a SAFE verdict
    #[arg(long, value_name = "PATH")]
    proof: Option<PathBuf>,

    /// Write the counterexample trace here on an UNSAFE verdict
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,

    /// Time budget in seconds, checked at SAT-call boundaries
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,

    /// Memory budget in MB (peak RSS, sampled at SAT-call boundaries)
    #[arg(long = "mem-mb", value_name = "N")]
    mem_mb: Option<u64>,

    /// Seed for all randomized heuristics; fixes the run end to end
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Consecutive necessary literals that end a generalization
    #[arg(long = "mic-threshold", default_value_t = 3, value_name = "N")]
    mic_threshold: u32,

    /// Search generalization levels linearly instead of by bisection
    #[arg(long = "no-binary-search")]
    no_binary_search: bool,

    /// Drop literals in declaration order instead of by activity
    #[arg(long = "no-ordering")]
    no_ordering: bool,

    /// Also run the explicit-state oracle and require agreement
    #[arg(long)]
    oracle: bool,

    /// Statistics format on stdout
    #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
    stats: StatsFormat,

    /// Print the final frame clause sets
    #[arg(long = "dump-frames")]
    dump_frames: bool,

    /// Check this many inputs in parallel
    #[arg(long, default_value_t = 1, value_name = "N")]
    jobs: usize,
}

/// Exit classes, worst first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Safe,
    Unsafe,
    Limit,
    Error,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Safe => 10,
            Outcome::Unsafe => 20,
            Outcome::Limit => 2,
            Outcome::Error => 1,
        }
    }
}

struct FileResult {
    outcome: Outcome,
    /// stdout block (verdict line first), printed in input order
    stdout: String,
    stderr: Vec<String>,
    report: Option<RunReport>,
}

fn load_system(path: &Path) -> Result<TransitionSystem, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if bytes.starts_with(b"aag ") || bytes.starts_with(b"aig ") {
        let model = aiger::parse_aiger(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
        aiger::build_system(&model).map_err(|e| format!("{}: {e}", path.display()))
    } else if bytes.starts_with(b"relic-sys") {
        let text = std::str::from_utf8(&bytes).map_err(|e| format!("{}: {e}", path.display()))?;
        sysfile::parse_sys(text).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        Err(format!(
            "{}: unrecognized input (expected aag/aig/relic-sys)",
            path.display()
        ))
    }
}

fn engine_config(cli: &Cli) -> EngineConfig {
    EngineConfig {
        mic_threshold: cli.mic_threshold,
        use_binary_search: !cli.no_binary_search,
        use_literal_ordering: !cli.no_ordering,
        solver_seed: cli.seed,
        timeout: cli.timeout.map(Duration::from_secs_f64),
        mem_limit_mb: cli.mem_mb,
        collect_frames_dump: cli.dump_frames,
        // the engine still re-checks every certificate it produces; the
        // loop-head assertion machinery is a debug-build facility
        invariant_checks: false,
        ..EngineConfig::default()
    }
}

fn run_one(path: &Path, cli: &Cli) -> FileResult {
    let error = |msg: String| FileResult {
        outcome: Outcome::Error,
        stdout: String::new(),
        stderr: vec![msg],
        report: None,
    };
    let sys = match load_system(path) {
        Ok(s) => s,
        Err(e) => return error(e),
    };
    let cfg = engine_config(cli);
    let name = path.display().to_string();
    let mut stderr = Vec::new();
    let (outcome, verdict_word, stats, prove_outcome) = match prove(&sys, &cfg) {
        ProveResult::Done(outcome_data) => {
            let (class, word) = match &outcome_data.verdict {
                Verdict::Safe(_) => (Outcome::Safe, "SAFE"),
                Verdict::Unsafe(_) => (Outcome::Unsafe, "UNSAFE"),
            };
            let stats = outcome_data.stats.clone();
            (class, word, stats, Some(outcome_data))
        }
        ProveResult::Limit(kind, stats) => {
            let word = match kind {
                LimitKind::Timeout => "TIMEOUT",
                LimitKind::Memory => "MEMOUT",
            };
            (Outcome::Limit, word, stats, None)
        }
    };

    let mut outcome = outcome;
    let mut lines = vec![verdict_word.to_string()];
    if let Some(done) = &prove_outcome {
        if let Err(msg) = write_certificates(&sys, done, cli) {
            stderr.push(format!("{name}: {msg}"));
            outcome = Outcome::Error;
        }
        if cli.oracle {
            match oracle_agreement(&sys, done) {
                Ok(line) => lines.push(line),
                Err(msg) => {
                    stderr.push(format!("{name}: {msg}"));
                    outcome = Outcome::Error;
                }
            }
        }
        if let Some(dump) = &done.frames_dump {
            lines.push(dump.trim_end().to_string());
        }
    } else if cli.oracle {
        stderr.push(format!("{name}: oracle comparison skipped (no verdict)"));
    }

    let report = RunReport::new(name, verdict_word, &stats, &cfg);
    if cli.stats == StatsFormat::Text {
        lines.push(report.text());
    }
    FileResult {
        outcome,
        stdout: lines.join("\n"),
        stderr,
        report: Some(report),
    }
}

fn write_certificates(
    sys: &TransitionSystem,
    done: &ProveOutcome,
    cli: &Cli,
) -> Result<(), String> {
    match (&done.verdict, &cli.proof, &cli.trace) {
        (Verdict::Safe(f), Some(path), _) => {
            let text = certify::write_proof(sys, f, done.stats.final_k);
            std::fs::write(path, text).map_err(|e| format!("writing proof: {e}"))?;
        }
        (Verdict::Unsafe(trace), _, Some(path)) => {
            let text = certify::write_trace(sys, trace);
            std::fs::write(path, text).map_err(|e| format!("writing trace: {e}"))?;
        }
        _ => {}
    }
    Ok(())
}

fn oracle_agreement(sys: &TransitionSystem, done: &ProveOutcome) -> Result<String, String> {
    let oracle_verdict = oracle::bfs_verdict(sys).map_err(|e| e.to_string())?;
    let word = if oracle_verdict.is_safe() {
        "SAFE"
    } else {
        "UNSAFE"
    };
    if oracle_verdict.is_safe() != done.verdict.is_safe() {
        return Err(format!(
            "oracle disagrees: engine={} oracle={word}",
            if done.verdict.is_safe() {
                "SAFE"
            } else {
                "UNSAFE"
            }
        ));
    }
    Ok(format!("oracle {word}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.inputs.len() > 1 && (cli.proof.is_some() || cli.trace.is_some()) {
        eprintln!("--proof/--trace require a single input file");
        return ExitCode::from(1);
    }
    let jobs = cli.jobs.max(1);
    let mut results: Vec<Option<FileResult>> = Vec::new();
    results.resize_with(cli.inputs.len(), || None);

    std::thread::scope(|scope| {
        let cli = &cli;
        let chunks: Vec<Vec<usize>> = (0..jobs)
            .map(|w| (w..cli.inputs.len()).step_by(jobs).collect())
            .collect();
        let mut handles = Vec::new();
        for chunk in chunks {
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|i| (i, run_one(&cli.inputs[i], cli)))
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (i, result) in handle.join().expect("worker panicked") {
                results[i] = Some(result);
            }
        }
    });

    let multi = cli.inputs.len() > 1;
    let mut json_reports = Vec::new();
    let mut worst = Outcome::Safe;
    for (path, result) in cli.inputs.iter().zip(results) {
        let result = result.expect("every input processed");
        worst = worst.max(result.outcome);
        if multi {
            println!("== {}", path.display());
        }
        if !result.stdout.is_empty() {
            println!("{}", result.stdout);
        }
        for line in &result.stderr {
            eprintln!("{line}");
        }
        if let Some(report) = result.report {
            json_reports.push(report);
        }
    }
    if cli.stats == StatsFormat::Json && !json_reports.is_empty() {
        let rendered = if multi {
            serde_json::to_string_pretty(&json_reports)
        } else {
            serde_json::to_string_pretty(&json_reports[0])
        };
        println!("{}", rendered.expect("reports serialize"));
    }
    ExitCode::from(worst.code())
}
