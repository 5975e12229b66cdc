//! Acceptance suite: every release criterion, one pass/fail line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//! The criteria share one randomized system suite (seeded, reproducible):
//! 500 systems of at most 10 latches and 4 inputs with at least 150 safe
//! and 150 unsafe instances, every engine run executed with the loop-head
//! assertion checks enabled.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use relic_mc::engine::{first_true_binary, first_true_linear, prove, EngineConfig, ProveOutcome};
use relic_mc::sat::{exhaustive, SatResult, Solver};
use relic_mc::types::Lit;
use relic_mc::{certify, fixtures, oracle, randgen};
use relic_mc::{Clause, TransitionSystem, Verdict};

const SUITE_SEED: u64 = 0xD00D_FEED;
const SUITE_SIZE: usize = 500;
const SUITE_MIN_EACH: usize = 150;

struct SuiteRun {
    sys: TransitionSystem,
    oracle_safe: bool,
    outcome: ProveOutcome,
}

struct Suite {
    runs: Vec<SuiteRun>,
    build_seconds: f64,
}

fn suite_config() -> EngineConfig {
    EngineConfig {
        invariant_checks: true,
        collect_mic_log: true,
        collect_inductive_log: true,
        ..EngineConfig::default()
    }
}

fn suite() -> &'static Suite {
    static SUITE: OnceLock<Suite> = OnceLock::new();
    SUITE.get_or_init(|| {
        let start = Instant::now();
        let systems = randgen::mixed_suite(SUITE_SEED, SUITE_SIZE, SUITE_MIN_EACH);
        let cfg = suite_config();
        let runs = systems
            .into_iter()
            .map(|(sys, oracle_safe)| {
                let outcome = prove(&sys, &cfg).outcome();
                SuiteRun {
                    sys,
                    oracle_safe,
                    outcome,
                }
            })
            .collect();
        Suite {
            runs,
            build_seconds: start.elapsed().as_secs_f64(),
        }
    })
}

fn report(line: &mut Vec<String>, name: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("criterion {name}: PASS ({detail})"),
        Err(msg) => {
            println!("criterion {name}: FAIL ({msg})");
            line.push(format!("{name}: {msg}"));
        }
    }
}

/// Golden worked example: safe, fast, shallow, semantically the expected
/// strengthening, and its proof certificate checks.
fn criterion_1() -> Result<String, String> {
    let sys = fixtures::toy7();
    let started = Instant::now();
    let outcome = prove(&sys, &suite_config()).outcome();
    let elapsed = started.elapsed();
    let Verdict::Safe(strengthening) = &outcome.verdict else {
        return Err("verdict is not SAFE".into());
    };
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}, budget 1s"));
    }
    if outcome.stats.final_k > 3 {
        return Err(format!("converged at k={}", outcome.stats.final_k));
    }
    let mut full = strengthening.clone();
    full.extend(sys.property().iter().cloned());
    if !certify::cnf_equivalent(&sys, &full, &fixtures::toy7_expected_invariant()) {
        return Err("strengthening not equivalent to x0=¬x1 ∧ x ∧ y0=¬y1 ∧ y ∧ z".into());
    }
    let text = certify::write_proof(&sys, strengthening, outcome.stats.final_k);
    let parsed = certify::parse_proof(&text).map_err(|e| e.to_string())?;
    if !certify::check_proof(&sys, &parsed).map_err(|e| e.to_string())? {
        return Err("emitted proof rejected by the checker".into());
    }
    Ok(format!(
        "k={} |proof|={} in {:.0?}",
        outcome.stats.final_k,
        strengthening.len(),
        elapsed
    ))
}

/// Engine verdict equals the explicit-state verdict on the whole suite,
/// within the runtime budget.
fn criterion_2() -> Result<String, String> {
    let suite = suite();
    let safe = suite.runs.iter().filter(|r| r.oracle_safe).count();
    let unsafe_count = suite.runs.len() - safe;
    if suite.runs.len() < SUITE_SIZE || safe < SUITE_MIN_EACH || unsafe_count < SUITE_MIN_EACH {
        return Err(format!(
            "suite mix insufficient: {safe} safe / {unsafe_count} unsafe"
        ));
    }
    let disagreements = suite
        .runs
        .iter()
        .filter(|r| r.outcome.verdict.is_safe() != r.oracle_safe)
        .count();
    if disagreements > 0 {
        return Err(format!("{disagreements} verdict disagreements"));
    }
    if suite.build_seconds >= 300.0 {
        return Err(format!(
            "suite took {:.1}s, budget 300s",
            suite.build_seconds
        ));
    }
    Ok(format!(
        "{} systems ({safe} safe / {unsafe_count} unsafe) agree in {:.1}s",
        suite.runs.len(),
        suite.build_seconds
    ))
}

/// Every safe run yields a checkable proof file; every unsafe run yields a
/// replayable trace file.
fn criterion_3() -> Result<String, String> {
    let mut proofs = 0;
    let mut traces = 0;
    for (i, run) in suite().runs.iter().enumerate() {
        match &run.outcome.verdict {
            Verdict::Safe(f) => {
                let text = certify::write_proof(&run.sys, f, run.outcome.stats.final_k);
                let parsed = certify::parse_proof(&text).map_err(|e| format!("run {i}: {e}"))?;
                if !certify::check_proof(&run.sys, &parsed).map_err(|e| format!("run {i}: {e}"))? {
                    return Err(format!("run {i}: proof rejected"));
                }
                proofs += 1;
            }
            Verdict::Unsafe(trace) => {
                let text = certify::write_trace(&run.sys, trace);
                let parsed = certify::parse_trace(&text).map_err(|e| format!("run {i}: {e}"))?;
                if !certify::check_trace(&run.sys, &parsed).map_err(|e| format!("run {i}: {e}"))? {
                    return Err(format!("run {i}: trace rejected"));
                }
                traces += 1;
            }
        }
    }
    Ok(format!("{proofs} proofs and {traces} traces all check"))
}

/// Single-clause deletions that break induction (per the oracle) are all
/// rejected by the proof checker.
fn criterion_4() -> Result<String, String> {
    let mut examined = 0usize;
    let mut breaking = 0usize;
    for run in suite().runs.iter() {
        if examined >= 50 {
            break;
        }
        let Verdict::Safe(f) = &run.outcome.verdict else {
            continue;
        };
        if f.is_empty() {
            continue;
        }
        examined += 1;
        for drop in 0..f.len() {
            let mutant: Vec<Clause> = f
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != drop)
                .map(|(_, c)| c.clone())
                .collect();
            let mut mutant_full = mutant.clone();
            mutant_full.extend(run.sys.property().iter().cloned());
            let still_inductive = oracle::check_inductive_formula(&run.sys, &mutant_full)
                .map_err(|e| e.to_string())?;
            let accepted = certify::verify_strengthening(&run.sys, &mutant, 0);
            if !still_inductive {
                breaking += 1;
                if accepted {
                    return Err(format!(
                        "checker accepted a broken mutant (dropped {})",
                        f[drop]
                    ));
                }
            } else if !accepted {
                return Err(format!(
                    "checker rejected a still-inductive mutant (dropped {})",
                    f[drop]
                ));
            }
        }
    }
    if examined < 50 {
        return Err(format!("only {examined} nonempty proofs available"));
    }
    Ok(format!(
        "50 proofs, {breaking} breaking deletions, kill rate 100%"
    ))
}

/// Loop-head assertions were verified at runtime across the suite, and the
/// rank bounds hold on the small systems.
fn criterion_5() -> Result<String, String> {
    let cfg = suite_config();
    if !cfg.invariant_checks {
        return Err("suite ran without invariant checks".into());
    }
    let mut bounded = 0;
    for (i, run) in suite().runs.iter().enumerate() {
        let latches = run.sys.latch_count();
        if latches > 8 {
            continue;
        }
        bounded += 1;
        let states = 1u64 << latches;
        let k = run.outcome.stats.final_k as u64;
        if k > states + 1 {
            return Err(format!("run {i}: k={k} exceeds 2^{latches}+1"));
        }
        let push_bound = (k + 1) * states;
        if run.outcome.stats.push_iterations_max > push_bound {
            return Err(format!(
                "run {i}: push ran {} iterations, bound {push_bound}",
                run.outcome.stats.push_iterations_max
            ));
        }
        if run.outcome.stats.check_iterations_max > states {
            return Err(format!("run {i}: check exceeded its rank bound"));
        }
    }
    Ok(format!(
        "A/B/C/D/E/F checked at every loop head on {} runs; rank bounds hold on {bounded} small systems",
        suite().runs.len()
    ))
}

/// With the threshold disabled, 100 generalizations are minimal by brute
/// force; with the default threshold every clause is still relatively
/// inductive.
fn criterion_6() -> Result<String, String> {
    // part 1: unbounded threshold on fresh small-system runs
    let cfg = EngineConfig {
        mic_threshold: u32::MAX,
        ..suite_config()
    };
    let mut minimal = 0usize;
    for run in suite().runs.iter() {
        if minimal >= 100 {
            break;
        }
        if run.sys.latch_count() > 8 {
            continue;
        }
        let outcome = prove(&run.sys, &cfg).outcome();
        for record in &outcome.logs.mic {
            if minimal >= 100 {
                break;
            }
            if !oracle::check_relative_induction(&run.sys, &record.frame, &record.clause)
                .map_err(|e| e.to_string())?
            {
                return Err(format!("clause {} not relatively inductive", record.clause));
            }
            if !oracle::minimality_check(&run.sys, &record.frame, &record.clause)
                .map_err(|e| e.to_string())?
            {
                return Err(format!(
                    "clause {} not minimal under unbounded threshold",
                    record.clause
                ));
            }
            minimal += 1;
        }
    }
    // top up from re-seeded runs of the same systems if the suite's own
    // generalization activity fell short
    let mut extra_seed = 1u64;
    while minimal < 100 && extra_seed <= 8 {
        for run in suite().runs.iter() {
            if minimal >= 100 {
                break;
            }
            if run.sys.latch_count() > 8 {
                continue;
            }
            let outcome = prove(
                &run.sys,
                &EngineConfig {
                    solver_seed: extra_seed,
                    ..cfg.clone()
                },
            )
            .outcome();
            for record in &outcome.logs.mic {
                if minimal >= 100 {
                    break;
                }
                if !oracle::minimality_check(&run.sys, &record.frame, &record.clause)
                    .map_err(|e| e.to_string())?
                {
                    return Err(format!("clause {} not minimal", record.clause));
                }
                minimal += 1;
            }
        }
        extra_seed += 1;
    }
    if minimal < 100 {
        return Err(format!("only {minimal} generalization calls collected"));
    }
    // part 2: default threshold clauses are relatively inductive
    let mut default_checked = 0usize;
    for run in suite().runs.iter() {
        for record in &run.outcome.logs.mic {
            if default_checked >= 300 {
                break;
            }
            if !oracle::check_relative_induction(&run.sys, &record.frame, &record.clause)
                .map_err(|e| e.to_string())?
            {
                return Err(format!(
                    "default-threshold clause {} not relatively inductive",
                    record.clause
                ));
            }
            default_checked += 1;
        }
    }
    Ok(format!(
        "{minimal} unbounded-threshold calls minimal; {default_checked} default-threshold clauses inductive"
    ))
}

/// Binary and linear level search return identical levels on the recorded
/// consecution profiles.
fn criterion_7() -> Result<String, String> {
    fn replay(lo: usize, hi: usize, profile: &[bool]) -> Result<(), String> {
        if profile.windows(2).any(|w| w[0] && !w[1]) {
            return Err("recorded consecution profile is not monotone".into());
        }
        let lin =
            first_true_linear(lo, hi, |i| Ok::<bool, ()>(profile[i - lo])).expect("infallible");
        let bin =
            first_true_binary(lo, hi, |i| Ok::<bool, ()>(profile[i - lo])).expect("infallible");
        if lin != bin {
            return Err(format!(
                "searches disagree on profile {profile:?}: {lin:?} vs {bin:?}"
            ));
        }
        Ok(())
    }
    let mut replayed = 0usize;
    for run in suite().runs.iter() {
        for record in &run.outcome.logs.inductive {
            replay(record.lo, record.hi, &record.failed_at)?;
            replayed += 1;
        }
    }
    // extend the log from re-seeded runs of the same systems if needed
    let mut extra_seed = 100u64;
    while replayed < 1000 && extra_seed <= 108 {
        for run in suite().runs.iter() {
            if replayed >= 1000 {
                break;
            }
            let outcome = prove(
                &run.sys,
                &EngineConfig {
                    solver_seed: extra_seed,
                    ..suite_config()
                },
            )
            .outcome();
            for record in &outcome.logs.inductive {
                replay(record.lo, record.hi, &record.failed_at)?;
                replayed += 1;
            }
        }
        extra_seed += 1;
    }
    if replayed < 1000 {
        return Err(format!("only {replayed} recorded level searches"));
    }
    Ok(format!("{replayed} level searches replay identically"))
}

/// The SAT substrate agrees with truth-table enumeration, and the
/// activation-literal machinery agrees with per-query fresh rebuilds.
fn criterion_8() -> Result<String, String> {
    let mut state = 0x5EED_CAFE_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for round in 0..200 {
        let vars = 3 + (next() % 18) as u32; // 3..=20
        let n_clauses = 2 + (next() % (4 * vars as u64 + 8)) as usize;
        let cnf: Vec<Vec<Lit>> = (0..n_clauses)
            .map(|_| {
                (0..1 + (next() % 3) as usize)
                    .map(|_| {
                        let v = 1 + (next() % u64::from(vars)) as i64;
                        Lit::from_dimacs(if next() & 1 == 0 { v } else { -v })
                    })
                    .collect()
            })
            .collect();
        let expected = exhaustive::is_satisfiable(vars, &cnf);
        let mut solver = Solver::new(round);
        solver.ensure_vars(vars);
        for c in &cnf {
            solver.add_clause(c).map_err(|e| e.to_string())?;
        }
        let got = matches!(solver.solve(&[]), SatResult::Satisfiable(_));
        if got != expected {
            return Err(format!(
                "round {round}: solver {got}, enumeration {expected}"
            ));
        }
    }

    // full toy7 run with every incremental query shadowed by a fresh solver
    let cfg = EngineConfig {
        paranoid_queries: true,
        ..suite_config()
    };
    let outcome = prove(&fixtures::toy7(), &cfg).outcome();
    if !outcome.verdict.is_safe() {
        return Err("paranoid toy7 run produced the wrong verdict".into());
    }
    Ok(format!(
        "200 CNFs match enumeration; {} incremental queries matched fresh rebuilds",
        outcome.stats.sat_calls
    ))
}

/// Desk-scale stand-in for benchmark-scale results: the CLI completes every
/// bundled sample within 60 s (or exits cleanly at the limit) and reports
/// the statistics columns.
fn criterion_9() -> Result<String, String> {
    let fixture_dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let mut solved = Vec::new();
    for sample in ["toggle.aag", "ring64.aag", "shift200.aag", "toy7_twin.aag"] {
        let started = Instant::now();
        let output = Command::new(env!("CARGO_BIN_EXE_relic-mc"))
            .arg(format!("{fixture_dir}/{sample}"))
            .args(["--timeout", "60"])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();
        let code = output.status.code().unwrap_or(-1);
        if !matches!(code, 10 | 20 | 2) {
            return Err(format!("{sample}: unexpected exit code {code}"));
        }
        if elapsed > Duration::from_secs(90) {
            return Err(format!("{sample}: ran {elapsed:?} despite the 60s budget"));
        }
        let stdout = String::from_utf8_lossy(&output.stdout);
        for column in ["sec", "MB", "SC(k)"] {
            if !stdout.contains(column) {
                return Err(format!("{sample}: missing statistics column {column}"));
            }
        }
        if code != 2 && !(stdout.contains("|proof|") || stdout.contains("|trace|")) {
            return Err(format!("{sample}: missing certificate size column"));
        }
        solved.push(format!("{sample}={code} in {:.1}s", elapsed.as_secs_f64()));
    }
    Ok(solved.join(", "))
}

type Criterion = fn() -> Result<String, String>;

// the listing-invariant criterion attests runtime checks that only the
// debug-assertion build compiles in fully
#[cfg_attr(
    not(debug_assertions),
    ignore = "the acceptance suite requires debug assertions"
)]
#[test]
fn acceptance() {
    let mut failures = Vec::new();
    let checks: [(&str, Criterion); 9] = [
        ("1 golden-example", criterion_1),
        ("2 oracle-equivalence", criterion_2),
        ("3 certificate-soundness", criterion_3),
        ("4 mutation-robustness", criterion_4),
        ("5 listing-invariants", criterion_5),
        ("6 mic-quality", criterion_6),
        ("7 search-mode-equivalence", criterion_7),
        ("8 sat-substrate", criterion_8),
        ("9 desk-scale-proxy", criterion_9),
    ];
    for (name, check) in checks {
        report(&mut failures, name, check());
    }
    assert!(failures.is_empty(), "failed criteria: {failures:#?}");
}
