//! Emission and independent checking of proofs and counterexample traces.
//!
//! Proof files carry an inductive strengthening; checking one runs the three
//! induction queries (initiation, consecution, property implication) on
//! fresh solver contexts that share nothing with the engine. Trace files
//! carry one latch and one input valuation per step; checking one replays
//! the circuit by direct evaluation, with no SAT involvement at all.
//!
//! Both formats are line oriented UTF-8, with the literal syntax of the
//! core textual form (space-separated signed variable indices):
//!
//! ```text
//! relic-proof 1                      relic-trace 1
//! system <sha256 hex>                system <sha256 hex>
//! latches <n>                        latches <n>
//! k <level>                          inputs <m>
//! property <lits>                    s <latch lits>
//! clause <lits>                      i <input lits>
//! ...                                ...
//! ```
//!
//! A trace file alternates `s`/`i` lines, one pair per step; proof `clause`
//! lines may be empty (the empty clause). Traces convert to the AIGER
//! witness format for external tools.

use std::fmt::Write as _;

use thiserror::Error;

use crate::sat::Solver;
use crate::system::TransitionSystem;
use crate::types::{Assignment, Clause, Cnf, Cube, Lit};
use crate::verdict::{Trace, TraceStep};

const PROOF_MAGIC: &str = "relic-proof 1";
const TRACE_MAGIC: &str = "relic-trace 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("certificate was produced for a different system (hash {found} vs {expected})")]
    HashMismatch { expected: String, found: String },
    #[error("certificate disagrees with the system: {0}")]
    Mismatch(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CertifyError {
    CertifyError::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

/// A parsed proof certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofFile {
    pub system_hash: String,
    pub latches: usize,
    pub k: usize,
    pub property: Cnf,
    pub clauses: Vec<Clause>,
}

/// A parsed counterexample certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub system_hash: String,
    pub latches: usize,
    pub inputs: usize,
    pub trace: Trace,
}

pub fn write_proof(sys: &TransitionSystem, strengthening: &[Clause], k: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{PROOF_MAGIC}");
    let _ = writeln!(out, "system {}", sys.fingerprint());
    let _ = writeln!(out, "latches {}", sys.latch_count());
    let _ = writeln!(out, "k {k}");
    for c in sys.property() {
        let _ = writeln!(out, "property {}", c.to_text());
    }
    for c in strengthening {
        let _ = writeln!(out, "clause {}", c.to_text());
    }
    out
}

pub fn parse_proof(text: &str) -> Result<ProofFile, CertifyError> {
    let mut lines = text.lines().enumerate();
    let (_, magic) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
    if magic.trim() != PROOF_MAGIC {
        return Err(parse_err(0, format!("expected `{PROOF_MAGIC}` header")));
    }
    let mut system_hash = None;
    let mut latches = None;
    let mut k = None;
    let mut property = Cnf::new();
    let mut clauses = Vec::new();
    for (n, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "system" => system_hash = Some(rest.trim().to_string()),
            "latches" => {
                latches = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err(n, format!("bad latch count `{rest}`")))?,
                )
            }
            "k" => {
                k = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err(n, format!("bad convergence level `{rest}`")))?,
                )
            }
            "property" => property.push(Clause::parse(rest).map_err(|e| parse_err(n, e))?),
            "clause" => clauses.push(Clause::parse(rest).map_err(|e| parse_err(n, e))?),
            other => return Err(parse_err(n, format!("unknown record `{other}`"))),
        }
    }
    Ok(ProofFile {
        system_hash: system_hash.ok_or_else(|| parse_err(0, "missing system hash"))?,
        latches: latches.ok_or_else(|| parse_err(0, "missing latch count"))?,
        k: k.ok_or_else(|| parse_err(0, "missing convergence level"))?,
        property,
        clauses,
    })
}

pub fn write_trace(sys: &TransitionSystem, trace: &Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{TRACE_MAGIC}");
    let _ = writeln!(out, "system {}", sys.fingerprint());
    let _ = writeln!(out, "latches {}", sys.latch_count());
    let _ = writeln!(out, "inputs {}", sys.input_count());
    for step in &trace.steps {
        let _ = writeln!(out, "s {}", step.state.to_cube().to_text());
        let rendered: Vec<String> = step
            .inputs
            .iter()
            .enumerate()
            .map(|(i, &v)| Lit::new(sys.input_var(i), v).to_string())
            .collect();
        let _ = writeln!(out, "i {}", rendered.join(" "));
    }
    out
}

pub fn parse_trace(text: &str) -> Result<TraceFile, CertifyError> {
    let mut lines = text.lines().enumerate();
    let (_, magic) = lines.next().ok_or_else(|| parse_err(0, "empty file"))?;
    if magic.trim() != TRACE_MAGIC {
        return Err(parse_err(0, format!("expected `{TRACE_MAGIC}` header")));
    }
    let mut system_hash = None;
    let mut latches: Option<usize> = None;
    let mut inputs: Option<usize> = None;
    let mut steps: Vec<TraceStep> = Vec::new();
    let mut pending_state: Option<Cube> = None;
    for (n, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "system" => system_hash = Some(rest.trim().to_string()),
            "latches" => {
                latches = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| parse_err(n, format!("bad latch count `{rest}`")))?,
                )
            }
            "inputs" => {
                inputs = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| parse_err(n, format!("bad input count `{rest}`")))?,
                )
            }
            "s" => {
                if pending_state.is_some() {
                    return Err(parse_err(n, "state line without input line before it"));
                }
                pending_state = Some(Cube::parse(rest).map_err(|e| parse_err(n, e))?);
            }
            "i" => {
                let state = pending_state
                    .take()
                    .ok_or_else(|| parse_err(n, "input line without a state line"))?;
                let latch_count =
                    latches.ok_or_else(|| parse_err(n, "latch count must precede steps"))?;
                let input_count =
                    inputs.ok_or_else(|| parse_err(n, "input count must precede steps"))?;
                if state.len() != latch_count {
                    return Err(parse_err(n, "state line is not a total latch cube"));
                }
                let cube = Cube::parse(rest).map_err(|e| parse_err(n, e))?;
                let mut values = vec![false; input_count];
                for &l in cube.lits() {
                    let idx = l.var().index() as usize;
                    if idx <= latch_count || idx > latch_count + input_count {
                        return Err(parse_err(n, format!("literal {l} is not an input")));
                    }
                    values[idx - latch_count - 1] = l.is_positive();
                }
                steps.push(TraceStep {
                    state: Assignment::from_cube(&state, latch_count),
                    inputs: values,
                });
            }
            other => return Err(parse_err(n, format!("unknown record `{other}`"))),
        }
    }
    if pending_state.is_some() {
        return Err(parse_err(0, "trailing state line without inputs"));
    }
    if steps.is_empty() {
        return Err(parse_err(0, "trace has no steps"));
    }
    Ok(TraceFile {
        system_hash: system_hash.ok_or_else(|| parse_err(0, "missing system hash"))?,
        latches: latches.ok_or_else(|| parse_err(0, "missing latch count"))?,
        inputs: inputs.ok_or_else(|| parse_err(0, "missing input count"))?,
        trace: Trace { steps },
    })
}

/// The three induction checks for `F ∧ P`, on fresh solver contexts:
/// `I ∧ ¬(F ∧ P)` unsat, `(F ∧ P) ∧ T ∧ ¬(F ∧ P)'` unsat, and
/// `(F ∧ P) ∧ ¬P` unsat (trivially true by construction, still checked).
pub fn verify_strengthening(sys: &TransitionSystem, f: &[Clause], seed: u64) -> bool {
    let mut conjuncts: Cnf = f.to_vec();
    conjuncts.extend(sys.property().iter().cloned());

    // initiation, clause by clause
    let mut init_solver = Solver::new(seed);
    init_solver.ensure_vars(sys.var_count() as u32);
    for c in sys.init() {
        init_solver.add_clause(c.lits()).expect("vars declared");
    }
    for c in &conjuncts {
        let assumptions: Vec<Lit> = c.lits().iter().map(|&l| !l).collect();
        if init_solver.solve(&assumptions).is_sat() {
            return false;
        }
    }

    // consecution, clause by clause
    let mut consec_solver = Solver::new(seed);
    consec_solver.ensure_vars(sys.var_count() as u32);
    for c in sys.trans() {
        consec_solver.add_clause(c.lits()).expect("vars declared");
    }
    for c in &conjuncts {
        consec_solver.add_clause(c.lits()).expect("vars declared");
    }
    for c in &conjuncts {
        let assumptions: Vec<Lit> = c
            .lits()
            .iter()
            .map(|&l| !sys.prime_lit(l).expect("strengthening over latches"))
            .collect();
        if consec_solver.solve(&assumptions).is_sat() {
            return false;
        }
    }

    // property implication
    for c in sys.property() {
        let assumptions: Vec<Lit> = c.lits().iter().map(|&l| !l).collect();
        if consec_solver.solve(&assumptions).is_sat() {
            return false;
        }
    }
    true
}

/// Replay a trace by direct evaluation: the first state satisfies `I`, each
/// adjacent pair is a transition of the circuit under the recorded inputs,
/// and the final state violates `P`.
pub fn replay_trace(sys: &TransitionSystem, trace: &Trace) -> bool {
    if trace.steps.is_empty() {
        return false;
    }
    if !sys.holds_init(&trace.steps[0].state) {
        return false;
    }
    for pair in trace.steps.windows(2) {
        if pair[0].inputs.len() != sys.input_count() {
            return false;
        }
        let next = sys.logic().step(pair[0].state.values(), &pair[0].inputs);
        if next != pair[1].state.values() {
            return false;
        }
    }
    !sys.holds_property(&trace.steps.last().expect("nonempty").state)
}

fn check_binding(sys: &TransitionSystem, hash: &str, latches: usize) -> Result<(), CertifyError> {
    let expected = sys.fingerprint();
    if hash != expected {
        return Err(CertifyError::HashMismatch {
            expected,
            found: hash.to_string(),
        });
    }
    if latches != sys.latch_count() {
        return Err(CertifyError::Mismatch(format!(
            "latch count {} vs system {}",
            latches,
            sys.latch_count()
        )));
    }
    Ok(())
}

/// Check a parsed proof against a system. Errors mean the certificate does
/// not belong to this system; `Ok(false)` means it does but is not a valid
/// inductive strengthening.
pub fn check_proof(sys: &TransitionSystem, proof: &ProofFile) -> Result<bool, CertifyError> {
    check_binding(sys, &proof.system_hash, proof.latches)?;
    let mut theirs = proof.property.clone();
    let mut ours = sys.property().clone();
    theirs.sort();
    ours.sort();
    if theirs != ours {
        return Err(CertifyError::Mismatch("property differs".into()));
    }
    Ok(verify_strengthening(sys, &proof.clauses, 0))
}

/// Check a parsed trace against a system.
pub fn check_trace(sys: &TransitionSystem, trace: &TraceFile) -> Result<bool, CertifyError> {
    check_binding(sys, &trace.system_hash, trace.latches)?;
    if trace.inputs != sys.input_count() {
        return Err(CertifyError::Mismatch(format!(
            "input count {} vs system {}",
            trace.inputs,
            sys.input_count()
        )));
    }
    Ok(replay_trace(sys, &trace.trace))
}

/// Mutual-implication equivalence of two CNF formulas over the latches,
/// via fresh solver contexts.
pub fn cnf_equivalent(sys: &TransitionSystem, a: &[Clause], b: &[Clause]) -> bool {
    cnf_implies(sys, a, b) && cnf_implies(sys, b, a)
}

fn cnf_implies(sys: &TransitionSystem, a: &[Clause], b: &[Clause]) -> bool {
    let mut solver = Solver::new(0);
    solver.ensure_vars(sys.var_count() as u32);
    for c in a {
        solver.add_clause(c.lits()).expect("vars declared");
    }
    for c in b {
        let assumptions: Vec<Lit> = c.lits().iter().map(|&l| !l).collect();
        if solver.solve(&assumptions).is_sat() {
            return false;
        }
    }
    true
}

/// Render a trace in the AIGER witness format: result line, property index,
/// initial latch values, then one input vector per executed transition.
/// Latches and inputs dropped by cone-of-influence reduction print as `x`.
pub fn to_aiger_witness(sys: &TransitionSystem, trace: &Trace) -> String {
    let (orig_latches, orig_inputs, latch_pos, input_pos) = match sys.source() {
        Some(src) => (
            src.orig_latches,
            src.orig_inputs,
            src.latch_positions.clone(),
            src.input_positions.clone(),
        ),
        None => (
            sys.latch_count(),
            sys.input_count(),
            (0..sys.latch_count()).map(Some).collect(),
            (0..sys.input_count()).collect(),
        ),
    };
    let mut out = String::from("1\nb0\n");
    let mut latch_row = vec![b'x'; orig_latches];
    for (i, pos) in latch_pos.iter().enumerate() {
        if let Some(p) = *pos {
            latch_row[p] = if trace.steps[0].state.get(i) {
                b'1'
            } else {
                b'0'
            };
        }
    }
    out.push_str(std::str::from_utf8(&latch_row).expect("ascii"));
    out.push('\n');
    for step in &trace.steps[..trace.steps.len() - 1] {
        let mut input_row = vec![b'x'; orig_inputs];
        for (i, &p) in input_pos.iter().enumerate() {
            input_row[p] = if step.inputs[i] { b'1' } else { b'0' };
        }
        out.push_str(std::str::from_utf8(&input_row).expect("ascii"));
        out.push('\n');
    }
    out.push_str(".\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{prove, EngineConfig};
    use crate::fixtures;
    use crate::oracle;
    use crate::verdict::Verdict;

    fn toy7_proof() -> (TransitionSystem, Vec<Clause>, usize) {
        let sys = fixtures::toy7();
        let outcome = prove(&sys, &EngineConfig::default()).outcome();
        let k = outcome.stats.final_k;
        match outcome.verdict {
            Verdict::Safe(f) => (sys, f, k),
            Verdict::Unsafe(_) => panic!("toy7 is safe"),
        }
    }

    #[test]
    fn proof_round_trip_and_acceptance() {
        let (sys, f, k) = toy7_proof();
        let text = write_proof(&sys, &f, k);
        let parsed = parse_proof(&text).unwrap();
        assert_eq!(parsed.clauses, f);
        assert_eq!(parsed.k, k);
        assert!(check_proof(&sys, &parsed).unwrap());
    }

    #[test]
    fn proof_for_wrong_system_is_an_error() {
        let (_, f, k) = toy7_proof();
        let other = fixtures::toggler();
        let sys = fixtures::toy7();
        let parsed = parse_proof(&write_proof(&sys, &f, k)).unwrap();
        assert!(matches!(
            check_proof(&other, &parsed),
            Err(CertifyError::HashMismatch { .. })
        ));
    }

    #[test]
    fn deleting_a_load_bearing_clause_is_rejected() {
        let (sys, f, k) = toy7_proof();
        let full = {
            let mut v = f.clone();
            v.extend(sys.property().iter().cloned());
            v
        };
        for drop in 0..f.len() {
            let mutant: Vec<Clause> = f
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, c)| c.clone())
                .collect();
            // ask the oracle whether the deletion actually breaks induction
            let mut mutant_full = mutant.clone();
            mutant_full.extend(sys.property().iter().cloned());
            let still_inductive = mutant_full
                .iter()
                .all(|c| oracle::check_relative_induction(&sys, &mutant_full, c).unwrap());
            let accepted =
                check_proof(&sys, &parse_proof(&write_proof(&sys, &mutant, k)).unwrap()).unwrap();
            assert_eq!(accepted, still_inductive, "clause {}", f[drop]);
            let _ = &full;
        }
    }

    #[test]
    fn empty_clause_list_accepted_when_property_inductive() {
        let sys = fixtures::stuck_true();
        let text = write_proof(&sys, &[], 1);
        assert!(check_proof(&sys, &parse_proof(&text).unwrap()).unwrap());
    }

    #[test]
    fn trace_round_trip_and_replay() {
        let sys = fixtures::toggler();
        let outcome = prove(&sys, &EngineConfig::default()).outcome();
        let Verdict::Unsafe(trace) = outcome.verdict else {
            panic!("toggler is unsafe");
        };
        let text = write_trace(&sys, &trace);
        let parsed = parse_trace(&text).unwrap();
        assert_eq!(parsed.trace, trace);
        assert!(check_trace(&sys, &parsed).unwrap());
    }

    #[test]
    fn one_state_trace_checks() {
        let sys = fixtures::broken_at_reset();
        let trace = Trace {
            steps: vec![TraceStep {
                state: Assignment::new(vec![false]),
                inputs: vec![],
            }],
        };
        assert!(replay_trace(&sys, &trace));
        let parsed = parse_trace(&write_trace(&sys, &trace)).unwrap();
        assert!(check_trace(&sys, &parsed).unwrap());
    }

    #[test]
    fn flipped_bit_breaks_replay() {
        let sys = fixtures::toggler();
        let outcome = prove(&sys, &EngineConfig::default()).outcome();
        let Verdict::Unsafe(mut trace) = outcome.verdict else {
            panic!("toggler is unsafe");
        };
        let flipped = !trace.steps[0].state.get(0);
        trace.steps[0].state = Assignment::new(vec![flipped]);
        assert!(!replay_trace(&sys, &trace));
    }

    /// Transitions are deterministic, so flipping any latch bit of any
    /// non-initial step must break the incoming transition; all such
    /// mutants are rejected.
    #[test]
    fn bit_flip_mutation_suite_kills_every_mid_trace_mutant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xBEEF);
        let mut traces = 0;
        let mut mutants = 0;
        while traces < 8 {
            let sys = crate::randgen::chained_system(&mut rng, 8, 2);
            let outcome = prove(&sys, &EngineConfig::default()).outcome();
            let Verdict::Unsafe(trace) = outcome.verdict else {
                continue;
            };
            if trace.len() < 2 {
                continue;
            }
            traces += 1;
            for step in 1..trace.len() {
                for bit in 0..sys.latch_count() {
                    let mut mutant = trace.clone();
                    let mut values = mutant.steps[step].state.values().to_vec();
                    values[bit] = !values[bit];
                    mutant.steps[step].state = Assignment::new(values);
                    assert!(
                        !replay_trace(&sys, &mutant),
                        "flipping step {step} bit {bit} went unnoticed"
                    );
                    mutants += 1;
                }
            }
        }
        assert!(mutants > 50, "only {mutants} mutants exercised");
    }

    /// Random proof mutations beyond deletion: flip a literal's sign, drop
    /// a literal from a clause, or inject a random clause. Acceptance must
    /// track the brute-force induction check exactly.
    #[test]
    fn proof_mutation_fuzz_tracks_the_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xFADE);
        let mut tried = 0;
        let mut rejected = 0;
        while tried < 60 {
            let sys = crate::randgen::chained_system(&mut rng, 7, 2);
            let outcome = prove(&sys, &EngineConfig::default()).outcome();
            let Verdict::Safe(proof) = outcome.verdict else {
                continue;
            };
            if proof.is_empty() {
                continue;
            }
            for _ in 0..4 {
                let mut mutant = proof.clone();
                let target = rng.random_range(0..mutant.len());
                match rng.random_range(0..3) {
                    0 => {
                        // flip one literal's sign
                        let lits: Vec<Lit> = mutant[target]
                            .lits()
                            .iter()
                            .enumerate()
                            .map(|(i, &l)| if i == 0 { !l } else { l })
                            .collect();
                        match Clause::new(lits) {
                            Ok(c) => mutant[target] = c,
                            Err(_) => continue,
                        }
                    }
                    1 => {
                        // strengthen a clause by dropping a literal
                        let lits = mutant[target].lits();
                        if lits.len() < 2 {
                            continue;
                        }
                        mutant[target] = Clause::from_sorted(lits[1..].to_vec());
                    }
                    _ => {
                        // inject a random clause
                        let v = rng.random_range(1..=sys.latch_count() as u32);
                        let lit = Lit::new(crate::types::Var::new(v), rng.random_bool(0.5));
                        mutant.push(Clause::unit(lit));
                    }
                }
                let mut full = mutant.clone();
                full.extend(sys.property().iter().cloned());
                let initiated = {
                    let every_initial_state = (0..1u64 << sys.latch_count())
                        .filter(|&s| sys.holds_init(&Assignment::from_bits(s, sys.latch_count())))
                        .all(|s| {
                            let a = Assignment::from_bits(s, sys.latch_count());
                            full.iter().all(|c| c.eval(|v| a.value_of(v)))
                        });
                    every_initial_state
                };
                let inductive = initiated && oracle::check_inductive_formula(&sys, &full).unwrap();
                let accepted = verify_strengthening(&sys, &mutant, 0);
                assert_eq!(accepted, inductive, "checker disagrees with the oracle");
                tried += 1;
                if !accepted {
                    rejected += 1;
                }
            }
        }
        assert!(rejected > 10, "only {rejected} mutants were rejected");
    }

    #[test]
    fn parse_errors_name_their_line() {
        let err = parse_proof("relic-proof 1\nsystem abc\nwhatever 3\n").unwrap_err();
        assert!(matches!(err, CertifyError::Parse { line: 3, .. }));
        assert!(parse_trace("not a trace\n").is_err());
        let err = parse_trace("relic-trace 1\nsystem a\nlatches 1\ninputs 0\ni \n").unwrap_err();
        assert!(matches!(err, CertifyError::Parse { .. }));
    }

    #[test]
    fn aiger_witness_shape() {
        let sys = fixtures::toggler();
        let outcome = prove(&sys, &EngineConfig::default()).outcome();
        let Verdict::Unsafe(trace) = outcome.verdict else {
            panic!("toggler is unsafe");
        };
        let witness = to_aiger_witness(&sys, &trace);
        let lines: Vec<&str> = witness.lines().collect();
        assert_eq!(lines[0], "1");
        assert_eq!(lines[1], "b0");
        assert_eq!(lines[2], "1"); // initial latch value
        assert_eq!(lines.last(), Some(&"."));
        // trace has 2 steps: one transition, and toggler has no inputs,
        // so the single input row is empty
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn oracle_strengthening_passes_the_checker() {
        let sys = fixtures::toy7();
        let Verdict::Safe(blocking) = oracle::bfs_verdict(&sys).unwrap() else {
            panic!("toy7 is safe");
        };
        assert!(verify_strengthening(&sys, &blocking, 0));
    }

    #[test]
    fn witness_marks_cone_dropped_signals_as_x() {
        // bad = input0 ∧ input1 through a monitor latch; the one real latch
        // is outside the cone, so its witness column prints as x
        let model = crate::aiger::parse_aiger(b"aag 4 2 1 0 1 1\n2\n4\n6 6\n8\n8 2 4\n").unwrap();
        let sys = crate::aiger::build_system(&model).unwrap();
        let outcome = prove(&sys, &EngineConfig::default()).outcome();
        let Verdict::Unsafe(trace) = outcome.verdict else {
            panic!("both inputs high reach the bad signal");
        };
        let witness = to_aiger_witness(&sys, &trace);
        let lines: Vec<&str> = witness.lines().collect();
        assert_eq!(lines[0], "1");
        assert_eq!(lines[1], "b0");
        // original file has one latch, dropped by the cone
        assert_eq!(lines[2], "x");
        // input rows carry both original inputs, 0/1 valued
        for row in &lines[3..lines.len() - 1] {
            assert_eq!(row.len(), 2);
            assert!(row.bytes().all(|b| b == b'0' || b == b'1'));
        }
        assert_eq!(*lines.last().unwrap(), ".");
    }
}
