//! The top-level proof search.
//!
//! `prove` drives the frontier loop; `check` eliminates property-violating
//! predecessors at the frontier; `inductive` finds the highest level a state
//! cube can be generalized at; `generate` extracts an inductive subclause of
//! the cube's negation (MIC with a consecutive-failure threshold and an
//! activity-guided drop order); `push` works the proof-obligation set until
//! every queued state is excluded beyond the frontier.
//!
//! Every failure mode is a verdict: a syntactic fixpoint yields a proof, a
//! reachable predecessor of a bad state yields a trace. Both certificates are
//! re-checked on every run before they are returned.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify;
use crate::frames::{FrameSeq, LimitHit, LimitKind, Limits};
use crate::sat::{SatResult, Solver};
use crate::system::TransitionSystem;
use crate::types::{Assignment, Clause, Cnf, Cube, Lit};
use crate::verdict::{Trace, TraceStep, Verdict};

/// Search configuration. Defaults follow the reference heuristics: MIC stops
/// after three consecutive necessary literals, level search is binary, and
/// the drop order follows literal activity.
#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Consecutive failed drop attempts before MIC stops. `u32::MAX`
    /// disables the early stop (full minimization).
    pub mic_threshold: u32,
    pub use_binary_search: bool,
    pub use_literal_ordering: bool,
    /// Per-epoch decay of the literal activity scores, in (0, 1).
    pub ordering_decay: f64,
    pub solver_seed: u64,
    /// Drop frame clauses subsumed by newly added ones.
    pub subsumption_cleanup: bool,
    /// Verify the loop-head assertions at runtime (SAT and enumeration
    /// checks engage on small systems).
    pub invariant_checks: bool,
    /// Re-answer every incremental query on a fresh solver (test oracle).
    pub paranoid_queries: bool,
    /// Record every generalization for minimality auditing.
    pub collect_mic_log: bool,
    /// Record consecution failure profiles of every level search.
    pub collect_inductive_log: bool,
    /// Capture the final frame clause sets for display.
    pub collect_frames_dump: bool,
    pub timeout: Option<Duration>,
    pub mem_limit_mb: Option<u64>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mic_threshold: 3,
            use_binary_search: true,
            use_literal_ordering: true,
            ordering_decay: 0.99,
            solver_seed: 0,
            subsumption_cleanup: true,
            invariant_checks: cfg!(debug_assertions),
            paranoid_queries: false,
            collect_mic_log: false,
            collect_inductive_log: false,
            collect_frames_dump: false,
            timeout: None,
            mem_limit_mb: None,
        }
    }
}

impl EngineConfig {
    fn validate(&self) {
        assert!(self.mic_threshold >= 1, "mic_threshold must be at least 1");
        assert!(
            self.ordering_decay > 0.0 && self.ordering_decay < 1.0,
            "ordering_decay must lie in (0, 1)"
        );
    }
}

/// Run statistics, one record per proof attempt.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunStats {
    pub sat_calls: u64,
    pub final_k: usize,
    pub obligations: u64,
    pub clauses_added: u64,
    pub mic_calls: u64,
    pub check_iterations_max: u64,
    pub push_iterations_max: u64,
    pub solver_rebuilds: u64,
    pub wall_seconds: f64,
    pub peak_memory_mb: Option<u64>,
    pub proof_clauses: Option<usize>,
    pub trace_length: Option<usize>,
}

/// One recorded generalization: the frame formula the clause was derived
/// against, and the clause.
#[derive(Debug, Clone)]
pub struct MicRecord {
    pub frame: Cnf,
    pub clause: Clause,
}

/// One recorded level search: consecution outcomes over `lo..=hi`
/// (`true` = the query was satisfiable, i.e. consecution failed).
#[derive(Debug, Clone)]
pub struct InductiveRecord {
    pub lo: usize,
    pub hi: usize,
    pub failed_at: Vec<bool>,
}

#[derive(Debug, Clone, Default)]
pub struct EngineLogs {
    pub mic: Vec<MicRecord>,
    pub inductive: Vec<InductiveRecord>,
}

#[derive(Debug)]
pub struct ProveOutcome {
    pub verdict: Verdict,
    pub stats: RunStats,
    pub logs: EngineLogs,
    pub frames_dump: Option<String>,
}

#[derive(Debug)]
pub enum ProveResult {
    Done(ProveOutcome),
    Limit(LimitKind, RunStats),
}

impl ProveResult {
    pub fn outcome(self) -> ProveOutcome {
        match self {
            ProveResult::Done(o) => o,
            ProveResult::Limit(kind, _) => panic!("run hit a resource limit: {kind:?}"),
        }
    }
}

/// Internal unwinding: a counterexample was found (the initial state reaches
/// `head`, which chains to a `¬P`-state), or a budget ran out.
#[derive(Debug)]
enum Stop {
    Cex { init: Cube, head: Cube },
    Limit(LimitKind),
}

impl From<LimitHit> for Stop {
    fn from(l: LimitHit) -> Stop {
        Stop::Limit(l.kind)
    }
}

/// Linear scan for the first index in `lo..=hi` where the predicate holds.
pub fn first_true_linear<E>(
    lo: usize,
    hi: usize,
    mut pred: impl FnMut(usize) -> Result<bool, E>,
) -> Result<Option<usize>, E> {
    for i in lo..=hi {
        if pred(i)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Binary search for the first index in `lo..=hi` where the predicate holds.
/// Requires the predicate to be monotone: once true, true at every higher
/// index. Consecution failure has exactly this shape, because the frames'
/// state sets grow with the level.
pub fn first_true_binary<E>(
    lo: usize,
    hi: usize,
    mut pred: impl FnMut(usize) -> Result<bool, E>,
) -> Result<Option<usize>, E> {
    let mut first = None;
    let (mut a, mut b) = (lo, hi);
    while a <= b {
        let mid = a + (b - a) / 2;
        if pred(mid)? {
            first = Some(mid);
            if mid == 0 {
                break;
            }
            b = mid - 1;
        } else {
            a = mid + 1;
        }
        if b < lo {
            break;
        }
    }
    Ok(first)
}

/// Per-literal activity scores: a literal is bumped whenever its negation
/// appears in an examined state cube, and all scores decay once per cube.
struct LitActivity {
    score: Vec<f64>,
    inc: f64,
    decay: f64,
}

impl LitActivity {
    fn new(latches: usize, decay: f64) -> LitActivity {
        LitActivity {
            score: vec![0.0; 2 * (latches + 1)],
            inc: 1.0,
            decay,
        }
    }

    fn bump_cube(&mut self, cube: &Cube) {
        for &l in cube.lits() {
            self.score[(!l).code()] += self.inc;
        }
        self.inc /= self.decay;
        if self.inc > 1e100 {
            for s in &mut self.score {
                *s *= 1e-100;
            }
            self.inc *= 1e-100;
        }
    }

    fn score(&self, l: Lit) -> f64 {
        self.score[l.code()]
    }
}

/// Proof obligations: at most one entry per state cube, selected lowest
/// level first, FIFO within a level. Levels only ever increase.
#[derive(Default)]
struct ObQueue {
    by_cube: BTreeMap<Cube, (usize, u64)>,
    ordered: BTreeSet<(usize, u64, Cube)>,
    next_seq: u64,
}

impl ObQueue {
    fn insert_fresh(&mut self, level: usize, cube: Cube) {
        debug_assert!(
            !self.by_cube.contains_key(&cube),
            "E.1: fresh obligation already queued"
        );
        let seq = self.next_seq;
        self.next_seq += 1;
        self.by_cube.insert(cube.clone(), (level, seq));
        self.ordered.insert((level, seq, cube));
    }

    /// Re-key a state at a strictly higher level (assertion F).
    fn raise(&mut self, cube: &Cube, level: usize) {
        let (old_level, old_seq) = self.by_cube[cube];
        assert!(level > old_level, "F: obligation level must increase");
        self.ordered.remove(&(old_level, old_seq, cube.clone()));
        let seq = self.next_seq;
        self.next_seq += 1;
        self.by_cube.insert(cube.clone(), (level, seq));
        self.ordered.insert((level, seq, cube.clone()));
    }

    fn peek_min(&self) -> Option<(usize, Cube)> {
        self.ordered.first().map(|(l, _, c)| (*l, c.clone()))
    }

    fn contains(&self, cube: &Cube) -> bool {
        self.by_cube.contains_key(cube)
    }

    fn iter(&self) -> impl Iterator<Item = (&Cube, usize)> {
        self.by_cube.iter().map(|(c, (l, _))| (c, *l))
    }
}

/// Chain links for counterexample reconstruction: each examined state
/// remembers the state (or recorded bad state) it can step into.
#[derive(Clone)]
enum Succ {
    Bad(Cube),
    Ob(Cube),
}

struct Engine<'a> {
    sys: &'a TransitionSystem,
    cfg: EngineConfig,
    frames: FrameSeq<'a>,
    activity: LitActivity,
    rng: ChaCha8Rng,
    links: BTreeMap<Cube, Succ>,
    stats: RunStats,
    logs: EngineLogs,
    /// SAT- and enumeration-backed assertion checks are only affordable on
    /// small systems.
    deep: bool,
}

/// Prove or refute the property of `sys`.
pub fn prove(sys: &TransitionSystem, cfg: &EngineConfig) -> ProveResult {
    cfg.validate();
    let start = Instant::now();
    let limits = Limits {
        deadline: cfg.timeout.map(|t| start + t),
        mem_mb: cfg.mem_limit_mb,
    };
    let deep = cfg.invariant_checks
        && (sys.latch_count() + sys.input_count() <= 16 || sys.var_count() <= 50);
    let mut engine = Engine {
        sys,
        cfg: cfg.clone(),
        frames: FrameSeq::new(sys, cfg.solver_seed, limits, cfg.paranoid_queries),
        activity: LitActivity::new(sys.latch_count(), cfg.ordering_decay),
        rng: ChaCha8Rng::seed_from_u64(cfg.solver_seed),
        links: BTreeMap::new(),
        stats: RunStats::default(),
        logs: EngineLogs::default(),
        deep,
    };
    let result = engine.run();
    let frames_dump = cfg.collect_frames_dump.then(|| engine.frames.dump());
    let mut stats = engine.stats;
    stats.sat_calls += engine.frames.stats().sat_calls;
    stats.solver_rebuilds = engine.frames.stats().rebuilds;
    stats.final_k = engine.frames.k();
    stats.wall_seconds = start.elapsed().as_secs_f64();
    stats.peak_memory_mb = crate::report::peak_memory_mb();
    match result {
        Ok(verdict) => {
            // verdict soundness is checked on every run, not only in tests
            match &verdict {
                Verdict::Safe(strengthening) => {
                    stats.proof_clauses = Some(strengthening.len());
                    assert!(
                        certify::verify_strengthening(sys, strengthening, cfg.solver_seed),
                        "produced strengthening failed its certificate check"
                    );
                }
                Verdict::Unsafe(trace) => {
                    stats.trace_length = Some(trace.len());
                    assert!(
                        certify::replay_trace(sys, trace),
                        "produced trace failed replay"
                    );
                }
            }
            ProveResult::Done(ProveOutcome {
                verdict,
                stats,
                logs: engine.logs,
                frames_dump,
            })
        }
        Err(kind) => ProveResult::Limit(kind, stats),
    }
}

impl<'a> Engine<'a> {
    fn run(&mut self) -> Result<Verdict, LimitKind> {
        // 0-step: I ∧ ¬P
        self.stats.sat_calls += 1;
        if let Some(state) = initial_violation(self.sys, self.cfg.solver_seed) {
            let trace = Trace {
                steps: vec![TraceStep {
                    inputs: vec![false; self.sys.input_count()],
                    state,
                }],
            };
            return Ok(Verdict::Unsafe(trace));
        }
        // 1-step: I ∧ T ∧ ¬P' is the bad-state query at level 0
        if let Some(w) = self.frames.query_bad(0).map_err(|l| l.kind)? {
            let trace = self
                .trace_from_chain(vec![w.state, w.bad])
                .map_err(|l| l.kind)?;
            return Ok(Verdict::Unsafe(trace));
        }

        let mut k = 1;
        self.frames.set_frontier(k);
        loop {
            if self.sys.latch_count() <= 64 {
                let bound = (1u128 << self.sys.latch_count()) + 1;
                assert!(k as u128 <= bound, "frontier exceeded its rank bound");
            }
            if self.cfg.invariant_checks {
                self.frames
                    .verify_assertion_a(k, self.deep)
                    .map_err(|l| l.kind)?;
            }
            match self.check(k) {
                Ok(()) => {}
                Err(Stop::Cex { init, head }) => {
                    let trace = self.reconstruct(init, head).map_err(|l| l.kind)?;
                    return Ok(Verdict::Unsafe(trace));
                }
                Err(Stop::Limit(kind)) => return Err(kind),
            }
            self.frames.propagate(k).map_err(|l| l.kind)?;
            if let Some(level) = self.frames.syntactic_fixpoint(k) {
                return Ok(Verdict::Safe(self.frames.strengthening(level)));
            }
            k += 1;
            self.frames.set_frontier(k);
        }
    }

    /// Strengthen `F_k` until no frontier state can violate `P` in one step.
    fn check(&mut self, k: usize) -> Result<(), Stop> {
        let mut iterations = 0u128;
        loop {
            if self.cfg.invariant_checks {
                self.frames.verify_assertion_b(k, self.deep)?;
            }
            match self.frames.query_bad(k)? {
                None => return Ok(()),
                Some(w) => {
                    iterations += 1;
                    if self.sys.latch_count() <= 64 {
                        assert!(
                            iterations <= 1u128 << self.sys.latch_count(),
                            "check exceeded its rank bound"
                        );
                    }
                    self.stats.check_iterations_max =
                        self.stats.check_iterations_max.max(iterations as u64);
                    self.activity.bump_cube(&w.state);
                    self.links.insert(w.state.clone(), Succ::Bad(w.bad.clone()));
                    let n = self.inductive(&w.state, k as isize - 2, k)?;
                    self.push(n + 1, w.state.clone(), k)?;
                    if self.cfg.invariant_checks {
                        // C: the predecessor is now excluded at the frontier
                        assert!(
                            !self.frames.eval_frame(k, &w.state),
                            "C: bad predecessor still satisfies F_k"
                        );
                    }
                }
            }
        }
    }

    /// Highest level `rv` with `min ≤ rv ≤ k` such that `¬s` is inductive
    /// relative to `F_rv`; generalizes `s` there. Raises a counterexample
    /// when `min < 0` and `s` is reachable from an initial state in one step.
    fn inductive(&mut self, s: &Cube, min: isize, k: usize) -> Result<usize, Stop> {
        if self.deep {
            if min >= 0 {
                assert!(
                    self.frames.consecution(min as usize, s)?.is_none(),
                    "inductive pre: ¬s not inductive relative to F_min"
                );
            }
            debug_assert!(
                self.links.contains_key(s),
                "no recorded path to a bad state"
            );
        }
        if min < 0 {
            if let Some(pred) = self.frames.consecution(0, s)? {
                return Err(Stop::Cex {
                    init: pred,
                    head: s.clone(),
                });
            }
        }
        let lo = 1.max(min + 1) as usize;
        let first_failed = if lo > k {
            None
        } else if self.cfg.collect_inductive_log {
            // probe every level, check monotonicity, and make sure both
            // search strategies agree before taking the answer
            let mut failed = Vec::with_capacity(k - lo + 1);
            for i in lo..=k {
                failed.push(self.frames.consecution(i, s)?.is_some());
            }
            assert!(
                failed.windows(2).all(|w| !w[0] || w[1]),
                "consecution failure is not monotone in the level"
            );
            let linear = first_true_linear(lo, k, |i| Ok::<bool, Stop>(failed[i - lo]))?;
            let binary = first_true_binary(lo, k, |i| Ok::<bool, Stop>(failed[i - lo]))?;
            assert_eq!(linear, binary, "search strategies disagree");
            self.logs.inductive.push(InductiveRecord {
                lo,
                hi: k,
                failed_at: failed,
            });
            linear
        } else if self.cfg.use_binary_search {
            first_true_binary(lo, k, |i| {
                Ok::<bool, Stop>(self.frames.consecution(i, s)?.is_some())
            })?
        } else {
            first_true_linear(lo, k, |i| {
                Ok::<bool, Stop>(self.frames.consecution(i, s)?.is_some())
            })?
        };
        let rv = match first_failed {
            Some(i) => i - 1,
            None => k,
        };
        debug_assert!(rv >= min.max(0) as usize && rv <= k);
        self.generate(s, rv, k)?;
        Ok(rv)
    }

    /// Add a subclause of `¬s`, inductive relative to `F_level`, at levels
    /// `1..=level+1`.
    fn generate(&mut self, s: &Cube, level: usize, _k: usize) -> Result<(), Stop> {
        let clause = self.mic(s, level)?;
        if self.cfg.collect_mic_log {
            self.logs.mic.push(MicRecord {
                frame: self.frames.frame_formula(level),
                clause: clause.clone(),
            });
        }
        self.frames
            .add_clause_at(level + 1, &clause, self.cfg.subsumption_cleanup);
        self.stats.clauses_added += 1;
        if self.cfg.invariant_checks {
            assert!(
                clause.subsumes(&s.negate()),
                "clause is not a subclause of ¬s"
            );
            assert!(
                !self.frames.eval_frame(level + 1, s),
                "generate post: s still satisfies F_{}",
                level + 1
            );
        }
        Ok(())
    }

    /// Minimal-ish inductive subclause of `¬s` relative to `F_level`: drop
    /// literals while relative inductiveness survives, stopping after
    /// `mic_threshold` consecutive literals prove necessary.
    fn mic(&mut self, s: &Cube, level: usize) -> Result<Clause, Stop> {
        self.stats.mic_calls += 1;
        let mut lits: Vec<Lit> = s.negate().lits().to_vec();
        let mut consecutive_failures = 0u64;
        'outer: loop {
            let order = self.drop_order(&lits);
            let mut improved = false;
            for cand in order {
                let candidate: Vec<Lit> = lits.iter().copied().filter(|&l| l != cand).collect();
                match self.down(candidate, level)? {
                    Some(smaller) => {
                        lits = smaller;
                        consecutive_failures = 0;
                        improved = true;
                        break;
                    }
                    None => {
                        consecutive_failures += 1;
                        if consecutive_failures >= u64::from(self.cfg.mic_threshold) {
                            break 'outer;
                        }
                    }
                }
            }
            if !improved {
                break;
            }
        }
        Ok(Clause::from_sorted(lits))
    }

    /// Candidate drop order: least useful literals first when activity
    /// ordering is on, otherwise a seeded random order.
    fn drop_order(&mut self, lits: &[Lit]) -> Vec<Lit> {
        let mut order: Vec<Lit> = lits.to_vec();
        if self.cfg.use_literal_ordering {
            order.sort_by(|a, b| {
                self.activity
                    .score(*a)
                    .total_cmp(&self.activity.score(*b))
                    .then(a.code().cmp(&b.code()))
            });
        } else {
            order.shuffle(&mut self.rng);
        }
        order
    }

    /// Largest subclause of `candidate` that is inductive relative to
    /// `F_level`, or `None` when the search degenerates (initiation fails).
    fn down(&mut self, candidate: Vec<Lit>, level: usize) -> Result<Option<Vec<Lit>>, Stop> {
        let mut lits = candidate;
        loop {
            if !self.frames.is_initiation(&lits)? {
                return Ok(None);
            }
            let as_cube = Cube::from_sorted(lits.iter().map(|&l| !l).collect());
            match self.frames.consecution(level, &as_cube)? {
                None => return Ok(Some(lits)),
                Some(witness) => {
                    // keep only the literals the witness falsifies; the
                    // witness satisfies the clause, so this strictly shrinks
                    let before = lits.len();
                    lits.retain(|&l| witness.contains(!l));
                    debug_assert!(lits.len() < before);
                }
            }
        }
    }

    /// Work the obligation set until every queued state is excluded beyond
    /// the frontier.
    fn push(&mut self, level: usize, state: Cube, k: usize) -> Result<(), Stop> {
        let mut queue = ObQueue::default();
        queue.insert_fresh(level, state);
        let mut iterations = 0u64;
        loop {
            if self.cfg.invariant_checks {
                self.assert_push_invariants(&queue, k)?;
            }
            let (n, s) = queue.peek_min().expect("queue never empties before return");
            if n > k {
                self.stats.push_iterations_max = self.stats.push_iterations_max.max(iterations);
                if self.cfg.invariant_checks {
                    for (q, _) in queue.iter() {
                        assert!(!self.frames.eval_frame(k, q), "push post: state inside F_k");
                    }
                }
                return Ok(());
            }
            iterations += 1;
            self.stats.obligations += 1;
            if self.sys.latch_count() <= 64 {
                let bound = (k as u128 + 1) * (1u128 << self.sys.latch_count());
                assert!(
                    u128::from(iterations) <= bound,
                    "push exceeded its rank bound"
                );
            }
            match self.frames.consecution_open(n, &s)? {
                Some(pred) => {
                    if self.deep {
                        // the open query is equivalent to the guarded one
                        // because s ⊭ F_n (D.4)
                        assert!(
                            self.frames.consecution(n, &s)?.is_some(),
                            "open and guarded consecution disagree"
                        );
                        // E.2
                        if n >= 2 {
                            assert!(
                                self.frames.consecution(n - 2, &pred)?.is_none(),
                                "E.2: predecessor not inductive relative to F_{}",
                                n - 2
                            );
                        }
                    }
                    // E.1
                    assert!(!queue.contains(&pred), "E.1: predecessor already queued");
                    self.activity.bump_cube(&pred);
                    self.links.insert(pred.clone(), Succ::Ob(s.clone()));
                    let m = self.inductive(&pred, n as isize - 2, k)?;
                    queue.insert_fresh(m + 1, pred);
                }
                None => {
                    let m = self.inductive(&s, n as isize, k)?;
                    // assertion F is enforced inside raise
                    queue.raise(&s, m + 1);
                }
            }
        }
    }

    /// D.2–D.6 at a push-loop head (D.2 and E.1 are structural properties of
    /// the queue; D.3 and D.4 are cheap; D.5 and D.6 engage in deep mode).
    fn assert_push_invariants(&mut self, queue: &ObQueue, k: usize) -> Result<(), Stop> {
        let entries: Vec<(Cube, usize)> = queue.iter().map(|(c, l)| (c.clone(), l)).collect();
        for (q, i) in &entries {
            assert!(*i > 0 && *i <= k + 1, "D.3: obligation level out of range");
            assert!(
                !self.frames.eval_frame(*i, q),
                "D.4: queued state inside its frame"
            );
            assert!(self.links.contains_key(q), "D.6: no recorded path to ¬P");
        }
        if self.deep {
            for (q, i) in &entries {
                assert!(
                    self.frames.consecution(i - 1, q)?.is_none(),
                    "D.5: ¬q not inductive relative to F_{}",
                    i - 1
                );
            }
        }
        Ok(())
    }

    /// Follow the successor links from `head` to the recorded bad state and
    /// re-solve each gap for concrete input values.
    fn reconstruct(&mut self, init: Cube, head: Cube) -> Result<Trace, LimitHit> {
        let mut chain = vec![init, head.clone()];
        let mut cursor = head;
        loop {
            match self
                .links
                .get(&cursor)
                .expect("unbroken obligation chain")
                .clone()
            {
                Succ::Ob(next) => {
                    chain.push(next.clone());
                    cursor = next;
                }
                Succ::Bad(bad) => {
                    chain.push(bad);
                    break;
                }
            }
        }
        self.trace_from_chain(chain)
    }

    fn trace_from_chain(&mut self, chain: Vec<Cube>) -> Result<Trace, LimitHit> {
        let latches = self.sys.latch_count();
        let mut steps = Vec::with_capacity(chain.len());
        for pair in chain.windows(2) {
            let inputs = self.frames.solve_transition(&pair[0], &pair[1])?;
            steps.push(TraceStep {
                state: Assignment::from_cube(&pair[0], latches),
                inputs,
            });
        }
        let last = chain.last().expect("chain is nonempty");
        steps.push(TraceStep {
            state: Assignment::from_cube(last, latches),
            inputs: vec![false; self.sys.input_count()],
        });
        Ok(Trace { steps })
    }
}

/// Model of `I ∧ ¬P`, if any, found on a throwaway solver (the main context
/// carries `P` permanently, so it cannot ask this).
pub fn initial_violation(sys: &TransitionSystem, seed: u64) -> Option<Assignment> {
    let mut solver = Solver::new(seed);
    solver.ensure_vars(sys.var_count() as u32);
    for c in sys.init() {
        solver.add_clause(c.lits()).expect("vars declared");
    }
    let property = sys.property();
    if property.is_empty() {
        return None;
    }
    if !property.iter().any(|c| c.is_empty()) {
        // ¬P as a disjunction of per-clause selectors
        let mut selectors = Vec::new();
        for clause in property {
            let t = solver.new_var().positive();
            for &l in clause.lits() {
                solver.add_clause(&[!t, !l]).expect("vars declared");
            }
            selectors.push(t);
        }
        solver.add_clause(&selectors).expect("vars declared");
    }
    match solver.solve(&[]) {
        SatResult::Satisfiable(m) => {
            let values = (0..sys.latch_count())
                .map(|i| m.value(sys.latch_var(i)))
                .collect();
            Some(Assignment::new(values))
        }
        SatResult::Unsatisfiable(_) => None,
    }
}
