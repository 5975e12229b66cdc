//! The over-approximation sequence `F_0, F_1, …, F_{k+1}` and every
//! frame-relative SAT query.
//!
//! `F_0` is the initial condition; for `i ≥ 1` the frame formula is
//! `P ∧ ⋀ clauses(F_i)` (plus any extracted literal invariants, which sit in
//! every frame's base). Clause sets are kept explicitly per level so that the
//! subset chain `clauses(F_{i+1}) ⊆ clauses(F_i)` and the syntactic fixpoint
//! test are direct set operations.
//!
//! One incremental solver hosts everything. The transition relation, the
//! property and the invariant literals are permanent. `I` is guarded by the
//! level-0 activation literal; a frame clause whose highest level is `j` is
//! guarded by the level-`j` activation literal. Querying `F_i` for `i ≥ 1`
//! assumes the activation literals of all levels `≥ i`, sound precisely
//! because of the subset chain. Cube-shaped constraints ride in as
//! assumptions; clause-shaped ones (the `¬s` of a consecution query) get a
//! throwaway guard variable that is retired with a unit clause afterwards.
//! Retired guards and propagation duplicates accumulate, so the context is
//! rebuilt from the clause sets once enough garbage piles up.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use thiserror::Error;

use crate::sat::{Model, SatResult, Solver};
use crate::system::TransitionSystem;
use crate::types::{Assignment, Clause, Cnf, Cube, Lit, Var};

/// Why a run was cut short.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Timeout,
    Memory,
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
#[error("resource limit hit: {0:?}", .kind)]
pub struct LimitHit {
    pub kind: LimitKind,
}

/// Cooperative resource budget, checked at SAT-call boundaries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    pub deadline: Option<Instant>,
    pub mem_mb: Option<u64>,
}

impl Limits {
    fn check(&self, calls: u64) -> Result<(), LimitHit> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(LimitHit {
                    kind: LimitKind::Timeout,
                });
            }
        }
        if let Some(cap) = self.mem_mb {
            // reading /proc is not free; sample
            if calls.is_multiple_of(64) {
                if let Some(used) = crate::report::peak_memory_mb() {
                    if used > cap {
                        return Err(LimitHit {
                            kind: LimitKind::Memory,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Witness of `F_k ∧ T ∧ ¬P'`: a property-violating transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadWitness {
    /// Full latch cube of the predecessor state.
    pub state: Cube,
    /// Input values the witness transition uses.
    pub inputs: Vec<bool>,
    /// Full latch cube of the successor `¬P`-state.
    pub bad: Cube,
}

/// How `¬P'` is injected into a query.
#[derive(Debug, Clone)]
enum BadAssume {
    /// `P` is the constant true: no bad states exist.
    Never,
    /// Assume these literals directly (single-clause `P`).
    Cube(Vec<Lit>),
    /// Assume one trigger literal whose definition clauses live in the
    /// database (multi-clause `P`).
    Guard(Lit),
}

/// Per-solver query counters, surfaced into run statistics.
#[derive(Debug, Default, Clone)]
pub struct QueryStats {
    pub sat_calls: u64,
    pub rebuilds: u64,
}

pub struct FrameSeq<'a> {
    sys: &'a TransitionSystem,
    solver: Solver,
    seed: u64,
    /// clauses(F_i) for i ≥ 1; index 0 is unused (clauses(F_0) is empty by
    /// definition; F_0 is I itself).
    sets: Vec<BTreeSet<Clause>>,
    k: usize,
    bad: BadAssume,
    limits: Limits,
    stats: QueryStats,
    /// retired guard variables + duplicate guarded copies since last rebuild
    garbage: usize,
    /// mirror of the guarded clause groups for shadow solving
    paranoid: bool,
    shadow_permanent: Vec<Vec<Lit>>,
    shadow_guarded: BTreeMap<Lit, Vec<Vec<Lit>>>,
}

const REBUILD_GARBAGE: usize = 4096;

impl<'a> FrameSeq<'a> {
    /// Build the sequence with `F_0 = I`, `F_i = P` for `i > 0`, empty
    /// clause sets, and frontier `k = 1`.
    pub fn new(
        sys: &'a TransitionSystem,
        seed: u64,
        limits: Limits,
        paranoid: bool,
    ) -> FrameSeq<'a> {
        let mut fs = FrameSeq {
            sys,
            solver: Solver::new(seed),
            seed,
            sets: vec![BTreeSet::new(); 3],
            k: 1,
            bad: BadAssume::Never,
            limits,
            stats: QueryStats::default(),
            garbage: 0,
            paranoid,
            shadow_permanent: Vec::new(),
            shadow_guarded: BTreeMap::new(),
        };
        fs.load_base();
        fs
    }

    fn load_base(&mut self) {
        let sys = self.sys;
        self.solver.ensure_vars(sys.var_count() as u32);
        let act0 = self.solver.activation_literal(0);
        for level in 0..self.sets.len() {
            self.solver.activation_literal(level);
        }
        for c in sys.trans() {
            self.add_permanent(c.lits().to_vec());
        }
        for c in sys.property() {
            self.add_permanent(c.lits().to_vec());
        }
        for &l in sys.invariant_lits() {
            self.add_permanent(vec![l]);
        }
        for c in sys.init() {
            self.add_guarded(act0, c.lits().to_vec());
        }
        self.bad = self.build_bad_trigger();
    }

    fn add_permanent(&mut self, lits: Vec<Lit>) {
        self.solver.add_clause(&lits).expect("vars declared");
        if self.paranoid {
            self.shadow_permanent.push(lits);
        }
    }

    fn add_guarded(&mut self, guard: Lit, lits: Vec<Lit>) {
        let mut with_guard = lits.clone();
        with_guard.push(!guard);
        self.solver.add_clause(&with_guard).expect("vars declared");
        if self.paranoid {
            self.shadow_guarded.entry(guard).or_default().push(lits);
        }
    }

    /// Encode `¬P'` behind assumptions. Definition clauses are
    /// one-directional, so they constrain nothing unless triggered.
    fn build_bad_trigger(&mut self) -> BadAssume {
        let property = self.sys.property().clone();
        if property.iter().any(|c| c.is_empty()) {
            // P is false; ¬P' is vacuous (and the database is already unsat)
            return BadAssume::Cube(Vec::new());
        }
        match property.len() {
            0 => BadAssume::Never,
            1 => {
                let lits = property[0]
                    .lits()
                    .iter()
                    .map(|&l| !self.sys.prime_lit(l).expect("property over latches"))
                    .collect();
                BadAssume::Cube(lits)
            }
            _ => {
                let mut selectors = Vec::new();
                for clause in &property {
                    let t = self.solver.new_var().positive();
                    for &l in clause.lits() {
                        let primed = self.sys.prime_lit(l).expect("property over latches");
                        self.add_permanent(vec![!t, !primed]);
                    }
                    selectors.push(t);
                }
                let trigger = self.solver.new_var().positive();
                let mut any = vec![!trigger];
                any.extend(&selectors);
                self.add_permanent(any);
                BadAssume::Guard(trigger)
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stats(&self) -> &QueryStats {
        &self.stats
    }

    pub fn clauses_at(&self, level: usize) -> &BTreeSet<Clause> {
        &self.sets[level]
    }

    /// Highest materialized level (`k + 1`).
    pub fn top_level(&self) -> usize {
        self.sets.len() - 1
    }

    /// Raise the frontier, materializing empty clause sets and activation
    /// literals through the new `k + 1`.
    pub fn set_frontier(&mut self, k: usize) {
        self.k = k;
        while self.sets.len() < k + 2 {
            let level = self.sets.len();
            self.sets.push(BTreeSet::new());
            self.solver.activation_literal(level);
        }
    }

    fn frame_assumptions(&mut self, level: usize) -> Vec<Lit> {
        if level == 0 {
            vec![self.solver.activation_literal(0)]
        } else {
            (level..=self.top_level())
                .map(|j| self.solver.activation_literal(j))
                .collect()
        }
    }

    fn solve_counted(&mut self, assumptions: &[Lit]) -> Result<SatResult, LimitHit> {
        self.limits.check(self.stats.sat_calls)?;
        self.stats.sat_calls += 1;
        let result = self.solver.solve(assumptions);
        if self.paranoid {
            self.shadow_check(assumptions, result.is_sat());
        }
        Ok(result)
    }

    /// Re-answer the query on a fresh monolithic solver holding exactly the
    /// clause groups selected by the assumptions. Test-mode oracle for the
    /// activation-literal machinery.
    fn shadow_check(&self, assumptions: &[Lit], primary_sat: bool) {
        let mut fresh = Solver::new(self.seed ^ 0x5eed);
        fresh.ensure_vars(self.solver.num_vars());
        for c in &self.shadow_permanent {
            fresh.add_clause(c).unwrap();
        }
        let mut rest = Vec::new();
        for &a in assumptions {
            if let Some(group) = self.shadow_guarded.get(&a) {
                for c in group {
                    fresh.add_clause(c).unwrap();
                }
            } else {
                rest.push(a);
            }
        }
        let shadow_sat = fresh.solve(&rest).is_sat();
        assert_eq!(
            primary_sat, shadow_sat,
            "incremental query disagrees with fresh rebuild"
        );
    }

    fn state_from_model(&self, m: &Model) -> Cube {
        let lits = (0..self.sys.latch_count())
            .map(|i| {
                let v = self.sys.latch_var(i);
                Lit::new(v, m.value(v))
            })
            .collect();
        Cube::from_sorted(lits)
    }

    fn inputs_from_model(&self, m: &Model) -> Vec<bool> {
        (0..self.sys.input_count())
            .map(|i| m.value(self.sys.input_var(i)))
            .collect()
    }

    fn primed_state_from_model(&self, m: &Model) -> Cube {
        let lits = (0..self.sys.latch_count())
            .map(|i| {
                let v = self.sys.latch_var(i);
                let primed = self.sys.prime_var(v).expect("latch");
                Lit::new(v, m.value(primed))
            })
            .collect();
        Cube::from_sorted(lits)
    }

    /// Is `F_level ∧ T ∧ ¬P'` satisfiable? `None` means no state of the
    /// frame can violate the property in one step.
    pub fn query_bad(&mut self, level: usize) -> Result<Option<BadWitness>, LimitHit> {
        let mut assumptions = self.frame_assumptions(level);
        match self.bad.clone() {
            BadAssume::Never => return Ok(None),
            BadAssume::Cube(lits) => assumptions.extend(lits),
            BadAssume::Guard(l) => assumptions.push(l),
        }
        match self.solve_counted(&assumptions)? {
            SatResult::Satisfiable(m) => Ok(Some(BadWitness {
                state: self.state_from_model(&m),
                inputs: self.inputs_from_model(&m),
                bad: self.primed_state_from_model(&m),
            })),
            SatResult::Unsatisfiable(_) => Ok(None),
        }
    }

    /// Is `F_level ∧ ¬s ∧ T ∧ s'` satisfiable? `None` means `¬s` passes
    /// consecution relative to `F_level`; otherwise the predecessor latch
    /// cube from the witness is returned.
    pub fn consecution(&mut self, level: usize, s: &Cube) -> Result<Option<Cube>, LimitHit> {
        let guard = self.solver.new_var().positive();
        let mut neg = s.negate().lits().to_vec();
        neg.push(!guard);
        self.solver.add_clause(&neg).expect("vars declared");
        if self.paranoid {
            self.shadow_guarded
                .insert(guard, vec![s.negate().lits().to_vec()]);
        }

        let mut assumptions = self.frame_assumptions(level);
        assumptions.push(guard);
        for &l in s.lits() {
            assumptions.push(self.sys.prime_lit(l).expect("state over latches"));
        }
        let result = self.solve_counted(&assumptions)?;
        let answer = match result {
            SatResult::Satisfiable(m) => Some(self.state_from_model(&m)),
            SatResult::Unsatisfiable(_) => None,
        };

        // retire the query guard
        self.solver.add_clause(&[!guard]).expect("vars declared");
        if self.paranoid {
            self.shadow_guarded.remove(&guard);
        }
        self.garbage += 1;
        if self.garbage >= REBUILD_GARBAGE {
            self.rebuild();
        }
        Ok(answer)
    }

    /// Is `F_level ∧ T ∧ s'` satisfiable, without conjoining `¬s`? This is
    /// the obligation query: equivalent to the guarded form whenever
    /// `s ⊭ F_level` already holds.
    pub fn consecution_open(&mut self, level: usize, s: &Cube) -> Result<Option<Cube>, LimitHit> {
        let mut assumptions = self.frame_assumptions(level);
        for &l in s.lits() {
            assumptions.push(self.sys.prime_lit(l).expect("state over latches"));
        }
        match self.solve_counted(&assumptions)? {
            SatResult::Satisfiable(m) => Ok(Some(self.state_from_model(&m))),
            SatResult::Unsatisfiable(_) => Ok(None),
        }
    }

    /// Initiation: does `I ⇒ c` hold? (Checked as unsatisfiability of
    /// `I ∧ ¬c`.)
    pub fn is_initiation(&mut self, lits: &[Lit]) -> Result<bool, LimitHit> {
        let mut assumptions = self.frame_assumptions(0);
        assumptions.extend(lits.iter().map(|&l| !l));
        Ok(!self.solve_counted(&assumptions)?.is_sat())
    }

    /// Concrete input values realizing the transition `from → to`.
    pub fn solve_transition(&mut self, from: &Cube, to: &Cube) -> Result<Vec<bool>, LimitHit> {
        let mut assumptions: Vec<Lit> = from.lits().to_vec();
        for &l in to.lits() {
            assumptions.push(self.sys.prime_lit(l).expect("state over latches"));
        }
        match self.solve_counted(&assumptions)? {
            SatResult::Satisfiable(m) => Ok(self.inputs_from_model(&m)),
            SatResult::Unsatisfiable(_) => panic!("trace gap is not a transition"),
        }
    }

    /// Place `c` in `clauses(F_m)` for all `1 ≤ m ≤ level`, optionally
    /// dropping clauses it subsumes.
    pub fn add_clause_at(&mut self, level: usize, c: &Clause, subsumption: bool) {
        debug_assert!(level >= 1 && level <= self.top_level());
        for m in 1..=level {
            self.sets[m].insert(c.clone());
        }
        let guard = self.solver.activation_literal(level);
        self.add_guarded(guard, c.lits().to_vec());
        if subsumption {
            self.drop_subsumed(level, c);
        }
    }

    /// Remove clauses strictly subsumed by `c` whose highest level does not
    /// exceed `level`; removing those (and only those) everywhere keeps the
    /// per-level subset chain intact.
    fn drop_subsumed(&mut self, level: usize, c: &Clause) {
        let mut candidates: BTreeSet<Clause> = BTreeSet::new();
        for m in 1..=level {
            for d in &self.sets[m] {
                if d != c && c.subsumes(d) {
                    candidates.insert(d.clone());
                }
            }
        }
        for d in candidates {
            let top = (1..self.sets.len())
                .rev()
                .find(|&m| self.sets[m].contains(&d));
            if let Some(top) = top {
                if top <= level {
                    for m in 1..=top {
                        self.sets[m].remove(&d);
                    }
                    // the solver copy stays; it is implied by c and collected
                    // at the next rebuild
                    self.garbage += 1;
                }
            }
        }
    }

    /// Used by propagation: `c` is already present at every level `≤ level-1`;
    /// record it at `level` too. The solver now holds two guarded copies of
    /// `c`; that is sound and the extra one counts as garbage.
    fn promote_to(&mut self, level: usize, c: &Clause) {
        debug_assert!(self.sets[level - 1].contains(c));
        self.sets[level].insert(c.clone());
        let guard = self.solver.activation_literal(level);
        self.add_guarded(guard, c.lits().to_vec());
        self.garbage += 1;
    }

    /// Push every clause of `F_i` that is inductive relative to `F_i` one
    /// level forward, for `i = 1 … k`.
    pub fn propagate(&mut self, k: usize) -> Result<(), LimitHit> {
        for i in 1..=k {
            let snapshot: Vec<Clause> = self.sets[i].iter().cloned().collect();
            for c in snapshot {
                if self.sets[i + 1].contains(&c) {
                    continue;
                }
                let mut assumptions = self.frame_assumptions(i);
                for &l in c.lits() {
                    assumptions.push(!self.sys.prime_lit(l).expect("frame clause over latches"));
                }
                if !self.solve_counted(&assumptions)?.is_sat() {
                    self.promote_to(i + 1, &c);
                }
            }
        }
        Ok(())
    }

    /// Least `1 ≤ i ≤ k` whose clause set equals the next level's, as a
    /// purely syntactic check.
    pub fn syntactic_fixpoint(&self, k: usize) -> Option<usize> {
        (1..=k).find(|&i| self.sets[i] == self.sets[i + 1])
    }

    /// Syntactic frame membership: does the state satisfy `F_level`?
    pub fn eval_frame(&self, level: usize, state: &Cube) -> bool {
        let assignment = Assignment::from_cube(state, self.sys.latch_count());
        let value = |v: Var| assignment.value_of(v);
        if level == 0 {
            return crate::types::eval_cnf(self.sys.init(), value);
        }
        crate::types::eval_cnf(self.sys.property(), value)
            && self.sys.invariant_lits().iter().all(|l| l.eval(value))
            && self.sets[level].iter().all(|c| c.eval(value))
    }

    /// The frame formula as CNF (base plus clause set) for certificates,
    /// logs, and oracle cross-checks. Level 0 is the initial condition.
    pub fn frame_formula(&self, level: usize) -> Cnf {
        if level == 0 {
            return self.sys.init().clone();
        }
        let mut cnf: Cnf = self.sys.property().clone();
        cnf.extend(self.sys.invariant_lits().iter().map(|&l| Clause::unit(l)));
        cnf.extend(self.sets[level].iter().cloned());
        cnf
    }

    /// The strengthening carried by level `level`: invariant literals plus
    /// the frame clauses (everything beyond `P` itself).
    pub fn strengthening(&self, level: usize) -> Vec<Clause> {
        let mut out: Vec<Clause> = self
            .sys
            .invariant_lits()
            .iter()
            .map(|&l| Clause::unit(l))
            .collect();
        out.extend(self.sets[level].iter().cloned());
        out
    }

    /// Rebuild the solver from the live clause sets, shedding retired query
    /// guards and duplicate guarded copies.
    pub fn rebuild(&mut self) {
        self.stats.rebuilds += 1;
        self.garbage = 0;
        self.solver = Solver::new(self.seed);
        self.shadow_permanent.clear();
        self.shadow_guarded.clear();
        self.load_base();
        // one guarded copy per clause, at its highest level
        let mut done: BTreeSet<Clause> = BTreeSet::new();
        for level in (1..self.sets.len()).rev() {
            let guard = self.solver.activation_literal(level);
            let clauses: Vec<Clause> = self.sets[level].iter().cloned().collect();
            for c in clauses {
                if done.insert(c.clone()) {
                    self.add_guarded(guard, c.lits().to_vec());
                }
            }
        }
    }

    /// Debug rendering: one section per level, one clause per line.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "frames k={}", self.k);
        for level in 1..self.sets.len() {
            let _ = writeln!(out, "F{} ({} clauses)", level, self.sets[level].len());
            for c in &self.sets[level] {
                let _ = writeln!(out, "{c}");
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // debug-mode invariant verification
    // ------------------------------------------------------------------

    /// Check assertions A.1–A.5 at a prove-loop head. `deep` additionally
    /// runs the SAT checks for A.1 and A.4; enumeration cross-checks them
    /// semantically when the system is small enough.
    pub fn verify_assertion_a(&mut self, k: usize, deep: bool) -> Result<(), LimitHit> {
        self.verify_core(k, deep, false)
    }

    /// Check assertion B at a check-loop head: A.1–A.4 still hold, clauses
    /// may now live at `k+1` and are consequences of `F_k ∧ T` (B.2), and
    /// nothing sits above `k+1` (B.3).
    pub fn verify_assertion_b(&mut self, k: usize, deep: bool) -> Result<(), LimitHit> {
        self.verify_core(k, deep, true)
    }

    fn verify_core(&mut self, k: usize, deep: bool, during_check: bool) -> Result<(), LimitHit> {
        assert_eq!(self.k, k);
        // A.3: clauses(F_{i+1}) ⊆ clauses(F_i) for i > 0
        for i in 1..self.sets.len() - 1 {
            assert!(
                self.sets[i + 1].is_subset(&self.sets[i]),
                "A.3 violated between F{} and F{}",
                i,
                i + 1
            );
        }
        // A.5 at a prove-loop head / B.3 inside check
        let empty_from = if during_check { k + 2 } else { k + 1 };
        for i in empty_from..self.sets.len() {
            assert!(self.sets[i].is_empty(), "A.5/B.3 violated at F{i}");
        }
        if deep {
            // A.1: I ⇒ F_i, i.e. every clause of every frame is initiated
            let mut to_check: BTreeSet<Clause> = self.sets[1].clone();
            to_check.extend(self.sys.property().iter().cloned());
            to_check.extend(self.sys.invariant_lits().iter().map(|&l| Clause::unit(l)));
            for c in to_check {
                assert!(
                    self.is_initiation(c.lits())?,
                    "A.1 violated: I does not imply {c}"
                );
            }
            // A.4: F_i ∧ T ⇒ F_{i+1}' for 0 ≤ i < k
            for i in 0..k {
                for c in self.frame_formula(i + 1) {
                    let mut assumptions = self.frame_assumptions(i);
                    for &l in c.lits() {
                        assumptions.push(!self.sys.prime_lit(l).expect("latch clause"));
                    }
                    assert!(
                        !self.solve_counted(&assumptions)?.is_sat(),
                        "A.4 violated: F{i} ∧ T does not imply {c}'"
                    );
                }
            }
            if during_check {
                // B.2: every clause already placed at k+1 follows from F_k ∧ T
                let frontier_plus: Vec<Clause> = self.sets[k + 1].iter().cloned().collect();
                for c in frontier_plus {
                    let mut assumptions = self.frame_assumptions(k);
                    for &l in c.lits() {
                        assumptions.push(!self.sys.prime_lit(l).expect("latch clause"));
                    }
                    assert!(
                        !self.solve_counted(&assumptions)?.is_sat(),
                        "B.2 violated: F{k} ∧ T does not imply {c}'"
                    );
                }
            }
        }
        // exhaustive cross-check; check-loop heads are frequent, so the
        // budget tightens there
        let bits = self.sys.latch_count() + self.sys.input_count();
        if bits <= if during_check { 8 } else { 12 } {
            self.verify_by_enumeration(k);
        }
        Ok(())
    }

    /// Exhaustive semantic check of A.1, A.4 and state-set monotonicity.
    fn verify_by_enumeration(&self, k: usize) {
        let latches = self.sys.latch_count();
        let inputs = self.sys.input_count();
        let logic = self.sys.logic();
        let sat_frame = |level: usize, bits: u64| {
            let state = Assignment::from_bits(bits, latches);
            let value = |v: Var| state.value_of(v);
            if level == 0 {
                crate::types::eval_cnf(self.sys.init(), value)
            } else {
                crate::types::eval_cnf(self.sys.property(), value)
                    && self.sys.invariant_lits().iter().all(|l| l.eval(value))
                    && self.sets[level].iter().all(|c| c.eval(value))
            }
        };
        for bits in 0u64..1 << latches {
            // A.1
            if sat_frame(0, bits) {
                for level in 1..self.sets.len() {
                    assert!(
                        sat_frame(level, bits),
                        "A.1 fails at F{level} by enumeration"
                    );
                }
            }
            // monotone state sets (from A.3)
            for level in 1..self.sets.len() - 1 {
                if sat_frame(level, bits) {
                    assert!(
                        sat_frame(level + 1, bits),
                        "state sets not monotone at F{level}"
                    );
                }
            }
            // A.4
            for level in 0..k {
                if sat_frame(level, bits) {
                    for inp in 0u64..1 << inputs {
                        let next = logic.step_bits(bits, inp);
                        assert!(
                            sat_frame(level + 1, next),
                            "A.4 fails at F{level} by enumeration"
                        );
                    }
                }
            }
        }
    }
}
