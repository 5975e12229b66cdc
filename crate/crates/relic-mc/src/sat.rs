//! Incremental CDCL SAT solver: watched literals, first-UIP learning, VSIDS
//! branching, Luby restarts, assumption solving with final-conflict cores.
//!
//! The engine issues thousands of small queries against one long-lived
//! context, so everything here is in-process and allocation-light. Frame
//! scoping is done with activation literals (see [`Solver::activation_literal`])
//! instead of pushing and popping clause groups: a clause tagged with the
//! negated activation literal of level `j` participates exactly in queries
//! that assume level `j`.
//!
//! There is no preprocessing, no clause-database reduction and no proof
//! logging; callers that accumulate garbage rebuild their context from their
//! own clause sets.

use std::fmt::Write as _;

use thiserror::Error;

use crate::types::{Lit, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("literal {0} references an undeclared variable")]
    OutOfRange(Lit),
}

/// Total model over all declared variables, indexed by variable.
#[derive(Debug, Clone)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn value(&self, v: Var) -> bool {
        self.values[v.index() as usize]
    }

    pub fn lit_true(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }
}

/// Outcome of one solve call. An unsatisfiable answer carries a subset of
/// the assumption literals sufficient for unsatisfiability.
#[derive(Debug, Clone)]
pub enum SatResult {
    Satisfiable(Model),
    Unsatisfiable(Vec<Lit>),
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Satisfiable(_))
    }

    pub fn model(&self) -> Option<&Model> {
        match self {
            SatResult::Satisfiable(m) => Some(m),
            SatResult::Unsatisfiable(_) => None,
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unassigned,
}

#[derive(Debug, Clone, Copy)]
struct Watch {
    clause: u32,
    blocker: Lit,
}

#[derive(Debug)]
struct ClauseData {
    lits: Vec<Lit>,
}

/// Activity-ordered variable heap (indexed binary max-heap).
#[derive(Debug, Default)]
struct VarOrder {
    heap: Vec<u32>,
    position: Vec<i32>,
    activity: Vec<f64>,
}

impl VarOrder {
    fn grow_to(&mut self, n: usize, initial: impl Fn(usize) -> f64) {
        while self.activity.len() <= n {
            let v = self.activity.len();
            self.activity.push(initial(v));
            self.position.push(-1);
            if v > 0 {
                self.insert(v as u32);
            }
        }
    }

    fn contains(&self, v: u32) -> bool {
        self.position[v as usize] >= 0
    }

    fn better(&self, a: u32, b: u32) -> bool {
        self.activity[a as usize] > self.activity[b as usize]
    }

    fn insert(&mut self, v: u32) {
        if self.contains(v) {
            return;
        }
        self.position[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1);
    }

    fn pop(&mut self) -> Option<u32> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.position[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last as usize] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    fn bumped(&mut self, v: u32) {
        if self.contains(v) {
            self.sift_up(self.position[v as usize] as usize);
        }
    }

    fn rescale(&mut self, factor: f64) {
        for a in &mut self.activity {
            *a *= factor;
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.better(self.heap[i], self.heap[parent]) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let best = if right < self.heap.len() && self.better(self.heap[right], self.heap[left])
            {
                right
            } else {
                left
            };
            if self.better(self.heap[best], self.heap[i]) {
                self.swap(i, best);
                i = best;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.position[self.heap[i] as usize] = i as i32;
        self.position[self.heap[j] as usize] = j as i32;
    }
}

const RESTART_BASE: u64 = 64;
const VAR_DECAY: f64 = 0.95;
const RESCALE_LIMIT: f64 = 1e100;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

#[inline]
fn lit_value(assign: &[Value], l: Lit) -> Value {
    match assign[l.var().index() as usize] {
        Value::Unassigned => Value::Unassigned,
        v => {
            let truth = (v == Value::True) == l.is_positive();
            if truth {
                Value::True
            } else {
                Value::False
            }
        }
    }
}

/// Luby restart sequence: 1 1 2 1 1 2 4 ...
fn luby(i: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut i = i;
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1u64 << seq
}

/// One incremental SAT context.
pub struct Solver {
    seed: u64,
    num_vars: u32,
    clauses: Vec<ClauseData>,
    watches: Vec<Vec<Watch>>,
    assign: Vec<Value>,
    polarity: Vec<bool>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    order: VarOrder,
    var_inc: f64,
    seen: Vec<bool>,
    ok: bool,
    activation: Vec<Lit>,
    stats: SolverStats,
}

impl Solver {
    pub fn new(seed: u64) -> Solver {
        let mut s = Solver {
            seed,
            num_vars: 0,
            clauses: Vec::new(),
            watches: Vec::new(),
            assign: Vec::new(),
            polarity: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            order: VarOrder::default(),
            var_inc: 1.0,
            seen: Vec::new(),
            ok: true,
            activation: Vec::new(),
            stats: SolverStats::default(),
        };
        s.grow(0);
        s
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    /// Allocate one fresh variable.
    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        self.grow(self.num_vars);
        Var::new(self.num_vars)
    }

    /// Declare variables through index `n`.
    pub fn ensure_vars(&mut self, n: u32) {
        while self.num_vars < n {
            self.new_var();
        }
    }

    fn grow(&mut self, upto: u32) {
        let n = upto as usize;
        let seed = self.seed;
        // a seed-dependent whisper of initial activity perturbs tie-breaking
        // between otherwise untouched variables
        self.order
            .grow_to(n, |v| splitmix64(seed ^ v as u64) as f64 * 1e-28);
        while self.assign.len() <= n {
            self.assign.push(Value::Unassigned);
            self.polarity.push(false);
            self.level.push(0);
            self.reason.push(None);
            self.seen.push(false);
            self.watches.push(Vec::new());
            self.watches.push(Vec::new());
        }
    }

    /// Stable fresh guard literal for a frame level; the same level always
    /// yields the same literal.
    pub fn activation_literal(&mut self, level: usize) -> Lit {
        while self.activation.len() <= level {
            let v = self.new_var();
            self.activation.push(v.positive());
        }
        self.activation[level]
    }

    #[inline]
    fn value_lit(&self, l: Lit) -> Value {
        lit_value(&self.assign, l)
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Add a clause, permanently. Callers wanting removable clauses append
    /// a negated guard literal themselves.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<(), SolverError> {
        for &l in lits {
            if l.var().index() > self.num_vars {
                return Err(SolverError::OutOfRange(l));
            }
        }
        self.cancel_until(0);
        if !self.ok {
            return Ok(());
        }
        let mut ls: Vec<Lit> = lits.to_vec();
        ls.sort_unstable();
        ls.dedup();
        // tautology or satisfied at top level: nothing to add
        if ls.windows(2).any(|w| w[0].var() == w[1].var()) {
            return Ok(());
        }
        if ls.iter().any(|&l| self.value_lit(l) == Value::True) {
            return Ok(());
        }
        ls.retain(|&l| self.value_lit(l) != Value::False);
        match ls.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(ls[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                let idx = self.clauses.len() as u32;
                self.watches[ls[0].code()].push(Watch {
                    clause: idx,
                    blocker: ls[1],
                });
                self.watches[ls[1].code()].push(Watch {
                    clause: idx,
                    blocker: ls[0],
                });
                self.clauses.push(ClauseData { lits: ls });
            }
        }
        Ok(())
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        debug_assert_eq!(self.value_lit(l), Value::Unassigned);
        let v = l.var().index() as usize;
        self.assign[v] = if l.is_positive() {
            Value::True
        } else {
            Value::False
        };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, target: u32) {
        if self.decision_level() <= target {
            return;
        }
        let keep = self.trail_lim[target as usize];
        for i in (keep..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index() as usize;
            self.polarity[v] = l.is_positive();
            self.assign[v] = Value::Unassigned;
            self.reason[v] = None;
            self.order.insert(v as u32);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(target as usize);
        self.qhead = keep;
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut kept = 0;
            let mut conflict = None;
            let mut i = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value_lit(w.blocker) == Value::True {
                    ws[kept] = w;
                    kept += 1;
                    continue;
                }
                let cls = &mut self.clauses[w.clause as usize];
                if cls.lits[0] == false_lit {
                    cls.lits.swap(0, 1);
                }
                debug_assert_eq!(cls.lits[1], false_lit);
                let first = cls.lits[0];
                if first != w.blocker && lit_value(&self.assign, first) == Value::True {
                    ws[kept] = Watch {
                        clause: w.clause,
                        blocker: first,
                    };
                    kept += 1;
                    continue;
                }
                for k in 2..cls.lits.len() {
                    if lit_value(&self.assign, cls.lits[k]) != Value::False {
                        cls.lits.swap(1, k);
                        let new_watch = cls.lits[1];
                        self.watches[new_watch.code()].push(Watch {
                            clause: w.clause,
                            blocker: first,
                        });
                        continue 'watchers;
                    }
                }
                // unit or conflicting
                ws[kept] = Watch {
                    clause: w.clause,
                    blocker: first,
                };
                kept += 1;
                if self.value_lit(first) == Value::False {
                    conflict = Some(w.clause);
                    while i < ws.len() {
                        ws[kept] = ws[i];
                        kept += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, Some(w.clause));
                }
            }
            ws.truncate(kept);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: u32) {
        self.order.activity[v as usize] += self.var_inc;
        if self.order.activity[v as usize] > RESCALE_LIMIT {
            self.order.rescale(1.0 / RESCALE_LIMIT);
            self.var_inc /= RESCALE_LIMIT;
        }
        self.order.bumped(v);
    }

    /// First-UIP learning with basic self-subsumption minimization.
    /// Returns the learnt clause (asserting literal first) and the
    /// backtrack level.
    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![Lit::new(Var::new(1), true)]; // placeholder
        let mut path = 0u32;
        let mut index = self.trail.len();
        let mut confl = confl;
        let mut p: Option<Lit> = None;
        loop {
            for j in 0..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[j];
                // the reason clause contains the literal it implied; skip it
                if Some(q) == p {
                    continue;
                }
                let v = q.var().index() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v as u32);
                    if self.level[v] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            // next marked literal on the trail
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index() as usize] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = lit.var().index() as usize;
            self.seen[v] = false;
            path -= 1;
            if path == 0 {
                learnt[0] = !lit;
                break;
            }
            p = Some(lit);
            confl = self.reason[v].expect("non-decision on conflict path");
        }

        // basic minimization: drop literals whose whole reason is marked
        let retained: Vec<Lit> = learnt[1..]
            .iter()
            .copied()
            .filter(|&l| !self.literal_redundant(l))
            .collect();
        let mut minimized = vec![learnt[0]];
        minimized.extend(retained);

        for l in &minimized {
            self.seen[l.var().index() as usize] = false;
        }
        // seen[] may still hold entries for literals dropped by minimization
        for l in &learnt {
            self.seen[l.var().index() as usize] = false;
        }

        let bt = if minimized.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..minimized.len() {
                if self.level[minimized[i].var().index() as usize]
                    > self.level[minimized[max_i].var().index() as usize]
                {
                    max_i = i;
                }
            }
            minimized.swap(1, max_i);
            self.level[minimized[1].var().index() as usize]
        };
        (minimized, bt)
    }

    fn literal_redundant(&self, l: Lit) -> bool {
        let v = l.var().index() as usize;
        match self.reason[v] {
            None => false,
            Some(r) => self.clauses[r as usize].lits.iter().all(|&q| {
                let qv = q.var().index() as usize;
                qv == v || self.seen[qv] || self.level[qv] == 0
            }),
        }
    }

    /// Explain why assumption `failed` cannot hold: walk the implication
    /// trail backwards collecting the assumption decisions involved.
    fn analyze_final(&mut self, failed: Lit) -> Vec<Lit> {
        let mut core = vec![failed];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[failed.var().index() as usize] = true;
        for i in (self.trail_lim[0]..self.trail.len()).rev() {
            let x = self.trail[i];
            let v = x.var().index() as usize;
            if !self.seen[v] {
                continue;
            }
            match self.reason[v] {
                None => {
                    // an assumption decision; the trail holds it as passed in
                    if x != failed {
                        core.push(x);
                    }
                }
                Some(r) => {
                    for &q in &self.clauses[r as usize].lits {
                        let qv = q.var().index() as usize;
                        if self.level[qv] > 0 {
                            self.seen[qv] = true;
                        }
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[failed.var().index() as usize] = false;
        core
    }

    fn decide(&mut self) -> Option<Lit> {
        loop {
            let v = self.order.pop()?;
            if v == 0 || self.assign[v as usize] != Value::Unassigned {
                continue;
            }
            return Some(Lit::new(Var::new(v), self.polarity[v as usize]));
        }
    }

    /// Solve the database under the given assumptions.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SatResult {
        self.stats.solves += 1;
        self.cancel_until(0);
        if !self.ok {
            return SatResult::Unsatisfiable(Vec::new());
        }
        debug_assert!(assumptions.iter().all(|l| l.var().index() <= self.num_vars));
        if self.propagate().is_some() {
            self.ok = false;
            return SatResult::Unsatisfiable(Vec::new());
        }

        let mut restart_round = 0u64;
        let mut conflicts_left = RESTART_BASE * luby(restart_round);
        let result = loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    break SatResult::Unsatisfiable(Vec::new());
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.cancel_until(0);
                    if self.value_lit(learnt[0]) == Value::False {
                        self.ok = false;
                        break SatResult::Unsatisfiable(Vec::new());
                    }
                    if self.value_lit(learnt[0]) == Value::Unassigned {
                        self.enqueue(learnt[0], None);
                    }
                } else {
                    let idx = self.clauses.len() as u32;
                    self.watches[learnt[0].code()].push(Watch {
                        clause: idx,
                        blocker: learnt[1],
                    });
                    self.watches[learnt[1].code()].push(Watch {
                        clause: idx,
                        blocker: learnt[0],
                    });
                    let assert_lit = learnt[0];
                    self.clauses.push(ClauseData { lits: learnt });
                    self.enqueue(assert_lit, Some(idx));
                }
                self.var_inc /= VAR_DECAY;
                if conflicts_left == 0 {
                    self.stats.restarts += 1;
                    restart_round += 1;
                    conflicts_left = RESTART_BASE * luby(restart_round);
                    self.cancel_until(0);
                } else {
                    conflicts_left -= 1;
                }
            } else if (self.decision_level() as usize) < assumptions.len() {
                let p = assumptions[self.decision_level() as usize];
                match self.value_lit(p) {
                    Value::True => self.trail_lim.push(self.trail.len()),
                    Value::False => break SatResult::Unsatisfiable(self.analyze_final(p)),
                    Value::Unassigned => {
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(p, None);
                    }
                }
            } else {
                match self.decide() {
                    None => break SatResult::Satisfiable(self.extract_model()),
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, None);
                    }
                }
            }
        };
        if cfg!(debug_assertions) {
            if let SatResult::Satisfiable(m) = &result {
                for c in &self.clauses {
                    debug_assert!(
                        c.lits.iter().any(|&l| m.lit_true(l)),
                        "model violates stored clause"
                    );
                }
            }
        }
        self.cancel_until(0);
        result
    }

    fn extract_model(&self) -> Model {
        let values = (0..=self.num_vars as usize)
            .map(|v| self.assign[v] == Value::True)
            .collect();
        Model { values }
    }
}

/// Exhaustive reference decision procedure for the differential suites.
/// Entirely independent of the solver: evaluates the formula over every
/// assignment, 64 packed assignments per word.
pub mod exhaustive {
    use super::*;

    pub fn is_satisfiable(vars: u32, clauses: &[Vec<Lit>]) -> bool {
        assert!(
            vars <= 20,
            "enumeration reference is budgeted to 20 variables"
        );
        if clauses.iter().any(|c| c.is_empty()) {
            return false;
        }
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let low = vars.min(6);
        let high_bits = vars - low;
        for high in 0u64..1 << high_bits {
            let mut alive = if low == 6 {
                u64::MAX
            } else {
                (1u64 << (1 << low)) - 1
            };
            for c in clauses {
                let mut word = 0u64;
                for &l in c {
                    let v = l.var().index() - 1;
                    let pattern = if v < low {
                        PATTERNS[v as usize]
                    } else if high >> (v - low) & 1 == 1 {
                        u64::MAX
                    } else {
                        0
                    };
                    word |= if l.is_positive() { pattern } else { !pattern };
                }
                alive &= word;
                if alive == 0 {
                    break;
                }
            }
            if alive != 0 {
                return true;
            }
        }
        false
    }
}

/// DIMACS CNF reading and writing for the standalone test harness.
pub mod dimacs {
    use super::*;

    #[derive(Debug, Error, PartialEq, Eq)]
    pub enum DimacsError {
        #[error("missing `p cnf` header")]
        MissingHeader,
        #[error("malformed header: {0}")]
        BadHeader(String),
        #[error("bad literal token `{0}`")]
        BadLiteral(String),
        #[error("clause not terminated by 0")]
        UnterminatedClause,
        #[error("literal {0} exceeds declared variable count")]
        OutOfRange(i64),
    }

    pub fn parse(text: &str) -> Result<(u32, Vec<Vec<Lit>>), DimacsError> {
        let mut vars: Option<u32> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Lit> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p cnf") {
                let nums: Vec<&str> = rest.split_whitespace().collect();
                if nums.len() != 2 {
                    return Err(DimacsError::BadHeader(line.to_string()));
                }
                let v = nums[0]
                    .parse::<u32>()
                    .map_err(|_| DimacsError::BadHeader(line.to_string()))?;
                vars = Some(v);
                continue;
            }
            if vars.is_none() {
                return Err(DimacsError::MissingHeader);
            }
            for tok in line.split_whitespace() {
                let n: i64 = tok
                    .parse()
                    .map_err(|_| DimacsError::BadLiteral(tok.to_string()))?;
                if n == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    if n.unsigned_abs() > u64::from(vars.unwrap()) {
                        return Err(DimacsError::OutOfRange(n));
                    }
                    current.push(Lit::from_dimacs(n));
                }
            }
        }
        if !current.is_empty() {
            return Err(DimacsError::UnterminatedClause);
        }
        match vars {
            Some(v) => Ok((v, clauses)),
            None => Err(DimacsError::MissingHeader),
        }
    }

    pub fn write(vars: u32, clauses: &[Vec<Lit>]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p cnf {} {}", vars, clauses.len());
        for c in clauses {
            for l in c {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            let _ = writeln!(out, "0");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(vs: &[i64]) -> Vec<Lit> {
        vs.iter().map(|&v| Lit::from_dimacs(v)).collect()
    }

    fn solver_with(vars: u32, clauses: &[&[i64]]) -> Solver {
        let mut s = Solver::new(0);
        s.ensure_vars(vars);
        for c in clauses {
            s.add_clause(&lits(c)).unwrap();
        }
        s
    }

    fn brute_force_sat(vars: u32, clauses: &[Vec<Lit>]) -> bool {
        exhaustive::is_satisfiable(vars, clauses)
    }

    #[test]
    fn direct_contradiction() {
        let mut s = solver_with(1, &[&[1], &[-1]]);
        assert!(!s.solve(&[]).is_sat());
    }

    #[test]
    fn empty_theory_is_satisfiable() {
        let mut s = Solver::new(0);
        s.ensure_vars(3);
        let r = s.solve(&[]);
        assert!(r.is_sat());
    }

    #[test]
    fn unit_propagation_under_assumption() {
        let mut s = solver_with(2, &[&[1, 2]]);
        match s.solve(&lits(&[-1])) {
            SatResult::Satisfiable(m) => {
                assert!(!m.value(Var::new(1)));
                assert!(m.value(Var::new(2)));
            }
            SatResult::Unsatisfiable(_) => panic!("expected sat"),
        }
    }

    #[test]
    fn full_contradiction_under_any_assumptions() {
        let mut s = solver_with(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert!(!s.solve(&[]).is_sat());
        // database itself is unsat; later calls stay unsat
        assert!(!s.solve(&lits(&[1])).is_sat());
    }

    #[test]
    fn model_is_total_over_declared_vars() {
        let mut s = solver_with(5, &[&[1, 2]]);
        match s.solve(&[]) {
            SatResult::Satisfiable(m) => {
                for v in 1..=5 {
                    let _ = m.value(Var::new(v)); // must not panic
                }
            }
            _ => panic!("expected sat"),
        }
    }

    #[test]
    fn out_of_range_literal_rejected() {
        let mut s = Solver::new(0);
        s.ensure_vars(2);
        assert_eq!(
            s.add_clause(&lits(&[3])),
            Err(SolverError::OutOfRange(Lit::from_dimacs(3)))
        );
    }

    #[test]
    fn activation_literal_is_idempotent_per_level() {
        let mut s = Solver::new(0);
        s.ensure_vars(2);
        let a2 = s.activation_literal(2);
        assert_eq!(s.activation_literal(2), a2);
        assert_ne!(s.activation_literal(1), a2);
    }

    #[test]
    fn guarded_clause_active_only_under_its_guard() {
        let mut s = Solver::new(0);
        s.ensure_vars(1);
        let act = s.activation_literal(2);
        // (x) guarded at level 2, plus permanent (¬x)
        s.add_clause(&[Lit::from_dimacs(1), !act]).unwrap();
        s.add_clause(&lits(&[-1])).unwrap();
        assert!(s.solve(&[]).is_sat());
        assert!(!s.solve(&[act]).is_sat());
    }

    #[test]
    fn unsat_core_is_subset_and_sufficient() {
        let mut s = solver_with(4, &[&[-1, 2], &[-2, 3], &[-3, -4]]);
        let assumptions = lits(&[1, 4]);
        match s.solve(&assumptions) {
            SatResult::Unsatisfiable(core) => {
                assert!(!core.is_empty());
                for l in &core {
                    assert!(assumptions.contains(l));
                }
                // replay the core alone on a fresh solver: still unsat
                let mut fresh = solver_with(4, &[&[-1, 2], &[-2, 3], &[-3, -4]]);
                assert!(!fresh.solve(&core).is_sat());
            }
            SatResult::Satisfiable(_) => panic!("expected unsat"),
        }
    }

    fn random_cnf(state: &mut u64, vars: u32, n_clauses: usize) -> Vec<Vec<Lit>> {
        let mut next = || {
            *state = splitmix64(*state);
            *state
        };
        (0..n_clauses)
            .map(|_| {
                let len = 1 + (next() % 3) as usize;
                (0..len)
                    .map(|_| {
                        let v = 1 + (next() % u64::from(vars)) as i64;
                        if next() & 1 == 0 {
                            Lit::from_dimacs(v)
                        } else {
                            Lit::from_dimacs(-v)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn verdict_matches_truth_table_on_random_cnfs() {
        let mut state = 0x5eed;
        for round in 0..60 {
            let vars = 3 + (round % 12) as u32;
            let n_clauses = 2 + (round * 7 % 40);
            let cnf = random_cnf(&mut state, vars, n_clauses);
            let expected = brute_force_sat(vars, &cnf);
            let mut s = Solver::new(round as u64);
            s.ensure_vars(vars);
            for c in &cnf {
                s.add_clause(c).unwrap();
            }
            assert_eq!(s.solve(&[]).is_sat(), expected, "cnf: {cnf:?}");
        }
    }

    #[test]
    fn incremental_matches_fresh_rebuild() {
        // interleave add_clause/solve; each solve must agree with a fresh
        // solver loaded with the then-current clauses
        let mut state = 0xfeed_beef;
        for round in 0..20 {
            let vars = 4 + (round % 8) as u32;
            let cnf = random_cnf(&mut state, vars, 30);
            let mut inc = Solver::new(7);
            inc.ensure_vars(vars);
            for (i, c) in cnf.iter().enumerate() {
                inc.add_clause(c).unwrap();
                if i % 3 == 0 {
                    let mut fresh = Solver::new(99);
                    fresh.ensure_vars(vars);
                    for d in &cnf[..=i] {
                        fresh.add_clause(d).unwrap();
                    }
                    assert_eq!(inc.solve(&[]).is_sat(), fresh.solve(&[]).is_sat());
                }
            }
        }
    }

    #[test]
    fn assumption_verdicts_match_clause_conjunction() {
        let mut state = 0xabcd;
        for round in 0..30 {
            let vars = 4 + (round % 6) as u32;
            let cnf = random_cnf(&mut state, vars, 18);
            let n_assumps = 1 + (round % 3);
            let assumps: Vec<Lit> = {
                let mut picked = Vec::new();
                for k in 0..n_assumps {
                    let v = 1 + ((round * 31 + k * 17) % vars as usize) as i64;
                    let l = if (round + k) % 2 == 0 { v } else { -v };
                    let lit = Lit::from_dimacs(l);
                    if !picked.contains(&!lit) && !picked.contains(&lit) {
                        picked.push(lit);
                    }
                }
                picked
            };
            let mut s = Solver::new(3);
            s.ensure_vars(vars);
            for c in &cnf {
                s.add_clause(c).unwrap();
            }
            let got = s.solve(&assumps).is_sat();
            let mut full = cnf.clone();
            for &a in &assumps {
                full.push(vec![a]);
            }
            assert_eq!(got, brute_force_sat(vars, &full));
        }
    }

    #[test]
    fn seeds_change_nothing_about_verdicts() {
        let mut state = 0x1234;
        let cnf = random_cnf(&mut state, 8, 25);
        let mut verdicts = Vec::new();
        for seed in [0u64, 1, 42, u64::MAX] {
            let mut s = Solver::new(seed);
            s.ensure_vars(8);
            for c in &cnf {
                s.add_clause(c).unwrap();
            }
            verdicts.push(s.solve(&[]).is_sat());
        }
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
    }

    /// Pigeonhole: n+1 pigeons into n holes. Hard enough to force real
    /// conflict analysis and restarts; unsatisfiable by counting.
    fn pigeonhole(pigeons: u32, holes: u32) -> (u32, Vec<Vec<Lit>>) {
        let var = |p: u32, h: u32| Lit::from_dimacs(i64::from(p * holes + h + 1));
        let mut cnf = Vec::new();
        for p in 0..pigeons {
            cnf.push((0..holes).map(|h| var(p, h)).collect());
        }
        for h in 0..holes {
            for p1 in 0..pigeons {
                for p2 in p1 + 1..pigeons {
                    cnf.push(vec![!var(p1, h), !var(p2, h)]);
                }
            }
        }
        (pigeons * holes, cnf)
    }

    #[test]
    fn pigeonhole_instances_exercise_learning_and_restarts() {
        let (vars, cnf) = pigeonhole(7, 6);
        let mut s = Solver::new(0);
        s.ensure_vars(vars);
        for c in &cnf {
            s.add_clause(c).unwrap();
        }
        assert!(!s.solve(&[]).is_sat());
        assert!(s.stats().conflicts > 100);
        // one pigeon fewer is satisfiable
        let (vars, cnf) = pigeonhole(6, 6);
        let mut s = Solver::new(0);
        s.ensure_vars(vars);
        for c in &cnf {
            s.add_clause(c).unwrap();
        }
        assert!(s.solve(&[]).is_sat());
    }

    #[test]
    fn wide_clause_mix_matches_enumeration() {
        let mut state = 0xC0FFEE_u64;
        let mut next = move || {
            state = splitmix64(state);
            state
        };
        for round in 0..40 {
            let vars = 5 + (next() % 14) as u32;
            let n_clauses = 3 + (next() % 60) as usize;
            let cnf: Vec<Vec<Lit>> = (0..n_clauses)
                .map(|_| {
                    let len = 1 + (next() % u64::from(vars.min(9))) as usize;
                    (0..len)
                        .map(|_| {
                            let v = 1 + (next() % u64::from(vars)) as i64;
                            Lit::from_dimacs(if next() & 1 == 0 { v } else { -v })
                        })
                        .collect()
                })
                .collect();
            let mut s = Solver::new(round);
            s.ensure_vars(vars);
            for c in &cnf {
                s.add_clause(c).unwrap();
            }
            assert_eq!(
                s.solve(&[]).is_sat(),
                brute_force_sat(vars, &cnf),
                "{round}"
            );
        }
    }

    #[test]
    fn repeated_assumption_solves_are_consistent_and_stateless() {
        // a satisfiable core theory probed under many assumption sets;
        // interleaved calls must neither flip verdicts nor corrupt state
        let mut state = 0xDADA_u64;
        let cnf = random_cnf(&mut state, 10, 35);
        let mut s = Solver::new(5);
        s.ensure_vars(10);
        for c in &cnf {
            s.add_clause(c).unwrap();
        }
        let mut expected = Vec::new();
        let mut assumption_sets = Vec::new();
        for round in 0..40u64 {
            let a =
                Lit::from_dimacs(if round % 2 == 0 { 1 } else { -1 } * (1 + (round % 10) as i64));
            let b = Lit::from_dimacs(
                if round % 3 == 0 { 1 } else { -1 } * (1 + (round * 7 % 10) as i64),
            );
            let assumps = if a.var() == b.var() {
                vec![a]
            } else {
                vec![a, b]
            };
            let mut full = cnf.clone();
            for &l in &assumps {
                full.push(vec![l]);
            }
            expected.push(brute_force_sat(10, &full));
            assumption_sets.push(assumps);
        }
        // forward, then reversed: order must not matter
        for (assumps, &want) in assumption_sets.iter().zip(&expected) {
            assert_eq!(s.solve(assumps).is_sat(), want);
        }
        for (assumps, &want) in assumption_sets.iter().zip(&expected).rev() {
            assert_eq!(s.solve(assumps).is_sat(), want);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cnf() -> impl Strategy<Value = (u32, Vec<Vec<Lit>>)> {
            (3u32..=12).prop_flat_map(|vars| {
                let lit =
                    (1..=vars, proptest::bool::ANY).prop_map(|(v, s)| Lit::new(Var::new(v), s));
                let clause = proptest::collection::vec(lit, 1..=4);
                proptest::collection::vec(clause, 0..40).prop_map(move |cnf| (vars, cnf))
            })
        }

        proptest! {
            #[test]
            fn verdict_always_matches_enumeration((vars, cnf) in arb_cnf()) {
                let mut s = Solver::new(1);
                s.ensure_vars(vars);
                for c in &cnf {
                    s.add_clause(c).unwrap();
                }
                prop_assert_eq!(s.solve(&[]).is_sat(), exhaustive::is_satisfiable(vars, &cnf));
            }

            #[test]
            fn unsat_cores_replay((vars, cnf) in arb_cnf(), picks in proptest::collection::vec(0u32..24, 1..4)) {
                let assumptions: Vec<Lit> = {
                    let mut seen = Vec::new();
                    for p in picks {
                        let l = Lit::new(Var::new(1 + p % vars), p % 2 == 0);
                        if !seen.contains(&l) && !seen.contains(&!l) {
                            seen.push(l);
                        }
                    }
                    seen
                };
                let mut s = Solver::new(2);
                s.ensure_vars(vars);
                for c in &cnf {
                    s.add_clause(c).unwrap();
                }
                if let SatResult::Unsatisfiable(core) = s.solve(&assumptions) {
                    for l in &core {
                        prop_assert!(assumptions.contains(l));
                    }
                    let mut fresh = Solver::new(3);
                    fresh.ensure_vars(vars);
                    for c in &cnf {
                        fresh.add_clause(c).unwrap();
                    }
                    prop_assert!(!fresh.solve(&core).is_sat());
                }
            }
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c a comment\np cnf 3 2\n1 -2 0\n2 3 0\n";
        let (vars, clauses) = dimacs::parse(text).unwrap();
        assert_eq!(vars, 3);
        assert_eq!(clauses.len(), 2);
        let rendered = dimacs::write(vars, &clauses);
        assert_eq!(dimacs::parse(&rendered).unwrap(), (vars, clauses));
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(
            dimacs::parse("1 2 0"),
            Err(dimacs::DimacsError::MissingHeader)
        );
        assert_eq!(
            dimacs::parse("p cnf 2 1\n1 2"),
            Err(dimacs::DimacsError::UnterminatedClause)
        );
        assert_eq!(
            dimacs::parse("p cnf 2 1\n5 0"),
            Err(dimacs::DimacsError::OutOfRange(5))
        );
    }

    #[test]
    fn luby_sequence_prefix() {
        let got: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }
}
