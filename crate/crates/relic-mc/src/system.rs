//! Finite transition systems: a functional next-state view plus its CNF
//! encoding.
//!
//! The functional view (`LogicGraph`) is an and-inverter DAG over the latches
//! and inputs; it drives simulation (oracle, trace replay). The CNF view is a
//! Tseitin encoding of the same logic with one auxiliary variable per gate,
//! and is what the SAT layer consumes. Solver variables are laid out as
//!
//! ```text
//!   1 ..= L              latches
//!   L+1 ..= L+I          inputs
//!   L+I+1 ..= L+I+L      primed latches
//!   L+I+L+1 ..= ..+G     gate auxiliaries
//! ```
//!
//! so priming a latch variable is a fixed offset and the prime map is a
//! bijection by construction.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::types::{Clause, Cnf, Cube, Lit, Var};

/// Reference to a node of the logic DAG, with a sign bit. Node 0 is the
/// constant false, then latches, inputs, and gates in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signal(u32);

impl Signal {
    pub const FALSE: Signal = Signal(0);
    pub const TRUE: Signal = Signal(1);

    fn node(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_const(self) -> bool {
        self.node() == 0
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }
}

impl std::ops::Not for Signal {
    type Output = Signal;

    fn not(self) -> Signal {
        Signal(self.0 ^ 1)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("signal references node {node} but only {limit} nodes exist")]
    SignalOutOfRange { node: u32, limit: u32 },
    #[error("gate {gate} must only read earlier nodes (got node {operand})")]
    NonMonotoneGate { gate: u32, operand: u32 },
    #[error("latch {0} has no next-state function")]
    MissingNext(u32),
    #[error("formula over latches mentions variable {0}, which is not a latch")]
    NotALatch(Var),
    #[error("invariant literal {0} is not over a latch")]
    BadInvariantLiteral(Lit),
}

/// Combinational logic: next-state function per latch, and the and-gate DAG
/// those functions reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicGraph {
    latch_count: u32,
    input_count: u32,
    gates: Vec<(Signal, Signal)>,
    next: Vec<Option<Signal>>,
}

impl LogicGraph {
    pub fn new(latch_count: u32, input_count: u32) -> LogicGraph {
        LogicGraph {
            latch_count,
            input_count,
            gates: Vec::new(),
            next: vec![None; latch_count as usize],
        }
    }

    pub fn latch_count(&self) -> u32 {
        self.latch_count
    }

    pub fn input_count(&self) -> u32 {
        self.input_count
    }

    pub fn gate_count(&self) -> u32 {
        self.gates.len() as u32
    }

    pub fn gates(&self) -> &[(Signal, Signal)] {
        &self.gates
    }

    pub fn latch(&self, i: u32) -> Signal {
        assert!(i < self.latch_count);
        Signal((1 + i) << 1)
    }

    pub fn input(&self, i: u32) -> Signal {
        assert!(i < self.input_count);
        Signal((1 + self.latch_count + i) << 1)
    }

    pub fn gate(&self, i: u32) -> Signal {
        assert!(i < self.gate_count());
        Signal((1 + self.latch_count + self.input_count + i) << 1)
    }

    fn node_limit(&self) -> u32 {
        1 + self.latch_count + self.input_count + self.gate_count()
    }

    fn check_signal(&self, s: Signal, limit: u32) -> Result<(), SystemError> {
        if s.node() >= limit {
            return Err(SystemError::SignalOutOfRange {
                node: s.node(),
                limit,
            });
        }
        Ok(())
    }

    /// Append an and-gate over two existing signals; returns its output.
    pub fn add_gate(&mut self, a: Signal, b: Signal) -> Result<Signal, SystemError> {
        let own_node = self.node_limit();
        for s in [a, b] {
            self.check_signal(s, own_node)
                .map_err(|_| SystemError::NonMonotoneGate {
                    gate: self.gate_count(),
                    operand: s.node(),
                })?;
        }
        self.gates.push((a, b));
        Ok(Signal(own_node << 1))
    }

    pub fn set_next(&mut self, latch: u32, s: Signal) -> Result<(), SystemError> {
        self.check_signal(s, self.node_limit())?;
        self.next[latch as usize] = Some(s);
        Ok(())
    }

    pub fn next(&self, latch: u32) -> Signal {
        self.next[latch as usize].expect("validated graph")
    }

    fn validate(&self) -> Result<(), SystemError> {
        for (i, n) in self.next.iter().enumerate() {
            if n.is_none() {
                return Err(SystemError::MissingNext(i as u32));
            }
        }
        Ok(())
    }

    /// Evaluate every gate under the given latch and input valuation.
    fn eval_gates(&self, latches: &[bool], inputs: &[bool]) -> Vec<bool> {
        let mut gates = Vec::with_capacity(self.gates.len());
        for &(a, b) in &self.gates {
            let va = self.eval_with(a, latches, inputs, &gates);
            let vb = self.eval_with(b, latches, inputs, &gates);
            gates.push(va && vb);
        }
        gates
    }

    fn eval_with(&self, s: Signal, latches: &[bool], inputs: &[bool], gates: &[bool]) -> bool {
        let node = s.node();
        let l = self.latch_count;
        let li = l + self.input_count;
        let base = if node == 0 {
            false
        } else if node <= l {
            latches[(node - 1) as usize]
        } else if node <= li {
            inputs[(node - 1 - l) as usize]
        } else {
            gates[(node - 1 - li) as usize]
        };
        base != s.is_negated()
    }

    /// Evaluate one signal under a full valuation.
    pub fn eval(&self, s: Signal, latches: &[bool], inputs: &[bool]) -> bool {
        let gates = self.eval_gates(latches, inputs);
        self.eval_with(s, latches, inputs, &gates)
    }

    /// One transition: the successor latch valuation.
    pub fn step(&self, latches: &[bool], inputs: &[bool]) -> Vec<bool> {
        debug_assert_eq!(latches.len(), self.latch_count as usize);
        debug_assert_eq!(inputs.len(), self.input_count as usize);
        let gates = self.eval_gates(latches, inputs);
        self.next
            .iter()
            .map(|n| self.eval_with(n.expect("validated graph"), latches, inputs, &gates))
            .collect()
    }

    /// Packed-word variant of `step` for enumeration-heavy callers.
    /// Latch 0 / input 0 sit in the lowest bit of their word.
    pub fn step_bits(&self, latches: u64, inputs: u64) -> u64 {
        let lv: Vec<bool> = (0..self.latch_count)
            .map(|i| latches >> i & 1 == 1)
            .collect();
        let iv: Vec<bool> = (0..self.input_count)
            .map(|i| inputs >> i & 1 == 1)
            .collect();
        self.step(&lv, &iv)
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &v)| acc | (u64::from(v) << i))
    }
}

/// Frame metadata linking a cone-reduced system back to the AIGER file it
/// came from, so traces can be widened into AIGER witness format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AigerSource {
    /// Latch count of the original file.
    pub orig_latches: usize,
    /// Input count of the original file.
    pub orig_inputs: usize,
    /// For each kept latch, its 0-based position in the original file;
    /// `None` for synthetic latches (the property monitor).
    pub latch_positions: Vec<Option<usize>>,
    /// For each kept input, its 0-based position in the original file.
    pub input_positions: Vec<usize>,
}

/// A finite transition system: latches, inputs, initial condition `I`,
/// transition relation `T` in CNF, and safety property `P`.
#[derive(Debug, Clone)]
pub struct TransitionSystem {
    logic: LogicGraph,
    init: Cnf,
    property: Cnf,
    invariant_lits: Vec<Lit>,
    trans: Cnf,
    source: Option<AigerSource>,
}

impl TransitionSystem {
    /// Build a system from its functional view. `init` and `property` are
    /// CNF over latch variables; `invariant_lits` are latch literals known to
    /// hold in every reachable state (conjoined into every frame's base).
    pub fn from_logic(
        logic: LogicGraph,
        init: Cnf,
        property: Cnf,
        invariant_lits: Vec<Lit>,
    ) -> Result<TransitionSystem, SystemError> {
        logic.validate()?;
        let latch_limit = logic.latch_count;
        let over_latches = |cnf: &Cnf| -> Result<(), SystemError> {
            for c in cnf {
                for l in c.lits() {
                    if l.var().index() > latch_limit {
                        return Err(SystemError::NotALatch(l.var()));
                    }
                }
            }
            Ok(())
        };
        over_latches(&init)?;
        over_latches(&property)?;
        for &l in &invariant_lits {
            if l.var().index() > latch_limit {
                return Err(SystemError::BadInvariantLiteral(l));
            }
        }
        let trans = encode_trans(&logic);
        Ok(TransitionSystem {
            logic,
            init,
            property,
            invariant_lits,
            trans,
            source: None,
        })
    }

    pub fn with_source(mut self, source: AigerSource) -> TransitionSystem {
        self.source = Some(source);
        self
    }

    pub fn logic(&self) -> &LogicGraph {
        &self.logic
    }

    pub fn init(&self) -> &Cnf {
        &self.init
    }

    pub fn property(&self) -> &Cnf {
        &self.property
    }

    pub fn invariant_lits(&self) -> &[Lit] {
        &self.invariant_lits
    }

    pub fn trans(&self) -> &Cnf {
        &self.trans
    }

    pub fn source(&self) -> Option<&AigerSource> {
        self.source.as_ref()
    }

    pub fn latch_count(&self) -> usize {
        self.logic.latch_count as usize
    }

    pub fn input_count(&self) -> usize {
        self.logic.input_count as usize
    }

    /// Total solver variables: latches, inputs, primed latches, gate aux.
    pub fn var_count(&self) -> usize {
        2 * self.latch_count() + self.input_count() + self.logic.gate_count() as usize
    }

    pub fn latch_var(&self, i: usize) -> Var {
        debug_assert!(i < self.latch_count());
        Var::new(i as u32 + 1)
    }

    pub fn input_var(&self, i: usize) -> Var {
        debug_assert!(i < self.input_count());
        Var::new(self.logic.latch_count + i as u32 + 1)
    }

    pub fn is_latch_var(&self, v: Var) -> bool {
        (v.index() as usize) <= self.latch_count()
    }

    fn prime_offset(&self) -> u32 {
        self.logic.latch_count + self.logic.input_count
    }

    /// Prime a latch variable. Errors when the variable has no primed
    /// counterpart (inputs, auxiliaries, out of range).
    pub fn prime_var(&self, v: Var) -> Result<Var, SystemError> {
        if !self.is_latch_var(v) {
            return Err(SystemError::NotALatch(v));
        }
        Ok(Var::new(v.index() + self.prime_offset()))
    }

    pub fn unprime_var(&self, v: Var) -> Result<Var, SystemError> {
        let off = self.prime_offset();
        let idx = v.index();
        if idx <= off || idx > off + self.logic.latch_count {
            return Err(SystemError::NotALatch(v));
        }
        Ok(Var::new(idx - off))
    }

    pub fn prime_lit(&self, l: Lit) -> Result<Lit, SystemError> {
        Ok(Lit::new(self.prime_var(l.var())?, l.is_positive()))
    }

    pub fn unprime_lit(&self, l: Lit) -> Result<Lit, SystemError> {
        Ok(Lit::new(self.unprime_var(l.var())?, l.is_positive()))
    }

    /// Replace each latch variable by its primed counterpart, preserving
    /// signs. Priming is a fixed index offset, so sortedness is preserved.
    pub fn prime_clause(&self, c: &Clause) -> Result<Clause, SystemError> {
        let lits: Result<Vec<Lit>, _> = c.lits().iter().map(|&l| self.prime_lit(l)).collect();
        Ok(Clause::from_sorted(lits?))
    }

    pub fn prime_cube(&self, c: &Cube) -> Result<Cube, SystemError> {
        let lits: Result<Vec<Lit>, _> = c.lits().iter().map(|&l| self.prime_lit(l)).collect();
        Ok(Cube::from_sorted(lits?))
    }

    pub fn unprime_cube(&self, c: &Cube) -> Result<Cube, SystemError> {
        let lits: Result<Vec<Lit>, _> = c.lits().iter().map(|&l| self.unprime_lit(l)).collect();
        Ok(Cube::from_sorted(lits?))
    }

    pub fn prime_cnf(&self, cnf: &Cnf) -> Result<Cnf, SystemError> {
        cnf.iter().map(|c| self.prime_clause(c)).collect()
    }

    /// Map a logic signal to the solver literal holding its current-state
    /// value; `None` for constants.
    pub fn signal_lit(&self, s: Signal) -> Option<Lit> {
        if s.is_const() {
            return None;
        }
        let node = s.node();
        let l = self.logic.latch_count;
        let li = l + self.logic.input_count;
        let var = if node <= li {
            // latches and inputs share the low variable range in node order
            Var::new(node)
        } else {
            // gate auxiliaries live above the primed latches
            Var::new(node + l)
        };
        Some(Lit::new(var, !s.is_negated()))
    }

    /// `true` iff the assignment satisfies the property CNF.
    pub fn holds_property(&self, state: &crate::types::Assignment) -> bool {
        crate::types::eval_cnf(&self.property, |v| state.value_of(v))
    }

    pub fn holds_init(&self, state: &crate::types::Assignment) -> bool {
        crate::types::eval_cnf(&self.init, |v| state.value_of(v))
    }

    /// Content hash binding certificates to the system they belong to.
    pub fn fingerprint(&self) -> String {
        let mut text = String::new();
        let _ = writeln!(
            text,
            "sys {} {} {}",
            self.logic.latch_count,
            self.logic.input_count,
            self.logic.gate_count()
        );
        for &(a, b) in &self.logic.gates {
            let _ = writeln!(text, "g {} {}", a.0, b.0);
        }
        for i in 0..self.logic.latch_count {
            let _ = writeln!(text, "n {}", self.logic.next(i).0);
        }
        for c in &self.init {
            let _ = writeln!(text, "i {}", c.to_text());
        }
        for c in &self.property {
            let _ = writeln!(text, "p {}", c.to_text());
        }
        for l in &self.invariant_lits {
            let _ = writeln!(text, "v {l}");
        }
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().fold(String::new(), |mut acc, b| {
            let _ = write!(acc, "{b:02x}");
            acc
        })
    }
}

/// Tseitin encoding of the transition relation: three clauses per and-gate
/// (fewer when an operand is constant) plus equality clauses tying each
/// primed latch to its next-state signal.
fn encode_trans(logic: &LogicGraph) -> Cnf {
    let l = logic.latch_count;
    let li = l + logic.input_count;
    let sig_lit = |s: Signal| -> Option<Lit> {
        if s.is_const() {
            None
        } else {
            let node = s.node();
            let var = if node <= li {
                Var::new(node)
            } else {
                Var::new(node + l)
            };
            Some(Lit::new(var, !s.is_negated()))
        }
    };
    let sig_const = |s: Signal| -> Option<bool> { s.is_const().then(|| s.is_negated()) };

    let mut cnf = Cnf::new();
    let mut push = |lits: Vec<Lit>| cnf.push(Clause::new(lits).expect("no tautologies emitted"));

    for (g, &(a, b)) in logic.gates.iter().enumerate() {
        let out = sig_lit(logic.gate(g as u32)).expect("gate output is a variable");
        match (sig_lit(a), sig_lit(b)) {
            (Some(la), Some(lb)) => {
                if la == lb {
                    // x = a ∧ a
                    push(vec![!out, la]);
                    push(vec![out, !la]);
                } else if la == !lb {
                    // x = a ∧ ¬a = false
                    push(vec![!out]);
                } else {
                    push(vec![!out, la]);
                    push(vec![!out, lb]);
                    push(vec![out, !la, !lb]);
                }
            }
            (Some(lit), None) | (None, Some(lit)) => {
                let konst = sig_const(a).or(sig_const(b)).unwrap();
                if konst {
                    // x = lit ∧ true
                    push(vec![!out, lit]);
                    push(vec![out, !lit]);
                } else {
                    push(vec![!out]);
                }
            }
            (None, None) => {
                let value = sig_const(a).unwrap() && sig_const(b).unwrap();
                push(vec![if value { out } else { !out }]);
            }
        }
    }

    for i in 0..l {
        let primed = Lit::new(Var::new(li + 1 + i), true);
        match sig_lit(logic.next(i)) {
            Some(sig) => {
                push(vec![!primed, sig]);
                push(vec![primed, !sig]);
            }
            None => {
                let value = logic.next(i) == Signal::TRUE;
                push(vec![if value { primed } else { !primed }]);
            }
        }
    }

    cnf
}
