//! Explicit-state ground truth for desk-scale verification.
//!
//! Everything here works by direct simulation of the update functions,
//! never through the SAT layer, so it can serve as an independent oracle
//! for the engine, the encoder, and the certificate checker. Budgets are
//! hard errors: a silently truncated oracle would be worse than none.

use std::collections::VecDeque;

use thiserror::Error;

use crate::system::TransitionSystem;
use crate::types::{Assignment, Clause, Lit, Var};
use crate::verdict::{Trace, TraceStep, Verdict};

/// Combined latch+input bit budget for exhaustive enumeration.
pub const ENUM_BUDGET_BITS: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration budget exceeded: {0} state+input bits (limit {ENUM_BUDGET_BITS})")]
    Budget(usize),
    #[error("minimality budget exceeded: clause has {0} literals (limit 16)")]
    ClauseBudget(usize),
}

fn check_budget(sys: &TransitionSystem) -> Result<(), OracleError> {
    let bits = sys.latch_count() + sys.input_count();
    if bits > ENUM_BUDGET_BITS {
        return Err(OracleError::Budget(bits));
    }
    Ok(())
}

struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bits: usize) -> BitSet {
        BitSet {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    fn get(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
}

fn eval_property(sys: &TransitionSystem, state: u64) -> bool {
    sys.holds_property(&Assignment::from_bits(state, sys.latch_count()))
}

fn eval_init(sys: &TransitionSystem, state: u64) -> bool {
    sys.holds_init(&Assignment::from_bits(state, sys.latch_count()))
}

fn eval_cnf_bits(cnf: &[Clause], state: u64) -> bool {
    cnf.iter()
        .all(|c| c.eval(|v: Var| state >> (v.index() - 1) & 1 == 1))
}

/// Breadth-first reachability. Returns `Safe` with the exact reachable-set
/// formula as strengthening, or `Unsafe` with a shortest counterexample.
pub fn bfs_verdict(sys: &TransitionSystem) -> Result<Verdict, OracleError> {
    check_budget(sys)?;
    let latches = sys.latch_count();
    let inputs = sys.input_count();
    let states = 1u64 << latches;
    let mut visited = BitSet::new(states as usize);
    // parent state and the input word taken to get here
    let mut parent: Vec<(u64, u64)> = vec![(u64::MAX, 0); states as usize];
    let mut queue = VecDeque::new();

    let mut violation: Option<u64> = None;
    for s in 0..states {
        if eval_init(sys, s) && visited.set(s) {
            queue.push_back(s);
            if !eval_property(sys, s) {
                violation = Some(s);
                break;
            }
        }
    }
    while violation.is_none() {
        let Some(s) = queue.pop_front() else { break };
        for inp in 0..1u64 << inputs {
            let next = sys.logic().step_bits(s, inp);
            if visited.set(next) {
                parent[next as usize] = (s, inp);
                if !eval_property(sys, next) {
                    violation = Some(next);
                    break;
                }
                queue.push_back(next);
            }
        }
    }

    match violation {
        Some(bad) => {
            // walk parents back to an initial state
            let mut rev = vec![(bad, 0u64)];
            let mut cursor = bad;
            while parent[cursor as usize].0 != u64::MAX {
                let (p, inp) = parent[cursor as usize];
                rev.push((p, inp));
                cursor = p;
            }
            rev.reverse();
            let steps = rev
                .iter()
                .enumerate()
                .map(|(i, &(state, _))| {
                    let inputs_word = if i + 1 < rev.len() { rev[i + 1].1 } else { 0 };
                    TraceStep {
                        state: Assignment::from_bits(state, latches),
                        inputs: (0..inputs).map(|b| inputs_word >> b & 1 == 1).collect(),
                    }
                })
                .collect();
            Ok(Verdict::Unsafe(Trace { steps }))
        }
        None => {
            let mut blocking = Vec::new();
            for s in 0..states {
                if !visited.get(s) {
                    blocking.push(Assignment::from_bits(s, latches).to_cube().negate());
                }
            }
            Ok(Verdict::Safe(blocking))
        }
    }
}

/// The reachable state set as a sorted list of packed states.
pub fn bfs_reachable(sys: &TransitionSystem) -> Result<Vec<u64>, OracleError> {
    check_budget(sys)?;
    let latches = sys.latch_count();
    let inputs = sys.input_count();
    let states = 1u64 << latches;
    let mut visited = BitSet::new(states as usize);
    let mut queue = VecDeque::new();
    for s in 0..states {
        if eval_init(sys, s) && visited.set(s) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for inp in 0..1u64 << inputs {
            let next = sys.logic().step_bits(s, inp);
            if visited.set(next) {
                queue.push_back(next);
            }
        }
    }
    Ok((0..states).filter(|&s| visited.get(s)).collect())
}

/// Second, independently coded enumerator: depth-first with an explicit
/// stack and a byte-per-state visited table.
pub fn dfs_reachable(sys: &TransitionSystem) -> Result<Vec<u64>, OracleError> {
    check_budget(sys)?;
    let latches = sys.latch_count();
    let inputs = sys.input_count();
    let mut seen = vec![false; 1usize << latches];
    let mut stack: Vec<u64> = Vec::new();
    let mut state = 0u64;
    loop {
        if eval_init(sys, state) && !seen[state as usize] {
            seen[state as usize] = true;
            stack.push(state);
            while let Some(s) = stack.pop() {
                let mut inp = 1u64 << inputs;
                while inp > 0 {
                    inp -= 1;
                    let next = sys.logic().step_bits(s, inp);
                    if !seen[next as usize] {
                        seen[next as usize] = true;
                        stack.push(next);
                    }
                }
            }
        }
        state += 1;
        if state == 1u64 << latches {
            break;
        }
    }
    Ok(seen
        .iter()
        .enumerate()
        .filter_map(|(s, &v)| v.then_some(s as u64))
        .collect())
}

/// Is clause `c` inductive relative to `f`? That is: `I ⇒ c`, and every
/// transition out of a state satisfying `f ∧ c` lands in a state
/// satisfying `c`.
pub fn check_relative_induction(
    sys: &TransitionSystem,
    f: &[Clause],
    c: &Clause,
) -> Result<bool, OracleError> {
    check_budget(sys)?;
    let latches = sys.latch_count();
    let inputs = sys.input_count();
    let eval_c = |state: u64| c.eval(|v: Var| state >> (v.index() - 1) & 1 == 1);
    for s in 0..1u64 << latches {
        if eval_init(sys, s) && !eval_c(s) {
            return Ok(false);
        }
    }
    for s in 0..1u64 << latches {
        if !(eval_cnf_bits(f, s) && eval_c(s)) {
            continue;
        }
        for inp in 0..1u64 << inputs {
            if !eval_c(sys.logic().step_bits(s, inp)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is the clause set `f` inductive as a whole formula? That is: every
/// initial state satisfies `f`, and every transition out of an `f`-state
/// lands in an `f`-state.
pub fn check_inductive_formula(sys: &TransitionSystem, f: &[Clause]) -> Result<bool, OracleError> {
    check_budget(sys)?;
    let latches = sys.latch_count();
    let inputs = sys.input_count();
    for s in 0..1u64 << latches {
        if eval_init(sys, s) && !eval_cnf_bits(f, s) {
            return Ok(false);
        }
    }
    for s in 0..1u64 << latches {
        if !eval_cnf_bits(f, s) {
            continue;
        }
        for inp in 0..1u64 << inputs {
            if !eval_cnf_bits(f, sys.logic().step_bits(s, inp)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is `c` a minimal relatively inductive clause? True iff no strict
/// subclause (including the empty one) passes `check_relative_induction`.
pub fn minimality_check(
    sys: &TransitionSystem,
    f: &[Clause],
    c: &Clause,
) -> Result<bool, OracleError> {
    if c.len() > 16 {
        return Err(OracleError::ClauseBudget(c.len()));
    }
    check_budget(sys)?;
    let lits: Vec<Lit> = c.lits().to_vec();
    let n = lits.len() as u32;
    for mask in 0..(1u32 << n) - 1 {
        let sub: Vec<Lit> = lits
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| (mask >> i & 1 == 1).then_some(l))
            .collect();
        let sub = Clause::from_sorted(sub);
        if check_relative_induction(sys, f, &sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::system::LogicGraph;
    use crate::types::Cnf;

    #[test]
    fn toy7_reachable_set_is_the_four_expected_states() {
        let sys = fixtures::toy7();
        let verdict = bfs_verdict(&sys).unwrap();
        assert!(verdict.is_safe());
        let reach = bfs_reachable(&sys).unwrap();
        assert_eq!(reach.len(), 4);
        for &s in &reach {
            let a = Assignment::from_bits(s, 7);
            // x, y, z always hold
            assert!(a.get(2) && a.get(5) && a.get(6));
        }
    }

    #[test]
    fn toggler_gives_shortest_two_state_trace() {
        let sys = fixtures::toggler();
        match bfs_verdict(&sys).unwrap() {
            Verdict::Unsafe(trace) => {
                assert_eq!(trace.len(), 2);
                assert!(sys.holds_init(&trace.steps[0].state));
                assert!(!sys.holds_property(&trace.steps[1].state));
            }
            Verdict::Safe(_) => panic!("toggler is unsafe"),
        }
    }

    #[test]
    fn bfs_and_dfs_enumerators_agree() {
        for sys in [
            fixtures::toy7(),
            fixtures::stuck_true(),
            fixtures::toggler(),
        ] {
            assert_eq!(bfs_reachable(&sys).unwrap(), dfs_reachable(&sys).unwrap());
        }
    }

    #[test]
    fn enumerators_agree_on_random_systems() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xD1F5);
        for round in 0..60 {
            let sys = if round % 2 == 0 {
                crate::randgen::random_system(&mut rng, 8, 3)
            } else {
                crate::randgen::chained_system(&mut rng, 8, 3)
            };
            assert_eq!(
                bfs_reachable(&sys).unwrap(),
                dfs_reachable(&sys).unwrap(),
                "round {round}"
            );
        }
    }

    #[test]
    fn relative_induction_examples() {
        let sys = fixtures::toy7();
        // c1 is inductive relative to F1 = z
        let f1: Cnf = sys.property().clone();
        assert!(check_relative_induction(&sys, &f1, &fixtures::c1()).unwrap());
        // the empty clause is inductive iff I is unsatisfiable
        assert!(!check_relative_induction(&sys, &f1, &Clause::empty()).unwrap());
        let mut g = LogicGraph::new(1, 0);
        let l = g.latch(0);
        g.set_next(0, l).unwrap();
        let unsat_init = TransitionSystem::from_logic(
            g,
            vec![
                Clause::unit(Lit::from_dimacs(1)),
                Clause::unit(Lit::from_dimacs(-1)),
            ],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(check_relative_induction(&unsat_init, &[], &Clause::empty()).unwrap());
    }

    #[test]
    fn minimality_examples() {
        let sys = fixtures::toy7();
        let f1: Cnf = sys.property().clone();
        // a unit clause is trivially minimal (on a satisfiable I)
        assert!(minimality_check(&sys, &f1, &fixtures::c6()).unwrap());
        // c1 = x0 ∨ x is minimal relative to F1: neither unit survives
        assert!(minimality_check(&sys, &f1, &fixtures::c1()).unwrap());
    }

    #[test]
    fn budget_violations_are_hard_errors() {
        let mut g = LogicGraph::new(30, 0);
        for i in 0..30 {
            let l = g.latch(i);
            g.set_next(i, l).unwrap();
        }
        let sys = TransitionSystem::from_logic(g, vec![], vec![], vec![]).unwrap();
        assert_eq!(bfs_verdict(&sys), Err(OracleError::Budget(30)));
        assert!(dfs_reachable(&sys).is_err());
        let wide = Clause::new((1..=20).map(Lit::from_dimacs).collect()).unwrap();
        assert_eq!(
            minimality_check(&fixtures::toy7(), &[], &wide),
            Err(OracleError::ClauseBudget(20))
        );
    }

    #[test]
    fn oracle_strengthening_is_inductive() {
        let sys = fixtures::toy7();
        let Verdict::Safe(blocking) = bfs_verdict(&sys).unwrap() else {
            panic!("toy7 is safe");
        };
        // every blocking clause is itself inductive relative to the set
        for c in &blocking {
            assert!(check_relative_induction(&sys, &blocking, c).unwrap());
        }
    }
}
