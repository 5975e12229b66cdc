//! Hand-built systems used across the test suite.
//!
//! `toy7` is the seven-latch system whose run is traced step by step in the
//! golden tests: latches `x0 x1 x y0 y1 y z` are variables 1–7, the initial
//! condition is `x0 ∧ ¬x1 ∧ x ∧ (y0 = ¬y1) ∧ y ∧ z`, the update functions
//! are
//!
//! ```text
//!   x0' = ¬x0        y0' = x ∧ ¬y0     z' = x ∧ y
//!   x1' = ¬x1        y1' = x ∧ ¬y1
//!   x'  = x0 ∨ x1    y'  = y0 ∨ y1
//! ```
//!
//! and the property is `z`. Its only inductive strengthening of `z` is
//! `x0 = ¬x1 ∧ x ∧ y0 = ¬y1 ∧ y ∧ z`.

use crate::system::{LogicGraph, TransitionSystem};
use crate::types::{Clause, Cnf, Cube, Lit};

fn clause(vs: &[i64]) -> Clause {
    Clause::new(vs.iter().map(|&v| Lit::from_dimacs(v)).collect()).unwrap()
}

fn cube(vs: &[i64]) -> Cube {
    Cube::new(vs.iter().map(|&v| Lit::from_dimacs(v)).collect()).unwrap()
}

pub fn toy7() -> TransitionSystem {
    let mut g = LogicGraph::new(7, 0);
    let [x0, x1, x, y0, y1, y, _z] = [0, 1, 2, 3, 4, 5, 6].map(|i| g.latch(i));
    let or_x = g.add_gate(!x0, !x1).unwrap(); // ¬(x0 ∨ x1)
    let and_y0 = g.add_gate(x, !y0).unwrap();
    let and_y1 = g.add_gate(x, !y1).unwrap();
    let or_y = g.add_gate(!y0, !y1).unwrap(); // ¬(y0 ∨ y1)
    let and_z = g.add_gate(x, y).unwrap();
    g.set_next(0, !x0).unwrap();
    g.set_next(1, !x1).unwrap();
    g.set_next(2, !or_x).unwrap();
    g.set_next(3, and_y0).unwrap();
    g.set_next(4, and_y1).unwrap();
    g.set_next(5, !or_y).unwrap();
    g.set_next(6, and_z).unwrap();
    let init = vec![
        clause(&[1]),
        clause(&[-2]),
        clause(&[3]),
        clause(&[4, 5]),
        clause(&[-4, -5]),
        clause(&[6]),
        clause(&[7]),
    ];
    let property = vec![clause(&[7])];
    TransitionSystem::from_logic(g, init, property, vec![]).unwrap()
}

/// The strengthening toy7 converges to, conjoined with `P`:
/// `x0 = ¬x1 ∧ x ∧ y0 = ¬y1 ∧ y ∧ z`.
pub fn toy7_expected_invariant() -> Cnf {
    vec![
        clause(&[1, 2]),
        clause(&[-1, -2]),
        clause(&[3]),
        clause(&[4, 5]),
        clause(&[-4, -5]),
        clause(&[6]),
        clause(&[7]),
    ]
}

// The ¬P-predecessors and generalization clauses of toy7's worked run.

pub fn s1() -> Cube {
    cube(&[-1, -2, -3, -4, -5, -6, 7])
}

pub fn s2() -> Cube {
    cube(&[1, -2, -3, -4, -5, -6, 7])
}

pub fn s3() -> Cube {
    cube(&[1, 2, -3, 4, 5, -6, 7])
}

pub fn s4() -> Cube {
    cube(&[-1, -2, 3, -4, -5, 6, 7])
}

pub fn s5() -> Cube {
    cube(&[1, 2, 3, 4, 5, 6, 7])
}

pub fn s6() -> Cube {
    cube(&[1, -2, -3, 4, 5, -6, 7])
}

pub fn c1() -> Clause {
    clause(&[1, 3])
}

pub fn c2() -> Clause {
    clause(&[2, 3])
}

pub fn c3() -> Clause {
    clause(&[-4, 6])
}

pub fn c4() -> Clause {
    clause(&[1, 2])
}

pub fn c5() -> Clause {
    clause(&[-1, -2])
}

pub fn c6() -> Clause {
    clause(&[3])
}

/// One latch stuck at 1; `P` is the latch. `P` is inductive on its own.
pub fn stuck_true() -> TransitionSystem {
    let mut g = LogicGraph::new(1, 0);
    let l = g.latch(0);
    g.set_next(0, l).unwrap();
    TransitionSystem::from_logic(g, vec![clause(&[1])], vec![clause(&[1])], vec![]).unwrap()
}

/// One latch that flips every step, starting true; `P` is the latch, so
/// the property fails after one step.
pub fn toggler() -> TransitionSystem {
    let mut g = LogicGraph::new(1, 0);
    let l = g.latch(0);
    g.set_next(0, !l).unwrap();
    TransitionSystem::from_logic(g, vec![clause(&[1])], vec![clause(&[1])], vec![]).unwrap()
}

/// Initial condition already violates `P`.
pub fn broken_at_reset() -> TransitionSystem {
    let mut g = LogicGraph::new(1, 0);
    let l = g.latch(0);
    g.set_next(0, l).unwrap();
    TransitionSystem::from_logic(g, vec![clause(&[-1])], vec![clause(&[1])], vec![]).unwrap()
}

/// AIGER twin of toy7's transition relation, used for encoder differential
/// tests. Reset values pick one of toy7's two initial states; only the
/// transition structure is compared against the hand-built system.
pub const TOY7_TWIN_AAG: &str = include_str!("../fixtures/toy7_twin.aag");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Assignment;

    /// Transition rows derived by hand from the update functions.
    #[test]
    fn toy7_simulation_matches_hand_rows() {
        let sys = toy7();
        let rows: &[(u64, u64)] = &[
            // (1,0,1,1,0,1,1) -> (0,1,1,0,1,1,1)
            (0b1101101, 0b1110110),
            // (0,1,1,0,1,1,1) -> (1,0,1,1,0,1,1)
            (0b1110110, 0b1101101),
            // (1,0,1,0,1,1,1) -> (0,1,1,1,0,1,1)
            (0b1110101, 0b1101110),
            // all-false state: only x0' and x1' come up
            (0b0000000, 0b0000011),
        ];
        for &(from, to) in rows {
            assert_eq!(sys.logic().step_bits(from, 0), to, "from {from:b}");
        }
    }

    #[test]
    fn toy7_initial_states_are_exactly_two() {
        let sys = toy7();
        let inits: Vec<u64> = (0u64..128)
            .filter(|&s| sys.holds_init(&Assignment::from_bits(s, 7)))
            .collect();
        assert_eq!(inits.len(), 2);
        for s in inits {
            let a = Assignment::from_bits(s, 7);
            assert!(a.get(0) && !a.get(1) && a.get(2) && a.get(5) && a.get(6));
            assert_ne!(a.get(3), a.get(4));
        }
    }

    #[test]
    fn paper_cubes_relate_as_stated() {
        // negate(s1) contains c1
        assert!(c1().subsumes(&s1().negate()));
        // priming s1's negation yields a clause over seven primed literals
        let sys = toy7();
        let primed = sys.prime_clause(&s1().negate()).unwrap();
        assert_eq!(primed.len(), 7);
        assert!(primed.lits().iter().all(|l| l.var().index() > 7));
        // c6 subsumes c1
        assert!(c6().subsumes(&c1()));
    }
}
