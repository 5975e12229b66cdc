//! Random transition systems for differential testing.
//!
//! Systems are small enough for the explicit-state oracle, with random
//! and-inverter update logic. `mixed_suite` oracles every candidate and
//! keeps filling until both verdict classes are represented at the
//! requested ratio; a slice of candidates gets a property latch driven by
//! a buried constant-false gate tree, which leans the mix toward provable
//! instances without making them trivial for the engine.

use rand::prelude::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle;
use crate::system::{LogicGraph, Signal, TransitionSystem};
use crate::types::{Clause, Cnf, Lit, Var};

fn random_signal(rng: &mut ChaCha8Rng, g: &LogicGraph) -> Signal {
    let mut pool: Vec<Signal> = Vec::new();
    for i in 0..g.latch_count() {
        pool.push(g.latch(i));
    }
    for i in 0..g.input_count() {
        pool.push(g.input(i));
    }
    for i in 0..g.gate_count() {
        pool.push(g.gate(i));
    }
    let base = if pool.is_empty() || rng.random_bool(0.04) {
        Signal::FALSE
    } else {
        *pool.choose(rng).expect("nonempty pool")
    };
    if rng.random_bool(0.5) {
        !base
    } else {
        base
    }
}

/// One random system with at most `max_latches` latches and `max_inputs`
/// inputs. The initial state always satisfies the property (zero-step
/// violations teach nothing), and the property latch is sometimes driven by
/// a gate tree that is constant false without being syntactically so.
pub fn random_system(rng: &mut ChaCha8Rng, max_latches: u32, max_inputs: u32) -> TransitionSystem {
    let latches = rng.random_range(1..=max_latches);
    let inputs = rng.random_range(0..=max_inputs);
    let gates = rng.random_range(1..=3 * latches);
    let mut g = LogicGraph::new(latches, inputs);
    for _ in 0..gates {
        let a = random_signal(rng, &g);
        let b = random_signal(rng, &g);
        g.add_gate(a, b).expect("operands precede the gate");
    }
    let prop_latch = rng.random_range(0..latches);
    // P: the property latch must stay low (mostly) or high
    let prop_positive = rng.random_bool(0.3);
    let buried_false = rng.random_bool(0.2);
    for i in 0..latches {
        let next = if buried_false && i == prop_latch {
            // (a ∧ b) ∧ (¬a ∧ c): constant false, hidden behind structure
            let a = random_signal(rng, &g);
            let b = random_signal(rng, &g);
            let c = random_signal(rng, &g);
            let left = g.add_gate(a, b).expect("valid operands");
            let right = g.add_gate(!a, c).expect("valid operands");
            g.add_gate(left, right).expect("valid operands")
        } else {
            random_signal(rng, &g)
        };
        g.set_next(i, next).expect("valid signal");
    }
    let mut init = Cnf::new();
    for i in 0..latches {
        if i == prop_latch {
            init.push(Clause::unit(Lit::new(Var::new(i + 1), prop_positive)));
        } else if rng.random_bool(0.9) {
            init.push(Clause::unit(Lit::new(
                Var::new(i + 1),
                rng.random_bool(0.5),
            )));
        }
    }
    let property = vec![Clause::unit(Lit::new(
        Var::new(prop_latch + 1),
        prop_positive,
    ))];
    TransitionSystem::from_logic(g, init, property, vec![]).expect("well-formed by construction")
}

/// A ring of latches passing values around, each stage mixing in a little
/// combinational noise. Sequential depth makes the frontier climb, so these
/// are where most of the interesting generalization work happens.
pub fn chained_system(rng: &mut ChaCha8Rng, max_latches: u32, max_inputs: u32) -> TransitionSystem {
    let latches = rng.random_range(3..=max_latches.max(3));
    let inputs = rng.random_range(0..=max_inputs);
    let mut g = LogicGraph::new(latches, inputs);
    for i in 0..latches {
        let prev = g.latch((i + latches - 1) % latches);
        let prev = if rng.random_bool(0.2) { !prev } else { prev };
        let next = match rng.random_range(0..10) {
            0..=4 => prev,
            5..=7 => {
                let noise = random_signal(rng, &g);
                g.add_gate(prev, noise).expect("valid operands")
            }
            _ => {
                let noise = random_signal(rng, &g);
                // or-gate: ¬(¬prev ∧ ¬noise)
                !g.add_gate(!prev, !noise).expect("valid operands")
            }
        };
        g.set_next(i, next).expect("valid signal");
    }
    let prop_latch = rng.random_range(0..latches);
    let prop_positive = rng.random_bool(0.25);
    let mut init = Cnf::new();
    for i in 0..latches {
        let positive = if i == prop_latch {
            prop_positive
        } else {
            rng.random_bool(0.3)
        };
        init.push(Clause::unit(Lit::new(Var::new(i + 1), positive)));
    }
    let property = vec![Clause::unit(Lit::new(
        Var::new(prop_latch + 1),
        prop_positive,
    ))];
    TransitionSystem::from_logic(g, init, property, vec![]).expect("well-formed by construction")
}

/// A deterministic suite of `total` systems, oracled up front, with at
/// least `min_each` of both verdicts. The returned flag is the oracle's
/// is-safe answer.
pub fn mixed_suite(seed: u64, total: usize, min_each: usize) -> Vec<(TransitionSystem, bool)> {
    assert!(2 * min_each <= total);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = total - min_each;
    let mut out = Vec::with_capacity(total);
    let mut safe = 0usize;
    let mut unsafe_ = 0usize;
    let mut attempts = 0usize;
    while out.len() < total {
        attempts += 1;
        assert!(
            attempts <= 100 * total,
            "generator failed to reach the verdict mix ({safe} safe / {unsafe_} unsafe)"
        );
        let sys = if attempts.is_multiple_of(3) {
            random_system(&mut rng, 10, 4)
        } else {
            chained_system(&mut rng, 10, 4)
        };
        let is_safe = oracle::bfs_verdict(&sys)
            .expect("generated systems fit the budget")
            .is_safe();
        let bucket = if is_safe { &mut safe } else { &mut unsafe_ };
        if *bucket == cap {
            continue;
        }
        *bucket += 1;
        out.push((sys, is_safe));
    }
    assert!(safe >= min_each && unsafe_ >= min_each);
    out
}
