//! A SAT-based symbolic safety model checker.
//!
//! Given a finite transition system (an AIGER circuit or the textual
//! fixture format) and a safety property, the engine either produces an
//! inductive strengthening proving the property invariant, or a replayable
//! counterexample trace. Proof search works over a sequence of reachability
//! over-approximations `F_0 … F_k`, generalizing every property-violating
//! predecessor at the highest frame its negation is inductive relative to,
//! and pushing the generalization forward through proof obligations.
//!
//! Layering, bottom up: [`types`] is the propositional vocabulary,
//! [`system`] the transition-system representation (functional view plus
//! Tseitin CNF), [`sat`] the incremental CDCL solver, [`frames`] the
//! over-approximation sequence and its queries, [`engine`] the search
//! itself. [`aiger`] and [`sysfile`] are the input frontends, [`certify`]
//! emits and independently checks certificates, and [`oracle`] plus
//! [`randgen`] supply explicit-state ground truth for differential testing.
//!
//! ```
//! use relic_mc::{certify, prove, sysfile, EngineConfig, Verdict};
//!
//! // a latch that must stay high but flips every step
//! let sys = sysfile::parse_sys(
//!     "relic-sys 1\nlatches 1\ninputs 0\ngates 0\ninit 1\nnext 1 -1\nprop 1\n",
//! )
//! .unwrap();
//! let outcome = prove(&sys, &EngineConfig::default()).outcome();
//! match &outcome.verdict {
//!     Verdict::Unsafe(trace) => {
//!         assert_eq!(trace.len(), 2);
//!         assert!(certify::replay_trace(&sys, trace));
//!     }
//!     Verdict::Safe(_) => unreachable!("the property fails after one step"),
//! }
//! ```

pub mod aiger;
pub mod certify;
pub mod engine;
pub mod fixtures;
pub mod frames;
pub mod oracle;
pub mod randgen;
pub mod report;
pub mod sat;
pub mod sysfile;
pub mod system;
pub mod types;
pub mod verdict;

pub use engine::{prove, EngineConfig, ProveOutcome, ProveResult, RunStats};
pub use frames::LimitKind;
pub use system::TransitionSystem;
pub use types::{Assignment, Clause, Cube, Lit, Var};
pub use verdict::{Trace, TraceStep, Verdict};
