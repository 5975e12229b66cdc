//! The textual system format used by fixtures (`.sys`).
//!
//! Node ids share one numbering: latches `1..=L`, inputs `L+1..=L+M`, gates
//! `L+M+1..=L+M+G`. Signals are signed ids (negative = inverted) or the
//! constants `c0`/`c1`. Property and initial-condition clauses use the
//! core textual literal form over latch ids.
//!
//! ```text
//! relic-sys 1
//! latches 7
//! inputs 0
//! gates 5
//! init 1            # one clause per line
//! gate 8 -1 -2      # gate 8 = ¬1 ∧ ¬2
//! next 1 -1
//! prop 7            # one property clause per line
//! invariant -3      # optional literal invariants
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::system::{LogicGraph, Signal, TransitionSystem};
use crate::types::{Clause, Cnf, Lit};

const MAGIC: &str = "relic-sys 1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SysParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
}

fn fail(line: usize, msg: impl Into<String>) -> SysParseError {
    SysParseError::Line {
        line: line + 1,
        msg: msg.into(),
    }
}

struct SignalSpace {
    latches: u32,
    inputs: u32,
    gates: u32,
}

impl SignalSpace {
    /// Resolve a textual signal against the declared node space; gates are
    /// only visible up to `gates_defined`.
    fn resolve(
        &self,
        graph: &LogicGraph,
        gates_defined: u32,
        token: &str,
        line: usize,
    ) -> Result<Signal, SysParseError> {
        match token {
            "c0" => return Ok(Signal::FALSE),
            "c1" => return Ok(Signal::TRUE),
            _ => {}
        }
        let id: i64 = token
            .parse()
            .map_err(|_| fail(line, format!("bad signal `{token}`")))?;
        if id == 0 {
            return Err(fail(line, "signal 0 is reserved"));
        }
        let node = id.unsigned_abs() as u32;
        let base = if node <= self.latches {
            graph.latch(node - 1)
        } else if node <= self.latches + self.inputs {
            graph.input(node - 1 - self.latches)
        } else if node <= self.latches + self.inputs + gates_defined {
            graph.gate(node - 1 - self.latches - self.inputs)
        } else {
            return Err(fail(
                line,
                format!("signal {node} is not defined at this point"),
            ));
        };
        Ok(if id < 0 { !base } else { base })
    }
}

pub fn parse_sys(text: &str) -> Result<TransitionSystem, SysParseError> {
    let mut lines = text.lines().enumerate();
    let (_, magic) = lines.next().ok_or_else(|| fail(0, "empty file"))?;
    if magic.trim() != MAGIC {
        return Err(fail(0, format!("expected `{MAGIC}` header")));
    }
    let mut space: Option<SignalSpace> = None;
    let mut counts = [None::<u32>; 3];
    let mut graph: Option<LogicGraph> = None;
    let mut gates_defined = 0u32;
    let mut init = Cnf::new();
    let mut property = Cnf::new();
    let mut invariants: Vec<Lit> = Vec::new();
    let mut next_seen = Vec::new();

    for (n, raw) in lines {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let header_slot = match key {
            "latches" => Some(0),
            "inputs" => Some(1),
            "gates" => Some(2),
            _ => None,
        };
        if let Some(slot) = header_slot {
            if graph.is_some() {
                return Err(fail(n, "header lines must come first"));
            }
            let value: u32 = rest
                .trim()
                .parse()
                .map_err(|_| fail(n, format!("bad count `{rest}`")))?;
            counts[slot] = Some(value);
            if counts.iter().all(Option::is_some) {
                let (l, i) = (counts[0].unwrap(), counts[1].unwrap());
                graph = Some(LogicGraph::new(l, i));
                next_seen = vec![false; l as usize];
                space = Some(SignalSpace {
                    latches: l,
                    inputs: i,
                    gates: counts[2].unwrap(),
                });
            }
            continue;
        }
        let (Some(space), Some(graph)) = (space.as_ref(), graph.as_mut()) else {
            return Err(fail(n, "latches/inputs/gates must be declared first"));
        };
        let latch_lits = |text: &str, line: usize| -> Result<Clause, SysParseError> {
            let c = Clause::parse(text).map_err(|e| fail(line, e))?;
            for l in c.lits() {
                if l.var().index() > space.latches {
                    return Err(fail(line, format!("literal {l} is not over a latch")));
                }
            }
            Ok(c)
        };
        match key {
            "init" => init.push(latch_lits(rest, n)?),
            "prop" => property.push(latch_lits(rest, n)?),
            "invariant" => {
                let c = latch_lits(rest, n)?;
                if c.len() != 1 {
                    return Err(fail(n, "invariant lines carry exactly one literal"));
                }
                invariants.push(c.lits()[0]);
            }
            "gate" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [id, a, b] = toks[..] else {
                    return Err(fail(n, "gate lines are `gate <id> <a> <b>`"));
                };
                let expected = space.latches + space.inputs + gates_defined + 1;
                if id.parse::<u32>() != Ok(expected) {
                    return Err(fail(
                        n,
                        format!("gate ids are sequential; expected {expected}"),
                    ));
                }
                if gates_defined == space.gates {
                    return Err(fail(n, "more gates than declared"));
                }
                let sa = space.resolve(graph, gates_defined, a, n)?;
                let sb = space.resolve(graph, gates_defined, b, n)?;
                graph.add_gate(sa, sb).map_err(|e| fail(n, e.to_string()))?;
                gates_defined += 1;
            }
            "next" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [latch, signal] = toks[..] else {
                    return Err(fail(n, "next lines are `next <latch> <signal>`"));
                };
                let idx: u32 = latch
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= space.latches)
                    .ok_or_else(|| fail(n, format!("bad latch id `{latch}`")))?;
                let s = space.resolve(graph, gates_defined, signal, n)?;
                graph
                    .set_next(idx - 1, s)
                    .map_err(|e| fail(n, e.to_string()))?;
                next_seen[idx as usize - 1] = true;
            }
            other => return Err(fail(n, format!("unknown record `{other}`"))),
        }
    }

    let space = space.ok_or(SysParseError::Missing("latches/inputs/gates"))?;
    let graph = graph.expect("space implies graph");
    if gates_defined != space.gates {
        return Err(SysParseError::Missing("gate"));
    }
    if let Some(missing) = next_seen.iter().position(|&b| !b) {
        return Err(fail(0, format!("latch {} has no next line", missing + 1)));
    }
    TransitionSystem::from_logic(graph, init, property, invariants)
        .map_err(|e| fail(0, e.to_string()))
}

fn signal_text(sys: &TransitionSystem, s: Signal) -> String {
    if s == Signal::FALSE {
        return "c0".into();
    }
    if s == Signal::TRUE {
        return "c1".into();
    }
    // invert the system's signal → literal mapping back to the shared id
    let lit = sys.signal_lit(s).expect("non-constant");
    let var = lit.var().index();
    let latches = sys.latch_count() as u32;
    let inputs = sys.input_count() as u32;
    let id = if var <= latches + inputs {
        var
    } else {
        var - latches // gate aux vars sit above the primed latches
    };
    if lit.is_positive() {
        id.to_string()
    } else {
        format!("-{id}")
    }
}

pub fn write_sys(sys: &TransitionSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "latches {}", sys.latch_count());
    let _ = writeln!(out, "inputs {}", sys.input_count());
    let _ = writeln!(out, "gates {}", sys.logic().gate_count());
    for c in sys.init() {
        let _ = writeln!(out, "init {}", c.to_text());
    }
    for (g, &(a, b)) in sys.logic().gates().iter().enumerate() {
        let id = sys.latch_count() + sys.input_count() + g + 1;
        let _ = writeln!(
            out,
            "gate {} {} {}",
            id,
            signal_text(sys, a),
            signal_text(sys, b)
        );
    }
    for i in 0..sys.latch_count() {
        let _ = writeln!(
            out,
            "next {} {}",
            i + 1,
            signal_text(sys, sys.logic().next(i as u32))
        );
    }
    for c in sys.property() {
        let _ = writeln!(out, "prop {}", c.to_text());
    }
    for &l in sys.invariant_lits() {
        let _ = writeln!(out, "invariant {l}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn toy7_fixture_file_matches_programmatic_system() {
        let text = include_str!("../fixtures/toy7.sys");
        let parsed = parse_sys(text).unwrap();
        let built = fixtures::toy7();
        assert_eq!(parsed.fingerprint(), built.fingerprint());
    }

    #[test]
    fn write_parse_round_trip() {
        for sys in [
            fixtures::toy7(),
            fixtures::toggler(),
            fixtures::stuck_true(),
        ] {
            let text = write_sys(&sys);
            let back = parse_sys(&text).unwrap();
            assert_eq!(back.fingerprint(), sys.fingerprint());
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_sys("nope\n").is_err());
        // missing next line
        let text = "relic-sys 1\nlatches 1\ninputs 0\ngates 0\nprop 1\n";
        assert!(matches!(parse_sys(text), Err(SysParseError::Line { .. })));
        // out-of-order gate ids
        let text = "relic-sys 1\nlatches 1\ninputs 0\ngates 2\ngate 3 1 1\n";
        assert!(parse_sys(text).is_err());
        // property over a non-latch
        let text = "relic-sys 1\nlatches 1\ninputs 1\ngates 0\nnext 1 1\nprop 2\n";
        assert!(parse_sys(text).is_err());
        // forward gate reference
        let text = "relic-sys 1\nlatches 1\ninputs 0\ngates 1\ngate 2 3 1\nnext 1 1\n";
        assert!(parse_sys(text).is_err());
    }
}
