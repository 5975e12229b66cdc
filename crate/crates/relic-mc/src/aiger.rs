//! AIGER frontend: parse circuit files (ASCII `aag` and binary `aig`,
//! versions 1.0/1.9), reduce by cone of influence, extract structural
//! literal invariants, and encode into a `TransitionSystem`.
//!
//! Exactly one property per file is accepted: a single bad literal (1.9)
//! or a single output (1.0, interpreted as a bad signal). Justice, fairness
//! and constraint sections are rejected. When the property root is not a
//! latch literal or constant, a monitor latch is introduced whose next-state
//! function is the bad signal, shifting the violation by one step; this
//! keeps the encoded property a formula over latches only and preserves the
//! verdict.

use std::fmt;

use thiserror::Error;

use crate::system::{AigerSource, LogicGraph, Signal, TransitionSystem};
use crate::types::{Clause, Cnf, Lit};

/// Latch reset value: 0, 1, or unconstrained (`x`, AIGER 1.9).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reset {
    Zero,
    One,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AigLatch {
    /// Even AIGER literal naming the latch.
    pub lit: u32,
    /// Next-state AIGER literal.
    pub next: u32,
    pub reset: Reset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AigAnd {
    pub lhs: u32,
    pub rhs0: u32,
    pub rhs1: u32,
}

/// Parsed and-inverter-graph model, the carrier of `I`, `T` and `P`
/// before CNF encoding. Literals use the AIGER convention `2·var (+1 for
/// negation)`; literal 0 is constant false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AigModel {
    pub max_index: u32,
    /// Even literals naming the inputs.
    pub inputs: Vec<u32>,
    pub latches: Vec<AigLatch>,
    pub outputs: Vec<u32>,
    pub bads: Vec<u32>,
    pub ands: Vec<AigAnd>,
}

impl AigModel {
    /// The single property literal: the bad literal if present, else the
    /// output interpreted as a bad signal.
    pub fn property_lit(&self) -> u32 {
        *self
            .bads
            .first()
            .or_else(|| self.outputs.first())
            .expect("parser guarantees exactly one property")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AigerErrorKind {
    #[error("not an AIGER file (expected `aag` or `aig` magic)")]
    BadMagic,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("binary files require max index = inputs + latches + ands")]
    BadBinaryCounts,
    #[error("justice/fairness/constraint sections are not supported")]
    UnsupportedSection,
    #[error("expected exactly one output or bad property, found {0}")]
    PropertyCount(usize),
    #[error("malformed line: {0}")]
    BadLine(String),
    #[error("literal {0} out of range")]
    LiteralOutOfRange(u32),
    #[error("literal {0} must be even here")]
    OddDefinition(u32),
    #[error("variable {0} defined more than once")]
    Redefined(u32),
    #[error("variable {0} is referenced but never defined")]
    Undefined(u32),
    #[error("and-gate {0} must have its operands strictly below it")]
    NonMonotoneGate(u32),
    #[error("bad reset value {0} (want 0, 1, or the latch literal)")]
    BadReset(u32),
    #[error("unexpected end of file")]
    UnexpectedEof,
    #[error("declared index {0} exceeds the supported maximum")]
    TooLarge(u32),
    #[error("property is not a latch literal or constant; normalize first")]
    PropertyNotNormalized,
}

/// Largest accepted variable index; bounds every size-proportional
/// allocation the parser makes.
pub const MAX_VAR_INDEX: u32 = 1 << 24;

/// Parse error carrying the byte offset it was detected at.
#[derive(Debug, Error, PartialEq, Eq)]
pub struct AigerError {
    pub offset: usize,
    pub kind: AigerErrorKind,
}

impl fmt::Display for AigerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "byte {}: {}", self.offset, self.kind)
    }
}

fn err(offset: usize, kind: AigerErrorKind) -> AigerError {
    AigerError { offset, kind }
}

/// Reads `bytes` line by line, tracking byte offsets.
struct Lines<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Result<(usize, &'a str), AigerError> {
        if self.pos >= self.bytes.len() {
            return Err(err(self.pos, AigerErrorKind::UnexpectedEof));
        }
        let start = self.pos;
        let end = self.bytes[start..]
            .iter()
            .position(|&b| b == b'\n')
            .map(|i| start + i)
            .unwrap_or(self.bytes.len());
        self.pos = end + 1;
        let line = std::str::from_utf8(&self.bytes[start..end])
            .map_err(|_| err(start, AigerErrorKind::BadLine("not ASCII".into())))?;
        Ok((start, line.trim_end_matches('\r')))
    }
}

fn parse_nums(offset: usize, line: &str) -> Result<Vec<u32>, AigerError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>().map_err(|_| {
                err(
                    offset,
                    AigerErrorKind::BadLine(format!("bad number `{tok}`")),
                )
            })
        })
        .collect()
}

struct Header {
    binary: bool,
    m: u32,
    i: u32,
    l: u32,
    o: u32,
    a: u32,
    b: u32,
}

fn parse_header(offset: usize, line: &str) -> Result<Header, AigerError> {
    let mut toks = line.split_whitespace();
    let magic = toks
        .next()
        .ok_or_else(|| err(offset, AigerErrorKind::BadMagic))?;
    let binary = match magic {
        "aag" => false,
        "aig" => true,
        _ => return Err(err(offset, AigerErrorKind::BadMagic)),
    };
    let rest: Vec<&str> = toks.collect();
    if rest.len() < 5 || rest.len() > 9 {
        return Err(err(offset, AigerErrorKind::BadHeader(line.to_string())));
    }
    let nums = parse_nums(offset, &rest.join(" "))?;
    let get = |i: usize| nums.get(i).copied().unwrap_or(0);
    let header = Header {
        binary,
        m: get(0),
        i: get(1),
        l: get(2),
        o: get(3),
        a: get(4),
        b: get(5),
    };
    // cap the declared sizes before anything allocates proportionally to
    // them; 2^24 variables is far beyond this tool's working range
    if header.m > MAX_VAR_INDEX {
        return Err(err(offset, AigerErrorKind::TooLarge(header.m)));
    }
    for count in [header.i, header.l, header.o, header.a, header.b] {
        if count > header.m.max(1) {
            return Err(err(offset, AigerErrorKind::BadHeader(line.to_string())));
        }
    }
    // c, j, f counts
    if get(6) != 0 || get(7) != 0 || get(8) != 0 {
        return Err(err(offset, AigerErrorKind::UnsupportedSection));
    }
    let properties = header.o as usize + header.b as usize;
    if properties != 1 {
        return Err(err(offset, AigerErrorKind::PropertyCount(properties)));
    }
    Ok(header)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Def {
    Input,
    Latch,
    Gate,
}

/// Validates variable definitions and references over a whole model.
struct DefTable {
    defs: Vec<Option<Def>>,
}

impl DefTable {
    fn new(max_index: u32) -> DefTable {
        DefTable {
            defs: vec![None; max_index as usize + 1],
        }
    }

    fn define(&mut self, offset: usize, lit: u32, what: Def) -> Result<(), AigerError> {
        if lit & 1 == 1 {
            return Err(err(offset, AigerErrorKind::OddDefinition(lit)));
        }
        let var = (lit >> 1) as usize;
        if var == 0 || var >= self.defs.len() {
            return Err(err(offset, AigerErrorKind::LiteralOutOfRange(lit)));
        }
        if self.defs[var].is_some() {
            return Err(err(offset, AigerErrorKind::Redefined(var as u32)));
        }
        self.defs[var] = Some(what);
        Ok(())
    }

    fn reference(&self, offset: usize, lit: u32) -> Result<(), AigerError> {
        let var = (lit >> 1) as usize;
        if var >= self.defs.len() {
            return Err(err(offset, AigerErrorKind::LiteralOutOfRange(lit)));
        }
        if var != 0 && self.defs[var].is_none() {
            return Err(err(offset, AigerErrorKind::Undefined(var as u32)));
        }
        Ok(())
    }
}

/// Parse an AIGER file, ASCII or binary, returning a structurally valid
/// model with exactly one property.
pub fn parse_aiger(bytes: &[u8]) -> Result<AigModel, AigerError> {
    let mut lines = Lines { bytes, pos: 0 };
    let (h_off, h_line) = lines.next_line()?;
    let header = parse_header(h_off, h_line)?;
    if header.binary {
        parse_binary(bytes, lines, header)
    } else {
        parse_ascii(lines, header)
    }
}

fn parse_latch_line(
    offset: usize,
    nums: &[u32],
    lit: u32,
    next: u32,
) -> Result<AigLatch, AigerError> {
    let reset = match nums.last() {
        _ if nums.len() == 2 => Reset::Zero,
        Some(&0) => Reset::Zero,
        Some(&1) => Reset::One,
        Some(&r) if r == lit => Reset::Free,
        Some(&r) => return Err(err(offset, AigerErrorKind::BadReset(r))),
        None => unreachable!("caller checks arity"),
    };
    Ok(AigLatch { lit, next, reset })
}

fn parse_ascii(mut lines: Lines, h: Header) -> Result<AigModel, AigerError> {
    let mut model = AigModel {
        max_index: h.m,
        inputs: Vec::with_capacity(h.i as usize),
        latches: Vec::with_capacity(h.l as usize),
        outputs: Vec::new(),
        bads: Vec::new(),
        ands: Vec::with_capacity(h.a as usize),
    };
    let mut table = DefTable::new(h.m);

    for _ in 0..h.i {
        let (off, line) = lines.next_line()?;
        let nums = parse_nums(off, line)?;
        let [lit] = nums[..] else {
            return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
        };
        table.define(off, lit, Def::Input)?;
        model.inputs.push(lit);
    }
    let mut latch_offsets = Vec::new();
    for _ in 0..h.l {
        let (off, line) = lines.next_line()?;
        let nums = parse_nums(off, line)?;
        if nums.len() != 2 && nums.len() != 3 {
            return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
        }
        table.define(off, nums[0], Def::Latch)?;
        model
            .latches
            .push(parse_latch_line(off, &nums, nums[0], nums[1])?);
        latch_offsets.push(off);
    }
    let single = |lines: &mut Lines| -> Result<(usize, u32), AigerError> {
        let (off, line) = lines.next_line()?;
        let nums = parse_nums(off, line)?;
        let [lit] = nums[..] else {
            return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
        };
        Ok((off, lit))
    };
    let mut prop_refs = Vec::new();
    for _ in 0..h.o {
        let (off, lit) = single(&mut lines)?;
        prop_refs.push((off, lit));
        model.outputs.push(lit);
    }
    for _ in 0..h.b {
        let (off, lit) = single(&mut lines)?;
        prop_refs.push((off, lit));
        model.bads.push(lit);
    }
    let mut and_offsets = Vec::new();
    for _ in 0..h.a {
        let (off, line) = lines.next_line()?;
        let nums = parse_nums(off, line)?;
        let [lhs, rhs0, rhs1] = nums[..] else {
            return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
        };
        table.define(off, lhs, Def::Gate)?;
        if lhs <= rhs0 || lhs <= rhs1 {
            return Err(err(off, AigerErrorKind::NonMonotoneGate(lhs)));
        }
        model.ands.push(AigAnd { lhs, rhs0, rhs1 });
        and_offsets.push(off);
    }
    // symbol table and comments are accepted and ignored
    validate_references(&model, &table, &prop_refs, &latch_offsets, &and_offsets)?;
    Ok(model)
}

fn validate_references(
    model: &AigModel,
    table: &DefTable,
    prop_refs: &[(usize, u32)],
    latch_offsets: &[usize],
    and_offsets: &[usize],
) -> Result<(), AigerError> {
    for (latch, &off) in model.latches.iter().zip(latch_offsets) {
        table.reference(off, latch.next)?;
    }
    for &(off, lit) in prop_refs {
        table.reference(off, lit)?;
    }
    for (and, &off) in model.ands.iter().zip(and_offsets) {
        table.reference(off, and.rhs0)?;
        table.reference(off, and.rhs1)?;
    }
    Ok(())
}

fn parse_binary(bytes: &[u8], mut lines: Lines, h: Header) -> Result<AigModel, AigerError> {
    if h.m != h.i + h.l + h.a {
        return Err(err(0, AigerErrorKind::BadBinaryCounts));
    }
    let mut model = AigModel {
        max_index: h.m,
        inputs: (0..h.i).map(|i| 2 * (i + 1)).collect(),
        latches: Vec::with_capacity(h.l as usize),
        outputs: Vec::new(),
        bads: Vec::new(),
        ands: Vec::with_capacity(h.a as usize),
    };
    for j in 0..h.l {
        let lit = 2 * (h.i + j + 1);
        let (off, line) = lines.next_line()?;
        let nums = parse_nums(off, line)?;
        if nums.is_empty() || nums.len() > 2 {
            return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
        }
        let next = nums[0];
        if next > 2 * h.m + 1 {
            return Err(err(off, AigerErrorKind::LiteralOutOfRange(next)));
        }
        let with_arity = [lit, next, *nums.last().unwrap()];
        let latch = if nums.len() == 2 {
            parse_latch_line(off, &with_arity, lit, next)?
        } else {
            AigLatch {
                lit,
                next,
                reset: Reset::Zero,
            }
        };
        model.latches.push(latch);
    }
    for target in [h.o, h.b] {
        for _ in 0..target {
            let (off, line) = lines.next_line()?;
            let nums = parse_nums(off, line)?;
            let [lit] = nums[..] else {
                return Err(err(off, AigerErrorKind::BadLine(line.to_string())));
            };
            if lit > 2 * h.m + 1 {
                return Err(err(off, AigerErrorKind::LiteralOutOfRange(lit)));
            }
            if model.outputs.len() < h.o as usize {
                model.outputs.push(lit);
            } else {
                model.bads.push(lit);
            }
        }
    }
    // delta-encoded gate section
    let mut pos = lines.pos;
    let varint = |pos: &mut usize| -> Result<u32, AigerError> {
        let mut value: u64 = 0;
        let mut shift = 0u32;
        loop {
            let &byte = bytes
                .get(*pos)
                .ok_or_else(|| err(bytes.len(), AigerErrorKind::UnexpectedEof))?;
            *pos += 1;
            value |= u64::from(byte & 0x7f) << shift;
            if value > u64::from(u32::MAX) || shift > 28 {
                return Err(err(*pos, AigerErrorKind::BadLine("varint overflow".into())));
            }
            if byte & 0x80 == 0 {
                return Ok(value as u32);
            }
            shift += 7;
        }
    };
    for g in 0..h.a {
        let lhs = 2 * (h.i + h.l + g + 1);
        let gate_off = pos;
        let delta0 = varint(&mut pos)?;
        let delta1 = varint(&mut pos)?;
        if delta0 == 0 || delta0 > lhs {
            return Err(err(gate_off, AigerErrorKind::NonMonotoneGate(lhs)));
        }
        let rhs0 = lhs - delta0;
        if delta1 > rhs0 {
            return Err(err(gate_off, AigerErrorKind::NonMonotoneGate(lhs)));
        }
        let rhs1 = rhs0 - delta1;
        model.ands.push(AigAnd { lhs, rhs0, rhs1 });
    }
    // trailing symbols/comments ignored
    Ok(model)
}

/// Debug serializer: the ASCII form of a model. Reset values print only
/// when they differ from the default 0.
pub fn write_ascii(model: &AigModel) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = write!(
        out,
        "aag {} {} {} {} {}",
        model.max_index,
        model.inputs.len(),
        model.latches.len(),
        model.outputs.len(),
        model.ands.len()
    );
    if model.bads.is_empty() {
        let _ = writeln!(out);
    } else {
        let _ = writeln!(out, " {}", model.bads.len());
    }
    for &i in &model.inputs {
        let _ = writeln!(out, "{i}");
    }
    for l in &model.latches {
        match l.reset {
            Reset::Zero => {
                let _ = writeln!(out, "{} {}", l.lit, l.next);
            }
            Reset::One => {
                let _ = writeln!(out, "{} {} 1", l.lit, l.next);
            }
            Reset::Free => {
                let _ = writeln!(out, "{} {} {}", l.lit, l.next, l.lit);
            }
        }
    }
    for &o in &model.outputs {
        let _ = writeln!(out, "{o}");
    }
    for &b in &model.bads {
        let _ = writeln!(out, "{b}");
    }
    for a in &model.ands {
        let _ = writeln!(out, "{} {} {}", a.lhs, a.rhs0, a.rhs1);
    }
    out
}

/// Rewrite the model so its property literal is a latch literal or a
/// constant, introducing a monitor latch over the bad signal if needed.
/// The monitor observes the bad function with a one-step delay, which
/// preserves the verdict (traces grow by one step).
pub fn normalize_property(model: &AigModel) -> AigModel {
    let prop = model.property_lit();
    let var = prop >> 1;
    let is_latch = model.latches.iter().any(|l| l.lit >> 1 == var);
    if var == 0 || is_latch {
        return model.clone();
    }
    let mut out = model.clone();
    out.max_index = model.max_index + 1;
    let monitor = 2 * out.max_index;
    out.latches.push(AigLatch {
        lit: monitor,
        next: prop,
        reset: Reset::Zero,
    });
    out.outputs.clear();
    out.bads = vec![monitor];
    out
}

/// Keep exactly the inputs, latches and gates the property transitively
/// depends on through the next-state functions. Verdict-preserving.
pub fn cone_of_influence(model: &AigModel) -> AigModel {
    let mut in_cone = vec![false; model.max_index as usize + 1];
    let mut next_of = vec![None; model.max_index as usize + 1];
    let mut gate_of: Vec<Option<&AigAnd>> = vec![None; model.max_index as usize + 1];
    for l in &model.latches {
        next_of[(l.lit >> 1) as usize] = Some(l.next);
    }
    for a in &model.ands {
        gate_of[(a.lhs >> 1) as usize] = Some(a);
    }
    let mut work = Vec::new();
    let root = model.property_lit() >> 1;
    if root != 0 {
        work.push(root);
        in_cone[root as usize] = true;
    }
    while let Some(var) = work.pop() {
        let visit = |lit: u32, work: &mut Vec<u32>, in_cone: &mut Vec<bool>| {
            let v = lit >> 1;
            if v != 0 && !in_cone[v as usize] {
                in_cone[v as usize] = true;
                work.push(v);
            }
        };
        if let Some(next) = next_of[var as usize] {
            visit(next, &mut work, &mut in_cone);
        } else if let Some(gate) = gate_of[var as usize] {
            visit(gate.rhs0, &mut work, &mut in_cone);
            visit(gate.rhs1, &mut work, &mut in_cone);
        }
    }
    AigModel {
        max_index: model.max_index,
        inputs: model
            .inputs
            .iter()
            .copied()
            .filter(|&l| in_cone[(l >> 1) as usize])
            .collect(),
        latches: model
            .latches
            .iter()
            .filter(|l| in_cone[(l.lit >> 1) as usize])
            .cloned()
            .collect(),
        outputs: model.outputs.clone(),
        bads: model.bads.clone(),
        ands: model
            .ands
            .iter()
            .filter(|a| in_cone[(a.lhs >> 1) as usize])
            .copied()
            .collect(),
    }
}

/// Latch literals that are invariant for structural reasons: the literal
/// holds initially and the latch's next-state function is syntactically the
/// latch itself or the matching constant (stuck-at detection).
pub fn extract_literal_invariants(model: &AigModel) -> Vec<u32> {
    let mut out = Vec::new();
    for l in &model.latches {
        let candidate = match (l.next, l.reset) {
            (0, Reset::Zero) => Some(l.lit | 1),
            (1, Reset::One) => Some(l.lit),
            (n, Reset::Zero) if n == l.lit => Some(l.lit | 1),
            (n, Reset::One) if n == l.lit => Some(l.lit),
            _ => None,
        };
        out.extend(candidate);
    }
    out
}

/// Encode a (normalized, usually cone-reduced) model into a transition
/// system: Tseitin CNF for `T`, reset literals for `I`, the property latch
/// literal for `P`, and the invariant literals conjoined into the base.
pub fn encode(model: &AigModel, invariants: &[u32]) -> Result<TransitionSystem, AigerError> {
    let latch_count = model.latches.len() as u32;
    let input_count = model.inputs.len() as u32;
    let mut graph = LogicGraph::new(latch_count, input_count);

    // var -> signal over the compacted node space
    let mut signal_of = vec![None; model.max_index as usize + 1];
    for (i, l) in model.latches.iter().enumerate() {
        signal_of[(l.lit >> 1) as usize] = Some(graph.latch(i as u32));
    }
    for (i, &lit) in model.inputs.iter().enumerate() {
        signal_of[(lit >> 1) as usize] = Some(graph.input(i as u32));
    }
    let resolve = |table: &[Option<Signal>], lit: u32| -> Result<Signal, AigerError> {
        if lit <= 1 {
            return Ok(if lit == 1 {
                Signal::TRUE
            } else {
                Signal::FALSE
            });
        }
        let base = table[(lit >> 1) as usize]
            .ok_or_else(|| err(0, AigerErrorKind::Undefined(lit >> 1)))?;
        Ok(if lit & 1 == 1 { !base } else { base })
    };

    let mut ands: Vec<&AigAnd> = model.ands.iter().collect();
    ands.sort_by_key(|a| a.lhs);
    for a in ands {
        let s0 = resolve(&signal_of, a.rhs0)?;
        let s1 = resolve(&signal_of, a.rhs1)?;
        let out = graph
            .add_gate(s0, s1)
            .map_err(|_| err(0, AigerErrorKind::NonMonotoneGate(a.lhs)))?;
        signal_of[(a.lhs >> 1) as usize] = Some(out);
    }
    for (i, l) in model.latches.iter().enumerate() {
        let next = resolve(&signal_of, l.next)?;
        graph
            .set_next(i as u32, next)
            .map_err(|_| err(0, AigerErrorKind::Undefined(l.next >> 1)))?;
    }

    let init: Cnf = model
        .latches
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match l.reset {
            Reset::Zero => Some(Clause::unit(Lit::new(
                crate::types::Var::new(i as u32 + 1),
                false,
            ))),
            Reset::One => Some(Clause::unit(Lit::new(
                crate::types::Var::new(i as u32 + 1),
                true,
            ))),
            Reset::Free => None,
        })
        .collect();

    let prop = model.property_lit();
    let property: Cnf = if prop == 0 {
        Vec::new() // bad never fires: P is true
    } else if prop == 1 {
        vec![Clause::empty()] // bad always fires: P is false
    } else {
        let latch_index = model
            .latches
            .iter()
            .position(|l| l.lit >> 1 == prop >> 1)
            .ok_or_else(|| err(0, AigerErrorKind::PropertyNotNormalized))?;
        let bad_lit = Lit::new(
            crate::types::Var::new(latch_index as u32 + 1),
            prop & 1 == 0,
        );
        vec![Clause::unit(!bad_lit)]
    };

    let invariant_lits = invariants
        .iter()
        .map(|&ilit| {
            let latch_index = model
                .latches
                .iter()
                .position(|l| l.lit >> 1 == ilit >> 1)
                .ok_or_else(|| err(0, AigerErrorKind::Undefined(ilit >> 1)))?;
            Ok(Lit::new(
                crate::types::Var::new(latch_index as u32 + 1),
                ilit & 1 == 0,
            ))
        })
        .collect::<Result<Vec<Lit>, AigerError>>()?;

    TransitionSystem::from_logic(graph, init, property, invariant_lits)
        .map_err(|_| err(0, AigerErrorKind::PropertyNotNormalized))
}

/// Full pipeline: normalize the property, reduce to the cone of influence,
/// extract literal invariants, encode, and record the mapping back to the
/// original file's latch and input positions.
pub fn build_system(model: &AigModel) -> Result<TransitionSystem, AigerError> {
    let normalized = normalize_property(model);
    let reduced = cone_of_influence(&normalized);
    let invariants = extract_literal_invariants(&reduced);
    let sys = encode(&reduced, &invariants)?;

    let original_latch_pos: std::collections::HashMap<u32, usize> = model
        .latches
        .iter()
        .enumerate()
        .map(|(i, l)| (l.lit >> 1, i))
        .collect();
    let original_input_pos: std::collections::HashMap<u32, usize> = model
        .inputs
        .iter()
        .enumerate()
        .map(|(i, &l)| (l >> 1, i))
        .collect();
    let source = AigerSource {
        orig_latches: model.latches.len(),
        orig_inputs: model.inputs.len(),
        latch_positions: reduced
            .latches
            .iter()
            .map(|l| original_latch_pos.get(&(l.lit >> 1)).copied())
            .collect(),
        input_positions: reduced
            .inputs
            .iter()
            .map(|&l| original_input_pos[&(l >> 1)])
            .collect(),
    };
    Ok(sys.with_source(source))
}
