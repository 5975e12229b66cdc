//! Propositional vocabulary: variables, literals, cubes, clauses, and
//! assignments.
//!
//! Everything downstream (frames, the engine, certificates) speaks in terms
//! of these types. Cubes and clauses are canonical sorted literal vectors so
//! that equal literal sets compare and hash equal, subsumption is a linear
//! merge walk, and iteration order is deterministic across runs.

use std::fmt;

use thiserror::Error;

/// A propositional variable, identified by a positive index.
///
/// Index 0 is reserved (it would collide with the sign-less `0` of the
/// textual form), so constructors take 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Var {
        assert!(index > 0, "variable indices are positive");
        Var(index)
    }

    /// 1-based index, as used in the textual form and by the solver.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable or its negation, packed as `index << 1 | negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    /// Parses the signed-integer form: `3` is variable 3, `-3` its negation.
    pub fn from_dimacs(value: i64) -> Lit {
        assert!(value != 0, "literal 0 is reserved");
        Lit::new(Var::new(value.unsigned_abs() as u32), value > 0)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Signed-integer form used in proof and trace files.
    #[inline]
    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.0 >> 1);
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    /// Dense code suitable for indexing per-literal tables.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Evaluate against a variable valuation.
    #[inline]
    pub fn eval(self, value_of: impl Fn(Var) -> bool) -> bool {
        value_of(self.var()) == self.is_positive()
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Error building a cube or clause from raw literals.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LitSetError {
    #[error("variable {0} occurs with both signs")]
    ComplementaryPair(Var),
}

/// Sorts by variable, rejects complementary pairs, drops duplicates.
fn canonicalize(mut lits: Vec<Lit>) -> Result<Vec<Lit>, LitSetError> {
    lits.sort_unstable();
    lits.dedup();
    for pair in lits.windows(2) {
        if pair[0].var() == pair[1].var() {
            return Err(LitSetError::ComplementaryPair(pair[0].var()));
        }
    }
    Ok(lits)
}

/// Is `a` a subset of `b`? Both must be canonical (sorted, unique vars).
fn subset(a: &[Lit], b: &[Lit]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

fn render_lits(lits: &[Lit]) -> String {
    let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

fn parse_lits(text: &str) -> Result<Vec<Lit>, String> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .ok()
                .filter(|v| *v != 0 && v.unsigned_abs() <= u64::from(u32::MAX >> 1))
                .map(Lit::from_dimacs)
                .ok_or_else(|| format!("bad literal token `{tok}`"))
        })
        .collect()
}

/// A conjunction of literals. States are full cubes over the latches.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cube {
    lits: Vec<Lit>,
}

impl Cube {
    pub fn new(lits: Vec<Lit>) -> Result<Cube, LitSetError> {
        Ok(Cube {
            lits: canonicalize(lits)?,
        })
    }

    /// From literals already known to be canonical (debug-checked).
    pub fn from_sorted(lits: Vec<Lit>) -> Cube {
        debug_assert!(canonicalize(lits.clone()).is_ok_and(|c| c == lits));
        Cube { lits }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    /// Literal-wise negation: `¬(a ∧ ¬b)` is `(¬a ∨ b)`.
    pub fn negate(&self) -> Clause {
        Clause {
            lits: self.lits.iter().map(|&l| !l).collect(),
        }
    }

    pub fn eval(&self, value_of: impl Fn(Var) -> bool) -> bool {
        self.lits.iter().all(|l| l.eval(&value_of))
    }

    pub fn to_text(&self) -> String {
        render_lits(&self.lits)
    }

    pub fn parse(text: &str) -> Result<Cube, String> {
        Cube::new(parse_lits(text)?).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A disjunction of literals; the negation of exactly one cube.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Result<Clause, LitSetError> {
        Ok(Clause {
            lits: canonicalize(lits)?,
        })
    }

    pub fn from_sorted(lits: Vec<Lit>) -> Clause {
        debug_assert!(canonicalize(lits.clone()).is_ok_and(|c| c == lits));
        Clause { lits }
    }

    /// The empty clause, i.e. `false`.
    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn unit(lit: Lit) -> Clause {
        Clause { lits: vec![lit] }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn negate(&self) -> Cube {
        Cube {
            lits: self.lits.iter().map(|&l| !l).collect(),
        }
    }

    /// Subsumption: `self` subsumes `other` iff its literals are a subset.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.lits.len() <= other.lits.len() && subset(&self.lits, &other.lits)
    }

    pub fn eval(&self, value_of: impl Fn(Var) -> bool) -> bool {
        self.lits.iter().any(|l| l.eval(&value_of))
    }

    pub fn to_text(&self) -> String {
        render_lits(&self.lits)
    }

    pub fn parse(text: &str) -> Result<Clause, String> {
        Clause::new(parse_lits(text)?).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A conjunction of clauses.
pub type Cnf = Vec<Clause>;

pub fn eval_cnf(cnf: &[Clause], value_of: impl Fn(Var) -> bool) -> bool {
    cnf.iter().all(|c| c.eval(&value_of))
}

/// A total valuation of the latch variables of one system.
///
/// Latches are assigned by position (latch 0 is solver variable 1); input
/// values live on trace steps, not here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    /// Decode the low `count` bits of a packed state word.
    pub fn from_bits(bits: u64, count: usize) -> Assignment {
        Assignment {
            values: (0..count).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    /// Build from a total cube over latch variables `1..=count`.
    pub fn from_cube(cube: &Cube, count: usize) -> Assignment {
        let mut values = vec![false; count];
        for lit in cube.lits() {
            let idx = lit.var().index() as usize - 1;
            assert!(idx < count, "cube variable outside latch range");
            values[idx] = lit.is_positive();
        }
        assert_eq!(cube.len(), count, "state cube must be total over latches");
        Assignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, latch: usize) -> bool {
        self.values[latch]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Valuation keyed by solver variable (latch i is variable i+1).
    pub fn value_of(&self, var: Var) -> bool {
        self.values[var.index() as usize - 1]
    }

    pub fn to_cube(&self) -> Cube {
        Cube {
            lits: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| Lit::new(Var::new(i as u32 + 1), v))
                .collect(),
        }
    }

    /// Pack into a state word, latch 0 in the lowest bit.
    pub fn to_bits(&self) -> u64 {
        assert!(self.values.len() <= 64);
        self.values
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &v)| acc | (u64::from(v) << i))
    }
}
