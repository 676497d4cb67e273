//! Array patterns: non-empty rectangular arrays of variables, always stored in
//! canonical form (reading row-major, the k-th distinct variable is `x<k>`).
//!
//! Two patterns are equivalent up to renaming exactly when their canonical
//! forms coincide, so equivalence is a plain equality test.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{parse_array, Array, GeomOp};

/// Largest pattern (in cells) [`enumerate_patterns`] accepts by default.
pub const DEFAULT_MAX_PATTERN_CELLS: usize = 12;

/// A variable `x<k>`, `k ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Result<Var> {
        if index == 0 {
            return Err(Error::Format("variable indices start at 1".into()));
        }
        Ok(Var(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let digits = s
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::Format(format!("{s:?} is not a variable x<k>")))?;
        let index = digits
            .parse::<u32>()
            .map_err(|_| Error::Format(format!("variable index out of range in {s:?}")))?;
        Var::new(index)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Array<Var>);

/// A parsed pattern together with whether the input was already canonical.
#[derive(Clone, Debug)]
pub struct ParsedPattern {
    pub pattern: Pattern,
    pub was_canonical: bool,
}

impl Pattern {
    /// Renames the variables of `raw` into first-occurrence order.
    pub fn canonicalize(raw: &Array<Var>) -> Result<Pattern> {
        if raw.is_empty() {
            return Err(Error::Format("patterns must be non-empty".into()));
        }
        let mut names: HashMap<Var, Var> = HashMap::new();
        let canonical = raw.map(|v| {
            let next = Var(names.len() as u32 + 1);
            *names.entry(*v).or_insert(next)
        });
        Ok(Pattern(canonical))
    }

    pub fn parse(text: &str) -> Result<ParsedPattern> {
        let raw = parse_array(text, false, Var::from_str)?;
        let pattern = Pattern::canonicalize(&raw)?;
        let was_canonical = pattern.0 == raw;
        Ok(ParsedPattern { pattern, was_canonical })
    }

    pub fn as_array(&self) -> &Array<Var> {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }

    /// Number of distinct variables; in canonical form these are `x1..=xk`.
    pub fn var_count(&self) -> usize {
        self.0.cells().iter().map(|v| v.0 as usize).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.cells().iter().copied().collect()
    }

    pub fn equivalent(&self, other: &Pattern) -> bool {
        self == other
    }

    pub fn transform(&self, op: GeomOp) -> Pattern {
        Pattern::canonicalize(&self.0.transform(op)).expect("transform keeps patterns non-empty")
    }
}

/// Equivalence up to renaming on raw variable arrays.
pub fn equivalent_raw(p: &Array<Var>, q: &Array<Var>) -> bool {
    match (Pattern::canonicalize(p), Pattern::canonicalize(q)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pattern> {
        Pattern::parse(s).map(|p| p.pattern)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Every canonical pattern of the given shape, one per renaming class, in
/// lexicographic order of their row-major variable sequences.
pub fn enumerate_patterns(rows: usize, cols: usize) -> Result<Vec<Pattern>> {
    enumerate_patterns_limited(rows, cols, DEFAULT_MAX_PATTERN_CELLS)
}

pub fn enumerate_patterns_limited(
    rows: usize,
    cols: usize,
    max_cells: usize,
) -> Result<Vec<Pattern>> {
    if rows == 0 || cols == 0 {
        return Err(Error::Range("pattern shapes need at least one row and column".into()));
    }
    let n = rows * cols;
    if n > max_cells {
        return Err(Error::Capacity(format!(
            "{rows}x{cols} pattern has {n} cells, limit is {max_cells}"
        )));
    }
    // Restricted growth strings: s[0] = 0, s[i] <= max(s[..i]) + 1.
    let mut out = Vec::new();
    let mut seq = vec![0u32; n];
    let mut maxes = vec![0u32; n];
    loop {
        let cells = seq.iter().map(|&k| Var(k + 1)).collect();
        out.push(Pattern(Array::from_cells(rows, cols, cells)?));

        let Some(i) = (1..n).rev().find(|&i| seq[i] <= maxes[i - 1]) else {
            break;
        };
        seq[i] += 1;
        maxes[i] = maxes[i - 1].max(seq[i]);
        for k in i + 1..n {
            seq[k] = 0;
            maxes[k] = maxes[i];
        }
    }
    Ok(out)
}
