//! Pattern-level constructions for the closure results: lcm expansion,
//! intersection of morphic languages, concatenation, and geometric transfer.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Array, GeomOp};
use crate::membership::Mode;
use crate::pattern::{Pattern, Var};

/// Each variable becomes a `row_factor × col_factor` block of fresh variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub row_factor: usize,
    pub col_factor: usize,
}

impl ExpansionSpec {
    pub fn new(row_factor: usize, col_factor: usize) -> Result<ExpansionSpec> {
        if row_factor == 0 || col_factor == 0 {
            return Err(Error::Range("expansion factors must be at least 1".into()));
        }
        Ok(ExpansionSpec { row_factor, col_factor })
    }

    /// Factors that bring `dims` up to the lcm with `other`.
    pub fn to_lcm(dims: (usize, usize), other: (usize, usize)) -> ExpansionSpec {
        ExpansionSpec {
            row_factor: lcm(dims.0, other.0) / dims.0,
            col_factor: lcm(dims.1, other.1) / dims.1,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Substitutes the same block of fresh variables for every occurrence of a
/// variable (the morphism `x ↦ [x_{ij}]`).
pub fn expand(p: &Pattern, spec: ExpansionSpec) -> Pattern {
    Pattern::canonicalize(&expand_raw(p.as_array(), spec)).expect("non-empty")
}

fn expand_raw(p: &Array<Var>, spec: ExpansionSpec) -> Array<Var> {
    let (rf, cf) = (spec.row_factor, spec.col_factor);
    let (rows, cols) = p.dims();
    let mut cells = Vec::with_capacity(rows * cols * rf * cf);
    for i in 0..rows * rf {
        for j in 0..cols * cf {
            let x = p.get(i / rf, j / cf).index() as usize - 1;
            let fresh = x * rf * cf + (i % rf) * cf + j % cf + 1;
            cells.push(Var::new(fresh as u32).expect("positive"));
        }
    }
    Array::from_cells(rows * rf, cols * cf, cells).expect("shape")
}

/// A pattern `γ` with `L_h(γ) = L_h(p) ∩ L_h(q)`: both operands are expanded
/// to the lcm shape, and two positions of `γ` share a variable when they do
/// in either expansion.
pub fn intersect_h(p: &Pattern, q: &Pattern) -> Pattern {
    let pe = expand_raw(p.as_array(), ExpansionSpec::to_lcm(p.dims(), q.dims()));
    let qe = expand_raw(q.as_array(), ExpansionSpec::to_lcm(q.dims(), p.dims()));
    let (rows, cols) = pe.dims();
    let mut uf = UnionFind::new(rows * cols);
    for arr in [&pe, &qe] {
        let mut first: HashMap<Var, usize> = HashMap::new();
        for (pos, v) in arr.cells().iter().enumerate() {
            let anchor = *first.entry(*v).or_insert(pos);
            uf.union(anchor, pos);
        }
    }
    let cells = (0..rows * cols)
        .map(|pos| Var::new(uf.find(pos) as u32 + 1).expect("positive"))
        .collect();
    Pattern::canonicalize(&Array::from_cells(rows, cols, cells).expect("shape")).expect("non-empty")
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dir {
    /// `⊖`, stacking
    Row,
    /// `⊘`, side by side
    Col,
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Row => "row",
            Dir::Col => "col",
        })
    }
}

impl FromStr for Dir {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dir> {
        match s {
            "row" => Ok(Dir::Row),
            "col" => Ok(Dir::Col),
            _ => Err(Error::Usage(format!("unknown direction {s:?} (expected row or col)"))),
        }
    }
}

/// Whether `concat_pattern` has a construction for `(z, dir)`.
pub fn concat_supported(z: Mode, dir: Dir) -> bool {
    matches!((z, dir), (Mode::R, Dir::Row) | (Mode::C, Dir::Col) | (Mode::P, _) | (Mode::H, _))
}

/// A pattern for `L_z(p) ⊖ L_z(q)` (or `⊘`): variable-disjoint copies of the
/// operands, brought to a common width (height) by lcm strip expansion, then
/// concatenated.
pub fn concat_pattern(p: &Pattern, q: &Pattern, dir: Dir, z: Mode) -> Result<Pattern> {
    if !concat_supported(z, dir) {
        return Err(Error::Unsupported(format!(
            "{z}-mode pattern languages are not closed under {dir} concatenation"
        )));
    }
    let spec = |a: usize, b: usize| match dir {
        Dir::Row => ExpansionSpec { row_factor: 1, col_factor: lcm(a, b) / a },
        Dir::Col => ExpansionSpec { row_factor: lcm(a, b) / a, col_factor: 1 },
    };
    let (pa, qa) = match dir {
        Dir::Row => (p.cols(), q.cols()),
        Dir::Col => (p.rows(), q.rows()),
    };
    let pe = expand(p, spec(pa, qa));
    let qe = expand(q, spec(qa, pa));
    let shift = pe.var_count() as u32;
    let qe = qe.as_array().map(|v| Var::new(v.index() + shift).expect("positive"));
    let joined = match dir {
        Dir::Row => pe.as_array().row_concat(&qe),
        Dir::Col => pe.as_array().col_concat(&qe),
    };
    let joined = joined.defined().expect("expansion aligns the shared side");
    Pattern::canonicalize(&joined)
}

/// What a language-level operation does to the pattern describing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transfer {
    Geom(GeomOp),
    /// Any letter-to-letter projection; patterns carry no terminals.
    Projection,
}

pub fn transfer(p: &Pattern, t: Transfer) -> Pattern {
    match t {
        Transfer::Geom(op) => p.transform(op),
        Transfer::Projection => p.clone(),
    }
}
