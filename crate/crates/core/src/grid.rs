//! Rectangular arrays, their two partial concatenations and the geometric
//! operations.
//!
//! [`Array<T>`] is generic over its cell type so the same code serves terminal
//! arrays ([`Grid`], cells are [`Symbol`]s) and array patterns (cells are
//! variables). The empty array λ is the unique array with zero rows and zero
//! columns.
//!
//! Row concatenation (`⊖`) stacks two arrays of equal width, column
//! concatenation (`⊘`) places them side by side when their heights agree.
//! Mismatches produce [`ConcatResult::Undefined`], which absorbs every later
//! concatenation. λ is the identity of both operations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smol_str::SmolStr;

use crate::error::{Error, Result};

/// A terminal symbol: any non-empty token without whitespace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(SmolStr);

impl Symbol {
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::Format(format!("invalid symbol {token:?}")));
        }
        Ok(Symbol(SmolStr::new(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::new(s)
    }
}

/// A rectangular array stored row-major.
///
/// The derived ordering compares `(rows, cols, cells)` lexicographically, which
/// is the canonical member order used by the oracle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Array<T> {
    rows: usize,
    cols: usize,
    cells: Vec<T>,
}

/// A terminal array.
pub type Grid = Array<Symbol>;

impl<T> Array<T> {
    /// The empty array λ.
    pub fn empty() -> Self {
        Array { rows: 0, cols: 0, cells: Vec::new() }
    }

    pub fn from_cells(rows: usize, cols: usize, cells: Vec<T>) -> Result<Self> {
        if (rows == 0) != (cols == 0) {
            return Err(Error::Format(format!("degenerate {rows}x{cols} array")));
        }
        if cells.len() != rows * cols {
            return Err(Error::Format(format!(
                "{} cells do not fill a {rows}x{cols} array",
                cells.len()
            )));
        }
        Ok(Array { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Format("ragged rows".into()));
        }
        Array::from_cells(height, width, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn cells(&self) -> &[T] {
        &self.cells
    }

    /// Zero-based cell access.
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.cells[row * self.cols + col]
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [T] {
        &mut self.cells
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Array<U> {
        Array { rows: self.rows, cols: self.cols, cells: self.cells.iter().map(f).collect() }
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Array<U>> {
        Ok(Array {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

impl<T: Clone> Array<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        if rows == 0 || cols == 0 {
            return Array::empty();
        }
        Array { rows, cols, cells: vec![value; rows * cols] }
    }

    /// `self ⊖ other`: `other` stacked below `self`.
    pub fn row_concat(&self, other: &Array<T>) -> ConcatResult<T> {
        if self.is_empty() {
            return ConcatResult::Defined(other.clone());
        }
        if other.is_empty() {
            return ConcatResult::Defined(self.clone());
        }
        if self.cols != other.cols {
            return ConcatResult::Undefined;
        }
        let mut cells = Vec::with_capacity(self.cells.len() + other.cells.len());
        cells.extend_from_slice(&self.cells);
        cells.extend_from_slice(&other.cells);
        ConcatResult::Defined(Array { rows: self.rows + other.rows, cols: self.cols, cells })
    }

    /// `self ⊘ other`: `other` placed to the right of `self`.
    pub fn col_concat(&self, other: &Array<T>) -> ConcatResult<T> {
        if self.is_empty() {
            return ConcatResult::Defined(other.clone());
        }
        if other.is_empty() {
            return ConcatResult::Defined(self.clone());
        }
        if self.rows != other.rows {
            return ConcatResult::Undefined;
        }
        let cols = self.cols + other.cols;
        let mut cells = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            cells.extend_from_slice(self.row(i));
            cells.extend_from_slice(other.row(i));
        }
        ConcatResult::Defined(Array { rows: self.rows, cols, cells })
    }

    /// The `height`×`width` block anchored at the one-based position `(top, left)`.
    pub fn subgrid(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Self> {
        if top == 0
            || left == 0
            || height == 0
            || width == 0
            || top + height - 1 > self.rows
            || left + width - 1 > self.cols
        {
            return Err(Error::Range(format!(
                "block {height}x{width} at ({top},{left}) outside {}x{} array",
                self.rows, self.cols
            )));
        }
        Ok(self.block(top - 1, left - 1, height, width))
    }

    /// Zero-based block extraction; the caller guarantees the range.
    pub(crate) fn block(&self, top: usize, left: usize, height: usize, width: usize) -> Self {
        let mut cells = Vec::with_capacity(height * width);
        for i in top..top + height {
            let start = i * self.cols + left;
            cells.extend_from_slice(&self.cells[start..start + width]);
        }
        Array { rows: height, cols: width, cells }
    }

    pub fn transform(&self, op: GeomOp) -> Self {
        let (r, c) = (self.rows, self.cols);
        let (rows, cols) = match op {
            GeomOp::Transpose | GeomOp::RightTurn | GeomOp::LeftTurn => (c, r),
            GeomOp::HFlip | GeomOp::VFlip | GeomOp::HalfTurn => (r, c),
        };
        let mut cells = Vec::with_capacity(self.cells.len());
        for i in 0..rows {
            for j in 0..cols {
                let (si, sj) = match op {
                    GeomOp::Transpose => (j, i),
                    GeomOp::HFlip => (r - 1 - i, j),
                    GeomOp::VFlip => (i, c - 1 - j),
                    GeomOp::RightTurn => (r - 1 - j, i),
                    GeomOp::LeftTurn => (j, c - 1 - i),
                    GeomOp::HalfTurn => (r - 1 - i, c - 1 - j),
                };
                cells.push(self.get(si, sj).clone());
            }
        }
        Array { rows, cols, cells }
    }
}

impl<T: Eq> Array<T> {
    /// Compares two equally sized zero-based blocks of `self` without copying.
    pub(crate) fn blocks_equal(
        &self,
        a: (usize, usize),
        b: (usize, usize),
        height: usize,
        width: usize,
    ) -> bool {
        if a == b {
            return true;
        }
        (0..height).all(|k| {
            let sa = (a.0 + k) * self.cols + a.1;
            let sb = (b.0 + k) * self.cols + b.1;
            self.cells[sa..sa + width] == self.cells[sb..sb + width]
        })
    }
}

impl Grid {
    /// Swaps the two tokens of a binary alphabet.
    pub fn conjugate(&self, pair: (&Symbol, &Symbol)) -> Result<Grid> {
        self.try_map(|s| {
            if s == pair.0 {
                Ok(pair.1.clone())
            } else if s == pair.1 {
                Ok(pair.0.clone())
            } else {
                Err(Error::Domain(format!("symbol {s} outside {{{}, {}}}", pair.0, pair.1)))
            }
        })
    }

    /// Cell-wise letter-to-letter mapping.
    pub fn project(&self, map: &BTreeMap<Symbol, Symbol>) -> Result<Grid> {
        self.try_map(|s| {
            map.get(s).cloned().ok_or_else(|| Error::Domain(format!("no image for symbol {s}")))
        })
    }

    /// The distinct symbols in first-occurrence order.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut seen: Vec<Symbol> = Vec::new();
        for s in &self.cells {
            if !seen.contains(s) {
                seen.push(s.clone());
            }
        }
        seen
    }

    /// Parses the grid text format, rejecting λ.
    pub fn parse(text: &str) -> Result<Grid> {
        parse_array(text, false, Symbol::new)
    }

    pub fn parse_allow_empty(text: &str) -> Result<Grid> {
        parse_array(text, true, Symbol::new)
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Grid::parse(s)
    }
}

/// Parses whitespace-separated rows, one per line. Trailing blank lines are ignored.
pub(crate) fn parse_array<T>(
    text: &str,
    allow_empty: bool,
    mut token: impl FnMut(&str) -> Result<T>,
) -> Result<Array<T>> {
    let lines: Vec<&str> = text.lines().collect();
    let end = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |k| k + 1);
    let mut rows = Vec::with_capacity(end);
    for (n, line) in lines[..end].iter().enumerate() {
        let row = line.split_whitespace().map(&mut token).collect::<Result<Vec<T>>>()?;
        if row.is_empty() {
            return Err(Error::Format(format!("line {} is blank", n + 1)));
        }
        rows.push(row);
    }
    if rows.is_empty() && !allow_empty {
        return Err(Error::Format("empty array".into()));
    }
    let width = rows.first().map_or(0, Vec::len);
    if let Some(n) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::Format(format!(
            "line {} has {} cells, expected {width}",
            n + 1,
            rows[n].len()
        )));
    }
    Array::from_rows(rows)
}

impl<T: fmt::Display> fmt::Display for Array<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{cell}")?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Array<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{cell:?}")?;
            }
        }
        f.write_str("]")
    }
}

/// The value of a concatenation: an array or the absorbing ⊥.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConcatResult<T> {
    Defined(Array<T>),
    Undefined,
}

impl<T: Clone> ConcatResult<T> {
    /// λ, the identity of both concatenations.
    pub fn empty() -> Self {
        ConcatResult::Defined(Array::empty())
    }

    pub fn row(&self, other: &ConcatResult<T>) -> ConcatResult<T> {
        match (self, other) {
            (ConcatResult::Defined(a), ConcatResult::Defined(b)) => a.row_concat(b),
            _ => ConcatResult::Undefined,
        }
    }

    pub fn col(&self, other: &ConcatResult<T>) -> ConcatResult<T> {
        match (self, other) {
            (ConcatResult::Defined(a), ConcatResult::Defined(b)) => a.col_concat(b),
            _ => ConcatResult::Undefined,
        }
    }

    pub fn row_with(self, other: &Array<T>) -> ConcatResult<T> {
        match self {
            ConcatResult::Defined(a) => a.row_concat(other),
            ConcatResult::Undefined => ConcatResult::Undefined,
        }
    }

    pub fn col_with(self, other: &Array<T>) -> ConcatResult<T> {
        match self {
            ConcatResult::Defined(a) => a.col_concat(other),
            ConcatResult::Undefined => ConcatResult::Undefined,
        }
    }
}

impl<T> ConcatResult<T> {
    pub fn is_undefined(&self) -> bool {
        matches!(self, ConcatResult::Undefined)
    }

    pub fn defined(self) -> Option<Array<T>> {
        match self {
            ConcatResult::Defined(a) => Some(a),
            ConcatResult::Undefined => None,
        }
    }

    pub fn as_defined(&self) -> Option<&Array<T>> {
        match self {
            ConcatResult::Defined(a) => Some(a),
            ConcatResult::Undefined => None,
        }
    }
}

impl<T> From<Array<T>> for ConcatResult<T> {
    fn from(a: Array<T>) -> Self {
        ConcatResult::Defined(a)
    }
}

impl<T: fmt::Display> fmt::Display for ConcatResult<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcatResult::Defined(a) => write!(f, "{a}"),
            ConcatResult::Undefined => f.write_str("undefined"),
        }
    }
}

/// Geometric operations on arrays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeomOp {
    /// Reflection along the main diagonal.
    Transpose,
    /// `⊖`-reflection: along the horizontal axis (row order reversed).
    HFlip,
    /// `⊘`-reflection: along the vertical axis (column order reversed).
    VFlip,
    RightTurn,
    LeftTurn,
    HalfTurn,
}

impl GeomOp {
    pub const ALL: [GeomOp; 6] = [
        GeomOp::Transpose,
        GeomOp::HFlip,
        GeomOp::VFlip,
        GeomOp::RightTurn,
        GeomOp::LeftTurn,
        GeomOp::HalfTurn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeomOp::Transpose => "transpose",
            GeomOp::HFlip => "hflip",
            GeomOp::VFlip => "vflip",
            GeomOp::RightTurn => "right-turn",
            GeomOp::LeftTurn => "left-turn",
            GeomOp::HalfTurn => "half-turn",
        }
    }

    pub fn inverse(self) -> GeomOp {
        match self {
            GeomOp::RightTurn => GeomOp::LeftTurn,
            GeomOp::LeftTurn => GeomOp::RightTurn,
            op => op,
        }
    }
}

impl fmt::Display for GeomOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeomOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeomOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown geometric operation {s:?}")))
    }
}
