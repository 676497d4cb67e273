//! Bounded brute force: the finite part of a pattern language that fits in a
//! `max_rows × max_cols` box, set operations on such fragments, separators,
//! and executable non-closure refutations.
//!
//! [`enumerate`] is substitution-driven: it walks every assignment of image
//! dimensions that can fit in the box, assembles a layout with the same
//! `assemble_*` functions the rest of the crate uses, and then fills in every
//! content. [`enumerate_by_grids`] is the grid-driven alternative (every grid
//! in the box through [`Matcher`]). The two are computed independently, which
//! is the point.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Array, Grid, Symbol};
use crate::membership::{Matcher, Mode};
use crate::pattern::{enumerate_patterns, Pattern, Var};
use crate::substitution::Substitution;

/// Default limit on `max_rows × max_cols`.
pub const DEFAULT_MAX_CELLS: usize = 20;
/// Hard limit on the number of fillings of the largest grid in the box.
pub const MAX_FILLINGS: f64 = (1u64 << 26) as f64;
pub const MAX_CELLS_ENV: &str = "ARRAYPAT_MAX_CELLS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_rows: usize,
    pub max_cols: usize,
    pub alphabet: Vec<Symbol>,
}

impl Bounds {
    pub fn new(max_rows: usize, max_cols: usize, alphabet: Vec<Symbol>) -> Result<Bounds> {
        if max_rows == 0 || max_cols == 0 {
            return Err(Error::Configuration("bounds must be at least 1x1".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::Configuration("alphabet must be non-empty".into()));
        }
        if alphabet.len() > u8::MAX as usize {
            return Err(Error::Configuration("alphabets are limited to 255 symbols".into()));
        }
        let distinct: BTreeSet<&Symbol> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::Configuration("alphabet contains a repeated symbol".into()));
        }
        Ok(Bounds { max_rows, max_cols, alphabet })
    }

    /// Convenience constructor from single-token strings, e.g. `["a", "b"]`.
    pub fn with_tokens(max_rows: usize, max_cols: usize, tokens: &[&str]) -> Result<Bounds> {
        let alphabet = tokens.iter().map(|t| Symbol::new(t)).collect::<Result<_>>()?;
        Bounds::new(max_rows, max_cols, alphabet)
    }

    /// Parses a comma-separated alphabet such as `a,b`.
    pub fn parse_alphabet(text: &str) -> Result<Vec<Symbol>> {
        text.split(',').map(|t| Symbol::new(t.trim())).collect()
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        rows <= self.max_rows && cols <= self.max_cols
    }

    fn check(&self, capacity: &Capacity) -> Result<()> {
        let cells = self.max_rows * self.max_cols;
        if cells > capacity.max_cells {
            return Err(Error::Capacity(format!(
                "bounds {}x{} have {cells} cells, limit is {} (set {MAX_CELLS_ENV} to raise it)",
                self.max_rows, self.max_cols, capacity.max_cells
            )));
        }
        if (self.alphabet.len() as f64).powi(cells as i32) > MAX_FILLINGS {
            return Err(Error::Capacity(format!(
                "{} symbols over {cells} cells is too many fillings to enumerate",
                self.alphabet.len()
            )));
        }
        Ok(())
    }
}

/// The enumeration guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capacity {
    pub max_cells: usize,
}

impl Capacity {
    /// Reads `ARRAYPAT_MAX_CELLS`, falling back to [`DEFAULT_MAX_CELLS`].
    pub fn from_env() -> Result<Capacity> {
        match std::env::var(MAX_CELLS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_cells| Capacity { max_cells })
                .map_err(|_| Error::Configuration(format!("{MAX_CELLS_ENV}={v:?} is not a count"))),
            Err(_) => Ok(Capacity::default()),
        }
    }
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity { max_cells: DEFAULT_MAX_CELLS }
    }
}

/// A finite set of grids over a fixed alphabet.
///
/// Grids of each shape are kept as a bitset indexed by the row-major cell
/// sequence read as a base-`|Σ|` number, so iteration follows
/// (rows, cols, cells) under the alphabet's order.
#[derive(Clone, PartialEq, Eq)]
pub struct GridSet {
    alphabet: Vec<Symbol>,
    /// never holds an empty bitset
    shapes: BTreeMap<(usize, usize), FixedBitSet>,
}

fn space(k: usize, rows: usize, cols: usize) -> usize {
    k.pow((rows * cols) as u32)
}

fn index_of(cells: &[u8], k: usize) -> usize {
    cells.iter().fold(0, |acc, &d| acc * k + d as usize)
}

fn cells_of(mut index: usize, k: usize, out: &mut [u8]) {
    for d in out.iter_mut().rev() {
        *d = (index % k) as u8;
        index /= k;
    }
}

impl GridSet {
    pub fn new(alphabet: Vec<Symbol>) -> GridSet {
        GridSet { alphabet, shapes: BTreeMap::new() }
    }

    /// Builds a set from grids; every cell must be in `alphabet`.
    pub fn from_grids<'a>(
        alphabet: Vec<Symbol>,
        grids: impl IntoIterator<Item = &'a Grid>,
    ) -> Result<GridSet> {
        let mut set = GridSet::new(alphabet);
        for g in grids {
            let encoded = set.encode(g)?;
            set.insert_encoded(&encoded);
        }
        Ok(set)
    }

    fn k(&self) -> usize {
        self.alphabet.len()
    }

    fn bits_mut(&mut self, dims: (usize, usize)) -> &mut FixedBitSet {
        let n = space(self.k(), dims.0, dims.1);
        self.shapes.entry(dims).or_insert_with(|| FixedBitSet::with_capacity(n))
    }

    fn normalize(mut self) -> Self {
        self.shapes.retain(|_, bits| !bits.is_clear());
        self
    }

    pub(crate) fn insert_encoded(&mut self, a: &Array<u8>) {
        let k = self.k();
        self.bits_mut(a.dims()).insert(index_of(a.cells(), k));
    }

    pub fn insert(&mut self, g: &Grid) -> Result<()> {
        let encoded = self.encode(g)?;
        self.insert_encoded(&encoded);
        Ok(())
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.shapes.values().map(|bits| bits.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// The shapes that have at least one member, in order.
    pub fn shapes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.shapes.keys().copied()
    }

    pub fn encode(&self, g: &Grid) -> Result<Array<u8>> {
        g.try_map(|s| {
            self.alphabet
                .iter()
                .position(|a| a == s)
                .map(|k| k as u8)
                .ok_or_else(|| Error::Domain(format!("symbol {s} is not in the alphabet")))
        })
    }

    pub fn decode(&self, a: &Array<u8>) -> Grid {
        a.map(|&k| self.alphabet[k as usize].clone())
    }

    fn decode_index(&self, dims: (usize, usize), index: usize) -> Array<u8> {
        let mut cells = vec![0u8; dims.0 * dims.1];
        cells_of(index, self.k(), &mut cells);
        Array::from_cells(dims.0, dims.1, cells).expect("shape")
    }

    pub fn contains(&self, g: &Grid) -> bool {
        let Ok(a) = self.encode(g) else {
            return false;
        };
        self.shapes.get(&a.dims()).is_some_and(|bits| bits.contains(index_of(a.cells(), self.k())))
    }

    /// Members as symbol-index arrays, in canonical order.
    pub fn iter_encoded(&self) -> impl Iterator<Item = Array<u8>> + '_ {
        self.shapes
            .iter()
            .flat_map(move |(&dims, bits)| bits.ones().map(move |i| self.decode_index(dims, i)))
    }

    pub fn iter(&self) -> impl Iterator<Item = Grid> + '_ {
        self.iter_encoded().map(|a| self.decode(&a))
    }

    pub fn first(&self) -> Option<Grid> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<Grid> {
        self.iter().collect()
    }

    /// Keeps only the members of the given shape.
    pub fn with_shape(&self, dims: (usize, usize)) -> GridSet {
        let mut out = GridSet::new(self.alphabet.clone());
        if let Some(bits) = self.shapes.get(&dims) {
            out.shapes.insert(dims, bits.clone());
        }
        out
    }

    /// Every grid in the box.
    pub fn universe(bounds: &Bounds) -> Result<GridSet> {
        bounds.check(&Capacity::from_env()?)?;
        let mut set = GridSet::new(bounds.alphabet.clone());
        for r in 1..=bounds.max_rows {
            for c in 1..=bounds.max_cols {
                set.bits_mut((r, c)).insert_range(..);
            }
        }
        Ok(set)
    }

    fn compatible(&self, other: &GridSet) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::Configuration("fragments use different alphabets".into()));
        }
        Ok(())
    }

    /// Applies `op`; concatenations keep only defined results that fit `bounds`.
    pub fn combine(&self, other: &GridSet, op: SetOp, bounds: &Bounds) -> Result<GridSet> {
        self.compatible(other)?;
        let mut out = GridSet::new(self.alphabet.clone());
        match op {
            SetOp::Union => {
                out.shapes = self.shapes.clone();
                for (&dims, bits) in &other.shapes {
                    out.bits_mut(dims).union_with(bits);
                }
            }
            SetOp::Intersection => {
                for (dims, bits) in &self.shapes {
                    if let Some(theirs) = other.shapes.get(dims) {
                        let mut both = bits.clone();
                        both.intersect_with(theirs);
                        out.shapes.insert(*dims, both);
                    }
                }
            }
            SetOp::Difference => {
                for (dims, bits) in &self.shapes {
                    let mut left = bits.clone();
                    if let Some(theirs) = other.shapes.get(dims) {
                        left.difference_with(theirs);
                    }
                    out.shapes.insert(*dims, left);
                }
            }
            SetOp::RowConcat | SetOp::ColConcat => {
                let k = self.k();
                for (&(ra, ca), a_bits) in &self.shapes {
                    for (&(rb, cb), b_bits) in &other.shapes {
                        let dims = if op == SetOp::RowConcat {
                            (ca == cb).then_some((ra + rb, ca))
                        } else {
                            (ra == rb).then_some((ra, ca + cb))
                        };
                        let Some(dims) = dims.filter(|d| bounds.fits(d.0, d.1)) else {
                            continue;
                        };
                        for ia in a_bits.ones() {
                            let a = self.decode_index((ra, ca), ia);
                            for ib in b_bits.ones() {
                                let index = if op == SetOp::RowConcat {
                                    ia * space(k, rb, cb) + ib
                                } else {
                                    let b = other.decode_index((rb, cb), ib);
                                    let joined = a.col_concat(&b).defined().expect("heights match");
                                    index_of(joined.cells(), k)
                                };
                                out.bits_mut(dims).insert(index);
                            }
                        }
                    }
                }
            }
        }
        Ok(out.normalize())
    }

    /// The smallest grid in exactly one of the two sets, and whether it is
    /// in `self`.
    pub fn first_difference(&self, other: &GridSet) -> Result<Option<(Grid, bool)>> {
        self.compatible(other)?;
        let dims: BTreeSet<(usize, usize)> = self.shapes().chain(other.shapes()).collect();
        for d in dims {
            let n = space(self.k(), d.0, d.1);
            let empty = FixedBitSet::with_capacity(n);
            let mine = self.shapes.get(&d).unwrap_or(&empty);
            let theirs = other.shapes.get(&d).unwrap_or(&empty);
            let mut diff = mine.clone();
            diff.symmetric_difference_with(theirs);
            if let Some(i) = diff.ones().next() {
                return Ok(Some((self.decode(&self.decode_index(d, i)), mine.contains(i))));
            }
        }
        Ok(None)
    }

    pub fn map_grids(&self, alphabet: Vec<Symbol>, f: impl Fn(&Grid) -> Grid) -> Result<GridSet> {
        let grids: Vec<Grid> = self.iter().map(|g| f(&g)).collect();
        GridSet::from_grids(alphabet, grids.iter())
    }
}

impl fmt::Debug for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Grids separated by blank lines, in canonical order.
impl fmt::Display for GridSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.iter().enumerate() {
            if k > 0 {
                f.write_str("\n\n")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    RowConcat,
    ColConcat,
}

/// The members of `L_{Σ,z}(α)` that fit in the bounds.
#[derive(Clone, Debug)]
pub struct LangFragment {
    pub pattern: Pattern,
    pub mode: Mode,
    pub bounds: Bounds,
    pub members: GridSet,
}

impl LangFragment {
    pub fn contains(&self, g: &Grid) -> bool {
        self.members.contains(g)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn enumerate(p: &Pattern, z: Mode, b: &Bounds) -> Result<LangFragment> {
    enumerate_with(p, z, b, &Capacity::from_env()?)
}

pub fn enumerate_with(p: &Pattern, z: Mode, b: &Bounds, capacity: &Capacity) -> Result<LangFragment> {
    b.check(capacity)?;
    let mut members = GridSet::new(b.alphabet.clone());
    let modes: &[Mode] = match z {
        Mode::RC => &[Mode::R, Mode::C],
        _ => std::slice::from_ref(&z),
    };
    for &mode in modes {
        let mut dims = DimsSearch::new(p, mode, b);
        dims.run(&mut |layout: &Array<u32>, ids: usize| fill(layout, ids, &mut members));
    }
    Ok(LangFragment { pattern: p.clone(), mode: z, bounds: b.clone(), members: members.normalize() })
}

/// The grid-driven oracle: every grid in the box, kept when [`Matcher`] accepts it.
pub fn enumerate_by_grids(p: &Pattern, z: Mode, b: &Bounds) -> Result<LangFragment> {
    b.check(&Capacity::from_env()?)?;
    let matcher = Matcher::new(p, z);
    let mut members = GridSet::new(b.alphabet.clone());
    for_each_grid(b, |a| {
        if matcher.accepts(a) {
            members.insert_encoded(a);
        }
    });
    Ok(LangFragment { pattern: p.clone(), mode: z, bounds: b.clone(), members })
}

/// Calls `f` on every grid in the box, in canonical order.
pub fn for_each_grid(b: &Bounds, mut f: impl FnMut(&Array<u8>)) {
    let k = b.alphabet.len() as u8;
    for r in 1..=b.max_rows {
        for c in 1..=b.max_cols {
            let mut a = Array::from_cells(r, c, vec![0u8; r * c]).expect("shape");
            loop {
                f(&a);
                if !odometer(a.cells_mut(), k) {
                    break;
                }
            }
        }
    }
}

/// Advances `digits` (last digit fastest) and reports whether it did not wrap.
fn odometer(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Inserts every filling of `layout` (cells carrying content ids `0..ids`).
///
/// A grid's index is linear in the content values, so stepping one content
/// id moves the index by a fixed weight.
fn fill(layout: &Array<u32>, ids: usize, out: &mut GridSet) {
    let k = out.k();
    let n = layout.cells().len();
    let bits = out.bits_mut(layout.dims());
    if ids == n {
        // all cells independent: every grid of this shape
        bits.insert_range(..);
        return;
    }
    if bits.is_full() {
        return;
    }
    let mut weight = vec![0usize; ids];
    let mut place = 1usize;
    for &id in layout.cells().iter().rev() {
        weight[id as usize] += place;
        place *= k;
    }
    let mut values = vec![0usize; ids];
    let mut index = 0usize;
    bits.insert(index);
    'next: loop {
        for d in (0..ids).rev() {
            values[d] += 1;
            index += weight[d];
            if values[d] < k {
                bits.insert(index);
                continue 'next;
            }
            index -= k * weight[d];
            values[d] = 0;
        }
        break;
    }
}

/// Walks image dimensions per variable, pruning by what the mode forces.
struct DimsSearch<'a> {
    p: &'a Array<Var>,
    mode: Mode,
    bounds: &'a Bounds,
    nvars: usize,
    dims: Vec<(usize, usize)>,
}

impl<'a> DimsSearch<'a> {
    fn new(p: &'a Pattern, mode: Mode, bounds: &'a Bounds) -> Self {
        let nvars = p.var_count();
        DimsSearch { p: p.as_array(), mode, bounds, nvars, dims: vec![(0, 0); nvars] }
    }

    fn var(&self, i: usize, j: usize) -> usize {
        self.p.get(i, j).index() as usize - 1
    }

    fn feasible(&self) -> bool {
        let (rows, cols) = self.p.dims();
        for i in 0..rows {
            let mut width = 0;
            let mut height = None;
            for j in 0..cols {
                let (h, w) = self.dims[self.var(i, j)];
                width += w.max(1);
                if h != 0 && matches!(self.mode, Mode::R | Mode::P | Mode::H) {
                    if height.is_some_and(|x| x != h) {
                        return false;
                    }
                    height = Some(h);
                }
            }
            if width > self.bounds.max_cols {
                return false;
            }
        }
        for j in 0..cols {
            let mut height = 0;
            let mut width = None;
            for i in 0..rows {
                let (h, w) = self.dims[self.var(i, j)];
                height += h.max(1);
                if w != 0 && matches!(self.mode, Mode::C | Mode::P | Mode::H) {
                    if width.is_some_and(|x| x != w) {
                        return false;
                    }
                    width = Some(w);
                }
            }
            if height > self.bounds.max_rows {
                return false;
            }
        }
        true
    }

    fn run(&mut self, emit: &mut dyn FnMut(&Array<u32>, usize)) {
        self.assign(0, emit);
    }

    fn assign(&mut self, v: usize, emit: &mut dyn FnMut(&Array<u32>, usize)) {
        if v == self.nvars {
            self.leaf(emit);
            return;
        }
        let (rows, cols) = (self.bounds.max_rows, self.bounds.max_cols);
        for h in 1..=rows {
            for w in 1..=cols {
                if self.mode == Mode::H && v > 0 && (h, w) != self.dims[0] {
                    continue;
                }
                self.dims[v] = (h, w);
                if self.feasible() {
                    self.assign(v + 1, emit);
                }
            }
        }
        self.dims[v] = (0, 0);
    }

    /// Assembles a layout of content ids: variable `v`'s cells get ids
    /// `offset[v]..offset[v] + h·w`, so equal variables share content.
    fn leaf(&self, emit: &mut dyn FnMut(&Array<u32>, usize)) {
        let mut h: Substitution<u32> = Substitution::new();
        let mut next = 0u32;
        for (v, &(rows, cols)) in self.dims.iter().enumerate() {
            let ids = (next..next + (rows * cols) as u32).collect();
            next += (rows * cols) as u32;
            let var = Var::new(v as u32 + 1).expect("positive");
            h.insert(var, Array::from_cells(rows, cols, ids).expect("shape")).expect("non-empty");
        }
        let cr = || h.assemble_cr(self.p).expect("complete").defined();
        let rc = || h.assemble_rc(self.p).expect("complete").defined();
        let layout = match self.mode {
            Mode::R | Mode::H => cr(),
            Mode::C => rc(),
            Mode::P => cr().filter(|a| rc().as_ref() == Some(a)),
            Mode::RC => unreachable!("split into R and C"),
        };
        if let Some(layout) = layout {
            if self.bounds.fits(layout.rows(), layout.cols()) {
                emit(&layout, next as usize);
            }
        }
    }
}

/// Members of minimal area; every image has at least the pattern's shape, so
/// these are exactly the members of the pattern's own shape.
pub fn shortest_members(p: &Pattern, z: Mode, alphabet: &[Symbol]) -> Result<GridSet> {
    let (r, c) = p.dims();
    let b = Bounds::new(r, c, alphabet.to_vec())?;
    Ok(enumerate(p, z, &b)?.members.with_shape((r, c)))
}

pub fn set_op(a: &LangFragment, b: &LangFragment, op: SetOp) -> Result<GridSet> {
    if a.bounds != b.bounds {
        return Err(Error::Configuration("fragments were enumerated with different bounds".into()));
    }
    a.members.combine(&b.members, op, &a.bounds)
}

/// A smallest grid in the symmetric difference of two fragments.
pub fn distinguish(p: &Pattern, z1: Mode, q: &Pattern, z2: Mode, b: &Bounds) -> Result<Option<Grid>> {
    let left = enumerate(p, z1, b)?;
    let right = enumerate(q, z2, b)?;
    Ok(left.members.first_difference(&right.members)?.map(|(g, _)| g))
}

/// A non-closure scenario with a finite, exhaustive refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `L(x y x) ∪ L(x x y)`
    Union,
    /// `L(x y x) ∩ L(x x y)`
    Intersection,
    /// the complement of `L(x y)`
    Complement,
    /// the image of `L(x)` under `a, b ↦ a b`
    Length2Morphism,
    /// the preimage of `L(x x)` under `a, b ↦ 1, c ↦ 2, d ↦ 3`
    InverseCoding,
    /// the column-concatenation closure of `L(x x)`
    Kleene,
}

impl Case {
    pub const ALL: [Case; 6] = [
        Case::Union,
        Case::Intersection,
        Case::Complement,
        Case::Length2Morphism,
        Case::InverseCoding,
        Case::Kleene,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::Union => "union",
            Case::Intersection => "intersection",
            Case::Complement => "complement",
            Case::Length2Morphism => "length2-morphism",
            Case::InverseCoding => "inverse-coding",
            Case::Kleene => "kleene",
        }
    }

    pub fn default_bounds(self) -> Bounds {
        let (r, c, tokens): (usize, usize, &[&str]) = match self {
            Case::Union => (1, 3, &["a", "b"]),
            Case::Intersection => (1, 5, &["a", "b"]),
            Case::Complement => (2, 2, &["a", "b"]),
            Case::Length2Morphism => (1, 6, &["a", "b"]),
            Case::InverseCoding => (1, 4, &["a", "b", "c", "d"]),
            Case::Kleene => (1, 4, &["a", "b"]),
        };
        Bounds::with_tokens(r, c, tokens).expect("valid defaults")
    }

    /// Modes in which the operation is not closed. `h` is closed under
    /// intersection, so it is left out there.
    pub fn modes(self) -> &'static [Mode] {
        match self {
            Case::Intersection => &[Mode::P, Mode::R, Mode::C, Mode::RC],
            _ => &Mode::ALL,
        }
    }

    /// The language no pattern should describe, restricted to `b`.
    pub fn target(self, z: Mode, b: &Bounds) -> Result<GridSet> {
        let pat = |s: &str| s.parse::<Pattern>();
        Ok(match self {
            Case::Union | Case::Intersection => {
                let op = if self == Case::Union { SetOp::Union } else { SetOp::Intersection };
                let a = enumerate(&pat("x1 x2 x1")?, z, b)?;
                let c = enumerate(&pat("x1 x1 x2")?, z, b)?;
                set_op(&a, &c, op)?
            }
            Case::Complement => {
                let a = enumerate(&pat("x1 x2")?, z, b)?;
                GridSet::universe(b)?.combine(&a.members, SetOp::Difference, b)?
            }
            Case::Length2Morphism => {
                let (a, bb) = (sym("a")?, sym("b")?);
                if !b.alphabet.contains(&a) || !b.alphabet.contains(&bb) {
                    return Err(Error::Configuration("this case needs a and b in the alphabet".into()));
                }
                let half = Bounds::new(b.max_rows, (b.max_cols / 2).max(1), vec![a.clone(), bb.clone()])?;
                let base = enumerate(&pat("x1")?, z, &half)?;
                let ab = Grid::from_rows(vec![vec![a, bb]])?;
                let images: Vec<Grid> = base
                    .members
                    .iter()
                    .map(|g| morph_uniform(&g, &ab))
                    .filter(|g| b.fits(g.rows(), g.cols()))
                    .collect();
                GridSet::from_grids(b.alphabet.clone(), images.iter())?
            }
            Case::InverseCoding => {
                let coding: BTreeMap<Symbol, Symbol> = [("a", "1"), ("b", "1"), ("c", "2"), ("d", "3")]
                    .into_iter()
                    .map(|(x, y)| Ok((sym(x)?, sym(y)?)))
                    .collect::<Result<_>>()?;
                let mut domain: Vec<Symbol> = coding.keys().cloned().collect();
                domain.sort();
                if b.alphabet != domain {
                    return Err(Error::Configuration("this case needs the alphabet a,b,c,d".into()));
                }
                let codomain: Vec<Symbol> = ["1", "2", "3"].iter().map(|s| sym(s)).collect::<Result<_>>()?;
                let image_bounds = Bounds::new(b.max_rows, b.max_cols, codomain)?;
                let lang = enumerate(&pat("x1 x1")?, z, &image_bounds)?;
                let mut keep = Vec::new();
                for g in GridSet::universe(b)?.iter() {
                    if lang.contains(&g.project(&coding)?) {
                        keep.push(g);
                    }
                }
                GridSet::from_grids(b.alphabet.clone(), keep.iter())?
            }
            Case::Kleene => {
                let base = enumerate(&pat("x1 x1")?, z, b)?.members;
                let mut closure = base.clone();
                loop {
                    let next = closure
                        .combine(&base, SetOp::ColConcat, b)?
                        .combine(&closure, SetOp::Union, b)?;
                    if next == closure {
                        break closure;
                    }
                    closure = next;
                }
            }
        })
    }
}

fn sym(s: &str) -> Result<Symbol> {
    Symbol::new(s)
}

/// The uniform morphism sending every symbol to the same block.
fn morph_uniform(g: &Grid, image_of_each: &Grid) -> Grid {
    let (m, n) = image_of_each.dims();
    let (r, c) = g.dims();
    let mut rows = Vec::with_capacity(r * m);
    for _ in 0..r {
        for i in 0..m {
            let mut row = Vec::with_capacity(c * n);
            for _ in 0..c {
                row.extend_from_slice(image_of_each.row(i));
            }
            rows.push(row);
        }
    }
    Grid::from_rows(rows).expect("rectangular")
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        Case::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = Case::ALL.iter().map(|c| c.name()).collect();
            Error::Usage(format!("unknown case {s:?} (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorKind {
    /// in the target language, not generated by the candidate
    Missing,
    /// generated by the candidate, not in the target language
    Overshoot,
}

#[derive(Clone, Debug)]
pub struct CandidateOutcome {
    pub pattern: Pattern,
    pub separator: Option<(Grid, SeparatorKind)>,
}

#[derive(Clone, Debug)]
pub struct ModeRefutation {
    pub mode: Mode,
    pub target: GridSet,
    /// `None` when the target's smallest members come in several shapes, which
    /// no single pattern can produce.
    pub forced_shape: Option<(usize, usize)>,
    pub candidates: Vec<CandidateOutcome>,
}

impl ModeRefutation {
    pub fn succeeded(&self) -> bool {
        self.candidates.iter().all(|c| c.separator.is_some())
    }
}

#[derive(Clone, Debug)]
pub struct RefutationReport {
    pub case: Case,
    pub bounds: Bounds,
    pub modes: Vec<ModeRefutation>,
}

impl RefutationReport {
    pub fn succeeded(&self) -> bool {
        self.modes.iter().all(ModeRefutation::succeeded)
    }
}

/// Runs the exhaustion behind a non-closure proof: the target's smallest
/// members force the shape of any pattern describing it, and each of the
/// finitely many canonical patterns of that shape is separated from the
/// target by a grid within the bounds.
pub fn refute_closure(case: Case, b: &Bounds) -> Result<RefutationReport> {
    let mut modes = Vec::new();
    for &z in case.modes() {
        let target = case.target(z, b)?;
        let forced_shape = forced_shape(&target);
        let mut candidates = Vec::new();
        if let Some((r, c)) = forced_shape {
            for pattern in enumerate_patterns(r, c)? {
                let generated = enumerate(&pattern, z, b)?.members;
                let separator = target.first_difference(&generated)?.map(|(g, in_target)| {
                    let kind = if in_target { SeparatorKind::Missing } else { SeparatorKind::Overshoot };
                    (g, kind)
                });
                candidates.push(CandidateOutcome { pattern, separator });
            }
        }
        modes.push(ModeRefutation { mode: z, target, forced_shape, candidates });
    }
    Ok(RefutationReport { case, bounds: b.clone(), modes })
}

fn forced_shape(target: &GridSet) -> Option<(usize, usize)> {
    let area = target.shapes().map(|(r, c)| r * c).min()?;
    let shapes: BTreeSet<(usize, usize)> =
        target.shapes().filter(|(r, c)| r * c == area).collect();
    (shapes.len() == 1).then(|| *shapes.first().expect("one shape"))
}

fn one_line(g: &Grid) -> String {
    g.row_iter()
        .map(|row| row.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

impl fmt::Display for RefutationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet: Vec<&str> = self.bounds.alphabet.iter().map(Symbol::as_str).collect();
        writeln!(
            f,
            "case {} bounds={}x{} alphabet={}",
            self.case,
            self.bounds.max_rows,
            self.bounds.max_cols,
            alphabet.join(",")
        )?;
        for m in &self.modes {
            match m.forced_shape {
                Some((r, c)) => writeln!(
                    f,
                    "mode {}: target has {} members, forced shape {r}x{c}, {} candidates",
                    m.mode,
                    m.target.len(),
                    m.candidates.len()
                )?,
                None => writeln!(
                    f,
                    "mode {}: target has {} members and no single forced shape",
                    m.mode,
                    m.target.len()
                )?,
            }
            for cand in &m.candidates {
                let pat = cand.pattern.to_string().replace('\n', " / ");
                match &cand.separator {
                    Some((g, SeparatorKind::Missing)) => {
                        writeln!(f, "  [{pat}] misses {}", one_line(g))?
                    }
                    Some((g, SeparatorKind::Overshoot)) => {
                        writeln!(f, "  [{pat}] overshoots with {}", one_line(g))?
                    }
                    None => writeln!(f, "  [{pat}] NOT SEPARATED")?,
                }
            }
        }
        write!(f, "{}", if self.succeeded() { "refuted" } else { "not refuted" })
    }
}
