//! Membership `W ∈ L_{Σ,z}(α)` for the five modes, with witnesses.
//!
//! All modes except `h` are NP-hard in general; the searches below backtrack
//! over image dimensions (heights first, top-down, then widths left-to-right,
//! candidates ascending) and compare contents against the first occurrence of
//! each variable as soon as its block is placed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Array, GeomOp, Grid};
use crate::pattern::{Pattern, Var};
use crate::substitution::Substitution;

/// Which image relation defines the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// morphic images (uniform substitutions)
    H,
    /// proper images: both assemblies agree
    P,
    /// column-row images, `h⊘⊖(α) = W`
    R,
    /// row-column images, `h⊖⊘(α) = W`
    C,
    /// `R ∨ C`
    RC,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::H, Mode::P, Mode::R, Mode::C, Mode::RC];

    pub fn name(self) -> &'static str {
        match self {
            Mode::H => "h",
            Mode::P => "p",
            Mode::R => "r",
            Mode::C => "c",
            Mode::RC => "rc",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown mode {s:?} (expected h, p, r, c or rc)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipAnswer<T = crate::grid::Symbol> {
    No,
    Yes(Substitution<T>),
}

impl<T> MembershipAnswer<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, MembershipAnswer::Yes(_))
    }

    pub fn witness(&self) -> Option<&Substitution<T>> {
        match self {
            MembershipAnswer::Yes(h) => Some(h),
            MembershipAnswer::No => None,
        }
    }
}

/// Decides whether `w` is a `z`-image of `p`.
pub fn decide(w: &Grid, p: &Pattern, z: Mode) -> MembershipAnswer {
    Matcher::new(p, z).decide(w)
}

/// Checks a proposed witness against the image definition of `z`.
pub fn verify_witness<T: Clone + Eq>(
    w: &Array<T>,
    p: &Pattern,
    z: Mode,
    h: &Substitution<T>,
) -> Result<bool> {
    let alpha = p.as_array();
    let target = Some(w);
    Ok(match z {
        Mode::H => {
            h.uniform_dims(&p.vars())?.is_some()
                && h.assemble_cr(alpha)?.as_defined() == target
        }
        Mode::R => h.assemble_cr(alpha)?.as_defined() == target,
        Mode::C => h.assemble_rc(alpha)?.as_defined() == target,
        Mode::P => {
            h.assemble_cr(alpha)?.as_defined() == target
                && h.assemble_rc(alpha)?.as_defined() == target
        }
        Mode::RC => {
            verify_witness(w, p, Mode::R, h)? || verify_witness(w, p, Mode::C, h)?
        }
    })
}

/// A pattern prepared for repeated membership queries in one mode.
#[derive(Clone, Debug)]
pub struct Matcher {
    mode: Mode,
    pattern: Pattern,
    straight: Shape,
    transposed: Shape,
}

impl Matcher {
    pub fn new(pattern: &Pattern, mode: Mode) -> Matcher {
        let straight = Shape::new(pattern.as_array());
        let transposed = Shape::new(&pattern.as_array().transform(GeomOp::Transpose));
        Matcher { mode, pattern: pattern.clone(), straight, transposed }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn decide<T: Clone + Eq>(&self, w: &Array<T>) -> MembershipAnswer<T> {
        if w.is_empty() {
            return MembershipAnswer::No;
        }
        let straight = |mode| match mode {
            Mode::H => self.straight.search_h(w),
            Mode::P => self.straight.search_p(w),
            _ => self.straight.search_r(w),
        };
        let witness = match self.mode {
            Mode::H | Mode::P | Mode::R => straight(self.mode).map(|f| self.straight.witness(w, &f)),
            Mode::C => self.search_c(w),
            Mode::RC => straight(Mode::R)
                .map(|f| self.straight.witness(w, &f))
                .or_else(|| self.search_c(w)),
        };
        match witness {
            Some(h) => MembershipAnswer::Yes(h),
            None => MembershipAnswer::No,
        }
    }

    /// Like [`Matcher::decide`], without building the witness.
    pub fn accepts<T: Clone + Eq>(&self, w: &Array<T>) -> bool {
        if w.is_empty() {
            return false;
        }
        let transposed = || self.transposed.search_r(&w.transform(GeomOp::Transpose)).is_some();
        match self.mode {
            Mode::H => self.straight.search_h(w).is_some(),
            Mode::P => self.straight.search_p(w).is_some(),
            Mode::R => self.straight.search_r(w).is_some(),
            Mode::C => transposed(),
            Mode::RC => self.straight.search_r(w).is_some() || transposed(),
        }
    }

    fn search_c<T: Clone + Eq>(&self, w: &Array<T>) -> Option<Substitution<T>> {
        let wt = w.transform(GeomOp::Transpose);
        let found = self.transposed.search_r(&wt)?;
        let h = self.transposed.witness(&wt, &found);
        Some(h.map_images(|a| a.transform(GeomOp::Transpose)))
    }
}

/// Search-independent facts about a (possibly transposed) pattern.
#[derive(Clone, Debug)]
struct Shape {
    rows: usize,
    cols: usize,
    /// zero-based variable index per cell, row-major
    cells: Vec<usize>,
    nvars: usize,
    /// pattern rows sharing a variable must share a height
    row_class: Vec<usize>,
    /// pattern columns sharing a variable must share a width
    col_class: Vec<usize>,
}

fn classes(n: usize, groups: impl Fn(usize) -> Vec<usize>, nvars: usize) -> Vec<usize> {
    // union-find over lines, joined through the variables they contain
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut seen: Vec<Option<usize>> = vec![None; nvars];
    for line in 0..n {
        for v in groups(line) {
            match seen[v] {
                None => seen[v] = Some(line),
                Some(other) => {
                    let (a, b) = (find(&mut parent, line), find(&mut parent, other));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

impl Shape {
    fn new(p: &Array<Var>) -> Shape {
        let cells: Vec<usize> = p.cells().iter().map(|v| v.index() as usize - 1).collect();
        let nvars = cells.iter().max().map_or(0, |m| m + 1);
        let (rows, cols) = p.dims();
        let row_class = classes(rows, |i| cells[i * cols..(i + 1) * cols].to_vec(), nvars);
        let col_class = classes(cols, |j| (0..rows).map(|i| cells[i * cols + j]).collect(), nvars);
        Shape { rows, cols, cells, nvars, row_class, col_class }
    }

    fn var_at(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.cols + j]
    }

    fn witness<T: Clone>(&self, w: &Array<T>, found: &Found) -> Substitution<T> {
        let mut h = Substitution::new();
        for v in 0..self.nvars {
            let (top, left) = found.anchor[v];
            let (ht, wd) = found.dims[v];
            let var = Var::new(v as u32 + 1).expect("positive index");
            h.insert(var, w.block(top, left, ht, wd)).expect("images are non-empty");
        }
        h
    }

    fn search_h<T: Eq>(&self, w: &Array<T>) -> Option<Found> {
        let (r, c) = w.dims();
        if r % self.rows != 0 || c % self.cols != 0 {
            return None;
        }
        let (m, n) = (r / self.rows, c / self.cols);
        let mut anchor = vec![None; self.nvars];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let at = (i * m, j * n);
                let v = self.var_at(i, j);
                match anchor[v] {
                    None => anchor[v] = Some(at),
                    Some(first) => {
                        if !w.blocks_equal(first, at, m, n) {
                            return None;
                        }
                    }
                }
            }
        }
        Some(Found {
            anchor: anchor.into_iter().map(|a| a.expect("every variable occurs")).collect(),
            dims: vec![(m, n); self.nvars],
        })
    }

    fn search_r<T: Eq>(&self, w: &Array<T>) -> Option<Found> {
        let mut s = RowSearch::new(self, w);
        s.heights(0, 0).then(|| s.found())
    }

    fn search_p<T: Eq>(&self, w: &Array<T>) -> Option<Found> {
        let mut s = GridSearch::new(self, w);
        s.heights(0, 0).then(|| s.found())
    }
}

struct Found {
    anchor: Vec<(usize, usize)>,
    dims: Vec<(usize, usize)>,
}

/// Column-row images: one height per pattern row, free widths per cell.
struct RowSearch<'a, T> {
    shape: &'a Shape,
    w: &'a Array<T>,
    class_h: Vec<usize>,
    row_off: Vec<usize>,
    var_w: Vec<usize>,
    anchor: Vec<(usize, usize)>,
}

impl<'a, T: Eq> RowSearch<'a, T> {
    fn new(shape: &'a Shape, w: &'a Array<T>) -> Self {
        RowSearch {
            shape,
            w,
            class_h: vec![0; shape.rows],
            row_off: vec![0; shape.rows + 1],
            var_w: vec![0; shape.nvars],
            anchor: vec![(0, 0); shape.nvars],
        }
    }

    fn found(&self) -> Found {
        let dims = (0..self.shape.nvars)
            .map(|v| {
                let row = self.anchor_row(v);
                (self.class_h[self.shape.row_class[row]], self.var_w[v])
            })
            .collect();
        Found { anchor: self.anchor.clone(), dims }
    }

    fn anchor_row(&self, v: usize) -> usize {
        (0..self.shape.rows)
            .find(|&i| self.row_off[i] == self.anchor[v].0 && self.row_has(i, v))
            .expect("anchored variable")
    }

    fn row_has(&self, i: usize, v: usize) -> bool {
        (0..self.shape.cols).any(|j| self.shape.var_at(i, j) == v)
    }

    fn heights(&mut self, i: usize, used: usize) -> bool {
        let total = self.w.rows();
        let rows = self.shape.rows;
        if i == rows {
            return used == total && self.widths(0, 0, 0);
        }
        self.row_off[i] = used;
        let class = self.shape.row_class[i];
        if self.class_h[class] != 0 {
            let h = self.class_h[class];
            return used + h + (rows - i - 1) <= total && self.heights(i + 1, used + h);
        }
        let mut h = 1;
        while used + h + (rows - i - 1) <= total {
            self.class_h[class] = h;
            if self.heights(i + 1, used + h) {
                return true;
            }
            h += 1;
        }
        self.class_h[class] = 0;
        false
    }

    fn height_of_row(&self, i: usize) -> usize {
        self.class_h[self.shape.row_class[i]]
    }

    fn widths(&mut self, i: usize, j: usize, off: usize) -> bool {
        let shape = self.shape;
        let total = self.w.cols();
        if j == shape.cols {
            if off != total {
                return false;
            }
            return i + 1 == shape.rows || self.widths(i + 1, 0, 0);
        }
        let v = shape.var_at(i, j);
        let top = self.row_off[i];
        let ht = self.height_of_row(i);
        if self.var_w[v] != 0 {
            let wd = self.var_w[v];
            return off + wd <= total
                && self.w.blocks_equal(self.anchor[v], (top, off), ht, wd)
                && self.widths(i, j + 1, off + wd);
        }
        // known widths and unknown cells still to be placed in this row
        let (mut known, mut own, mut others) = (0, 0, 0);
        for k in j..shape.cols {
            let u = shape.var_at(i, k);
            if self.var_w[u] != 0 {
                known += self.var_w[u];
            } else if u == v {
                own += 1;
            } else {
                others += 1;
            }
        }
        let Some(room) = total.checked_sub(off + known) else {
            return false;
        };
        let candidates = if others == 0 {
            if room % own != 0 || room == 0 {
                return false;
            }
            room / own..=room / own
        } else {
            if room < own + others {
                return false;
            }
            1..=(room - others) / own
        };
        self.anchor[v] = (top, off);
        for wd in candidates {
            self.var_w[v] = wd;
            if self.widths(i, j + 1, off + wd) {
                return true;
            }
        }
        self.var_w[v] = 0;
        false
    }
}

/// Proper images: a grid tiling with one height per pattern row and one width
/// per pattern column.
struct GridSearch<'a, T> {
    shape: &'a Shape,
    w: &'a Array<T>,
    class_h: Vec<usize>,
    class_w: Vec<usize>,
    row_off: Vec<usize>,
    col_off: Vec<usize>,
    anchor: Vec<Option<(usize, usize)>>,
    anchor_cell: Vec<(usize, usize)>,
}

impl<'a, T: Eq> GridSearch<'a, T> {
    fn new(shape: &'a Shape, w: &'a Array<T>) -> Self {
        GridSearch {
            shape,
            w,
            class_h: vec![0; shape.rows],
            class_w: vec![0; shape.cols],
            row_off: vec![0; shape.rows + 1],
            col_off: vec![0; shape.cols + 1],
            anchor: vec![None; shape.nvars],
            anchor_cell: vec![(0, 0); shape.nvars],
        }
    }

    fn found(&self) -> Found {
        let s = self.shape;
        let dims = self
            .anchor_cell
            .iter()
            .map(|&(i, j)| (self.class_h[s.row_class[i]], self.class_w[s.col_class[j]]))
            .collect();
        Found { anchor: self.anchor.iter().map(|a| a.expect("placed")).collect(), dims }
    }

    fn heights(&mut self, i: usize, used: usize) -> bool {
        let total = self.w.rows();
        let rows = self.shape.rows;
        if i == rows {
            return used == total && self.widths(0, 0);
        }
        self.row_off[i] = used;
        let class = self.shape.row_class[i];
        if self.class_h[class] != 0 {
            let h = self.class_h[class];
            return used + h + (rows - i - 1) <= total && self.heights(i + 1, used + h);
        }
        let mut h = 1;
        while used + h + (rows - i - 1) <= total {
            self.class_h[class] = h;
            if self.heights(i + 1, used + h) {
                return true;
            }
            h += 1;
        }
        self.class_h[class] = 0;
        false
    }

    fn widths(&mut self, j: usize, used: usize) -> bool {
        let total = self.w.cols();
        let cols = self.shape.cols;
        if j == cols {
            return used == total;
        }
        self.col_off[j] = used;
        let class = self.shape.col_class[j];
        if self.class_w[class] != 0 {
            let wd = self.class_w[class];
            return used + wd + (cols - j - 1) <= total && self.place_column(j, used, wd);
        }
        let mut wd = 1;
        while used + wd + (cols - j - 1) <= total {
            self.class_w[class] = wd;
            if self.place_column(j, used, wd) {
                return true;
            }
            wd += 1;
        }
        self.class_w[class] = 0;
        false
    }

    fn place_column(&mut self, j: usize, left: usize, wd: usize) -> bool {
        let shape = self.shape;
        let mut fresh = Vec::new();
        let mut ok = true;
        for i in 0..shape.rows {
            let v = shape.var_at(i, j);
            let at = (self.row_off[i], left);
            let ht = self.class_h[shape.row_class[i]];
            match self.anchor[v] {
                Some(first) => {
                    if !self.w.blocks_equal(first, at, ht, wd) {
                        ok = false;
                        break;
                    }
                }
                None => {
                    self.anchor[v] = Some(at);
                    self.anchor_cell[v] = (i, j);
                    fresh.push(v);
                }
            }
        }
        if ok && self.widths(j + 1, left + wd) {
            return true;
        }
        for v in fresh {
            self.anchor[v] = None;
        }
        false
    }
}
