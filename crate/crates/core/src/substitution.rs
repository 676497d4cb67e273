//! Substitutions `h : X → Σ⁺⁺` and the two ways of assembling `h(α)`.
//!
//! [`Substitution::assemble_cr`] column-concatenates the images in every
//! pattern row and then row-concatenates the strips;
//! [`Substitution::assemble_rc`] does the dual. Both are computed as literal
//! nested concatenations so that ⊥ propagates exactly as the definition says.
//! A uniform substitution is a two-dimensional morphism, and for it both
//! assemblies agree ([`Substitution::apply_morphism`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{Array, ConcatResult, Grid, Symbol};
use crate::pattern::Var;

/// Common image dimensions of a uniform substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniformDims {
    pub m: usize,
    pub n: usize,
}

/// A finite map from variables to non-empty arrays.
///
/// With `T = Symbol` this is a terminal substitution (and a membership
/// witness); with `T = Var` it maps variables to pattern blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct Substitution<T = Symbol> {
    images: BTreeMap<Var, Array<T>>,
}

impl<T> Default for Substitution<T> {
    fn default() -> Self {
        Substitution { images: BTreeMap::new() }
    }
}

impl<T> Substitution<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: Var, image: Array<T>) -> Result<()> {
        if image.is_empty() {
            return Err(Error::Domain(format!("image of {var} must be non-empty")));
        }
        self.images.insert(var, image);
        Ok(())
    }

    pub fn with(mut self, var: Var, image: Array<T>) -> Result<Self> {
        self.insert(var, image)?;
        Ok(self)
    }

    pub fn get(&self, var: Var) -> Option<&Array<T>> {
        self.images.get(&var)
    }

    pub fn image(&self, var: Var) -> Result<&Array<T>> {
        self.images.get(&var).ok_or_else(|| Error::IncompleteSubstitution(var.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Array<T>)> {
        self.images.iter().map(|(v, a)| (*v, a))
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.images.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn map_images<U>(&self, mut f: impl FnMut(&Array<T>) -> Array<U>) -> Substitution<U> {
        Substitution { images: self.images.iter().map(|(v, a)| (*v, f(a))).collect() }
    }

    /// Restriction to the given variables.
    pub fn restrict(&self, vars: &BTreeSet<Var>) -> Substitution<T>
    where
        T: Clone,
    {
        Substitution {
            images: self
                .images
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, a)| (*v, a.clone()))
                .collect(),
        }
    }

    /// `Some((m, n))` when every image of a variable in `over` is `m×n`.
    pub fn uniform_dims(&self, over: &BTreeSet<Var>) -> Result<Option<UniformDims>> {
        let mut dims = None;
        for &v in over {
            let d = self.image(v)?.dims();
            match dims {
                None => dims = Some(d),
                Some(seen) if seen != d => return Ok(None),
                Some(_) => {}
            }
        }
        Ok(dims.map(|(m, n)| UniformDims { m, n }))
    }
}

impl<T: Clone> Substitution<T> {
    fn check_complete(&self, p: &Array<Var>) -> Result<()> {
        for v in p.cells() {
            self.image(*v)?;
        }
        Ok(())
    }

    /// `h⊘⊖(p)`: each pattern row is column-concatenated, then the strips are
    /// row-concatenated.
    pub fn assemble_cr(&self, p: &Array<Var>) -> Result<ConcatResult<T>> {
        self.check_complete(p)?;
        let mut acc = ConcatResult::empty();
        for row in p.row_iter() {
            let mut strip = ConcatResult::empty();
            for v in row {
                strip = strip.col_with(&self.images[v]);
            }
            acc = acc.row(&strip);
            if acc.is_undefined() {
                break;
            }
        }
        Ok(acc)
    }

    /// `h⊖⊘(p)`: each pattern column is row-concatenated, then the strips are
    /// column-concatenated.
    pub fn assemble_rc(&self, p: &Array<Var>) -> Result<ConcatResult<T>> {
        self.check_complete(p)?;
        let mut acc = ConcatResult::empty();
        for j in 0..p.cols() {
            let mut strip = ConcatResult::empty();
            for i in 0..p.rows() {
                strip = strip.row_with(&self.images[p.get(i, j)]);
            }
            acc = acc.col(&strip);
            if acc.is_undefined() {
                break;
            }
        }
        Ok(acc)
    }

    /// The image of `p` under the two-dimensional morphism induced by a
    /// uniform substitution.
    pub fn apply_morphism(&self, p: &Array<Var>) -> Result<Array<T>> {
        let vars: BTreeSet<Var> = p.cells().iter().copied().collect();
        if self.uniform_dims(&vars)?.is_none() {
            return Err(Error::MorphismPrecondition(
                "substitution is not uniform on the pattern's variables".into(),
            ));
        }
        self.assemble_cr(p)?
            .defined()
            .ok_or_else(|| Error::MorphismPrecondition("uniform assembly undefined".into()))
    }

    /// `x ↦ outer(inner(x))`, the composition of two morphisms.
    pub fn compose_uniform(outer: &Substitution<T>, inner: &Substitution<Var>) -> Result<Self> {
        if inner.uniform_dims(&inner.domain())?.is_none() {
            return Err(Error::MorphismPrecondition("inner substitution is not uniform".into()));
        }
        let used: BTreeSet<Var> =
            inner.images.values().flat_map(|a| a.cells().iter().copied()).collect();
        if outer.uniform_dims(&used)?.is_none() {
            return Err(Error::MorphismPrecondition("outer substitution is not uniform".into()));
        }
        let mut composed = Substitution::new();
        for (v, block) in inner.iter() {
            composed.insert(v, outer.apply_morphism(block)?)?;
        }
        Ok(composed)
    }
}

impl Substitution<Symbol> {
    /// Parses `x<k> = <row> / <row> / ...` bindings, one per line. Blank lines
    /// are skipped.
    pub fn parse(text: &str) -> Result<Substitution> {
        let mut subst = Substitution::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("line {}: expected `x<k> = ...`", n + 1)))?;
            let var: Var = lhs.trim().parse()?;
            if subst.images.contains_key(&var) {
                return Err(Error::Format(format!("line {}: {var} bound twice", n + 1)));
            }
            let rows = rhs
                .split('/')
                .map(|row| row.split_whitespace().map(Symbol::new).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rows.iter().any(Vec::is_empty) {
                return Err(Error::Format(format!("line {}: empty row in image of {var}", n + 1)));
            }
            let image = Grid::from_rows(rows)
                .map_err(|e| Error::Format(format!("line {}: {e}", n + 1)))?;
            subst.insert(var, image)?;
        }
        Ok(subst)
    }
}

impl<T: fmt::Display> fmt::Display for Substitution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, image)) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v} =")?;
            for (i, row) in image.row_iter().enumerate() {
                if i > 0 {
                    f.write_str(" /")?;
                }
                for cell in row {
                    write!(f, " {cell}")?;
                }
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Substitution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.images.iter()).finish()
    }
}
