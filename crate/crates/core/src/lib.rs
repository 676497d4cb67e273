//! Two-dimensional array pattern languages.
//!
//! A pattern is a rectangular array of variables; substituting a non-empty
//! array for every variable and gluing the pieces together yields a terminal
//! array. Depending on how the pieces must be glued there are five language
//! variants, selected by [`membership::Mode`].

pub mod cli;
pub mod constructions;
pub mod error;
pub mod grid;
pub mod membership;
pub mod oracle;
pub mod pattern;
pub mod substitution;

pub use error::{Error, Result};
pub use grid::{Array, ConcatResult, GeomOp, Grid, Symbol};
pub use membership::{decide, verify_witness, Matcher, MembershipAnswer, Mode};
pub use pattern::{enumerate_patterns, Pattern, Var};
pub use substitution::{Substitution, UniformDims};
