//! The `arraypat` command line. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{concat_pattern, intersect_h, Dir};
use crate::error::{Error, Result};
use crate::grid::{GeomOp, Grid, Symbol};
use crate::membership::{Matcher, MembershipAnswer, Mode};
use crate::oracle::{self, Bounds, Case};
use crate::pattern::Pattern;
use crate::substitution::Substitution;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "arraypat", version, about = "Two-dimensional array pattern languages")]
struct Cli {
    /// Accept the empty array in grid files (for algebraic experiments)
    #[arg(long, global = true)]
    allow_empty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether an array is in the language of a pattern
    Member {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        array: PathBuf,
        /// Print a substitution witnessing membership
        #[arg(long)]
        witness: bool,
        /// Restrict the array to these comma-separated symbols
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Apply a substitution to a pattern
    Apply {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        subst: PathBuf,
        #[arg(long, value_enum)]
        assembly: Assembly,
    },
    /// List the members of a pattern language within bounds
    Enumerate {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Decide every grid in the box instead of enumerating substitutions
        #[arg(long)]
        by_grids: bool,
    },
    /// Decide whether two patterns are equal up to renaming
    Equiv {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        pattern2: PathBuf,
    },
    /// Apply a transpose, reflection or turn
    Transform {
        #[arg(long, value_parser = parse_op)]
        op: GeomOp,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        input: PathBuf,
    },
    /// Pattern for the intersection of two h-mode languages
    IntersectH {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        pattern2: PathBuf,
    },
    /// Pattern for the concatenation of two languages
    Concat {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long, value_parser = parse_dir)]
        dir: Dir,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        pattern2: PathBuf,
    },
    /// Map every symbol of an array, e.g. --map a=1,b=1,c=2
    Project {
        #[arg(long)]
        map: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Run an exhaustive non-closure refutation
    Refute {
        #[arg(long, value_parser = parse_case)]
        case: Case,
        #[arg(long)]
        max_rows: Option<usize>,
        #[arg(long)]
        max_cols: Option<usize>,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Find a smallest array in exactly one of two languages
    Distinguish {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        pattern2: PathBuf,
        #[arg(long, value_parser = parse_mode)]
        mode2: Mode,
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long, default_value = "a,b")]
    alphabet: String,
    #[arg(long)]
    max_rows: usize,
    #[arg(long)]
    max_cols: usize,
}

impl BoundsArgs {
    fn bounds(&self) -> Result<Bounds> {
        Bounds::new(self.max_rows, self.max_cols, Bounds::parse_alphabet(&self.alphabet)?)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Assembly {
    Cr,
    Rc,
    Uniform,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Grid,
    Pattern,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_op(s: &str) -> Result<GeomOp, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dir(s: &str) -> Result<Dir, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn answer(yes: bool, text: String) -> Outcome {
        Outcome { code: if yes { EXIT_YES } else { EXIT_NO }, stdout: text, stderr: String::new() }
    }

    fn ok(text: String) -> Outcome {
        Outcome::answer(true, text)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let mut warnings = String::new();
    match execute(&cli, &mut warnings) {
        Ok(mut out) => {
            out.stderr.insert_str(0, &warnings);
            out
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("{warnings}error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    }
}

fn load_grid(path: &Path, allow_empty: bool) -> Result<Grid> {
    let text = read(path)?;
    let parsed = if allow_empty { Grid::parse_allow_empty(&text) } else { Grid::parse(&text) };
    parsed.map_err(|e| in_file(path, e))
}

fn load_pattern(path: &Path, warnings: &mut String) -> Result<Pattern> {
    let parsed = Pattern::parse(&read(path)?).map_err(|e| in_file(path, e))?;
    if !parsed.was_canonical {
        let shown = parsed.pattern.to_string().replace('\n', " / ");
        let _ = writeln!(
            warnings,
            "warning: {}: pattern is not in canonical form; using [{shown}]",
            path.display()
        );
    }
    Ok(parsed.pattern)
}

fn lines(text: impl std::fmt::Display) -> String {
    format!("{text}\n")
}

fn execute(cli: &Cli, warnings: &mut String) -> Result<Outcome> {
    let allow_empty = cli.allow_empty;
    Ok(match &cli.command {
        Command::Member { mode, pattern, array, witness, alphabet } => {
            let p = load_pattern(pattern, warnings)?;
            let w = load_grid(array, allow_empty)?;
            if let Some(alphabet) = alphabet {
                let allowed = Bounds::parse_alphabet(alphabet)?;
                if let Some(s) = w.symbols().into_iter().find(|s| !allowed.contains(s)) {
                    return Err(Error::Domain(format!("symbol {s} is not in the alphabet {alphabet}")));
                }
            }
            match Matcher::new(&p, *mode).decide(&w) {
                MembershipAnswer::No => Outcome::answer(false, "no\n".into()),
                MembershipAnswer::Yes(h) if *witness => Outcome::ok(format!("yes\nmode: {mode}\n{h}\n")),
                MembershipAnswer::Yes(_) => Outcome::ok("yes\n".into()),
            }
        }
        Command::Apply { pattern, subst, assembly } => {
            let p = load_pattern(pattern, warnings)?;
            let h = Substitution::parse(&read(subst)?).map_err(|e| in_file(subst, e))?;
            let alpha = p.as_array();
            match assembly {
                Assembly::Cr => Outcome::ok(lines(h.assemble_cr(alpha)?)),
                Assembly::Rc => Outcome::ok(lines(h.assemble_rc(alpha)?)),
                Assembly::Uniform => Outcome::ok(lines(h.apply_morphism(alpha)?)),
            }
        }
        Command::Enumerate { mode, pattern, bounds, by_grids } => {
            let p = load_pattern(pattern, warnings)?;
            let b = bounds.bounds()?;
            let fragment = if *by_grids {
                oracle::enumerate_by_grids(&p, *mode, &b)?
            } else {
                oracle::enumerate(&p, *mode, &b)?
            };
            let alphabet: Vec<&str> = b.alphabet.iter().map(Symbol::as_str).collect();
            let mut out = format!(
                "# pattern={} mode={mode} bounds={}x{} alphabet={}\n",
                pattern.display(),
                b.max_rows,
                b.max_cols,
                alphabet.join(",")
            );
            if !fragment.members.is_empty() {
                let _ = writeln!(out, "{}", fragment.members);
            }
            Outcome::ok(out)
        }
        Command::Equiv { pattern, pattern2 } => {
            let p = load_pattern(pattern, warnings)?;
            let q = load_pattern(pattern2, warnings)?;
            let same = p.equivalent(&q);
            Outcome::answer(same, if same { "yes\n".into() } else { "no\n".into() })
        }
        Command::Transform { op, kind, input } => match kind {
            Kind::Grid => Outcome::ok(lines(load_grid(input, allow_empty)?.transform(*op))),
            Kind::Pattern => Outcome::ok(lines(load_pattern(input, warnings)?.transform(*op))),
        },
        Command::IntersectH { pattern, pattern2 } => {
            let p = load_pattern(pattern, warnings)?;
            let q = load_pattern(pattern2, warnings)?;
            Outcome::ok(lines(intersect_h(&p, &q)))
        }
        Command::Concat { mode, dir, pattern, pattern2 } => {
            let p = load_pattern(pattern, warnings)?;
            let q = load_pattern(pattern2, warnings)?;
            Outcome::ok(lines(concat_pattern(&p, &q, *dir, *mode)?))
        }
        Command::Project { map, input } => {
            let w = load_grid(input, allow_empty)?;
            Outcome::ok(lines(w.project(&parse_map(map)?)?))
        }
        Command::Refute { case, max_rows, max_cols, alphabet } => {
            let defaults = case.default_bounds();
            let b = Bounds::new(
                max_rows.unwrap_or(defaults.max_rows),
                max_cols.unwrap_or(defaults.max_cols),
                match alphabet {
                    Some(a) => Bounds::parse_alphabet(a)?,
                    None => defaults.alphabet,
                },
            )?;
            let report = oracle::refute_closure(*case, &b)?;
            Outcome::answer(report.succeeded(), lines(&report))
        }
        Command::Distinguish { pattern, mode, pattern2, mode2, bounds } => {
            let p = load_pattern(pattern, warnings)?;
            let q = load_pattern(pattern2, warnings)?;
            match oracle::distinguish(&p, *mode, &q, *mode2, &bounds.bounds()?)? {
                Some(g) => Outcome::ok(lines(g)),
                None => Outcome::answer(false, "none\n".into()),
            }
        }
    })
}

/// Parses `a=1,b=1,c=2`.
fn parse_map(text: &str) -> Result<BTreeMap<Symbol, Symbol>> {
    let mut map = BTreeMap::new();
    for pair in text.split(',') {
        let (from, to) = pair
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("expected symbol=symbol, got {pair:?}")))?;
        let from = Symbol::new(from.trim())?;
        if map.insert(from.clone(), Symbol::new(to.trim())?).is_some() {
            return Err(Error::Usage(format!("{from} is mapped twice")));
        }
    }
    Ok(map)
}
