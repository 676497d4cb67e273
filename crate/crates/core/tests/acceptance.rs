//! Acceptance suite: each criterion prints a single `PASS`/`FAIL criterion N`
//! line. Criteria run one after another so the timings do not interfere;
//! the process fails if any criterion does. Time limits are pinned below.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use arraypat::constructions::{concat_pattern, intersect_h, Dir};
use arraypat::grid::ConcatResult;
use arraypat::oracle::{
    distinguish, enumerate, for_each_grid, refute_closure, set_op, Bounds, Case, GridSet, LangFragment,
    SeparatorKind, SetOp,
};
use arraypat::{
    enumerate_patterns, verify_witness, Error, GeomOp, Grid, Matcher, Mode, Pattern, Substitution, Symbol,
};

const LIMIT_EXAMPLES: Duration = Duration::from_secs(1);
const LIMIT_SEPARATION: Duration = Duration::from_secs(10);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);
const LIMIT_CONSTRUCTIONS: Duration = Duration::from_secs(60);
const LIMIT_REFUTATIONS: Duration = Duration::from_secs(60);
const LIMIT_GEOMETRY: Duration = Duration::from_secs(60);
const LIMIT_H_SMOKE: Duration = Duration::from_millis(100);

/// Collects named checks for one criterion and reports them on one line.
struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    start: Instant,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(number: u32, title: &'static str, limit: Duration) -> Self {
        Criterion { number, title, limit, start: Instant::now(), failures: Vec::new(), checks: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Prints the verdict line and reports whether the criterion passed.
    fn finish(self) -> bool {
        let elapsed = self.start.elapsed();
        let mut failures = self.failures;
        if elapsed > self.limit {
            failures.push(format!("took {elapsed:.2?}, limit {:?}", self.limit));
        }
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {} ({} checks, {elapsed:.2?} of {:?})",
            self.number, self.title, self.checks, self.limit
        );
        for f in failures.iter().take(12) {
            println!("    - {f}");
        }
        if failures.len() > 12 {
            println!("    ... {} more", failures.len() - 12);
        }
        failures.is_empty()
    }
}

fn g(text: &str) -> Grid {
    Grid::parse(text).unwrap()
}

fn p(text: &str) -> Pattern {
    text.parse().unwrap()
}

/// One-line rendering for reports.
fn flat(x: &impl std::fmt::Display) -> String {
    x.to_string().trim_end().replace('\n', " / ")
}

fn sym(s: &str) -> Symbol {
    Symbol::new(s).unwrap()
}

fn ab(rows: usize, cols: usize) -> Bounds {
    Bounds::with_tokens(rows, cols, &["a", "b"]).unwrap()
}

fn frag(pat: &Pattern, z: Mode, b: &Bounds) -> LangFragment {
    enumerate(pat, z, b).unwrap()
}

fn accepts(pat: &Pattern, z: Mode, w: &Grid) -> bool {
    Matcher::new(pat, z).accepts(w)
}

/// Patterns of every shape up to `rows × cols`.
fn patterns_up_to(rows: usize, cols: usize) -> Vec<Pattern> {
    let mut out = Vec::new();
    for r in 1..=rows {
        for c in 1..=cols {
            out.extend(enumerate_patterns(r, c).unwrap());
        }
    }
    out
}

fn criterion_1_worked_examples() -> bool {
    let mut crit = Criterion::new(1, "worked examples reproduce exactly", LIMIT_EXAMPLES);

    // concatenation example
    let w1 = g("a b a\nb c a\na b b");
    let w2 = g("b c\nb a\nc a");
    let w3 = g("a b c\nc b b");
    crit.check(w1.row_concat(&w3) == ConcatResult::Defined(g("a b a\nb c a\na b b\na b c\nc b b")), || {
        "W1 ⊖ W3".into()
    });
    crit.check(w1.row_concat(&w2).is_undefined(), || "W1 ⊖ W2 should be undefined".into());
    crit.check(w1.col_concat(&w2) == ConcatResult::Defined(g("a b a b c\nb c a b a\na b b c a")), || {
        "W1 ⊘ W2".into()
    });
    crit.check(w1.col_concat(&w3).is_undefined(), || "W1 ⊘ W3 should be undefined".into());

    // geometric transforms of U
    let u = g("a b c d\ne f g h");
    let expected = [
        (GeomOp::Transpose, "a e\nb f\nc g\nd h"),
        (GeomOp::HFlip, "e f g h\na b c d"),
        (GeomOp::VFlip, "d c b a\nh g f e"),
        (GeomOp::RightTurn, "e a\nf b\ng c\nh d"),
        (GeomOp::LeftTurn, "d h\nc g\nb f\na e"),
        (GeomOp::HalfTurn, "h g f e\nd c b a"),
    ];
    for (op, text) in expected {
        crit.check(u.transform(op) == g(text), || format!("{op} of U"));
    }
    let twice = u.transform(GeomOp::RightTurn).transform(GeomOp::RightTurn);
    crit.check(twice == u.transform(GeomOp::HalfTurn), || "two right turns".into());
    let conj = g("a b a a\nb a a b").conjugate((&sym("a"), &sym("b"))).unwrap();
    crit.check(conj == g("b a b b\na b b a"), || "conjugation".into());

    // W in L_p(α) with both characteristic factorisations
    let w = g("a a b a a b\na a b a a b\nc c c c c c");
    let alpha = p("x1 x1\nx2 x2");
    let h = Substitution::parse("x1 = a a b / a a b\nx2 = c c c").unwrap();
    crit.check(h.assemble_cr(alpha.as_array()).unwrap() == ConcatResult::Defined(w.clone()), || {
        "column-row factorisation of W".into()
    });
    crit.check(h.assemble_rc(alpha.as_array()).unwrap() == ConcatResult::Defined(w.clone()), || {
        "row-column factorisation of W".into()
    });
    crit.check(verify_witness(&w, &alpha, Mode::P, &h).unwrap(), || "verify_witness on W".into());
    crit.check(arraypat::decide(&w, &alpha, Mode::P).is_yes(), || "decide W in p-mode".into());

    // W′: column-row only
    let alpha2 = p("x1 x2 x3\nx2 x3 x1");
    let h2 = Substitution::parse("x1 = a a a\nx2 = b\nx3 = c").unwrap();
    let w_prime = g("a a a b c\nb c a a a");
    crit.check(h2.assemble_cr(alpha2.as_array()).unwrap() == ConcatResult::Defined(w_prime), || {
        "h⊘⊖(α′) = W′".into()
    });
    crit.check(h2.assemble_rc(alpha2.as_array()).unwrap().is_undefined(), || "h⊖⊘(α′) undefined".into());

    // renaming
    let parsed = Pattern::parse("x7 x3 x7\nx3 x5 x5").unwrap();
    crit.check(!parsed.was_canonical, || "renamed pattern flagged canonical".into());
    crit.check(parsed.pattern.equivalent(&p("x1 x2 x1\nx2 x3 x3")), || "renaming pair".into());

    crit.finish()
}

fn criterion_2_separation_table() -> bool {
    let mut crit = Criterion::new(2, "separation table confirmed at (4,4,{a,b})", LIMIT_SEPARATION);
    let b = ab(4, 4);
    let beta = p("x1 x2\nx3 x4");
    let gamma = p("x1 x2\nx2 x1");
    let table_entry = |z1: Mode, z2: Mode| if z1 == Mode::H || z2 == Mode::H { &beta } else { &gamma };
    let mut fragments: BTreeMap<(&str, Mode), LangFragment> = BTreeMap::new();
    for z in Mode::ALL {
        fragments.insert(("beta", z), frag(&beta, z, &b));
        fragments.insert(("gamma", z), frag(&gamma, z, &b));
    }
    let in_frag = |name: &str, z: Mode, w: &Grid| fragments[&(name, z)].contains(w);

    for z1 in Mode::ALL {
        for z2 in Mode::ALL {
            if z1 == z2 {
                continue;
            }
            let pat = table_entry(z1, z2);
            let sep = distinguish(pat, z1, pat, z2, &b).unwrap();
            crit.check(sep.is_some(), || format!("no separator for [{}] between {z1} and {z2}", flat(pat)));
            if let Some(w) = sep {
                crit.check(accepts(pat, z1, &w) != accepts(pat, z2, &w), || {
                    format!("separator for {z1}/{z2} is not in the symmetric difference")
                });
            }
        }
    }

    // the displayed witnesses
    let square = g("a a a\na a a\na a a");
    crit.check(!in_frag("beta", Mode::H, &square), || "3×3 all-a in L_h(β)".into());
    for z in [Mode::P, Mode::R, Mode::C, Mode::RC] {
        crit.check(in_frag("beta", z, &square), || format!("3×3 all-a missing from L_{z}(β)"));
    }
    let w1 = g("a a\na a\na a");
    let w2 = g("a a a\na a a");
    let parity = [
        (Mode::P, false, false),
        (Mode::R, false, true),
        (Mode::C, true, false),
        (Mode::RC, true, true),
    ];
    for (z, has_w1, has_w2) in parity {
        crit.check(in_frag("gamma", z, &w1) == has_w1, || format!("W1 membership in L_{z}(γ)"));
        crit.check(in_frag("gamma", z, &w2) == has_w2, || format!("W2 membership in L_{z}(γ)"));
    }
    let first = distinguish(&gamma, Mode::P, &gamma, Mode::C, &b).unwrap();
    crit.check(first.as_ref() == Some(&w1), || format!("p vs c separator {first:?}"));
    println!("note: the REC row and column of the table are outside this library");

    crit.finish()
}

fn criterion_3_oracle_equivalence() -> bool {
    let mut crit = Criterion::new(3, "decide agrees with enumeration for all grids ≤ 4×4", LIMIT_ORACLE);
    let b = ab(4, 4);
    let shapes = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)];
    let mut patterns = 0;
    let mut grids = 0u64;
    for (r, c) in shapes {
        for pat in enumerate_patterns(r, c).unwrap() {
            patterns += 1;
            let matchers: Vec<Matcher> = Mode::ALL.iter().map(|&z| Matcher::new(&pat, z)).collect();
            let fragments: Vec<LangFragment> = Mode::ALL.iter().map(|&z| frag(&pat, z, &b)).collect();
            let mut accepted = [0usize; 5];
            let mut chain_breaks = Vec::new();
            for_each_grid(&b, |a| {
                grids += 1;
                let yes: Vec<bool> = matchers.iter().map(|m| m.accepts(a)).collect();
                for (k, &y) in yes.iter().enumerate() {
                    accepted[k] += y as usize;
                }
                let [h, pp, rr, cc, rc] = [yes[0], yes[1], yes[2], yes[3], yes[4]];
                if (h && !pp) || (pp && !(rr && cc)) || rc != (rr || cc) {
                    chain_breaks.push(a.clone());
                }
            });
            for (k, z) in Mode::ALL.iter().enumerate() {
                let members = &fragments[k].members;
                // members ⊆ accepted and equal counts ⟹ equal sets
                let all_accepted = members.iter_encoded().all(|a| matchers[k].accepts(&a));
                crit.check(all_accepted && members.len() == accepted[k], || {
                    format!("{pat} in {z}: {} enumerated vs {} decided", members.len(), accepted[k])
                });
            }
            crit.check(chain_breaks.is_empty(), || format!("{pat}: inclusion chain broken"));
        }
    }
    crit.check(patterns == 228, || format!("{patterns} patterns, expected 228"));
    println!("note: {patterns} patterns, {grids} (pattern, grid) pairs, five modes each");
    crit.finish()
}

/// Whether some pattern of the forced shape describes `target` at `b`.
fn any_pattern_describes(target: &GridSet, z: Mode, b: &Bounds) -> Option<bool> {
    let (r, c) = target.shapes().next()?;
    if r * c > 6 {
        return None;
    }
    Some(enumerate_patterns(r, c).unwrap().iter().any(|cand| &frag(cand, z, b).members == target))
}

fn criterion_4_closure_constructions() -> bool {
    let mut crit = Criterion::new(4, "intersection and concatenation constructions", LIMIT_CONSTRUCTIONS);
    let b = ab(4, 4);
    let operands = patterns_up_to(2, 2);
    let h_frags: Vec<LangFragment> = operands.iter().map(|q| frag(q, Mode::H, &b)).collect();

    for (i, p1) in operands.iter().enumerate() {
        for (j, p2) in operands.iter().enumerate() {
            let gamma = intersect_h(p1, p2);
            let expected = set_op(&h_frags[i], &h_frags[j], SetOp::Intersection).unwrap();
            crit.check(frag(&gamma, Mode::H, &b).members == expected, || {
                format!("intersect_h([{}], [{}]) = [{}]", flat(p1), flat(p2), flat(&gamma))
            });
        }
    }

    let supported =
        [(Mode::R, Dir::Row), (Mode::C, Dir::Col), (Mode::P, Dir::Row), (Mode::P, Dir::Col), (Mode::H, Dir::Row), (Mode::H, Dir::Col)];
    for (z, dir) in supported {
        let frags: Vec<LangFragment> = operands.iter().map(|q| frag(q, z, &b)).collect();
        let op = if dir == Dir::Row { SetOp::RowConcat } else { SetOp::ColConcat };
        let mut mismatches = 0;
        let mut example = None;
        for (i, p1) in operands.iter().enumerate() {
            for (j, p2) in operands.iter().enumerate() {
                let gamma = concat_pattern(p1, p2, dir, z).unwrap();
                let expected = set_op(&frags[i], &frags[j], op).unwrap();
                let got = frag(&gamma, z, &b).members;
                if got != expected {
                    mismatches += 1;
                    if example.is_none() {
                        let (w, in_got) = got.first_difference(&expected).unwrap().unwrap();
                        example = Some((p1.clone(), p2.clone(), gamma, w, in_got, expected));
                    }
                }
            }
        }
        crit.check(mismatches == 0, || {
            let (p1, p2, gamma, w, in_got, expected) = example.clone().unwrap();
            let side = if in_got { "only in the pattern's language" } else { "only in the concatenation" };
            let exists = match any_pattern_describes(&expected, z, &b) {
                Some(true) => "another pattern of the forced shape does describe it",
                Some(false) => "no pattern of the forced shape describes it",
                None => "forced shape too large to search",
            };
            format!(
                "{z}/{dir}: {mismatches} of {} pairs differ; e.g. [{}] {dir} [{}] ↦ [{}], {} {side}; {exists}",
                operands.len() * operands.len(),
                flat(&p1),
                flat(&p2),
                flat(&gamma),
                flat(&w)
            )
        });
    }

    for (z, dir) in [(Mode::R, Dir::Col), (Mode::C, Dir::Row), (Mode::RC, Dir::Row), (Mode::RC, Dir::Col)] {
        let err = concat_pattern(&p("x1"), &p("x1"), dir, z);
        crit.check(matches!(err, Err(Error::Unsupported(_))), || format!("{z}/{dir} not rejected"));
    }

    // the explicit counterexample array U
    let alpha = p("x1 x2\nx2 x3");
    let zeta = p("x1 x2 x3 x4\nx2 x5 x4 x6");
    let u = g("a a b a b b\nb a b b a b");
    crit.check(accepts(&zeta, Mode::R, &u), || "U not accepted by ζ in r-mode".into());
    let ub = ab(2, 6);
    let a_frag = frag(&alpha, Mode::R, &ub);
    let concat = set_op(&a_frag, &a_frag, SetOp::ColConcat).unwrap();
    crit.check(!concat.contains(&u), || {
        let split = (1..u.cols()).find(|&k| {
            let left = u.subgrid(1, 1, 2, k).unwrap();
            let right = u.subgrid(1, k + 1, 2, u.cols() - k).unwrap();
            accepts(&alpha, Mode::R, &left) && accepts(&alpha, Mode::R, &right)
        });
        match split {
            Some(k) => format!(
                "U is in L_r(α) ⊘ L_r(α): split after column {k} gives [{}] ⊘ [{}]",
                flat(&u.subgrid(1, 1, 2, k).unwrap()),
                flat(&u.subgrid(1, k + 1, 2, u.cols() - k).unwrap())
            ),
            None => "U found in the concatenation fragment".into(),
        }
    });

    crit.finish()
}

fn criterion_5_refutations() -> bool {
    let mut crit = Criterion::new(5, "non-closure refutations exhaust their candidates", LIMIT_REFUTATIONS);
    for case in Case::ALL {
        let report = refute_closure(case, &case.default_bounds()).unwrap();
        let candidates: usize = report.modes.iter().map(|m| m.candidates.len()).sum();
        crit.check(report.succeeded(), || format!("{} not refuted", case.name()));
        crit.check(report.modes.len() == case.modes().len(), || format!("{}: modes missing", case.name()));
        println!("note: {}: {candidates} candidates over {} modes", case.name(), report.modes.len());
    }

    // the hand-picked witnesses are genuine separators
    let xyx = p("x1 x2 x1");
    let xxy = p("x1 x1 x2");
    for z in Mode::ALL {
        let union = Case::Union.target(z, &Case::Union.default_bounds()).unwrap();
        crit.check(union.len() == 6, || format!("union target in {z} has {} members", union.len()));
        crit.check(union.contains(&g("a a b")) && !accepts(&xyx, z, &g("a a b")), || {
            format!("[x1 x2 x1] should miss a a b in {z}")
        });
        crit.check(union.contains(&g("a b a")) && !accepts(&xxy, z, &g("a b a")), || {
            format!("[x1 x1 x2] should miss a b a in {z}")
        });
        crit.check(!union.contains(&g("a b b")) && accepts(&p("x1 x2 x3"), z, &g("a b b")), || {
            format!("[x1 x2 x3] should overshoot in {z}")
        });
    }
    for &z in Case::Intersection.modes() {
        let target = Case::Intersection.target(z, &Case::Intersection.default_bounds()).unwrap();
        let w = g("a a b a a");
        crit.check(target.contains(&w) && !accepts(&p("x1 x1 x1"), z, &w), || {
            format!("a a b a a should separate [x1 x1 x1] in {z}")
        });
    }
    let report = refute_closure(Case::Kleene, &Case::Kleene.default_bounds()).unwrap();
    for m in &report.modes {
        for cand in &m.candidates {
            let expected = if cand.pattern == p("x1 x1") {
                Some((g("a a b b"), SeparatorKind::Missing))
            } else {
                Some((g("a b"), SeparatorKind::Overshoot))
            };
            crit.check(cand.separator == expected, || {
                format!("kleene {}: [{}] separated by {:?}", m.mode, flat(&cand.pattern), cand.separator)
            });
        }
    }
    crit.finish()
}

fn criterion_6_geometry_and_projection() -> bool {
    let mut crit = Criterion::new(6, "geometric and projection closure at (3,3,{a,b})", LIMIT_GEOMETRY);
    let b = ab(3, 3);
    let abc = Bounds::with_tokens(3, 3, &["a", "b", "c"]).unwrap();
    let patterns: Vec<Pattern> =
        patterns_up_to(3, 3).into_iter().filter(|q| q.rows() * q.cols() <= 6).collect();
    let alphabet = b.alphabet.clone();
    let (a, bb) = (sym("a"), sym("b"));
    let pi: BTreeMap<Symbol, Symbol> = [("a", "a"), ("b", "b"), ("c", "a")].map(|(k, v)| (sym(k), sym(v))).into();

    for pat in &patterns {
        let by_mode: BTreeMap<Mode, LangFragment> = Mode::ALL.iter().map(|&z| (z, frag(pat, z, &b))).collect();
        for z in Mode::ALL {
            let members = &by_mode[&z].members;
            let mut ops = vec![GeomOp::HalfTurn, GeomOp::HFlip, GeomOp::VFlip];
            if matches!(z, Mode::H | Mode::P | Mode::RC) {
                ops.extend([GeomOp::Transpose, GeomOp::RightTurn, GeomOp::LeftTurn]);
            }
            for op in ops {
                let image = members.map_grids(alphabet.clone(), |w| w.transform(op)).unwrap();
                crit.check(image == frag(&pat.transform(op), z, &b).members, || {
                    format!("{op} of L_{z}([{}])", flat(pat))
                });
            }
            // projection: π(L_{a,b,c}) = L_{a,b}
            let big = frag(pat, z, &abc).members;
            let projected = big.map_grids(alphabet.clone(), |w| w.project(&pi).unwrap()).unwrap();
            crit.check(&projected == members, || format!("projection of L_{z}([{}])", flat(pat)));
            // a bijection (conjugation) maps the language onto itself
            let conj = members.map_grids(alphabet.clone(), |w| w.conjugate((&a, &bb)).unwrap()).unwrap();
            crit.check(&conj == members, || format!("conjugation of L_{z}([{}])", flat(pat)));
        }
        // transpose duality between r and c
        let t = pat.transform(GeomOp::Transpose);
        for (z, dual) in [(Mode::R, Mode::C), (Mode::C, Mode::R)] {
            let image = by_mode[&z].members.map_grids(alphabet.clone(), |w| w.transform(GeomOp::Transpose));
            crit.check(image.unwrap() == frag(&t, dual, &b).members, || format!("transpose of L_{z}([{}])", flat(pat)));
        }
    }

    // a non-surjective coding leaves the class: π(L(x)) has no b
    let collapse: BTreeMap<Symbol, Symbol> = [("a", "a"), ("b", "a")].map(|(k, v)| (sym(k), sym(v))).into();
    let image = frag(&p("x1"), Mode::P, &b)
        .members
        .map_grids(alphabet.clone(), |w| w.project(&collapse).unwrap())
        .unwrap();
    crit.check(image.iter().all(|w| !w.cells().contains(&bb)), || "collapsed image contains b".into());
    for pat in &patterns {
        for z in Mode::ALL {
            let has_b = frag(pat, z, &b).members.iter().any(|w| w.cells().contains(&bb));
            crit.check(has_b, || format!("L_{z}([{}]) avoids b", flat(pat)));
        }
    }

    // γ = γᵀ, yet the r and c languages differ, so neither is closed under transposition or quarter-turns
    let gamma = p("x1 x2\nx2 x1");
    crit.check(gamma.transform(GeomOp::Transpose) == gamma, || "γ ≠ γᵀ".into());
    crit.check(gamma.transform(GeomOp::RightTurn) == gamma, || "γ not invariant under a turn".into());
    let r = frag(&gamma, Mode::R, &b).members;
    let c = frag(&gamma, Mode::C, &b).members;
    let r_t = r.map_grids(alphabet.clone(), |w| w.transform(GeomOp::Transpose)).unwrap();
    crit.check(r_t == c, || "L_r(γ)ᵀ ≠ L_c(γ)".into());
    let sep = r.first_difference(&c).unwrap();
    crit.check(sep == Some((g("a a a\na a a"), true)), || format!("r vs c separator {sep:?}"));

    crit.finish()
}

fn criterion_7_h_mode_smoke() -> bool {
    let mut crit = Criterion::new(7, "h-mode membership on 60×60 through the binary (two queries, each < 100ms)", LIMIT_H_SMOKE);
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let pattern = "x1 x2 x1\nx3 x4 x3\nx1 x2 x1\n";
    let block = |k: usize, i: usize, j: usize| if (i * 7 + j * 3 + k) % 5 < 2 { "a" } else { "b" };
    let ids = [[0, 1, 0], [2, 3, 2], [0, 1, 0]];
    let mut rows: Vec<Vec<&str>> = (0..60)
        .map(|i| (0..60).map(|j| block(ids[i / 20][j / 20], i % 20, j % 20)).collect())
        .collect();
    let to_text = |rows: &Vec<Vec<&str>>| rows.iter().map(|r| r.join(" ") + "\n").collect::<String>();
    let pat_path = dir.join("smoke.pat");
    let yes_path = dir.join("smoke_yes.grid");
    let no_path = dir.join("smoke_no.grid");
    std::fs::write(&pat_path, pattern).unwrap();
    std::fs::write(&yes_path, to_text(&rows)).unwrap();
    rows[45][5] = if rows[45][5] == "a" { "b" } else { "a" };
    std::fs::write(&no_path, to_text(&rows)).unwrap();

    crit.start = Instant::now();
    let mut slowest = Duration::ZERO;
    for (path, code, answer) in [(&yes_path, 0, "yes\n"), (&no_path, 1, "no\n")] {
        let t = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_arraypat"))
            .args(["member", "--mode", "h", "--pattern"])
            .arg(&pat_path)
            .arg("--array")
            .arg(path)
            .output()
            .unwrap();
        slowest = slowest.max(t.elapsed());
        crit.check(out.status.code() == Some(code), || format!("exit {:?} for {}", out.status.code(), path.display()));
        crit.check(String::from_utf8_lossy(&out.stdout) == answer, || format!("wrong answer for {}", path.display()));
    }
    // the limit applies per query
    crit.limit = LIMIT_H_SMOKE * 2;
    crit.check(slowest < LIMIT_H_SMOKE, || format!("slowest query {slowest:.2?}"));
    crit.finish()
}

fn main() {
    let criteria: [fn() -> bool; 7] = [
        criterion_1_worked_examples,
        criterion_2_separation_table,
        criterion_3_oracle_equivalence,
        criterion_4_closure_constructions,
        criterion_5_refutations,
        criterion_6_geometry_and_projection,
        criterion_7_h_mode_smoke,
    ];
    let failed = criteria.iter().filter(|c| !c()).count();
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
