//! Regression fixtures in canonical text form.

use std::path::{Path, PathBuf};

use fzeta_core::carlitz::CarlitzContext;
use fzeta_core::laurent::{Comparison, LaurentSeries};
use fzeta_core::motive::phi_build;
use fzeta_core::special::{at_polynomials, mzv_direct, CmplSpec, Index};

use crate::report::{Check, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// A single Laurent series; mismatches report the first differing exponent.
    Series,
    /// One entry per line; mismatches report the first differing line.
    Lines,
}

struct Fixture {
    file: &'static str,
    kind: Kind,
    /// `(p, l)` of the ambient field, for parsing.
    field: (u64, u32),
    bundled: &'static str,
}

const FIXTURES: &[Fixture] = &[
    Fixture { file: "mzv-p3l1-s2,1.txt", kind: Kind::Series, field: (3, 1), bundled: include_str!("../fixtures/mzv-p3l1-s2,1.txt") },
    Fixture { file: "mzv-p2l2-s1.txt", kind: Kind::Series, field: (2, 2), bundled: include_str!("../fixtures/mzv-p2l2-s1.txt") },
    Fixture { file: "pitilde-p2l1.txt", kind: Kind::Series, field: (2, 1), bundled: include_str!("../fixtures/pitilde-p2l1.txt") },
    Fixture { file: "pitilde-p3l1.txt", kind: Kind::Series, field: (3, 1), bundled: include_str!("../fixtures/pitilde-p3l1.txt") },
    Fixture { file: "atpoly-p3l1.txt", kind: Kind::Lines, field: (3, 1), bundled: include_str!("../fixtures/atpoly-p3l1.txt") },
    Fixture { file: "phi-p3l1-s1,2.txt", kind: Kind::Lines, field: (3, 1), bundled: include_str!("../fixtures/phi-p3l1-s1,2.txt") },
];

/// Where fixtures are read from.
#[derive(Clone, Debug)]
pub enum Source {
    Bundled,
    Dir(PathBuf),
}

fn compute(file: &str) -> fzeta_core::Result<String> {
    let ctx = |p, l| CarlitzContext::new(p, l, 40, 10);
    Ok(match file {
        "mzv-p3l1-s2,1.txt" => mzv_direct(&ctx(3, 1)?, &Index::parse("2,1")?, 40)?.value.to_text(),
        "mzv-p2l2-s1.txt" => mzv_direct(&ctx(2, 2)?, &Index::parse("1")?, 40)?.value.to_text(),
        "pitilde-p2l1.txt" => ctx(2, 1)?.pi_tilde(50).to_text(),
        "pitilde-p3l1.txt" => ctx(3, 1)?.pi_tilde(50).to_text(),
        "atpoly-p3l1.txt" => at_polynomials(&ctx(3, 1)?, 8)?.iter().map(|h| h.format()).collect::<Vec<_>>().join("\n"),
        "phi-p3l1-s1,2.txt" => {
            let c = ctx(3, 1)?;
            let s = Index::parse("1,2")?;
            let u = CmplSpec::anderson_thakur(&c, &s)?.u;
            phi_build(&c, &u, &s)?.record().entries.join("\n")
        }
        other => unreachable!("unknown fixture {other}"),
    } + "\n")
}

fn read(fx: &Fixture, source: &Source) -> std::io::Result<String> {
    match source {
        Source::Bundled => Ok(fx.bundled.to_string()),
        Source::Dir(d) => std::fs::read_to_string(d.join(fx.file)),
    }
}

fn compare(fx: &Fixture, expected: &str, actual: &str) -> Check {
    let name = format!("golden/{}", fx.file.trim_end_matches(".txt"));
    match fx.kind {
        Kind::Series => {
            let (p, l) = fx.field;
            let ctx = CarlitzContext::new(p, l, 1, 1).expect("fixture field");
            let parse = |t: &str| LaurentSeries::parse(ctx.field(), ctx.q(), t);
            let (e, a) = match (parse(expected), parse(actual)) {
                (Ok(e), Ok(a)) => (e, a),
                (Err(err), _) => return Check::new(name, Status::Fail, format!("fixture does not parse: {err}")),
                (_, Err(err)) => return Check::error(name, err),
            };
            match e.eq_to_prec(&a) {
                Comparison::Unequal { exponent } => {
                    Check::new(name, Status::Fail, format!("golden mismatch: first differing exponent z^{exponent}"))
                }
                Comparison::Equal { precision } if expected.trim() == actual.trim() => Check::new(
                    name,
                    Status::Pass,
                    format!("matches fixture to {}", crate::report::fmt_floor(precision)),
                ),
                Comparison::Equal { precision } => Check::new(
                    name,
                    Status::Fail,
                    format!(
                        "golden mismatch: values agree to {} but the stored precision differs",
                        crate::report::fmt_floor(precision)
                    ),
                ),
                Comparison::Incomparable { precision } => {
                    Check::new(name, Status::Incomparable, format!("no overlap below O(z^{precision})"))
                }
            }
        }
        Kind::Lines => {
            let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
            match (0..e.len().max(a.len())).find(|&i| e.get(i) != a.get(i)) {
                None => Check::new(name, Status::Pass, format!("matches fixture ({} lines)", e.len())),
                Some(i) => Check::new(name, Status::Fail, format!("golden mismatch: first differing line {}", i + 1)),
            }
        }
    }
}

/// One check per fixture.
pub fn checks(source: &Source) -> Vec<(String, Box<dyn Fn() -> Check + Send + Sync>)> {
    FIXTURES
        .iter()
        .map(|fx| {
            let source = source.clone();
            let job: Box<dyn Fn() -> Check + Send + Sync> = Box::new(move || {
                let name = format!("golden/{}", fx.file.trim_end_matches(".txt"));
                let expected = match read(fx, &source) {
                    Ok(t) => t,
                    Err(e) => return Check::new(name, Status::Fail, format!("fixture unreadable: {e}")),
                };
                match compute(fx.file) {
                    Ok(actual) => compare(fx, &expected, &actual),
                    Err(e) => Check::error(name, e),
                }
            });
            (format!("golden/{}", fx.file), job)
        })
        .collect()
}

/// Writes freshly computed fixtures into `dir`.
pub fn bless(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for fx in FIXTURES {
        let text = compute(fx.file).map_err(std::io::Error::other)?;
        let path = dir.join(fx.file);
        std::fs::write(&path, text)?;
        out.push(path);
    }
    Ok(out)
}
