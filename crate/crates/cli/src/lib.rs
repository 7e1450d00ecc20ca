//! Command implementations behind the `absorb` binary.

pub mod doc;
pub mod error;
pub mod gen;
pub mod report;

use std::path::Path;

use absorb_core::theorems::{all_checks, default_family, find_check, verify, CheckStatus, FamilyOptions, Instance, TheoremCheck};
use absorb_core::{CheckOptions, Checker, Predicate, Submodule};

use crate::doc::Built;
use crate::error::{CliError, Result};
use crate::report::{OutcomeRow, Report, ResultRow};

pub const EXIT_OK: i32 = 0;
/// A refutation, or a verdict other than the one passed to `--expect`.
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub fn load(path: &Path, max_order: usize) -> Result<Built> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    doc::build(&doc::parse_instance(&text)?, max_order)
}

/// Named submodules of the document, or the whole module when none are named.
fn targets(built: &Built) -> Vec<(String, Submodule)> {
    if built.submodules.is_empty() {
        vec![("M".to_string(), Submodule::whole(&built.module))]
    } else {
        built.submodules.clone()
    }
}

/// Checks every target against every predicate; the flag is false when some
/// verdict differs from `expect`.
pub fn cmd_check(
    command: String,
    built: &Built,
    predicates: &[Predicate],
    expect: Option<bool>,
    opts: CheckOptions,
) -> Result<(Report, bool)> {
    let checker = Checker::new(&built.module, opts);
    let mut report = Report::new(command);
    report.instance = Some(built.label());
    let mut as_expected = true;
    for (name, n) in targets(built) {
        for &p in predicates {
            let r = checker.check(p, &n, &built.mcs)?;
            as_expected &= expect.is_none_or(|e| r.holds() == e);
            report.results.push(ResultRow::new(&name, &n, &r));
        }
    }
    Ok((report, as_expected))
}

/// Every submodule in lattice order, named by its position.
pub fn cmd_classify(
    command: String,
    built: &Built,
    predicate: Predicate,
    expect: Option<bool>,
    opts: CheckOptions,
) -> Result<(Report, bool)> {
    let checker = Checker::new(&built.module, opts);
    let mut report = Report::new(command);
    report.instance = Some(built.label());
    let mut as_expected = true;
    let mut holding = 0;
    let rows = checker.classify(predicate, &built.mcs)?;
    for (i, (n, r)) in rows.iter().enumerate() {
        as_expected &= expect.is_none_or(|e| r.holds() == e);
        holding += usize::from(r.holds());
        report.results.push(ResultRow::new(&format!("L{i}"), n, r));
    }
    report.summary = Some(format!("{holding} of {} submodules satisfy {predicate}", rows.len()));
    Ok((report, as_expected))
}

/// Resolves `all`, ids and 1-based indices.
pub fn select_checks(keys: &[String]) -> Result<Vec<TheoremCheck>> {
    if keys.iter().any(|k| k == "all") {
        return Ok(all_checks());
    }
    let mut out: Vec<TheoremCheck> = Vec::new();
    for k in keys {
        let c = find_check(k).ok_or_else(|| CliError::Usage(format!("unknown check `{k}`")))?;
        if !out.iter().any(|o| o.index == c.index) {
            out.push(c);
        }
    }
    out.sort_by_key(|c| c.index);
    Ok(out)
}

pub fn default_instances(max_order: usize, opts: CheckOptions) -> Result<Vec<Instance>> {
    let base = FamilyOptions::default();
    let fam = FamilyOptions {
        check: opts,
        max_module_order: base.max_module_order.min(max_order),
        max_idealization_order: base.max_idealization_order.min(max_order),
    };
    Ok(default_family(fam)?)
}

/// Runs the checks; the flag is true when one was refuted.
pub fn cmd_verify(command: String, family: &str, instances: &[Instance], checks: &[TheoremCheck]) -> (Report, bool) {
    let mut report = Report::new(command);
    report.instance = Some(format!("{family} ({} instances)", instances.len()));
    let outcomes: Vec<_> = checks.iter().map(|c| verify(c, instances)).collect();
    let count = |s: CheckStatus| outcomes.iter().filter(|o| o.status == s).count();
    let refuted = count(CheckStatus::Refuted);
    report.summary = Some(format!(
        "{} checks, {} passed, {} pass-vacuous, {} paper-discrepancy, {refuted} refuted",
        outcomes.len(),
        count(CheckStatus::Passed),
        count(CheckStatus::Vacuous),
        count(CheckStatus::Discrepancy),
    ));
    report.outcomes = outcomes.iter().map(OutcomeRow::from).collect();
    (report, refuted > 0)
}
