//! Executable versions of structural theorems about these submodule
//! classes, verified exhaustively over finite instance families.

mod checks;
mod claims;
pub mod family;

use std::fmt;

pub use claims::{published_claims, Discrepancy, PublishedClaim};
pub use family::{
    default_family, product_instance, small_mcs, FamilyOptions, IdealizationInstance, Instance, InstanceKind,
    ModuleInstance, ProductInstance,
};

use crate::error::{Error, Result};

/// Cases a check evaluated on one instance.
#[derive(Debug, Default)]
pub struct Tally {
    pub fired: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.fired += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

pub type CheckFn = fn(&Instance) -> Result<Tally>;

#[derive(Clone, Copy)]
pub struct TheoremCheck {
    /// Position in [`all_checks`], starting at 1.
    pub index: usize,
    pub id: &'static str,
    pub statement: &'static str,
    pub kinds: &'static [InstanceKind],
    run: CheckFn,
}

impl fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.index, self.id)
    }
}

impl TheoremCheck {
    pub fn handles(&self, inst: &Instance) -> bool {
        inst.kinds().iter().any(|k| self.kinds.contains(k))
    }

    pub fn run(&self, inst: &Instance) -> Result<Tally> {
        (self.run)(inst)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    /// Nothing failed but no instance met the hypotheses; the check is
    /// untested on this family.
    Vacuous,
    /// Passed, with a published verdict contradicting an exhaustive scan.
    Discrepancy,
    Refuted,
}

impl CheckStatus {
    pub fn is_refuted(self) -> bool {
        self == CheckStatus::Refuted
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Passed => "passed",
            CheckStatus::Vacuous => "pass-vacuous",
            CheckStatus::Discrepancy => "paper-discrepancy",
            CheckStatus::Refuted => "refuted",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub instance: usize,
    pub label: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationOutcome {
    pub index: usize,
    pub id: &'static str,
    pub statement: &'static str,
    pub instances_tested: usize,
    /// Instances with at least one case, all of which held.
    pub asserted: usize,
    pub vacuous: usize,
    /// Instances dropped because a cap was exceeded.
    pub skipped: usize,
    /// At most [`MAX_REPORTED_FAILURES`], by instance order.
    pub failures: Vec<Failure>,
    pub failing_instances: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub status: CheckStatus,
}

pub const MAX_REPORTED_FAILURES: usize = 5;

/// Every check, in index order.
pub fn all_checks() -> Vec<TheoremCheck> {
    checks::registry()
        .into_iter()
        .enumerate()
        .map(|(i, (id, statement, kinds, run))| TheoremCheck { index: i + 1, id, statement, kinds, run })
        .collect()
}

/// Looks a check up by id or by its 1-based index.
pub fn find_check(key: &str) -> Option<TheoremCheck> {
    let checks = all_checks();
    if let Ok(i) = key.parse::<usize>() {
        return checks.get(i.checked_sub(1)?).copied();
    }
    checks.into_iter().find(|c| c.id == key)
}

enum Run {
    Tally(Tally),
    Skipped,
    Crashed(String),
}

fn run_one(check: &TheoremCheck, inst: &Instance) -> Run {
    match check.run(inst) {
        Ok(t) => Run::Tally(t),
        Err(Error::CapExceeded { .. }) => Run::Skipped,
        Err(e) => Run::Crashed(e.to_string()),
    }
}

#[cfg(feature = "parallel")]
fn run_all(check: &TheoremCheck, instances: &[&Instance]) -> Vec<Run> {
    use rayon::prelude::*;
    instances.par_iter().map(|i| run_one(check, i)).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(check: &TheoremCheck, instances: &[&Instance]) -> Vec<Run> {
    instances.iter().map(|i| run_one(check, i)).collect()
}

pub fn verify(check: &TheoremCheck, instances: &[Instance]) -> VerificationOutcome {
    let handled: Vec<&Instance> = instances.iter().filter(|i| check.handles(i)).collect();
    let runs = run_all(check, &handled);
    let mut out = VerificationOutcome {
        index: check.index,
        id: check.id,
        statement: check.statement,
        instances_tested: 0,
        asserted: 0,
        vacuous: 0,
        skipped: 0,
        failures: Vec::new(),
        failing_instances: 0,
        discrepancies: claims::discrepancies(check.index, instances),
        status: CheckStatus::Passed,
    };
    for (inst, run) in handled.iter().zip(runs) {
        let failure = match run {
            Run::Skipped => {
                out.skipped += 1;
                continue;
            }
            Run::Crashed(e) => Some(format!("error: {e}")),
            Run::Tally(t) if t.failed > 0 => {
                Some(format!("{} of {} cases fail; first: {}", t.failed, t.fired, t.first_failure.unwrap_or_default()))
            }
            Run::Tally(t) => {
                if t.fired == 0 {
                    out.vacuous += 1;
                } else {
                    out.asserted += 1;
                }
                None
            }
        };
        out.instances_tested += 1;
        if let Some(detail) = failure {
            out.failing_instances += 1;
            if out.failures.len() < MAX_REPORTED_FAILURES {
                out.failures.push(Failure { instance: inst.index, label: inst.label.clone(), detail });
            }
        }
    }
    out.status = if out.failing_instances > 0 {
        CheckStatus::Refuted
    } else if out.asserted == 0 {
        CheckStatus::Vacuous
    } else if !out.discrepancies.is_empty() {
        CheckStatus::Discrepancy
    } else {
        CheckStatus::Passed
    };
    out
}
