//! Published verdicts on specific instances, compared with exhaustive scans.

use std::fmt;

use crate::checkers::Predicate;
use crate::module::Submodule;
use crate::ring::RingKind;

use super::family::{Instance, ModuleInstance};

#[derive(Clone, Copy, Debug)]
pub struct PublishedClaim {
    /// The check this claim is reported under.
    pub check_index: usize,
    pub subject: &'static str,
    pub predicate: Predicate,
    pub claimed: bool,
    matches: fn(&ModuleInstance) -> bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub subject: &'static str,
    pub predicate: Predicate,
    pub claimed: bool,
    pub computed: bool,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "paper-discrepancy: {} is published as {}{}, exhaustive scan says {}",
            self.subject,
            if self.claimed { "" } else { "not " },
            self.predicate,
            if self.computed { "it is" } else { "it is not" },
        )
    }
}

fn z4_over_integers_avoiding_2(m: &ModuleInstance) -> bool {
    matches!(m.ring().kind(), RingKind::IntegerBase(d) if d.exponent == 4 && d.excluded_primes == [2])
        && m.module.radix() == Some(&[4][..])
}

pub fn published_claims() -> Vec<PublishedClaim> {
    vec![PublishedClaim {
        check_index: 9,
        subject: "Z_4 over the integers with S = Z \\ 2Z",
        predicate: Predicate::Strong2AbsorbingSecond,
        claimed: false,
        matches: z4_over_integers_avoiding_2,
    }]
}

/// Claims filed under `check_index` whose instance is present and whose
/// verdict disagrees with the scan of the whole module.
pub fn discrepancies(check_index: usize, instances: &[Instance]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for claim in published_claims().into_iter().filter(|c| c.check_index == check_index) {
        let Some(m) = instances.iter().filter_map(|i| i.module.as_ref()).find(|m| (claim.matches)(m)) else {
            continue;
        };
        let Ok(report) = m.checker.check(claim.predicate, &Submodule::whole(&m.module), &m.s) else {
            continue;
        };
        if report.holds() != claim.claimed {
            out.push(Discrepancy {
                subject: claim.subject,
                predicate: claim.predicate,
                claimed: claim.claimed,
                computed: report.holds(),
            });
        }
    }
    out
}
