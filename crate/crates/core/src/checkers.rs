//! Decision procedures for the prime, second and 2-absorbing families.
//!
//! Every S-relative predicate has the shape "some fixed `s ∈ S` works for
//! all tuples". Candidates `s` are tried in ascending index order, so a true
//! verdict reports the least witness. The non-relative predicates run the
//! same scans with `S = {1}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, DEFAULT_LATTICE_CAP};
use crate::mcs::MulClosedSet;
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ideal, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Prime,
    Second,
    SPrime,
    SSecond,
    TwoAbsorbing,
    S2Absorbing,
    S2AbsorbingColon,
    Strong2AbsorbingSecond,
    S2AbsorbingSecond,
    S2asElements,
    S2asCi,
    S2asIdeals,
}

impl Predicate {
    pub const ALL: [Predicate; 12] = [
        Predicate::Prime,
        Predicate::Second,
        Predicate::SPrime,
        Predicate::SSecond,
        Predicate::TwoAbsorbing,
        Predicate::S2Absorbing,
        Predicate::S2AbsorbingColon,
        Predicate::Strong2AbsorbingSecond,
        Predicate::S2AbsorbingSecond,
        Predicate::S2asElements,
        Predicate::S2asCi,
        Predicate::S2asIdeals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Prime => "prime",
            Predicate::Second => "second",
            Predicate::SPrime => "s-prime",
            Predicate::SSecond => "s-second",
            Predicate::TwoAbsorbing => "2abs",
            Predicate::S2Absorbing => "s2abs",
            Predicate::S2AbsorbingColon => "s2abs-colon",
            Predicate::Strong2AbsorbingSecond => "strong2as",
            Predicate::S2AbsorbingSecond => "s2as",
            Predicate::S2asElements => "s2as-elements",
            Predicate::S2asCi => "s2as-ci",
            Predicate::S2asIdeals => "s2as-ideals",
        }
    }

    /// Relative to a multiplicatively closed set.
    pub fn uses_s(self) -> bool {
        !matches!(self, Predicate::Prime | Predicate::Second | Predicate::TwoAbsorbing | Predicate::Strong2AbsorbingSecond)
    }

    pub fn algorithm(self) -> Algorithm {
        match self {
            Predicate::S2AbsorbingColon | Predicate::S2asElements | Predicate::S2asCi | Predicate::S2asIdeals => {
                Algorithm::Characterization
            }
            _ => Algorithm::Definitional,
        }
    }

    /// Guarded by `Ann(N) ∩ S = ∅` rather than `(N :_R M) ∩ S = ∅`.
    pub fn second_family(self) -> bool {
        matches!(
            self,
            Predicate::Second
                | Predicate::SSecond
                | Predicate::Strong2AbsorbingSecond
                | Predicate::S2AbsorbingSecond
                | Predicate::S2asElements
                | Predicate::S2asCi
                | Predicate::S2asIdeals
        )
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Predicate::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Predicate::ALL.iter().map(|p| p.name()).collect();
            format!("unknown predicate `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    PreconditionFailed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::PreconditionFailed => "precondition-failed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Definitional,
    Characterization,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Definitional => "definitional",
            Algorithm::Characterization => "characterization",
        })
    }
}

/// A tuple defeating one candidate `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `a m ∈ N` but neither `s a M ⊆ N` nor `s m ∈ N`.
    ScalarElement { a: usize, m: usize },
    /// `r N ⊆ K` but neither `r s N = 0` nor `s N ⊆ K`.
    ScalarSub { r: usize, k: Submodule },
    /// `a b m ∈ N` with none of the three rescued memberships.
    PairElement { a: usize, b: usize, m: usize },
    /// The pair `(a, b)` fails the identity of a characterization.
    Pair { a: usize, b: usize },
    /// `a b N ⊆ K` with none of the three rescues.
    PairSub { a: usize, b: usize, k: Submodule },
    /// As [`Violation::PairSub`] with `K = L1 ∩ L2`.
    PairCi { a: usize, b: usize, l1: Submodule, l2: Submodule },
    /// `I J N ⊆ K` with none of the three rescues.
    IdealsSub { i: Ideal, j: Ideal, k: Submodule },
}

/// Ring element in coordinates when the ring has them.
pub fn show_ring(ring: &FiniteRing, x: usize) -> String {
    match ring.coords(x) {
        Some(c) if c.len() == 1 => c[0].to_string(),
        Some(c) => format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
        None => format!("#{x}"),
    }
}

fn show_sub(k: &Submodule) -> String {
    format!("<{}>", k.show_generators())
}

fn show_ideal(ring: &FiniteRing, i: &Ideal) -> String {
    if i.generators.is_empty() {
        return "(0)".into();
    }
    format!("({})", i.generators.iter().map(|&g| show_ring(ring, g)).collect::<Vec<_>>().join(", "))
}

impl Violation {
    pub fn describe(&self, m: &FiniteModule) -> String {
        let r = m.ring();
        match self {
            Violation::ScalarElement { a, m: x } => format!("a={}, m={}", show_ring(r, *a), m.show(*x)),
            Violation::ScalarSub { r: x, k } => format!("r={}, K={}", show_ring(r, *x), show_sub(k)),
            Violation::PairElement { a, b, m: x } => {
                format!("a={}, b={}, m={}", show_ring(r, *a), show_ring(r, *b), m.show(*x))
            }
            Violation::Pair { a, b } => format!("a={}, b={}", show_ring(r, *a), show_ring(r, *b)),
            Violation::PairSub { a, b, k } => {
                format!("a={}, b={}, K={}", show_ring(r, *a), show_ring(r, *b), show_sub(k))
            }
            Violation::PairCi { a, b, l1, l2 } => format!(
                "a={}, b={}, L1={}, L2={}",
                show_ring(r, *a),
                show_ring(r, *b),
                show_sub(l1),
                show_sub(l2)
            ),
            Violation::IdealsSub { i, j, k } => {
                format!("I={}, J={}, K={}", show_ideal(r, i), show_ideal(r, j), show_sub(k))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub predicate: Predicate,
    pub verdict: Verdict,
    /// Least working `s`; set for relative predicates with a true verdict.
    pub witness: Option<usize>,
    /// Violation for the least `s` when the verdict is false.
    pub counterexample: Option<Violation>,
    /// Number of candidates `s` that fail.
    pub violating_s: usize,
    /// Every failing `s` with its first violation, when requested.
    pub per_s: Option<Vec<(usize, Violation)>>,
    pub algorithm: Algorithm,
    /// Why the precondition failed.
    pub reason: Option<String>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::True
    }

    fn precondition(predicate: Predicate, reason: impl Into<String>) -> CheckReport {
        CheckReport {
            predicate,
            verdict: Verdict::PreconditionFailed,
            witness: None,
            counterexample: None,
            violating_s: 0,
            per_s: None,
            algorithm: predicate.algorithm(),
            reason: Some(reason.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub lattice_cap: usize,
    pub per_s_violations: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { lattice_cap: DEFAULT_LATTICE_CAP, per_s_violations: false }
    }
}

/// Runs predicates against submodules of one module, caching the lattice
/// and the ideal list on first use.
pub struct Checker {
    module: Arc<FiniteModule>,
    opts: CheckOptions,
    lattice: OnceLock<Result<Arc<Lattice>>>,
    ideals: OnceLock<Result<Arc<Vec<Ideal>>>>,
}

impl fmt::Debug for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Checker").field("module", &self.module).finish_non_exhaustive()
    }
}

/// Precomputed `x -> x N` and the positions of lattice members above it.
struct Scaled {
    xn: Vec<BitSet>,
    up: Vec<BitSet>,
}

impl Scaled {
    fn new(n: &Submodule, lat: &Lattice) -> Scaled {
        let ring = n.module().ring();
        let xn: Vec<BitSet> = ring.elements().map(|x| n.scale_members(x)).collect();
        let mut cache: HashMap<&BitSet, BitSet> = HashMap::new();
        let up = xn.iter().map(|b| cache.entry(b).or_insert_with(|| lat.up_set(b)).clone()).collect();
        Scaled { xn, up }
    }

    fn is_zero(&self, x: usize) -> bool {
        self.xn[x].count() == 1
    }
}

/// First member of `a` outside `b ∪ c`.
fn first_outside(a: &BitSet, b: &BitSet, c: &BitSet) -> Option<usize> {
    a.difference(b).difference(c).first()
}

impl Checker {
    pub fn new(module: &Arc<FiniteModule>, opts: CheckOptions) -> Checker {
        Checker { module: module.clone(), opts, lattice: OnceLock::new(), ideals: OnceLock::new() }
    }

    pub fn with_defaults(module: &Arc<FiniteModule>) -> Checker {
        Checker::new(module, CheckOptions::default())
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn options(&self) -> CheckOptions {
        self.opts
    }

    pub fn lattice(&self) -> Result<Arc<Lattice>> {
        self.lattice.get_or_init(|| Lattice::new(&self.module, self.opts.lattice_cap).map(Arc::new)).clone()
    }

    pub fn ideals(&self) -> Result<Arc<Vec<Ideal>>> {
        self.ideals
            .get_or_init(|| crate::ring::ideal_enumerate(self.module.ring(), self.opts.lattice_cap).map(Arc::new))
            .clone()
    }

    pub fn check(&self, predicate: Predicate, n: &Submodule, s: &MulClosedSet) -> Result<CheckReport> {
        if **n.module() != *self.module || **s.ring() != **self.module.ring() {
            return Err(Error::InvalidModule("submodule or set does not belong to this checker".into()));
        }
        let trivial;
        let s = if predicate.uses_s() {
            s
        } else {
            trivial = MulClosedSet::trivial(self.module.ring());
            &trivial
        };
        if predicate.second_family() {
            if n.killed_by(s) {
                let why = if predicate.uses_s() { "Ann(N) meets S" } else { "N is zero" };
                return Ok(CheckReport::precondition(predicate, why));
            }
        } else if n.colon_ideal(&Submodule::whole(&self.module)).meets(s) {
            let why = if predicate.uses_s() { "(N :_R M) meets S" } else { "N is not proper" };
            return Ok(CheckReport::precondition(predicate, why));
        }
        let candidates = s.elements();
        let mut report = match predicate {
            Predicate::Prime | Predicate::SPrime => self.search(predicate, &candidates, self.prime_scan(n)),
            Predicate::Second | Predicate::SSecond => self.search(predicate, &candidates, self.second_scan(n)?),
            Predicate::TwoAbsorbing | Predicate::S2Absorbing => {
                self.search(predicate, &candidates, self.absorbing_scan(n))
            }
            Predicate::S2AbsorbingColon => self.search(predicate, &candidates, self.colon_scan(n)),
            Predicate::Strong2AbsorbingSecond | Predicate::S2AbsorbingSecond => {
                self.search(predicate, &candidates, self.definitional_scan(n)?)
            }
            Predicate::S2asElements => self.search(predicate, &candidates, self.elements_scan(n)),
            Predicate::S2asCi => self.search(predicate, &candidates, self.ci_scan(n)?),
            Predicate::S2asIdeals => self.search(predicate, &candidates, self.ideals_scan(n)?),
        };
        if !predicate.uses_s() {
            report.witness = None;
        }
        Ok(report)
    }

    /// Every submodule with its report, in lattice order.
    pub fn classify(&self, predicate: Predicate, s: &MulClosedSet) -> Result<Vec<(Submodule, CheckReport)>> {
        let lat = self.lattice()?;
        lat.submodules().iter().map(|n| Ok((n.clone(), self.check(predicate, n, s)?))).collect()
    }

    fn search<F>(&self, predicate: Predicate, candidates: &[usize], scan: F) -> CheckReport
    where
        F: Fn(usize) -> Option<Violation> + Sync,
    {
        let mut report = CheckReport {
            predicate,
            verdict: Verdict::True,
            witness: None,
            counterexample: None,
            violating_s: 0,
            per_s: None,
            algorithm: predicate.algorithm(),
            reason: None,
        };
        if self.opts.per_s_violations {
            let all: Vec<(usize, Option<Violation>)> = map_candidates(candidates, &scan);
            report.witness = all.iter().find(|(_, v)| v.is_none()).map(|&(s, _)| s);
            let failing: Vec<(usize, Violation)> = all.into_iter().filter_map(|(s, v)| v.map(|v| (s, v))).collect();
            report.violating_s = failing.len();
            if report.witness.is_none() {
                report.verdict = Verdict::False;
                report.counterexample = failing.first().map(|(_, v)| v.clone());
            }
            report.per_s = Some(failing);
            return report;
        }
        match first_passing(candidates, &scan) {
            Some(i) => {
                report.witness = Some(candidates[i]);
                report.violating_s = i;
            }
            None => {
                report.verdict = Verdict::False;
                report.counterexample = scan(candidates[0]);
                report.violating_s = candidates.len();
            }
        }
        report
    }

    fn colons(&self, n: &Submodule) -> Vec<BitSet> {
        self.ring().elements().map(|x| n.colon_into_members(x)).collect()
    }

    fn prime_scan(&self, n: &Submodule) -> impl Fn(usize) -> Option<Violation> + Sync {
        let ring = self.ring().clone();
        let q = n.colon_ideal(&Submodule::whole(&self.module));
        let colon = self.colons(n);
        move |s| {
            ring.elements().find_map(|a| {
                if q.contains(ring.mul(s, a)) {
                    return None;
                }
                colon[a].difference(&colon[s]).first().map(|m| Violation::ScalarElement { a, m })
            })
        }
    }

    fn second_scan(&self, n: &Submodule) -> Result<impl Fn(usize) -> Option<Violation> + Sync> {
        let ring = self.ring().clone();
        let lat = self.lattice()?;
        let sc = Scaled::new(n, &lat);
        Ok(move |s| {
            ring.elements().find_map(|r| {
                if sc.is_zero(ring.mul(r, s)) {
                    return None;
                }
                sc.up[r].difference(&sc.up[s]).first().map(|k| Violation::ScalarSub { r, k: lat.get(k).clone() })
            })
        })
    }

    fn absorbing_scan(&self, n: &Submodule) -> impl Fn(usize) -> Option<Violation> + Sync {
        let ring = self.ring().clone();
        let q = n.colon_ideal(&Submodule::whole(&self.module));
        let colon = self.colons(n);
        move |s| {
            pairs(&ring).find_map(|(a, b)| {
                let ab = ring.mul(a, b);
                if q.contains(ring.mul(s, ab)) {
                    return None;
                }
                first_outside(&colon[ab], &colon[ring.mul(s, a)], &colon[ring.mul(s, b)])
                    .map(|m| Violation::PairElement { a, b, m })
            })
        }
    }

    fn colon_scan(&self, n: &Submodule) -> impl Fn(usize) -> Option<Violation> + Sync {
        let ring = self.ring().clone();
        let colon = self.colons(n);
        let size = self.module.size();
        move |s| {
            let s2 = ring.mul(s, s);
            let s3 = ring.mul(s2, s);
            pairs(&ring).find_map(|(a, b)| {
                let ab = ring.mul(a, b);
                let lhs = &colon[ring.mul(s2, ab)];
                let ok = *lhs == colon[ring.mul(s2, a)]
                    || *lhs == colon[ring.mul(s2, b)]
                    || colon[ring.mul(s3, ab)].count() == size;
                (!ok).then_some(Violation::Pair { a, b })
            })
        }
    }

    fn elements_scan(&self, n: &Submodule) -> impl Fn(usize) -> Option<Violation> + Sync {
        let ring = self.ring().clone();
        let xn: Vec<BitSet> = ring.elements().map(|x| n.scale_members(x)).collect();
        move |s| {
            let s2 = ring.mul(s, s);
            let s3 = ring.mul(s2, s);
            pairs(&ring).find_map(|(a, b)| {
                let ab = ring.mul(a, b);
                let lhs = &xn[ring.mul(s2, ab)];
                let ok = *lhs == xn[ring.mul(s2, a)] || *lhs == xn[ring.mul(s2, b)] || xn[ring.mul(s3, ab)].count() == 1;
                (!ok).then_some(Violation::Pair { a, b })
            })
        }
    }

    fn definitional_scan(&self, n: &Submodule) -> Result<impl Fn(usize) -> Option<Violation> + Sync> {
        let ring = self.ring().clone();
        let lat = self.lattice()?;
        let sc = Scaled::new(n, &lat);
        Ok(move |s| {
            pairs(&ring).find_map(|(a, b)| {
                let ab = ring.mul(a, b);
                if sc.is_zero(ring.mul(s, ab)) {
                    return None;
                }
                first_outside(&sc.up[ab], &sc.up[ring.mul(s, a)], &sc.up[ring.mul(s, b)])
                    .map(|k| Violation::PairSub { a, b, k: lat.get(k).clone() })
            })
        })
    }

    fn ci_scan(&self, n: &Submodule) -> Result<impl Fn(usize) -> Option<Violation> + Sync> {
        let ring = self.ring().clone();
        let lat = self.lattice()?;
        let ci = lat.completely_irreducible();
        // distinct intersections L1 ∩ L2, keeping the first pair producing each
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        let mut meets: Vec<(usize, usize, BitSet)> = Vec::new();
        for (x, &i) in ci.iter().enumerate() {
            for &j in &ci[x..] {
                let k = lat.get(i).members().intersection(lat.get(j).members());
                if seen.insert(k.clone(), ()).is_none() {
                    meets.push((i, j, k));
                }
            }
        }
        let xn: Vec<BitSet> = ring.elements().map(|x| n.scale_members(x)).collect();
        let up: Vec<BitSet> = xn
            .iter()
            .map(|b| BitSet::from_indices(meets.len(), (0..meets.len()).filter(|&p| b.is_subset(&meets[p].2))))
            .collect();
        Ok(move |s| {
            pairs(&ring).find_map(|(a, b)| {
                let ab = ring.mul(a, b);
                if xn[ring.mul(s, ab)].count() == 1 {
                    return None;
                }
                first_outside(&up[ab], &up[ring.mul(s, a)], &up[ring.mul(s, b)]).map(|p| {
                    let (i, j, _) = &meets[p];
                    Violation::PairCi { a, b, l1: lat.get(*i).clone(), l2: lat.get(*j).clone() }
                })
            })
        })
    }

    fn ideals_scan(&self, n: &Submodule) -> Result<impl Fn(usize) -> Option<Violation> + Sync> {
        let lat = self.lattice()?;
        let ideals = self.ideals()?;
        let pos: HashMap<&BitSet, usize> = ideals.iter().enumerate().map(|(i, id)| (&id.members, i)).collect();
        let in_: Vec<Submodule> = ideals.iter().map(|i| n.scale_ideal(i)).collect();
        let product: Vec<Vec<usize>> = ideals
            .iter()
            .map(|i| ideals.iter().map(|j| pos[&i.product(j).members]).collect())
            .collect();
        let up: Vec<BitSet> = in_.iter().map(|x| lat.up_set(x.members())).collect();
        let count = ideals.len();
        Ok(move |s| {
            let s_up: Vec<BitSet> = in_.iter().map(|x| lat.up_set(&x.scale_members(s))).collect();
            (0..count).find_map(|i| {
                (i..count).find_map(|j| {
                    let ij = product[i][j];
                    if in_[ij].scale_members(s).count() == 1 {
                        return None;
                    }
                    first_outside(&up[ij], &s_up[i], &s_up[j]).map(|k| Violation::IdealsSub {
                        i: ideals[i].clone(),
                        j: ideals[j].clone(),
                        k: lat.get(k).clone(),
                    })
                })
            })
        })
    }
}

/// Pairs `a <= b`; the conditions are symmetric, and the least violating
/// pair in lexicographic order always has `a <= b`.
fn pairs(ring: &FiniteRing) -> impl Iterator<Item = (usize, usize)> + '_ {
    ring.elements().flat_map(move |a| (a..ring.order()).map(move |b| (a, b)))
}

#[cfg(feature = "parallel")]
fn first_passing<F: Fn(usize) -> Option<Violation> + Sync>(candidates: &[usize], scan: &F) -> Option<usize> {
    use rayon::prelude::*;
    candidates.par_iter().position_first(|&s| scan(s).is_none())
}

#[cfg(not(feature = "parallel"))]
fn first_passing<F: Fn(usize) -> Option<Violation> + Sync>(candidates: &[usize], scan: &F) -> Option<usize> {
    candidates.iter().position(|&s| scan(s).is_none())
}

#[cfg(feature = "parallel")]
fn map_candidates<F: Fn(usize) -> Option<Violation> + Sync>(
    candidates: &[usize],
    scan: &F,
) -> Vec<(usize, Option<Violation>)> {
    use rayon::prelude::*;
    candidates.par_iter().map(|&s| (s, scan(s))).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_candidates<F: Fn(usize) -> Option<Violation> + Sync>(
    candidates: &[usize],
    scan: &F,
) -> Vec<(usize, Option<Violation>)> {
    candidates.iter().map(|&s| (s, scan(s))).collect()
}

/// `I` as a submodule of `R` over itself, with a checker for that module.
pub fn ideal_as_submodule(ideal: &Ideal, opts: CheckOptions) -> (Checker, Submodule) {
    let r = Arc::new(FiniteModule::regular(&ideal.ring));
    let n = Submodule::from_members(&r, ideal.members.clone());
    (Checker::new(&r, opts), n)
}

pub fn is_s_2_absorbing_ideal(ideal: &Ideal, s: &MulClosedSet) -> Result<CheckReport> {
    let (c, n) = ideal_as_submodule(ideal, CheckOptions::default());
    c.check(Predicate::S2Absorbing, &n, s)
}

pub fn is_s_2_absorbing_second_ideal(ideal: &Ideal, s: &MulClosedSet) -> Result<CheckReport> {
    let (c, n) = ideal_as_submodule(ideal, CheckOptions::default());
    c.check(Predicate::S2AbsorbingSecond, &n, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcs::mcs_closure;
    use crate::ring::{integer_base_reduce, make_zn, IntegerBaseDescriptor};

    fn z4_over_integers() -> (Arc<FiniteModule>, MulClosedSet) {
        let red = integer_base_reduce(&IntegerBaseDescriptor::new(4, vec![2])).unwrap();
        (Arc::new(FiniteModule::cyclic_natural(&red.ring, &[4]).unwrap()), red.residues)
    }

    #[test]
    fn z4_example() {
        let (m, s) = z4_over_integers();
        let c = Checker::with_defaults(&m);
        let whole = Submodule::whole(&m);
        let r = c.check(Predicate::S2AbsorbingSecond, &whole, &s).unwrap();
        assert_eq!((r.verdict, r.witness), (Verdict::True, Some(1)));
        let r = c.check(Predicate::SSecond, &whole, &s).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        assert_eq!(r.violating_s, 2);
        assert_eq!(r.counterexample, Some(Violation::ScalarSub { r: 2, k: Submodule::generate(&m, &[2]) }));
        for p in [Predicate::S2asElements, Predicate::S2asCi, Predicate::S2asIdeals] {
            assert!(c.check(p, &whole, &s).unwrap().holds(), "{p}");
        }
    }

    #[test]
    fn small_examples() {
        let (m, s) = z4_over_integers();
        let c = Checker::with_defaults(&m);
        let two = Submodule::generate(&m, &[2]);
        let zero = Submodule::zero(&m);
        assert!(c.check(Predicate::Prime, &two, &s).unwrap().holds());
        let r = c.check(Predicate::Prime, &zero, &s).unwrap();
        assert_eq!(r.counterexample, Some(Violation::ScalarElement { a: 2, m: 2 }));
        assert!(c.check(Predicate::Second, &two, &s).unwrap().holds());
        let r = c.check(Predicate::SPrime, &two, &s).unwrap();
        assert_eq!((r.verdict, r.witness), (Verdict::True, Some(1)));
        assert!(c.check(Predicate::Strong2AbsorbingSecond, &two, &s).unwrap().holds());

        let z4 = make_zn(4).unwrap();
        let r4 = Arc::new(FiniteModule::regular(&z4));
        let c4 = Checker::with_defaults(&r4);
        let one = MulClosedSet::trivial(&z4);
        let two = Submodule::generate(&r4, &[2]);
        assert!(c4.check(Predicate::S2Absorbing, &two, &one).unwrap().holds());
        assert!(c4.check(Predicate::S2AbsorbingColon, &two, &one).unwrap().holds());
        let r = c4.check(Predicate::S2Absorbing, &Submodule::whole(&r4), &one).unwrap();
        assert_eq!(r.verdict, Verdict::PreconditionFailed);
        let second_of_two = c4.check(Predicate::SSecond, &two, &one).unwrap();
        assert_eq!(second_of_two.witness, Some(1));
    }

    #[test]
    fn zero_in_z12_is_not_2_absorbing() {
        let z12 = make_zn(12).unwrap();
        let m = Arc::new(FiniteModule::regular(&z12));
        let c = Checker::with_defaults(&m);
        let r = c.check(Predicate::TwoAbsorbing, &Submodule::zero(&m), &MulClosedSet::trivial(&z12)).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        let Some(Violation::PairElement { a, b, m: x }) = r.counterexample else { panic!() };
        assert_eq!(z12.mul(z12.mul(a, b), x), 0);
    }

    #[test]
    fn sum_example_counterexample() {
        let red = integer_base_reduce(&IntegerBaseDescriptor::new(36, vec![2, 3])).unwrap();
        let m = Arc::new(FiniteModule::cyclic_natural(&red.ring, &[4, 9]).unwrap());
        let c = Checker::new(&m, CheckOptions { per_s_violations: true, ..Default::default() });
        let r = c.check(Predicate::S2AbsorbingSecond, &Submodule::whole(&m), &red.residues).unwrap();
        assert_eq!(r.verdict, Verdict::False);
        let k = Submodule::generate(&m, &[m.index_of(&[0, 1]).unwrap()]);
        let expected = Violation::PairSub { a: 2, b: 2, k };
        assert_eq!(r.counterexample.as_ref(), Some(&expected));
        let per_s = r.per_s.unwrap();
        assert_eq!(per_s.len(), red.residues.len());
        assert!(per_s.iter().all(|(_, v)| *v == expected));
    }

    #[test]
    fn predicate_names_round_trip() {
        for p in Predicate::ALL {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!("bogus".parse::<Predicate>().is_err());
    }

    #[test]
    fn ideal_checkers() {
        let z4 = make_zn(4).unwrap();
        let one = MulClosedSet::trivial(&z4);
        assert!(is_s_2_absorbing_ideal(&z4.principal(2), &one).unwrap().holds());
        assert_eq!(is_s_2_absorbing_ideal(&z4.unit_ideal(), &one).unwrap().verdict, Verdict::PreconditionFailed);
        let z12 = make_zn(12).unwrap();
        let s = mcs_closure(&z12, &[5]).unwrap();
        assert!(is_s_2_absorbing_second_ideal(&z12.principal(6), &s).unwrap().holds());
    }
}
