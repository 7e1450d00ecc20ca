//! The submodule lattice of a finite module and the structural predicates
//! that quantify over it.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{ideal_enumerate, Ideal};

pub const DEFAULT_LATTICE_CAP: usize = 20_000;

/// The distinct cyclic submodules `R x`, in order of first generator.
fn cyclic_submodules(m: &Arc<FiniteModule>) -> Vec<BitSet> {
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in m.elements().skip(1) {
        let cyc = BitSet::from_indices(m.size(), m.ring().elements().map(|r| m.act(r, x)));
        if seen.insert(cyc.clone(), ()).is_none() {
            out.push(cyc);
        }
    }
    out
}

fn join(m: &FiniteModule, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = a.clone();
    let bs: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(m.add(x, y));
        }
    }
    out
}

/// Every submodule exactly once, sorted by size then members.
///
/// Breadth-first over joins with cyclic submodules: every submodule is a join
/// of the cyclic submodules it contains.
pub fn enumerate_submodules(m: &Arc<FiniteModule>, cap: usize) -> Result<Vec<Submodule>> {
    Ok(enumerate_members(m, cap)?.into_iter().map(|b| Submodule::from_members(m, b)).collect())
}

fn enumerate_members(m: &Arc<FiniteModule>, cap: usize) -> Result<Vec<BitSet>> {
    let cyclics = cyclic_submodules(m);
    let zero = BitSet::from_indices(m.size(), [0]);
    let mut seen: HashMap<BitSet, ()> = HashMap::from([(zero.clone(), ())]);
    let mut all = vec![zero];
    let mut head = 0;
    while head < all.len() {
        let cur = all[head].clone();
        head += 1;
        for c in &cyclics {
            if c.is_subset(&cur) {
                continue;
            }
            let next = join(m, &cur, c);
            if seen.insert(next.clone(), ()).is_none() {
                all.push(next);
                if all.len() > cap {
                    return Err(Error::CapExceeded { what: "submodule lattice", cap });
                }
            }
        }
    }
    all.sort_by(|a, b| a.cmp_canonical(b));
    Ok(all)
}

/// The submodule lattice with upper covers.
#[derive(Clone, Debug)]
pub struct Lattice {
    module: Arc<FiniteModule>,
    subs: Vec<Submodule>,
    index: HashMap<BitSet, usize>,
    covers: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(m: &Arc<FiniteModule>, cap: usize) -> Result<Lattice> {
        let members = enumerate_members(m, cap)?;
        let index: HashMap<BitSet, usize> = members.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        let cyclics = cyclic_submodules(m);
        // an upper cover of L is L + R x for some x outside L
        let covers = members
            .iter()
            .map(|l| {
                let mut cand: Vec<usize> =
                    cyclics.iter().filter(|c| !c.is_subset(l)).map(|c| index[&join(m, l, c)]).collect();
                cand.sort_unstable();
                cand.dedup();
                let minimal: Vec<usize> = cand
                    .iter()
                    .copied()
                    .filter(|&j| !cand.iter().any(|&k| k != j && members[k].is_subset(&members[j])))
                    .collect();
                minimal
            })
            .collect();
        let subs = members.into_iter().map(|b| Submodule::from_members(m, b)).collect();
        Ok(Lattice { module: m.clone(), subs, index, covers })
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn submodules(&self) -> &[Submodule] {
        &self.subs
    }

    pub fn get(&self, i: usize) -> &Submodule {
        &self.subs[i]
    }

    pub fn position(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Lattice positions of every `K` with `members ⊆ K`.
    pub fn up_set(&self, members: &BitSet) -> BitSet {
        BitSet::from_indices(self.subs.len(), (0..self.subs.len()).filter(|&i| members.is_subset(self.subs[i].members())))
    }

    /// Proper submodules with exactly one upper cover.
    pub fn completely_irreducible(&self) -> Vec<usize> {
        (0..self.subs.len()).filter(|&i| !self.subs[i].is_whole() && self.covers[i].len() == 1).collect()
    }

    pub fn primes(&self) -> Vec<usize> {
        (0..self.subs.len()).filter(|&i| is_prime_submodule(&self.subs[i])).collect()
    }

    pub fn seconds(&self) -> Vec<usize> {
        (0..self.subs.len()).filter(|&i| is_second_submodule(&self.subs[i])).collect()
    }

    /// Intersection of the primes containing `n`, or `M` when there are none.
    pub fn rad(&self, n: &Submodule) -> Submodule {
        let mut members = BitSet::full(self.module.size());
        for i in self.primes() {
            if n.is_subset(&self.subs[i]) {
                members.intersect_with(self.subs[i].members());
            }
        }
        Submodule::from_members(&self.module, members)
    }

    /// Sum of the second submodules inside `n`, or 0 when there are none.
    pub fn sec(&self, n: &Submodule) -> Submodule {
        let mut acc = Submodule::zero(&self.module);
        for i in self.seconds() {
            if self.subs[i].is_subset(n) {
                acc = acc.sum(&self.subs[i]);
            }
        }
        acc
    }

    /// Every `N` equals `(N :_R M) M`.
    pub fn is_multiplication(&self) -> bool {
        let whole = Submodule::whole(&self.module);
        self.subs.iter().all(|n| whole.scale_ideal(&n.colon_ideal(&whole)) == *n)
    }

    /// Every `N` equals `(0 :_M Ann(N))`.
    pub fn is_comultiplication(&self) -> bool {
        let zero = Submodule::zero(&self.module);
        self.subs.iter().all(|n| zero.colon_into_ideal(&n.annihilator()) == *n)
    }

    /// Every ideal `I` equals `Ann((0 :_M I))`.
    pub fn has_dac(&self, cap: usize) -> Result<bool> {
        let zero = Submodule::zero(&self.module);
        Ok(ideal_enumerate(self.module.ring(), cap)?.iter().all(|i| zero.colon_into_ideal(i).annihilator() == *i))
    }

    pub fn ideals(&self, cap: usize) -> Result<Vec<Ideal>> {
        ideal_enumerate(self.module.ring(), cap)
    }
}

/// Proper `P` with `r m ∈ P ⇒ m ∈ P or r M ⊆ P`.
pub fn is_prime_submodule(p: &Submodule) -> bool {
    let m = p.module();
    if p.is_whole() {
        return false;
    }
    let whole = Submodule::whole(m);
    m.ring().elements().all(|r| whole.scale_members(r).is_subset(p.members()) || p.colon_into_members(r) == *p.members())
}

/// Nonzero `N` with `r N ∈ {0, N}` for every `r`.
pub fn is_second_submodule(n: &Submodule) -> bool {
    if n.is_zero() {
        return false;
    }
    n.module().ring().elements().all(|r| {
        let img = n.scale_members(r);
        img.count() == 1 || img == *n.members()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{integer_base_reduce, make_zn, IntegerBaseDescriptor};

    fn zbase(e: usize, p: Vec<u64>, orders: &[usize]) -> Arc<FiniteModule> {
        let red = integer_base_reduce(&IntegerBaseDescriptor::new(e, p)).unwrap();
        Arc::new(FiniteModule::cyclic_natural(&red.ring, orders).unwrap())
    }

    fn count_subgroups_brute(m: &FiniteModule) -> usize {
        // every subset closed under + and scalars, for tiny carriers
        let n = m.size();
        (0u64..1 << n)
            .filter(|mask| {
                let has = |x: usize| mask & (1 << x) != 0;
                has(0)
                    && (0..n).all(|x| !has(x) || m.ring().elements().all(|r| has(m.act(r, x))))
                    && (0..n).all(|x| (0..n).all(|y| !(has(x) && has(y)) || has(m.add(x, y))))
            })
            .count()
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(enumerate_submodules(&zbase(4, vec![2], &[4]), 100).unwrap().len(), 3);
        let v = Arc::new(FiniteModule::cyclic_natural(&make_zn(2).unwrap(), &[2, 2]).unwrap());
        assert_eq!(enumerate_submodules(&v, 100).unwrap().len(), 5);
        assert_eq!(enumerate_submodules(&zbase(36, vec![2, 3], &[4, 9]), 100).unwrap().len(), 9);
    }

    #[test]
    fn lattice_matches_brute_force() {
        for (n, orders) in [(4, vec![2, 4]), (6, vec![6, 2]), (8, vec![8, 2]), (2, vec![2, 2, 2])] {
            let m = Arc::new(FiniteModule::cyclic_natural(&make_zn(n).unwrap(), &orders).unwrap());
            assert_eq!(enumerate_submodules(&m, 1000).unwrap().len(), count_subgroups_brute(&m), "{orders:?}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let v = Arc::new(FiniteModule::cyclic_natural(&make_zn(2).unwrap(), &[2, 2, 2]).unwrap());
        assert!(matches!(enumerate_submodules(&v, 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn completely_irreducible_examples() {
        let m = zbase(4, vec![2], &[4]);
        let lat = Lattice::new(&m, 100).unwrap();
        let ci: Vec<Vec<usize>> = lat.completely_irreducible().iter().map(|&i| lat.get(i).elements().collect()).collect();
        assert_eq!(ci, vec![vec![0], vec![0, 2]]);

        let simple = Arc::new(FiniteModule::regular(&make_zn(3).unwrap()));
        let lat = Lattice::new(&simple, 100).unwrap();
        assert_eq!(lat.completely_irreducible(), vec![0]);

        let v = Arc::new(FiniteModule::cyclic_natural(&make_zn(2).unwrap(), &[2, 2]).unwrap());
        let lat = Lattice::new(&v, 100).unwrap();
        let ci = lat.completely_irreducible();
        assert_eq!(ci.len(), 3);
        assert!(ci.iter().all(|&i| lat.get(i).size() == 2));
    }

    #[test]
    fn primes_and_seconds() {
        let m = zbase(4, vec![2], &[4]);
        let lat = Lattice::new(&m, 100).unwrap();
        let two = Submodule::generate(&m, &[2]);
        assert_eq!(lat.primes(), vec![lat.position(two.members()).unwrap()]);
        assert_eq!(lat.rad(&Submodule::zero(&m)), two);
        assert!(lat.rad(&Submodule::whole(&m)).is_whole());
        assert_eq!(lat.rad(&two), two);
        assert_eq!(lat.seconds(), vec![lat.position(two.members()).unwrap()]);
        assert_eq!(lat.sec(&Submodule::whole(&m)), two);
        assert!(lat.sec(&Submodule::zero(&m)).is_zero());

        let v = Arc::new(FiniteModule::cyclic_natural(&make_zn(2).unwrap(), &[2, 2]).unwrap());
        let lat = Lattice::new(&v, 100).unwrap();
        assert_eq!(lat.seconds().len(), 4);
    }

    #[test]
    fn structural_predicates() {
        for n in [2, 4, 6, 12] {
            let m = Arc::new(FiniteModule::regular(&make_zn(n).unwrap()));
            let lat = Lattice::new(&m, 100).unwrap();
            assert!(lat.is_multiplication() && lat.is_comultiplication() && lat.has_dac(100).unwrap(), "Z_{n}");
        }
        let lat = Lattice::new(&zbase(4, vec![2], &[4]), 100).unwrap();
        assert!(lat.is_comultiplication());
        let lat = Lattice::new(&zbase(2, vec![], &[2, 2]), 100).unwrap();
        assert!(!lat.is_comultiplication());
    }

    #[test]
    fn covers_are_minimal_strict_supersets() {
        let m = Arc::new(FiniteModule::cyclic_natural(&make_zn(4).unwrap(), &[4, 2]).unwrap());
        let lat = Lattice::new(&m, 100).unwrap();
        for i in 0..lat.len() {
            let a = lat.get(i).members();
            let brute: Vec<usize> = (0..lat.len())
                .filter(|&j| j != i && a.is_subset(lat.get(j).members()))
                .filter(|&j| {
                    !(0..lat.len()).any(|k| {
                        k != i && k != j && a.is_subset(lat.get(k).members()) && lat.get(k).is_subset(lat.get(j))
                    })
                })
                .collect();
            assert_eq!(lat.upper_covers(i), brute.as_slice());
        }
    }
}
