//! Multiplicatively closed sets, saturation and localization.
//!
//! Localization of a finite ring or module at `S` reduces to a single
//! element: `t`, the product of all members of `S`, divides a power of every
//! member, so `S^-1 M = t^-1 M`. Powers of `t` reach an idempotent `e`, and
//! `t^-1 M` is `e M` with `t` acting invertibly (Fitting decomposition). The
//! fraction construction in [`localization_fraction_oracle`] builds the same
//! module directly from pairs `(m, s)` and is used to audit the fast path.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ring, RingKind};

/// A multiplicatively closed subset of a finite ring.
///
/// Sets built with [`mcs_closure`] or [`MulClosedSet::from_members`] never
/// contain 0. [`MulClosedSet::image_set`] admits 0 because it models the
/// residues of an integer set that may meet the module's exponent ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct MulClosedSet {
    ring: Ring,
    members: BitSet,
}

impl fmt::Debug for MulClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{:?}", self.members)
    }
}

impl MulClosedSet {
    pub fn from_members(ring: &Ring, members: BitSet) -> Result<MulClosedSet> {
        if members.contains(0) {
            return Err(Error::InvalidMcs("contains 0".into()));
        }
        MulClosedSet::image_set(ring, members)
    }

    /// Like [`MulClosedSet::from_members`] but 0 is permitted.
    pub fn image_set(ring: &Ring, members: BitSet) -> Result<MulClosedSet> {
        if !members.contains(1) {
            return Err(Error::InvalidMcs("does not contain 1".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.mul(a, b)) {
                    return Err(Error::InvalidMcs(format!("{a}*{b} escapes the set")));
                }
            }
        }
        Ok(MulClosedSet { ring: ring.clone(), members })
    }

    pub fn trivial(ring: &Ring) -> MulClosedSet {
        MulClosedSet { ring: ring.clone(), members: BitSet::from_indices(ring.order(), [1]) }
    }

    pub fn units(ring: &Ring) -> MulClosedSet {
        MulClosedSet { ring: ring.clone(), members: BitSet::from_indices(ring.order(), ring.units()) }
    }

    /// `S_1 x ... x S_k` inside a product ring.
    pub fn product(ring: &Ring, factors: &[MulClosedSet]) -> Result<MulClosedSet> {
        let RingKind::Product(rings) = ring.kind() else {
            return Err(Error::InvalidMcs("product set needs a product ring".into()));
        };
        if rings.len() != factors.len() || rings.iter().zip(factors).any(|(r, s)| **r != *s.ring) {
            return Err(Error::InvalidMcs("factor sets do not match the ring factors".into()));
        }
        let lists: Vec<Vec<usize>> = factors.iter().map(MulClosedSet::elements).collect();
        let mut members = BitSet::new(ring.order());
        let mut idx = vec![0usize; lists.len()];
        'outer: loop {
            let coords: Vec<usize> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            members.insert(ring.from_factor_indices(&coords).expect("factor indices in range"));
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < lists[pos].len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
        MulClosedSet::image_set(ring, members)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn contains_zero(&self) -> bool {
        self.members.contains(0)
    }

    /// Members in ascending canonical order (the witness search order).
    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &MulClosedSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_within_units(&self) -> bool {
        self.members.iter().all(|s| self.ring.is_unit(s))
    }

    /// Product of all members.
    pub fn total_product(&self) -> usize {
        self.members.iter().fold(1, |acc, s| self.ring.mul(acc, s))
    }
}

/// Smallest multiplicatively closed set containing `seeds` and 1.
pub fn mcs_closure(ring: &Ring, seeds: &[usize]) -> Result<MulClosedSet> {
    let mut members = BitSet::from_indices(ring.order(), [1]);
    let mut frontier: Vec<usize> = vec![1];
    for &s in seeds {
        if s >= ring.order() {
            return Err(Error::InvalidMcs(format!("seed {s} is not a ring element")));
        }
        if members.insert(s) {
            frontier.push(s);
        }
    }
    while let Some(x) = frontier.pop() {
        let current: Vec<usize> = members.iter().collect();
        for y in current {
            let p = ring.mul(x, y);
            if members.insert(p) {
                frontier.push(p);
            }
        }
    }
    if members.contains(0) {
        return Err(Error::InvalidMcs(format!("seeds {seeds:?} generate 0")));
    }
    Ok(MulClosedSet { ring: ring.clone(), members })
}

/// The idempotent power of `t` and the least `k` with `t^k R = t^(k+1) R`.
fn idempotent_power(ring: &FiniteRing, t: usize) -> usize {
    let mut p = t;
    loop {
        // t^j is idempotent exactly when it is the identity of its cyclic group part
        if ring.mul(p, p) == p {
            return p;
        }
        p = ring.mul(p, t);
    }
}

/// The localizing idempotent `e` of `S`, or an error when `0 ∈ S`.
pub fn localizing_idempotent(s: &MulClosedSet) -> Result<usize> {
    if s.contains_zero() {
        return Err(Error::ZeroLocalization);
    }
    Ok(idempotent_power(&s.ring, s.total_product()))
}

/// `S^-1 R` realised as `e R`, plus the canonical map `x -> e x`.
pub fn localize_ring(ring: &Ring, s: &MulClosedSet) -> Result<(Ring, Vec<usize>)> {
    let e = localizing_idempotent(s)?;
    let mut elements: Vec<usize> = BitSet::from_indices(ring.order(), ring.elements().map(|x| ring.mul(e, x)))
        .iter()
        .filter(|&x| x != 0 && x != e)
        .collect();
    elements.insert(0, e);
    elements.insert(0, 0);
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let local = FiniteRing::from_fns(
        elements.len(),
        |a, b| pos[&ring.add(elements[a], elements[b])],
        |a, b| pos[&ring.mul(elements[a], elements[b])],
        None,
        RingKind::Localization { parent: ring.clone(), idempotent: e, elements: elements.clone() },
    )
    .map(Arc::new)?;
    let map = ring.elements().map(|x| pos[&ring.mul(e, x)]).collect();
    Ok((local, map))
}

/// A module over a localized ring with its canonical map from the original.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    pub base_ring: Ring,
    /// Canonical ring map `R -> S^-1 R`.
    pub ring_map: Vec<usize>,
    pub carrier: Arc<FiniteModule>,
    /// Canonical map `M -> S^-1 M`.
    pub canonical_map: Vec<usize>,
}

impl LocalizedModule {
    /// The carrier viewed as an `R`-module through the canonical ring map.
    pub fn over_base(&self) -> Result<FiniteModule> {
        self.carrier.restrict_scalars(&self.base_ring, &self.ring_map)
    }

    /// `S^-1 N`, the submodule generated by the image of `N`.
    pub fn localize_submodule(&self, n: &Submodule) -> Submodule {
        let gens: Vec<usize> = n.elements().map(|x| self.canonical_map[x]).collect();
        let members = BitSet::from_indices(self.carrier.size(), gens);
        Submodule::from_members(&self.carrier, closure(&self.carrier, members))
    }

    /// Does `s` (an element of the base ring) permute the carrier?
    pub fn acts_bijectively(&self, s: usize) -> bool {
        let img = BitSet::from_indices(self.carrier.size(), self.carrier.elements().map(|x| self.carrier.act(self.ring_map[s], x)));
        img.count() == self.carrier.size()
    }
}

fn closure(m: &Arc<FiniteModule>, members: BitSet) -> BitSet {
    let gens: Vec<usize> = members.iter().collect();
    Submodule::generate(m, &gens).members().clone()
}

/// Fast path: `S^-1 M = e M` over `e R`.
pub fn localize_module(m: &Arc<FiniteModule>, s: &MulClosedSet) -> Result<LocalizedModule> {
    let ring = m.ring();
    let e = localizing_idempotent(s)?;
    let (local_ring, ring_map) = localize_ring(ring, s)?;
    let RingKind::Localization { elements: ring_elems, .. } = local_ring.kind() else { unreachable!() };
    let mut elements: Vec<usize> =
        BitSet::from_indices(m.size(), m.elements().map(|x| m.act(e, x))).iter().filter(|&x| x != 0).collect();
    elements.insert(0, 0);
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let carrier = FiniteModule::from_fns(
        &local_ring,
        elements.len(),
        |a, b| pos[&m.add(elements[a], elements[b])],
        |r, a| pos[&m.act(ring_elems[r], elements[a])],
        None,
        format!("S^-1({})", m.describe()),
    )?;
    let canonical_map = m.elements().map(|x| pos[&m.act(e, x)]).collect();
    Ok(LocalizedModule { base_ring: ring.clone(), ring_map, carrier: Arc::new(carrier), canonical_map })
}

/// `S* = { x : x/1 is a unit of S^-1 R }`; all of `R` when `0 ∈ S`.
pub fn saturate(s: &MulClosedSet) -> Result<MulClosedSet> {
    let ring = &s.ring;
    if s.contains_zero() {
        return MulClosedSet::image_set(ring, BitSet::full(ring.order()));
    }
    let (local, map) = localize_ring(ring, s)?;
    let members = BitSet::from_indices(ring.order(), ring.elements().filter(|&x| local.is_unit(map[x])));
    MulClosedSet::from_members(ring, members)
}

/// Definitional localization: pairs `(m, s)` modulo
/// `(m, s) ~ (m', s')` iff `u (s' m - s m') = 0` for some `u ∈ S`.
///
/// The ring `S^-1 R` is built the same way from `M = R`.
pub fn localization_fraction_oracle(m: &Arc<FiniteModule>, s: &MulClosedSet) -> Result<LocalizedModule> {
    let ring = m.ring();
    if s.contains_zero() {
        return Err(Error::ZeroLocalization);
    }
    let sl = s.elements();
    let ring_fr = Fractions::build(ring.order(), &sl, |x, y| ring.add(x, y), |r, x| ring.mul(r, x), |a, b| ring.mul(a, b));
    let mod_fr = Fractions::build(m.size(), &sl, |x, y| m.add(x, y), |r, x| m.act(r, x), |a, b| ring.mul(a, b));

    let one = ring_fr.class_of(1, 1, ring);
    let zero = ring_fr.class_of(0, 1, ring);
    // ring classes reindexed so that 0 and 1 come first
    let mut order: Vec<usize> = vec![zero, one];
    order.extend((0..ring_fr.reps.len()).filter(|&c| c != zero && c != one));
    let rpos: Vec<usize> = {
        let mut v = vec![0; order.len()];
        for (i, &c) in order.iter().enumerate() {
            v[c] = i;
        }
        v
    };
    let local_ring = FiniteRing::from_fns(
        order.len(),
        |a, b| {
            let ((x, p), (y, q)) = (ring_fr.reps[order[a]], ring_fr.reps[order[b]]);
            rpos[ring_fr.class_of(ring.add(ring.mul(q, x), ring.mul(p, y)), ring.mul(p, q), ring)]
        },
        |a, b| {
            let ((x, p), (y, q)) = (ring_fr.reps[order[a]], ring_fr.reps[order[b]]);
            rpos[ring_fr.class_of(ring.mul(x, y), ring.mul(p, q), ring)]
        },
        None,
        RingKind::Localization { parent: ring.clone(), idempotent: 1, elements: vec![] },
    )
    .map(Arc::new)?;
    let ring_map = ring.elements().map(|x| rpos[ring_fr.class_of(x, 1, ring)]).collect();

    let mzero = mod_fr.class_of_module(0, 1, m);
    let mut morder: Vec<usize> = vec![mzero];
    morder.extend((0..mod_fr.reps.len()).filter(|&c| c != mzero));
    let mpos: Vec<usize> = {
        let mut v = vec![0; morder.len()];
        for (i, &c) in morder.iter().enumerate() {
            v[c] = i;
        }
        v
    };
    let carrier = FiniteModule::from_fns(
        &local_ring,
        morder.len(),
        |a, b| {
            let ((x, p), (y, q)) = (mod_fr.reps[morder[a]], mod_fr.reps[morder[b]]);
            mpos[mod_fr.class_of_module(m.add(m.act(q, x), m.act(p, y)), ring.mul(p, q), m)]
        },
        |r, a| {
            let ((x, p), (y, q)) = (ring_fr.reps[order[r]], mod_fr.reps[morder[a]]);
            mpos[mod_fr.class_of_module(m.act(x, y), ring.mul(p, q), m)]
        },
        None,
        format!("fractions of {}", m.describe()),
    )?;
    let canonical_map = m.elements().map(|x| mpos[mod_fr.class_of_module(x, 1, m)]).collect();
    Ok(LocalizedModule { base_ring: ring.clone(), ring_map, carrier: Arc::new(carrier), canonical_map })
}

/// Equivalence classes of pairs `(x, s)`.
struct Fractions {
    s: Vec<usize>,
    /// `torsion[x]`: some `u ∈ S` kills `x`.
    torsion: Vec<bool>,
    reps: Vec<(usize, usize)>,
}

impl Fractions {
    fn build(
        size: usize,
        s: &[usize],
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        _ring_mul: impl Fn(usize, usize) -> usize,
    ) -> Fractions {
        let torsion: Vec<bool> = (0..size).map(|x| s.iter().any(|&u| act(u, x) == 0)).collect();
        let neg: Vec<usize> = (0..size).map(|x| (0..size).find(|&y| add(x, y) == 0).unwrap()).collect();
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &d in s {
            for x in 0..size {
                let same = |&(y, e): &(usize, usize)| torsion[add(act(e, x), neg[act(d, y)])];
                if !reps.iter().any(same) {
                    reps.push((x, d));
                }
            }
        }
        Fractions { s: s.to_vec(), torsion, reps }
    }

    fn equivalent_ring(&self, ring: &FiniteRing, (x, d): (usize, usize), (y, e): (usize, usize)) -> bool {
        self.torsion[ring.sub(ring.mul(e, x), ring.mul(d, y))]
    }

    fn class_of(&self, x: usize, d: usize, ring: &FiniteRing) -> usize {
        debug_assert!(self.s.contains(&d));
        self.reps.iter().position(|&r| self.equivalent_ring(ring, (x, d), r)).expect("every fraction has a class")
    }

    fn class_of_module(&self, x: usize, d: usize, m: &FiniteModule) -> usize {
        self.reps
            .iter()
            .position(|&(y, e)| self.torsion[m.sub(m.act(e, x), m.act(d, y))])
            .expect("every fraction has a class")
    }
}

/// Searches for an `R`-linear bijection `a -> b` by backtracking over images
/// of a generating set of `a`. Both modules must be over equal rings.
pub fn find_isomorphism(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> Option<Vec<usize>> {
    if a.size() != b.size() || **a.ring() != **b.ring() {
        return None;
    }
    let gens = Submodule::whole(a).canonical_generators();
    let ann_a: Vec<BitSet> = gens.iter().map(|&g| element_annihilator(a, g)).collect();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &ann_a, &mut images)
}

fn element_annihilator(m: &FiniteModule, x: usize) -> BitSet {
    BitSet::from_indices(m.ring().order(), m.ring().elements().filter(|&r| m.act(r, x) == 0))
}

fn search(
    a: &Arc<FiniteModule>,
    b: &Arc<FiniteModule>,
    gens: &[usize],
    ann_a: &[BitSet],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if images.len() == gens.len() {
        return extend_map(a, b, gens, images).filter(|t| {
            let img = BitSet::from_indices(b.size(), t.iter().copied());
            img.count() == b.size()
        });
    }
    let i = images.len();
    for y in b.elements() {
        if element_annihilator(b, y) != ann_a[i] {
            continue;
        }
        images.push(y);
        // prune: partial map must already be well defined
        if extend_map(a, b, &gens[..=i], images).is_some() {
            if let Some(found) = search(a, b, gens, ann_a, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] -> images[i]` linearly; `None` if inconsistent. Elements
/// outside the span map to `usize::MAX`.
fn extend_map(a: &FiniteModule, b: &FiniteModule, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut table = vec![usize::MAX; a.size()];
    table[0] = 0;
    let mut known = vec![0usize];
    for (&g, &y) in gens.iter().zip(images) {
        let snapshot = known.clone();
        for r in a.ring().elements() {
            let (rg, ry) = (a.act(r, g), b.act(r, y));
            for &k in &snapshot {
                let x = a.add(k, rg);
                let v = b.add(table[k], ry);
                if table[x] == usize::MAX {
                    table[x] = v;
                    known.push(x);
                } else if table[x] != v {
                    return None;
                }
            }
        }
    }
    if gens.len() == images.len() && known.len() == a.size() {
        // full linearity audit on the completed table
        for x in a.elements() {
            for y in a.elements() {
                if table[a.add(x, y)] != b.add(table[x], table[y]) {
                    return None;
                }
            }
            for r in a.ring().elements() {
                if table[a.act(r, x)] != b.act(r, table[x]) {
                    return None;
                }
            }
        }
    }
    Some(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{integer_base_reduce, make_zn, IntegerBaseDescriptor};

    #[test]
    fn closure_examples() {
        let z12 = make_zn(12).unwrap();
        assert_eq!(mcs_closure(&z12, &[3]).unwrap().elements(), vec![1, 3, 9]);
        let z4 = make_zn(4).unwrap();
        assert_eq!(mcs_closure(&z4, &[]).unwrap().elements(), vec![1]);
        assert!(matches!(mcs_closure(&z4, &[2]), Err(Error::InvalidMcs(_))));
    }

    #[test]
    fn saturation_examples() {
        let z12 = make_zn(12).unwrap();
        let s = mcs_closure(&z12, &[3]).unwrap();
        assert_eq!(saturate(&s).unwrap().elements(), vec![1, 3, 5, 7, 9, 11]);
        let units = MulClosedSet::units(&z12);
        assert_eq!(saturate(&units).unwrap(), units);
        let z4 = make_zn(4).unwrap();
        assert_eq!(saturate(&MulClosedSet::trivial(&z4)).unwrap().elements(), vec![1, 3]);
    }

    #[test]
    fn localized_ring_orders() {
        let z12 = make_zn(12).unwrap();
        let s = mcs_closure(&z12, &[3]).unwrap();
        let (loc, _) = localize_ring(&z12, &s).unwrap();
        assert_eq!(loc.order(), 4);
        // Z_4 has a unique element of additive order 4 up to sign and 2 units
        assert_eq!(loc.units().len(), 2);

        let (same, map) = localize_ring(&z12, &MulClosedSet::trivial(&z12)).unwrap();
        assert_eq!(same.order(), 12);
        assert_eq!(map, (0..12).collect::<Vec<_>>());

        let z6 = make_zn(6).unwrap();
        let s = mcs_closure(&z6, &[3]).unwrap();
        let (loc, _) = localize_ring(&z6, &s).unwrap();
        assert_eq!(loc.order(), 2);
    }

    #[test]
    fn localized_modules() {
        let z12 = make_zn(12).unwrap();
        let m = Arc::new(FiniteModule::regular(&z12));
        let s = mcs_closure(&z12, &[3]).unwrap();
        assert_eq!(localize_module(&m, &s).unwrap().carrier.size(), 4);

        let units = MulClosedSet::units(&z12);
        assert_eq!(localize_module(&m, &units).unwrap().carrier.size(), 12);

        // Ann(Z_3) = 3 Z_12 meets S = {1, 3, 9}
        let z3 = Arc::new(FiniteModule::cyclic_natural(&z12, &[3]).unwrap());
        assert_eq!(localize_module(&z3, &s).unwrap().carrier.size(), 1);
    }

    #[test]
    fn oracle_examples() {
        let red = integer_base_reduce(&IntegerBaseDescriptor::new(4, vec![2])).unwrap();
        let m = Arc::new(FiniteModule::cyclic_natural(&red.ring, &[4]).unwrap());
        let loc = localization_fraction_oracle(&m, &red.residues).unwrap();
        assert_eq!(loc.carrier.size(), 4);

        // (m,1) ~ (0,1) iff some u ∈ S kills m
        let z12 = make_zn(12).unwrap();
        let s = mcs_closure(&z12, &[3]).unwrap();
        let m = Arc::new(FiniteModule::regular(&z12));
        let loc = localization_fraction_oracle(&m, &s).unwrap();
        for x in 0..12 {
            let killed = s.elements().iter().any(|&u| z12.mul(u, x) == 0);
            assert_eq!(loc.canonical_map[x] == 0, killed, "x={x}");
        }
    }

    #[test]
    fn oracle_matches_fast_path() {
        let z12 = make_zn(12).unwrap();
        for seeds in [vec![], vec![3], vec![4], vec![5], vec![2], vec![3, 4]] {
            let Ok(s) = mcs_closure(&z12, &seeds) else { continue };
            for orders in [vec![12], vec![2, 6], vec![4, 3]] {
                let m = Arc::new(FiniteModule::cyclic_natural(&z12, &orders).unwrap());
                let fast = localize_module(&m, &s).unwrap();
                let slow = localization_fraction_oracle(&m, &s).unwrap();
                let (fa, sl) = (Arc::new(fast.over_base().unwrap()), Arc::new(slow.over_base().unwrap()));
                assert!(find_isomorphism(&fa, &sl).is_some(), "seeds={seeds:?} orders={orders:?}");
            }
        }
    }

    #[test]
    fn isomorphism_search_rejects_non_isomorphic() {
        let z4 = make_zn(4).unwrap();
        let a = Arc::new(FiniteModule::cyclic_natural(&z4, &[4]).unwrap());
        let b = Arc::new(FiniteModule::cyclic_natural(&z4, &[2, 2]).unwrap());
        assert!(find_isomorphism(&a, &b).is_none());
        assert!(find_isomorphism(&b, &b).is_some());
    }

    #[test]
    fn saturation_idempotent() {
        for n in [6usize, 8, 12, 16] {
            let r = make_zn(n).unwrap();
            for seed in 1..n {
                let Ok(s) = mcs_closure(&r, &[seed]) else { continue };
                let star = saturate(&s).unwrap();
                assert!(s.is_subset(&star));
                assert_eq!(saturate(&star).unwrap(), star);
            }
        }
    }
}
