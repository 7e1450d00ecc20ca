use std::sync::{Arc, LazyLock};

use absorb_core::theorems::small_mcs;
use absorb_core::*;
use proptest::prelude::*;

struct Entry {
    module: Arc<FiniteModule>,
    lattice: Lattice,
    sets: Vec<MulClosedSet>,
}

fn entry(module: FiniteModule) -> Entry {
    let module = Arc::new(module);
    let lattice = Lattice::new(&module, DEFAULT_LATTICE_CAP).unwrap();
    let sets = small_mcs(module.ring());
    Entry { module, lattice, sets }
}

static POOL: LazyLock<Vec<Entry>> = LazyLock::new(|| {
    let z = |n| make_zn(n).unwrap();
    let mut out = Vec::new();
    for n in [4, 6, 8, 9, 12] {
        out.push(entry(FiniteModule::regular(&z(n))));
    }
    out.push(entry(FiniteModule::cyclic_natural(&z(2), &[2, 2]).unwrap()));
    out.push(entry(FiniteModule::cyclic_natural(&z(4), &[2, 4]).unwrap()));
    out.push(entry(FiniteModule::cyclic_natural(&z(6), &[3, 6]).unwrap()));
    out.push(entry(FiniteModule::cyclic_natural(&z(36), &[4, 9]).unwrap()));
    out.push(entry(FiniteModule::cyclic_natural(&z(8), &[2, 8]).unwrap()));
    let p = make_product(&[z(3), z(4)]).unwrap();
    out.push(entry(FiniteModule::regular(&p)));
    let m = Arc::new(FiniteModule::cyclic_natural(&z(4), &[2]).unwrap());
    out.push(entry(FiniteModule::regular(&make_idealization(&z(4), &m).unwrap())));
    out
});

fn pick<T>(items: &[T], seed: usize) -> &T {
    &items[seed % items.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn colon_galois_connection(e in 0..POOL.len(), a: usize, b: usize, r: usize) {
        let e = &POOL[e];
        let (n, k) = (pick(e.lattice.submodules(), a), pick(e.lattice.submodules(), b));
        let r = r % e.module.ring().order();
        let scaled = n.scale(r).is_subset(k);
        prop_assert_eq!(scaled, k.colon_ideal(n).contains(r));
        prop_assert_eq!(scaled, n.is_subset(&k.colon_into(r)));
    }

    #[test]
    fn generation_is_a_closure(e in 0..POOL.len(), gens in prop::collection::vec(any::<usize>(), 0..4)) {
        let e = &POOL[e];
        let gens: Vec<usize> = gens.iter().map(|g| g % e.module.size()).collect();
        let n = Submodule::generate(&e.module, &gens);
        let members: Vec<usize> = n.elements().collect();
        prop_assert_eq!(Submodule::generate(&e.module, &members), n.clone());
        prop_assert!(e.lattice.position(n.members()).is_some());
    }

    #[test]
    fn sec_below_and_rad_above(e in 0..POOL.len(), a: usize) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        prop_assert!(e.lattice.sec(n).is_subset(n));
        prop_assert!(n.is_subset(&e.lattice.rad(n)));
    }

    #[test]
    fn class_hierarchy(e in 0..POOL.len(), a: usize, s: usize) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        let s = pick(&e.sets, s);
        let c = Checker::with_defaults(&e.module);
        let s2as = c.check(Predicate::S2AbsorbingSecond, n, s).unwrap();
        if c.check(Predicate::SSecond, n, s).unwrap().holds() {
            prop_assert!(s2as.holds());
        }
        let guard = !n.killed_by(s);
        if c.check(Predicate::Strong2AbsorbingSecond, n, s).unwrap().holds() && guard {
            prop_assert!(s2as.holds());
        }
        if c.check(Predicate::SPrime, n, s).unwrap().holds() {
            prop_assert!(c.check(Predicate::S2Absorbing, n, s).unwrap().holds());
        }
    }

    #[test]
    fn algorithms_agree(e in 0..POOL.len(), a: usize, s: usize) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        let s = pick(&e.sets, s);
        let c = Checker::with_defaults(&e.module);
        let v = |p| c.check(p, n, s).unwrap().verdict;
        let d = v(Predicate::S2AbsorbingSecond);
        prop_assert_eq!(d, v(Predicate::S2asElements));
        prop_assert_eq!(d, v(Predicate::S2asCi));
        prop_assert_eq!(d, v(Predicate::S2asIdeals));
        prop_assert_eq!(v(Predicate::S2Absorbing), v(Predicate::S2AbsorbingColon));
    }

    #[test]
    fn witness_is_least(e in 0..POOL.len(), a: usize, s: usize, p in 0..Predicate::ALL.len()) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        let s = pick(&e.sets, s);
        let p = Predicate::ALL[p];
        prop_assume!(p.uses_s());
        let opts = CheckOptions { per_s_violations: true, ..CheckOptions::default() };
        let report = Checker::new(&e.module, opts).check(p, n, s).unwrap();
        if let (Some(w), Some(per_s)) = (report.witness, &report.per_s) {
            let failing: Vec<usize> = per_s.iter().map(|&(x, _)| x).collect();
            for x in s.elements().into_iter().filter(|&x| x < w) {
                prop_assert!(failing.contains(&x));
            }
            prop_assert!(!failing.contains(&w));
        }
    }

    #[test]
    fn monotone_in_s(e in 0..POOL.len(), a: usize, s1: usize, s2: usize) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        let (s1, s2) = (pick(&e.sets, s1), pick(&e.sets, s2));
        prop_assume!(s1.is_subset(s2) && !n.killed_by(s2));
        let c = Checker::with_defaults(&e.module);
        for p in [Predicate::S2AbsorbingSecond, Predicate::SSecond] {
            if c.check(p, n, s1).unwrap().holds() {
                prop_assert!(c.check(p, n, s2).unwrap().holds());
            }
        }
    }

    #[test]
    fn saturation_keeps_verdicts(e in 0..POOL.len(), a: usize, s: usize) {
        let e = &POOL[e];
        let n = pick(e.lattice.submodules(), a);
        let s = pick(&e.sets, s);
        let sat = saturate(s).unwrap();
        prop_assert!(s.is_subset(&sat));
        let again = saturate(&sat).unwrap();
        prop_assert_eq!(again.members(), sat.members());
        let c = Checker::with_defaults(&e.module);
        for p in [Predicate::S2AbsorbingSecond, Predicate::S2Absorbing] {
            prop_assert_eq!(c.check(p, n, s).unwrap().verdict, c.check(p, n, &sat).unwrap().verdict);
        }
    }

    #[test]
    fn localization_detects_containment(e in 0..POOL.len(), a: usize, b: usize, s: usize) {
        let e = &POOL[e];
        let s = pick(&e.sets, s);
        let loc = localize_module(&e.module, s).unwrap();
        for x in s.elements() {
            prop_assert!(loc.acts_bijectively(x));
        }
        let (n, k) = (pick(e.lattice.submodules(), a), pick(e.lattice.submodules(), b));
        if loc.localize_submodule(n).is_subset(&loc.localize_submodule(k)) {
            prop_assert!(s.elements().into_iter().any(|x| n.scale(x).is_subset(k)));
        }
    }
}

#[test]
fn idealization_ideals_are_those_under_the_annihilator() {
    let z = |n| make_zn(n).unwrap();
    for (n, orders) in [(2, vec![2]), (4, vec![2]), (4, vec![2, 2]), (6, vec![3]), (8, vec![4]), (12, vec![2])] {
        let base = z(n);
        let m = Arc::new(FiniteModule::cyclic_natural(&base, &orders).unwrap());
        let ring = make_idealization(&base, &m).unwrap();
        let ann = Submodule::whole(&m).annihilator();
        let tail: Vec<usize> = m.elements().map(|x| ring.from_idealization_parts(0, x).unwrap()).collect();
        for &x in &tail {
            for &y in &tail {
                assert_eq!(ring.mul(x, y), 0);
            }
        }
        for mask in 0u32..(1 << n) {
            let subset = BitSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            let is_ideal = base.ideal_from_members(subset.clone()).is_ok();
            let lifted = BitSet::from_indices(
                ring.order(),
                subset.iter().map(|i| ring.from_idealization_parts(i, 0).unwrap()),
            );
            let lifted_ideal = ring.ideal_from_members(lifted).is_ok();
            assert_eq!(lifted_ideal, is_ideal && subset.is_subset(&ann.members), "n={n} {orders:?} {subset:?}");
        }
    }
}
