use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::checkers::{show_ring, Checker, Predicate, Verdict};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::mcs::{localize_module, saturate, MulClosedSet};
use crate::module::{FiniteModule, ModuleMap, Submodule};
use crate::ring::{ideal_enumerate, ideal_radical, Ideal};

use super::family::{cyclic_modulus, Instance, InstanceKind, ModuleInstance};
use super::{CheckFn, Tally};

use InstanceKind::{Idealization as IDEALIZATION, Module as MODULE, Product as PRODUCT};
use Predicate::{
    S2Absorbing, S2AbsorbingColon, S2AbsorbingSecond, S2asCi, S2asElements, S2asIdeals, SSecond,
    Strong2AbsorbingSecond,
};

type Entry = (&'static str, &'static str, &'static [InstanceKind], CheckFn);

pub(super) fn registry() -> Vec<Entry> {
    vec![
        ("s2abs-colon-equiv", "S-2-absorbing agrees with its colon-submodule form", &[MODULE], s2abs_colon_equiv),
        ("free-colon-commute", "(N^k :_{M^k} r) = (N :_M r)^k", &[MODULE], free_colon_commute),
        ("free-power-s2abs", "N is S-2-absorbing iff N^k is, in M^k", &[MODULE], free_power_s2abs),
        (
            "s2abs-colon-chain",
            "S-2-absorbing N has s with (N:th) inside (N:ts) or (N:sh), also for (N:_R M)",
            &[MODULE],
            s2abs_colon_chain,
        ),
        (
            "radical-ideal-s2abs",
            "the radical of an S-2-absorbing ideal I is S-2-absorbing and s a^2 in I for a in it",
            &[MODULE],
            radical_ideal_s2abs,
        ),
        (
            "module-radical-s2abs",
            "in a multiplication module rad(N) is S-2-absorbing when N is",
            &[MODULE],
            module_radical_s2abs,
        ),
        (
            "s2as-ideal-forms",
            "the S-2-absorbing second witness also absorbs for I a N and I J N",
            &[MODULE],
            s2as_ideal_forms,
        ),
        ("s2as-four-way", "the four S-2-absorbing second algorithms agree", &[MODULE], s2as_four_way),
        (
            "strong-vs-s2as",
            "strongly 2-absorbing second with the guard implies S-2-absorbing second; converse for S in units",
            &[MODULE],
            strong_vs_s2as,
        ),
        ("s2as-monotone", "S-2-absorbing second passes to larger sets under the guard", &[MODULE], s2as_monotone),
        ("s2as-saturation", "S and its saturation give the same verdicts", &[MODULE], s2as_saturation),
        (
            "s2as-localized-strong",
            "S^-1 N is strongly 2-absorbing second when N is S-2-absorbing second",
            &[MODULE],
            s2as_localized_strong,
        ),
        (
            "s2as-cube-strong",
            "N is S-2-absorbing second iff s^3 N is strongly 2-absorbing second for some s",
            &[MODULE],
            s2as_cube_strong,
        ),
        (
            "s2as-quotient",
            "K/N is S-2-absorbing second in M/N when K is and S misses Ann(K/N)",
            &[MODULE],
            s2as_quotient,
        ),
        (
            "s2as-annihilator-ideal",
            "Ann(N) and every (K :_R N) missing S are S-2-absorbing ideals, and s^3 N = s^4 N",
            &[MODULE],
            s2as_annihilator_ideal,
        ),
        (
            "s2as-unit-chain",
            "the witness gives ts N or hs N inside th N, and the matching colons of Ann(N)",
            &[MODULE],
            s2as_unit_chain,
        ),
        (
            "comult-annihilator-transfer",
            "in a comultiplication module, S-2-absorbing Ann(N) or an S-2-absorbing zero forces S-2-absorbing second",
            &[MODULE],
            comult_annihilator_transfer,
        ),
        (
            "mult-module-transfer",
            "an S-2-absorbing second multiplication module has every N with (N:M) missing S S-2-absorbing",
            &[MODULE],
            mult_module_transfer,
        ),
        (
            "strong-comult-equiv",
            "with comultiplication and the double annihilator condition, N, Ann(N) and (0:_M I) forms agree",
            &[MODULE],
            strong_comult_equiv,
        ),
        (
            "s-second-pair-absorb",
            "an S-second witness absorbs every a b N inside K",
            &[MODULE],
            s_second_pair_absorb,
        ),
        ("s-second-sum", "the sum of two S-second submodules is S-2-absorbing second", &[MODULE], s_second_sum),
        (
            "idealization-transfer",
            "I(+)0 is (strongly, S(+)0-, S(+)M-) 2-absorbing second exactly when I is",
            &[IDEALIZATION],
            idealization_transfer,
        ),
        (
            "product-dichotomy",
            "a product of submodules is S-2-absorbing second iff one factor is and the rest are killed, or two are S-second",
            &[PRODUCT],
            product_dichotomy,
        ),
        ("second-socle-s2as", "in a comultiplication module sec(N) is S-2-absorbing second with N", &[MODULE], second_socle_s2as),
        (
            "mono-image-preimage",
            "monomorphisms carry S-2-absorbing second submodules forward and back",
            &[MODULE],
            mono_image_preimage,
        ),
    ]
}

fn mi(inst: &Instance) -> &ModuleInstance {
    inst.module.as_ref().expect("check registered for module instances")
}

fn sub(n: &Submodule) -> String {
    format!("<{}>", n.show_generators())
}

fn setup(m: &ModuleInstance, p: Predicate) -> Result<(Arc<Lattice>, Arc<Vec<crate::checkers::CheckReport>>)> {
    Ok((m.lattice()?, m.reports(p)?))
}

fn guarded(v: Verdict) -> bool {
    v != Verdict::PreconditionFailed
}

fn s2abs_colon_equiv(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, a) = setup(m, S2Absorbing)?;
    let b = m.reports(S2AbsorbingColon)?;
    let mut t = Tally::default();
    for i in 0..lat.len() {
        if guarded(a[i].verdict) {
            t.case(a[i].verdict == b[i].verdict, || {
                format!("N={}: definition {} but colon form {}", sub(lat.get(i)), a[i].verdict, b[i].verdict)
            });
        }
    }
    Ok(t)
}

/// Powers `k <= 3` with `|M|^k <= limit`.
fn powers(m: &FiniteModule, limit: usize) -> Vec<usize> {
    (1..=3).filter(|&k| m.size().checked_pow(k as u32).is_some_and(|p| p <= limit)).collect()
}

fn free_colon_commute(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let lat = m.lattice()?;
    let mut t = Tally::default();
    for k in powers(&m.module, 256) {
        let power = Arc::new(m.module.free_tensor(k)?);
        for n in lat.submodules() {
            let nk = n.free_tensor(&power, k);
            for r in m.ring().elements() {
                let lhs = nk.colon_into(r);
                let rhs = n.colon_into(r).free_tensor(&power, k);
                t.case(lhs == rhs, || format!("k={k}, N={}, r={}", sub(n), show_ring(m.ring(), r)));
            }
        }
    }
    Ok(t)
}

fn free_power_s2abs(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2Absorbing)?;
    let mut t = Tally::default();
    for k in powers(&m.module, 256) {
        let power = Arc::new(m.module.free_tensor(k)?);
        let pc = Checker::new(&power, m.checker.options());
        for (n, r) in lat.submodules().iter().zip(reps.iter()) {
            if !guarded(r.verdict) {
                continue;
            }
            let rk = pc.check(S2Absorbing, &n.free_tensor(&power, k), &m.s)?;
            t.case(rk.verdict == r.verdict, || format!("k={k}, N={}: {} vs {}", sub(n), r.verdict, rk.verdict));
        }
    }
    Ok(t)
}

fn s2abs_colon_chain(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2Absorbing)?;
    let ring = m.ring();
    let whole = Submodule::whole(&m.module);
    let elems = m.s.elements();
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let q = n.colon_ideal(&whole);
        for &a in &elems {
            for &b in &elems {
                let c = |x: usize| n.colon_into_members(x);
                let (ab, as_, sb) = (ring.mul(a, b), ring.mul(a, s), ring.mul(s, b));
                let cab = c(ab);
                t.case(cab.is_subset(&c(as_)) || cab.is_subset(&c(sb)), || {
                    format!("N={}, s={}, t={}, h={}", sub(n), show_ring(ring, s), show_ring(ring, a), show_ring(ring, b))
                });
                let qab = q.colon_element(ab);
                t.case(qab.is_subset(&q.colon_element(as_)) || qab.is_subset(&q.colon_element(sb)), || {
                    format!("(N:M) form, N={}, t={}, h={}", sub(n), show_ring(ring, a), show_ring(ring, b))
                });
            }
        }
    }
    Ok(t)
}

fn radical_ideal_s2abs(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let mut t = Tally::default();
    if !m.regular {
        return Ok(t);
    }
    let (lat, reps) = setup(m, S2Absorbing)?;
    let ring = m.ring();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let ideal = ring.ideal_from_members(n.members().clone())?;
        let rad = ideal_radical(&ideal);
        t.case(m.ideal_holds(S2Absorbing, &rad)?, || format!("I={}: radical {:?} fails", sub(n), rad));
        let absorbs = |s: usize| rad.members.iter().all(|a| ideal.contains(ring.mul(s, ring.mul(a, a))));
        t.case(absorbs(s), || format!("I={}: s={} leaves some s a^2 outside I", sub(n), show_ring(ring, s)));
    }
    Ok(t)
}

fn module_radical_s2abs(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2Absorbing)?;
    let mut t = Tally::default();
    if !lat.is_multiplication() {
        return Ok(t);
    }
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if r.holds() {
            let rad = lat.rad(n);
            t.case(m.holds(S2Absorbing, &rad)?, || format!("N={}, rad(N)={}", sub(n), sub(&rad)));
        }
    }
    Ok(t)
}

fn s2as_ideal_forms(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let ideals = m.checker.ideals()?;
    let ring = m.ring();
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let ins: Vec<Submodule> = ideals.iter().map(|i| n.scale_ideal(i)).collect();
        let sn_of: Vec<BitSet> = ins.iter().map(|x| lat.up_set(&x.scale_members(s))).collect();
        for (ii, inn) in ins.iter().enumerate() {
            for a in ring.elements() {
                let as_ = ring.mul(a, s);
                let ok = inn.scale_members(as_).count() == 1
                    || lat
                        .up_set(&inn.scale_members(a))
                        .is_subset(&lat.up_set(&n.scale_members(as_)).union(&sn_of[ii]));
                t.case(ok, || format!("N={}, I={:?}, a={}", sub(n), ideals[ii], show_ring(ring, a)));
            }
            for (jj, j) in ideals.iter().enumerate().skip(ii) {
                let ijn = inn.scale_ideal(j);
                let ok = ijn.scale_members(s).count() == 1
                    || lat.up_set(ijn.members()).is_subset(&sn_of[ii].union(&sn_of[jj]));
                t.case(ok, || format!("N={}, I={:?}, J={:?}", sub(n), ideals[ii], j));
            }
        }
    }
    Ok(t)
}

fn s2as_four_way(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, a) = setup(m, S2AbsorbingSecond)?;
    let others = [m.reports(S2asElements)?, m.reports(S2asCi)?, m.reports(S2asIdeals)?];
    let mut t = Tally::default();
    for i in 0..lat.len() {
        if guarded(a[i].verdict) {
            let vs: Vec<Verdict> = others.iter().map(|o| o[i].verdict).collect();
            t.case(vs.iter().all(|&v| v == a[i].verdict), || {
                format!("N={}: definition {}, elements/ci/ideals {:?}", sub(lat.get(i)), a[i].verdict, vs)
            });
        }
    }
    Ok(t)
}

fn strong_vs_s2as(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, s2) = setup(m, S2AbsorbingSecond)?;
    let strong = m.reports(Strong2AbsorbingSecond)?;
    let units_only = m.s.is_within_units();
    let mut t = Tally::default();
    for i in 0..lat.len() {
        if strong[i].holds() && guarded(s2[i].verdict) {
            t.case(s2[i].holds(), || format!("N={} strongly but not S-2-absorbing second", sub(lat.get(i))));
        }
        if units_only && s2[i].holds() {
            t.case(strong[i].holds(), || format!("N={} with S in units is not strongly", sub(lat.get(i))));
        }
    }
    Ok(t)
}

fn s2as_monotone(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    for bigger in m.related_sets.iter().filter(|b| m.s.is_subset(b) && b.members() != m.s.members()) {
        for (n, r) in lat.submodules().iter().zip(reps.iter()) {
            if r.holds() && !n.killed_by(bigger) {
                let rb = m.checker.check(S2AbsorbingSecond, n, bigger)?;
                t.case(rb.holds(), || format!("N={} fails for the larger set {:?}", sub(n), bigger));
            }
        }
    }
    Ok(t)
}

fn s2as_saturation(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let sat = saturate(&m.s)?;
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let rs = m.checker.check(S2AbsorbingSecond, n, &sat)?;
        t.case(rs.verdict == r.verdict, || format!("N={}: {} with S, {} with S*", sub(n), r.verdict, rs.verdict));
    }
    Ok(t)
}

fn s2as_localized_strong(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    if !reps.iter().any(|r| r.holds()) {
        return Ok(t);
    }
    let loc = localize_module(&m.module, &m.s)?;
    let lc = Checker::new(&loc.carrier, m.checker.options());
    let one = MulClosedSet::trivial(loc.carrier.ring());
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if r.holds() {
            let ln = loc.localize_submodule(n);
            t.case(lc.check(Strong2AbsorbingSecond, &ln, &one)?.holds(), || format!("N={}", sub(n)));
        }
    }
    Ok(t)
}

fn s2as_cube_strong(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let ring = m.ring();
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if !guarded(r.verdict) {
            continue;
        }
        let mut cube = false;
        for s in m.s.elements() {
            if m.holds(Strong2AbsorbingSecond, &n.scale(ring.pow(s, 3)))? {
                cube = true;
                break;
            }
        }
        t.case(cube == r.holds(), || format!("N={}: {} but cube form {}", sub(n), r.verdict, cube));
    }
    Ok(t)
}

fn s2as_quotient(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let mut t = Tally::default();
    if m.module.size() > 36 {
        return Ok(t);
    }
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    for n in lat.submodules() {
        let above: Vec<&Submodule> = lat
            .submodules()
            .iter()
            .zip(reps.iter())
            .filter(|(k, r)| r.holds() && n.is_subset(k) && *k != n)
            .map(|(k, _)| k)
            .collect();
        if above.is_empty() {
            continue;
        }
        let (q, proj) = m.module.quotient(n);
        let q = Arc::new(q);
        let qc = Checker::new(&q, m.checker.options());
        for k in above {
            let kn = Submodule::from_members(&q, BitSet::from_indices(q.size(), k.elements().map(|x| proj[x])));
            if kn.killed_by(&m.s) {
                continue;
            }
            t.case(qc.check(S2AbsorbingSecond, &kn, &m.s)?.holds(), || format!("N={}, K={}", sub(n), sub(k)));
        }
    }
    Ok(t)
}

fn s2as_annihilator_ideal(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let ring = m.ring();
    let mut cache: HashMap<BitSet, bool> = HashMap::new();
    let mut ideal_ok = |i: &Ideal| -> Result<bool> {
        if let Some(&v) = cache.get(&i.members) {
            return Ok(v);
        }
        let v = m.ideal_holds(S2Absorbing, i)?;
        cache.insert(i.members.clone(), v);
        Ok(v)
    };
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let ann = n.annihilator();
        t.case(ideal_ok(&ann)?, || format!("N={}: Ann(N)={:?}", sub(n), ann));
        for k in lat.submodules() {
            let c = k.colon_ideal(n);
            if !c.meets(&m.s) {
                t.case(ideal_ok(&c)?, || format!("N={}, K={}: (K:N)={:?}", sub(n), sub(k), c));
            }
        }
        let (s3, s4) = (ring.pow(s, 3), ring.pow(s, 4));
        t.case(n.scale_members(s3) == n.scale_members(s4), || format!("N={}, s={}", sub(n), show_ring(ring, s)));
    }
    Ok(t)
}

fn s2as_unit_chain(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let ring = m.ring();
    let elems = m.s.elements();
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let ann = n.annihilator();
        for &a in &elems {
            for &b in &elems {
                let ab = ring.mul(a, b);
                let (as_, sb) = (ring.mul(a, s), ring.mul(s, b));
                let abn = n.scale_members(ab);
                t.case(n.scale_members(as_).is_subset(&abn) || n.scale_members(sb).is_subset(&abn), || {
                    format!("N={}, t={}, h={}", sub(n), show_ring(ring, a), show_ring(ring, b))
                });
                let c = ann.colon_element(ab);
                t.case(c.is_subset(&ann.colon_element(as_)) || c.is_subset(&ann.colon_element(sb)), || {
                    format!("Ann form, N={}, t={}, h={}", sub(n), show_ring(ring, a), show_ring(ring, b))
                });
            }
        }
    }
    Ok(t)
}

fn comult_annihilator_transfer(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    if !lat.is_comultiplication() {
        return Ok(t);
    }
    let zero_absorbing = m.holds(S2Absorbing, &Submodule::zero(&m.module))?;
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if !guarded(r.verdict) {
            continue;
        }
        if m.ideal_holds(S2Absorbing, &n.annihilator())? {
            t.case(r.holds(), || format!("N={} has S-2-absorbing annihilator", sub(n)));
        }
        if zero_absorbing {
            t.case(r.holds(), || format!("N={} with S-2-absorbing zero", sub(n)));
        }
    }
    Ok(t)
}

fn mult_module_transfer(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2Absorbing)?;
    let mut t = Tally::default();
    if !lat.is_multiplication() || !m.holds(S2AbsorbingSecond, &Submodule::whole(&m.module))? {
        return Ok(t);
    }
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if guarded(r.verdict) {
            t.case(r.holds(), || format!("N={}", sub(n)));
        }
    }
    Ok(t)
}

fn strong_comult_equiv(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    if !lat.is_comultiplication() || !lat.has_dac(m.checker.options().lattice_cap)? {
        return Ok(t);
    }
    let ideals = m.checker.ideals()?;
    let good: Vec<bool> = ideals.iter().map(|i| m.ideal_holds(S2Absorbing, i)).collect::<Result<_>>()?;
    let zero = Submodule::zero(&m.module);
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if !guarded(r.verdict) {
            continue;
        }
        let ann = n.annihilator();
        let b = m.ideal_holds(S2Absorbing, &ann)?;
        let c = ideals.iter().zip(&good).any(|(i, &g)| g && ann.is_subset(i) && zero.colon_into_ideal(i) == *n);
        t.case(r.holds() == b && b == c, || format!("N={}: N {}, Ann(N) {b}, (0:I) form {c}", sub(n), r.verdict));
    }
    Ok(t)
}

fn s_second_pair_absorb(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, SSecond)?;
    let ring = m.ring();
    let mut t = Tally::default();
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        let Some(s) = r.witness.filter(|_| r.holds()) else { continue };
        let up_sn = lat.up_set(&n.scale_members(s));
        let kills = |x: usize| n.scale_members(ring.mul(s, x)).count() == 1;
        for a in ring.elements() {
            for b in a..ring.order() {
                let ok = kills(a) || kills(b) || lat.up_set(&n.scale_members(ring.mul(a, b))).is_subset(&up_sn);
                t.case(ok, || format!("N={}, a={}, b={}", sub(n), show_ring(ring, a), show_ring(ring, b)));
            }
        }
    }
    Ok(t)
}

fn s_second_sum(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, SSecond)?;
    let seconds: Vec<usize> = (0..lat.len()).filter(|&i| reps[i].holds()).collect();
    let mut t = Tally::default();
    for (x, &i) in seconds.iter().enumerate() {
        for &j in &seconds[x..] {
            let sum = lat.get(i).sum(lat.get(j));
            t.case(m.holds(S2AbsorbingSecond, &sum)?, || format!("{} + {}", sub(lat.get(i)), sub(lat.get(j))));
        }
    }
    Ok(t)
}

fn idealization_transfer(inst: &Instance) -> Result<Tally> {
    let id = inst.idealization.as_ref().expect("check registered for idealizations");
    let (base, ring) = (&id.base, &id.ring);
    let rb = Arc::new(FiniteModule::regular(base));
    let rr = Arc::new(FiniteModule::regular(ring));
    let (cb, cr) = (Checker::new(&rb, id.opts), Checker::new(&rr, id.opts));
    let embed = |x: usize| ring.from_idealization_parts(x, 0).expect("idealization ring");
    let lift = |s: &MulClosedSet, with_module: bool| -> Result<MulClosedSet> {
        let ms: Vec<usize> = if with_module { id.module.elements().collect() } else { vec![0] };
        let bits = BitSet::from_indices(
            ring.order(),
            s.elements().into_iter().flat_map(|x| ms.iter().map(move |&m| (x, m))).map(|(x, m)| {
                ring.from_idealization_parts(x, m).expect("idealization ring")
            }),
        );
        MulClosedSet::from_members(ring, bits)
    };
    let (s0, sm) = (lift(&id.s, false)?, lift(&id.s, true)?);
    let (one_b, one_r) = (MulClosedSet::trivial(base), MulClosedSet::trivial(ring));
    let ann_m = Submodule::whole(&id.module).annihilator();
    let mut t = Tally::default();
    for i in ideal_enumerate(base, id.opts.lattice_cap)?.iter().filter(|i| i.is_subset(&ann_m)) {
        let nb = Submodule::from_members(&rb, i.members.clone());
        let nr = Submodule::from_members(&rr, BitSet::from_indices(ring.order(), i.members.iter().map(embed)));
        let lhs = cb.check(Strong2AbsorbingSecond, &nb, &one_b)?.holds();
        let rhs = cr.check(Strong2AbsorbingSecond, &nr, &one_r)?.holds();
        t.case(lhs == rhs, || format!("I={:?}: strongly {lhs} in R, {rhs} in R(+)M", i));
        if !i.meets(&id.s) {
            let a = cb.check(S2AbsorbingSecond, &nb, &id.s)?.holds();
            let b = cr.check(S2AbsorbingSecond, &nr, &s0)?.holds();
            let c = cr.check(S2AbsorbingSecond, &nr, &sm)?.holds();
            t.case(a == b && b == c, || format!("I={:?}: S {a}, S(+)0 {b}, S(+)M {c}", i));
        }
    }
    Ok(t)
}

fn product_dichotomy(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let prod = inst.product.as_ref().expect("check registered for products");
    let lats: Vec<Arc<Lattice>> = prod.factors.iter().map(|f| f.lattice()).collect::<Result<_>>()?;
    let s2: Vec<_> = prod.factors.iter().map(|f| f.reports(S2AbsorbingSecond)).collect::<Result<_>>()?;
    let sec: Vec<_> = prod.factors.iter().map(|f| f.reports(SSecond)).collect::<Result<_>>()?;
    let mut t = Tally::default();
    let mut idx = vec![0usize; lats.len()];
    loop {
        let parts: Vec<&Submodule> = idx.iter().zip(&lats).map(|(&i, l)| l.get(i)).collect();
        let killed: Vec<bool> = parts.iter().zip(&prod.factors).map(|(n, f)| n.killed_by(&f.s)).collect();
        let rest_killed = |skip: &[usize]| (0..idx.len()).all(|k| skip.contains(&k) || killed[k]);
        let k = idx.len();
        let one = (0..k).any(|a| s2[a][idx[a]].holds() && rest_killed(&[a]));
        let two = (0..k)
            .any(|a| (a + 1..k).any(|b| sec[a][idx[a]].holds() && sec[b][idx[b]].holds() && rest_killed(&[a, b])));
        let n = prod.combine(&m.module, &parts);
        let whole = m.holds(S2AbsorbingSecond, &n)?;
        t.case(whole == (one || two), || {
            let shown: Vec<String> = parts.iter().map(|p| sub(p)).collect();
            format!("N={}: product {whole}, factor rule {}", shown.join(" x "), one || two)
        });
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(t);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < lats[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn second_socle_s2as(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    if !lat.is_comultiplication() {
        return Ok(t);
    }
    for (n, r) in lat.submodules().iter().zip(reps.iter()) {
        if r.holds() {
            let sec = lat.sec(n);
            t.case(m.holds(S2AbsorbingSecond, &sec)?, || format!("N={}, sec(N)={}", sub(n), sub(&sec)));
        }
    }
    Ok(t)
}

/// `M -> M + Z_p` for the least prime `p` of the modulus, and
/// `Z_d -> Z_n, x -> (n/d) x` when `M = Z_d`.
fn monomorphisms(m: &ModuleInstance) -> Result<Vec<ModuleMap>> {
    let mut out = Vec::new();
    let Some(n) = cyclic_modulus(m.ring()) else { return Ok(out) };
    if n < 2 {
        return Ok(out);
    }
    if m.module.size() <= 24 {
        let p = (2..=n).find(|p| n % p == 0).expect("n >= 2");
        let zp = FiniteModule::cyclic_natural(m.ring(), &[p])?;
        let target = Arc::new(FiniteModule::direct_sum(&m.module, &zp)?);
        out.push(ModuleMap::inclusion_first(&m.module, &target)?);
    }
    if let Some(&[d]) = m.module.radix() {
        if d < n {
            let target = Arc::new(FiniteModule::cyclic_natural(m.ring(), &[n])?);
            let table = (0..d).map(|x| x * (n / d)).collect();
            out.push(ModuleMap::new(&m.module, &target, table)?);
        }
    }
    Ok(out)
}

fn mono_image_preimage(inst: &Instance) -> Result<Tally> {
    let m = mi(inst);
    let (lat, reps) = setup(m, S2AbsorbingSecond)?;
    let mut t = Tally::default();
    for f in monomorphisms(m)? {
        let tm = ModuleInstance::new(f.target.clone(), m.s.clone(), m.related_sets.clone(), false, m.checker.options());
        for (n, r) in lat.submodules().iter().zip(reps.iter()) {
            if r.holds() {
                let img = f.image(n);
                t.case(tm.holds(S2AbsorbingSecond, &img)?, || format!("f(N) for N={}", sub(n)));
            }
        }
        let range = f.image_of_source();
        let (tl, treps) = setup(&tm, S2AbsorbingSecond)?;
        for (n2, r2) in tl.submodules().iter().zip(treps.iter()) {
            if r2.holds() && n2.is_subset(&range) {
                let pre = f.preimage(n2);
                t.case(m.holds(S2AbsorbingSecond, &pre)?, || format!("preimage of N'={}", sub(n2)));
            }
        }
    }
    Ok(t)
}
