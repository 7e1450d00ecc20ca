//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr,
//! bypassing output capture so the lines appear in every run.

mod common;

use std::io::Write;
use std::sync::{Arc, LazyLock};
use std::time::{Duration, Instant};

use absorb_core::theorems::{
    all_checks, default_family, find_check, verify, CheckStatus, FamilyOptions, Instance, ModuleInstance,
};
use absorb_core::*;

static FAMILY: LazyLock<Vec<Instance>> = LazyLock::new(|| default_family(FamilyOptions::default()).unwrap());

fn report(n: usize, title: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let result = body();
    let elapsed = start.elapsed();
    let result = result.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    let line = match &result {
        Ok(detail) => format!("PASS criterion {n}: {title} ({detail}; {elapsed:.2?})"),
        Err(why) => format!("FAIL criterion {n}: {title} ({why})"),
    };
    let _ = writeln!(std::io::stderr(), "{line}");
    if let Err(why) = result {
        panic!("criterion {n}: {why}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn integer_module(e: usize, primes: Vec<u64>, orders: &[usize]) -> (Arc<FiniteModule>, MulClosedSet) {
    let red = integer_base_reduce(&IntegerBaseDescriptor::new(e, primes)).unwrap();
    (Arc::new(FiniteModule::cyclic_natural(&red.ring, orders).unwrap()), red.residues)
}

#[test]
fn criterion_1_z4_over_integers() {
    report(1, "Z_4 over Z with S = Z minus 2Z", Duration::from_secs(1), || {
        let (m, s) = integer_module(4, vec![2], &[4]);
        let c = Checker::with_defaults(&m);
        let whole = Submodule::whole(&m);
        let r = c.check(Predicate::S2AbsorbingSecond, &whole, &s).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::True && r.witness == Some(1), || format!("s2as gave {r:?}"))?;
        let r = c.check(Predicate::SSecond, &whole, &s).map_err(|e| e.to_string())?;
        let two_z4 = Submodule::generate(&m, &[2]);
        let expected = Violation::ScalarSub { r: 2, k: two_z4 };
        ensure(r.verdict == Verdict::False && r.counterexample.as_ref() == Some(&expected), || {
            format!("s-second gave {r:?}")
        })?;
        Ok("S-2-absorbing second with s=1; not S-second, r=2, K=2Z_4".into())
    });
}

#[test]
fn criterion_2_sum_of_s_seconds() {
    report(2, "Z_4 + Z_9 sum example", Duration::from_secs(5), || {
        let (m, s) = integer_module(36, vec![2, 3], &[4, 9]);
        let c = Checker::new(&m, CheckOptions { per_s_violations: true, ..CheckOptions::default() });
        let idx = |v: &[usize]| m.index_of(v).unwrap();
        for gen in [idx(&[1, 0]), idx(&[0, 1])] {
            let n = Submodule::generate(&m, &[gen]);
            let r = c.check(Predicate::S2AbsorbingSecond, &n, &s).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{n:?} not S-2-absorbing second"))?;
        }
        let r = c.check(Predicate::S2AbsorbingSecond, &Submodule::whole(&m), &s).map_err(|e| e.to_string())?;
        let expected = Violation::PairSub { a: 2, b: 2, k: Submodule::generate(&m, &[idx(&[0, 1])]) };
        ensure(r.verdict == Verdict::False, || "sum holds".into())?;
        let per_s = r.per_s.unwrap_or_default();
        ensure(per_s.len() == s.len() && per_s.iter().all(|(_, v)| *v == expected), || {
            format!("violations {per_s:?}")
        })?;
        Ok(format!("a=b=2, K=0+Z_9 fails for all {} s", s.len()))
    });
}

#[test]
fn criterion_3_product_example() {
    report(3, "Z_9 x Z_4 product example", Duration::from_secs(10), || {
        let inst = FAMILY
            .iter()
            .find(|i| {
                i.product.as_ref().is_some_and(|p| {
                    p.factors.iter().all(|f| {
                        matches!(f.ring().kind(), RingKind::IntegerBase(d) if !d.excluded_primes.is_empty())
                    })
                })
            })
            .ok_or("no integer product instance")?;
        let p = inst.product.as_ref().unwrap();
        let m = inst.module.as_ref().unwrap();
        let holds = |mi: &ModuleInstance, pr| {
            mi.holds(pr, &Submodule::whole(&mi.module)).map_err(|e| e.to_string())
        };
        for f in &p.factors {
            ensure(holds(f, Predicate::S2AbsorbingSecond)?, || format!("{} not S_i-2-absorbing second", f.label()))?;
            ensure(!holds(f, Predicate::SSecond)?, || format!("{} is S_i-second", f.label()))?;
        }
        ensure(!holds(m, Predicate::S2AbsorbingSecond)?, || "product is S-2-absorbing second".into())?;
        let out = verify(&find_check("product-dichotomy").unwrap(), std::slice::from_ref(inst));
        ensure(out.status == CheckStatus::Passed, || format!("dichotomy {:?}", out.failures))?;
        Ok("factors hold, product fails, dichotomy agrees on every N1 x N2".into())
    });
}

#[test]
fn criterion_4_checker_equivalence() {
    report(4, "checker equivalence on the default family", Duration::from_secs(300), || {
        let mut triples = 0;
        for m in FAMILY.iter().filter_map(|i| i.module.as_ref()) {
            let lat = m.lattice().map_err(|e| e.to_string())?;
            let get = |p| m.reports(p).map_err(|e| e.to_string());
            let def = get(Predicate::S2AbsorbingSecond)?;
            let others = [get(Predicate::S2asElements)?, get(Predicate::S2asCi)?, get(Predicate::S2asIdeals)?];
            let (abs, colon) = (get(Predicate::S2Absorbing)?, get(Predicate::S2AbsorbingColon)?);
            for i in 0..lat.len() {
                triples += 1;
                for o in &others {
                    ensure(o[i].verdict == def[i].verdict, || format!("{} N={:?}", m.label(), lat.get(i)))?;
                }
                ensure(abs[i].verdict == colon[i].verdict, || format!("colon {} N={:?}", m.label(), lat.get(i)))?;
            }
        }
        ensure(triples >= 200, || format!("only {triples} triples"))?;
        Ok(format!("{triples} (module, S, N) triples agree"))
    });
}

#[test]
fn criterion_5_theorem_suite() {
    report(5, "theorem suite on the default family", Duration::from_secs(600), || {
        let mut discrepancy = None;
        for check in all_checks() {
            let out = verify(&check, &FAMILY);
            ensure(!out.status.is_refuted(), || format!("{} refuted: {:?}", check.id, out.failures))?;
            ensure(out.status != CheckStatus::Vacuous, || format!("{} never fires", check.id))?;
            if out.status == CheckStatus::Discrepancy {
                discrepancy = Some((check.index, out.discrepancies[0].to_string()));
            }
        }
        match discrepancy {
            Some((9, d)) if d.starts_with("paper-discrepancy") => Ok("25 checks, none refuted, check 9 discrepancy reported".into()),
            other => Err(format!("expected the check 9 discrepancy, got {other:?}")),
        }
    });
}

#[test]
fn criterion_6_localization_oracle() {
    report(6, "localization fast path vs fractions", Duration::from_secs(120), || {
        let small: Vec<&Instance> = FAMILY
            .iter()
            .filter(|i| i.module.as_ref().is_some_and(|m| m.module.size() <= 64))
            .collect();
        let mut compared = 0;
        for m in small.iter().filter_map(|i| i.module.as_ref()) {
            let sat = saturate(&m.s).map_err(|e| e.to_string())?;
            let again = saturate(&sat).map_err(|e| e.to_string())?;
            ensure(again.members() == sat.members() && m.s.is_subset(&sat), || format!("saturation {}", m.label()))?;
            let Ok(fast) = localize_module(&m.module, &m.s) else {
                ensure(m.s.contains_zero(), || format!("localization failed on {}", m.label()))?;
                continue;
            };
            let slow = localization_fraction_oracle(&m.module, &m.s).map_err(|e| e.to_string())?;
            let a = Arc::new(fast.over_base().map_err(|e| e.to_string())?);
            let b = Arc::new(slow.over_base().map_err(|e| e.to_string())?);
            ensure(find_isomorphism(&a, &b).is_some(), || format!("not isomorphic on {}", m.label()))?;
            compared += 1;
        }
        let out = verify(&find_check("s2as-saturation").unwrap(), &FAMILY);
        ensure(out.failing_instances == 0 && out.asserted > 0, || format!("{:?}", out.failures))?;
        Ok(format!("{compared} localizations isomorphic, saturation verdicts equal"))
    });
}

#[test]
fn criterion_7_lattice_sanity() {
    report(7, "lattice counts and completely irreducibles", Duration::from_secs(1), || {
        let count = |n: usize, orders: &[usize]| {
            let m = Arc::new(FiniteModule::cyclic_natural(&make_zn(n).unwrap(), orders).unwrap());
            Lattice::new(&m, DEFAULT_LATTICE_CAP).unwrap()
        };
        let z4 = count(4, &[4]);
        let counts = [z4.len(), count(2, &[2, 2]).len(), count(36, &[4, 9]).len()];
        ensure(counts == [3, 5, 9], || format!("counts {counts:?}"))?;
        let ci: Vec<Vec<usize>> = z4.completely_irreducible().iter().map(|&i| z4.get(i).elements().collect()).collect();
        ensure(ci == vec![vec![0], vec![0, 2]], || format!("completely irreducible {ci:?}"))?;
        Ok("3, 5, 9 submodules; Z_4 completely irreducibles 0 and 2Z_4".into())
    });
}

#[test]
fn criterion_8_cli_contract() {
    report(8, "golden CLI corpus, repeated and parallel", Duration::from_secs(300), || {
        let cases = common::cases();
        let mut bad = Vec::new();
        for _ in 0..2 {
            for case in &cases {
                bad.extend(common::compare(case, &common::run(&case.args)));
            }
        }
        let parallel: Vec<Vec<String>> = std::thread::scope(|scope| {
            let handles: Vec<_> = cases
                .iter()
                .map(|case| scope.spawn(move || common::compare(case, &common::run(&case.args))))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        bad.extend(parallel.into_iter().flatten());
        ensure(bad.is_empty(), || bad.join("; "))?;
        Ok(format!("{} cases byte-stable over 3 runs", cases.len()))
    });
}
