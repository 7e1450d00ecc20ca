//! Instance families the theorem checks run over.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bits::BitSet;
use crate::checkers::{CheckOptions, CheckReport, Checker, Predicate};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::mcs::{mcs_closure, MulClosedSet};
use crate::module::{FiniteModule, Submodule};
use crate::ring::{integer_base_reduce, Ideal, make_idealization, make_product, make_zn, IntegerBaseDescriptor, Ring, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Module,
    Product,
    Idealization,
}

/// A module with a multiplicatively closed set, plus cached verdicts.
pub struct ModuleInstance {
    pub module: Arc<FiniteModule>,
    pub s: MulClosedSet,
    pub checker: Arc<Checker>,
    /// The module is the ring acting on itself.
    pub regular: bool,
    /// Other sets of the family over the same ring.
    pub related_sets: Arc<Vec<MulClosedSet>>,
    memo: Mutex<HashMap<Predicate, Arc<Vec<CheckReport>>>>,
    ring_view: OnceLock<Box<ModuleInstance>>,
}

impl fmt::Debug for ModuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} with {:?}", self.module, self.s)
    }
}

impl ModuleInstance {
    pub fn new(
        module: Arc<FiniteModule>,
        s: MulClosedSet,
        related_sets: Arc<Vec<MulClosedSet>>,
        regular: bool,
        opts: CheckOptions,
    ) -> ModuleInstance {
        let checker = Arc::new(Checker::new(&module, opts));
        ModuleInstance {
            module,
            s,
            checker,
            regular,
            related_sets,
            memo: Mutex::new(HashMap::new()),
            ring_view: OnceLock::new(),
        }
    }

    /// Shares the checker (and so the cached lattice) of `other`.
    pub fn with_set(other: &ModuleInstance, s: MulClosedSet) -> ModuleInstance {
        ModuleInstance {
            module: other.module.clone(),
            s,
            checker: other.checker.clone(),
            regular: other.regular,
            related_sets: other.related_sets.clone(),
            memo: Mutex::new(HashMap::new()),
            ring_view: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn lattice(&self) -> Result<Arc<Lattice>> {
        self.checker.lattice()
    }

    /// Reports for every submodule, in lattice order.
    pub fn reports(&self, p: Predicate) -> Result<Arc<Vec<CheckReport>>> {
        if let Some(r) = self.memo.lock().expect("memo lock").get(&p) {
            return Ok(r.clone());
        }
        let lat = self.lattice()?;
        let reports: Vec<CheckReport> =
            lat.submodules().iter().map(|n| self.checker.check(p, n, &self.s)).collect::<Result<_>>()?;
        let reports = Arc::new(reports);
        self.memo.lock().expect("memo lock").insert(p, reports.clone());
        Ok(reports)
    }

    pub fn report_for(&self, p: Predicate, n: &Submodule) -> Result<CheckReport> {
        let lat = self.lattice()?;
        match lat.position(n.members()) {
            Some(i) => Ok(self.reports(p)?[i].clone()),
            None => self.checker.check(p, n, &self.s),
        }
    }

    pub fn holds(&self, p: Predicate, n: &Submodule) -> Result<bool> {
        Ok(self.report_for(p, n)?.holds())
    }

    /// The ring over itself with the same set.
    pub fn ring_view(&self) -> &ModuleInstance {
        self.ring_view.get_or_init(|| {
            let r = Arc::new(FiniteModule::regular(self.ring()));
            Box::new(ModuleInstance::new(r, self.s.clone(), self.related_sets.clone(), true, self.checker.options()))
        })
    }

    /// Evaluates `p` on an ideal of the ring, seen as a submodule of `R`.
    pub fn ideal_holds(&self, p: Predicate, ideal: &Ideal) -> Result<bool> {
        let rv = self.ring_view();
        rv.holds(p, &Submodule::from_members(&rv.module, ideal.members.clone()))
    }

    pub fn label(&self) -> String {
        format!("{:?} | {} | S={}", self.ring().kind(), self.module.describe(), show_set(&self.s))
    }
}

pub fn show_set(s: &MulClosedSet) -> String {
    let parts: Vec<String> = s.elements().iter().map(|&x| crate::checkers::show_ring(s.ring(), x)).collect();
    format!("{{{}}}", parts.join(","))
}

/// `M_1 x ... x M_k` over `R_1 x ... x R_k` with `S_1 x ... x S_k`.
#[derive(Debug)]
pub struct ProductInstance {
    pub factors: Vec<ModuleInstance>,
}

impl ProductInstance {
    /// `N_1 x ... x N_k` inside the product module.
    pub fn combine(&self, product: &Arc<FiniteModule>, parts: &[&Submodule]) -> Submodule {
        let sizes: Vec<usize> = self.factors.iter().map(|f| f.module.size()).collect();
        let lists: Vec<Vec<usize>> = parts.iter().map(|n| n.elements().collect()).collect();
        let mut members = BitSet::new(product.size());
        let mut idx = vec![0usize; parts.len()];
        'outer: loop {
            let coords: Vec<usize> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            members.insert(crate::ring::encode(&sizes, &coords));
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < lists[pos].len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
        Submodule::from_members(product, members)
    }
}

/// `R(+)M` with a set `S` of `R`.
#[derive(Debug)]
pub struct IdealizationInstance {
    pub base: Ring,
    pub module: Arc<FiniteModule>,
    pub s: MulClosedSet,
    pub ring: Ring,
    pub opts: CheckOptions,
}

#[derive(Debug)]
pub struct Instance {
    pub index: usize,
    pub label: String,
    pub module: Option<ModuleInstance>,
    pub product: Option<ProductInstance>,
    pub idealization: Option<IdealizationInstance>,
}

impl Instance {
    pub fn kinds(&self) -> Vec<InstanceKind> {
        let mut out = Vec::new();
        if self.module.is_some() {
            out.push(InstanceKind::Module);
        }
        if self.product.is_some() {
            out.push(InstanceKind::Product);
        }
        if self.idealization.is_some() {
            out.push(InstanceKind::Idealization);
        }
        out
    }

    pub fn from_module(m: ModuleInstance) -> Instance {
        Instance { index: 0, label: m.label(), module: Some(m), product: None, idealization: None }
    }
}

/// Sizes and caps for the default family.
#[derive(Clone, Copy, Debug)]
pub struct FamilyOptions {
    pub check: CheckOptions,
    pub max_module_order: usize,
    pub max_idealization_order: usize,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions { check: CheckOptions::default(), max_module_order: 72, max_idealization_order: 64 }
    }
}

pub const ZN_MODULI: [usize; 8] = [2, 3, 4, 6, 8, 9, 12, 16];
pub const INTEGER_EXPONENTS: [usize; 5] = [4, 8, 9, 12, 36];

fn divisors(n: usize) -> Vec<usize> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// Every set generated by at most two seeds, deduplicated, in order of
/// first appearance.
pub fn small_mcs(ring: &Ring) -> Vec<MulClosedSet> {
    let n = ring.order();
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut push = |seeds: &[usize]| {
        if let Ok(s) = mcs_closure(ring, seeds) {
            if seen.insert(s.members().clone(), ()).is_none() {
                out.push(s);
            }
        }
    };
    push(&[]);
    for a in 1..n {
        push(&[a]);
    }
    for a in 1..n {
        for b in a + 1..n {
            push(&[a, b]);
        }
    }
    out
}

/// Modules over a ring whose elements act as integers modulo `n`: the
/// regular module, `Z_d` for proper divisors, and two-summand sums.
fn cyclic_modules(ring: &Ring, n: usize, max_order: usize) -> Vec<(Arc<FiniteModule>, bool)> {
    let mut out = vec![(Arc::new(FiniteModule::cyclic_natural(ring, &[n]).expect("Z_n over itself")), true)];
    let ds = divisors(n);
    for &d in &ds {
        if d != n {
            out.push((Arc::new(FiniteModule::cyclic_natural(ring, &[d]).expect("divisor order")), false));
        }
    }
    for (i, &d1) in ds.iter().enumerate() {
        for &d2 in &ds[i..] {
            if d1 * d2 <= max_order {
                out.push((Arc::new(FiniteModule::cyclic_natural(ring, &[d1, d2]).expect("divisor orders")), false));
            }
        }
    }
    out
}

fn push_instance(out: &mut Vec<Instance>, mut inst: Instance) {
    inst.index = out.len();
    out.push(inst);
}

/// The default instance family.
pub fn default_family(opts: FamilyOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let co = opts.check;

    for n in ZN_MODULI {
        let ring = make_zn(n)?;
        let sets = Arc::new(small_mcs(&ring));
        for (m, regular) in cyclic_modules(&ring, n, opts.max_module_order) {
            for s in sets.iter() {
                let mi = ModuleInstance::new(m.clone(), s.clone(), sets.clone(), regular, co);
                push_instance(&mut out, Instance::from_module(mi));
            }
        }
    }

    for e in INTEGER_EXPONENTS {
        for primes in [vec![], vec![2], vec![3], vec![2, 3]] {
            let red = integer_base_reduce(&IntegerBaseDescriptor::new(e, primes))?;
            let sets = Arc::new(vec![red.residues.clone()]);
            for (m, regular) in cyclic_modules(&red.ring, e, opts.max_module_order) {
                let mi = ModuleInstance::new(m, red.residues.clone(), sets.clone(), regular, co);
                push_instance(&mut out, Instance::from_module(mi));
            }
        }
    }

    for inst in product_instances(co)? {
        push_instance(&mut out, inst);
    }
    for inst in idealization_instances(opts)? {
        push_instance(&mut out, inst);
    }
    Ok(out)
}

/// Builds `M_1 x ... x M_k` with the product set, keeping the factors.
pub fn product_instance(factors: Vec<ModuleInstance>, co: CheckOptions) -> Result<Instance> {
    let rings: Vec<Ring> = factors.iter().map(|f| f.ring().clone()).collect();
    let ring = make_product(&rings)?;
    let mods: Vec<Arc<FiniteModule>> = factors.iter().map(|f| f.module.clone()).collect();
    let module = Arc::new(FiniteModule::product(&ring, &mods)?);
    let sets: Vec<MulClosedSet> = factors.iter().map(|f| f.s.clone()).collect();
    let s = MulClosedSet::product(&ring, &sets)?;
    let related = Arc::new(vec![s.clone()]);
    let mi = ModuleInstance::new(module, s, related, false, co);
    let label = format!(
        "product [{}]",
        factors.iter().map(|f| format!("({})", f.label())).collect::<Vec<_>>().join(" x ")
    );
    Ok(Instance { index: 0, label, module: Some(mi), product: Some(ProductInstance { factors }), idealization: None })
}

fn zn_factor(n: usize, orders: &[usize], seeds: &[usize], co: CheckOptions) -> Result<ModuleInstance> {
    let ring = make_zn(n)?;
    let module = Arc::new(if orders == [n] {
        FiniteModule::regular(&ring)
    } else {
        FiniteModule::cyclic_natural(&ring, orders)?
    });
    let s = mcs_closure(&ring, seeds)?;
    Ok(ModuleInstance::new(module, s.clone(), Arc::new(vec![s]), orders == [n], co))
}

fn integer_factor(e: usize, primes: Vec<u64>, orders: &[usize], co: CheckOptions) -> Result<ModuleInstance> {
    let red = integer_base_reduce(&IntegerBaseDescriptor::new(e, primes))?;
    let module = Arc::new(FiniteModule::cyclic_natural(&red.ring, orders)?);
    Ok(ModuleInstance::new(module, red.residues.clone(), Arc::new(vec![red.residues]), orders == [e], co))
}

fn product_instances(co: CheckOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    // Z_9 x Z_4 and Z_4 x Z_4 with product sets
    let nine_sets: [&[usize]; 4] = [&[], &[8], &[4], &[2]];
    let four_sets: [&[usize]; 2] = [&[], &[3]];
    for s1 in nine_sets {
        for s2 in four_sets {
            for (o1, o2) in [(&[9][..], &[4][..]), (&[3][..], &[4][..]), (&[9][..], &[2][..])] {
                let f = vec![zn_factor(9, o1, s1, co)?, zn_factor(4, o2, s2, co)?];
                out.push(product_instance(f, co)?);
            }
        }
    }
    for s1 in four_sets {
        for s2 in four_sets {
            for (o1, o2) in [(&[4][..], &[4][..]), (&[2][..], &[4][..]), (&[4][..], &[2, 2][..])] {
                let f = vec![zn_factor(4, o1, s1, co)?, zn_factor(4, o2, s2, co)?];
                out.push(product_instance(f, co)?);
            }
        }
    }
    // the integers reduced factorwise, avoiding 3 and 2 respectively
    let f = vec![integer_factor(9, vec![3], &[9], co)?, integer_factor(4, vec![2], &[4], co)?];
    out.push(product_instance(f, co)?);
    let f = vec![integer_factor(9, vec![], &[9], co)?, integer_factor(4, vec![2], &[4], co)?];
    out.push(product_instance(f, co)?);
    // three factors
    for s3 in four_sets {
        let f = vec![zn_factor(2, &[2], &[], co)?, zn_factor(3, &[3], &[], co)?, zn_factor(4, &[4], s3, co)?];
        out.push(product_instance(f, co)?);
        let f = vec![zn_factor(2, &[2], &[], co)?, zn_factor(3, &[3], &[2], co)?, zn_factor(4, &[2], s3, co)?];
        out.push(product_instance(f, co)?);
    }
    Ok(out)
}

fn idealization_instances(opts: FamilyOptions) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let specs: [(usize, &[usize]); 12] = [
        (2, &[2]),
        (2, &[2, 2]),
        (3, &[3]),
        (4, &[2]),
        (4, &[4]),
        (4, &[2, 2]),
        (6, &[3]),
        (6, &[2]),
        (8, &[4]),
        (9, &[3]),
        (12, &[2]),
        (16, &[4]),
    ];
    for (n, orders) in specs {
        let base = make_zn(n)?;
        let module = Arc::new(FiniteModule::cyclic_natural(&base, orders)?);
        if n * module.size() > opts.max_idealization_order {
            continue;
        }
        let ring = make_idealization(&base, &module)?;
        for s in small_mcs(&base) {
            let label = format!("{:?} with S={}", ring.kind(), show_set(&s));
            let ideal = IdealizationInstance {
                base: base.clone(),
                module: module.clone(),
                s,
                ring: ring.clone(),
                opts: opts.check,
            };
            out.push(Instance { index: 0, label, module: None, product: None, idealization: Some(ideal) });
        }
    }
    Ok(out)
}

/// True when `ring` is `Z_n` or an integer base, returning the modulus.
pub fn cyclic_modulus(ring: &Ring) -> Option<usize> {
    match ring.kind() {
        RingKind::Zn(n) => Some(*n),
        RingKind::IntegerBase(d) => Some(d.exponent),
        _ => None,
    }
}
