//! Finite modules, submodules and module maps.

use std::fmt;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::mcs::MulClosedSet;
use crate::ring::{decode, encode, Ideal, Ring, RingKind, MAX_ORDER};

/// A finite module over a [`FiniteRing`](crate::ring::FiniteRing), stored as
/// an addition table plus a scalar-action table.
#[derive(Clone)]
pub struct FiniteModule {
    ring: Ring,
    size: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    act: Vec<u16>,
    radix: Option<Vec<usize>>,
    /// Elements are ring elements whose coordinates come from the ring.
    ring_coords: bool,
    label: String,
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.add == other.add && self.act == other.act
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.label, self.ring)
    }
}

impl FiniteModule {
    pub fn from_fns(
        ring: &Ring,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        radix: Option<Vec<usize>>,
        label: impl Into<String>,
    ) -> Result<FiniteModule> {
        if size == 0 {
            return Err(Error::InvalidModule("empty carrier".into()));
        }
        if size > MAX_ORDER {
            return Err(Error::CapExceeded { what: "module order", cap: MAX_ORDER });
        }
        let mut at = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                let s = add(a, b);
                if s >= size {
                    return Err(Error::InvalidModule(format!("sum {a}+{b} out of range")));
                }
                at[a * size + b] = s as u16;
            }
        }
        let n = ring.order();
        let mut act_t = vec![0u16; n * size];
        for r in 0..n {
            for m in 0..size {
                let x = act(r, m);
                if x >= size {
                    return Err(Error::InvalidModule(format!("{r}.{m} out of range")));
                }
                act_t[r * size + m] = x as u16;
            }
        }
        let mut neg = vec![0u16; size];
        for a in 0..size {
            match (0..size).find(|&b| at[a * size + b] == 0) {
                Some(b) => neg[a] = b as u16,
                None => return Err(Error::InvalidModule(format!("{a} has no additive inverse"))),
            }
        }
        let module = FiniteModule { ring: ring.clone(), size, add: at, neg, act: act_t, radix, ring_coords: false, label: label.into() };
        module.check_axioms()?;
        Ok(module)
    }

    /// Group axioms in full; action axioms in full when small, sampled otherwise.
    pub fn check_axioms(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModule(msg));
        let (n, m) = (self.ring.order(), self.size);
        for a in 0..m {
            if self.add(a, 0) != a {
                return bad(format!("0 is not an identity at {a}"));
            }
            if self.act(1, a) != a {
                return bad(format!("1 does not act as identity on {a}"));
            }
            for b in 0..m {
                if self.add(a, b) != self.add(b, a) {
                    return bad(format!("addition not commutative at ({a},{b})"));
                }
            }
        }
        let check = |r: usize, x: usize, y: usize| -> Result<()> {
            if self.act(r, self.add(x, y)) != self.add(self.act(r, x), self.act(r, y)) {
                return bad(format!("action of {r} not additive at ({x},{y})"));
            }
            let t = y % n;
            if self.act(self.ring.add(r, t), x) != self.add(self.act(r, x), self.act(t, x)) {
                return bad(format!("action not additive in scalars at ({r},{t},{x})"));
            }
            if self.act(self.ring.mul(r, t), x) != self.act(r, self.act(t, x)) {
                return bad(format!("action not associative at ({r},{t},{x})"));
            }
            Ok(())
        };
        let assoc = |x: usize, y: usize, z: usize| -> Result<()> {
            if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                return bad(format!("addition not associative at ({x},{y},{z})"));
            }
            Ok(())
        };
        if m * m * m <= 1 << 21 {
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        assoc(x, y, z)?;
                    }
                }
            }
        } else {
            for (x, y, z) in crate::ring::stride_triples(m, 10_000) {
                assoc(x, y, z)?;
            }
        }
        if n * m * m <= 1 << 21 {
            for r in 0..n {
                for x in 0..m {
                    for y in 0..m {
                        check(r, x, y)?;
                    }
                }
            }
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            for _ in 0..10_000 {
                // splitmix-style index walk; only determinism matters here
                state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let z = state ^ (state >> 31);
                check((z % n as u64) as usize, ((z >> 12) % m as u64) as usize, ((z >> 36) % m as u64) as usize)?;
            }
        }
        Ok(())
    }

    /// `Z_{d_1} + ... + Z_{d_k}` with the action of `Z_n` (or of the integers
    /// reduced modulo the exponent). Each `d_i` must divide the ring's modulus.
    pub fn cyclic_natural(ring: &Ring, orders: &[usize]) -> Result<FiniteModule> {
        let n = match ring.kind() {
            RingKind::Zn(n) => *n,
            RingKind::IntegerBase(d) => d.exponent,
            _ => return Err(Error::InvalidModule("natural action needs Z_n or an integer base".into())),
        };
        if orders.is_empty() || orders.iter().any(|&d| d < 2 || n % d != 0) {
            return Err(Error::InvalidModule(format!("cyclic orders {orders:?} must divide {n}")));
        }
        let size = checked_size(orders)?;
        let orders = orders.to_vec();
        FiniteModule::from_fns(
            ring,
            size,
            |a, b| {
                let (x, y) = (decode(&orders, a), decode(&orders, b));
                let s: Vec<usize> = x.iter().zip(&y).zip(&orders).map(|((p, q), d)| (p + q) % d).collect();
                encode(&orders, &s)
            },
            |r, a| {
                let x = decode(&orders, a);
                let s: Vec<usize> = x.iter().zip(&orders).map(|(p, d)| (r * p) % d).collect();
                encode(&orders, &s)
            },
            Some(orders.clone()),
            cyclic_label(&orders),
        )
    }

    /// Cyclic carrier with the action given on generators: `rows[j][i]` is the
    /// image of the `i`-th cyclic generator under the `j`-th additive generator
    /// of the ring (the unit vectors of the ring's coordinates).
    pub fn from_generator_rows(ring: &Ring, orders: &[usize], rows: &[Vec<usize>]) -> Result<FiniteModule> {
        let ring_radix = ring
            .radix()
            .filter(|_| ring.coords(0).is_some())
            .ok_or_else(|| Error::InvalidModule("ring has no coordinate system".into()))?
            .to_vec();
        if rows.len() != ring_radix.len() || rows.iter().any(|r| r.len() != orders.len()) {
            return Err(Error::InvalidModule(format!(
                "action rows must be {} x {}",
                ring_radix.len(),
                orders.len()
            )));
        }
        let size = checked_size(orders)?;
        if rows.iter().flatten().any(|&x| x >= size) {
            return Err(Error::InvalidModule("action row entry out of range".into()));
        }
        let orders = orders.to_vec();
        let vadd = |a: usize, b: usize| {
            let (x, y) = (decode(&orders, a), decode(&orders, b));
            let s: Vec<usize> = x.iter().zip(&y).zip(&orders).map(|((p, q), d)| (p + q) % d).collect();
            encode(&orders, &s)
        };
        let times = |k: usize, a: usize| (0..k).fold(0, |acc, _| vadd(acc, a));
        FiniteModule::from_fns(
            ring,
            size,
            vadd,
            |r, a| {
                let rc = ring.coords(r).expect("ring has coordinates");
                let mc = decode(&orders, a);
                let mut acc = 0;
                for (j, &cj) in rc.iter().enumerate() {
                    for (i, &xi) in mc.iter().enumerate() {
                        acc = vadd(acc, times(cj * xi, rows[j][i]));
                    }
                }
                acc
            },
            Some(orders.clone()),
            format!("{} (explicit action)", cyclic_label(&orders)),
        )
    }

    /// The ring as a module over itself.
    ///
    /// Element indices are ring indices. When those are not plain mixed-radix
    /// positions the module reports coordinates through the ring and exposes
    /// no radix, so derived modules fall back to bare indices.
    pub fn regular(ring: &Ring) -> FiniteModule {
        let n = ring.order();
        let plain = ring.radix().filter(|r| (0..n).all(|a| ring.coords(a).as_deref() == Some(&decode(r, a)[..])));
        let mut m = FiniteModule::from_fns(
            ring,
            n,
            |a, b| ring.add(a, b),
            |r, a| ring.mul(r, a),
            plain.map(<[usize]>::to_vec),
            "R",
        )
        .expect("regular module of a valid ring");
        m.ring_coords = m.radix.is_none() && ring.coords(0).is_some();
        m
    }

    /// `M_1 x ... x M_k` over `R_1 x ... x R_k`, acting componentwise.
    pub fn product(ring: &Ring, factors: &[Arc<FiniteModule>]) -> Result<FiniteModule> {
        let RingKind::Product(rings) = ring.kind() else {
            return Err(Error::InvalidModule("product module needs a product ring".into()));
        };
        if rings.len() != factors.len() || rings.iter().zip(factors).any(|(r, m)| **r != *m.ring) {
            return Err(Error::InvalidModule("factor modules do not match the ring factors".into()));
        }
        let sizes: Vec<usize> = factors.iter().map(|m| m.size).collect();
        let size = checked_size(&sizes)?;
        let radix = factors.iter().map(|m| m.radix.clone()).collect::<Option<Vec<_>>>().map(|v| v.concat());
        let label = factors.iter().map(|m| format!("({})", m.label)).collect::<Vec<_>>().join(" x ");
        FiniteModule::from_fns(
            ring,
            size,
            |a, b| {
                let (x, y) = (decode(&sizes, a), decode(&sizes, b));
                let s: Vec<usize> = factors.iter().enumerate().map(|(i, m)| m.add(x[i], y[i])).collect();
                encode(&sizes, &s)
            },
            |r, a| {
                let (rc, x) = (ring.factor_indices(r).expect("product ring"), decode(&sizes, a));
                let s: Vec<usize> = factors.iter().enumerate().map(|(i, m)| m.act(rc[i], x[i])).collect();
                encode(&sizes, &s)
            },
            radix,
            label,
        )
    }

    /// `M + M'` over a common ring; `(x, y)` lives at `x * |M'| + y`.
    pub fn direct_sum(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
        if *a.ring != *b.ring {
            return Err(Error::InvalidModule("direct sum over different rings".into()));
        }
        let k = b.size;
        let size = a.size.checked_mul(k).filter(|&s| s <= MAX_ORDER);
        let size = size.ok_or(Error::CapExceeded { what: "module order", cap: MAX_ORDER })?;
        let radix = match (&a.radix, &b.radix) {
            (Some(x), Some(y)) => Some([x.as_slice(), y.as_slice()].concat()),
            _ => None,
        };
        FiniteModule::from_fns(
            &a.ring,
            size,
            |x, y| a.add(x / k, y / k) * k + b.add(x % k, y % k),
            |r, x| a.act(r, x / k) * k + b.act(r, x % k),
            radix,
            format!("{} + {}", a.label, b.label),
        )
    }

    /// `M^k`, the module `R^k (x) M` with the diagonal action.
    pub fn free_tensor(&self, k: usize) -> Result<FiniteModule> {
        if k == 0 {
            return Err(Error::InvalidModule("zero-fold power".into()));
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = FiniteModule::direct_sum(&out, self)?;
        }
        out.label = format!("({})^{k}", self.label);
        Ok(out)
    }

    /// Restriction of scalars along a ring map `phi: base -> self.ring`.
    pub fn restrict_scalars(&self, base: &Ring, phi: &[usize]) -> Result<FiniteModule> {
        FiniteModule::from_fns(
            base,
            self.size,
            |a, b| self.add(a, b),
            |r, a| self.act(phi[r], a),
            self.radix.clone(),
            format!("{} (restricted)", self.label),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn radix(&self) -> Option<&[usize]> {
        self.radix.as_deref()
    }

    pub fn describe(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn act(&self, r: usize, a: usize) -> usize {
        self.act[r * self.size + a] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn coords(&self, a: usize) -> Option<Vec<usize>> {
        if self.ring_coords {
            return self.ring.coords(a);
        }
        self.radix.as_ref().map(|r| decode(r, a))
    }

    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        if self.ring_coords {
            return self.ring.index_of(coords);
        }
        let r = self.radix.as_ref()?;
        (r.len() == coords.len() && coords.iter().zip(r).all(|(c, d)| c < d)).then(|| encode(r, coords))
    }

    /// Human-readable element: coordinates when available, index otherwise.
    pub fn show(&self, a: usize) -> String {
        match self.coords(a) {
            Some(c) if c.len() == 1 => c[0].to_string(),
            Some(c) => format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
            None => format!("#{a}"),
        }
    }

    /// Least `k >= 1` with `k * m = 0` for every `m` (the exponent).
    pub fn exponent(&self) -> usize {
        let mut k = 1;
        loop {
            if self.elements().all(|m| times(self, k, m) == 0) {
                return k;
            }
            k += 1;
        }
    }

    /// `M / N` with cosets represented by their least member; returns the
    /// quotient and the projection table.
    pub fn quotient(self: &Arc<Self>, n: &Submodule) -> (FiniteModule, Vec<usize>) {
        assert!(Arc::ptr_eq(&n.module, self) || *n.module == **self);
        let mut proj = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        for x in self.elements() {
            if proj[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for y in n.members.iter() {
                proj[self.add(x, y)] = id;
            }
        }
        let q = FiniteModule::from_fns(
            &self.ring,
            reps.len(),
            |a, b| proj[self.add(reps[a], reps[b])],
            |r, a| proj[self.act(r, reps[a])],
            None,
            format!("({}) / N", self.label),
        )
        .expect("quotient of a valid module");
        (q, proj)
    }
}

fn times(m: &FiniteModule, k: usize, a: usize) -> usize {
    (0..k).fold(0, |acc, _| m.add(acc, a))
}

fn checked_size(orders: &[usize]) -> Result<usize> {
    orders
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d).filter(|&p| p <= MAX_ORDER))
        .ok_or(Error::CapExceeded { what: "module order", cap: MAX_ORDER })
}

fn cyclic_label(orders: &[usize]) -> String {
    orders.iter().map(|d| format!("Z_{d}")).collect::<Vec<_>>().join("+")
}

/// A submodule, kept as a membership bitset over the carrier.
#[derive(Clone)]
pub struct Submodule {
    module: Arc<FiniteModule>,
    members: BitSet,
    generators: Vec<usize>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Submodule {}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.show_generators())
    }
}

/// Adds every `x + y` for `x` in `a`, `y` in `b`.
fn sum_sets(m: &FiniteModule, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = BitSet::new(m.size);
    let bs: Vec<usize> = b.iter().collect();
    for x in a.iter() {
        for &y in &bs {
            out.insert(m.add(x, y));
        }
    }
    out
}

impl Submodule {
    /// Least submodule containing `gens`: the sum of the cyclic submodules `R g`.
    pub fn generate(module: &Arc<FiniteModule>, gens: &[usize]) -> Submodule {
        let mut members = BitSet::from_indices(module.size, [0]);
        for &g in gens {
            if members.contains(g) {
                continue;
            }
            let cyc = BitSet::from_indices(module.size, module.ring.elements().map(|r| module.act(r, g)));
            members = sum_sets(module, &members, &cyc);
        }
        Submodule { module: module.clone(), members, generators: gens.to_vec() }
    }

    /// Wraps a member set known to be a submodule; generators are recomputed.
    pub fn from_members(module: &Arc<FiniteModule>, members: BitSet) -> Submodule {
        let generators = canonical_generators(module, &members);
        let sub = Submodule { module: module.clone(), members, generators };
        debug_assert!(Submodule::generate(module, &sub.generators).members == sub.members);
        sub
    }

    /// Checked variant of [`Submodule::from_members`].
    pub fn try_from_members(module: &Arc<FiniteModule>, members: BitSet) -> Result<Submodule> {
        let generators = canonical_generators(module, &members);
        if Submodule::generate(module, &generators).members != members {
            return Err(Error::InvalidModule("member set is not a submodule".into()));
        }
        Ok(Submodule { module: module.clone(), members, generators })
    }

    pub fn zero(module: &Arc<FiniteModule>) -> Submodule {
        Submodule { module: module.clone(), members: BitSet::from_indices(module.size, [0]), generators: vec![] }
    }

    pub fn whole(module: &Arc<FiniteModule>) -> Submodule {
        Submodule::from_members(module, BitSet::full(module.size))
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members.contains(m)
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.module.size
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    /// Least generating set found by scanning members in index order.
    pub fn canonical_generators(&self) -> Vec<usize> {
        canonical_generators(&self.module, &self.members)
    }

    pub fn show_generators(&self) -> String {
        let gens = self.canonical_generators();
        if gens.is_empty() {
            return "0".into();
        }
        gens.iter().map(|&g| self.module.show(g)).collect::<Vec<_>>().join(", ")
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let members = sum_sets(&self.module, &self.members, &other.members);
        Submodule::from_members(&self.module, members)
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule::from_members(&self.module, self.members.intersection(&other.members))
    }

    /// `x N`, the image of `N` under multiplication by `x`.
    pub fn scale_members(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.module.size, self.members.iter().map(|m| self.module.act(x, m)))
    }

    pub fn scale(&self, x: usize) -> Submodule {
        Submodule::from_members(&self.module, self.scale_members(x))
    }

    /// `I N`, generated by `g n` for generators `g` of `I`.
    pub fn scale_ideal(&self, ideal: &Ideal) -> Submodule {
        let mut members = BitSet::from_indices(self.module.size, [0]);
        for &g in &ideal.generators {
            members = sum_sets(&self.module, &members, &self.scale_members(g));
        }
        Submodule::from_members(&self.module, members)
    }

    /// `(N :_M x) = { m : x m in N }`.
    pub fn colon_into_members(&self, x: usize) -> BitSet {
        BitSet::from_indices(self.module.size, self.module.elements().filter(|&m| self.contains(self.module.act(x, m))))
    }

    pub fn colon_into(&self, x: usize) -> Submodule {
        Submodule::from_members(&self.module, self.colon_into_members(x))
    }

    /// `(N :_M I)`: elements sent into `N` by every generator of `I`.
    pub fn colon_into_ideal(&self, ideal: &Ideal) -> Submodule {
        let mut members = BitSet::full(self.module.size);
        for &g in &ideal.generators {
            members.intersect_with(&self.colon_into_members(g));
        }
        Submodule::from_members(&self.module, members)
    }

    /// `(self :_R other) = { r : r other in self }`.
    pub fn colon_ideal(&self, other: &Submodule) -> Ideal {
        let ring = &self.module.ring;
        let members = BitSet::from_indices(
            ring.order(),
            ring.elements().filter(|&r| other.members.iter().all(|m| self.contains(self.module.act(r, m)))),
        );
        ring.ideal_from_members(members).expect("colon of submodules is an ideal")
    }

    pub fn annihilator(&self) -> Ideal {
        Submodule::zero(&self.module).colon_ideal(self)
    }

    /// `Ann_R(N) ∩ S != ∅`.
    pub fn killed_by(&self, s: &MulClosedSet) -> bool {
        self.annihilator().meets(s)
    }

    /// `M^k`-image `N^k` inside `module` (which must be `self.module^k`).
    pub fn free_tensor(&self, power: &Arc<FiniteModule>, k: usize) -> Submodule {
        let base = self.module.size;
        assert_eq!(power.size, base.pow(k as u32));
        let mut members = BitSet::new(power.size);
        let elems: Vec<usize> = self.members.iter().collect();
        let mut idx = vec![0usize; k];
        loop {
            members.insert(idx.iter().fold(0, |acc, &i| acc * base + elems[i]));
            let mut pos = k;
            loop {
                if pos == 0 {
                    return Submodule::from_members(power, members);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Re-homes the member set onto an equal module value.
    pub fn rehome(&self, module: &Arc<FiniteModule>) -> Submodule {
        assert_eq!(module.size, self.module.size);
        Submodule { module: module.clone(), members: self.members.clone(), generators: self.generators.clone() }
    }
}

fn canonical_generators(module: &Arc<FiniteModule>, members: &BitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = BitSet::from_indices(module.size, [0]);
    for x in members.iter() {
        if !span.contains(x) {
            gens.push(x);
            let cyc = BitSet::from_indices(module.size, module.ring.elements().map(|r| module.act(r, x)));
            span = sum_sets(module, &span, &cyc);
        }
    }
    gens
}

/// An `R`-linear map given by its element table.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: Arc<FiniteModule>,
    pub target: Arc<FiniteModule>,
    table: Vec<usize>,
    injective: bool,
}

impl ModuleMap {
    pub fn new(source: &Arc<FiniteModule>, target: &Arc<FiniteModule>, table: Vec<usize>) -> Result<ModuleMap> {
        if *source.ring != *target.ring {
            return Err(Error::InvalidMap("source and target over different rings".into()));
        }
        if table.len() != source.size || table.iter().any(|&y| y >= target.size) {
            return Err(Error::InvalidMap("table has the wrong shape".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if table[source.add(x, y)] != target.add(table[x], table[y]) {
                    return Err(Error::InvalidMap(format!("not additive at ({x},{y})")));
                }
            }
            for r in source.ring.elements() {
                if table[source.act(r, x)] != target.act(r, table[x]) {
                    return Err(Error::InvalidMap(format!("not R-linear at ({r},{x})")));
                }
            }
        }
        let injective = (1..source.size).all(|x| table[x] != 0);
        Ok(ModuleMap { source: source.clone(), target: target.clone(), table, injective })
    }

    /// First-summand inclusion `M -> M + M'`.
    pub fn inclusion_first(source: &Arc<FiniteModule>, sum: &Arc<FiniteModule>) -> Result<ModuleMap> {
        let k = sum.size / source.size;
        ModuleMap::new(source, sum, source.elements().map(|x| x * k).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn image(&self, n: &Submodule) -> Submodule {
        let members = BitSet::from_indices(self.target.size, n.members.iter().map(|x| self.table[x]));
        Submodule::from_members(&self.target, members)
    }

    pub fn preimage(&self, n: &Submodule) -> Submodule {
        let members =
            BitSet::from_indices(self.source.size, self.source.elements().filter(|&x| n.contains(self.table[x])));
        Submodule::from_members(&self.source, members)
    }

    pub fn image_of_source(&self) -> Submodule {
        self.image(&Submodule::whole(&self.source))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{integer_base_reduce, make_product, make_zn, IntegerBaseDescriptor};

    fn zmod(n: usize, orders: &[usize]) -> Arc<FiniteModule> {
        Arc::new(FiniteModule::cyclic_natural(&make_zn(n).unwrap(), orders).unwrap())
    }

    #[test]
    fn generate_examples() {
        let m = zmod(4, &[4]);
        assert_eq!(Submodule::generate(&m, &[2]).elements().collect::<Vec<_>>(), vec![0, 2]);
        assert!(Submodule::generate(&m, &[]).is_zero());
        let v = zmod(2, &[2, 2]);
        let d = Submodule::generate(&v, &[v.index_of(&[1, 1]).unwrap()]);
        assert_eq!(d.elements().collect::<Vec<_>>(), vec![0, 3]);
    }

    #[test]
    fn colon_examples() {
        let m = zmod(4, &[4]);
        let two = Submodule::generate(&m, &[2]);
        assert!(two.colon_into(2).is_whole());
        assert_eq!(two.colon_into(1), two);
        let z12 = zmod(12, &[12]);
        let zero = Submodule::zero(&z12);
        assert_eq!(zero.colon_into(4), Submodule::generate(&z12, &[3]));
        let z4 = m.ring();
        assert_eq!(two.annihilator(), z4.principal(2));
        assert_eq!(two.colon_ideal(&Submodule::whole(&m)), z4.principal(2));
        assert_eq!(Submodule::whole(&m).annihilator(), z4.zero_ideal());
    }

    #[test]
    fn constructions() {
        let m = zmod(4, &[4]);
        let whole = Submodule::whole(&m);
        assert_eq!(whole.scale(2).size(), 2);
        let two = Submodule::generate(&m, &[2]);
        assert_eq!(two.sum(&two), two);
        let (q, proj) = m.quotient(&two);
        assert_eq!(q.size(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let sq = m.free_tensor(2).unwrap();
        assert_eq!(sq.size(), 16);
        let sq = Arc::new(sq);
        assert_eq!(two.free_tensor(&sq, 2).size(), 4);
    }

    #[test]
    fn maps_and_preimages() {
        let red = integer_base_reduce(&IntegerBaseDescriptor::new(36, vec![2, 3])).unwrap();
        let z4 = Arc::new(FiniteModule::cyclic_natural(&red.ring, &[4]).unwrap());
        let z9 = Arc::new(FiniteModule::cyclic_natural(&red.ring, &[9]).unwrap());
        let sum = Arc::new(FiniteModule::direct_sum(&z4, &z9).unwrap());
        let f = ModuleMap::inclusion_first(&z4, &sum).unwrap();
        assert!(f.is_injective());
        let two = Submodule::generate(&z4, &[2]);
        let img = f.image(&two);
        assert_eq!(img, Submodule::generate(&sum, &[sum.index_of(&[2, 0]).unwrap()]));
        assert!(f.preimage(&Submodule::zero(&sum)).is_zero());
        let right = Submodule::generate(&sum, &[sum.index_of(&[0, 1]).unwrap()]);
        assert!(f.preimage(&right).is_zero());
        let bad = ModuleMap::new(&z4, &sum, vec![0, 1, 2, 3]);
        assert!(matches!(bad, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn explicit_rows_match_natural() {
        let r = make_zn(6).unwrap();
        let nat = FiniteModule::cyclic_natural(&r, &[2, 3]).unwrap();
        let rows = vec![vec![nat.index_of(&[1, 0]).unwrap(), nat.index_of(&[0, 1]).unwrap()]];
        let exp = FiniteModule::from_generator_rows(&r, &[2, 3], &rows).unwrap();
        assert!(nat == exp);
        // 1 acting as 0 is not unital
        let zero_rows = vec![vec![0, 0]];
        assert!(FiniteModule::from_generator_rows(&r, &[2, 3], &zero_rows).is_err());
    }

    #[test]
    fn product_module() {
        let r = make_product(&[make_zn(9).unwrap(), make_zn(4).unwrap()]).unwrap();
        let RingKind::Product(fs) = r.kind() else { unreachable!() };
        let m1 = Arc::new(FiniteModule::cyclic_natural(&fs[0], &[9]).unwrap());
        let m2 = Arc::new(FiniteModule::cyclic_natural(&fs[1], &[4]).unwrap());
        let m = FiniteModule::product(&r, &[m1, m2]).unwrap();
        let a = r.index_of(&[3, 1]).unwrap();
        let x = m.index_of(&[1, 3]).unwrap();
        assert_eq!(m.coords(m.act(a, x)).unwrap(), vec![3, 3]);
        assert!(FiniteModule::cyclic_natural(&r, &[9]).is_err());
    }
}
