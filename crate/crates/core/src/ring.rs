//! Finite commutative rings with identity, stored as explicit tables.
//!
//! Every ring indexes its elements `0..order` with `0` the additive identity
//! and `1` the multiplicative identity. Rings built from cyclic pieces also
//! carry a mixed-radix coordinate system (leftmost coordinate most
//! significant), so `Z_9 x Z_4` stores `(a, b)` at index `4a + b`.

use std::fmt;
use std::sync::Arc;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::mcs::MulClosedSet;
use crate::module::FiniteModule;

/// Largest ring or module carrier the tables support.
pub const MAX_ORDER: usize = 4096;

pub type Ring = Arc<FiniteRing>;

#[derive(Clone)]
pub enum RingKind {
    Zn(usize),
    Product(Vec<Ring>),
    Idealization { base: Ring, module: Arc<FiniteModule> },
    IntegerBase(IntegerBaseDescriptor),
    /// `e R` for an idempotent `e` of `parent`; `elements[i]` is the parent index.
    Localization { parent: Ring, idempotent: usize, elements: Vec<usize> },
}

impl fmt::Debug for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Zn(n) => write!(f, "Z_{n}"),
            RingKind::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|r| format!("{:?}", r.kind)).collect();
                write!(f, "{}", parts.join(" x "))
            }
            RingKind::Idealization { base, module } => {
                write!(f, "{:?}(+){}", base.kind, module.describe())
            }
            RingKind::IntegerBase(d) => write!(f, "Z mod {} (S avoids {:?})", d.exponent, d.excluded_primes),
            RingKind::Localization { parent, idempotent, .. } => {
                write!(f, "{idempotent}.{:?}", parent.kind)
            }
        }
    }
}

/// The integers acting on a module of exponent `exponent`, together with the
/// multiplicatively closed set `Z \ (p_1 Z u ... u p_k Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerBaseDescriptor {
    pub exponent: usize,
    pub excluded_primes: Vec<u64>,
}

impl IntegerBaseDescriptor {
    pub fn new(exponent: usize, mut excluded_primes: Vec<u64>) -> Self {
        excluded_primes.sort_unstable();
        excluded_primes.dedup();
        Self { exponent, excluded_primes }
    }

    /// Does `S` meet the ideal `m Z`?
    pub fn meets_multiples_of(&self, m: i64) -> bool {
        m != 0 && self.excluded_primes.iter().all(|&p| m.unsigned_abs() % p != 0)
    }

    /// Does some integer congruent to `r` modulo the exponent avoid every excluded prime?
    pub fn residue_in_image(&self, r: usize) -> bool {
        self.excluded_primes
            .iter()
            .filter(|&&p| self.exponent as u64 % p == 0)
            .all(|&p| r as u64 % p != 0)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

#[derive(Clone)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    radix: Option<Vec<usize>>,
    /// Plain mixed-radix position of the identity; it trades places with index 1.
    one_at: usize,
    kind: RingKind,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (order {})", self.kind, self.order)
    }
}

impl FiniteRing {
    /// Builds a ring from closures, then validates the axioms.
    pub fn from_fns(
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        radix: Option<Vec<usize>>,
        kind: RingKind,
    ) -> Result<FiniteRing> {
        if order < 2 {
            return Err(Error::InvalidRing(format!("order {order} leaves no room for 0 != 1")));
        }
        if order > MAX_ORDER {
            return Err(Error::CapExceeded { what: "ring order", cap: MAX_ORDER });
        }
        let mut at = vec![0u16; order * order];
        let mut mt = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                at[a * order + b] = add(a, b) as u16;
                mt[a * order + b] = mul(a, b) as u16;
            }
        }
        let mut neg = vec![0u16; order];
        for a in 0..order {
            let inv = (0..order).find(|&b| at[a * order + b] == 0);
            match inv {
                Some(b) => neg[a] = b as u16,
                None => return Err(Error::InvalidRing(format!("element {a} has no additive inverse"))),
            }
        }
        let one_at = match &kind {
            RingKind::Product(fs) => encode(&fs.iter().map(|r| r.order()).collect::<Vec<_>>(), &vec![1; fs.len()]),
            RingKind::Idealization { module, .. } => module.size(),
            _ => 1,
        };
        let ring = FiniteRing { order, add: at, mul: mt, neg, radix, one_at, kind };
        ring.check_axioms()?;
        Ok(ring)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn radix(&self) -> Option<&[usize]> {
        self.radix.as_deref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.order).any(|b| self.mul(a, b) == 1)
    }

    pub fn units(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.mul(a, a) == a).collect()
    }

    /// Integer multiple `k * a` computed by repeated addition.
    pub fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    fn relabel(&self, a: usize) -> usize {
        swap_one(self.one_at, a)
    }

    /// Factor indices of an element of a product ring.
    pub fn factor_indices(&self, a: usize) -> Option<Vec<usize>> {
        let RingKind::Product(fs) = &self.kind else { return None };
        Some(decode(&fs.iter().map(|r| r.order()).collect::<Vec<_>>(), self.relabel(a)))
    }

    /// Inverse of [`FiniteRing::factor_indices`].
    pub fn from_factor_indices(&self, parts: &[usize]) -> Option<usize> {
        let RingKind::Product(fs) = &self.kind else { return None };
        let sizes: Vec<usize> = fs.iter().map(|r| r.order()).collect();
        (parts.len() == sizes.len() && parts.iter().zip(&sizes).all(|(x, d)| x < d))
            .then(|| self.relabel(encode(&sizes, parts)))
    }

    /// `(a, m)` components of an element of an idealization.
    pub fn idealization_parts(&self, x: usize) -> Option<(usize, usize)> {
        let RingKind::Idealization { module, .. } = &self.kind else { return None };
        let y = self.relabel(x);
        Some((y / module.size(), y % module.size()))
    }

    pub fn from_idealization_parts(&self, a: usize, m: usize) -> Option<usize> {
        let RingKind::Idealization { base, module } = &self.kind else { return None };
        (a < base.order() && m < module.size()).then(|| self.relabel(a * module.size() + m))
    }

    /// Additive coordinates: one digit per cyclic factor of `radix()`.
    pub fn coords(&self, a: usize) -> Option<Vec<usize>> {
        match &self.kind {
            RingKind::Zn(_) | RingKind::IntegerBase(_) => Some(vec![a]),
            RingKind::Product(fs) => {
                let parts = self.factor_indices(a)?;
                fs.iter().zip(parts).map(|(r, x)| r.coords(x)).collect::<Option<Vec<_>>>().map(|v| v.concat())
            }
            RingKind::Idealization { base, module } => {
                let (b, m) = self.idealization_parts(a)?;
                Some([base.coords(b)?, module.coords(m)?].concat())
            }
            RingKind::Localization { .. } => None,
        }
    }

    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        let r = self.radix.as_ref()?;
        if r.len() != coords.len() || coords.iter().zip(r).any(|(c, d)| c >= d) {
            return None;
        }
        match &self.kind {
            RingKind::Zn(_) | RingKind::IntegerBase(_) => Some(coords[0]),
            RingKind::Product(fs) => {
                let mut parts = Vec::with_capacity(fs.len());
                let mut rest = coords;
                for f in fs {
                    let k = f.radix()?.len();
                    parts.push(f.index_of(&rest[..k])?);
                    rest = &rest[k..];
                }
                self.from_factor_indices(&parts)
            }
            RingKind::Idealization { base, module } => {
                let k = base.radix()?.len();
                self.from_idealization_parts(base.index_of(&coords[..k])?, module.index_of(&coords[k..])?)
            }
            RingKind::Localization { .. } => None,
        }
    }

    /// Full table scan for small rings, a deterministic stride sample of 10^4
    /// triples otherwise.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(Error::InvalidRing(msg));
        for a in 0..n {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return bad(format!("0 is not an additive identity at {a}"));
            }
            if self.mul(a, 1) != a || self.mul(1, a) != a {
                return bad(format!("1 is not a multiplicative identity at {a}"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return bad(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return bad(format!("multiplication not commutative at ({a},{b})"));
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return bad(format!("addition not associative at ({a},{b},{c})"));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return bad(format!("multiplication not associative at ({a},{b},{c})"));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return bad(format!("distributivity fails at ({a},{b},{c})"));
            }
            Ok(())
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            for (a, b, c) in stride_triples(n, 10_000) {
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// The principal ideal `aR`.
    pub fn principal(self: &Arc<Self>, a: usize) -> Ideal {
        let members = BitSet::from_indices(self.order, self.elements().map(|r| self.mul(a, r)));
        Ideal { ring: self.clone(), members, generators: vec![a] }
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal { ring: self.clone(), members: BitSet::from_indices(self.order, [0]), generators: vec![] }
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal { ring: self.clone(), members: BitSet::full(self.order), generators: vec![1] }
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(self: &Arc<Self>, gens: &[usize]) -> Ideal {
        let mut members = BitSet::from_indices(self.order, [0]);
        for &g in gens {
            let p = self.principal(g).members;
            members = sum_sets(self, &members, &p);
        }
        Ideal { ring: self.clone(), members, generators: gens.to_vec() }
    }

    pub fn ideal_from_members(self: &Arc<Self>, members: BitSet) -> Result<Ideal> {
        let ideal = Ideal { ring: self.clone(), generators: minimal_generators(self, &members), members };
        if ideal.ring.ideal_generated(&ideal.generators).members != ideal.members {
            return Err(Error::InvalidRing("member set is not an ideal".into()));
        }
        Ok(ideal)
    }
}

fn sum_sets(ring: &FiniteRing, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = BitSet::new(ring.order);
    for x in a.iter() {
        for y in b.iter() {
            out.insert(ring.add(x, y));
        }
    }
    out
}

fn minimal_generators(ring: &Arc<FiniteRing>, members: &BitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = BitSet::from_indices(ring.order, [0]);
    for x in members.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = sum_sets(ring, &span, &ring.principal(x).members);
        }
    }
    gens
}

/// Transposition of 1 and `p`.
fn swap_one(p: usize, a: usize) -> usize {
    if a == 1 {
        p
    } else if a == p {
        1
    } else {
        a
    }
}

pub(crate) fn decode(radix: &[usize], mut a: usize) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for (slot, &d) in out.iter_mut().zip(radix).rev() {
        *slot = a % d;
        a /= d;
    }
    out
}

pub(crate) fn encode(radix: &[usize], coords: &[usize]) -> usize {
    coords.iter().zip(radix).fold(0, |acc, (&c, &d)| acc * d + c)
}

/// Deterministic affine walk through `n^3` triples.
pub(crate) fn stride_triples(n: usize, count: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    let total = (n as u128).pow(3);
    // 2^61 - 1 is prime, hence coprime to any cube of a ring order we accept.
    let step: u128 = (1u128 << 61) - 1;
    (0..count as u128).map(move |i| {
        let t = (i * step + 12_345) % total;
        let t = t as usize;
        (t / (n * n), (t / n) % n, t % n)
    })
}

/// `Z_n` with the usual residue arithmetic.
pub fn make_zn(n: usize) -> Result<Ring> {
    if n < 2 {
        return Err(Error::InvalidRing(format!("Z_{n} has 0 = 1")));
    }
    FiniteRing::from_fns(n, |a, b| (a + b) % n, |a, b| (a * b) % n, Some(vec![n]), RingKind::Zn(n)).map(Arc::new)
}

/// Componentwise product; the leftmost factor is the most significant digit.
pub fn make_product(factors: &[Ring]) -> Result<Ring> {
    if factors.is_empty() {
        return Err(Error::InvalidRing("product of no factors".into()));
    }
    let sizes: Vec<usize> = factors.iter().map(|r| r.order()).collect();
    let order = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s).filter(|&p| p <= MAX_ORDER));
    let order = order.ok_or(Error::CapExceeded { what: "ring order", cap: MAX_ORDER })?;
    let radix = factors
        .iter()
        .map(|r| r.radix.clone())
        .collect::<Option<Vec<_>>>()
        .map(|rs| rs.concat());
    let p = encode(&sizes, &vec![1; factors.len()]);
    let combine = |op: &dyn Fn(&FiniteRing, usize, usize) -> usize, a: usize, b: usize| {
        let (xa, xb) = (decode(&sizes, swap_one(p, a)), decode(&sizes, swap_one(p, b)));
        let out: Vec<usize> = factors.iter().enumerate().map(|(i, r)| op(r, xa[i], xb[i])).collect();
        swap_one(p, encode(&sizes, &out))
    };
    FiniteRing::from_fns(
        order,
        |a, b| combine(&|r, x, y| r.add(x, y), a, b),
        |a, b| combine(&|r, x, y| r.mul(x, y), a, b),
        radix,
        RingKind::Product(factors.to_vec()),
    )
    .map(Arc::new)
}

/// The idealization `R(+)M` on pairs `(a, m)`, stored at `a * |M| + m`.
pub fn make_idealization(base: &Ring, module: &Arc<FiniteModule>) -> Result<Ring> {
    if **module.ring() != **base {
        return Err(Error::InvalidRing("module is not over the given base ring".into()));
    }
    let m = module.size();
    let order = base.order().checked_mul(m).filter(|&o| o <= MAX_ORDER);
    let order = order.ok_or(Error::CapExceeded { what: "ring order", cap: MAX_ORDER })?;
    let radix = match (base.radix(), module.radix()) {
        (Some(a), Some(b)) => Some([a, b].concat()),
        _ => None,
    };
    let sw = |x: usize| swap_one(m, x);
    FiniteRing::from_fns(
        order,
        |x, y| {
            let (x, y) = (sw(x), sw(y));
            sw(base.add(x / m, y / m) * m + module.add(x % m, y % m))
        },
        |x, y| {
            let (x, y) = (sw(x), sw(y));
            let (a, u) = (x / m, x % m);
            let (b, v) = (y / m, y % m);
            sw(base.mul(a, b) * m + module.add(module.act(a, v), module.act(b, u)))
        },
        radix,
        RingKind::Idealization { base: base.clone(), module: module.clone() },
    )
    .map(Arc::new)
}

/// An ideal of a finite ring.
#[derive(Clone)]
pub struct Ideal {
    pub ring: Ring,
    pub members: BitSet,
    pub generators: Vec<usize>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.members)
    }
}

impl Ideal {
    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn is_proper(&self) -> bool {
        !self.members.contains(1)
    }

    pub fn meets(&self, s: &MulClosedSet) -> bool {
        !self.members.intersection(s.members()).is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let gens = [self.generators.clone(), other.generators.clone()].concat();
        self.ring.ideal_generated(&gens)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        self.ring.ideal_from_members(self.members.intersection(&other.members)).expect("intersection of ideals")
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let gens: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|&a| other.generators.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.ring.mul(a, b))
            .collect();
        self.ring.ideal_generated(&gens)
    }

    /// `(I :_R x) = { r : r x in I }`.
    pub fn colon_element(&self, x: usize) -> Ideal {
        let members = BitSet::from_indices(
            self.ring.order(),
            self.ring.elements().filter(|&r| self.contains(self.ring.mul(r, x))),
        );
        self.ring.ideal_from_members(members).expect("colon of an ideal is an ideal")
    }

    /// `x I`.
    pub fn scaled(&self, x: usize) -> Ideal {
        let gens: Vec<usize> = self.generators.iter().map(|&g| self.ring.mul(x, g)).collect();
        self.ring.ideal_generated(&gens)
    }
}

/// `sqrt(I)`: elements some power of which lands in `I`, via power orbits.
pub fn ideal_radical(ideal: &Ideal) -> Ideal {
    let ring = &ideal.ring;
    let members = BitSet::from_indices(
        ring.order(),
        ring.elements().filter(|&a| {
            let mut seen = BitSet::new(ring.order());
            let mut p = a;
            while seen.insert(p) {
                if ideal.contains(p) {
                    return true;
                }
                p = ring.mul(p, a);
            }
            false
        }),
    );
    ring.ideal_from_members(members).expect("radical of an ideal is an ideal")
}

/// All ideals, sorted by size then members.
pub fn ideal_enumerate(ring: &Ring, cap: usize) -> Result<Vec<Ideal>> {
    let regular = Arc::new(FiniteModule::regular(ring));
    let subs = crate::lattice::enumerate_submodules(&regular, cap)?;
    Ok(subs
        .into_iter()
        .map(|n| Ideal { ring: ring.clone(), generators: n.generators().to_vec(), members: n.members().clone() })
        .collect())
}

/// Reduction of a `Z`-module problem of exponent `e` to `Z_e`.
#[derive(Clone, Debug)]
pub struct IntegerBaseReduction {
    pub descriptor: IntegerBaseDescriptor,
    pub ring: Ring,
    /// Residues of `S` modulo the exponent. Contains 0 exactly when `S`
    /// meets `eZ`, in which case every guard on a finite module fails.
    pub residues: MulClosedSet,
}

impl IntegerBaseReduction {
    pub fn meets_multiples_of(&self, m: i64) -> bool {
        self.descriptor.meets_multiples_of(m)
    }
}

pub fn integer_base_reduce(desc: &IntegerBaseDescriptor) -> Result<IntegerBaseReduction> {
    let e = desc.exponent;
    if e < 2 {
        return Err(Error::InvalidRing(format!("exponent {e} must be at least 2")));
    }
    if let Some(&p) = desc.excluded_primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidMcs(format!("{p} is not prime")));
    }
    let ring = FiniteRing::from_fns(
        e,
        |a, b| (a + b) % e,
        |a, b| (a * b) % e,
        Some(vec![e]),
        RingKind::IntegerBase(desc.clone()),
    )
    .map(Arc::new)?;
    let members = BitSet::from_indices(e, (0..e).filter(|&r| desc.residue_in_image(r)));
    let residues = MulClosedSet::image_set(&ring, members)?;
    Ok(IntegerBaseReduction { descriptor: desc.clone(), ring, residues })
}
