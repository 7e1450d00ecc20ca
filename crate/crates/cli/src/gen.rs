//! Seeded random instance documents.

use std::collections::BTreeMap;

use absorb_core::{make_zn, mcs_closure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doc::{Action, Elem, InstanceDoc, McsDesc, ModuleDesc, RingDesc};

/// A `Z_n` instance with one or two cyclic summands of total order at most
/// `max_order`, a set from up to two seeds and two named submodules.
pub fn generate(seed: u64, max_order: usize) -> InstanceDoc {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_order = max_order.max(2);
    let n = rng.gen_range(2..=max_order.min(36));
    let divisors: Vec<usize> = (2..=n).filter(|d| n % d == 0).collect();
    let mut orders = vec![divisors[rng.gen_range(0..divisors.len())]];
    let fits: Vec<usize> = divisors.iter().copied().filter(|d| orders[0] * d <= max_order).collect();
    if !fits.is_empty() && rng.gen_bool(0.5) {
        orders.push(fits[rng.gen_range(0..fits.len())]);
    }
    let ring = make_zn(n).expect("n >= 2");
    let mut seeds = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let x = rng.gen_range(1..n);
        if mcs_closure(&ring, &[seeds.clone(), vec![x]].concat()).is_ok() {
            seeds.push(x);
        }
    }
    let mut submodules = BTreeMap::new();
    for name in ["K", "N"] {
        let coords: Vec<usize> = orders.iter().map(|&d| rng.gen_range(0..d)).collect();
        submodules.insert(name.to_string(), vec![Elem::canonical(coords)]);
    }
    InstanceDoc {
        ring: RingDesc::Zn { n },
        module: ModuleDesc::Cyclic { orders, action: Action::Natural },
        mcs: McsDesc::Seeds(seeds.into_iter().map(Elem::Scalar).collect()),
        submodules,
    }
}
