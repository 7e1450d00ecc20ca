//! Finite commutative rings and modules, with decision procedures for
//! prime, second and 2-absorbing style submodule classes relative to a
//! multiplicatively closed set.

pub mod bits;
pub mod checkers;
pub mod error;
pub mod lattice;
pub mod mcs;
pub mod module;
pub mod ring;
pub mod theorems;

pub use bits::BitSet;
pub use error::{Error, Result};
pub use lattice::{enumerate_submodules, Lattice, DEFAULT_LATTICE_CAP};
pub use mcs::{
    find_isomorphism, localization_fraction_oracle, localize_module, localize_ring, mcs_closure, saturate,
    LocalizedModule, MulClosedSet,
};
pub use module::{FiniteModule, ModuleMap, Submodule};
pub use ring::{
    ideal_enumerate, ideal_radical, integer_base_reduce, make_idealization, make_product, make_zn, FiniteRing, Ideal,
    IntegerBaseDescriptor, IntegerBaseReduction, Ring, RingKind, MAX_ORDER,
};
pub use checkers::{
    is_s_2_absorbing_ideal, is_s_2_absorbing_second_ideal, Algorithm, CheckOptions, CheckReport, Checker, Predicate,
    Verdict, Violation,
};
