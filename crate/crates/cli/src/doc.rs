//! Instance documents: JSON descriptions of a ring, a module, a
//! multiplicatively closed set and named submodules.
//!
//! ```json
//! {
//!   "ring": { "kind": "integer_base", "exponent": 4, "excluded_primes": [2] },
//!   "module": { "kind": "cyclic", "orders": [4], "action": "natural" },
//!   "mcs": "residues",
//!   "submodules": { "K": [2], "N": [1] }
//! }
//! ```
//!
//! Ring and module elements are written as coordinates; a single
//! coordinate may be written as a bare number.

use std::collections::BTreeMap;
use std::sync::Arc;

use absorb_core::theorems::{product_instance, Instance, ModuleInstance};
use absorb_core::{
    integer_base_reduce, make_idealization, make_product, make_zn, mcs_closure, CheckOptions, FiniteModule,
    IntegerBaseDescriptor, MulClosedSet, Ring, RingKind, Submodule,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub ring: RingDesc,
    pub module: ModuleDesc,
    pub mcs: McsDesc,
    #[serde(default)]
    pub submodules: BTreeMap<String, Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDesc {
    Zn { n: usize },
    Product { factors: Vec<RingDesc> },
    Idealization { base: Box<RingDesc>, module: Box<ModuleDesc> },
    IntegerBase { exponent: usize, excluded_primes: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDesc {
    Cyclic { orders: Vec<usize>, action: Action },
    Regular,
    Product { factors: Vec<ModuleDesc> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    /// Integers acting by repeated addition.
    Natural,
    /// `rows[j][i]`: image of the `i`-th generator under the `j`-th
    /// coordinate unit of the ring, as a carrier index.
    Rows(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum McsDesc {
    /// Residues of the integers avoiding the excluded primes.
    Residues,
    Seeds(Vec<Elem>),
    Product(Vec<McsDesc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Scalar(usize),
    Coords(Vec<usize>),
}

impl Elem {
    fn coords(&self) -> Vec<usize> {
        match self {
            Elem::Scalar(x) => vec![*x],
            Elem::Coords(c) => c.clone(),
        }
    }

    /// Bare numbers for single coordinates.
    pub fn canonical(coords: Vec<usize>) -> Elem {
        match coords[..] {
            [x] => Elem::Scalar(x),
            _ => Elem::Coords(coords),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceDoc> {
    serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Canonical form: fixed field order, two-space indent, trailing newline.
pub fn emit_instance(doc: &InstanceDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

/// A document turned into objects.
pub struct Built {
    pub ring: Ring,
    pub module: Arc<FiniteModule>,
    pub mcs: MulClosedSet,
    pub submodules: Vec<(String, Submodule)>,
    /// Per-factor modules and sets when ring, module and set are all products.
    pub factors: Option<Vec<(Arc<FiniteModule>, MulClosedSet)>>,
}

impl Built {
    pub fn label(&self) -> String {
        format!("{:?} | {} | S={}", self.ring.kind(), self.module.describe(), show_set(&self.mcs))
    }

    /// The document as instances for the theorem checks.
    pub fn instances(&self, opts: CheckOptions) -> Result<Vec<Instance>> {
        let single = |m: &Arc<FiniteModule>, s: &MulClosedSet| {
            let regular = **m == FiniteModule::regular(m.ring());
            ModuleInstance::new(m.clone(), s.clone(), Arc::new(vec![s.clone()]), regular, opts)
        };
        let mut inst = match &self.factors {
            Some(fs) => product_instance(fs.iter().map(|(m, s)| single(m, s)).collect(), opts)?,
            None => Instance::from_module(single(&self.module, &self.mcs)),
        };
        inst.label = self.label();
        Ok(vec![inst])
    }
}

pub fn show_set(s: &MulClosedSet) -> String {
    absorb_core::theorems::family::show_set(s)
}

fn semantic(msg: impl Into<String>) -> CliError {
    CliError::Semantic(msg.into())
}

pub fn build(doc: &InstanceDoc, max_order: usize) -> Result<Built> {
    let ring = build_ring(&doc.ring, max_order)?;
    let module = Arc::new(build_module(&ring, &doc.module, max_order)?);
    let mcs = build_mcs(&ring, &doc.mcs)?;
    let mut submodules = Vec::new();
    for (name, gens) in &doc.submodules {
        let idx = gens
            .iter()
            .map(|g| {
                module
                    .index_of(&g.coords())
                    .ok_or_else(|| semantic(format!("submodule {name}: {:?} is not an element of the module", g.coords())))
            })
            .collect::<Result<Vec<_>>>()?;
        submodules.push((name.clone(), Submodule::generate(&module, &idx)));
    }
    let factors = match (&doc.ring, &doc.module, &doc.mcs) {
        (RingDesc::Product { .. }, ModuleDesc::Product { factors: mods }, _) => {
            let RingKind::Product(rings) = ring.kind() else { unreachable!("product descriptor builds a product") };
            let sets = split_mcs(&mcs, rings)?;
            let mods = rings
                .iter()
                .zip(mods)
                .map(|(r, d)| build_module(r, d, max_order).map(Arc::new))
                .collect::<Result<Vec<_>>>()?;
            sets.map(|sets| mods.into_iter().zip(sets).collect())
        }
        _ => None,
    };
    Ok(Built { ring, module, mcs, submodules, factors })
}

/// Factors of a product set, or `None` when the set is not a product.
fn split_mcs(s: &MulClosedSet, rings: &[Ring]) -> Result<Option<Vec<MulClosedSet>>> {
    let ring = s.ring();
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); rings.len()];
    for x in s.elements() {
        let f = ring.factor_indices(x).expect("product ring");
        for (k, &v) in f.iter().enumerate() {
            if !parts[k].contains(&v) {
                parts[k].push(v);
            }
        }
    }
    if parts.iter().map(Vec::len).product::<usize>() != s.len() {
        return Ok(None);
    }
    let sets = rings
        .iter()
        .zip(parts)
        .map(|(r, p)| MulClosedSet::image_set(r, absorb_core::BitSet::from_indices(r.order(), p)))
        .collect::<absorb_core::Result<Vec<_>>>()?;
    Ok(Some(sets))
}

fn build_ring(desc: &RingDesc, max_order: usize) -> Result<Ring> {
    let ring = match desc {
        RingDesc::Zn { n } => make_zn(*n)?,
        RingDesc::Product { factors } => {
            if factors.is_empty() {
                return Err(semantic("product ring needs at least one factor"));
            }
            let rs = factors.iter().map(|f| build_ring(f, max_order)).collect::<Result<Vec<_>>>()?;
            make_product(&rs)?
        }
        RingDesc::Idealization { base, module } => {
            let base = build_ring(base, max_order)?;
            let m = Arc::new(build_module(&base, module, max_order)?);
            make_idealization(&base, &m)?
        }
        RingDesc::IntegerBase { exponent, excluded_primes } => {
            integer_base_reduce(&IntegerBaseDescriptor::new(*exponent, excluded_primes.clone()))?.ring
        }
    };
    Ok(ring)
}

fn build_module(ring: &Ring, desc: &ModuleDesc, max_order: usize) -> Result<FiniteModule> {
    let m = match desc {
        ModuleDesc::Cyclic { orders, action: Action::Natural } => FiniteModule::cyclic_natural(ring, orders)?,
        ModuleDesc::Cyclic { orders, action: Action::Rows(rows) } => {
            FiniteModule::from_generator_rows(ring, orders, rows)?
        }
        ModuleDesc::Regular => FiniteModule::regular(ring),
        ModuleDesc::Product { factors } => {
            let RingKind::Product(rings) = ring.kind() else {
                return Err(semantic("product module needs a product ring"));
            };
            if rings.len() != factors.len() {
                return Err(semantic(format!("{} module factors for {} ring factors", factors.len(), rings.len())));
            }
            let ms = rings
                .iter()
                .zip(factors)
                .map(|(r, d)| build_module(r, d, max_order).map(Arc::new))
                .collect::<Result<Vec<_>>>()?;
            FiniteModule::product(ring, &ms)?
        }
    };
    if m.size() > max_order {
        return Err(absorb_core::Error::CapExceeded { what: "module order", cap: max_order }.into());
    }
    Ok(m)
}

fn build_mcs(ring: &Ring, desc: &McsDesc) -> Result<MulClosedSet> {
    match desc {
        McsDesc::Residues => match ring.kind() {
            RingKind::IntegerBase(d) => Ok(integer_base_reduce(d)?.residues),
            RingKind::Product(rings) => {
                let parts = rings.iter().map(|r| build_mcs(r, desc)).collect::<Result<Vec<_>>>()?;
                Ok(MulClosedSet::product(ring, &parts)?)
            }
            _ => Err(semantic("\"residues\" needs an integer base ring")),
        },
        McsDesc::Seeds(seeds) => {
            let idx = seeds
                .iter()
                .map(|e| {
                    ring.index_of(&e.coords())
                        .ok_or_else(|| semantic(format!("seed {:?} is not a ring element", e.coords())))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(mcs_closure(ring, &idx)?)
        }
        McsDesc::Product(parts) => {
            let RingKind::Product(rings) = ring.kind() else {
                return Err(semantic("product set needs a product ring"));
            };
            if rings.len() != parts.len() {
                return Err(semantic(format!("{} set factors for {} ring factors", parts.len(), rings.len())));
            }
            let sets = rings.iter().zip(parts).map(|(r, d)| build_mcs(r, d)).collect::<Result<Vec<_>>>()?;
            Ok(MulClosedSet::product(ring, &sets)?)
        }
    }
}
