//! WebAssembly entry points for the browser demo. Every export takes a
//! cyclic module over `Z_n` described by plain strings and returns JSON.
//! The `*_json` functions are the native, testable bodies.

use std::sync::Arc;

use absorb_core::{
    localize_module, make_zn, mcs_closure, saturate, CheckReport, Checker, FiniteModule, Lattice, MulClosedSet,
    Predicate, DEFAULT_LATTICE_CAP,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest module the page will build.
pub const DEMO_MAX_ORDER: usize = 256;

type Out = Result<String, String>;

struct Setup {
    module: Arc<FiniteModule>,
    s: MulClosedSet,
    lattice: Lattice,
}

fn numbers(field: &str, text: &str) -> Result<Vec<usize>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("{field}: `{t}` is not a non-negative integer")))
        .collect()
}

fn setup(n: usize, orders: &str, seeds: &str) -> Result<Setup, String> {
    let orders = numbers("orders", orders)?;
    if orders.is_empty() {
        return Err("orders: give at least one cyclic order".into());
    }
    let size = orders.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    if size > DEMO_MAX_ORDER {
        return Err(format!("module has {size} elements, the demo allows {DEMO_MAX_ORDER}"));
    }
    let ring = make_zn(n).map_err(|e| e.to_string())?;
    let module = Arc::new(FiniteModule::cyclic_natural(&ring, &orders).map_err(|e| e.to_string())?);
    let seeds: Vec<usize> = numbers("seeds", seeds)?.into_iter().map(|x| x % n).collect();
    let s = mcs_closure(&ring, &seeds).map_err(|e| e.to_string())?;
    let lattice = Lattice::new(&module, DEFAULT_LATTICE_CAP).map_err(|e| e.to_string())?;
    Ok(Setup { module, s, lattice })
}

fn predicate(name: &str) -> Result<Predicate, String> {
    name.parse()
}

fn report_json(m: &FiniteModule, r: &CheckReport) -> Value {
    json!({
        "predicate": r.predicate.name(),
        "verdict": r.verdict.to_string(),
        "holds": r.holds(),
        "witness": r.witness,
        "counterexample": r.counterexample.as_ref().map(|v| v.describe(m)),
        "violating_s": r.violating_s,
        "reason": r.reason,
    })
}

/// Lattice nodes with the verdict of `predicate`, plus Hasse edges
/// `[lower, upper]` between lattice positions.
pub fn lattice_json(n: usize, orders: &str, seeds: &str, predicate_name: &str) -> Out {
    let st = setup(n, orders, seeds)?;
    let p = predicate(predicate_name)?;
    let checker = Checker::with_defaults(&st.module);
    let mut nodes = Vec::with_capacity(st.lattice.len());
    let mut edges = Vec::new();
    for (i, sub) in st.lattice.submodules().iter().enumerate() {
        let r = checker.check(p, sub, &st.s).map_err(|e| e.to_string())?;
        nodes.push(json!({
            "id": i,
            "label": sub.show_generators(),
            "size": sub.size(),
            "holds": r.holds(),
            "verdict": r.verdict.to_string(),
        }));
        edges.extend(st.lattice.upper_covers(i).iter().map(|&j| json!([i, j])));
    }
    let holding = nodes.iter().filter(|v| v["holds"] == true).count();
    Ok(json!({
        "module": st.module.describe(),
        "s": st.s.elements(),
        "predicate": p.name(),
        "holding": holding,
        "nodes": nodes,
        "edges": edges,
    })
    .to_string())
}

/// Every predicate on the submodule at lattice position `node`.
pub fn detail_json(n: usize, orders: &str, seeds: &str, node: usize) -> Out {
    let st = setup(n, orders, seeds)?;
    if node >= st.lattice.len() {
        return Err(format!("no submodule at position {node}"));
    }
    let sub = st.lattice.get(node);
    let checker = Checker::with_defaults(&st.module);
    let reports = Predicate::ALL
        .iter()
        .map(|&p| checker.check(p, sub, &st.s).map(|r| report_json(&st.module, &r)))
        .collect::<absorb_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let elements: Vec<String> = sub.elements().map(|x| st.module.show(x)).collect();
    Ok(json!({
        "id": node,
        "label": sub.show_generators(),
        "elements": elements,
        "annihilator": sub.annihilator().generators,
        "reports": reports,
    })
    .to_string())
}

/// Saturation of `S`, the localized module, and the lattice positions whose
/// submodule is killed by localization.
pub fn localize_json(n: usize, orders: &str, seeds: &str) -> Out {
    let st = setup(n, orders, seeds)?;
    let saturation = saturate(&st.s).map_err(|e| e.to_string())?;
    let local = localize_module(&st.module, &st.s).map_err(|e| e.to_string())?;
    let kernel: Vec<String> =
        st.module.elements().filter(|&x| local.canonical_map[x] == 0).map(|x| st.module.show(x)).collect();
    let vanishing: Vec<usize> = (0..st.lattice.len())
        .filter(|&i| local.localize_submodule(st.lattice.get(i)).is_zero())
        .collect();
    Ok(json!({
        "s": st.s.elements(),
        "saturation": saturation.elements(),
        "local_ring_order": local.carrier.ring().order(),
        "local_module_order": local.carrier.size(),
        "kernel": kernel,
        "vanishing": vanishing,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn lattice(n: usize, orders: &str, seeds: &str, predicate: &str) -> Result<String, JsError> {
    lattice_json(n, orders, seeds, predicate).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn detail(n: usize, orders: &str, seeds: &str, node: usize) -> Result<String, JsError> {
    detail_json(n, orders, seeds, node).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn localize(n: usize, orders: &str, seeds: &str) -> Result<String, JsError> {
    localize_json(n, orders, seeds).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn predicates() -> String {
    json!(Predicate::ALL.iter().map(|p| p.name()).collect::<Vec<_>>()).to_string()
}
