//! Shared fixtures for the benchmarks.

use lodi_core::model::Model;
use lodi_core::{IndObj, Kind, PosetSpec};

pub fn model(kind: Kind, labels: usize, window: (i64, i64)) -> Model {
    let spec = PosetSpec::numbered(kind, labels, window).expect("fixture spec is valid");
    Model::new(spec, (-2, 2))
}

/// Pairs `(x, y)` from the window with exactly one map `x -> y[1]`, the
/// input `cone_by_probing` expects.
pub fn probing_pairs(model: &Model, limit: usize) -> Vec<(IndObj, IndObj)> {
    let objs: Vec<IndObj> = model.enumerate_window().into_iter().filter(|o| o.shift == 0).collect();
    let mut out = Vec::new();
    for x in &objs {
        for y in &objs {
            if out.len() == limit {
                return out;
            }
            if !x.is_d_peripheral() && !y.is_d_peripheral() && model.hom(x, &y.shifted(1)) == 1 {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}
