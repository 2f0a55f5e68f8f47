//! Probing objects and components by the quasi-simples mapping into them.
//!
//! Everything here runs on the closed-form hom rules; the oracle is never
//! consulted, which keeps this layer an independent check on cones.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Model, ModelError};
use crate::objects::{ComponentId, DObj, IndClass, IndObj};
use crate::order::{Kind, LPoint, PosetSpec};

pub type ProbeSet = BTreeSet<IndObj>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("expected a one-dimensional connecting map, found dimension {0}")]
    Precondition(usize),
    #[error("peripheral objects of ZD components cannot be probed into a cone")]
    PeripheralEndpoint,
    #[error("probe bookkeeping leaves {0} candidate middle terms")]
    Ambiguous(usize),
}

fn quasi_simple(p: LPoint, shift: i64) -> IndObj {
    IndClass::A(p, p).at(shift)
}

/// Probes of `x` without any window check.
pub fn phi_o_raw(model: &Model, x: &IndObj) -> ProbeSet {
    let ends: Vec<LPoint> = x.cls.lower().into_iter().chain([x.cls.upper()]).collect();
    let mut out = ProbeSet::new();
    for e in ends {
        for k in -2..=2 {
            for shift in [x.shift, x.shift - 1] {
                let s = quasi_simple(e.offset(k), shift);
                if model.hom(&s, x) >= 1 {
                    out.insert(s);
                }
            }
        }
    }
    out
}

/// The quasi-simples mapping nonzero to `x`.
pub fn phi_o(model: &Model, x: &IndObj) -> Result<ProbeSet, ProbeError> {
    model.check(x)?;
    Ok(phi_o_raw(model, x))
}

/// The wings mapping nonzero to the component `c`.
pub fn phi_c(c: &ComponentId) -> BTreeSet<ComponentId> {
    let wing = |t, shift| ComponentId::Wing { t, shift };
    match *c {
        ComponentId::Wing { t, shift } => [wing(t, shift - 1), wing(t, shift)].into(),
        ComponentId::BandA { t, t2, shift } => [wing(t2, shift), wing(t, shift - 1)].into(),
        ComponentId::DWing { t, shift } => [wing(t, shift)].into(),
        ComponentId::BandB { t, t2, shift } => [wing(t, shift), wing(t2, shift)].into(),
    }
}

/// Every object whose probe set is exactly `probes`.
pub fn identify(model: &Model, probes: &ProbeSet) -> BTreeSet<IndObj> {
    let spec = model.spec();
    let mut points = BTreeSet::new();
    let mut shifts = BTreeSet::new();
    for s in probes {
        let p = s.cls.upper();
        points.insert(p);
        points.insert(p.successor());
        shifts.insert(s.shift);
        shifts.insert(s.shift + 1);
    }
    let points: Vec<LPoint> = points.into_iter().filter(|p| p.t < spec.fibers()).collect();
    let mut classes = Vec::new();
    for (a, &i) in points.iter().enumerate() {
        for &j in &points[a..] {
            classes.push(IndClass::A(i, j));
            if spec.kind() == Kind::TypeD && i < j {
                classes.push(IndClass::B(i, j));
            }
        }
        if spec.kind() == Kind::TypeD {
            classes.push(IndClass::A1(i));
            classes.push(IndClass::A2(i));
        }
    }
    let mut out = BTreeSet::new();
    for &shift in &shifts {
        for c in &classes {
            let x = c.at(shift);
            if phi_o_raw(model, &x) == *probes {
                out.insert(x);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum KBase {
    Q1,
    Q2,
    Pt(LPoint),
}

/// Grothendieck class in the basis of standard projectives.
pub type KClass = BTreeMap<String, i64>;

fn kclass_into(x: &IndObj, sign: i64, acc: &mut BTreeMap<KBase, i64>) {
    let s = if x.shift.rem_euclid(2) == 0 { sign } else { -sign };
    let terms: Vec<(KBase, i64)> = match x.cls {
        IndClass::A(i, j) => vec![(KBase::Pt(i), 1), (KBase::Pt(j.successor()), -1)],
        IndClass::A1(j) => vec![(KBase::Q1, 1), (KBase::Pt(j.successor()), -1)],
        IndClass::A2(j) => vec![(KBase::Q2, 1), (KBase::Pt(j.successor()), -1)],
        IndClass::B(i, j) => vec![
            (KBase::Q1, 1),
            (KBase::Q2, 1),
            (KBase::Pt(i.successor()), -1),
            (KBase::Pt(j.successor()), -1),
        ],
    };
    for (k, v) in terms {
        *acc.entry(k).or_default() += s * v;
    }
}

fn kclass(objs: &[IndObj]) -> BTreeMap<KBase, i64> {
    let mut acc = BTreeMap::new();
    for x in objs {
        kclass_into(x, 1, &mut acc);
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// Labeled Grothendieck class, for reports.
pub fn grothendieck_class(spec: &PosetSpec, d: &DObj) -> KClass {
    kclass(d.summands())
        .into_iter()
        .map(|(k, v)| {
            let key = match k {
                KBase::Q1 => "Q1".to_string(),
                KBase::Q2 => "Q2".to_string(),
                KBase::Pt(p) => format!("({},{})", spec.label(p.t).unwrap_or("?"), p.z),
            };
            (key, v)
        })
        .collect()
}

/// Splits `items` into blocks of size one or two, in every possible way.
fn pairings(items: &[IndObj]) -> Vec<Vec<Vec<IndObj>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for mut tail in pairings(rest) {
        tail.push(vec![first]);
        out.push(tail);
    }
    for k in 0..rest.len() {
        let mut others = rest.to_vec();
        let partner = others.remove(k);
        for mut tail in pairings(&others) {
            tail.push(vec![first, partner]);
            out.push(tail);
        }
    }
    out
}

/// Middle term `M` of the triangle `y -> M -> x -> y[1]` built on the
/// unique (up to scalar) nonzero map `x -> y[1]`.
pub fn cone_by_probing(model: &Model, x: &IndObj, y: &IndObj) -> Result<DObj, ProbeError> {
    let y1 = y.shifted(1);
    let d = model.hom_dim(x, &y1)?;
    if d != 1 {
        return Err(ProbeError::Precondition(d));
    }
    if x.is_d_peripheral() || y.is_d_peripheral() {
        return Err(ProbeError::PeripheralEndpoint);
    }
    let x_1 = x.shifted(-1);
    let mut survivors = Vec::new();
    // S -> x lifts to M unless it stays nonzero after the connecting map.
    for s in phi_o(model, x)? {
        if model.hom(&s, &y1) == 0 {
            survivors.push(s);
        }
    }
    // S -> y survives in M unless it factors through x[-1] -> y.
    for s in phi_o(model, y)? {
        if model.hom(&s, &x_1) == 0 {
            survivors.push(s);
        }
    }
    let target = kclass(&[*x, *y]);
    let mut results = BTreeSet::new();
    for blocks in pairings(&survivors) {
        let mut options: Vec<Vec<IndObj>> = Vec::new();
        for block in &blocks {
            let probes: ProbeSet = block.iter().copied().collect();
            if probes.len() != block.len() {
                options.clear();
                options.push(vec![]);
                break;
            }
            // Both ends are indecomposable, so every summand of M receives a
            // nonzero map from y and sends one to x, and neither is invertible.
            let fiber: Vec<IndObj> = identify(model, &probes)
                .into_iter()
                .filter(|m| m != x && m != y && model.hom(y, m) >= 1 && model.hom(m, x) >= 1)
                .collect();
            options.push(fiber);
        }
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut partial: Vec<Vec<IndObj>> = vec![vec![]];
        for opts in &options {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    opts.iter().map(move |o| {
                        let mut q = p.clone();
                        q.push(*o);
                        q
                    })
                })
                .collect();
        }
        for summands in partial {
            if kclass(&summands) == target {
                results.insert(DObj::new(summands));
            }
        }
    }
    match results.len() {
        1 => Ok(results.into_iter().next().expect("one result")),
        n => Err(ProbeError::Ambiguous(n)),
    }
}
