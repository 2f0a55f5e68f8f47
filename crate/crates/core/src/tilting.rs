//! The tilting set `S_t` generated by a quasi-simple and its order shape.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{self, Model, ModelError};
use crate::objects::{IndClass, IndObj, ObjectError};
use crate::oracle::OracleApi;
use crate::order::Kind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltError {
    #[error("source must be a quasi-simple object")]
    NotQuasiSimple,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("the hom order on the set is neither linear nor of D shape")]
    Unclassified,
    #[error("the set is not partial tilting")]
    NotPartialTilting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiltShape {
    AShape,
    DShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingSet {
    pub source: IndObj,
    pub elements: Vec<IndObj>,
    pub shape: TiltShape,
    pub peripheral_pair: Option<(IndObj, IndObj)>,
}

impl TiltingSet {
    pub fn index_of(&self, x: &IndObj) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }
}

pub fn st_index(t: &TiltingSet, x: &IndObj) -> Option<usize> {
    t.index_of(x)
}

/// The two ZD peripheral objects receiving maps from `s`, if any.
pub fn peripheral_targets(model: &Model, s: &IndObj) -> Result<Option<(IndObj, IndObj)>, TiltError> {
    let IndClass::A(i, j) = s.cls else {
        return Err(TiltError::NotQuasiSimple);
    };
    if i != j {
        return Err(TiltError::NotQuasiSimple);
    }
    if model.spec().kind() == Kind::TypeA {
        return Ok(None);
    }
    Ok(Some((IndClass::A1(j).at(s.shift), IndClass::A2(j).at(s.shift))))
}

/// Membership predicate of `S_t`, independent of any window.
pub fn in_st(model: &Model, s: &IndObj, pair: Option<&(IndObj, IndObj)>, x: &IndObj) -> bool {
    if model.hom(s, x) == 0 {
        return false;
    }
    match pair {
        None => true,
        Some((q1, q2)) => model.hom(x, q1) + model.hom(x, q2) >= 1,
    }
}

pub fn tilting_set(model: &Model, s: &IndObj) -> Result<TiltingSet, TiltError> {
    let pair = peripheral_targets(model, s)?;
    model.check(s)?;
    let ends: Vec<IndObj> = match &pair {
        None => vec![model::tau(s).shifted(1)],
        Some((q1, q2)) => vec![*q1, *q2],
    };
    for e in &ends {
        if !e.cls.in_window(model.spec()) {
            return Err(ModelError::Object(ObjectError::WindowExceeded).into());
        }
    }
    let classes = model::window_classes(model.spec());
    let members: Vec<IndObj> = [s.shift, s.shift + 1]
        .into_iter()
        .flat_map(|shift| classes.iter().map(move |c| c.at(shift)))
        .filter(|x| in_st(model, s, pair.as_ref(), x))
        .collect();
    let mut keyed: Vec<(usize, IndObj)> = members
        .iter()
        .map(|x| (members.iter().filter(|y| *y != x && model.hom(y, x) >= 1).count(), *x))
        .collect();
    keyed.sort();
    let elements: Vec<IndObj> = keyed.into_iter().map(|(_, x)| x).collect();
    let shape = classify(model, &elements)?;
    if !model.is_partial_tilting(&elements) {
        return Err(TiltError::NotPartialTilting);
    }
    Ok(TiltingSet { source: *s, elements, shape, peripheral_pair: pair })
}

fn classify(model: &Model, elements: &[IndObj]) -> Result<TiltShape, TiltError> {
    let n = elements.len();
    let mut failures = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if model.hom(&elements[a], &elements[b]) == 0 {
                failures.push((a, b));
            }
        }
    }
    match failures.as_slice() {
        [] => Ok(TiltShape::AShape),
        [(a, b)] if *a + 2 == n && *b + 1 == n && model.hom(&elements[*b], &elements[*a]) == 0 => {
            Ok(TiltShape::DShape)
        }
        _ => Err(TiltError::Unclassified),
    }
}

/// Elements (other than the minimum) lacking an AR predecessor inside
/// `S_t`; empty when the order is locally discrete as expected.
pub fn missing_predecessors(model: &Model, t: &TiltingSet) -> Vec<IndObj> {
    let pair = t.peripheral_pair;
    t.elements
        .iter()
        .skip(1)
        .filter(|y| {
            !model::ar_middle(&y.cls)
                .into_iter()
                .any(|c| in_st(model, &t.source, pair.as_ref(), &c.at(y.shift)))
        })
        .copied()
        .collect()
}

/// Closes `seeds` under shifts in the model's range, direct summands and
/// cones of one-dimensional hom spaces (degree zero or one), stopping once
/// every target is reached or after `rounds` passes.
pub fn cone_closure(
    model: &Model,
    oracle: &dyn OracleApi,
    seeds: &[IndObj],
    targets: &BTreeSet<IndObj>,
    rounds: usize,
) -> Result<BTreeSet<IndObj>, TiltError> {
    let (lo, hi) = model.shifts();
    let spread = |c: IndClass| (lo..=hi).map(move |z| IndObj::new(c, z));
    let mut have: BTreeSet<IndObj> = seeds
        .iter()
        .flat_map(|s| spread(s.cls))
        .filter(|x| x.cls.in_window(model.spec()))
        .collect();
    let mut done: BTreeSet<(IndClass, IndClass, i64)> = BTreeSet::new();
    for _ in 0..rounds {
        if targets.is_subset(&have) {
            break;
        }
        let classes: BTreeSet<IndClass> = have.iter().map(|x| x.cls).collect();
        let mut fresh = BTreeSet::new();
        for a in &classes {
            for b in &classes {
                for d in [0, 1] {
                    let (x, y) = (a.at(0), b.at(d));
                    if model.hom(&x, &y) != 1 || !done.insert((*a, *b, d)) {
                        continue;
                    }
                    for m in oracle.cone(&x, &y).map_err(ModelError::from)?.summands() {
                        fresh.extend(spread(m.cls).filter(|y| !have.contains(y)));
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        have.extend(fresh);
    }
    Ok(have)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{LPoint, PosetSpec};

    fn pt(t: usize, z: i64) -> LPoint {
        LPoint::new(t, z)
    }

    #[test]
    fn type_a_two_fibers() {
        let m = Model::new(PosetSpec::numbered(Kind::TypeA, 2, (-2, 3)).unwrap(), (-2, 2));
        let s = IndClass::A(pt(1, 0), pt(1, 0)).at(0);
        let t = tilting_set(&m, &s).unwrap();
        assert_eq!(t.shape, TiltShape::AShape);
        assert_eq!(t.elements[0], s);
        assert_eq!(*t.elements.last().unwrap(), IndClass::A(pt(1, 1), pt(1, 1)).at(1));
        assert_eq!(t.elements[1], IndClass::A(pt(1, -1), pt(1, 0)).at(0));
        // fiber 1 block, then fiber 0 block, then the shifted tail
        let blocks: Vec<(usize, i64)> = t.elements.iter().map(|x| (x.cls.lower().unwrap().t, x.shift)).collect();
        let first_zero = blocks.iter().position(|b| b.0 == 0).unwrap();
        let first_shift = blocks.iter().position(|b| b.1 == 1).unwrap();
        assert!(blocks[..first_zero].iter().all(|b| *b == (1, 0)));
        assert!(blocks[first_zero..first_shift].iter().all(|b| *b == (0, 0)));
        assert!(blocks[first_shift..].iter().all(|b| *b == (1, 1)));
        assert!(missing_predecessors(&m, &t).is_empty());
        assert_eq!(st_index(&t, &s), Some(0));
        assert_eq!(st_index(&t, &IndClass::A(pt(0, 0), pt(0, 0)).at(0)), None);
    }

    #[test]
    fn type_d_single_fiber() {
        let m = Model::new(PosetSpec::numbered(Kind::TypeD, 1, (-3, 4)).unwrap(), (-2, 2));
        let s = IndClass::A(pt(0, 0), pt(0, 0)).at(0);
        let t = tilting_set(&m, &s).unwrap();
        assert_eq!(t.shape, TiltShape::DShape);
        let n = t.elements.len();
        assert_eq!(t.elements[n - 2], IndClass::A1(pt(0, 0)).at(0));
        assert_eq!(t.elements[n - 1], IndClass::A2(pt(0, 0)).at(0));
        assert!(t.elements[..n - 2].iter().all(|x| matches!(x.cls, IndClass::A(_, j) | IndClass::B(_, j) if j.z >= 0)));
        assert!(missing_predecessors(&m, &t).is_empty());
    }

    #[test]
    fn rejects_non_quasi_simple() {
        let m = Model::new(PosetSpec::numbered(Kind::TypeA, 1, (-3, 4)).unwrap(), (-2, 2));
        let x = IndClass::A(pt(0, 0), pt(0, 1)).at(0);
        assert_eq!(tilting_set(&m, &x), Err(TiltError::NotQuasiSimple));
    }
}
