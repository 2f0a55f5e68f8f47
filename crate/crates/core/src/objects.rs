//! Symbolic indecomposables, their shifts, formal direct sums and AR
//! component identifiers.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::order::{Kind, LPoint, PosetSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObjectError {
    #[error("A_{{i,j}} needs i <= j")]
    InvertedInterval,
    #[error("B_{{i,j}} needs i < j")]
    DegenerateB,
    #[error("{0} objects exist only over D-type orders")]
    NeedsTypeD(&'static str),
    #[error("t index {0} out of range")]
    BadFiber(usize),
    #[error("object lies outside the z window")]
    WindowExceeded,
    #[error("shift {0} outside the configured range")]
    ShiftOutOfRange(i64),
}

/// Isomorphism class of an indecomposable in the abelian heart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndClass {
    A(LPoint, LPoint),
    A1(LPoint),
    A2(LPoint),
    B(LPoint, LPoint),
}

impl IndClass {
    /// Endpoint-ordering constraints; does not look at the ambient spec.
    pub fn check_shape(&self) -> Result<(), ObjectError> {
        match *self {
            IndClass::A(i, j) if i > j => Err(ObjectError::InvertedInterval),
            IndClass::B(i, j) if i >= j => Err(ObjectError::DegenerateB),
            _ => Ok(()),
        }
    }

    pub fn is_d_only(&self) -> bool {
        !matches!(self, IndClass::A(..))
    }

    pub fn family(&self) -> &'static str {
        match self {
            IndClass::A(..) => "A",
            IndClass::A1(_) => "A1",
            IndClass::A2(_) => "A2",
            IndClass::B(..) => "B",
        }
    }

    /// The left endpoint, if the class has one.
    pub fn lower(&self) -> Option<LPoint> {
        match *self {
            IndClass::A(i, _) | IndClass::B(i, _) => Some(i),
            IndClass::A1(_) | IndClass::A2(_) => None,
        }
    }

    pub fn upper(&self) -> LPoint {
        match *self {
            IndClass::A(_, j) | IndClass::B(_, j) | IndClass::A1(j) | IndClass::A2(j) => j,
        }
    }

    /// Legal for `spec` (kind, fibers, endpoint order).
    pub fn check(&self, spec: &PosetSpec) -> Result<(), ObjectError> {
        self.check_shape()?;
        if self.is_d_only() && spec.kind() == Kind::TypeA {
            return Err(ObjectError::NeedsTypeD(self.family()));
        }
        for p in self.lower().into_iter().chain([self.upper()]) {
            if p.t >= spec.fibers() {
                return Err(ObjectError::BadFiber(p.t));
            }
        }
        Ok(())
    }

    /// Boundary policy: the left endpoint and the presentation point
    /// `upper + 1` must both lie inside the z window.
    pub fn in_window(&self, spec: &PosetSpec) -> bool {
        if self.check(spec).is_err() {
            return false;
        }
        let (lo, hi) = spec.z_window();
        let lower_ok = self.lower().is_none_or(|i| lo <= i.z && i.z <= hi);
        let j = self.upper();
        lower_ok && lo <= j.z && j.z < hi
    }

    /// Looser membership used for drawing components: endpoints in window.
    pub fn support_in_window(&self, spec: &PosetSpec) -> bool {
        if self.check(spec).is_err() {
            return false;
        }
        let (lo, hi) = spec.z_window();
        self.lower().into_iter().chain([self.upper()]).all(|p| lo <= p.z && p.z <= hi)
    }

    pub fn at(self, shift: i64) -> IndObj {
        IndObj { cls: self, shift }
    }

    pub fn component(&self, shift: i64) -> ComponentId {
        match *self {
            IndClass::A(i, j) if i.t == j.t => ComponentId::Wing { t: i.t, shift },
            IndClass::A(i, j) => ComponentId::BandA { t: i.t, t2: j.t, shift },
            IndClass::B(i, j) if i.t != j.t => ComponentId::BandB { t: i.t, t2: j.t, shift },
            IndClass::B(_, j) | IndClass::A1(j) | IndClass::A2(j) => ComponentId::DWing { t: j.t, shift },
        }
    }
}

/// An indecomposable object `cls[shift]` of the derived category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndObj {
    pub cls: IndClass,
    pub shift: i64,
}

impl IndObj {
    pub fn new(cls: IndClass, shift: i64) -> Self {
        IndObj { cls, shift }
    }

    pub fn shifted(self, by: i64) -> Self {
        IndObj { cls: self.cls, shift: self.shift + by }
    }

    pub fn component(&self) -> ComponentId {
        self.cls.component(self.shift)
    }

    pub fn is_quasi_simple(&self) -> bool {
        matches!(self.cls, IndClass::A(i, j) if i == j)
    }

    /// Peripheral objects of ZD-infinity components (`A1`, `A2`).
    pub fn is_d_peripheral(&self) -> bool {
        matches!(self.cls, IndClass::A1(_) | IndClass::A2(_))
    }
}

/// A finite direct sum of shifted indecomposables in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DObj {
    summands: Vec<IndObj>,
}

impl DObj {
    pub fn zero() -> Self {
        DObj::default()
    }

    pub fn new(mut summands: Vec<IndObj>) -> Self {
        summands.sort();
        DObj { summands }
    }

    pub fn single(x: IndObj) -> Self {
        DObj { summands: vec![x] }
    }

    pub fn from_classes(classes: impl IntoIterator<Item = IndClass>, shift: i64) -> Self {
        DObj::new(classes.into_iter().map(|c| c.at(shift)).collect())
    }

    pub fn summands(&self) -> &[IndObj] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shifted(&self, by: i64) -> DObj {
        DObj { summands: self.summands.iter().map(|x| x.shifted(by)).collect() }
    }

    pub fn sum(&self, other: &DObj) -> DObj {
        DObj::new(self.summands.iter().chain(&other.summands).copied().collect())
    }

    pub fn contains(&self, x: &IndObj) -> bool {
        self.summands.binary_search(x).is_ok()
    }
}

impl FromIterator<IndObj> for DObj {
    fn from_iter<I: IntoIterator<Item = IndObj>>(iter: I) -> Self {
        DObj::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    #[serde(rename = "ZA_inf")]
    ZAInf,
    #[serde(rename = "ZA_inf_inf")]
    ZAInfInf,
    #[serde(rename = "ZD_inf")]
    ZDInf,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::ZAInf => "ZA_inf",
            Shape::ZAInfInf => "ZA_inf_inf",
            Shape::ZDInf => "ZD_inf",
        })
    }
}

/// An Auslander-Reiten component, identified by fibers and shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentId {
    Wing { t: usize, shift: i64 },
    BandA { t: usize, t2: usize, shift: i64 },
    DWing { t: usize, shift: i64 },
    BandB { t: usize, t2: usize, shift: i64 },
}

impl ComponentId {
    pub fn shape(&self) -> Shape {
        match self {
            ComponentId::Wing { .. } => Shape::ZAInf,
            ComponentId::BandA { .. } | ComponentId::BandB { .. } => Shape::ZAInfInf,
            ComponentId::DWing { .. } => Shape::ZDInf,
        }
    }

    pub fn shift(&self) -> i64 {
        match *self {
            ComponentId::Wing { shift, .. }
            | ComponentId::BandA { shift, .. }
            | ComponentId::DWing { shift, .. }
            | ComponentId::BandB { shift, .. } => shift,
        }
    }

    pub fn shifted(&self, by: i64) -> ComponentId {
        let mut c = *self;
        match &mut c {
            ComponentId::Wing { shift, .. }
            | ComponentId::BandA { shift, .. }
            | ComponentId::DWing { shift, .. }
            | ComponentId::BandB { shift, .. } => *shift += by,
        }
        c
    }

    pub fn check(&self, spec: &PosetSpec) -> Result<(), ObjectError> {
        let (ts, d_only): (Vec<usize>, Option<&'static str>) = match *self {
            ComponentId::Wing { t, .. } => (vec![t], None),
            ComponentId::BandA { t, t2, .. } => (vec![t, t2], None),
            ComponentId::DWing { t, .. } => (vec![t], Some("DWing")),
            ComponentId::BandB { t, t2, .. } => (vec![t, t2], Some("BandB")),
        };
        if let Some(name) = d_only {
            if spec.kind() == Kind::TypeA {
                return Err(ObjectError::NeedsTypeD(name));
            }
        }
        for &t in &ts {
            if t >= spec.fibers() {
                return Err(ObjectError::BadFiber(t));
            }
        }
        if ts.len() == 2 && ts[0] >= ts[1] {
            return Err(ObjectError::InvertedInterval);
        }
        Ok(())
    }
}
