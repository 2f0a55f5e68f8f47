//! Closed-form derived category: Hom dimensions, the AR translate, AR
//! triangles, components and sectional paths.
//!
//! Every rule here is re-checked against the oracle in the test suite.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::objects::{ComponentId, DObj, IndClass, IndObj, ObjectError};
use crate::oracle::{OracleApi, OracleError};
use crate::order::{Kind, LPoint, PosetSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Object(#[from] ObjectError),
    #[error("objects lie in different AR components")]
    DifferentComponents,
    #[error("map is zero")]
    ZeroMap,
    #[error("hom space has dimension {0}; cone is not canonical")]
    NotUnique(usize),
    #[error("canonical cone does not give a partial tilting set")]
    NotPartialTilting,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which Ext rule the model uses. `OffByOneExt` is a deliberately wrong
/// variant kept as a negative control for the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HomRules {
    #[default]
    Standard,
    OffByOneExt,
}

/// `dim Hom(a, b)` in the abelian heart.
pub fn hom_class(a: &IndClass, b: &IndClass) -> usize {
    use IndClass::*;
    match (*a, *b) {
        (A(a0, a1), A(c, d)) => (c <= a0 && a0 <= d && d <= a1) as usize,
        (A(a0, a1), A1(d) | A2(d)) => (a0 <= d && d <= a1) as usize,
        (A(a0, a1), B(c, d)) => {
            if a0 <= c && d <= a1 {
                2
            } else if (a0 <= c && c <= a1 && a1 < d) || (c < a0 && a0 <= d && d <= a1) {
                1
            } else {
                0
            }
        }
        (A1(b0), A1(d)) | (A2(b0), A2(d)) => (d <= b0) as usize,
        (A1(_), A2(_)) | (A2(_), A1(_)) => 0,
        (A1(_) | A2(_), A(..)) => 0,
        (A1(b0) | A2(b0), B(_, d)) => (d <= b0) as usize,
        (B(..), A(..)) => 0,
        (B(a0, _), A1(d) | A2(d)) => (d <= a0) as usize,
        (B(a0, a1), B(c, d)) => {
            if d <= a0 {
                2
            } else if c <= a0 && a0 < d && d <= a1 {
                1
            } else {
                0
            }
        }
    }
}

pub fn tau_class(c: &IndClass) -> IndClass {
    match *c {
        IndClass::A(i, j) => IndClass::A(i.successor(), j.successor()),
        IndClass::A1(j) => IndClass::A2(j.successor()),
        IndClass::A2(j) => IndClass::A1(j.successor()),
        IndClass::B(i, j) => IndClass::B(i.successor(), j.successor()),
    }
}

pub fn tau_inv_class(c: &IndClass) -> IndClass {
    match *c {
        IndClass::A(i, j) => IndClass::A(i.predecessor(), j.predecessor()),
        IndClass::A1(j) => IndClass::A2(j.predecessor()),
        IndClass::A2(j) => IndClass::A1(j.predecessor()),
        IndClass::B(i, j) => IndClass::B(i.predecessor(), j.predecessor()),
    }
}

/// `dim Ext^1(a, b)` via the AR formula `D Hom(b, τa)`.
pub fn ext_class(a: &IndClass, b: &IndClass, rules: HomRules) -> usize {
    match rules {
        HomRules::Standard => hom_class(b, &tau_class(a)),
        HomRules::OffByOneExt => hom_class(b, &tau_class(&tau_class(a))),
    }
}

/// `dim Hom(x, y)` in the derived category, with no window checks.
pub fn hom_raw(x: &IndObj, y: &IndObj, rules: HomRules) -> usize {
    match y.shift - x.shift {
        0 => hom_class(&x.cls, &y.cls),
        1 => ext_class(&x.cls, &y.cls, rules),
        _ => 0,
    }
}

pub fn tau(x: &IndObj) -> IndObj {
    IndObj::new(tau_class(&x.cls), x.shift)
}

pub fn tau_inv(x: &IndObj) -> IndObj {
    IndObj::new(tau_inv_class(&x.cls), x.shift)
}

pub fn serre(x: &IndObj) -> IndObj {
    tau(x).shifted(1)
}

/// Middle term of the AR sequence ending in `c`, in canonical order.
pub fn ar_middle(c: &IndClass) -> Vec<IndClass> {
    let mut out = match *c {
        IndClass::A(i, j) => {
            let mut v = vec![IndClass::A(i, j.successor())];
            if i < j {
                v.push(IndClass::A(i.successor(), j));
            }
            v
        }
        IndClass::A1(j) | IndClass::A2(j) => vec![IndClass::B(j, j.successor())],
        IndClass::B(i, j) if i.successor() == j => {
            vec![IndClass::A1(j), IndClass::A2(j), IndClass::B(i, j.successor())]
        }
        IndClass::B(i, j) => vec![IndClass::B(i.successor(), j), IndClass::B(i, j.successor())],
    };
    out.sort();
    out
}

/// Targets of the irreducible maps starting at `c`.
pub fn successors(c: &IndClass) -> Vec<IndClass> {
    let mut out = match *c {
        IndClass::A(i, j) => {
            let mut v = vec![IndClass::A(i.predecessor(), j)];
            if i < j {
                v.push(IndClass::A(i, j.predecessor()));
            }
            v
        }
        IndClass::A1(j) | IndClass::A2(j) => vec![IndClass::B(j.predecessor(), j)],
        IndClass::B(i, j) => {
            let mut v = vec![IndClass::B(i.predecessor(), j)];
            if i < j.predecessor() {
                v.push(IndClass::B(i, j.predecessor()));
            } else {
                v.push(IndClass::A1(i));
                v.push(IndClass::A2(i));
            }
            v
        }
    };
    out.sort();
    out
}

/// Strictly decreases by one along every irreducible map.
pub fn height(c: &IndClass) -> i64 {
    match *c {
        IndClass::A(i, j) | IndClass::B(i, j) => i.z + j.z,
        IndClass::A1(j) | IndClass::A2(j) => 2 * j.z,
    }
}

pub fn is_peripheral(x: &IndObj) -> bool {
    ar_middle(&x.cls).len() == 1
}

/// Mesh coordinates `(m, n)` of a wing object: `m` is the left endpoint,
/// `n` the quasi-length minus one.
pub fn wing_coords(c: &IndClass) -> Option<(i64, i64)> {
    match *c {
        IndClass::A(i, j) if i.t == j.t => Some((i.z, j.z - i.z)),
        _ => None,
    }
}

pub fn from_wing_coords(t: usize, m: i64, n: i64) -> IndClass {
    IndClass::A(LPoint::new(t, m), LPoint::new(t, m + n))
}

/// A distinguished triangle `x -> y -> z -> x[1]` with the dimensions of
/// the hom spaces its three maps live in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub x: DObj,
    pub y: DObj,
    pub z: DObj,
    pub homs: [usize; 3],
}

/// Every in-window class for `spec`, sorted.
pub fn window_classes(spec: &PosetSpec) -> Vec<IndClass> {
    let pts = spec.window_points();
    let mut out = Vec::new();
    for (a, &i) in pts.iter().enumerate() {
        for &j in &pts[a..] {
            out.push(IndClass::A(i, j));
            if spec.kind() == Kind::TypeD && i < j {
                out.push(IndClass::B(i, j));
            }
        }
        if spec.kind() == Kind::TypeD {
            out.push(IndClass::A1(i));
            out.push(IndClass::A2(i));
        }
    }
    out.retain(|c| c.in_window(spec));
    out.sort();
    out
}

/// The symbolic model over a fixed spec and shift range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    spec: PosetSpec,
    shifts: (i64, i64),
    rules: HomRules,
}

impl Model {
    pub fn new(spec: PosetSpec, shifts: (i64, i64)) -> Self {
        Model { spec, shifts, rules: HomRules::Standard }
    }

    pub fn with_rules(mut self, rules: HomRules) -> Self {
        self.rules = rules;
        self
    }

    pub fn spec(&self) -> &PosetSpec {
        &self.spec
    }

    pub fn shifts(&self) -> (i64, i64) {
        self.shifts
    }

    pub fn rules(&self) -> HomRules {
        self.rules
    }

    pub fn check(&self, x: &IndObj) -> Result<(), ModelError> {
        x.cls.check(&self.spec)?;
        if !x.cls.in_window(&self.spec) {
            return Err(ObjectError::WindowExceeded.into());
        }
        Ok(())
    }

    pub fn hom_dim(&self, x: &IndObj, y: &IndObj) -> Result<usize, ModelError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.hom(x, y))
    }

    /// Unchecked variant of [`Model::hom_dim`].
    pub fn hom(&self, x: &IndObj, y: &IndObj) -> usize {
        hom_raw(x, y, self.rules)
    }

    pub fn hom_sum(&self, x: &DObj, y: &DObj) -> usize {
        x.summands()
            .iter()
            .flat_map(|a| y.summands().iter().map(move |b| (a, b)))
            .map(|(a, b)| self.hom(a, b))
            .sum()
    }

    pub fn ar_triangle(&self, z: &IndObj) -> Result<Triangle, ModelError> {
        self.check(z)?;
        let x = tau(z);
        let middle = DObj::from_classes(ar_middle(&z.cls), z.shift);
        for m in middle.summands().iter().chain([&x]) {
            self.check(m)?;
        }
        let x = DObj::single(x);
        let z = DObj::single(*z);
        let homs = [
            self.hom_sum(&x, &middle),
            self.hom_sum(&middle, &z),
            self.hom_sum(&z, &x.shifted(1)),
        ];
        Ok(Triangle { x, y: middle, z, homs })
    }

    /// All objects of the window: shifts outermost, classes sorted.
    pub fn enumerate_window(&self) -> Vec<IndObj> {
        let classes = window_classes(&self.spec);
        (self.shifts.0..=self.shifts.1)
            .flat_map(|s| classes.iter().map(move |c| c.at(s)))
            .collect()
    }

    /// Quasi-simple objects of the window.
    pub fn quasi_simples(&self) -> Vec<IndObj> {
        self.enumerate_window().into_iter().filter(IndObj::is_quasi_simple).collect()
    }

    /// Every sectional path from `x` to `y`, each including both ends.
    pub fn sectional_paths(&self, x: &IndObj, y: &IndObj) -> Result<Vec<Vec<IndObj>>, ModelError> {
        if x.component() != y.component() {
            return Err(ModelError::DifferentComponents);
        }
        let target = height(&y.cls);
        let mut found = Vec::new();
        let mut path = vec![x.cls];
        walk(&mut path, &y.cls, target, &mut found);
        Ok(found
            .into_iter()
            .map(|p| p.into_iter().map(|c| c.at(x.shift)).collect())
            .collect())
    }

    /// The sectional path from `x` to `y`, if there is one.
    pub fn sectional_path(&self, x: &IndObj, y: &IndObj) -> Result<Option<Vec<IndObj>>, ModelError> {
        Ok(self.sectional_paths(x, y)?.into_iter().next())
    }

    pub fn is_partial_tilting(&self, set: &[IndObj]) -> bool {
        set.iter().all(|p| {
            set.iter().all(|q| (-4..=4).filter(|&z| z != 0).all(|z| self.hom(p, &q.shifted(z)) == 0))
        })
    }

    /// Cone of the (unique up to scalar) nonzero map `x -> y`, computed by
    /// the oracle.
    pub fn cone(&self, oracle: &dyn OracleApi, x: &IndObj, y: &IndObj) -> Result<DObj, ModelError> {
        match self.hom_dim(x, y)? {
            0 => Err(ModelError::ZeroMap),
            1 => Ok(oracle.cone(x, y)?),
            n => Err(ModelError::NotUnique(n)),
        }
    }

    /// `E` in the triangle `E -> x ⊗ Hom(x, y) -> y`.
    pub fn canonical_cone(&self, oracle: &dyn OracleApi, x: &IndObj, y: &IndObj) -> Result<DObj, ModelError> {
        if self.hom_dim(x, y)? == 0 {
            return Err(ModelError::ZeroMap);
        }
        let e = oracle.canonical_cone(x, y)?;
        let mut set: Vec<IndObj> = e.summands().to_vec();
        set.push(*x);
        set.dedup();
        if !self.is_partial_tilting(&set) {
            return Err(ModelError::NotPartialTilting);
        }
        Ok(e)
    }
}

fn walk(path: &mut Vec<IndClass>, target: &IndClass, target_height: i64, found: &mut Vec<Vec<IndClass>>) {
    let last = *path.last().expect("path is never empty");
    if height(&last) <= target_height {
        if last == *target {
            found.push(path.clone());
        }
        return;
    }
    for next in successors(&last) {
        if path.len() >= 2 && tau_class(&next) == path[path.len() - 2] {
            continue;
        }
        path.push(next);
        walk(path, target, target_height, found);
        path.pop();
    }
}

/// Component membership of every window class, used by export and sweeps.
pub fn component_of(x: &IndObj) -> ComponentId {
    x.component()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(z: i64) -> LPoint {
        LPoint::new(0, z)
    }

    fn a(i: i64, j: i64) -> IndClass {
        IndClass::A(p(i), p(j))
    }

    fn model(kind: Kind) -> Model {
        Model::new(PosetSpec::numbered(kind, 1, (-4, 6)).unwrap(), (-2, 2))
    }

    #[test]
    fn hom_examples() {
        let m = model(Kind::TypeA);
        assert_eq!(m.hom_dim(&a(0, 0).at(0), &a(0, 0).at(0)).unwrap(), 1);
        assert_eq!(m.hom_dim(&a(-1, 1).at(0), &a(0, 3).at(1)).unwrap(), 1);
        for i in -4..5 {
            for j in i..5 {
                assert_eq!(m.hom(&a(i, j).at(0), &a(i + 1, j + 1).at(1)), 1);
            }
        }
        let s = PosetSpec::numbered(Kind::TypeA, 2, (-4, 6)).unwrap();
        let m2 = Model::new(s, (-2, 2));
        let x = IndClass::A(LPoint::new(0, 0), LPoint::new(0, 2)).at(0);
        let y = IndClass::A(LPoint::new(1, 0), LPoint::new(1, 2)).at(0);
        assert_eq!(m2.hom_dim(&x, &y).unwrap(), 0);
        assert!(matches!(m.hom_dim(&a(0, 6).at(0), &a(0, 0).at(0)), Err(ModelError::Object(ObjectError::WindowExceeded))));
    }

    #[test]
    fn tau_and_serre() {
        assert_eq!(tau(&a(0, 0).at(0)), a(1, 1).at(0));
        assert_eq!(serre(&a(0, 0).at(0)), a(1, 1).at(1));
        assert_eq!(tau_class(&IndClass::A1(p(0))), IndClass::A2(p(1)));
        for c in [a(0, 3), IndClass::A1(p(2)), IndClass::B(p(-1), p(4))] {
            assert_eq!(tau_inv_class(&tau_class(&c)), c);
        }
    }

    #[test]
    fn ar_triangles() {
        let m = model(Kind::TypeD);
        let t = m.ar_triangle(&a(0, 1).at(0)).unwrap();
        assert_eq!(t.x, DObj::single(a(1, 2).at(0)));
        assert_eq!(t.y, DObj::from_classes([a(1, 1), a(0, 2)], 0));
        assert_eq!(t.homs, [2, 2, 1]);
        let t = m.ar_triangle(&a(0, 0).at(0)).unwrap();
        assert_eq!(t.y, DObj::single(a(0, 1).at(0)));
        let t = m.ar_triangle(&IndClass::A1(p(0)).at(0)).unwrap();
        assert_eq!(t.x, DObj::single(IndClass::A2(p(1)).at(0)));
        assert_eq!(t.y, DObj::single(IndClass::B(p(0), p(1)).at(0)));
    }

    #[test]
    fn successors_invert_middles() {
        let m = model(Kind::TypeD);
        for x in m.enumerate_window().iter().filter(|x| x.shift == 0) {
            for s in successors(&x.cls) {
                assert!(ar_middle(&s).contains(&x.cls), "{x:?} -> {s:?}");
                assert_eq!(height(&s), height(&x.cls) - 1);
            }
            for mid in ar_middle(&x.cls) {
                assert!(successors(&mid).contains(&x.cls));
            }
        }
    }

    #[test]
    fn peripheral_and_components() {
        assert!(is_peripheral(&a(0, 0).at(0)));
        assert!(a(0, 0).at(0).is_quasi_simple());
        assert!(is_peripheral(&IndClass::A1(p(0)).at(0)));
        assert!(!IndClass::A1(p(0)).at(0).is_quasi_simple());
        assert!(!is_peripheral(&a(0, 1).at(0)));
        assert_eq!(component_of(&a(3, 7).at(0)), ComponentId::Wing { t: 0, shift: 0 });
        let band = IndClass::A(LPoint::new(0, 1), LPoint::new(1, 4)).at(2);
        assert_eq!(component_of(&band), ComponentId::BandA { t: 0, t2: 1, shift: 2 });
        assert_eq!(component_of(&IndClass::B(p(0), p(2)).at(0)), ComponentId::DWing { t: 0, shift: 0 });
    }

    #[test]
    fn sectional_examples() {
        let m = model(Kind::TypeA);
        let path = m.sectional_path(&a(2, 2).at(0), &a(0, 2).at(0)).unwrap().unwrap();
        assert_eq!(path, vec![a(2, 2).at(0), a(1, 2).at(0), a(0, 2).at(0)]);
        assert_eq!(m.sectional_path(&a(0, 0).at(0), &a(1, 1).at(0)).unwrap(), None);
        assert_eq!(m.sectional_path(&a(0, 1).at(0), &a(0, 1).at(0)).unwrap(), Some(vec![a(0, 1).at(0)]));
        assert_eq!(m.sectional_path(&a(0, 1).at(0), &a(0, 1).at(1)), Err(ModelError::DifferentComponents));
    }

    #[test]
    fn partial_tilting_examples() {
        let m = model(Kind::TypeA);
        let x = a(0, 0).at(0);
        assert!(m.is_partial_tilting(&[x]));
        assert!(!m.is_partial_tilting(&[x, x.shifted(1)]));
        // A section of the wing: the diagonal ending at A_{0,0}.
        let section: Vec<IndObj> = (0..4).map(|k| a(-k, 0).at(0)).collect();
        assert!(m.is_partial_tilting(&section));
    }

    #[test]
    fn window_enumeration() {
        let s = PosetSpec::numbered(Kind::TypeA, 1, (0, 2)).unwrap();
        let m = Model::new(s.clone(), (0, 0));
        assert_eq!(m.enumerate_window(), vec![a(0, 0).at(0), a(0, 1).at(0), a(1, 1).at(0)]);
        assert!(Model::new(s, (1, 0)).enumerate_window().is_empty());
        let d = Model::new(PosetSpec::numbered(Kind::TypeD, 1, (0, 2)).unwrap(), (0, 0));
        assert_eq!(d.enumerate_window().len(), 3 + 4 + 1);
    }
}
