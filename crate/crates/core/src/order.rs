//! Locally discrete linear orders `L = T ×→ Z`, the two-source extension used
//! for type D, and the finite truncations handed to the linear-algebra oracle.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("t_labels must be nonempty")]
    EmptyLabels,
    #[error("duplicate t_label {0:?}")]
    DuplicateLabel(String),
    #[error("z_window lower bound {0} exceeds upper bound {1}")]
    InvalidWindow(i64, i64),
    #[error("unknown t_label {0:?}")]
    UnknownLabel(String),
    #[error("t index {0} out of range")]
    BadFiber(usize),
    #[error("support lower end lies above its upper end")]
    InvertedSupport,
    #[error("truncation [{lo}, {hi}] leaves the z window [{wlo}, {whi}]")]
    WindowExceeded { lo: i64, hi: i64, wlo: i64, whi: i64 },
    #[error("Hasse diagram has a cycle")]
    Cyclic,
    #[error("arrow ({0}, {1}) refers to a missing vertex")]
    BadArrow(usize, usize),
}

/// Which of the two families of orders we work over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "A")]
    TypeA,
    #[serde(rename = "D")]
    TypeD,
}

/// A point `(t, z)` of `L`; the derived ordering is lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LPoint {
    pub t: usize,
    pub z: i64,
}

impl LPoint {
    pub const fn new(t: usize, z: i64) -> Self {
        LPoint { t, z }
    }

    pub fn successor(self) -> Self {
        LPoint { t: self.t, z: self.z + 1 }
    }

    pub fn predecessor(self) -> Self {
        LPoint { t: self.t, z: self.z - 1 }
    }

    /// Moves `steps` successor steps (negative for predecessors) inside the fiber.
    pub fn offset(self, steps: i64) -> Self {
        LPoint { t: self.t, z: self.z + steps }
    }
}

impl fmt::Display for LPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.z)
    }
}

/// A point of `D_L`: two incomparable sources below a copy of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DPoint {
    Q1,
    Q2,
    In(LPoint),
}

pub fn leq(a: DPoint, b: DPoint) -> bool {
    match (a, b) {
        (DPoint::Q1, DPoint::Q1) | (DPoint::Q2, DPoint::Q2) => true,
        (DPoint::Q1, DPoint::Q2) | (DPoint::Q2, DPoint::Q1) => false,
        (DPoint::Q1 | DPoint::Q2, DPoint::In(_)) => true,
        (DPoint::In(_), DPoint::Q1 | DPoint::Q2) => false,
        (DPoint::In(p), DPoint::In(q)) => p <= q,
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawSpec {
    kind: Kind,
    t_labels: Vec<String>,
    z_window: (i64, i64),
}

/// The ambient order: kind, finite label chain `T`, and the integer window
/// applied to every `Z`-fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct PosetSpec {
    kind: Kind,
    t_labels: Vec<String>,
    z_window: (i64, i64),
}

impl TryFrom<RawSpec> for PosetSpec {
    type Error = OrderError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        PosetSpec::new(raw.kind, raw.t_labels, raw.z_window)
    }
}

impl PosetSpec {
    pub fn new<S: Into<String>>(
        kind: Kind,
        t_labels: impl IntoIterator<Item = S>,
        z_window: (i64, i64),
    ) -> Result<Self, OrderError> {
        let t_labels: Vec<String> = t_labels.into_iter().map(Into::into).collect();
        if t_labels.is_empty() {
            return Err(OrderError::EmptyLabels);
        }
        for (i, l) in t_labels.iter().enumerate() {
            if t_labels[..i].contains(l) {
                return Err(OrderError::DuplicateLabel(l.clone()));
            }
        }
        if z_window.0 > z_window.1 {
            return Err(OrderError::InvalidWindow(z_window.0, z_window.1));
        }
        Ok(PosetSpec { kind, t_labels, z_window })
    }

    /// Labels `t0, t1, ...`; handy for tests and defaults.
    pub fn numbered(kind: Kind, fibers: usize, z_window: (i64, i64)) -> Result<Self, OrderError> {
        PosetSpec::new(kind, (0..fibers).map(|i| format!("t{i}")), z_window)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn t_labels(&self) -> &[String] {
        &self.t_labels
    }

    pub fn fibers(&self) -> usize {
        self.t_labels.len()
    }

    pub fn z_window(&self) -> (i64, i64) {
        self.z_window
    }

    pub fn label(&self, t: usize) -> Option<&str> {
        self.t_labels.get(t).map(String::as_str)
    }

    pub fn label_index(&self, label: &str) -> Result<usize, OrderError> {
        self.t_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| OrderError::UnknownLabel(label.to_string()))
    }

    pub fn in_window(&self, p: LPoint) -> bool {
        p.t < self.fibers() && self.z_window.0 <= p.z && p.z <= self.z_window.1
    }

    /// Same spec with the window grown by `by` on both sides.
    pub fn widened(&self, by: i64) -> PosetSpec {
        PosetSpec {
            kind: self.kind,
            t_labels: self.t_labels.clone(),
            z_window: (self.z_window.0 - by, self.z_window.1 + by),
        }
    }

    pub fn with_window(&self, z_window: (i64, i64)) -> Result<PosetSpec, OrderError> {
        PosetSpec::new(self.kind, self.t_labels.clone(), z_window)
    }

    /// Every point of `L` inside the window, in increasing order.
    pub fn window_points(&self) -> Vec<LPoint> {
        let (lo, hi) = self.z_window;
        (0..self.fibers())
            .flat_map(|t| (lo..=hi).map(move |z| LPoint::new(t, z)))
            .collect()
    }

    pub fn first_point(&self) -> LPoint {
        LPoint::new(0, self.z_window.0)
    }

    pub fn last_point(&self) -> LPoint {
        LPoint::new(self.fibers() - 1, self.z_window.1)
    }
}

/// A finite poset given by its Hasse diagram, with the transitive closure
/// precomputed. `origin` maps vertices back to the ambient order when the
/// poset came from a truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    origin: Vec<Option<DPoint>>,
    arrows: Vec<(usize, usize)>,
    closure: Vec<bool>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    index: HashMap<DPoint, usize>,
}

impl FinPoset {
    pub fn from_hasse(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self, OrderError> {
        FinPoset::build(vec![None; n], arrows)
    }

    pub fn with_origin(origin: Vec<DPoint>, arrows: Vec<(usize, usize)>) -> Result<Self, OrderError> {
        FinPoset::build(origin.into_iter().map(Some).collect(), arrows)
    }

    fn build(origin: Vec<Option<DPoint>>, arrows: Vec<(usize, usize)>) -> Result<Self, OrderError> {
        let n = origin.len();
        let mut incoming = vec![Vec::new(); n];
        let mut outgoing = vec![Vec::new(); n];
        for (k, &(u, v)) in arrows.iter().enumerate() {
            if u >= n || v >= n {
                return Err(OrderError::BadArrow(u, v));
            }
            outgoing[u].push(k);
            incoming[v].push(k);
        }
        // Kahn's algorithm doubles as the cycle check.
        let mut indeg: Vec<usize> = incoming.iter().map(Vec::len).collect();
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &k in &outgoing[v] {
                let w = arrows[k].1;
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() != n {
            return Err(OrderError::Cyclic);
        }
        let mut closure = vec![false; n * n];
        for &v in order.iter().rev() {
            closure[v * n + v] = true;
            for &k in &outgoing[v] {
                let w = arrows[k].1;
                for x in 0..n {
                    if closure[w * n + x] {
                        closure[v * n + x] = true;
                    }
                }
            }
        }
        let index = origin
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.map(|p| (p, i)))
            .collect();
        Ok(FinPoset { origin, arrows, closure, incoming, outgoing, index })
    }

    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Indices of Hasse arrows ending at `v`.
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.closure[a * self.len() + b]
    }

    pub fn origin(&self, v: usize) -> Option<DPoint> {
        self.origin[v]
    }

    pub fn index_of(&self, p: DPoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// Arrow indices of a directed Hasse path from `from` to `to`, if any.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if !self.le(from, to) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = from;
        while cur != to {
            let k = *self.outgoing[cur].iter().find(|&&k| self.le(self.arrows[k].1, to))?;
            path.push(k);
            cur = self.arrows[k].1;
        }
        Some(path)
    }

    /// Every interval `[i, j]` of the order is a chain.
    pub fn is_forest(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.le(i, j) {
                    continue;
                }
                let interval: Vec<usize> = (0..n).filter(|&k| self.le(i, k) && self.le(k, j)).collect();
                for (a, &x) in interval.iter().enumerate() {
                    for &y in &interval[a + 1..] {
                        if !self.le(x, y) && !self.le(y, x) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Convex finite fragment of `L` (plus `Q1`, `Q2` for type D) covering
/// `[support_lo - margin, support_hi + margin]`. Fibers crossed by the
/// support are concatenated in lexicographic order.
pub fn truncate(
    spec: &PosetSpec,
    support_lo: LPoint,
    support_hi: LPoint,
    margin: u32,
) -> Result<FinPoset, OrderError> {
    if support_lo > support_hi {
        return Err(OrderError::InvertedSupport);
    }
    for p in [support_lo, support_hi] {
        if p.t >= spec.fibers() {
            return Err(OrderError::BadFiber(p.t));
        }
    }
    let (wlo, whi) = spec.z_window();
    let lo = support_lo.z - i64::from(margin);
    let hi = support_hi.z + i64::from(margin);
    if lo < wlo || hi > whi {
        return Err(OrderError::WindowExceeded { lo, hi, wlo, whi });
    }
    let mut origin = Vec::new();
    if spec.kind() == Kind::TypeD {
        origin.push(DPoint::Q1);
        origin.push(DPoint::Q2);
    }
    let chain_start = origin.len();
    for t in support_lo.t..=support_hi.t {
        let from = if t == support_lo.t { lo } else { wlo };
        let to = if t == support_hi.t { hi } else { whi };
        origin.extend((from..=to).map(|z| DPoint::In(LPoint::new(t, z))));
    }
    let mut arrows: Vec<(usize, usize)> = (chain_start..origin.len() - 1).map(|v| (v, v + 1)).collect();
    if spec.kind() == Kind::TypeD {
        arrows.insert(0, (1, chain_start));
        arrows.insert(0, (0, chain_start));
    }
    FinPoset::with_origin(origin, arrows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinPoset {
        FinPoset::from_hasse(n, (0..n - 1).map(|i| (i, i + 1)).collect()).unwrap()
    }

    #[test]
    fn successor_and_predecessor() {
        assert_eq!(LPoint::new(0, 3).successor(), LPoint::new(0, 4));
        assert_eq!(LPoint::new(1, -1).successor(), LPoint::new(1, 0));
        assert_eq!(LPoint::new(0, 0).predecessor(), LPoint::new(0, -1));
    }

    #[test]
    fn d_order() {
        let p = |t, z| DPoint::In(LPoint::new(t, z));
        assert!(leq(DPoint::Q1, p(0, -5)));
        assert!(!leq(DPoint::Q1, DPoint::Q2));
        assert!(!leq(DPoint::Q2, DPoint::Q1));
        assert!(leq(p(0, 2), p(1, -9)));
        assert!(!leq(p(1, -9), p(0, 2)));
        assert!(!leq(p(0, 0), DPoint::Q1));
    }

    #[test]
    fn leq_is_a_partial_order_on_samples() {
        let mut pts = vec![DPoint::Q1, DPoint::Q2];
        for t in 0..2 {
            for z in -3..=3 {
                pts.push(DPoint::In(LPoint::new(t, z)));
            }
        }
        for &a in &pts {
            assert!(leq(a, a));
            for &b in &pts {
                if leq(a, b) && leq(b, a) {
                    assert_eq!(a, b);
                }
                for &c in &pts {
                    if leq(a, b) && leq(b, c) {
                        assert!(leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            PosetSpec::new(Kind::TypeA, Vec::<String>::new(), (0, 1)),
            Err(OrderError::EmptyLabels)
        );
        assert!(matches!(
            PosetSpec::new(Kind::TypeA, ["a", "a"], (0, 1)),
            Err(OrderError::DuplicateLabel(_))
        ));
        assert!(matches!(
            PosetSpec::new(Kind::TypeA, ["a"], (2, 1)),
            Err(OrderError::InvalidWindow(2, 1))
        ));
    }

    #[test]
    fn spec_from_toml_and_json() {
        let s: PosetSpec = toml::from_str("kind = \"D\"\nt_labels = [\"x\", \"y\"]\nz_window = [-3, 4]\n").unwrap();
        assert_eq!(s.kind(), Kind::TypeD);
        assert_eq!(s.t_labels(), ["x", "y"]);
        assert_eq!(s.z_window(), (-3, 4));
        let j: PosetSpec = serde_json::from_str(r#"{"kind":"A","t_labels":["t0"],"z_window":[0,5]}"#).unwrap();
        assert_eq!(j.kind(), Kind::TypeA);
        assert!(serde_json::from_str::<PosetSpec>(r#"{"kind":"A","t_labels":["t","t"],"z_window":[0,5]}"#).is_err());
    }

    #[test]
    fn forest_checks() {
        assert!(chain(3).is_forest());
        let diamond = FinPoset::from_hasse(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!diamond.is_forest());
        let spec = PosetSpec::numbered(Kind::TypeD, 1, (-5, 5)).unwrap();
        let p = truncate(&spec, LPoint::new(0, 0), LPoint::new(0, 1), 1).unwrap();
        assert!(p.is_forest());
    }

    #[test]
    fn cycle_rejected() {
        assert_eq!(FinPoset::from_hasse(2, vec![(0, 1), (1, 0)]), Err(OrderError::Cyclic));
    }

    #[test]
    fn truncate_type_a_single_fiber() {
        let spec = PosetSpec::numbered(Kind::TypeA, 1, (-10, 10)).unwrap();
        let p = truncate(&spec, LPoint::new(0, 0), LPoint::new(0, 3), 2).unwrap();
        assert_eq!(p.len(), 8);
        let zs: Vec<i64> = (0..8)
            .map(|v| match p.origin(v) {
                Some(DPoint::In(q)) => q.z,
                _ => panic!(),
            })
            .collect();
        assert_eq!(zs, (-2..=5).collect::<Vec<_>>());
        assert_eq!(p.arrows().len(), 7);
    }

    #[test]
    fn truncate_type_d_has_two_sources() {
        let spec = PosetSpec::numbered(Kind::TypeD, 1, (-10, 10)).unwrap();
        let p = truncate(&spec, LPoint::new(0, 0), LPoint::new(0, 1), 1).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.origin(0), Some(DPoint::Q1));
        assert_eq!(p.origin(1), Some(DPoint::Q2));
        let sources: Vec<usize> = (0..p.len()).filter(|&v| p.incoming(v).is_empty()).collect();
        assert_eq!(sources, vec![0, 1]);
        assert!(!p.le(0, 1) && !p.le(1, 0));
        assert!(p.le(0, 5) && p.le(1, 5));
        assert_eq!(p.origin(2), Some(DPoint::In(LPoint::new(0, -1))));
        assert_eq!(p.origin(5), Some(DPoint::In(LPoint::new(0, 2))));
    }

    #[test]
    fn truncate_concatenates_fibers() {
        let spec = PosetSpec::numbered(Kind::TypeA, 2, (-2, 2)).unwrap();
        let p = truncate(&spec, LPoint::new(0, 0), LPoint::new(1, 0), 1).unwrap();
        let pts: Vec<LPoint> = (0..p.len())
            .map(|v| match p.origin(v) {
                Some(DPoint::In(q)) => q,
                _ => panic!(),
            })
            .collect();
        let expected: Vec<LPoint> = (-1..=2)
            .map(|z| LPoint::new(0, z))
            .chain((-2..=1).map(|z| LPoint::new(1, z)))
            .collect();
        assert_eq!(pts, expected);
        assert!(p.is_forest());
        assert!(p.le(0, p.len() - 1));
    }

    #[test]
    fn truncate_window_errors() {
        let spec = PosetSpec::numbered(Kind::TypeA, 1, (0, 5)).unwrap();
        assert!(matches!(
            truncate(&spec, LPoint::new(0, 0), LPoint::new(0, 3), 1),
            Err(OrderError::WindowExceeded { .. })
        ));
        assert_eq!(
            truncate(&spec, LPoint::new(0, 3), LPoint::new(0, 1), 0),
            Err(OrderError::InvertedSupport)
        );
    }

    #[test]
    fn truncation_is_monotone_in_margin() {
        for kind in [Kind::TypeA, Kind::TypeD] {
            let spec = PosetSpec::numbered(kind, 2, (-8, 8)).unwrap();
            for m in 0..4u32 {
                let small = truncate(&spec, LPoint::new(0, 1), LPoint::new(1, -1), m).unwrap();
                let big = truncate(&spec, LPoint::new(0, 1), LPoint::new(1, -1), m + 1).unwrap();
                assert!(small.is_forest() && big.is_forest());
                for a in 0..small.len() {
                    let ia = big.index_of(small.origin(a).unwrap()).unwrap();
                    for b in 0..small.len() {
                        let ib = big.index_of(small.origin(b).unwrap()).unwrap();
                        assert_eq!(small.le(a, b), big.le(ia, ib));
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_paths() {
        let spec = PosetSpec::numbered(Kind::TypeD, 1, (-4, 4)).unwrap();
        let p = truncate(&spec, LPoint::new(0, 0), LPoint::new(0, 0), 1).unwrap();
        let path = p.path(0, 4).unwrap();
        assert_eq!(path.len(), 3);
        assert!(p.path(0, 1).is_none());
        assert_eq!(p.path(3, 3), Some(vec![]));
    }
}
