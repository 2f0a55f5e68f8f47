//! Property sweeps comparing the closed-form model, the probing calculus
//! and the exact oracle. Each check returns a [`CheckResult`]; suites
//! bundle them into a [`Report`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::RunConfig;
use crate::field::FieldChoice;
use crate::literal::format_obj;
use crate::model::{self, HomRules, Model, ModelError};
use crate::objects::{ComponentId, DObj, IndClass, IndObj};
use crate::oracle::{build_oracle, OracleApi, OracleError};
use crate::order::{Kind, LPoint, OrderError, PosetSpec};
use crate::probing::{self, ProbeError};
use crate::tilting::{self, TiltError, TiltShape};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Tilt(#[from] TiltError),
    #[error("unknown suite {0:?} (expected all, hom, ar, probe or tilt)")]
    Suite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Hom,
    Ar,
    Probe,
    Tilt,
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Ok(match s {
            "all" => Suite::All,
            "hom" => Suite::Hom,
            "ar" => Suite::Ar,
            "probe" => Suite::Probe,
            "tilt" => Suite::Tilt,
            _ => return Err(VerifyError::Suite(s.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::All => "all",
            Suite::Hom => "hom",
            Suite::Ar => "ar",
            Suite::Probe => "probe",
            Suite::Tilt => "tilt",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub field: FieldChoice,
    pub margin: u32,
    pub rules: HomRules,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: crate::config::DEFAULT_SEED,
            field: FieldChoice::Rational,
            margin: 2,
            rules: HomRules::Standard,
        }
    }
}

impl VerifyOptions {
    pub fn from_config(cfg: &RunConfig) -> Self {
        VerifyOptions { seed: cfg.seed, field: cfg.field, margin: cfg.margin, rules: HomRules::Standard }
    }
}

const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub detail: Value,
    pub millis: u128,
    #[serde(skip)]
    started: Option<Instant>,
}

impl CheckResult {
    fn start(name: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            detail: Value::Null,
            millis: 0,
            started: Some(Instant::now()),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.failed == 0 && self.checked > 0;
        if let Some(t) = self.started.take() {
            self.millis = t.elapsed().as_millis();
        }
        self
    }

    /// For negative controls: passes exactly when the wrapped check failed.
    fn inverted(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self.passed = !self.passed;
        self
    }
}

/// Per-row counts from a parallel sweep, merged in row order.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Runs `row` for every object on the rayon pool and folds the tallies
/// into `r` deterministically.
fn par_rows<F>(r: &mut CheckResult, xs: &[IndObj], row: F) -> Result<(), VerifyError>
where
    F: Fn(&IndObj, &mut Tally) -> Result<(), VerifyError> + Sync,
{
    let tallies: Vec<Result<Tally, VerifyError>> = xs
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            row(x, &mut t).map(|_| t)
        })
        .collect();
    for t in tallies {
        let t = t?;
        r.checked += t.checked;
        r.failed += t.failures.len();
        let room = MAX_LISTED.saturating_sub(r.failures.len());
        r.failures.extend(t.failures.into_iter().take(room));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub field: String,
    pub margin: u32,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

fn numbered(kind: Kind, fibers: usize, w: (i64, i64)) -> Result<PosetSpec, VerifyError> {
    Ok(PosetSpec::numbered(kind, fibers, w)?)
}

fn a(t: usize, i: i64, j: i64) -> IndClass {
    IndClass::A(LPoint::new(t, i), LPoint::new(t, j))
}

fn lit(spec: &PosetSpec, x: &IndObj) -> String {
    format_obj(spec, x)
}

/// A window together with its model, oracle and object list.
pub struct Sweep {
    pub name: String,
    pub model: Model,
    pub oracle: Box<dyn OracleApi>,
    pub objects: Vec<IndObj>,
}

impl Sweep {
    pub fn new(name: &str, spec: PosetSpec, shifts: (i64, i64), opts: &VerifyOptions) -> Result<Self, VerifyError> {
        let oracle = build_oracle(&spec, opts.margin, opts.field)?;
        let model = Model::new(spec, shifts).with_rules(opts.rules);
        let objects = model.enumerate_window();
        Ok(Sweep { name: name.to_string(), model, oracle, objects })
    }

    fn spec(&self) -> &PosetSpec {
        self.model.spec()
    }
}

/// The two hom-table windows: TypeA with two fibers and TypeD with one,
/// both of width 8, shifts [-2, 2].
pub fn acceptance_sweeps(opts: &VerifyOptions) -> Result<Vec<Sweep>, VerifyError> {
    Ok(vec![
        Sweep::new("A|T|=2 [-4,4]", numbered(Kind::TypeA, 2, (-4, 4))?, (-2, 2), opts)?,
        Sweep::new("D|T|=1 [-4,4]", numbered(Kind::TypeD, 1, (-4, 4))?, (-2, 2), opts)?,
    ])
}

// ---------------------------------------------------------------------------
// Worked example and fixtures

/// The extension of `A_{-1,1}` by `A_{0,3}` on a single fiber, by the
/// oracle and by probing.
pub fn probing_example(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("probing_example");
    let spec = numbered(Kind::TypeA, 1, (-4, 6))?;
    let m = Model::new(spec.clone(), (-2, 2)).with_rules(opts.rules);
    let o = build_oracle(&spec, opts.margin, opts.field)?;
    let x = a(0, -1, 1).at(0);
    let y = a(0, 0, 3).at(0);
    let want = DObj::new(vec![a(0, -1, 3).at(0), a(0, 0, 1).at(0)]);
    let by_oracle = m.cone(o.as_ref(), &x.shifted(-1), &y);
    let by_probe = probing::cone_by_probing(&m, &x, &y);
    r.expect(by_oracle.as_ref() == Ok(&want), || format!("oracle cone {by_oracle:?}"));
    r.expect(by_probe.as_ref() == Ok(&want), || format!("probing cone {by_probe:?}"));
    r.detail = json!({ "expected": crate::literal::format_dobj(&spec, &want) });
    Ok(r.finish())
}

pub fn probe_fixtures(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("probe_fixtures");
    let spec = numbered(Kind::TypeA, 1, (-4, 6))?;
    let m = Model::new(spec, (-2, 2)).with_rules(opts.rules);
    let cases = [
        (a(0, -1, 1).at(0), [a(0, 1, 1).at(0), a(0, -2, -2).at(-1)]),
        (a(0, 0, 3).at(0), [a(0, 3, 3).at(0), a(0, -1, -1).at(-1)]),
    ];
    for (x, want) in cases {
        let got = probing::phi_o(&m, &x)?;
        let want: BTreeSet<IndObj> = want.into();
        r.expect(got == want, || format!("phi_o({x:?}) = {got:?}"));
    }
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// AR sequences

/// Certifies the almost split sequence ending in every interval object of
/// the window [-5, 5], one and two fibers, both kinds.
pub fn ar_sequences(opts: &VerifyOptions, samples: usize) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("ar_sequences");
    let mut per_window = BTreeMap::new();
    for kind in [Kind::TypeA, Kind::TypeD] {
        for fibers in [1, 2] {
            let spec = numbered(kind, fibers, (-5, 5))?;
            let o = build_oracle(&spec, opts.margin, opts.field)?;
            let mut n = 0;
            for c in model::window_classes(&spec) {
                let IndClass::A(i, j) = c else { continue };
                n += 1;
                let cert = o.ar_certificate(&c, samples, opts.seed)?;
                let mut want = vec![IndClass::A(i.successor(), j), IndClass::A(i, j.successor())];
                if i == j {
                    want.remove(0);
                }
                want.sort();
                let mut got = cert.middle.clone();
                got.sort();
                let tau_ok = cert.tau == [model::tau_class(&c)];
                r.expect(cert.ok() && got == want && tau_ok && cert.lifting_samples == samples, || {
                    format!("{kind:?}/{fibers}: {c:?} certificate {cert:?}")
                });
            }
            per_window.insert(format!("{kind:?}|T|={fibers}"), n);
        }
    }
    r.detail = json!({ "window": [-5, 5], "samples": samples, "objects": per_window });
    Ok(r.finish())
}

/// The model's AR triangles against oracle certificates for every class
/// of a TypeD window, including the `A1`, `A2` and `B` families.
pub fn ar_triangles(opts: &VerifyOptions, samples: usize) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("ar_triangles");
    let spec = numbered(Kind::TypeD, 2, (-2, 2))?;
    let o = build_oracle(&spec, opts.margin, opts.field)?;
    let m = Model::new(spec.clone(), (0, 0)).with_rules(opts.rules);
    for c in model::window_classes(&spec) {
        let z = c.at(0);
        let tri = match m.ar_triangle(&z) {
            Ok(t) => t,
            // The left end or a middle summand leaves the window.
            Err(ModelError::Object(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let cert = o.ar_certificate(&c, samples, opts.seed)?;
        let mut got = cert.middle.clone();
        got.sort();
        let want: Vec<IndClass> = tri.y.summands().iter().map(|x| x.cls).collect();
        r.expect(
            cert.ok() && got == want && cert.tau == [tri.x.summands()[0].cls] && tri.homs.iter().all(|&h| h >= 1),
            || format!("{c:?}: model {tri:?} oracle {cert:?}"),
        );
    }
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Hom table sweeps

/// Model against oracle over every pair of window objects, plus
/// invariance of the oracle table under a wider margin and another field.
pub fn hom_agreement(sweeps: &[Sweep], opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("hom_agreement");
    let mut pairs = BTreeMap::new();
    for s in sweeps {
        par_rows(&mut r, &s.objects, |x, t| {
            for y in &s.objects {
                let dm = s.model.hom(x, y);
                let dor = s.oracle.hom(x, y)?;
                t.expect(dm == dor, || {
                    format!("{}: hom({}, {}) model {dm} oracle {dor}", s.name, lit(s.spec(), x), lit(s.spec(), y))
                });
            }
            Ok(())
        })?;
        pairs.insert(s.name.clone(), s.objects.len() * s.objects.len());
    }
    let other_field = match opts.field {
        FieldChoice::Rational => FieldChoice::Prime(2),
        FieldChoice::Prime(_) => FieldChoice::Rational,
    };
    for s in sweeps {
        let classes = model::window_classes(s.spec());
        for (margin, field) in [(opts.margin + 1, opts.field), (opts.margin, other_field)] {
            let alt = build_oracle(s.spec(), margin, field)?;
            for x in &classes {
                for y in &classes {
                    let base = (s.oracle.hom_class(x, y)?, s.oracle.ext_class(x, y)?);
                    let got = (alt.hom_class(x, y)?, alt.ext_class(x, y)?);
                    r.expect(base == got, || {
                        format!("{}: margin {margin} field {field}: {x:?} {y:?} {base:?} vs {got:?}", s.name)
                    });
                }
            }
        }
    }
    r.detail = json!({
        "object_pairs": pairs,
        "invariance": [format!("margin {}", opts.margin + 1), format!("field {other_field}")],
    });
    Ok(r.finish())
}

/// Deliberately wrong Ext rule; the agreement sweep must reject it.
pub fn negative_control(sweeps: &[Sweep]) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("negative_control");
    for s in sweeps {
        let bad = s.model.clone().with_rules(HomRules::OffByOneExt);
        for x in &s.objects {
            for y in &s.objects {
                let dor = s.oracle.hom(x, y)?;
                r.expect(bad.hom(x, y) == dor, String::new);
            }
        }
    }
    let disagreements = r.failed;
    let mut r = r.finish().inverted("negative_control");
    r.failures.clear();
    r.detail = json!({ "rules": "OffByOneExt", "disagreements": disagreements });
    Ok(r)
}

/// Observed maximum of hom, and dimension one whenever the reverse
/// extension vanishes.
pub fn hom_bound(sweeps: &[Sweep], bound: usize) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("hom_bound");
    let mut max = 0;
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sweeps {
        for x in &s.objects {
            for y in &s.objects {
                let d = s.oracle.hom(x, y)?;
                max = max.max(d);
                *histogram.entry(d).or_default() += 1;
                r.expect(d <= bound, || format!("{}: hom({x:?}, {y:?}) = {d}", s.name));
                if s.oracle.hom(y, &x.shifted(1))? == 0 {
                    r.expect(d <= 1, || format!("{}: hom({x:?}, {y:?}) = {d} with no reverse ext", s.name));
                }
            }
        }
    }
    r.detail = json!({ "observed_max": max, "bound": bound, "histogram": histogram });
    Ok(r.finish())
}

pub fn serre_duality(sweeps: &[Sweep]) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("serre_duality");
    let mut skipped = 0;
    for s in sweeps {
        skipped += s.objects.iter().filter(|x| !s.oracle.covers(&model::serre(x).cls)).count();
        par_rows(&mut r, &s.objects, |x, t| {
            let fx = model::serre(x);
            if !s.oracle.covers(&fx.cls) {
                return Ok(());
            }
            for y in &s.objects {
                let lhs = s.oracle.hom(x, y)?;
                let rhs = s.oracle.hom(y, &fx)?;
                t.expect(lhs == rhs, || format!("{}: hom({x:?},{y:?}) = {lhs}, hom(y, Fx) = {rhs}", s.name));
            }
            Ok(())
        })?;
    }
    r.detail = json!({ "sources_outside_oracle": skipped });
    Ok(r.finish())
}

pub fn directedness(sweeps: &[Sweep]) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("directedness");
    for s in sweeps {
        par_rows(&mut r, &s.objects, |x, t| {
            for y in &s.objects {
                // For x = y the z = -1 condition would ask End(x) = 0.
                if x == y || s.oracle.hom(x, y)? == 0 {
                    continue;
                }
                for z in (-4..=4).filter(|&z| z != 0) {
                    let fwd = s.oracle.hom(x, &y.shifted(z))?;
                    let back = s.oracle.hom(y, &x.shifted(z + 1))?;
                    t.expect(fwd == 0 && back == 0, || format!("{}: {x:?} {y:?} z={z}: {fwd} {back}", s.name));
                }
            }
            Ok(())
        })?;
    }
    Ok(r.finish())
}

/// Wing objects as sums over their quasi-simple composition factors, with
/// coordinates `V_{m,n} = A_{m,m+n}`, plus the mesh relation that drives
/// the recursion.
///
/// The two sum formulas are checked on pairs of wings `V`, `W` with
/// `W` different from `V` and `V[1]`; inside one wing and across one shift
/// they do not hold verbatim (already `Hom(V_{0,0}, V_{0,1}) = 0` while the
/// first sum gives 1), so there the mesh relation is checked instead.
pub fn wing_additivity(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("wing_additivity");
    let spec = numbered(Kind::TypeA, 2, (-4, 4))?;
    let oracle = build_oracle(&spec, opts.margin, opts.field)?;
    let m = Model::new(spec.clone(), (-1, 1)).with_rules(opts.rules);
    let wing_objs: Vec<IndObj> =
        m.enumerate_window().into_iter().filter(|x| model::wing_coords(&x.cls).is_some()).collect();
    let hom = |x: &IndObj, y: &IndObj| -> Result<usize, VerifyError> {
        let in_oracle = oracle.covers(&x.cls) && oracle.covers(&y.cls);
        Ok(if in_oracle { oracle.hom(x, y)? } else { m.hom(x, y) })
    };
    let coords = |x: &IndObj| {
        let (mm, n) = model::wing_coords(&x.cls).expect("wing object");
        (x.cls.upper().t, mm, n)
    };
    let (mut sums, mut meshes, mut same_or_shift) = (0, 0, 0);
    for v in &wing_objs {
        let (tv, mv, nv) = coords(v);
        for w in &wing_objs {
            let (tw, iw, jw) = coords(w);
            let d = hom(v, w)?;
            let related = tv == tw && (w.shift == v.shift || w.shift == v.shift + 1);
            if related {
                same_or_shift += 1;
            } else {
                let s1: usize = (0..=jw)
                    .map(|k| hom(v, &model::from_wing_coords(tw, iw + k, 0).at(w.shift)))
                    .sum::<Result<_, _>>()?;
                let s2: usize = (0..=nv)
                    .map(|l| hom(&model::from_wing_coords(tv, mv + l, 0).at(v.shift), w))
                    .sum::<Result<_, _>>()?;
                sums += 1;
                r.expect(d == s1 && d == s2, || format!("{v:?} -> {w:?}: {d} vs sums {s1}, {s2}"));
            }
            // Mesh ending in w: hom(v, M) = hom(v, tau w) + hom(v, w) - [v = w] - [v = w[-1]].
            let tw_obj = model::tau(w);
            let mid = DObj::from_classes(model::ar_middle(&w.cls), w.shift);
            if !oracle.covers(&tw_obj.cls) || !mid.summands().iter().all(|x| oracle.covers(&x.cls)) {
                continue;
            }
            let lhs: usize = mid.summands().iter().map(|x| hom(v, x)).sum::<Result<_, _>>()?;
            let rhs = hom(v, &tw_obj)? + d;
            let corr = usize::from(v == w) + usize::from(*v == w.shifted(-1));
            meshes += 1;
            r.expect(lhs + corr == rhs, || format!("mesh {v:?} -> {w:?}: {lhs} + {corr} vs {rhs}"));
        }
    }
    r.detail = json!({
        "sum_formula_pairs": sums,
        "mesh_pairs": meshes,
        "same_wing_or_next_shift_pairs": same_or_shift,
    });
    Ok(r.finish())
}

/// Along every sectional path of a width-8 wing and `ZD` wing the hom
/// space between the ends is one-dimensional and the path is unique.
pub fn sectional_laws(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("sectional_laws");
    let mut counts = BTreeMap::new();
    for (kind, comp) in [
        (Kind::TypeA, ComponentId::Wing { t: 0, shift: 0 }),
        (Kind::TypeD, ComponentId::DWing { t: 0, shift: 0 }),
    ] {
        let spec = numbered(kind, 1, (-4, 4))?;
        let o = build_oracle(&spec, opts.margin, opts.field)?;
        let m = Model::new(spec.clone(), (0, 0)).with_rules(opts.rules);
        let members: Vec<IndObj> = m.enumerate_window().into_iter().filter(|x| x.component() == comp).collect();
        let mut with_path = 0;
        for x in &members {
            for y in &members {
                if x == y {
                    continue;
                }
                let paths = m.sectional_paths(x, y)?;
                if paths.is_empty() {
                    continue;
                }
                with_path += 1;
                let d = o.hom(x, y)?;
                r.expect(paths.len() == 1 && d == 1, || {
                    format!("{} -> {}: {} paths, hom {d}", lit(&spec, x), lit(&spec, y), paths.len())
                });
            }
        }
        counts.insert(format!("{comp:?}"), with_path);
    }
    r.detail = json!({ "sectional_pairs": counts });
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Probing

/// Cardinality, fiber, dimension and wing-coverage laws for every object of
/// a window.
pub fn probe_laws(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("probe_laws");
    let mut sizes = BTreeMap::new();
    for (kind, fibers) in [(Kind::TypeD, 1), (Kind::TypeA, 2)] {
        let spec = numbered(kind, fibers, (-4, 4))?;
        let m = Model::new(spec.clone(), (-2, 2)).with_rules(opts.rules);
        let objs = m.enumerate_window();
        for x in &objs {
            let probes = probing::phi_o(&m, x)?;
            let peripheral = x.is_d_peripheral();
            let l = lit(&spec, x);
            r.expect(probes.len() == if peripheral { 1 } else { 2 }, || format!("|phi_o({l})| = {}", probes.len()));
            for s in &probes {
                r.expect(m.hom(s, x) == 1, || format!("hom({s:?}, {l}) != 1"));
            }
            let fiber = probing::identify(&m, &probes);
            let want: BTreeSet<IndObj> = match x.cls {
                IndClass::A1(j) | IndClass::A2(j) => [IndClass::A1(j).at(x.shift), IndClass::A2(j).at(x.shift)].into(),
                _ => [*x].into(),
            };
            r.expect(fiber == want, || format!("fiber of phi_o({l}) = {fiber:?}"));
            // Every predicted wing is hit; with two wings each is hit once,
            // with a single wing it carries all the probes.
            let wings = probing::phi_c(&x.component());
            for w in &wings {
                let hits = probes.iter().filter(|s| s.component() == *w).count();
                let want = if wings.len() == 1 { probes.len() } else { 1 };
                r.expect(hits == want, || format!("{l}: {hits} probes in {w:?}"));
            }
            r.expect(probes.iter().all(|s| wings.contains(&s.component())), || format!("{l}: stray probe"));
        }
        sizes.insert(format!("{kind:?}|T|={fibers}"), objs.len());
    }
    r.detail = json!({ "objects": sizes });
    Ok(r.finish())
}

pub fn phi_c_injective(sweeps: &[Sweep]) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("phi_c_injective");
    let mut total = 0;
    for s in sweeps {
        let comps: BTreeSet<ComponentId> = s.objects.iter().map(IndObj::component).collect();
        let mut seen: BTreeMap<BTreeSet<ComponentId>, ComponentId> = BTreeMap::new();
        for c in &comps {
            let image = probing::phi_c(c);
            r.expect(!image.is_empty(), || format!("{c:?} has empty image"));
            if let Some(prev) = seen.insert(image, *c) {
                r.expect(false, || format!("{}: {prev:?} and {c:?} share an image", s.name));
            }
        }
        total += comps.len();
    }
    r.detail = json!({ "components": total });
    Ok(r.finish())
}

/// Probing cones against the oracle. Every extension pair of the window is
/// run through the probe calculus (no ambiguity allowed); a seeded sample
/// is compared with the oracle.
pub fn probe_cone_consistency(opts: &VerifyOptions, oracle_samples: usize) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("probe_cone_consistency");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stats = BTreeMap::new();
    for (kind, fibers, w) in [(Kind::TypeA, 1, (-4, 6)), (Kind::TypeD, 1, (-4, 4)), (Kind::TypeA, 2, (-3, 3))] {
        let spec = numbered(kind, fibers, w)?;
        let m = Model::new(spec.clone(), (-1, 1)).with_rules(opts.rules);
        let o = build_oracle(&spec, opts.margin, opts.field)?;
        let objs: Vec<IndObj> = m.enumerate_window().into_iter().filter(|x| !x.is_d_peripheral()).collect();
        let mut solved = Vec::new();
        for x in objs.iter().filter(|x| x.shift == 0) {
            for y in &objs {
                if m.hom(x, &y.shifted(1)) != 1 || !y.shifted(1).cls.in_window(&spec) {
                    continue;
                }
                if y.shift.abs() > 1 {
                    continue;
                }
                match probing::cone_by_probing(&m, x, y) {
                    Ok(c) => solved.push((*x, *y, c)),
                    Err(e) => r.expect(false, || format!("{:?}: {x:?} {y:?}: {e}", spec.kind())),
                }
            }
        }
        let picked: Vec<_> = solved.choose_multiple(&mut rng, oracle_samples).cloned().collect();
        for (x, y, c) in &picked {
            let want = o.cone(&x.shifted(-1), y)?;
            r.expect(*c == want, || format!("{x:?} {y:?}: probing {c:?} oracle {want:?}"));
        }
        stats.insert(format!("{kind:?}|T|={fibers}"), json!({ "probed": solved.len(), "oracle_checked": picked.len() }));
    }
    r.detail = json!(stats);
    Ok(r.finish())
}

/// For a quasi-simple `S` and a nonzero non-invertible `S -> x` with `x`
/// not a `ZD` peripheral object, `x -> cone` is irreducible: the cone is a
/// multiplicity-free sum of mesh successors of `x`.
pub fn irreducible_cone_law(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("irreducible_cone_law");
    let mut split = 0;
    for (kind, fibers, w) in [(Kind::TypeA, 1, (-4, 6)), (Kind::TypeD, 1, (-4, 4)), (Kind::TypeA, 2, (-2, 2))] {
        let spec = numbered(kind, fibers, w)?;
        let m = Model::new(spec.clone(), (0, 0)).with_rules(opts.rules);
        let o = build_oracle(&spec, opts.margin, opts.field)?;
        for x in m.enumerate_window() {
            if x.is_d_peripheral() {
                continue;
            }
            for s in probing::phi_o_raw(&m, &x) {
                if s == x || !o.covers(&s.cls) {
                    continue;
                }
                let c = o.cone(&s, &x)?;
                let succ = model::successors(&x.cls);
                let distinct = c.summands().windows(2).all(|w| w[0] != w[1]);
                let ok = !c.is_zero()
                    && distinct
                    && c.summands().iter().all(|z| z.shift == x.shift && succ.contains(&z.cls));
                if c.len() > 1 {
                    split += 1;
                }
                r.expect(ok, || format!("cone({}, {}) = {c:?}", lit(&spec, &s), lit(&spec, &x)));
            }
        }
    }
    r.detail = json!({ "decomposable_cones": split });
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Tilting

/// The two worked tilting sets, compared block by block with the
/// window-restricted description.
pub fn tilt_examples(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("tilt_examples");
    let mut detail = serde_json::Map::new();

    let spec = numbered(Kind::TypeA, 2, (-3, 3))?;
    let (lo, hi) = spec.z_window();
    let m = Model::new(spec.clone(), (-2, 2)).with_rules(opts.rules);
    let s = a(1, 0, 0).at(0);
    let t = tilting::tilting_set(&m, &s)?;
    let p = |t, z| LPoint::new(t, z);
    let blocks: Vec<BTreeSet<IndObj>> = vec![
        (0..=-lo).map(|n| IndClass::A(p(1, -n), p(1, 0)).at(0)).collect(),
        (lo..=hi).map(|z| IndClass::A(p(0, z), p(1, 0)).at(0)).collect(),
        (1..hi).map(|n| IndClass::A(p(1, 1), p(1, n)).at(1)).collect(),
    ];
    check_blocks(&mut r, &m, &t, &blocks, TiltShape::AShape);
    r.expect(t.elements.last() == Some(&model::tau(&s).shifted(1)), || "last element is not tau S[1]".into());
    detail.insert("A".into(), json!(t.elements.iter().map(|x| lit(&spec, x)).collect::<Vec<_>>()));

    let spec = numbered(Kind::TypeD, 1, (-3, 4))?;
    let (lo, hi) = spec.z_window();
    let m = Model::new(spec.clone(), (-2, 2)).with_rules(opts.rules);
    let s = a(0, 0, 0).at(0);
    let t = tilting::tilting_set(&m, &s)?;
    let blocks: Vec<BTreeSet<IndObj>> = vec![
        (0..=-lo).map(|n| IndClass::A(p(0, -n), p(0, 0)).at(0)).collect(),
        (0..hi - 1).map(|n| IndClass::B(p(0, 0), p(0, n + 1)).at(0)).collect(),
        [IndClass::A1(p(0, 0)).at(0)].into(),
        [IndClass::A2(p(0, 0)).at(0)].into(),
    ];
    check_blocks(&mut r, &m, &t, &blocks, TiltShape::DShape);
    r.expect(
        t.peripheral_pair == Some((IndClass::A1(p(0, 0)).at(0), IndClass::A2(p(0, 0)).at(0))),
        || format!("peripheral pair {:?}", t.peripheral_pair),
    );
    detail.insert("D".into(), json!(t.elements.iter().map(|x| lit(&spec, x)).collect::<Vec<_>>()));
    r.detail = Value::Object(detail);
    Ok(r.finish())
}

fn check_blocks(
    r: &mut CheckResult,
    m: &Model,
    t: &tilting::TiltingSet,
    blocks: &[BTreeSet<IndObj>],
    shape: TiltShape,
) {
    r.expect(t.shape == shape, || format!("shape {:?}", t.shape));
    r.expect(t.elements.first() == Some(&t.source), || "source is not first".into());
    let mut rest = t.elements.as_slice();
    for (k, b) in blocks.iter().enumerate() {
        let (head, tail) = rest.split_at(b.len().min(rest.len()));
        let got: BTreeSet<IndObj> = head.iter().copied().collect();
        r.expect(got == *b, || format!("block {k}: got {got:?}, want {b:?}"));
        rest = tail;
    }
    r.expect(rest.is_empty(), || format!("{} unexpected trailing elements", rest.len()));
    r.expect(m.is_partial_tilting(&t.elements), || "not partial tilting".into());
}

/// Order laws of `S_t` for every quasi-simple source in a set of windows,
/// decided by the oracle.
pub fn tilt_laws(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("tilt_laws");
    let mut sets = 0;
    for (kind, fibers, w) in [
        (Kind::TypeA, 1, (-3, 4)),
        (Kind::TypeA, 2, (-2, 3)),
        (Kind::TypeD, 1, (-3, 4)),
        (Kind::TypeD, 2, (-2, 3)),
    ] {
        let spec = numbered(kind, fibers, w)?;
        let m = Model::new(spec.clone(), (-2, 2)).with_rules(opts.rules);
        let o = build_oracle(&spec, opts.margin, opts.field)?;
        let hom = |x: &IndObj, y: &IndObj| o.hom(x, y);
        let sources: Vec<IndObj> = m.quasi_simples().into_iter().filter(|x| x.shift == 0).collect();
        for s in &sources {
            let t = match tilting::tilting_set(&m, s) {
                Ok(t) => t,
                Err(TiltError::Model(ModelError::Object(_))) => continue,
                Err(e) => {
                    r.expect(false, || format!("{}: {e}", lit(&spec, s)));
                    continue;
                }
            };
            sets += 1;
            let els = &t.elements;
            let n = els.len();
            let name = lit(&spec, s);
            r.expect(els[0] == *s, || format!("{name}: first element"));
            // Every window object with a nonzero map from S is in S_t.
            for x in m.enumerate_window() {
                let member = t.index_of(&x).is_some();
                let expected = tilting::in_st(&m, s, t.peripheral_pair.as_ref(), &x);
                r.expect(member == expected, || format!("{name}: membership of {}", lit(&spec, &x)));
            }
            let incomparable_tail = if t.shape == TiltShape::DShape { 2 } else { 0 };
            for i in 0..n {
                for j in i + 1..n {
                    let (f, b) = (hom(&els[i], &els[j])?, hom(&els[j], &els[i])?);
                    if i + incomparable_tail >= n && j + incomparable_tail >= n && incomparable_tail > 0 {
                        r.expect(f == 0 && b == 0, || format!("{name}: tail pair comparable"));
                    } else {
                        r.expect(f >= 1 && b == 0, || format!("{name}: {i} < {j} fails ({f}, {b})"));
                    }
                }
                for z in (-4..=4).filter(|&z| z != 0) {
                    for y in els {
                        let d = hom(&els[i], &y.shifted(z))?;
                        r.expect(d == 0, || format!("{name}: shifted hom {z} nonzero"));
                    }
                }
            }
            if t.shape == TiltShape::AShape {
                let last = model::tau(s).shifted(1);
                r.expect(els[n - 1] == last, || format!("{name}: last is not tau S[1]"));
                for x in els {
                    r.expect(hom(x, &last)? >= 1, || format!("{name}: {} outside [S, tau S[1]]", lit(&spec, x)));
                }
            }
            r.expect(tilting::missing_predecessors(&m, &t).is_empty(), || format!("{name}: missing predecessor"));
            // Successor coherence for consecutive comparable elements.
            for k in 0..n.saturating_sub(1 + incomparable_tail / 2) {
                let (x, y) = (&els[k], &els[k + 1]);
                for z in els {
                    if z == x || z == y {
                        continue;
                    }
                    let between = hom(x, z)? >= 1 && hom(z, y)? >= 1;
                    r.expect(!between, || format!("{name}: {} between consecutive elements", lit(&spec, z)));
                }
            }
        }
    }
    r.detail = json!({ "tilting_sets": sets });
    Ok(r.finish())
}

/// Iterated cones of `S_t` reach every window object, for a sample of
/// sources in small windows.
pub fn cone_closure_sample(opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("cone_closure_sample");
    let mut sizes = BTreeMap::new();
    for (kind, fibers, w) in [(Kind::TypeA, 1, (-2, 3)), (Kind::TypeD, 1, (-2, 3)), (Kind::TypeA, 2, (-1, 2))] {
        let spec = numbered(kind, fibers, w)?;
        let m = Model::new(spec.clone(), (-1, 1)).with_rules(opts.rules);
        let o = build_oracle(&spec, opts.margin, opts.field)?;
        let s = a(fibers - 1, 0, 0).at(0);
        let t = tilting::tilting_set(&m, &s)?;
        let targets: BTreeSet<IndObj> = m.enumerate_window().into_iter().collect();
        let got = tilting::cone_closure(&m, o.as_ref(), &t.elements, &targets, 8)?;
        let missing: Vec<String> = targets.difference(&got).map(|x| lit(&spec, x)).collect();
        r.expect(missing.is_empty(), || format!("{kind:?}|T|={fibers}: unreached {missing:?}"));
        sizes.insert(format!("{kind:?}|T|={fibers}"), json!({ "seeds": t.elements.len(), "targets": targets.len() }));
    }
    r.detail = json!(sizes);
    Ok(r.finish())
}

/// Cones of one-dimensional maps `x -> y` with `Hom(y, x[1]) = 0` are
/// indecomposable, on a seeded sample of the hom-table windows.
pub fn indecomposable_cone(sweeps: &[Sweep], opts: &VerifyOptions, samples: usize) -> Result<CheckResult, VerifyError> {
    let mut r = CheckResult::start("indecomposable_cone");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut pool_sizes = BTreeMap::new();
    let per = samples.div_ceil(sweeps.len().max(1));
    for s in sweeps {
        let mut pool = Vec::new();
        for x in s.objects.iter().filter(|x| x.shift == 0) {
            for y in s.objects.iter().filter(|y| y.shift == 0 || y.shift == 1) {
                if x != y && s.model.hom(x, y) == 1 && s.model.hom(y, &x.shifted(1)) == 0 {
                    pool.push((*x, *y));
                }
            }
        }
        pool_sizes.insert(s.name.clone(), pool.len());
        for (x, y) in pool.choose_multiple(&mut rng, per) {
            let c = s.oracle.cone(x, y)?;
            r.expect(c.len() == 1, || format!("{}: cone({x:?} -> {y:?}) = {c:?}", s.name));
        }
    }
    r.detail = json!({ "pool": pool_sizes, "per_window": per });
    Ok(r.finish())
}

// ---------------------------------------------------------------------------
// Suites

/// Hom agreement on the configured window itself.
pub fn config_agreement(cfg: &RunConfig, opts: &VerifyOptions) -> Result<CheckResult, VerifyError> {
    let sweep = Sweep::new("config", cfg.poset.clone(), cfg.shift_range, opts)?;
    let mut r = CheckResult::start("config_hom_agreement");
    for x in &sweep.objects {
        for y in &sweep.objects {
            let (dm, dor) = (sweep.model.hom(x, y), sweep.oracle.hom(x, y)?);
            r.expect(dm == dor, || {
                format!("hom({}, {}) model {dm} oracle {dor}", lit(sweep.spec(), x), lit(sweep.spec(), y))
            });
        }
    }
    r.detail = json!({ "objects": sweep.objects.len() });
    Ok(r.finish())
}

pub fn run_suite(suite: Suite, cfg: &RunConfig, opts: &VerifyOptions) -> Result<Report, VerifyError> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut checks = Vec::new();
    if wants(Suite::Hom) {
        checks.push(config_agreement(cfg, opts)?);
        let sweeps = acceptance_sweeps(opts)?;
        checks.push(hom_agreement(&sweeps, opts)?);
        checks.push(hom_bound(&sweeps, 6)?);
        checks.push(serre_duality(&sweeps)?);
        checks.push(directedness(&sweeps)?);
        checks.push(wing_additivity(opts)?);
        checks.push(sectional_laws(opts)?);
        if opts.rules == HomRules::Standard {
            checks.push(negative_control(&sweeps)?);
        }
    }
    if wants(Suite::Ar) {
        checks.push(ar_sequences(opts, 20)?);
        checks.push(ar_triangles(opts, 20)?);
    }
    if wants(Suite::Probe) {
        checks.push(probing_example(opts)?);
        checks.push(probe_fixtures(opts)?);
        checks.push(probe_laws(opts)?);
        checks.push(phi_c_injective(&acceptance_sweeps(opts)?)?);
        checks.push(probe_cone_consistency(opts, 150)?);
        checks.push(irreducible_cone_law(opts)?);
    }
    if wants(Suite::Tilt) {
        checks.push(tilt_examples(opts)?);
        checks.push(tilt_laws(opts)?);
        checks.push(cone_closure_sample(opts)?);
        checks.push(indecomposable_cone(&acceptance_sweeps(opts)?, opts, 200)?);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report { suite, seed: opts.seed, field: opts.field.name(), margin: opts.margin, passed, checks })
}
