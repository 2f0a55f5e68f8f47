//! Text form of objects and components.
//!
//! Objects: `A[(t,z),(t,z)]@s`, `A1[(t,z)]@s`, `A2[(t,z)]@s`,
//! `B[(t,z),(t,z)]@s`, where `@0` may be omitted. Sums are joined by `+`
//! and the zero object is `0`. Components: `Wing(t,s)`, `BandA(t,t',s)`,
//! `DWing(t,s)`, `BandB(t,t',s)`.

use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use crate::objects::{ComponentId, DObj, IndClass, IndObj, ObjectError};
use crate::order::{LPoint, OrderError, PosetSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("cannot parse {0:?} as an object literal")]
    Syntax(String),
    #[error("cannot parse {0:?} as a component literal")]
    ComponentSyntax(String),
    #[error(transparent)]
    Label(#[from] OrderError),
    #[error(transparent)]
    Object(#[from] ObjectError),
}

static OBJ: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"^(A1|A2|A|B)\[\s*\(\s*([^,()\s]+)\s*,\s*(-?\d+)\s*\)\s*(?:,\s*\(\s*([^,()\s]+)\s*,\s*(-?\d+)\s*\)\s*)?\](?:\s*@\s*(-?\d+))?$",
    )
    .expect("valid regex")
});

static COMP: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"^(Wing|BandA|DWing|BandB)\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)$")
        .expect("valid regex")
});

fn point(spec: &PosetSpec, label: &str, z: &str) -> Result<LPoint, LiteralError> {
    let t = spec.label_index(label)?;
    let z = z.parse().map_err(|_| LiteralError::Syntax(z.to_string()))?;
    Ok(LPoint::new(t, z))
}

pub fn parse_obj(spec: &PosetSpec, s: &str) -> Result<IndObj, LiteralError> {
    let s = s.trim();
    let caps = OBJ.captures(s).ok_or_else(|| LiteralError::Syntax(s.to_string()))?;
    let first = point(spec, &caps[2], &caps[3])?;
    let second = match (caps.get(4), caps.get(5)) {
        (Some(t), Some(z)) => Some(point(spec, t.as_str(), z.as_str())?),
        _ => None,
    };
    let cls = match (&caps[1], second) {
        ("A", Some(j)) => IndClass::A(first, j),
        ("B", Some(j)) => IndClass::B(first, j),
        ("A1", None) => IndClass::A1(first),
        ("A2", None) => IndClass::A2(first),
        _ => return Err(LiteralError::Syntax(s.to_string())),
    };
    cls.check(spec)?;
    let shift = match caps.get(6) {
        Some(m) => m.as_str().parse().map_err(|_| LiteralError::Syntax(s.to_string()))?,
        None => 0,
    };
    Ok(IndObj::new(cls, shift))
}

pub fn parse_dobj(spec: &PosetSpec, s: &str) -> Result<DObj, LiteralError> {
    let s = s.trim();
    if s == "0" {
        return Ok(DObj::zero());
    }
    s.split('+').map(|part| parse_obj(spec, part)).collect()
}

fn fmt_point(spec: &PosetSpec, p: LPoint) -> String {
    let label = spec.label(p.t).map_or_else(|| format!("#{}", p.t), str::to_string);
    format!("({label},{})", p.z)
}

pub fn format_class(spec: &PosetSpec, c: &IndClass) -> String {
    match *c {
        IndClass::A(i, j) => format!("A[{},{}]", fmt_point(spec, i), fmt_point(spec, j)),
        IndClass::B(i, j) => format!("B[{},{}]", fmt_point(spec, i), fmt_point(spec, j)),
        IndClass::A1(j) => format!("A1[{}]", fmt_point(spec, j)),
        IndClass::A2(j) => format!("A2[{}]", fmt_point(spec, j)),
    }
}

pub fn format_obj(spec: &PosetSpec, x: &IndObj) -> String {
    let base = format_class(spec, &x.cls);
    if x.shift == 0 {
        base
    } else {
        format!("{base}@{}", x.shift)
    }
}

pub fn format_dobj(spec: &PosetSpec, d: &DObj) -> String {
    if d.is_zero() {
        return "0".to_string();
    }
    d.summands().iter().map(|x| format_obj(spec, x)).collect::<Vec<_>>().join(" + ")
}

pub fn parse_component(spec: &PosetSpec, s: &str) -> Result<ComponentId, LiteralError> {
    let s = s.trim();
    let bad = || LiteralError::ComponentSyntax(s.to_string());
    let caps = COMP.captures(s).ok_or_else(bad)?;
    let shift_of = |m: &str| m.parse::<i64>().map_err(|_| bad());
    let c = match (&caps[1], caps.get(4)) {
        ("Wing", None) => ComponentId::Wing { t: spec.label_index(&caps[2])?, shift: shift_of(&caps[3])? },
        ("DWing", None) => ComponentId::DWing { t: spec.label_index(&caps[2])?, shift: shift_of(&caps[3])? },
        ("BandA", Some(s3)) => ComponentId::BandA {
            t: spec.label_index(&caps[2])?,
            t2: spec.label_index(&caps[3])?,
            shift: shift_of(s3.as_str())?,
        },
        ("BandB", Some(s3)) => ComponentId::BandB {
            t: spec.label_index(&caps[2])?,
            t2: spec.label_index(&caps[3])?,
            shift: shift_of(s3.as_str())?,
        },
        _ => return Err(bad()),
    };
    c.check(spec)?;
    Ok(c)
}

pub fn format_component(spec: &PosetSpec, c: &ComponentId) -> String {
    let l = |t: usize| spec.label(t).map_or_else(|| format!("#{t}"), str::to_string);
    match *c {
        ComponentId::Wing { t, shift } => format!("Wing({},{shift})", l(t)),
        ComponentId::DWing { t, shift } => format!("DWing({},{shift})", l(t)),
        ComponentId::BandA { t, t2, shift } => format!("BandA({},{},{shift})", l(t), l(t2)),
        ComponentId::BandB { t, t2, shift } => format!("BandB({},{},{shift})", l(t), l(t2)),
    }
}
