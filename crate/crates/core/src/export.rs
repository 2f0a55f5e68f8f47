//! Window-restricted AR components as DOT or JSON graphs.

use serde::Serialize;
use thiserror::Error;

use crate::literal::{format_component, format_obj};
use crate::model::{successors, tau};
use crate::objects::{ComponentId, IndClass, IndObj, ObjectError};
use crate::order::{Kind, PosetSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error(transparent)]
    Object(#[from] ObjectError),
    #[error("component {0} has no vertices in the window")]
    Empty(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeshGraph {
    pub component: String,
    pub shape: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    pub tau: Vec<(String, String)>,
}

/// Objects of `comp` whose endpoints lie in the window, sorted.
pub fn component_members(spec: &PosetSpec, comp: &ComponentId) -> Vec<IndObj> {
    let pts = spec.window_points();
    let shift = comp.shift();
    let mut classes = Vec::new();
    for (a, &i) in pts.iter().enumerate() {
        for &j in &pts[a..] {
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
    let mut out: Vec<IndObj> = classes
        .into_iter()
        .filter(|c| c.support_in_window(spec) && c.component(shift) == *comp)
        .map(|c| c.at(shift))
        .collect();
    out.sort();
    out
}

pub fn mesh(spec: &PosetSpec, comp: &ComponentId) -> Result<MeshGraph, ExportError> {
    comp.check(spec)?;
    let name = format_component(spec, comp);
    let members = component_members(spec, comp);
    if members.is_empty() {
        return Err(ExportError::Empty(name));
    }
    let lit = |x: &IndObj| format_obj(spec, x);
    let mut arrows = Vec::new();
    let mut tau_edges = Vec::new();
    for x in &members {
        for s in successors(&x.cls) {
            let y = s.at(x.shift);
            if members.binary_search(&y).is_ok() {
                arrows.push((lit(x), lit(&y)));
            }
        }
        let t = tau(x);
        if members.binary_search(&t).is_ok() {
            tau_edges.push((lit(x), lit(&t)));
        }
    }
    Ok(MeshGraph {
        component: name,
        shape: comp.shape().to_string(),
        vertices: members.iter().map(lit).collect(),
        arrows,
        tau: tau_edges,
    })
}

pub fn to_dot(g: &MeshGraph) -> String {
    let mut out = format!("digraph \"{}\" {{\n", g.component);
    out.push_str(&format!("  label=\"{} ({})\";\n", g.component, g.shape));
    out.push_str("  node [shape=plaintext];\n");
    for v in &g.vertices {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (a, b) in &g.arrows {
        out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    for (a, b) in &g.tau {
        out.push_str(&format!("  \"{a}\" -> \"{b}\" [style=dashed, constraint=false];\n"));
    }
    out.push_str("}\n");
    out
}
