//! Terminal component groups and the class graph.

use serde::Serialize;

use super::registry::ClassRegistry;
use super::transport::{transport, Completeness, TransportOptions};
use super::ClassSet;
use crate::algebra::Perm;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

const MAX_STAGES: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub classes: Vec<String>,
    pub delta_order: u128,
    pub completeness: Completeness,
    /// Whether the order-`p` elements of this stage's group were scanned
    /// exhaustively when forming the next stage.
    pub exhaustive_scan: bool,
}

pub struct DeltaChain {
    pub stages: Vec<Stage>,
    /// The last computed group of the chain.
    pub terminal: FiniteGroup,
    /// True when the chain stabilized; false when a stage failed.
    pub stable: bool,
    /// The stage error that cut the chain short, if any.
    pub error: Option<String>,
    pub warnings: Vec<String>,
}

impl DeltaChain {
    /// Index of the last stage that completed.
    pub fn last_complete(&self) -> usize {
        self.stages.len().saturating_sub(1)
    }
}

/// Iterates `D_{i+1}` = classes of order-`p` elements meeting `Δ(s, D_i)`
/// until the class set stops growing or the whole group is reached.
pub fn delta_infinity(
    reg: &mut ClassRegistry,
    s: &Perm,
    d1: &ClassSet,
    opts: &TransportOptions,
) -> Result<DeltaChain> {
    let group = reg.group();
    let mut d = d1.clone();
    let mut stages: Vec<Stage> = Vec::new();
    let mut terminal: Option<FiniteGroup> = None;
    let mut warnings = Vec::new();
    for _ in 0..MAX_STAGES {
        let r = match transport(reg, &d, s, opts) {
            Ok(r) => r,
            Err(e @ Error::Budget { .. }) if !stages.is_empty() => {
                return Ok(DeltaChain {
                    stages,
                    terminal: terminal.expect("set with the first stage"),
                    stable: false,
                    error: Some(e.to_string()),
                    warnings,
                });
            }
            Err(e) => return Err(e),
        };
        warnings.extend(r.warnings.iter().cloned());
        let whole = group.order_is_exact() && r.delta.order() == group.order();
        let (elems, exhaustive) = if whole { (Vec::new(), true) } else { reg.order_p_elements(&r.delta)? };
        let mut ids: Vec<usize> = d.ids().to_vec();
        for x in &elems {
            ids.push(reg.classify(x)?);
        }
        let next = ClassSet::from_ids(ids);
        stages.push(Stage {
            classes: d.ids().iter().map(|&i| reg.label(i).to_string()).collect(),
            delta_order: r.delta.order(),
            completeness: r.completeness,
            exhaustive_scan: exhaustive,
        });
        terminal = Some(r.delta);
        if whole || next == d {
            return Ok(DeltaChain {
                stages,
                terminal: terminal.expect("just set"),
                stable: true,
                error: None,
                warnings,
            });
        }
        d = next;
    }
    Err(Error::Internal("terminal component chain did not stabilize".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassVertex {
    pub label: String,
    pub rep: String,
    pub delta_order: Option<u128>,
    pub black: bool,
    pub completeness: Option<Completeness>,
    pub annotation: Option<String>,
    /// Whether a directed path leads to a black vertex.
    pub reaches_black: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassGraphReport {
    pub group_order: u128,
    pub vertices: Vec<ClassVertex>,
    /// Directed edges as (source, target) vertex indices.
    pub edges: Vec<(usize, usize)>,
    /// Whether the list of classes is known to be complete.
    pub classes_complete: bool,
}

/// One vertex per class of elements of order `p`: black when its component
/// group is the whole group; otherwise an edge to the class of every other
/// order-`p` element of the computed component group.
pub fn class_graph(reg: &mut ClassRegistry, opts: &TransportOptions) -> Result<ClassGraphReport> {
    let group = reg.group();
    let g_order = group.order();
    let (mut ids, classes_complete) = reg.all_classes()?;
    let mut vertices = Vec::new();
    let mut raw_edges: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let id = ids[i];
        let rep = reg.rep(id).clone();
        let d = ClassSet::from_ids(vec![id]);
        let mut v = ClassVertex {
            label: reg.label(id).to_string(),
            rep: rep.encode_hex(),
            delta_order: None,
            black: false,
            completeness: None,
            annotation: None,
            reaches_black: false,
        };
        match transport(reg, &d, &rep, opts) {
            Ok(r) => {
                v.delta_order = Some(r.delta.order());
                v.completeness = Some(r.completeness);
                v.black = group.order_is_exact() && r.delta.order() == g_order;
                if !v.black {
                    let (elems, _) = reg.order_p_elements(&r.delta)?;
                    for x in &elems {
                        let k = reg.classify(x)?;
                        if k == id {
                            continue;
                        }
                        if !ids.contains(&k) {
                            ids.push(k);
                        }
                        raw_edges.push((id, k));
                    }
                }
                if !r.warnings.is_empty() {
                    v.annotation = Some(r.warnings.join("; "));
                }
            }
            Err(e @ (Error::Budget { .. } | Error::Unsupported(_))) => {
                v.annotation = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        vertices.push(v);
        i += 1;
    }
    let pos = |k: usize| ids.iter().position(|&x| x == k).expect("registered");
    let mut edges: Vec<(usize, usize)> = raw_edges.into_iter().map(|(a, b)| (pos(a), pos(b))).collect();
    edges.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| vertices[a.1].rep.cmp(&vertices[b.1].rep)));
    edges.dedup();
    let mut changed = true;
    for v in vertices.iter_mut() {
        v.reaches_black = v.black;
    }
    while changed {
        changed = false;
        for &(a, b) in &edges {
            if vertices[b].reaches_black && !vertices[a].reaches_black {
                vertices[a].reaches_black = true;
                changed = true;
            }
        }
    }
    Ok(ClassGraphReport { group_order: g_order, vertices, edges, classes_complete })
}

impl ClassGraphReport {
    pub fn white_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.black).count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph classes {\n  node [style=filled];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let order = v.delta_order.map(|o| o.to_string()).unwrap_or_else(|| "?".into());
            let (fill, font) = if v.black { ("black", "white") } else { ("white", "black") };
            out.push_str(&format!(
                "  v{i} [label=\"{}\\n|Δ|={order}\", fillcolor={fill}, fontcolor={font}];\n",
                v.label.replace('"', "\\\"")
            ));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  v{a} -> v{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}
