//! Graph JSON and DOT rendering.
//!
//! JSON layout:
//! `{"vertices":[{"id":0,"color":"v:1","label":"blk:1:+++"}],
//!   "edges":[{"u":0,"v":1,"color":"intra:1:+--"}],
//!   "meta":{"construction":"Gstar","system":"...","palette":{...}}}`.
//! Block-scoped colors and labels are resolved against `meta.system`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{
    ColorTag, ColoredGraph, Edge, GraphError, GraphMeta, Palette, SignVector, Vertex, VertexKind,
    VertexLabel,
};
use crate::decolor::{DecoratedVertexId, PathAssignment};
use crate::f2::{parse_system, LinearSystem, SimpleGraph};

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
    #[serde(default)]
    meta: MetaDoc,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: usize,
    v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<String>,
}

#[derive(Serialize, Deserialize, Default)]
struct MetaDoc {
    #[serde(default)]
    construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    system: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    incidence_graph: Option<SimpleGraph>,
    #[serde(default)]
    palette: PaletteDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    assignment: Option<AssignmentDoc>,
}

#[derive(Serialize, Deserialize, Default)]
struct PaletteDoc {
    vertex: Vec<String>,
    edge: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentDoc {
    vertex_lengths: BTreeMap<String, usize>,
    edge_lengths: BTreeMap<String, usize>,
    c0: String,
}

fn render_label(kind: &VertexKind) -> Option<String> {
    match kind {
        VertexKind::Plain => None,
        VertexKind::Block(l) => Some(format!("blk:{}:{}", l.block + 1, l.assignment.pattern())),
        VertexKind::Decorated(d) => Some(d.to_string()),
    }
}

fn parse_label(s: &str, system: Option<&LinearSystem>) -> Result<VertexKind, GraphError> {
    let bad = || GraphError::BadLabel(s.to_string());
    if let Some(rest) = s.strip_prefix("blk:") {
        let (k, pattern) = rest.split_once(':').ok_or_else(bad)?;
        let k: usize = k.parse().map_err(|_| bad())?;
        let sys = system.ok_or_else(bad)?;
        if k == 0 || k > sys.constraints() {
            return Err(bad());
        }
        let assignment = SignVector::from_pattern(&sys.support(k - 1), pattern).ok_or_else(bad)?;
        return Ok(VertexKind::Block(VertexLabel {
            block: k - 1,
            assignment,
        }));
    }
    s.parse::<DecoratedVertexId>()
        .map(VertexKind::Decorated)
        .map_err(|_| bad())
}

fn colors(list: &[ColorTag]) -> Vec<String> {
    list.iter().map(ToString::to_string).collect()
}

/// Serializes to the graph JSON format (pretty-printed, deterministic).
pub fn to_json(g: &ColoredGraph) -> String {
    let meta = g.meta();
    let doc = GraphDoc {
        vertices: g
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, v)| VertexDoc {
                id,
                color: v.color.as_ref().map(ToString::to_string),
                label: render_label(&v.kind),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                u: e.u,
                v: e.v,
                color: e.color.as_ref().map(ToString::to_string),
            })
            .collect(),
        meta: MetaDoc {
            construction: meta.construction.clone(),
            system: meta.system.as_ref().map(LinearSystem::to_text),
            incidence_graph: meta.incidence_graph.clone(),
            palette: PaletteDoc {
                vertex: colors(&meta.palette.vertex),
                edge: colors(&meta.palette.edge),
            },
            assignment: meta.assignment.as_ref().map(|a| AssignmentDoc {
                vertex_lengths: a
                    .vertex_lengths
                    .iter()
                    .map(|(c, &n)| (c.to_string(), n))
                    .collect(),
                edge_lengths: a
                    .edge_lengths
                    .iter()
                    .map(|(c, &n)| (c.to_string(), n))
                    .collect(),
                c0: a.c0.to_string(),
            }),
        },
    };
    serde_json::to_string_pretty(&doc).expect("graph documents always serialize")
}

/// Parses the graph JSON format. Exact inverse of [`to_json`].
pub fn from_json(text: &str) -> Result<ColoredGraph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let system = doc
        .meta
        .system
        .as_deref()
        .map(parse_system)
        .transpose()
        .map_err(|e| GraphError::Json(format!("meta.system: {e}")))?;
    let sys = system.as_ref();
    let color = |s: &Option<String>| s.as_deref().map(|s| ColorTag::parse(s, sys)).transpose();
    let color_list = |list: &[String]| -> Result<Vec<ColorTag>, GraphError> {
        list.iter().map(|s| ColorTag::parse(s, sys)).collect()
    };

    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (position, v) in doc.vertices.iter().enumerate() {
        if v.id != position {
            return Err(GraphError::BadVertexId {
                position,
                found: v.id,
            });
        }
        let kind = match &v.label {
            None => VertexKind::Plain,
            Some(s) => parse_label(s, sys)?,
        };
        vertices.push(Vertex {
            kind,
            color: color(&v.color)?,
        });
    }
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            Ok(Edge {
                u: e.u,
                v: e.v,
                color: color(&e.color)?,
            })
        })
        .collect::<Result<Vec<_>, GraphError>>()?;

    let assignment = match &doc.meta.assignment {
        None => None,
        Some(a) => {
            let lengths = |m: &BTreeMap<String, usize>| -> Result<BTreeMap<ColorTag, usize>, GraphError> {
                m.iter()
                    .map(|(c, &n)| Ok((ColorTag::parse(c, sys)?, n)))
                    .collect()
            };
            Some(PathAssignment {
                vertex_lengths: lengths(&a.vertex_lengths)?,
                edge_lengths: lengths(&a.edge_lengths)?,
                c0: ColorTag::parse(&a.c0, sys)?,
            })
        }
    };
    let meta = GraphMeta {
        construction: doc.meta.construction,
        system: system.clone(),
        incidence_graph: doc.meta.incidence_graph,
        palette: Palette::new(
            color_list(&doc.meta.palette.vertex)?,
            color_list(&doc.meta.palette.edge)?,
        ),
        assignment,
    };
    let palette = meta.palette.clone();
    let g = ColoredGraph::new(vertices, edges, meta.clone())?;
    // An empty declared palette stays empty on the way back in.
    if palette.vertex.is_empty() && palette.edge.is_empty() {
        return Ok(g.with_meta(meta));
    }
    Ok(g)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering; colors become `label` attributes.
pub fn to_dot(g: &ColoredGraph) -> String {
    let mut out = String::new();
    let name = if g.meta().construction.is_empty() {
        "G".to_string()
    } else {
        g.meta().construction.clone()
    };
    writeln!(out, "graph \"{}\" {{", dot_escape(&name)).unwrap();
    for (i, v) in g.vertices().iter().enumerate() {
        let mut attrs = Vec::new();
        let label = match (render_label(&v.kind), &v.color) {
            (Some(l), Some(c)) => Some(format!("{l}\\n{c}")),
            (Some(l), None) => Some(l),
            (None, Some(c)) => Some(c.to_string()),
            (None, None) => None,
        };
        if let Some(l) = label {
            attrs.push(format!("label=\"{}\"", dot_escape(&l)));
        }
        if attrs.is_empty() {
            writeln!(out, "  {i};").unwrap();
        } else {
            writeln!(out, "  {i} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for e in g.edges() {
        match &e.color {
            Some(c) => writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, dot_escape(&c.to_string())),
            None => writeln!(out, "  {} -- {};", e.u, e.v),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}
