//! Vertex- and edge-colored simple graphs, the constraint-system graphs
//! `G(M,b)` and `G_*(M_H,b)`, and vertex invariants used downstream.

mod build;
mod invariants;
mod io;
mod signs;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::decolor::{DecoratedVertexId, PathAssignment};
use crate::f2::{LinearSystem, SimpleGraph};

pub use build::{build_g, build_gstar};
pub use invariants::{vertex_invariants, Fingerprint};
pub use io::{from_json, to_dot, to_json};
pub use signs::{intersect_sorted, Sign, SignVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("constraint {0} touches no variable")]
    EmptyConstraint(usize),
    #[error("constraints {l} and {k} share {shared} variables; at most one is allowed")]
    SharedTooLarge { l: usize, k: usize, shared: usize },
    #[error("edge ({u}, {v}) is invalid in a graph with {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("color {0} is not in the graph's palette")]
    ColorNotInPalette(String),
    #[error("unknown color {0}")]
    UnknownColor(String),
    #[error("cannot parse color {0:?}")]
    BadColor(String),
    #[error("cannot parse vertex label {0:?}")]
    BadLabel(String),
    #[error("vertex ids must be 0..n in order; found {found} at position {position}")]
    BadVertexId { position: usize, found: usize },
    #[error("invalid graph document: {0}")]
    Json(String),
}

/// Color of a vertex or an edge.
///
/// Blocks and variables are stored 0-based and rendered 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColorTag {
    /// Vertex color `k`: the constraint a vertex belongs to.
    Vertex(usize),
    /// Edge inside block `k`, colored by `α △ β` on `S_k`.
    Intra { block: usize, delta: SignVector },
    /// Edge between blocks `low < high`, colored by `α △ β` restricted to
    /// `S_low ∩ S_high`. The block pair is part of the color.
    Inter {
        low: usize,
        high: usize,
        delta: SignVector,
    },
    /// The two shared colors of `G_*`: `α_i β_i` on the single shared variable.
    Shared(Sign),
    Plain(u32),
}

impl ColorTag {
    /// Parses the canonical rendering. Block-scoped colors need the system
    /// to recover their variable domains.
    pub fn parse(s: &str, system: Option<&LinearSystem>) -> Result<Self, GraphError> {
        let bad = || GraphError::BadColor(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let block = |p: &str| -> Result<usize, GraphError> {
            let k: usize = p.parse().map_err(|_| bad())?;
            match system {
                Some(sys) if k >= 1 && k <= sys.constraints() => Ok(k - 1),
                Some(_) => Err(bad()),
                None if k >= 1 => Ok(k - 1),
                None => Err(bad()),
            }
        };
        match parts.as_slice() {
            ["v", k] => Ok(ColorTag::Vertex(block(k)?)),
            ["intra", k, pat] => {
                let k = block(k)?;
                let sys = system.ok_or_else(bad)?;
                let delta = SignVector::from_pattern(&sys.support(k), pat).ok_or_else(bad)?;
                Ok(ColorTag::Intra { block: k, delta })
            }
            ["inter", l, k, pat] => {
                let (l, k) = (block(l)?, block(k)?);
                let sys = system.ok_or_else(bad)?;
                let shared = intersect_sorted(&sys.support(l), &sys.support(k));
                let delta = SignVector::from_pattern(&shared, pat).ok_or_else(bad)?;
                Ok(ColorTag::Inter {
                    low: l,
                    high: k,
                    delta,
                })
            }
            ["shared", "-1"] => Ok(ColorTag::Shared(Sign::Minus)),
            ["shared", "+1"] | ["shared", "1"] => Ok(ColorTag::Shared(Sign::Plus)),
            ["plain", j] => Ok(ColorTag::Plain(j.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ColorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorTag::Vertex(k) => write!(f, "v:{}", k + 1),
            ColorTag::Intra { block, delta } => write!(f, "intra:{}:{}", block + 1, delta.pattern()),
            ColorTag::Inter { low, high, delta } => {
                write!(f, "inter:{}:{}:{}", low + 1, high + 1, delta.pattern())
            }
            ColorTag::Shared(s) => write!(f, "shared:{s}"),
            ColorTag::Plain(j) => write!(f, "plain:{j}"),
        }
    }
}

impl fmt::Debug for ColorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vertex `(k, α)` of `G(M,b)`: constraint `k` and a local solution `α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub block: usize,
    pub assignment: SignVector,
}

/// What a vertex stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Plain,
    Block(VertexLabel),
    Decorated(DecoratedVertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub kind: VertexKind,
    pub color: Option<ColorTag>,
}

impl Vertex {
    pub fn plain(color: Option<ColorTag>) -> Self {
        Self {
            kind: VertexKind::Plain,
            color,
        }
    }
}

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Option<ColorTag>,
}

/// The declared vertex and edge colors, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Palette {
    pub vertex: Vec<ColorTag>,
    pub edge: Vec<ColorTag>,
}

impl Palette {
    pub fn new(mut vertex: Vec<ColorTag>, mut edge: Vec<ColorTag>) -> Self {
        vertex.sort();
        vertex.dedup();
        edge.sort();
        edge.dedup();
        Self { vertex, edge }
    }
}

/// Provenance carried alongside a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphMeta {
    /// `"G"`, `"Gstar"`, `"decolor-vertices"`, `"decolor-edges"`, or free text.
    pub construction: String,
    pub system: Option<LinearSystem>,
    /// The graph `H` an incidence system came from; its edge order is the
    /// variable order.
    pub incidence_graph: Option<SimpleGraph>,
    pub palette: Palette,
    pub assignment: Option<PathAssignment>,
}

/// A simple graph with optional colors on vertices and edges.
#[derive(Clone)]
pub struct ColoredGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    meta: GraphMeta,
    adjacency: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.meta == other.meta
    }
}

impl Eq for ColoredGraph {}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("construction", &self.meta.construction)
            .field("vertices", &self.vertices.len())
            .field("edges", &self.edges.len())
            .finish()
    }
}

impl ColoredGraph {
    /// Validates simplicity and endpoints. An empty palette in `meta` is
    /// filled from the colors in use; a non-empty one must contain them.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<Edge>,
        mut meta: GraphMeta,
    ) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            if e.u >= n || e.v >= n || e.u == e.v {
                return Err(GraphError::InvalidEdge { u: e.u, v: e.v, n });
            }
            let (u, v) = (e.u.min(e.v), e.u.max(e.v));
            if edge_index.insert((u, v), i).is_some() {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push(Edge {
                u,
                v,
                color: e.color,
            });
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }

        if meta.palette.vertex.is_empty() && meta.palette.edge.is_empty() {
            meta.palette = Palette::new(
                vertices.iter().filter_map(|v| v.color.clone()).collect(),
                normalized.iter().filter_map(|e| e.color.clone()).collect(),
            );
        } else {
            for c in vertices.iter().filter_map(|v| v.color.as_ref()) {
                if meta.palette.vertex.binary_search(c).is_err() {
                    return Err(GraphError::ColorNotInPalette(c.to_string()));
                }
            }
            for c in normalized.iter().filter_map(|e| e.color.as_ref()) {
                if meta.palette.edge.binary_search(c).is_err() {
                    return Err(GraphError::ColorNotInPalette(c.to_string()));
                }
            }
        }

        Ok(Self {
            vertices,
            edges: normalized,
            meta,
            adjacency,
            edge_index,
        })
    }

    /// Uncolored graph from a vertex count and an edge list.
    pub fn uncolored(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::new(
            vec![Vertex::plain(None); n],
            edges
                .iter()
                .map(|&(u, v)| Edge { u, v, color: None })
                .collect(),
            GraphMeta::default(),
        )
    }

    pub fn from_simple(h: &SimpleGraph) -> Self {
        Self::uncolored(h.vertex_count(), h.edges()).expect("simple graphs are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn palette(&self) -> &Palette {
        &self.meta.palette
    }

    pub fn vertex_color(&self, v: usize) -> Option<&ColorTag> {
        self.vertices[v].color.as_ref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index.contains_key(&(u.min(v), u.max(v)))
    }

    /// `None` for a non-edge, `Some(color)` for an edge.
    pub fn edge_color(&self, u: usize, v: usize) -> Option<Option<&ColorTag>> {
        self.edge_index
            .get(&(u.min(v), u.max(v)))
            .map(|&i| self.edges[i].color.as_ref())
    }

    /// Whether any vertex or edge carries a color.
    pub fn is_colored(&self) -> bool {
        self.vertices.iter().any(|v| v.color.is_some())
            || self.edges.iter().any(|e| e.color.is_some())
    }

    /// The same graph with a different palette declaration.
    pub(crate) fn with_meta(mut self, meta: GraphMeta) -> Self {
        self.meta = meta;
        self
    }

    /// 0/1 adjacency matrix of the edges whose color is `color`; `None`
    /// selects uncolored edges.
    pub fn adjacency_matrix(&self, color: Option<&ColorTag>) -> Result<Vec<Vec<u8>>, GraphError> {
        if let Some(c) = color {
            if self.meta.palette.edge.binary_search(c).is_err() {
                return Err(GraphError::UnknownColor(c.to_string()));
            }
        }
        let n = self.vertex_count();
        let mut a = vec![vec![0u8; n]; n];
        for e in self.edges.iter().filter(|e| e.color.as_ref() == color) {
            a[e.u][e.v] = 1;
            a[e.v][e.u] = 1;
        }
        Ok(a)
    }

    /// Adjacency matrix ignoring edge colors.
    pub fn decolored_adjacency(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u8; n]; n];
        for e in &self.edges {
            a[e.u][e.v] = 1;
            a[e.v][e.u] = 1;
        }
        a
    }

    /// Edge colors in use (plus `None` if some edge is uncolored), sorted.
    pub fn edge_color_classes(&self) -> Vec<Option<ColorTag>> {
        let mut classes: Vec<Option<ColorTag>> =
            self.edges.iter().map(|e| e.color.clone()).collect();
        classes.sort();
        classes.dedup();
        classes
    }

    /// Indices of vertices of block `k` (vertices labelled `(k, α)`).
    pub fn block_vertices(&self, k: usize) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| matches!(&v.kind, VertexKind::Block(l) if l.block == k))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn block_label(&self, v: usize) -> Option<&VertexLabel> {
        match &self.vertices[v].kind {
            VertexKind::Block(l) => Some(l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            ColoredGraph::uncolored(2, &[(0, 0)]),
            Err(GraphError::InvalidEdge { .. })
        ));
        assert!(matches!(
            ColoredGraph::uncolored(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        assert!(ColoredGraph::uncolored(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn palette_must_cover_colors() {
        let meta = GraphMeta {
            palette: Palette::new(vec![], vec![ColorTag::Plain(1)]),
            ..GraphMeta::default()
        };
        let err = ColoredGraph::new(
            vec![Vertex::plain(None); 2],
            vec![Edge {
                u: 0,
                v: 1,
                color: Some(ColorTag::Plain(2)),
            }],
            meta,
        )
        .unwrap_err();
        assert_eq!(err, GraphError::ColorNotInPalette("plain:2".into()));
    }

    #[test]
    fn single_edge_adjacency() {
        let g = ColoredGraph::new(
            vec![Vertex::plain(None); 2],
            vec![Edge {
                u: 1,
                v: 0,
                color: Some(ColorTag::Shared(Sign::Minus)),
            }],
            GraphMeta::default(),
        )
        .unwrap();
        let minus = ColorTag::Shared(Sign::Minus);
        assert_eq!(g.adjacency_matrix(Some(&minus)).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            g.adjacency_matrix(Some(&ColorTag::Plain(0))),
            Err(GraphError::UnknownColor(_))
        ));
        assert_eq!(g.edge_color(0, 1), Some(Some(&minus)));
        assert_eq!(g.edge_color(0, 0), None);
    }

    #[test]
    fn color_rendering_round_trips() {
        let sys = crate::f2::parse_system("11100;10011|01").unwrap();
        let tags = [
            ColorTag::Vertex(1),
            ColorTag::Intra {
                block: 0,
                delta: SignVector::from_pattern(&[0, 1, 2], "+--").unwrap(),
            },
            ColorTag::Inter {
                low: 0,
                high: 1,
                delta: SignVector::from_pattern(&[0], "-").unwrap(),
            },
            ColorTag::Shared(Sign::Minus),
            ColorTag::Shared(Sign::Plus),
            ColorTag::Plain(7),
        ];
        for t in tags {
            let s = t.to_string();
            assert_eq!(ColorTag::parse(&s, Some(&sys)).unwrap(), t, "{s}");
        }
        assert_eq!(ColorTag::Vertex(0).to_string(), "v:1");
        assert_eq!(ColorTag::Shared(Sign::Minus).to_string(), "shared:-1");
        assert!(ColorTag::parse("intra:1:+--", None).is_err());
        assert!(ColorTag::parse("v:9", Some(&sys)).is_err());
        assert!(ColorTag::parse("bogus", None).is_err());
    }
}
