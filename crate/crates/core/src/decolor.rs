//! Decoloring: `G → G′` replaces vertex colors by attached paths, `G′ → G″`
//! replaces edge colors by subdividing each colored edge and attaching a
//! path to the subdivision vertex.
//!
//! Vertices of `G′` and `G″` carry structured [`DecoratedVertexId`]s so a
//! certificate over `G` can be lifted entry by entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graphs::{ColorTag, ColoredGraph, Edge, GraphError, GraphMeta, Palette, Vertex, VertexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecolorError {
    #[error("vertex color {0} has no path length")]
    MissingVertexLength(String),
    #[error("edge color {0} has no path length")]
    MissingEdgeLength(String),
    #[error("path lengths must be distinct; {0} and {1} share one")]
    NotInjective(String, String),
    #[error("the preserved color {0} must not carry an edge path length")]
    C0HasLength(String),
    #[error("input already has vertex colors; expected a vertex-decolored graph")]
    VertexColorsPresent,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Path lengths `n_c` per vertex color and `m_c` per edge color, plus the
/// preserved edge color `c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAssignment {
    pub vertex_lengths: BTreeMap<ColorTag, usize>,
    pub edge_lengths: BTreeMap<ColorTag, usize>,
    pub c0: ColorTag,
}

impl PathAssignment {
    /// Checks that both length maps are injective and that `c0` has no
    /// edge length.
    pub fn validate(&self) -> Result<(), DecolorError> {
        fn injective(m: &BTreeMap<ColorTag, usize>) -> Result<(), DecolorError> {
            let mut seen: BTreeMap<usize, &ColorTag> = BTreeMap::new();
            for (c, n) in m {
                if let Some(prev) = seen.insert(*n, c) {
                    return Err(DecolorError::NotInjective(prev.to_string(), c.to_string()));
                }
            }
            Ok(())
        }
        injective(&self.vertex_lengths)?;
        injective(&self.edge_lengths)?;
        if self.edge_lengths.contains_key(&self.c0) {
            return Err(DecolorError::C0HasLength(self.c0.to_string()));
        }
        Ok(())
    }
}

/// Provenance of a vertex in `G′` or `G″`. Indices refer to vertices of the
/// original colored graph; `Subdivision(a, b)` and `EdgePath(a, b, i)` name
/// the subdivided edge `{a, b}` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedVertexId {
    Original(usize),
    VertexPath(usize, usize),
    Subdivision(usize, usize),
    EdgePath(usize, usize, usize),
}

impl DecoratedVertexId {
    /// Path index: `0` for original and subdivision vertices.
    pub fn depth(self) -> usize {
        match self {
            Self::Original(_) | Self::Subdivision(..) => 0,
            Self::VertexPath(_, i) | Self::EdgePath(_, _, i) => i,
        }
    }
}

impl fmt::Display for DecoratedVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Original(v) => write!(f, "orig:{v}"),
            Self::VertexPath(v, i) => write!(f, "vpath:{v}:{i}"),
            Self::Subdivision(a, b) => write!(f, "sub:{a}-{b}"),
            Self::EdgePath(a, b, i) => write!(f, "epath:{a}-{b}:{i}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse decorated vertex id {0:?}")]
pub struct DecoratedIdError(String);

impl FromStr for DecoratedVertexId {
    type Err = DecoratedIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DecoratedIdError(s.to_string());
        let num = |p: &str| p.parse::<usize>().map_err(|_| bad());
        let edge = |p: &str| -> Result<(usize, usize), DecoratedIdError> {
            let (a, b) = p.split_once('-').ok_or_else(bad)?;
            Ok((num(a)?, num(b)?))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let id = match parts.as_slice() {
            ["orig", v] => Self::Original(num(v)?),
            ["vpath", v, i] => Self::VertexPath(num(v)?, num(i)?),
            ["sub", e] => {
                let (a, b) = edge(e)?;
                Self::Subdivision(a, b)
            }
            ["epath", e, i] => {
                let (a, b) = edge(e)?;
                Self::EdgePath(a, b, num(i)?)
            }
            _ => return Err(bad()),
        };
        match id {
            Self::VertexPath(_, 0) | Self::EdgePath(_, _, 0) => Err(bad()),
            _ => Ok(id),
        }
    }
}

/// Numbers vertex colors `0, 1, 2, …` and edge colors other than `c0`
/// `0, 1, 2, …`, both in sorted palette order.
pub fn canonical_assignment(g: &ColoredGraph, c0: &ColorTag) -> PathAssignment {
    let palette = g.palette();
    PathAssignment {
        vertex_lengths: palette.vertex.iter().cloned().zip(0..).collect(),
        edge_lengths: palette
            .edge
            .iter()
            .filter(|c| *c != c0)
            .cloned()
            .zip(0..)
            .collect(),
        c0: c0.clone(),
    }
}

fn original_id(g: &ColoredGraph, v: usize) -> DecoratedVertexId {
    match g.vertices()[v].kind {
        VertexKind::Decorated(d) => d,
        _ => DecoratedVertexId::Original(v),
    }
}

/// Builds `G′`: every vertex `v` of color `c` gets a pendant path of
/// `n_c` new vertices joined by `c0`-colored edges, then vertex colors are
/// dropped. Original vertices keep their indices.
pub fn decolor_vertices(g: &ColoredGraph, pa: &PathAssignment) -> Result<ColoredGraph, DecolorError> {
    pa.validate()?;
    let n = g.vertex_count();
    let mut vertices: Vec<Vertex> = (0..n)
        .map(|v| Vertex {
            kind: VertexKind::Decorated(DecoratedVertexId::Original(v)),
            color: None,
        })
        .collect();
    let mut edges: Vec<Edge> = g.edges().to_vec();
    for v in 0..n {
        let Some(c) = g.vertex_color(v) else {
            continue;
        };
        let len = *pa
            .vertex_lengths
            .get(c)
            .ok_or_else(|| DecolorError::MissingVertexLength(c.to_string()))?;
        let mut prev = v;
        for i in 1..=len {
            let id = vertices.len();
            vertices.push(Vertex {
                kind: VertexKind::Decorated(DecoratedVertexId::VertexPath(v, i)),
                color: None,
            });
            edges.push(Edge {
                u: prev,
                v: id,
                color: Some(pa.c0.clone()),
            });
            prev = id;
        }
    }

    let mut edge_palette = g.palette().edge.clone();
    edge_palette.push(pa.c0.clone());
    let meta = GraphMeta {
        construction: "decolor-vertices".into(),
        system: g.meta().system.clone(),
        incidence_graph: g.meta().incidence_graph.clone(),
        palette: Palette::new(Vec::new(), edge_palette),
        assignment: Some(pa.clone()),
    };
    Ok(ColoredGraph::new(vertices, edges, meta)?)
}

/// Builds `G″` from a vertex-decolored graph: each edge `{a, b}` of color
/// `c ≠ c0` becomes `a - e₀ - b` with a pendant path `e₀ - e₁ - … - e_{m_c}`;
/// `c0` edges stay. The result has no colors.
pub fn decolor_edges(gp: &ColoredGraph, pa: &PathAssignment) -> Result<ColoredGraph, DecolorError> {
    pa.validate()?;
    if gp.vertices().iter().any(|v| v.color.is_some()) {
        return Err(DecolorError::VertexColorsPresent);
    }
    let mut vertices: Vec<Vertex> = gp.vertices().to_vec();
    let mut edges = Vec::with_capacity(gp.edge_count());
    let plain = |u, v| Edge { u, v, color: None };
    for e in gp.edges() {
        let c = match &e.color {
            Some(c) if *c != pa.c0 => c,
            _ => {
                edges.push(plain(e.u, e.v));
                continue;
            }
        };
        let len = *pa
            .edge_lengths
            .get(c)
            .ok_or_else(|| DecolorError::MissingEdgeLength(c.to_string()))?;
        let (a, b) = (original_index(gp, e.u), original_index(gp, e.v));
        let (a, b) = (a.min(b), a.max(b));
        let e0 = vertices.len();
        vertices.push(Vertex {
            kind: VertexKind::Decorated(DecoratedVertexId::Subdivision(a, b)),
            color: None,
        });
        edges.push(plain(e.u, e0));
        edges.push(plain(e.v, e0));
        let mut prev = e0;
        for i in 1..=len {
            let id = vertices.len();
            vertices.push(Vertex {
                kind: VertexKind::Decorated(DecoratedVertexId::EdgePath(a, b, i)),
                color: None,
            });
            edges.push(plain(prev, id));
            prev = id;
        }
    }
    let meta = GraphMeta {
        construction: "decolor-edges".into(),
        system: gp.meta().system.clone(),
        incidence_graph: gp.meta().incidence_graph.clone(),
        palette: Palette::default(),
        assignment: Some(pa.clone()),
    };
    Ok(ColoredGraph::new(vertices, edges, meta)?)
}

fn original_index(g: &ColoredGraph, v: usize) -> usize {
    match original_id(g, v) {
        DecoratedVertexId::Original(o) => o,
        _ => v,
    }
}

/// `G′` and `G″` under the canonical assignment for `c0`.
pub fn decolor_canonical(
    g: &ColoredGraph,
    c0: &ColorTag,
) -> Result<(ColoredGraph, ColoredGraph), DecolorError> {
    let pa = canonical_assignment(g, c0);
    let gp = decolor_vertices(g, &pa)?;
    let gpp = decolor_edges(&gp, &pa)?;
    Ok((gp, gpp))
}

/// Vertices of degree below `d`; empty when the bound holds everywhere.
pub fn check_min_degree(g: &ColoredGraph, d: usize) -> Result<(), Vec<usize>> {
    let low: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) < d).collect();
    if low.is_empty() {
        Ok(())
    } else {
        Err(low)
    }
}

/// Two same-colored edges meeting at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingViolation {
    pub color: ColorTag,
    pub vertex: usize,
}

impl fmt::Display for MatchingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "color {} has two edges at vertex {}", self.color, self.vertex)
    }
}

/// Checks that every edge color other than `c0` is a matching. Reports the
/// first violation in edge order.
pub fn check_matchings(gp: &ColoredGraph, c0: &ColorTag) -> Result<(), MatchingViolation> {
    let mut used: BTreeSet<(&ColorTag, usize)> = BTreeSet::new();
    for e in gp.edges() {
        let Some(c) = e.color.as_ref().filter(|c| *c != c0) else {
            continue;
        };
        for v in [e.u, e.v] {
            if !used.insert((c, v)) {
                return Err(MatchingViolation {
                    color: c.clone(),
                    vertex: v,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{incidence_system, BitVec, SimpleGraph};
    use crate::graphs::{build_gstar, vertex_invariants, Sign};

    const BLACK: ColorTag = ColorTag::Plain(0);
    const YELLOW: ColorTag = ColorTag::Plain(1);
    const GREEN: ColorTag = ColorTag::Plain(2);
    const BLACK_EDGE: ColorTag = ColorTag::Plain(10);
    const BLUE_EDGE: ColorTag = ColorTag::Plain(11);
    const RED_EDGE: ColorTag = ColorTag::Plain(12);

    /// K4 drawn at angles 90, 210, 330 and the center 0.
    fn figure_graph() -> ColoredGraph {
        let vertices = [YELLOW, GREEN, YELLOW, BLACK]
            .into_iter()
            .map(|c| Vertex::plain(Some(c)))
            .collect();
        let e = |u, v, c: ColorTag| Edge { u, v, color: Some(c) };
        let edges = vec![
            e(2, 3, BLACK_EDGE),
            e(0, 1, BLACK_EDGE),
            e(0, 2, BLUE_EDGE),
            e(1, 3, BLUE_EDGE),
            e(0, 3, RED_EDGE),
            e(1, 2, RED_EDGE),
        ];
        ColoredGraph::new(vertices, edges, GraphMeta::default()).unwrap()
    }

    fn figure_assignment() -> PathAssignment {
        PathAssignment {
            vertex_lengths: [(YELLOW, 1), (GREEN, 2), (BLACK, 0)].into_iter().collect(),
            edge_lengths: [(RED_EDGE, 0), (BLUE_EDGE, 1)].into_iter().collect(),
            c0: BLACK_EDGE,
        }
    }

    fn k33_gstar() -> ColoredGraph {
        let sys = incidence_system(&SimpleGraph::complete_bipartite(3, 3), &BitVec::zeros(6)).unwrap();
        build_gstar(&sys).unwrap()
    }

    #[test]
    fn figure_vertex_decoloring() {
        let gp = decolor_vertices(&figure_graph(), &figure_assignment()).unwrap();
        assert_eq!(gp.vertex_count(), 8);
        assert_eq!(gp.edge_count(), 6 + 4);
        assert!(gp.vertices().iter().all(|v| v.color.is_none()));
        for e in &gp.edges()[6..] {
            assert_eq!(e.color, Some(BLACK_EDGE));
        }
        // The green vertex ends in a path of two.
        assert_eq!(
            gp.vertices()[6].kind,
            VertexKind::Decorated(DecoratedVertexId::VertexPath(1, 2))
        );
        assert_eq!(gp.degree(6), 1);
    }

    #[test]
    fn figure_edge_decoloring() {
        let pa = figure_assignment();
        let gpp = decolor_edges(&decolor_vertices(&figure_graph(), &pa).unwrap(), &pa).unwrap();
        // 8 + 2 red subdivisions + 2 blue subdivisions with one path vertex each.
        assert_eq!(gpp.vertex_count(), 14);
        assert!(!gpp.is_colored());
        for (v, vert) in gpp.vertices().iter().enumerate() {
            if let VertexKind::Decorated(DecoratedVertexId::Subdivision(..)) = vert.kind {
                assert!(gpp.degree(v) == 2 || gpp.degree(v) == 3);
            }
        }
    }

    #[test]
    fn zero_lengths_only_strip_colors() {
        let g = figure_graph();
        let pa = PathAssignment {
            vertex_lengths: [(BLACK, 0)].into_iter().collect(),
            edge_lengths: BTreeMap::new(),
            c0: BLACK_EDGE,
        };
        let mut g1 = g.clone();
        // Recolor all vertices black so a single zero length suffices.
        g1 = ColoredGraph::new(
            vec![Vertex::plain(Some(BLACK)); 4],
            g1.edges().to_vec(),
            GraphMeta::default(),
        )
        .unwrap();
        let gp = decolor_vertices(&g1, &pa).unwrap();
        assert_eq!(gp.vertex_count(), 4);
        assert_eq!(gp.edges(), g1.edges());
        assert!(matches!(
            decolor_edges(&gp, &pa),
            Err(DecolorError::MissingEdgeLength(_))
        ));
    }

    #[test]
    fn all_c0_edges_pass_through() {
        let g = ColoredGraph::new(
            vec![Vertex::plain(None); 3],
            vec![
                Edge { u: 0, v: 1, color: Some(BLACK_EDGE) },
                Edge { u: 1, v: 2, color: Some(BLACK_EDGE) },
            ],
            GraphMeta::default(),
        )
        .unwrap();
        let pa = canonical_assignment(&g, &BLACK_EDGE);
        let gpp = decolor_edges(&g, &pa).unwrap();
        assert_eq!(gpp.vertex_count(), 3);
        assert_eq!(gpp.edge_count(), 2);
        assert!(!gpp.is_colored());
    }

    #[test]
    fn canonical_assignment_for_k33() {
        let g = k33_gstar();
        let minus = ColorTag::Shared(Sign::Minus);
        let pa = canonical_assignment(&g, &minus);
        assert_eq!(pa.vertex_lengths.len(), 6);
        assert_eq!(pa.edge_lengths.len(), 18);
        let mut values: Vec<usize> = pa.edge_lengths.values().copied().collect();
        values.sort_unstable();
        assert_eq!(values, (0..18).collect::<Vec<_>>());
        assert_eq!(pa, canonical_assignment(&g.clone(), &minus));
        pa.validate().unwrap();
    }

    #[test]
    fn k33_counts() {
        let g = k33_gstar();
        let minus = ColorTag::Shared(Sign::Minus);
        let (gp, gpp) = decolor_canonical(&g, &minus).unwrap();
        assert_eq!(gp.vertex_count(), 84);
        assert_eq!(gpp.vertex_count(), 426);
        assert!(check_matchings(&gp, &minus).is_ok());
        assert!(check_min_degree(&g, 3).is_ok());
        // A path end and an original block vertex differ in their invariants.
        let f = vertex_invariants(&gpp, 3);
        let end = (0..gpp.vertex_count()).find(|&v| gpp.degree(v) == 1).unwrap();
        assert_ne!(f[end], f[0]);
    }

    #[test]
    fn degree_checks() {
        let k4 = ColoredGraph::from_simple(&SimpleGraph::complete(4));
        assert!(check_min_degree(&k4, 3).is_ok());
        let p3 = ColoredGraph::uncolored(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(check_min_degree(&p3, 3), Err(vec![0, 1, 2]));
    }

    #[test]
    fn monochrome_triangle_is_not_a_matching() {
        let c = ColorTag::Plain(1);
        let g = ColoredGraph::new(
            vec![Vertex::plain(None); 3],
            [(0, 1), (1, 2), (0, 2)]
                .into_iter()
                .map(|(u, v)| Edge { u, v, color: Some(c.clone()) })
                .collect(),
            GraphMeta::default(),
        )
        .unwrap();
        let err = check_matchings(&g, &ColorTag::Plain(0)).unwrap_err();
        assert_eq!(err.color, c);
    }

    #[test]
    fn injectivity_is_enforced() {
        let pa = PathAssignment {
            vertex_lengths: [(BLACK, 1), (YELLOW, 1)].into_iter().collect(),
            edge_lengths: BTreeMap::new(),
            c0: BLACK_EDGE,
        };
        assert!(matches!(pa.validate(), Err(DecolorError::NotInjective(..))));
        let pa = PathAssignment {
            vertex_lengths: BTreeMap::new(),
            edge_lengths: [(BLACK_EDGE, 0)].into_iter().collect(),
            c0: BLACK_EDGE,
        };
        assert!(matches!(pa.validate(), Err(DecolorError::C0HasLength(_))));
    }

    #[test]
    fn decorated_ids_round_trip() {
        for id in [
            DecoratedVertexId::Original(7),
            DecoratedVertexId::VertexPath(7, 2),
            DecoratedVertexId::Subdivision(3, 9),
            DecoratedVertexId::EdgePath(3, 9, 1),
        ] {
            assert_eq!(id.to_string().parse::<DecoratedVertexId>().unwrap(), id);
        }
        assert_eq!(DecoratedVertexId::Subdivision(3, 9).to_string(), "sub:3-9");
        assert!("vpath:1:0".parse::<DecoratedVertexId>().is_err());
        assert!("nope".parse::<DecoratedVertexId>().is_err());
    }

    #[test]
    fn decorated_graph_json_round_trip() {
        let g = k33_gstar();
        let (gp, gpp) = decolor_canonical(&g, &ColorTag::Shared(Sign::Minus)).unwrap();
        for h in [gp, gpp] {
            let back = crate::graphs::from_json(&crate::graphs::to_json(&h)).unwrap();
            assert_eq!(back, h);
        }
    }
}
