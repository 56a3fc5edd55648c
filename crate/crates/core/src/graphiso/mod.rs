//! Classical isomorphism and automorphisms of colored graphs.
//!
//! Color refinement (1-WL over vertex colors and edge-color-typed neighbor
//! multisets) drives an individualization–refinement search. Automorphism
//! group orders come from orbit sizes along a base. A bijection is accepted
//! only if it preserves vertex colors, and edges with their colors, in
//! both directions; these are the winning conditions of a deterministic
//! strategy in the colored isomorphism game.

mod refine;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::ColoredGraph;

pub use refine::{refine, StableColoring};
pub use search::{automorphism_group, find_isomorphism, find_isomorphism_with_stats, AutomorphismGroup, SearchStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("map has {found} entries for a graph with {expected} vertices")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {vertex} maps to {image}, outside a graph with {n} vertices")]
    OutOfRange { vertex: usize, image: usize, n: usize },
    #[error("map is not injective: {0} and {1} share an image")]
    NotBijective(usize, usize),
    #[error("invalid bijection document: {0}")]
    Json(String),
}

/// A vertex map with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BijectionDoc {
    map: Vec<usize>,
}

impl Bijection {
    pub fn new(forward: Vec<usize>) -> Result<Self, IsoError> {
        let n = forward.len();
        let mut inverse = vec![usize::MAX; n];
        for (v, &w) in forward.iter().enumerate() {
            if w >= n {
                return Err(IsoError::OutOfRange { vertex: v, image: w, n });
            }
            if inverse[w] != usize::MAX {
                return Err(IsoError::NotBijective(inverse[w], v));
            }
            inverse[w] = v;
        }
        Ok(Self { forward, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    pub fn apply(&self, v: usize) -> usize {
        self.forward[v]
    }

    pub fn inverted(&self) -> Self {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `{"map": [f(0), f(1), …]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&BijectionDoc {
            map: self.forward.clone(),
        })
        .expect("bijections always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, IsoError> {
        let doc: BijectionDoc = serde_json::from_str(text).map_err(|e| IsoError::Json(e.to_string()))?;
        Self::new(doc.map)
    }
}

/// The winning condition a map breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// Vertex colors must agree.
    VertexColor = 1,
    /// Equal images only for equal vertices.
    Equality = 2,
    /// Edges map to edges of the same color, non-edges to non-edges.
    Adjacency = 3,
}

impl Condition {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Condition::VertexColor => "vertex color",
            Condition::Equality => "equality",
            Condition::Adjacency => "adjacency",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub vertices: (usize, usize),
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} ({}): {}",
            self.condition.number(),
            self.condition.name(),
            self.detail
        )
    }
}

/// Checks that `map: V(G1) → V(G2)` preserves vertex colors, is injective,
/// and maps edges to edges of the same color and non-edges to non-edges.
/// Returns the first violation, or `None` for a valid isomorphism. Maps
/// that are not total into `V(G2)` are errors.
pub fn verify_mapping(g1: &ColoredGraph, g2: &ColoredGraph, map: &[usize]) -> Result<Option<Violation>, IsoError> {
    let n = g1.vertex_count();
    if map.len() != n || g2.vertex_count() != n {
        return Err(IsoError::WrongLength {
            expected: g2.vertex_count(),
            found: map.len(),
        });
    }
    if let Some((v, &w)) = map.iter().enumerate().find(|(_, &w)| w >= n) {
        return Err(IsoError::OutOfRange { vertex: v, image: w, n });
    }
    for v in 0..n {
        if g1.vertex_color(v) != g2.vertex_color(map[v]) {
            return Ok(Some(Violation {
                condition: Condition::VertexColor,
                vertices: (v, v),
                detail: format!(
                    "vertex {v} ({}) maps to {} ({})",
                    show(g1.vertex_color(v)),
                    map[v],
                    show(g2.vertex_color(map[v]))
                ),
            }));
        }
    }
    let mut preimage = vec![usize::MAX; n];
    for (v, &w) in map.iter().enumerate() {
        if preimage[w] != usize::MAX {
            return Ok(Some(Violation {
                condition: Condition::Equality,
                vertices: (preimage[w], v),
                detail: format!("vertices {} and {v} both map to {w}", preimage[w]),
            }));
        }
        preimage[w] = v;
    }
    for e in g1.edges() {
        let (a, b) = (map[e.u], map[e.v]);
        let image = g2.edge_color(a, b);
        if image != Some(e.color.as_ref()) {
            return Ok(Some(Violation {
                condition: Condition::Adjacency,
                vertices: (e.u, e.v),
                detail: format!(
                    "edge {}-{} ({}) maps to {a}-{b} ({})",
                    e.u,
                    e.v,
                    show(e.color.as_ref()),
                    image.map_or("non-edge".to_string(), show)
                ),
            }));
        }
    }
    for e in g2.edges() {
        let (a, b) = (preimage[e.u], preimage[e.v]);
        if !g1.has_edge(a, b) {
            return Ok(Some(Violation {
                condition: Condition::Adjacency,
                vertices: (a, b),
                detail: format!("non-edge {a}-{b} maps to edge {}-{}", e.u, e.v),
            }));
        }
    }
    Ok(None)
}

fn show(c: Option<&crate::graphs::ColorTag>) -> String {
    c.map_or_else(|| "uncolored".to_string(), ToString::to_string)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Edge, GraphMeta, Vertex};
    use crate::graphs::ColorTag;

    fn two_colored_path() -> ColoredGraph {
        ColoredGraph::new(
            vec![
                Vertex::plain(Some(ColorTag::Plain(0))),
                Vertex::plain(Some(ColorTag::Plain(1))),
                Vertex::plain(Some(ColorTag::Plain(0))),
            ],
            vec![Edge { u: 0, v: 1, color: None }, Edge { u: 1, v: 2, color: None }],
            GraphMeta::default(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_valid() {
        let g = two_colored_path();
        assert_eq!(verify_mapping(&g, &g, Bijection::identity(3).forward()).unwrap(), None);
    }

    #[test]
    fn swapping_colors_breaks_condition_one() {
        let g = two_colored_path();
        let v = verify_mapping(&g, &g, &[1, 0, 2]).unwrap().unwrap();
        assert_eq!(v.condition, Condition::VertexColor);
        assert!(v.to_string().contains("vertex color"));
        // Swapping the two ends keeps colors and edges.
        assert_eq!(verify_mapping(&g, &g, &[2, 1, 0]).unwrap(), None);
    }

    #[test]
    fn collisions_and_bad_maps() {
        let g = two_colored_path();
        let v = verify_mapping(&g, &g, &[0, 1, 0]).unwrap().unwrap();
        assert_eq!(v.condition, Condition::Equality);
        assert!(matches!(verify_mapping(&g, &g, &[0, 1]), Err(IsoError::WrongLength { .. })));
        assert!(matches!(verify_mapping(&g, &g, &[0, 1, 7]), Err(IsoError::OutOfRange { .. })));
        assert!(matches!(Bijection::new(vec![0, 0]), Err(IsoError::NotBijective(0, 1))));
    }

    #[test]
    fn adjacency_breaks_condition_three() {
        let g = ColoredGraph::uncolored(3, &[(0, 1)]).unwrap();
        let v = verify_mapping(&g, &g, &[0, 2, 1]).unwrap().unwrap();
        assert_eq!(v.condition, Condition::Adjacency);
    }

    #[test]
    fn bijection_json_round_trip() {
        let b = Bijection::new(vec![2, 0, 1]).unwrap();
        let back = Bijection::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        assert_eq!(b.inverted().forward(), &[1, 2, 0]);
        assert!(Bijection::from_json("{\"map\": [1, 1]}").is_err());
    }
}
