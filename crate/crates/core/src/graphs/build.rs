use super::{
    intersect_sorted, ColorTag, ColoredGraph, Edge, GraphError, GraphMeta, Palette, SignVector,
    Vertex, VertexKind, VertexLabel,
};
use crate::f2::LinearSystem;

/// Vertices `(k, α)` with `α ∈ ±1^{S_k}_{b_k}` in canonical order, plus the
/// supports `S_k`.
fn block_vertices(sys: &LinearSystem) -> Result<(Vec<Vertex>, Vec<Vec<usize>>), GraphError> {
    let supports: Vec<Vec<usize>> = (0..sys.constraints()).map(|k| sys.support(k)).collect();
    let mut vertices = Vec::new();
    for (k, s) in supports.iter().enumerate() {
        if s.is_empty() {
            return Err(GraphError::EmptyConstraint(k));
        }
        for alpha in SignVector::with_parity(s, sys.rhs().get(k)) {
            vertices.push(Vertex {
                kind: VertexKind::Block(VertexLabel {
                    block: k,
                    assignment: alpha,
                }),
                color: Some(ColorTag::Vertex(k)),
            });
        }
    }
    Ok((vertices, supports))
}

fn label(v: &Vertex) -> &VertexLabel {
    match &v.kind {
        VertexKind::Block(l) => l,
        _ => unreachable!("block construction only makes block vertices"),
    }
}

fn intra_colors(supports: &[Vec<usize>]) -> Vec<ColorTag> {
    supports
        .iter()
        .enumerate()
        .flat_map(|(k, s)| {
            SignVector::with_parity(s, false)
                .into_iter()
                .filter(|d| !d.is_all_plus())
                .map(move |delta| ColorTag::Intra { block: k, delta })
        })
        .collect()
}

/// `G(M,b)`. Inter-block edge colors carry their block pair.
pub fn build_g(sys: &LinearSystem) -> Result<ColoredGraph, GraphError> {
    let (vertices, supports) = block_vertices(sys)?;
    let m = supports.len();
    let shared: Vec<Vec<Vec<usize>>> = (0..m)
        .map(|l| (0..m).map(|k| intersect_sorted(&supports[l], &supports[k])).collect())
        .collect();

    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let (a, b) = (label(&vertices[i]), label(&vertices[j]));
            let color = if a.block == b.block {
                ColorTag::Intra {
                    block: a.block,
                    delta: a.assignment.delta(&b.assignment),
                }
            } else {
                let common = &shared[a.block][b.block];
                if common.is_empty() {
                    continue;
                }
                ColorTag::Inter {
                    low: a.block,
                    high: b.block,
                    delta: a.assignment.restrict(common).delta(&b.assignment.restrict(common)),
                }
            };
            edges.push(Edge {
                u: i,
                v: j,
                color: Some(color),
            });
        }
    }

    let mut edge_palette = intra_colors(&supports);
    for l in 0..m {
        for k in l + 1..m {
            if !shared[l][k].is_empty() {
                edge_palette.extend(SignVector::enumerate(&shared[l][k]).into_iter().map(
                    |delta| ColorTag::Inter {
                        low: l,
                        high: k,
                        delta,
                    },
                ));
            }
        }
    }
    let meta = GraphMeta {
        construction: "G".into(),
        system: Some(sys.clone()),
        palette: Palette::new((0..m).map(ColorTag::Vertex).collect(), edge_palette),
        ..GraphMeta::default()
    };
    ColoredGraph::new(vertices, edges, meta)
}

/// `G_*(M,b)`: inter-block edges keep only the shared sign `α_i β_i = −1`,
/// all with the single color `shared:-1`. Requires `|S_l ∩ S_k| ≤ 1`.
pub fn build_gstar(sys: &LinearSystem) -> Result<ColoredGraph, GraphError> {
    let (vertices, supports) = block_vertices(sys)?;
    let m = supports.len();
    let mut shared_var = vec![vec![None; m]; m];
    for l in 0..m {
        for k in l + 1..m {
            let common = intersect_sorted(&supports[l], &supports[k]);
            match common.len() {
                0 => {}
                1 => {
                    shared_var[l][k] = Some(common[0]);
                    shared_var[k][l] = Some(common[0]);
                }
                n => return Err(GraphError::SharedTooLarge { l, k, shared: n }),
            }
        }
    }

    let minus = ColorTag::Shared(super::Sign::Minus);
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let (a, b) = (label(&vertices[i]), label(&vertices[j]));
            let color = if a.block == b.block {
                ColorTag::Intra {
                    block: a.block,
                    delta: a.assignment.delta(&b.assignment),
                }
            } else {
                let Some(var) = shared_var[a.block][b.block] else {
                    continue;
                };
                let sign = a.assignment.get(var).expect("shared variable")
                    * b.assignment.get(var).expect("shared variable");
                if !sign.is_minus() {
                    continue;
                }
                minus.clone()
            };
            edges.push(Edge {
                u: i,
                v: j,
                color: Some(color),
            });
        }
    }

    let mut edge_palette = intra_colors(&supports);
    edge_palette.push(minus);
    let meta = GraphMeta {
        construction: "Gstar".into(),
        system: Some(sys.clone()),
        palette: Palette::new((0..m).map(ColorTag::Vertex).collect(), edge_palette),
        ..GraphMeta::default()
    };
    ColoredGraph::new(vertices, edges, meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{incidence_system, parse_system, BitVec, SimpleGraph};
    use crate::graphs::Sign;
    use std::collections::BTreeMap;

    fn k33(b: BitVec) -> LinearSystem {
        incidence_system(&SimpleGraph::complete_bipartite(3, 3), &b).unwrap()
    }

    fn color_counts(g: &ColoredGraph) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for e in g.edges() {
            *counts
                .entry(e.color.as_ref().unwrap().to_string())
                .or_insert(0) += 1;
        }
        counts
    }

    #[test]
    fn worked_example_graph() {
        let sys = parse_system("11100;10011|01").unwrap();
        let g = build_g(&sys).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.block_vertices(0).len(), 4);
        assert_eq!(g.block_vertices(1).len(), 4);
        // Full G: all 16 inter pairs present, two inter colors of 8 each.
        assert_eq!(g.edge_count(), 12 + 16);

        let gs = build_gstar(&sys).unwrap();
        assert_eq!(gs.vertex_count(), 8);
        assert_eq!(gs.edge_count(), 20);
        let counts = color_counts(&gs);
        assert_eq!(counts["shared:-1"], 8);
        let intra: Vec<usize> = counts
            .iter()
            .filter(|(k, _)| k.starts_with("intra"))
            .map(|(_, &v)| v)
            .collect();
        assert_eq!(intra, vec![2; 6]);
    }

    #[test]
    fn smallest_block() {
        let sys = parse_system("11|0").unwrap();
        let g = build_g(&sys).unwrap();
        let patterns: Vec<String> = g
            .vertices()
            .iter()
            .map(|v| match &v.kind {
                VertexKind::Block(l) => l.assignment.pattern(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(patterns, ["++", "--"]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn empty_constraint_is_rejected() {
        let sys = parse_system("11;00|00").unwrap();
        assert_eq!(build_g(&sys).unwrap_err(), GraphError::EmptyConstraint(1));
    }

    #[test]
    fn k33_counts() {
        let g = build_g(&k33(BitVec::zeros(6))).unwrap();
        assert_eq!(g.vertex_count(), 24);
        let intra = g
            .edges()
            .iter()
            .filter(|e| matches!(e.color, Some(ColorTag::Intra { .. })))
            .count();
        assert_eq!((intra, g.edge_count() - intra), (36, 144));

        for b in [BitVec::zeros(6), BitVec::unit(6, 0)] {
            let gs = build_gstar(&k33(b)).unwrap();
            assert_eq!(gs.vertex_count(), 24);
            let counts = color_counts(&gs);
            assert_eq!(counts["shared:-1"], 72);
            assert_eq!(gs.edge_count(), 36 + 72);
        }
    }

    #[test]
    fn gstar_needs_single_shared_variables() {
        let sys = parse_system("110;111|00").unwrap();
        assert_eq!(
            build_gstar(&sys).unwrap_err(),
            GraphError::SharedTooLarge { l: 0, k: 1, shared: 2 }
        );
    }

    #[test]
    fn gstar_shared_rows_have_six_partners() {
        // Each of the three variables of a block is shared with one other
        // block, where half of the four local solutions disagree on it.
        let g = build_gstar(&k33(BitVec::zeros(6))).unwrap();
        let a = g
            .adjacency_matrix(Some(&ColorTag::Shared(Sign::Minus)))
            .unwrap();
        for row in &a {
            assert_eq!(row.iter().map(|&x| x as usize).sum::<usize>(), 6);
        }
    }
}
