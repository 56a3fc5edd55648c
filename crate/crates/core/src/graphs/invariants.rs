use std::collections::VecDeque;

use super::ColoredGraph;

/// Per-vertex isomorphism invariant: degree, closed-walk counts
/// `(A^l)_{vv}` for `l = 1..=l_max` on the decolored adjacency, and the
/// sorted degrees of vertices at each distance `1..=l_max`.
///
/// Vertices with different fingerprints lie in different orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub degree: usize,
    pub closed_walks: Vec<u64>,
    pub degrees_at_distance: Vec<Vec<usize>>,
}

pub fn vertex_invariants(g: &ColoredGraph, l_max: usize) -> Vec<Fingerprint> {
    assert!(l_max >= 1, "l_max must be at least 1");
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            // Walk counts from v, one sparse matrix-vector product per length.
            let mut walks = vec![0u64; n];
            walks[v] = 1;
            let mut closed = Vec::with_capacity(l_max);
            for _ in 0..l_max {
                let mut next = vec![0u64; n];
                for (u, &count) in walks.iter().enumerate() {
                    if count != 0 {
                        for &w in g.neighbors(u) {
                            next[w] = next[w].saturating_add(count);
                        }
                    }
                }
                walks = next;
                closed.push(walks[v]);
            }

            let mut dist = vec![usize::MAX; n];
            dist[v] = 0;
            let mut queue = VecDeque::from([v]);
            let mut layers = vec![Vec::new(); l_max];
            while let Some(u) = queue.pop_front() {
                if dist[u] == l_max {
                    continue;
                }
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        layers[dist[w] - 1].push(g.degree(w));
                        queue.push_back(w);
                    }
                }
            }
            for layer in &mut layers {
                layer.sort_unstable();
            }

            Fingerprint {
                degree: g.degree(v),
                closed_walks: closed,
                degrees_at_distance: layers,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> ColoredGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColoredGraph::uncolored(n, &edges).unwrap()
    }

    #[test]
    fn path_ends_differ_from_middle() {
        let p3 = ColoredGraph::uncolored(3, &[(0, 1), (1, 2)]).unwrap();
        let f = vertex_invariants(&p3, 3);
        assert_eq!(f[0], f[2]);
        assert_ne!(f[0], f[1]);
    }

    #[test]
    fn cycle_is_uniform() {
        let f = vertex_invariants(&cycle(5), 4);
        assert!(f.windows(2).all(|w| w[0] == w[1]));
        // C5 has closed walks of length 2 (two) and none of length 3.
        assert_eq!(f[0].closed_walks[..3], [0, 2, 0]);
    }

    #[test]
    fn triangle_closed_walks() {
        let f = vertex_invariants(&cycle(3), 3);
        assert_eq!(f[0].closed_walks, vec![0, 2, 2]);
    }
}
