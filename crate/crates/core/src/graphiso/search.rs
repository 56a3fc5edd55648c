use std::collections::BTreeSet;

use super::refine::Union;
use super::{verify_mapping, Bijection};
use crate::graphs::ColoredGraph;

/// Search statistics, mostly useful for diagnostics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
}

struct Searcher<'g> {
    union: Union<'g>,
    stats: SearchStats,
}

impl Searcher<'_> {
    /// Smallest non-singleton class (by size, then id) among first-part
    /// vertices; `None` when the first part is discrete.
    fn target_cell(&self, colors: &[u32]) -> Option<u32> {
        let mut counts = vec![0usize; colors.iter().copied().max().map_or(0, |m| m as usize + 1)];
        for &c in &colors[..self.union.split] {
            counts[c as usize] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n >= 2)
            .min_by_key(|&(c, &n)| (n, c))
            .map(|(c, _)| c as u32)
    }

    fn individualize(&self, colors: &[u32], v: usize, w: usize) -> Vec<u32> {
        let fresh = colors.iter().copied().max().map_or(0, |m| m + 1);
        let mut next = colors.to_vec();
        next[v] = fresh;
        next[self.union.split + w] = fresh;
        next
    }

    /// An isomorphism compatible with `colors`, if one exists.
    fn search(&mut self, mut colors: Vec<u32>) -> Option<Vec<usize>> {
        self.stats.nodes += 1;
        self.union.refine(&mut colors);
        if !self.union.balanced(&colors) {
            return None;
        }
        let split = self.union.split;
        let Some(cell) = self.target_cell(&colors) else {
            self.stats.leaves += 1;
            let mut map = vec![0; split];
            let mut owner = vec![usize::MAX; colors.len()];
            for (v, &c) in colors[..split].iter().enumerate() {
                owner[c as usize] = v;
            }
            for (w, &c) in colors[split..].iter().enumerate() {
                map[owner[c as usize]] = w;
            }
            let (g1, g2) = (self.union.graphs[0], self.union.graphs[1]);
            return matches!(verify_mapping(g1, g2, &map), Ok(None)).then_some(map);
        };
        let v = colors[..split].iter().position(|&c| c == cell).expect("cell is nonempty");
        let candidates: Vec<usize> = (0..colors.len() - split).filter(|&w| colors[split + w] == cell).collect();
        for w in candidates {
            let next = self.individualize(&colors, v, w);
            if let Some(map) = self.search(next) {
                return Some(map);
            }
        }
        None
    }

    /// Automorphisms of the (identical) parts fixing `colors`: returns
    /// generators and the group order, computing the stabilizer of the
    /// first target vertex before its orbit so deeper generators prune the
    /// orbit search.
    fn automorphisms(&mut self, mut colors: Vec<u32>, base: &mut Vec<(usize, usize)>) -> (Vec<Vec<usize>>, u128) {
        self.union.refine(&mut colors);
        let split = self.union.split;
        let Some(cell) = self.target_cell(&colors) else {
            return (Vec::new(), 1);
        };
        let v = colors[..split].iter().position(|&c| c == cell).expect("cell is nonempty");
        let level = base.len();
        base.push((v, 0));
        let (mut gens, sub_order) = self.automorphisms(self.individualize(&colors, v, v), base);

        let mut orbit = orbit_of(v, &gens);
        for w in (0..split).filter(|&w| colors[w] == cell) {
            if orbit.contains(&w) {
                continue;
            }
            if let Some(map) = self.search(self.individualize(&colors, v, w)) {
                gens.push(map);
                orbit = orbit_of(v, &gens);
            }
        }
        base[level].1 = orbit.len();
        (gens, orbit.len() as u128 * sub_order)
    }
}

fn orbit_of(v: usize, gens: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut orbit = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            if orbit.insert(g[x]) {
                stack.push(g[x]);
            }
        }
    }
    orbit
}

/// A vertex-color, edge and edge-color preserving bijection `G1 → G2`, found
/// by individualization and refinement.
pub fn find_isomorphism(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Bijection> {
    find_isomorphism_with_stats(g1, g2).0
}

pub fn find_isomorphism_with_stats(g1: &ColoredGraph, g2: &ColoredGraph) -> (Option<Bijection>, SearchStats) {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return (None, SearchStats::default());
    }
    let union = Union::new(&[g1, g2]);
    let colors = union.initial::<()>(None);
    let mut s = Searcher {
        union,
        stats: SearchStats::default(),
    };
    let map = s.search(colors);
    (map.map(|m| Bijection::new(m).expect("search yields bijections")), s.stats)
}

/// Generators and order of the color-preserving automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: u128,
    /// Base points with their orbit sizes; the order is their product.
    pub base: Vec<(usize, usize)>,
}

pub fn automorphism_group(g: &ColoredGraph) -> AutomorphismGroup {
    let union = Union::new(&[g, g]);
    let colors = union.initial::<()>(None);
    let mut s = Searcher {
        union,
        stats: SearchStats::default(),
    };
    let mut base = Vec::new();
    let (generators, order) = s.automorphisms(colors, &mut base);
    AutomorphismGroup { generators, order, base }
}
