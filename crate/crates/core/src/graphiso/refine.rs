use std::collections::{BTreeMap, BTreeSet};

use crate::graphs::{ColorTag, ColoredGraph, Fingerprint};

/// A color-refinement-stable partition of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableColoring {
    classes: Vec<u32>,
    history: Vec<usize>,
}

impl StableColoring {
    /// Class id per vertex; ids are `0..class_count()`.
    pub fn classes(&self) -> &[u32] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> u32 {
        self.classes[v]
    }

    pub fn class_count(&self) -> usize {
        self.history.last().copied().unwrap_or(0)
    }

    /// Class count after seeding and after each refinement round.
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn rounds(&self) -> usize {
        self.history.len().saturating_sub(1)
    }

    /// Vertices of each class, in class order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.class_count()];
        for (v, &c) in self.classes.iter().enumerate() {
            cells[c as usize].push(v);
        }
        cells
    }
}

/// Dense ranks of `keys` in sorted order.
pub(crate) fn rank<K: Ord>(keys: &[K]) -> Vec<u32> {
    let sorted: BTreeSet<&K> = keys.iter().collect();
    let ids: BTreeMap<&K, u32> = sorted.into_iter().zip(0..).collect();
    keys.iter().map(|k| ids[k]).collect()
}

/// Disjoint union of one or two graphs with edge colors numbered over
/// both, so that class ids are comparable between the parts.
pub(crate) struct Union<'g> {
    pub(crate) graphs: Vec<&'g ColoredGraph>,
    pub(crate) split: usize,
    adj: Vec<Vec<(u32, u32)>>,
}

impl<'g> Union<'g> {
    pub(crate) fn new(graphs: &[&'g ColoredGraph]) -> Self {
        let mut edge_classes: BTreeSet<Option<&ColorTag>> = BTreeSet::new();
        for g in graphs {
            edge_classes.extend(g.edges().iter().map(|e| e.color.as_ref()));
        }
        let ids: BTreeMap<Option<&ColorTag>, u32> = edge_classes.into_iter().zip(0..).collect();
        let mut adj = Vec::new();
        for g in graphs {
            let base = adj.len() as u32;
            let mut part = vec![Vec::new(); g.vertex_count()];
            for e in g.edges() {
                let c = ids[&e.color.as_ref()];
                part[e.u].push((c, base + e.v as u32));
                part[e.v].push((c, base + e.u as u32));
            }
            adj.extend(part);
        }
        Self {
            graphs: graphs.to_vec(),
            split: graphs[0].vertex_count(),
            adj,
        }
    }

    /// Initial classes from vertex colors, optionally combined with a
    /// per-vertex seed.
    pub(crate) fn initial<K: Ord>(&self, seed: Option<&[K]>) -> Vec<u32> {
        let keys: Vec<(Option<&ColorTag>, Option<&K>)> = self
            .graphs
            .iter()
            .flat_map(|g| (0..g.vertex_count()).map(move |v| g.vertex_color(v)))
            .enumerate()
            .map(|(v, c)| (c, seed.map(|s| &s[v])))
            .collect();
        rank(&keys)
    }

    /// Refines `colors` in place until stable; returns the class count
    /// after each round, starting with the input count. New ids respect the
    /// order of old ids, so a class never changes rank relative to classes
    /// it was already separated from.
    pub(crate) fn refine(&self, colors: &mut [u32]) -> Vec<usize> {
        let mut count = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut history = vec![count];
        let mut sigs: Vec<(u32, Vec<(u32, u32)>)> = Vec::with_capacity(colors.len());
        loop {
            sigs.clear();
            for (v, nbrs) in self.adj.iter().enumerate() {
                let mut s: Vec<(u32, u32)> = nbrs.iter().map(|&(c, w)| (c, colors[w as usize])).collect();
                s.sort_unstable();
                sigs.push((colors[v], s));
            }
            let next = rank(&sigs);
            let next_count = next.iter().copied().max().map_or(0, |m| m as usize + 1);
            colors.copy_from_slice(&next);
            if next_count == count {
                return history;
            }
            count = next_count;
            history.push(count);
        }
    }

    /// Whether every class has as many vertices in the first part as in
    /// the second.
    pub(crate) fn balanced(&self, colors: &[u32]) -> bool {
        let mut diff: BTreeMap<u32, i64> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *diff.entry(c).or_default() += if v < self.split { 1 } else { -1 };
        }
        diff.values().all(|&d| d == 0)
    }
}

/// Stable coloring of `g` refining its vertex colors, optionally seeded
/// by per-vertex fingerprints.
pub fn refine(g: &ColoredGraph, seed: Option<&[Fingerprint]>) -> StableColoring {
    let u = Union::new(&[g]);
    let mut classes = u.initial(seed);
    let history = u.refine(&mut classes);
    StableColoring { classes, history }
}
