use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MagicUnitaryCert;
use crate::graphs::{ColorTag, ColoredGraph};
use crate::reps::{Mode, StarAlgebra};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Residual bound for inexact backends; exact backends need zero.
    pub tol: f64,
    /// Seed for sampled orthogonality checks.
    pub seed: u64,
    /// Above this many products the orthogonality family is sampled.
    pub max_products: usize,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            seed: 0,
            max_products: 2_000_000,
            samples: 200_000,
        }
    }
}

impl VerifyOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyResult {
    pub family: String,
    pub checked: usize,
    pub failures: usize,
    pub residual: f64,
    pub passed: bool,
    pub sampled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub mode: Mode,
    pub backend: String,
    pub exact: bool,
    pub tolerance: f64,
    pub passed: bool,
    pub max_residual: f64,
    pub families: Vec<FamilyResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_offender: Option<String>,
}

impl CertReport {
    pub fn family(&self, name: &str) -> Option<&FamilyResult> {
        self.families.iter().find(|f| f.family == name)
    }

    pub fn failed_families(&self) -> impl Iterator<Item = &FamilyResult> {
        self.families.iter().filter(|f| !f.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

struct Recorder<'a, A: StarAlgebra> {
    algebra: &'a A,
    tol: f64,
    result: FamilyResult,
}

impl<'a, A: StarAlgebra> Recorder<'a, A> {
    fn new(algebra: &'a A, tol: f64, family: impl Into<String>) -> Self {
        Self {
            algebra,
            tol,
            result: FamilyResult {
                family: family.into(),
                checked: 0,
                failures: 0,
                residual: 0.0,
                passed: true,
                sampled: false,
                worst: None,
            },
        }
    }

    /// Records `diff = 0`.
    fn zero(&mut self, diff: &A::Elem, what: impl FnOnce() -> String) {
        let residual = self.algebra.norm(diff);
        let ok = if self.algebra.is_exact() {
            self.algebra.is_zero(diff)
        } else {
            residual <= self.tol
        };
        let r = &mut self.result;
        r.checked += 1;
        if !ok {
            r.failures += 1;
            r.passed = false;
        }
        if residual > r.residual || (!ok && r.worst.is_none()) {
            r.residual = r.residual.max(residual);
            r.worst = Some(what());
        }
    }

    fn equal(&mut self, a: &A::Elem, b: &A::Elem, what: impl FnOnce() -> String) {
        let diff = self.algebra.sub(a, b);
        self.zero(&diff, what);
    }

    fn fail(&mut self, what: String) {
        let r = &mut self.result;
        r.checked += 1;
        r.failures += 1;
        r.passed = false;
        r.residual = f64::INFINITY;
        r.worst.get_or_insert(what);
    }

    fn finish(self) -> FamilyResult {
        let mut r = self.result;
        if r.passed {
            r.worst = None;
        }
        r
    }
}

/// How a vertex pair relates: equal, an edge of some class, or a non-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Relation<'g> {
    Same,
    Edge(Option<&'g ColorTag>),
    NonEdge,
}

fn relation(g: &ColoredGraph, i: usize, k: usize) -> Relation<'_> {
    if i == k {
        return Relation::Same;
    }
    match g.edge_color(i, k) {
        Some(c) => Relation::Edge(c),
        None => Relation::NonEdge,
    }
}

fn class_name(c: &Option<ColorTag>) -> String {
    c.as_ref().map_or_else(|| "uncolored".to_string(), ToString::to_string)
}

/// Checks the magic-unitary relations, color vanishing, intertwining with
/// every edge-color adjacency matrix, pairwise orthogonality of entries
/// whose vertex pairs relate differently in the two graphs, and, for
/// block-labelled graphs, the block structure (entries depend only on
/// `α△β` and commute within a block).
pub fn verify_cert<A: StarAlgebra>(cert: &MagicUnitaryCert<A>, mode: Mode, opts: &VerifyOptions) -> CertReport {
    let a = cert.algebra();
    let (g1, g2) = (cert.row_graph(), cert.col_graph());
    let tol = opts.tol;
    let mut families = Vec::new();

    if mode == Mode::Qut {
        let mut f = Recorder::new(a, tol, "same-graph");
        f.result.checked = 1;
        if g1 != g2 {
            f.fail("qut certificates need identical row and column graphs".into());
        }
        families.push(f.finish());
    }

    let used: BTreeSet<usize> = cert.sorted_entries().into_iter().map(|(_, e)| e).collect();
    let mut f = Recorder::new(a, tol, "projection");
    for &e in &used {
        let x = &cert.elements()[e];
        f.equal(&a.adjoint(x), x, || format!("element {e} is not self-adjoint"));
        f.equal(&a.mul(x, x), x, || format!("element {e} is not idempotent"));
    }
    families.push(f.finish());

    let one = a.one();
    let sum = |list: &[(usize, usize)]| {
        list.iter()
            .fold(a.zero(), |acc, &(_, e)| a.add(&acc, &cert.elements()[e]))
    };
    let mut f = Recorder::new(a, tol, "row-sum");
    for i in 0..g1.vertex_count() {
        f.equal(&sum(cert.row(i)), &one, || format!("row {i}"));
    }
    families.push(f.finish());
    let mut f = Recorder::new(a, tol, "column-sum");
    for j in 0..g2.vertex_count() {
        f.equal(&sum(cert.col(j)), &one, || format!("column {j}"));
    }
    families.push(f.finish());

    let mut f = Recorder::new(a, tol, "vertex-color");
    for ((i, j), e) in cert.sorted_entries() {
        if g1.vertex_color(i) != g2.vertex_color(j) {
            f.zero(&cert.elements()[e], || format!("entry ({i}, {j}) joins different vertex colors"));
        } else {
            f.result.checked += 1;
        }
    }
    families.push(f.finish());

    let mut classes: BTreeSet<Option<ColorTag>> = g1.edge_color_classes().into_iter().collect();
    classes.extend(g2.edge_color_classes());
    for class in &classes {
        families.push(intertwining(cert, class, tol));
    }

    families.push(orthogonality(cert, opts));

    if let Some(structural) = block_structure(cert, tol) {
        families.extend(structural);
    }

    let max_residual = families.iter().map(|f| f.residual).fold(0.0, f64::max);
    let worst_offender = families
        .iter()
        .filter(|f| !f.passed)
        .max_by(|x, y| x.residual.total_cmp(&y.residual))
        .map(|f| format!("{}: {}", f.family, f.worst.clone().unwrap_or_default()));
    CertReport {
        mode,
        backend: a.backend().into(),
        exact: a.is_exact(),
        tolerance: if a.is_exact() { 0.0 } else { tol },
        passed: families.iter().all(|f| f.passed),
        max_residual,
        families,
        worst_offender,
    }
}

/// `A_c u = u A′_c`, evaluated sparsely through neighbor lists.
fn intertwining<A: StarAlgebra>(cert: &MagicUnitaryCert<A>, class: &Option<ColorTag>, tol: f64) -> FamilyResult {
    let a = cert.algebra();
    let (g1, g2) = (cert.row_graph(), cert.col_graph());
    let mut lhs: HashMap<(usize, usize), A::Elem> = HashMap::new();
    let mut rhs: HashMap<(usize, usize), A::Elem> = HashMap::new();
    let accumulate = |map: &mut HashMap<(usize, usize), A::Elem>, key, e: &A::Elem| {
        map.entry(key)
            .and_modify(|v| *v = a.add(v, e))
            .or_insert_with(|| e.clone());
    };
    for edge in g1.edges().iter().filter(|e| &e.color == class) {
        for (i, k) in [(edge.u, edge.v), (edge.v, edge.u)] {
            for &(j, e) in cert.row(k) {
                accumulate(&mut lhs, (i, j), &cert.elements()[e]);
            }
        }
    }
    for edge in g2.edges().iter().filter(|e| &e.color == class) {
        for (k, j) in [(edge.u, edge.v), (edge.v, edge.u)] {
            for &(i, e) in cert.col(k) {
                accumulate(&mut rhs, (i, j), &cert.elements()[e]);
            }
        }
    }
    let keys: BTreeSet<(usize, usize)> = lhs.keys().chain(rhs.keys()).copied().collect();
    let zero = a.zero();
    let mut f = Recorder::new(a, tol, format!("intertwining:{}", class_name(class)));
    for (i, j) in keys {
        let l = lhs.get(&(i, j)).unwrap_or(&zero);
        let r = rhs.get(&(i, j)).unwrap_or(&zero);
        f.equal(l, r, || format!("(A u - u A')[{i}, {j}] for color {}", class_name(class)));
    }
    f.finish()
}

/// `u_ij u_kl = 0` whenever `(i, k)` and `(j, l)` relate differently
/// (equal / same-colored edge / non-edge). Every such pair has an equal
/// pair or an edge on one side, so enumerating from rows, columns and the
/// edges of both graphs is exhaustive.
fn orthogonality<A: StarAlgebra>(cert: &MagicUnitaryCert<A>, opts: &VerifyOptions) -> FamilyResult {
    let a = cert.algebra();
    let (g1, g2) = (cert.row_graph(), cert.col_graph());
    let mut f = Recorder::new(a, opts.tol, "orthogonality");

    let check = |f: &mut Recorder<A>, i: usize, j: usize, e1: usize, k: usize, l: usize, e2: usize| {
        if relation(g1, i, k) != relation(g2, j, l) {
            let p = a.mul(&cert.elements()[e1], &cert.elements()[e2]);
            f.zero(&p, || format!("u[{i},{j}] u[{k},{l}] != 0"));
        }
    };

    let rows_cost: usize = (0..g1.vertex_count()).map(|i| cert.row(i).len().pow(2)).sum();
    let cols_cost: usize = (0..g2.vertex_count()).map(|j| cert.col(j).len().pow(2)).sum();
    let e1_cost: usize = g1.edges().iter().map(|e| 2 * cert.row(e.u).len() * cert.row(e.v).len()).sum();
    let e2_cost: usize = g2.edges().iter().map(|e| 2 * cert.col(e.u).len() * cert.col(e.v).len()).sum();
    let total = rows_cost + cols_cost + e1_cost + e2_cost;

    if total <= opts.max_products {
        for i in 0..g1.vertex_count() {
            for &(j, e1) in cert.row(i) {
                for &(l, e2) in cert.row(i) {
                    check(&mut f, i, j, e1, i, l, e2);
                }
            }
        }
        for j in 0..g2.vertex_count() {
            for &(i, e1) in cert.col(j) {
                for &(k, e2) in cert.col(j) {
                    check(&mut f, i, j, e1, k, j, e2);
                }
            }
        }
        for edge in g1.edges() {
            for (i, k) in [(edge.u, edge.v), (edge.v, edge.u)] {
                for &(j, e1) in cert.row(i) {
                    for &(l, e2) in cert.row(k) {
                        check(&mut f, i, j, e1, k, l, e2);
                    }
                }
            }
        }
        for edge in g2.edges() {
            for (j, l) in [(edge.u, edge.v), (edge.v, edge.u)] {
                for &(i, e1) in cert.col(j) {
                    for &(k, e2) in cert.col(l) {
                        check(&mut f, i, j, e1, k, l, e2);
                    }
                }
            }
        }
        return f.finish();
    }

    f.result.sampled = true;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pick = |rng: &mut ChaCha8Rng, list: &[(usize, usize)]| -> Option<(usize, usize)> {
        (!list.is_empty()).then(|| list[rng.random_range(0..list.len())])
    };
    for _ in 0..opts.samples {
        match rng.random_range(0..4) {
            0 => {
                let i = rng.random_range(0..g1.vertex_count());
                if let (Some((j, e1)), Some((l, e2))) = (pick(&mut rng, cert.row(i)), pick(&mut rng, cert.row(i))) {
                    check(&mut f, i, j, e1, i, l, e2);
                }
            }
            1 => {
                let j = rng.random_range(0..g2.vertex_count());
                if let (Some((i, e1)), Some((k, e2))) = (pick(&mut rng, cert.col(j)), pick(&mut rng, cert.col(j))) {
                    check(&mut f, i, j, e1, k, j, e2);
                }
            }
            2 if g1.edge_count() > 0 => {
                let edge = &g1.edges()[rng.random_range(0..g1.edge_count())];
                let (i, k) = if rng.random() { (edge.u, edge.v) } else { (edge.v, edge.u) };
                if let (Some((j, e1)), Some((l, e2))) = (pick(&mut rng, cert.row(i)), pick(&mut rng, cert.row(k))) {
                    check(&mut f, i, j, e1, k, l, e2);
                }
            }
            3 if g2.edge_count() > 0 => {
                let edge = &g2.edges()[rng.random_range(0..g2.edge_count())];
                let (j, l) = if rng.random() { (edge.u, edge.v) } else { (edge.v, edge.u) };
                if let (Some((i, e1)), Some((k, e2))) = (pick(&mut rng, cert.col(j)), pick(&mut rng, cert.col(l))) {
                    check(&mut f, i, j, e1, k, l, e2);
                }
            }
            _ => {}
        }
    }
    f.finish()
}

/// For certificates between block-labelled graphs: entries at
/// `((k,α),(k,β))` depend only on `(k, α△β)`, and entries of a block
/// pairwise commute. `None` when the graphs carry no block labels.
fn block_structure<A: StarAlgebra>(cert: &MagicUnitaryCert<A>, tol: f64) -> Option<Vec<FamilyResult>> {
    let a = cert.algebra();
    let (g1, g2) = (cert.row_graph(), cert.col_graph());
    let labelled = (0..g1.vertex_count()).all(|v| g1.block_label(v).is_some())
        && (0..g2.vertex_count()).all(|v| g2.block_label(v).is_some());
    if !labelled || g1.vertex_count() == 0 {
        return None;
    }

    let mut delta = Recorder::new(a, tol, "delta-dependence");
    let mut first: BTreeMap<(usize, String), (usize, usize, usize)> = BTreeMap::new();
    let mut per_block: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for ((i, j), e) in cert.sorted_entries() {
        let (l1, l2) = (g1.block_label(i)?, g2.block_label(j)?);
        if l1.block != l2.block {
            continue;
        }
        per_block.entry(l1.block).or_default().insert(e);
        let key = (l1.block, l1.assignment.delta(&l2.assignment).pattern());
        match first.get(&key) {
            None => {
                first.insert(key, (i, j, e));
            }
            Some(&(_, _, e0)) if e0 == e => delta.result.checked += 1,
            Some(&(i0, j0, e0)) => {
                delta.equal(&cert.elements()[e], &cert.elements()[e0], || {
                    format!("u[{i},{j}] differs from u[{i0},{j0}] with the same delta")
                });
            }
        }
    }

    let mut commute = Recorder::new(a, tol, "block-commutation");
    for (k, ids) in &per_block {
        let ids: Vec<usize> = ids.iter().copied().collect();
        for (p, &x) in ids.iter().enumerate() {
            for &y in &ids[p + 1..] {
                let c = a.commutator(&cert.elements()[x], &cert.elements()[y]);
                commute.zero(&c, || format!("block {}: elements {x} and {y}", k + 1));
            }
        }
    }
    Some(vec![delta.finish(), commute.finish()])
}
