//! Magic-unitary certificates.
//!
//! A certificate is a matrix `u` indexed by vertex pairs of two colored
//! graphs whose entries live in a star algebra. Built from a
//! representation of the constraint algebra, block `k` has entries
//! `u_{(k,α),(k,β)} = ∏_{i∈S_k} p_i^{(α△β)_i}` with `p_i^± = ½(1 ± x_i)`.
//! Entries are stored sparsely and point into a shared element table.

mod extract;
mod lift;
mod verify;

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graphs::{ColoredGraph, SignVector, VertexKind};
use crate::reps::{Representation, StarAlgebra};

pub use extract::{block_resolutions, extract_generators, noncommuting_witness, Extraction, Resolution, Witness};
pub use lift::lift_cert;
pub use verify::{verify_cert, CertReport, FamilyResult, VerifyOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertError {
    #[error("graph carries no linear system in its metadata")]
    MissingSystem,
    #[error("the two graphs come from different constraint matrices")]
    SystemMismatch,
    #[error("representation has {found} images for {expected} variables")]
    RepresentationMismatch { expected: usize, found: usize },
    #[error("vertex {0} has no block label")]
    NotABlockVertex(usize),
    #[error("permutation is not a bijection onto the column graph")]
    BadPermutation,
    #[error("source certificate fails verification: {0}")]
    Unverified(String),
    #[error("the decolored graphs were built with different path assignments")]
    AssignmentMismatch,
    #[error("graph is not a decolored graph with decorated vertex ids")]
    NotDecolored,
    #[error("entries {0} and {1} do not commute")]
    NonCommuting(String, String),
}

/// Sparse matrix of algebra elements over `V(G) × V(G′)`.
#[derive(Clone, Debug)]
pub struct MagicUnitaryCert<A: StarAlgebra> {
    algebra: A,
    row_graph: ColoredGraph,
    col_graph: ColoredGraph,
    elements: Vec<A::Elem>,
    entries: HashMap<(usize, usize), usize>,
    by_row: Vec<Vec<(usize, usize)>>,
    by_col: Vec<Vec<(usize, usize)>>,
    provenance: String,
}

impl<A: StarAlgebra> MagicUnitaryCert<A> {
    /// `entries` maps `(row, column)` to an index into `elements`.
    pub fn from_parts(
        algebra: A,
        row_graph: ColoredGraph,
        col_graph: ColoredGraph,
        elements: Vec<A::Elem>,
        entries: impl IntoIterator<Item = ((usize, usize), usize)>,
        provenance: impl Into<String>,
    ) -> Self {
        let entries: HashMap<(usize, usize), usize> = entries.into_iter().collect();
        let mut by_row = vec![Vec::new(); row_graph.vertex_count()];
        let mut by_col = vec![Vec::new(); col_graph.vertex_count()];
        for (&(i, j), &e) in &entries {
            assert!(e < elements.len(), "entry points outside the element table");
            by_row[i].push((j, e));
            by_col[j].push((i, e));
        }
        for list in by_row.iter_mut().chain(by_col.iter_mut()) {
            list.sort_unstable();
        }
        Self {
            algebra,
            row_graph,
            col_graph,
            elements,
            entries,
            by_row,
            by_col,
            provenance: provenance.into(),
        }
    }

    /// The 0/1 certificate of a bijection `perm: V(G) → V(G′)`.
    pub fn from_permutation(
        algebra: A,
        row_graph: ColoredGraph,
        col_graph: ColoredGraph,
        perm: &[usize],
    ) -> Result<Self, CertError> {
        let n = col_graph.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != row_graph.vertex_count() || perm.len() != n {
            return Err(CertError::BadPermutation);
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(CertError::BadPermutation);
            }
        }
        let one = algebra.one();
        Ok(Self::from_parts(
            algebra,
            row_graph,
            col_graph,
            vec![one],
            perm.iter().enumerate().map(|(i, &p)| ((i, p), 0)),
            "permutation",
        ))
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn row_graph(&self) -> &ColoredGraph {
        &self.row_graph
    }

    pub fn col_graph(&self) -> &ColoredGraph {
        &self.col_graph
    }

    pub fn elements(&self) -> &[A::Elem] {
        &self.elements
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Element index at `(i, j)`; `None` for a structural zero.
    pub fn entry_id(&self, i: usize, j: usize) -> Option<usize> {
        self.entries.get(&(i, j)).copied()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&A::Elem> {
        self.entry_id(i, j).map(|e| &self.elements[e])
    }

    /// Nonzero entries of row `i` as `(column, element index)`.
    pub fn row(&self, i: usize) -> &[(usize, usize)] {
        &self.by_row[i]
    }

    pub fn col(&self, j: usize) -> &[(usize, usize)] {
        &self.by_col[j]
    }

    /// Entries in row-major order.
    pub fn sorted_entries(&self) -> Vec<((usize, usize), usize)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&k, &e)| (k, e)).collect();
        v.sort_unstable();
        v
    }

    /// `u ↦ u P`: column `j` moves to `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self
    where
        A: Clone,
    {
        Self::from_parts(
            self.algebra.clone(),
            self.row_graph.clone(),
            self.col_graph.clone(),
            self.elements.clone(),
            self.entries.iter().map(|(&(i, j), &e)| ((i, perm[j]), e)),
            format!("{} (columns permuted)", self.provenance),
        )
    }

    /// Block-sparse document: vertex labels, the element table and
    /// `[row, column, element]` triples in row-major order.
    pub fn to_json(&self) -> String {
        let labels = |g: &ColoredGraph| -> Vec<Value> {
            g.vertices()
                .iter()
                .enumerate()
                .map(|(i, v)| match &v.kind {
                    VertexKind::Block(l) => json!(format!("blk:{}:{}", l.block + 1, l.assignment.pattern())),
                    VertexKind::Decorated(d) => json!(d.to_string()),
                    VertexKind::Plain => json!(i.to_string()),
                })
                .collect()
        };
        let doc = json!({
            "backend": self.algebra.backend(),
            "provenance": self.provenance,
            "row_graph": self.row_graph.meta().construction,
            "col_graph": self.col_graph.meta().construction,
            "row_vertices": labels(&self.row_graph),
            "col_vertices": labels(&self.col_graph),
            "elements": self.elements.iter().map(|e| self.algebra.elem_to_json(e)).collect::<Vec<_>>(),
            "entries": self.sorted_entries().into_iter().map(|((i, j), e)| json!([i, j, e])).collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).expect("certificates always serialize")
    }
}

/// `v_δ = ∏_{i∈dom δ} p_i^{δ_i}` in increasing variable order.
pub(crate) fn block_element<A: StarAlgebra>(r: &Representation<A>, delta: &SignVector) -> A::Elem {
    let a = r.algebra();
    delta.iter().fold(a.one(), |acc, (i, s)| {
        a.mul(&acc, &a.projection(r.image(i), !s.is_minus()))
    })
}

/// The certificate for `G(M,b)` (rows) against `G(M,b′)` (columns), or the
/// `G_*` variants, from a representation of the algebra with right-hand
/// side `b + b′`. Entries across blocks are zero.
pub fn build_magic_unitary<A: StarAlgebra + Clone>(
    g1: &ColoredGraph,
    g2: &ColoredGraph,
    r: &Representation<A>,
) -> Result<MagicUnitaryCert<A>, CertError> {
    let s1 = g1.meta().system.as_ref().ok_or(CertError::MissingSystem)?;
    let s2 = g2.meta().system.as_ref().ok_or(CertError::MissingSystem)?;
    if s1.matrix() != s2.matrix() {
        return Err(CertError::SystemMismatch);
    }
    if r.images().len() != s1.variables() {
        return Err(CertError::RepresentationMismatch {
            expected: s1.variables(),
            found: r.images().len(),
        });
    }
    let rhs = s1.rhs().xor(s2.rhs());

    let mut elements = Vec::new();
    let mut index: HashMap<(usize, SignVector), usize> = HashMap::new();
    for k in 0..s1.constraints() {
        for delta in SignVector::with_parity(&s1.support(k), rhs.get(k)) {
            index.insert((k, delta.clone()), elements.len());
            elements.push(block_element(r, &delta));
        }
    }

    let mut entries = Vec::new();
    for k in 0..s1.constraints() {
        let (rows, cols) = (g1.block_vertices(k), g2.block_vertices(k));
        for &i in &rows {
            let alpha = &g1.block_label(i).ok_or(CertError::NotABlockVertex(i))?.assignment;
            for &j in &cols {
                let beta = &g2.block_label(j).ok_or(CertError::NotABlockVertex(j))?.assignment;
                let id = index[&(k, alpha.delta(beta))];
                entries.push(((i, j), id));
            }
        }
    }
    Ok(MagicUnitaryCert::from_parts(
        r.algebra().clone(),
        g1.clone(),
        g2.clone(),
        elements,
        entries,
        format!("{} representation", r.algebra().backend()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::parse_system;
    use crate::graphs::build_g;
    use crate::reps::DenseAlgebra;
    use num_complex::Complex64;

    #[test]
    fn trivial_rep_gives_identity() {
        let sys = parse_system("11|0").unwrap();
        let g = build_g(&sys).unwrap();
        let alg = DenseAlgebra::new(1);
        let one = alg.one();
        let r = Representation::new(alg, vec!["x1".into(), "x2".into()], vec![one.clone(), one], None).unwrap();
        let cert = build_magic_unitary(&g, &g, &r).unwrap();
        let value = |i, j| cert.entry(i, j).map(|e| e[[0, 0]]);
        assert_eq!(value(0, 0), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(value(1, 1), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(value(0, 1), Some(Complex64::new(0.0, 0.0)));
        assert!(cert.to_json().contains("\"entries\""));
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let g = build_g(&parse_system("11|0").unwrap()).unwrap();
        let h = build_g(&parse_system("111|0").unwrap()).unwrap();
        let alg = DenseAlgebra::new(1);
        let one = alg.one();
        let r = Representation::new(alg.clone(), vec!["x1".into()], vec![one.clone()], None).unwrap();
        assert_eq!(
            build_magic_unitary(&g, &h, &r).unwrap_err(),
            CertError::SystemMismatch
        );
        assert!(matches!(
            build_magic_unitary(&g, &g, &r),
            Err(CertError::RepresentationMismatch { .. })
        ));
        assert_eq!(
            MagicUnitaryCert::from_permutation(alg, g.clone(), g, &[0, 0]).unwrap_err(),
            CertError::BadPermutation
        );
    }

    mod pipeline {
        use std::sync::Arc;

        use super::super::*;
        use crate::decolor::decolor_canonical;
        use crate::f2::{incidence_system, BitVec, SimpleGraph};
        use crate::fpgroups::{solution_presentation, FiniteGroup, DEFAULT_COSET_CAP};
        use crate::graphs::{build_gstar, ColorTag, Sign};
        use crate::reps::{group_algebra_rep, pauli_magic_square_rep, Mode};

        fn regular_cert(h: &SimpleGraph) -> MagicUnitaryCert<crate::reps::GroupAlgebra> {
            let sys = incidence_system(h, &BitVec::zeros(h.vertex_count())).unwrap();
            let p = solution_presentation(&sys, true);
            let group = Arc::new(FiniteGroup::enumerate(&p, DEFAULT_COSET_CAP).unwrap());
            let r = group_algebra_rep(&p, group).unwrap();
            let g = build_gstar(&sys).unwrap();
            build_magic_unitary(&g, &g, &r).unwrap()
        }

        #[test]
        fn k34_regular_certificate_has_quantum_symmetry() {
            let cert = regular_cert(&SimpleGraph::complete_bipartite(3, 4));
            let report = verify_cert(&cert, Mode::Qut, &VerifyOptions::default());
            assert!(report.passed, "{:?}", report.worst_offender);
            assert_eq!(report.max_residual, 0.0);
            assert!(noncommuting_witness(&cert, 0.0).is_some());
        }

        #[test]
        fn k33_regular_certificate_commutes() {
            let cert = regular_cert(&SimpleGraph::complete_bipartite(3, 3));
            assert!(verify_cert(&cert, Mode::Qut, &VerifyOptions::default()).passed);
            assert!(noncommuting_witness(&cert, 0.0).is_none());
        }

        #[test]
        fn pauli_certificate_lifts_to_decolored_graphs() {
            let h = SimpleGraph::complete_bipartite(3, 3);
            let b = BitVec::unit(6, 0);
            let g0 = build_gstar(&incidence_system(&h, &BitVec::zeros(6)).unwrap()).unwrap();
            let g1 = build_gstar(&incidence_system(&h, &b).unwrap()).unwrap();
            let c0 = ColorTag::Shared(Sign::Minus);
            let (_, gpp0) = decolor_canonical(&g0, &c0).unwrap();
            let (_, gpp1) = decolor_canonical(&g1, &c0).unwrap();
            let r = pauli_magic_square_rep(&b).unwrap();
            let cert = build_magic_unitary(&g0, &g1, &r).unwrap();
            let opts = VerifyOptions::with_tol(1e-9);
            let lifted = lift_cert(&cert, &gpp0, &gpp1, &opts).unwrap();
            assert_eq!(lifted.row_graph().vertex_count(), 426);
            let report = verify_cert(&lifted, Mode::Iso, &opts);
            assert!(report.passed, "{:?}", report.worst_offender);
            assert!(report.max_residual < 1e-9);
        }
    }
}
