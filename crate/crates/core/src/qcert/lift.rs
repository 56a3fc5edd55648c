use std::collections::{BTreeMap, HashMap};

use super::{verify_cert, CertError, MagicUnitaryCert, VerifyOptions};
use crate::decolor::DecoratedVertexId;
use crate::graphs::{ColoredGraph, VertexKind};
use crate::reps::{Mode, StarAlgebra};

fn decorated_ids(g: &ColoredGraph) -> Result<Vec<DecoratedVertexId>, CertError> {
    g.vertices()
        .iter()
        .map(|v| match v.kind {
            VertexKind::Decorated(d) => Ok(d),
            _ => Err(CertError::NotDecolored),
        })
        .collect()
}

/// Gadget vertices of each subdivided edge `{a, b}`, indexed by path level.
fn gadgets(ids: &[DecoratedVertexId]) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (p, id) in ids.iter().enumerate() {
        match *id {
            DecoratedVertexId::Subdivision(a, b) => out.entry((a, b)).or_default().push((0, p)),
            DecoratedVertexId::EdgePath(a, b, i) => out.entry((a, b)).or_default().push((i, p)),
            _ => {}
        }
    }
    for list in out.values_mut() {
        list.sort_unstable();
    }
    out
}

/// Lifts a certificate between colored graphs `G`, `G′` to their fully
/// decolored graphs `G″`. Vertex and vertex-path entries copy `u_{v,x}` level
/// by level; gadget entries of edges `{a,b}`, `{c,d}` are
/// `u_{ac}u_{bd} + u_{ad}u_{bc}` at equal levels. Both products must commute
/// term by term.
pub fn lift_cert<A: StarAlgebra + Clone>(
    cert: &MagicUnitaryCert<A>,
    gpp1: &ColoredGraph,
    gpp2: &ColoredGraph,
    opts: &VerifyOptions,
) -> Result<MagicUnitaryCert<A>, CertError> {
    let pa1 = gpp1.meta().assignment.as_ref().ok_or(CertError::NotDecolored)?;
    let pa2 = gpp2.meta().assignment.as_ref().ok_or(CertError::NotDecolored)?;
    if pa1 != pa2 {
        return Err(CertError::AssignmentMismatch);
    }
    let ids1 = decorated_ids(gpp1)?;
    let ids2 = decorated_ids(gpp2)?;
    let out_of_range = |ids: &[DecoratedVertexId], n: usize| {
        ids.iter().any(|id| match *id {
            DecoratedVertexId::Original(v) | DecoratedVertexId::VertexPath(v, _) => v >= n,
            DecoratedVertexId::Subdivision(a, b) | DecoratedVertexId::EdgePath(a, b, _) => b >= n || a >= b,
        })
    };
    if out_of_range(&ids1, cert.row_graph().vertex_count()) || out_of_range(&ids2, cert.col_graph().vertex_count()) {
        return Err(CertError::NotDecolored);
    }
    let report = verify_cert(cert, Mode::Iso, opts);
    if !report.passed {
        return Err(CertError::Unverified(report.worst_offender.unwrap_or_default()));
    }

    let a = cert.algebra();
    let index2: HashMap<DecoratedVertexId, usize> = ids2.iter().enumerate().map(|(p, &id)| (id, p)).collect();
    let mut elements: Vec<A::Elem> = cert.elements().to_vec();
    let mut entries: Vec<((usize, usize), usize)> = Vec::new();

    for (p, id) in ids1.iter().enumerate() {
        let (v, level) = match *id {
            DecoratedVertexId::Original(v) => (v, 0),
            DecoratedVertexId::VertexPath(v, i) => (v, i),
            _ => continue,
        };
        for &(x, e) in cert.row(v) {
            let target = if level == 0 {
                DecoratedVertexId::Original(x)
            } else {
                DecoratedVertexId::VertexPath(x, level)
            };
            if let Some(&q) = index2.get(&target) {
                entries.push(((p, q), e));
            }
        }
    }

    let gadgets1 = gadgets(&ids1);
    let gadgets2 = gadgets(&ids2);
    let negligible = |w: &A::Elem| a.is_zero(w) || (!a.is_exact() && a.norm(w) < opts.tol * 1e-4);
    for (&(ea, eb), rows) in &gadgets1 {
        let mut sums: BTreeMap<(usize, usize), A::Elem> = BTreeMap::new();
        for &(c, e1) in cert.row(ea) {
            for &(d, e2) in cert.row(eb) {
                let key = (c.min(d), c.max(d));
                if c == d || !gadgets2.contains_key(&key) {
                    continue;
                }
                let (x, y) = (&cert.elements()[e1], &cert.elements()[e2]);
                let term = a.mul(x, y);
                if negligible(&term) {
                    continue;
                }
                let comm = a.commutator(x, y);
                if !negligible(&comm) {
                    return Err(CertError::NonCommuting(format!("u[{ea},{c}]"), format!("u[{eb},{d}]")));
                }
                sums.entry(key)
                    .and_modify(|s| *s = a.add(s, &term))
                    .or_insert(term);
            }
        }
        for (key, w) in sums {
            if negligible(&w) {
                continue;
            }
            let id = elements.len();
            elements.push(w);
            let cols = &gadgets2[&key];
            for &(level, p) in rows {
                if let Ok(k) = cols.binary_search_by_key(&level, |t| t.0) {
                    entries.push(((p, cols[k].1), id));
                }
            }
        }
    }

    Ok(MagicUnitaryCert::from_parts(
        a.clone(),
        gpp1.clone(),
        gpp2.clone(),
        elements,
        entries,
        format!("{} (lifted)", cert.provenance()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decolor::{decolor_canonical, decolor_edges, decolor_vertices, PathAssignment};
    use crate::f2::{incidence_system, BitVec, SimpleGraph};
    use crate::graphs::{build_gstar, ColorTag, Sign};
    use crate::reps::DenseAlgebra;

    fn c0() -> ColorTag {
        ColorTag::Shared(Sign::Minus)
    }

    #[test]
    fn permutations_lift_to_permutations() {
        let h = SimpleGraph::complete_bipartite(3, 3);
        let g = build_gstar(&incidence_system(&h, &BitVec::zeros(6)).unwrap()).unwrap();
        let (_, gpp) = decolor_canonical(&g, &c0()).unwrap();
        let n = g.vertex_count();
        let identity: Vec<usize> = (0..n).collect();
        let cert = MagicUnitaryCert::from_permutation(DenseAlgebra::new(1), g.clone(), g.clone(), &identity).unwrap();
        let lifted = lift_cert(&cert, &gpp, &gpp, &VerifyOptions::with_tol(1e-9)).unwrap();
        assert_eq!(lifted.entry_count(), gpp.vertex_count());
        for i in 0..gpp.vertex_count() {
            assert_eq!(lifted.row(i).len(), 1);
            assert_eq!(lifted.row(i)[0].0, i);
        }
        assert!(verify_cert(&lifted, Mode::Qut, &VerifyOptions::with_tol(1e-9)).passed);
    }

    #[test]
    fn mismatched_assignments_are_rejected() {
        let h = SimpleGraph::complete_bipartite(3, 3);
        let g = build_gstar(&incidence_system(&h, &BitVec::zeros(6)).unwrap()).unwrap();
        let (_, gpp) = decolor_canonical(&g, &c0()).unwrap();
        let mut pa: PathAssignment = gpp.meta().assignment.clone().unwrap();
        for n in pa.vertex_lengths.values_mut() {
            *n += 1;
        }
        let other = decolor_edges(&decolor_vertices(&g, &pa).unwrap(), &pa).unwrap();
        let n = g.vertex_count();
        let cert = MagicUnitaryCert::from_permutation(DenseAlgebra::new(1), g.clone(), g.clone(), &(0..n).collect::<Vec<_>>()).unwrap();
        let opts = VerifyOptions::default();
        assert_eq!(lift_cert(&cert, &gpp, &other, &opts).unwrap_err(), CertError::AssignmentMismatch);
        assert_eq!(lift_cert(&cert, &g, &g, &opts).unwrap_err(), CertError::NotDecolored);
    }
}
