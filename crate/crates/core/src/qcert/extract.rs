use std::collections::BTreeMap;

use super::{block_element, verify_cert, CertError, MagicUnitaryCert, VerifyOptions};
use crate::f2::{BitVec, LinearSystem};
use crate::graphs::SignVector;
use crate::reps::{Dyadic, Mode, Representation, StarAlgebra};

/// Generators recovered from a certificate.
#[derive(Clone, Debug)]
pub struct Extraction<A: StarAlgebra> {
    /// `y_i`, taken from the first block containing `i`; the identity for
    /// variables that occur in no constraint.
    pub generators: Vec<A::Elem>,
    /// Largest `‖y_i^{(k)} − y_i^{(l)}‖` over blocks `k, l ∋ i`.
    pub discrepancy: f64,
    /// Largest `‖y_i − R(x_i)‖` when a representation was supplied.
    pub round_trip: Option<f64>,
    /// Largest `‖∏_{S_k} y_i − (−1)^{b_k+b′_k}‖`.
    pub product_residual: f64,
}

/// Two certificate entries that fail to commute.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub commutator_norm: f64,
}

/// Resolution of the identity inside one block.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolution {
    pub block: usize,
    /// `‖Σ_{right parity δ} v_δ − 1‖`.
    pub sum_residual: f64,
    /// Largest `‖v_δ‖` over wrong-parity `δ`.
    pub wrong_parity: f64,
    pub passed: bool,
}

fn sign_scalar(minus: bool) -> Dyadic {
    Dyadic::from_int(if minus { -1 } else { 1 })
}

/// Recovers `y_i^{(k)} = Σ_β (α△β)_i u_{(k,α),(k,β)}` with `α` the first row
/// vertex of block `k`. The certificate is verified first (in iso mode, so
/// row and column graphs may differ).
pub fn extract_generators<A: StarAlgebra>(
    cert: &MagicUnitaryCert<A>,
    r: Option<&Representation<A>>,
    opts: &VerifyOptions,
) -> Result<Extraction<A>, CertError> {
    let (g1, g2) = (cert.row_graph(), cert.col_graph());
    let s1 = g1.meta().system.as_ref().ok_or(CertError::MissingSystem)?;
    let s2 = g2.meta().system.as_ref().ok_or(CertError::MissingSystem)?;
    if s1.matrix() != s2.matrix() {
        return Err(CertError::SystemMismatch);
    }
    let report = verify_cert(cert, Mode::Iso, opts);
    if !report.passed {
        return Err(CertError::Unverified(report.worst_offender.unwrap_or_default()));
    }
    let a = cert.algebra();
    let n = s1.variables();
    if let Some(r) = r {
        if r.images().len() != n {
            return Err(CertError::RepresentationMismatch {
                expected: n,
                found: r.images().len(),
            });
        }
    }

    let mut per_block: Vec<BTreeMap<usize, A::Elem>> = Vec::with_capacity(s1.constraints());
    for k in 0..s1.constraints() {
        let rows = g1.block_vertices(k);
        let &first = rows.first().ok_or(CertError::NotABlockVertex(k))?;
        let alpha = &g1.block_label(first).ok_or(CertError::NotABlockVertex(first))?.assignment;
        let mut ys: BTreeMap<usize, A::Elem> = s1.support(k).into_iter().map(|i| (i, a.zero())).collect();
        for &(j, e) in cert.row(first) {
            let beta = &g2.block_label(j).ok_or(CertError::NotABlockVertex(j))?.assignment;
            let delta = alpha.delta(beta);
            for (i, s) in delta.iter() {
                let term = a.scale(&cert.elements()[e], sign_scalar(s.is_minus()));
                let y = ys.get_mut(&i).expect("delta lives on the block support");
                *y = a.add(y, &term);
            }
        }
        per_block.push(ys);
    }

    let mut generators: Vec<Option<A::Elem>> = vec![None; n];
    let mut discrepancy = 0.0f64;
    for ys in &per_block {
        for (&i, y) in ys {
            match &generators[i] {
                None => generators[i] = Some(y.clone()),
                Some(prev) => discrepancy = discrepancy.max(a.residual(prev, y)),
            }
        }
    }
    let generators: Vec<A::Elem> = generators.into_iter().map(|y| y.unwrap_or_else(|| a.one())).collect();

    let rhs = s1.rhs().xor(s2.rhs());
    let mut product_residual = 0.0f64;
    for (k, ys) in per_block.iter().enumerate() {
        let p = a.product(ys.values());
        let target = a.scale(&a.one(), sign_scalar(rhs.get(k)));
        product_residual = product_residual.max(a.residual(&p, &target));
    }

    let round_trip = r.map(|r| {
        (0..n)
            .filter(|&i| per_block.iter().any(|ys| ys.contains_key(&i)))
            .map(|i| a.residual(&generators[i], r.image(i)))
            .fold(0.0, f64::max)
    });
    Ok(Extraction {
        generators,
        discrepancy,
        round_trip,
        product_residual,
    })
}

/// Searches every pair of distinct nonzero elements for a nonzero
/// commutator (above `tol` for inexact backends). Reports the first entry
/// position of each element.
pub fn noncommuting_witness<A: StarAlgebra>(cert: &MagicUnitaryCert<A>, tol: f64) -> Option<Witness> {
    let a = cert.algebra();
    let mut first: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (pos, e) in cert.sorted_entries() {
        if !a.is_zero(&cert.elements()[e]) {
            first.entry(e).or_insert(pos);
        }
    }
    let ids: Vec<(usize, (usize, usize))> = first.into_iter().collect();
    for (p, &(x, px)) in ids.iter().enumerate() {
        for &(y, py) in &ids[p + 1..] {
            let c = a.commutator(&cert.elements()[x], &cert.elements()[y]);
            let norm = a.norm(&c);
            let nonzero = if a.is_exact() { !a.is_zero(&c) } else { norm > tol };
            if nonzero {
                return Some(Witness {
                    first: px,
                    second: py,
                    commutator_norm: norm,
                });
            }
        }
    }
    None
}

/// For each constraint, the elements `v_δ = ∏ p_i^{δ_i}` of a representation
/// of the algebra with right-hand side `rhs`: right-parity ones must sum to
/// the identity and wrong-parity ones must vanish.
pub fn block_resolutions<A: StarAlgebra>(
    r: &Representation<A>,
    sys: &LinearSystem,
    rhs: &BitVec,
    tol: f64,
) -> Vec<Resolution> {
    let a = r.algebra();
    let within = |res: f64, zero: bool| if a.is_exact() { zero } else { res <= tol };
    (0..sys.constraints())
        .map(|k| {
            let support = sys.support(k);
            let mut sum = a.zero();
            let mut wrong = 0.0f64;
            let mut ok = true;
            for delta in SignVector::enumerate(&support) {
                let v = block_element(r, &delta);
                if delta.is_odd() == rhs.get(k) {
                    sum = a.add(&sum, &v);
                } else {
                    let norm = a.norm(&v);
                    wrong = wrong.max(norm);
                    ok &= within(norm, a.is_zero(&v));
                }
            }
            let diff = a.sub(&sum, &a.one());
            let sum_residual = a.norm(&diff);
            ok &= within(sum_residual, a.is_zero(&diff));
            Resolution {
                block: k,
                sum_residual,
                wrong_parity: wrong,
                passed: ok,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{incidence_system, parse_system, SimpleGraph};
    use crate::graphs::{build_g, build_gstar};
    use crate::qcert::build_magic_unitary;
    use crate::reps::{pauli_magic_square_rep, DenseAlgebra};

    #[test]
    fn trivial_certificate_extracts_identities() {
        let g = build_g(&parse_system("11|0").unwrap()).unwrap();
        let alg = DenseAlgebra::new(1);
        let one = alg.one();
        let r = Representation::new(alg, vec!["x1".into(), "x2".into()], vec![one.clone(), one.clone()], None).unwrap();
        let cert = build_magic_unitary(&g, &g, &r).unwrap();
        let ex = extract_generators(&cert, Some(&r), &VerifyOptions::default()).unwrap();
        assert!(ex.generators.iter().all(|y| alg.residual(y, &one) < 1e-15));
        assert_eq!(ex.round_trip, Some(0.0));
        assert!(noncommuting_witness(&cert, 1e-10).is_none());
    }

    #[test]
    fn pauli_round_trip_and_resolutions() {
        let h = SimpleGraph::complete_bipartite(3, 3);
        let b = BitVec::unit(6, 0);
        let g0 = build_gstar(&incidence_system(&h, &BitVec::zeros(6)).unwrap()).unwrap();
        let g1 = build_gstar(&incidence_system(&h, &b).unwrap()).unwrap();
        let r = pauli_magic_square_rep(&b).unwrap();
        let cert = build_magic_unitary(&g0, &g1, &r).unwrap();
        let ex = extract_generators(&cert, Some(&r), &VerifyOptions::default()).unwrap();
        assert!(ex.discrepancy < 1e-10);
        assert!(ex.round_trip.unwrap() < 1e-10);
        assert!(ex.product_residual < 1e-10);

        let sys = incidence_system(&h, &b).unwrap();
        let res = block_resolutions(&r, &sys, &b, 1e-10);
        assert_eq!(res.len(), 6);
        assert!(res.iter().all(|x| x.passed), "{res:?}");
        // Against the wrong right-hand side the first block breaks.
        let res = block_resolutions(&r, &sys, &BitVec::zeros(6), 1e-10);
        assert!(!res[0].passed && res[1].passed);
    }

    #[test]
    fn unverified_certificates_are_refused() {
        let h = SimpleGraph::complete_bipartite(3, 3);
        let b = BitVec::unit(6, 0);
        let g0 = build_gstar(&incidence_system(&h, &BitVec::zeros(6)).unwrap()).unwrap();
        let g1 = build_gstar(&incidence_system(&h, &b).unwrap()).unwrap();
        let r = pauli_magic_square_rep(&b).unwrap();
        let cert = build_magic_unitary(&g0, &g1, &r).unwrap();
        let mut perm: Vec<usize> = (0..24).collect();
        perm.swap(0, 1);
        let bad = cert.permute_columns(&perm);
        assert!(matches!(
            extract_generators(&bad, None, &VerifyOptions::default()),
            Err(CertError::Unverified(_))
        ));
    }
}
