//! Star-algebra backends and representations of solution groups.
//!
//! Two backends implement [`StarAlgebra`]: dense complex matrices
//! ([`DenseAlgebra`]) and the exact group algebra of a finite group with
//! dyadic coefficients ([`GroupAlgebra`]). A [`Representation`] assigns an
//! element to every variable (and optionally to `gamma`), and
//! [`verify_representation`] checks the defining relations.

mod dense;
mod dyadic;
mod group_algebra;
mod pauli;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::f2::LinearSystem;

pub use dense::DenseAlgebra;
pub use dyadic::Dyadic;
pub use group_algebra::{group_algebra_rep, GaElem, GroupAlgebra};
pub use pauli::{pauli_magic_square_rep, pauli_observable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("expected {expected} generator images, got {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("element has shape {found:?}, expected {expected}x{expected}")]
    DimensionMismatch { expected: usize, found: (usize, usize) },
    #[error("right-hand side {0} has even weight; the magic square needs odd weight")]
    EvenRhs(String),
    #[error("system is not the incidence system of K3,3")]
    NotMagicSquare,
    #[error("group has {group} generators but the presentation has {presentation}")]
    GroupMismatch { group: usize, presentation: usize },
    #[error("built representation fails its relations: {0}")]
    Internal(String),
    #[error("invalid representation document: {0}")]
    Json(String),
}

/// Which relation set a representation or certificate is checked against:
/// `Qut` is the homogeneous solution group (or `Γ(M,b)` when a `gamma`
/// image is given), `Iso` the algebra with `∏ x_i = (−1)^{b_k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Qut,
    Iso,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Qut => "qut",
            Mode::Iso => "iso",
        })
    }
}

/// A unital algebra with involution.
pub trait StarAlgebra {
    type Elem: Clone + fmt::Debug + PartialEq;

    /// Backend tag used in documents: `"dense"` or `"group-algebra"`.
    fn backend(&self) -> &'static str;
    /// Exact backends compare residuals with literal zero.
    fn is_exact(&self) -> bool;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, s: Dyadic) -> Self::Elem;
    fn adjoint(&self, a: &Self::Elem) -> Self::Elem;
    /// Frobenius norm for matrices, ℓ² norm of coefficients otherwise.
    fn norm(&self, a: &Self::Elem) -> f64;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn check(&self, a: &Self::Elem) -> Result<(), RepError>;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RepError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, Dyadic::from_int(-1)))
    }

    /// `‖a − b‖`.
    fn residual(&self, a: &Self::Elem, b: &Self::Elem) -> f64 {
        self.norm(&self.sub(a, b))
    }

    /// `a = b` exactly or within `tol`.
    fn agrees(&self, a: &Self::Elem, b: &Self::Elem, tol: f64) -> bool {
        let d = self.sub(a, b);
        if self.is_exact() {
            self.is_zero(&d)
        } else {
            self.norm(&d) <= tol
        }
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    fn product<'a, I>(&self, factors: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        factors
            .into_iter()
            .fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `½(1 + sign·x)`.
    fn projection(&self, x: &Self::Elem, plus: bool) -> Self::Elem {
        let sx = if plus {
            x.clone()
        } else {
            self.scale(x, Dyadic::from_int(-1))
        };
        self.scale(&self.add(&self.one(), &sx), Dyadic::HALF)
    }
}

/// Images of the variables `x_1..x_n` (and optionally `gamma`).
#[derive(Clone, Debug)]
pub struct Representation<A: StarAlgebra> {
    algebra: A,
    names: Vec<String>,
    images: Vec<A::Elem>,
    gamma: Option<A::Elem>,
}

impl<A: StarAlgebra> Representation<A> {
    pub fn new(
        algebra: A,
        names: Vec<String>,
        images: Vec<A::Elem>,
        gamma: Option<A::Elem>,
    ) -> Result<Self, RepError> {
        if names.len() != images.len() {
            return Err(RepError::GeneratorCount {
                expected: names.len(),
                found: images.len(),
            });
        }
        for e in images.iter().chain(gamma.iter()) {
            algebra.check(e)?;
        }
        Ok(Self {
            algebra,
            names,
            images,
            gamma,
        })
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn images(&self) -> &[A::Elem] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &A::Elem {
        &self.images[i]
    }

    pub fn gamma(&self) -> Option<&A::Elem> {
        self.gamma.as_ref()
    }

    /// Same algebra with the images of `i` and `j` exchanged.
    pub fn with_swapped(&self, i: usize, j: usize) -> Self
    where
        A: Clone,
    {
        let mut r = self.clone();
        r.images.swap(i, j);
        r
    }

    /// `{"backend": …, "images": {name: element}, "gamma": element?}`.
    pub fn to_json(&self) -> String {
        let images: serde_json::Map<String, Value> = self
            .names
            .iter()
            .zip(&self.images)
            .map(|(n, e)| (n.clone(), self.algebra.elem_to_json(e)))
            .collect();
        let mut doc = json!({
            "backend": self.algebra.backend(),
            "generators": self.names,
            "images": images,
        });
        if let Some(g) = &self.gamma {
            doc["gamma"] = self.algebra.elem_to_json(g);
        }
        serde_json::to_string_pretty(&doc).expect("representations always serialize")
    }

    /// Parses [`to_json`](Self::to_json) output over `algebra`.
    pub fn from_json(algebra: A, text: &str) -> Result<Self, RepError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| RepError::Json(e.to_string()))?;
        if doc["backend"] != algebra.backend() {
            return Err(RepError::Json(format!("backend is not {}", algebra.backend())));
        }
        let names: Vec<String> = serde_json::from_value(doc["generators"].clone())
            .map_err(|e| RepError::Json(e.to_string()))?;
        let images = names
            .iter()
            .map(|n| {
                let v = doc["images"]
                    .get(n)
                    .ok_or_else(|| RepError::Json(format!("missing image for {n}")))?;
                algebra.elem_from_json(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let gamma = match doc.get("gamma") {
            Some(v) => Some(algebra.elem_from_json(v)?),
            None => None,
        };
        Self::new(algebra, names, images, gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationFamily {
    SelfAdjoint,
    Involution,
    Commutation,
    Product,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub family: RelationFamily,
    pub relation: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    pub mode: Mode,
    pub backend: String,
    pub exact: bool,
    pub tolerance: f64,
    pub passed: bool,
    pub max_residual: f64,
    pub checks: Vec<RelationCheck>,
}

impl RepReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks the relations of the solution group (`Qut`) or of the algebra
/// with signs `(−1)^{b_k}` (`Iso`) on the images of `r`.
pub fn verify_representation<A: StarAlgebra>(
    r: &Representation<A>,
    sys: &LinearSystem,
    mode: Mode,
    tol: f64,
) -> Result<RepReport, RepError> {
    if r.images.len() != sys.variables() {
        return Err(RepError::GeneratorCount {
            expected: sys.variables(),
            found: r.images.len(),
        });
    }
    let a = &r.algebra;
    let one = a.one();
    let mut checks = Vec::new();
    let mut record = |family, relation: String, lhs: &A::Elem, rhs: &A::Elem| {
        let diff = a.sub(lhs, rhs);
        let residual = a.norm(&diff);
        let passed = if a.is_exact() {
            a.is_zero(&diff)
        } else {
            residual <= tol
        };
        checks.push(RelationCheck {
            family,
            relation,
            residual,
            passed,
        });
    };

    for (name, x) in r.names.iter().zip(&r.images) {
        record(RelationFamily::SelfAdjoint, format!("{name}* = {name}"), &a.adjoint(x), x);
        record(RelationFamily::Involution, format!("{name}^2 = 1"), &a.mul(x, x), &one);
    }
    let mut pairs = BTreeSet::new();
    for k in 0..sys.constraints() {
        let s = sys.support(k);
        for (p, &i) in s.iter().enumerate() {
            for &j in &s[p + 1..] {
                pairs.insert((i, j));
            }
        }
    }
    for (i, j) in pairs {
        let (xi, xj) = (&r.images[i], &r.images[j]);
        record(
            RelationFamily::Commutation,
            format!("{0} {1} = {1} {0}", r.names[i], r.names[j]),
            &a.mul(xi, xj),
            &a.mul(xj, xi),
        );
    }
    let gamma = match mode {
        Mode::Iso => None,
        Mode::Qut => r.gamma.as_ref(),
    };
    for k in 0..sys.constraints() {
        let s = sys.support(k);
        let lhs = a.product(s.iter().map(|&i| &r.images[i]));
        let word = s
            .iter()
            .map(|&i| r.names[i].as_str())
            .collect::<Vec<_>>()
            .join(" ");
        let odd = sys.rhs().get(k);
        let (rhs, label) = match (mode, gamma) {
            (Mode::Iso, _) if odd => (a.scale(&one, Dyadic::from_int(-1)), "-1"),
            (Mode::Iso, _) => (one.clone(), "1"),
            (Mode::Qut, Some(g)) if odd => (g.clone(), "gamma"),
            (Mode::Qut, _) => (one.clone(), "1"),
        };
        record(RelationFamily::Product, format!("{word} = {label}"), &lhs, &rhs);
    }
    if let Some(g) = gamma {
        record(RelationFamily::Gamma, "gamma* = gamma".into(), &a.adjoint(g), g);
        record(RelationFamily::Gamma, "gamma^2 = 1".into(), &a.mul(g, g), &one);
        for (name, x) in r.names.iter().zip(&r.images) {
            record(
                RelationFamily::Gamma,
                format!("gamma {name} = {name} gamma"),
                &a.mul(g, x),
                &a.mul(x, g),
            );
        }
    }

    let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(RepReport {
        mode,
        backend: a.backend().into(),
        exact: a.is_exact(),
        tolerance: if a.is_exact() { 0.0 } else { tol },
        passed: checks.iter().all(|c| c.passed),
        max_residual,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{incidence_system, parse_system, BitVec, SimpleGraph};
    use crate::fpgroups::{solution_presentation, FiniteGroup};
    use ndarray::Array2;
    use num_complex::Complex64;
    use std::sync::Arc;

    fn k33(b: BitVec) -> LinearSystem {
        incidence_system(&SimpleGraph::complete_bipartite(3, 3), &b).unwrap()
    }

    #[test]
    fn trivial_one_dimensional_rep() {
        let sys = parse_system("11|0").unwrap();
        let alg = DenseAlgebra::new(1);
        let one = alg.one();
        let r = Representation::new(alg, vec!["x1".into(), "x2".into()], vec![one.clone(), one], None)
            .unwrap();
        let rep = verify_representation(&r, &sys, Mode::Qut, 1e-12).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.checks.len(), 2 + 2 + 1 + 1);
    }

    #[test]
    fn wrong_generator_count_is_an_error() {
        let sys = parse_system("11|0").unwrap();
        let alg = DenseAlgebra::new(1);
        let one = alg.one();
        let r = Representation::new(alg, vec!["x1".into()], vec![one], None).unwrap();
        assert!(matches!(
            verify_representation(&r, &sys, Mode::Qut, 1e-12),
            Err(RepError::GeneratorCount { .. })
        ));
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let alg = DenseAlgebra::new(2);
        let bad: Array2<Complex64> = Array2::eye(3);
        assert!(matches!(
            Representation::new(alg, vec!["x1".into()], vec![bad], None),
            Err(RepError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pauli_rep_passes_and_swapped_fails() {
        let sys = k33(BitVec::unit(6, 0));
        let r = pauli_magic_square_rep(sys.rhs()).unwrap();
        let rep = verify_representation(&r, &sys, Mode::Iso, 1e-12).unwrap();
        assert!(rep.passed, "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.max_residual < 1e-12);

        // Swapping two images from different rows breaks some product.
        let bad = r.with_swapped(0, 4);
        let rep = verify_representation(&bad, &sys, Mode::Iso, 1e-12).unwrap();
        assert!(!rep.passed);
        assert!(rep.failures().any(|c| c.family == RelationFamily::Product));
    }

    #[test]
    fn projections_from_accepted_reps() {
        let sys = k33(BitVec::unit(6, 0));
        let r = pauli_magic_square_rep(sys.rhs()).unwrap();
        let a = r.algebra();
        for x in r.images() {
            let (pp, pm) = (a.projection(x, true), a.projection(x, false));
            for p in [&pp, &pm] {
                assert!(a.agrees(&a.mul(p, p), p, 1e-12));
                assert!(a.agrees(&a.adjoint(p), p, 1e-12));
            }
            assert!(a.agrees(&a.add(&pp, &pm), &a.one(), 1e-12));
        }
    }

    #[test]
    fn group_algebra_rep_k33_commutes_and_agrees_with_dense() {
        let sys = k33(BitVec::zeros(6));
        let p = solution_presentation(&sys, true);
        let g = Arc::new(FiniteGroup::enumerate(&p, 1000).unwrap());
        let r = group_algebra_rep(&p, g.clone()).unwrap();
        let rep = verify_representation(&r, &sys, Mode::Qut, 0.0).unwrap();
        assert!(rep.passed && rep.exact && rep.max_residual == 0.0);
        let a = r.algebra();
        for x in r.images() {
            for y in r.images() {
                assert!(a.is_zero(&a.commutator(x, y)));
            }
        }

        // The left regular representation gives the same verdicts densely.
        let dense_alg = DenseAlgebra::new(g.order());
        let to_dense = |e: &GaElem| a.to_dense(e);
        let dense = Representation::new(
            dense_alg,
            r.names().to_vec(),
            r.images().iter().map(to_dense).collect(),
            None,
        )
        .unwrap();
        let drep = verify_representation(&dense, &sys, Mode::Qut, 1e-10).unwrap();
        assert!(drep.passed);
        let (rbad, dbad) = (r.with_swapped(0, 8), dense.with_swapped(0, 8));
        let v1 = verify_representation(&rbad, &sys, Mode::Qut, 0.0).unwrap();
        let v2 = verify_representation(&dbad, &sys, Mode::Qut, 1e-10).unwrap();
        let verdicts = |r: &RepReport| r.checks.iter().map(|c| c.passed).collect::<Vec<_>>();
        assert_eq!(verdicts(&v1), verdicts(&v2));
        assert!(!v1.passed);
    }

    #[test]
    fn gamma_rep_in_qut_mode() {
        let sys = k33(BitVec::unit(6, 0));
        let p = solution_presentation(&sys, false);
        let g = Arc::new(FiniteGroup::enumerate(&p, 10_000).unwrap());
        let r = group_algebra_rep(&p, g).unwrap();
        assert!(r.gamma().is_some());
        let rep = verify_representation(&r, &sys, Mode::Qut, 0.0).unwrap();
        assert!(rep.passed);
        assert!(rep.checks.iter().any(|c| c.relation == "x1 x2 x3 = gamma"));
        // gamma is not −1 in the group algebra, so the Iso relations fail.
        assert!(!verify_representation(&r, &sys, Mode::Iso, 0.0).unwrap().passed);
    }

    #[test]
    fn json_round_trip() {
        let r = pauli_magic_square_rep(&BitVec::unit(6, 0)).unwrap();
        let back = Representation::from_json(DenseAlgebra::new(4), &r.to_json()).unwrap();
        assert_eq!(back.images(), r.images());
        assert_eq!(back.names(), r.names());

        let sys = k33(BitVec::zeros(6));
        let p = solution_presentation(&sys, true);
        let g = Arc::new(FiniteGroup::enumerate(&p, 1000).unwrap());
        let r = group_algebra_rep(&p, g.clone()).unwrap();
        let text = r.to_json();
        assert!(text.contains("group-algebra"));
        let back = Representation::from_json(GroupAlgebra::new(g), &text).unwrap();
        assert_eq!(back.images(), r.images());
    }
}
