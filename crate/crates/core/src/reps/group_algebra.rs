use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use serde_json::Value;

use super::{Dyadic, RepError, Representation, StarAlgebra};
use crate::fpgroups::{FiniteGroup, Presentation};

/// `Σ c_g g` with dyadic coefficients, sorted by group element, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaElem(Vec<(u32, Dyadic)>);

impl GaElem {
    pub fn terms(&self) -> &[(u32, Dyadic)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, g: usize) -> Dyadic {
        self.0
            .binary_search_by_key(&(g as u32), |t| t.0)
            .map_or(Dyadic::ZERO, |i| self.0[i].1)
    }

    fn from_unsorted(mut terms: Vec<(u32, Dyadic)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, Dyadic)> = Vec::with_capacity(terms.len());
        for (g, c) in terms {
            match out.last_mut() {
                Some((h, d)) if *h == g => *d = *d + c,
                _ => out.push((g, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        GaElem(out)
    }
}

/// The group algebra of a finite group with exact dyadic coefficients.
/// The adjoint maps `g ↦ g⁻¹` and keeps coefficients.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
}

impl GroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The basis element `g`.
    pub fn element(&self, g: usize) -> GaElem {
        GaElem(vec![(g as u32, Dyadic::ONE)])
    }

    /// Left regular representation: `g` acts on `ℓ²(G)` by `h ↦ gh`.
    pub fn to_dense(&self, a: &GaElem) -> Array2<Complex64> {
        let n = self.group.order();
        let mut m = Array2::zeros((n, n));
        for &(g, c) in a.terms() {
            let c = Complex64::new(c.to_f64(), 0.0);
            for h in 0..n {
                m[[self.group.mul(g as usize, h), h]] += c;
            }
        }
        m
    }
}

impl StarAlgebra for GroupAlgebra {
    type Elem = GaElem;

    fn backend(&self) -> &'static str {
        "group-algebra"
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn zero(&self) -> GaElem {
        GaElem::default()
    }

    fn one(&self) -> GaElem {
        self.element(self.group.identity())
    }

    fn add(&self, a: &GaElem, b: &GaElem) -> GaElem {
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&a.0, &b.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        while i < x.len() || j < y.len() {
            if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
                out.push(x[i]);
                i += 1;
            } else if i == x.len() || y[j].0 < x[i].0 {
                out.push(y[j]);
                j += 1;
            } else {
                let c = x[i].1 + y[j].1;
                if !c.is_zero() {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        GaElem(out)
    }

    fn mul(&self, a: &GaElem, b: &GaElem) -> GaElem {
        let mut terms = Vec::with_capacity(a.0.len() * b.0.len());
        for &(g, c) in &a.0 {
            for &(h, d) in &b.0 {
                terms.push((self.group.mul(g as usize, h as usize) as u32, c * d));
            }
        }
        GaElem::from_unsorted(terms)
    }

    fn scale(&self, a: &GaElem, s: Dyadic) -> GaElem {
        if s.is_zero() {
            return GaElem::default();
        }
        GaElem(a.0.iter().map(|&(g, c)| (g, c * s)).collect())
    }

    fn adjoint(&self, a: &GaElem) -> GaElem {
        GaElem::from_unsorted(
            a.0.iter()
                .map(|&(g, c)| (self.group.inv(g as usize) as u32, c))
                .collect(),
        )
    }

    fn norm(&self, a: &GaElem) -> f64 {
        a.0.iter().map(|t| t.1.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    fn is_zero(&self, a: &GaElem) -> bool {
        a.is_zero()
    }

    fn check(&self, a: &GaElem) -> Result<(), RepError> {
        match a.0.iter().find(|t| t.0 as usize >= self.group.order()) {
            Some(t) => Err(RepError::Json(format!("element {} outside the group", t.0))),
            None => Ok(()),
        }
    }

    /// Support list `[[element, num, log2den], …]`.
    fn elem_to_json(&self, a: &GaElem) -> Value {
        Value::Array(
            a.0.iter()
                .map(|&(g, c)| serde_json::json!([g, c.num(), c.log2_den()]))
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<GaElem, RepError> {
        let terms: Vec<(u32, i64, u32)> =
            serde_json::from_value(v.clone()).map_err(|e| RepError::Json(e.to_string()))?;
        let e = GaElem::from_unsorted(
            terms
                .into_iter()
                .map(|(g, n, d)| (g, Dyadic::new(n, d)))
                .collect(),
        );
        self.check(&e)?;
        Ok(e)
    }
}

/// The defining representation of `group` inside its own group algebra:
/// each generator maps to its basis element. A generator named `gamma`
/// becomes the `gamma` image.
pub fn group_algebra_rep(
    p: &Presentation,
    group: Arc<FiniteGroup>,
) -> Result<Representation<GroupAlgebra>, RepError> {
    if group.generator_count() != p.generator_count() {
        return Err(RepError::GroupMismatch {
            group: group.generator_count(),
            presentation: p.generator_count(),
        });
    }
    let alg = GroupAlgebra::new(group);
    let mut names = Vec::new();
    let mut images = Vec::new();
    let mut gamma = None;
    for (x, name) in p.generators().iter().enumerate() {
        let e = alg.element(alg.group().generator(x));
        if name == "gamma" {
            gamma = Some(e);
        } else {
            names.push(name.clone());
            images.push(e);
        }
    }
    Representation::new(alg, names, images, gamma)
}
