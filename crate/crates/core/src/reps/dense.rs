use ndarray::Array2;
use num_complex::Complex64;
use serde_json::Value;

use super::{Dyadic, RepError, StarAlgebra};

/// `d × d` complex matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseAlgebra {
    dim: usize,
}

impl DenseAlgebra {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl StarAlgebra for DenseAlgebra {
    type Elem = Array2<Complex64>;

    fn backend(&self) -> &'static str {
        "dense"
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn zero(&self) -> Self::Elem {
        Array2::zeros((self.dim, self.dim))
    }

    fn one(&self) -> Self::Elem {
        Array2::eye(self.dim)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.dot(b)
    }

    fn scale(&self, a: &Self::Elem, s: Dyadic) -> Self::Elem {
        a * Complex64::new(s.to_f64(), 0.0)
    }

    fn adjoint(&self, a: &Self::Elem) -> Self::Elem {
        a.t().mapv(|z| z.conj())
    }

    fn norm(&self, a: &Self::Elem) -> f64 {
        a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    fn check(&self, a: &Self::Elem) -> Result<(), RepError> {
        if a.dim() == (self.dim, self.dim) {
            Ok(())
        } else {
            Err(RepError::DimensionMismatch {
                expected: self.dim,
                found: a.dim(),
            })
        }
    }

    /// Rows of `[re, im]` pairs.
    fn elem_to_json(&self, a: &Self::Elem) -> Value {
        Value::Array(
            a.rows()
                .into_iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|z| serde_json::json!([z.re, z.im]))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, RepError> {
        let rows: Vec<Vec<[f64; 2]>> =
            serde_json::from_value(v.clone()).map_err(|e| RepError::Json(e.to_string()))?;
        let d = self.dim;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(RepError::DimensionMismatch {
                expected: d,
                found: (rows.len(), rows.first().map_or(0, Vec::len)),
            });
        }
        Ok(Array2::from_shape_fn((d, d), |(i, j)| {
            Complex64::new(rows[i][j][0], rows[i][j][1])
        }))
    }
}
