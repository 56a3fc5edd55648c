//! The Mermin–Peres magic square as a representation of the K3,3 incidence
//! system. Variable `3r + c` is the edge between row vertex `r` and column
//! vertex `3 + c`, and carries the observable in cell `(r, c)`.

use ndarray::{array, linalg::kron, Array2};
use num_complex::Complex64;

use super::{verify_representation, DenseAlgebra, Mode, RepError, Representation};
use crate::f2::{incidence_system, solve, BitVec, LinearSystem, SimpleGraph};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli(name: char) -> Array2<Complex64> {
    match name {
        'I' => array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]],
        'X' => array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
        'Y' => array![[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
        'Z' => array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
        _ => unreachable!("not a Pauli label"),
    }
}

/// Cell `(r, c)` of the standard square. Rows multiply to `+I`, columns
/// to `−I`.
const SQUARE: [[(f64, char, char); 3]; 3] = [
    [(1., 'X', 'I'), (1., 'I', 'X'), (1., 'X', 'X')],
    [(1., 'I', 'Z'), (1., 'Z', 'I'), (1., 'Z', 'Z')],
    [(-1., 'X', 'Z'), (-1., 'Z', 'X'), (1., 'Y', 'Y')],
];

pub fn pauli_observable(row: usize, col: usize) -> Array2<Complex64> {
    let (s, a, b) = SQUARE[row][col];
    kron(&pauli(a), &pauli(b)) * c(s, 0.0)
}

fn k33_system(b: &BitVec) -> Result<LinearSystem, RepError> {
    incidence_system(&SimpleGraph::complete_bipartite(3, 3), b).map_err(|_| RepError::NotMagicSquare)
}

/// Four-dimensional representation of the K3,3 system with right-hand
/// side `b` (odd weight): the standard square with cell signs flipped to
/// move the `−I` products onto the constraints where `b` is 1. Accepted
/// only after its relations verify.
pub fn pauli_magic_square_rep(b: &BitVec) -> Result<Representation<DenseAlgebra>, RepError> {
    if b.len() != 6 {
        return Err(RepError::NotMagicSquare);
    }
    if b.weight() % 2 == 0 {
        return Err(RepError::EvenRhs(b.to_string()));
    }
    let standard: BitVec = "000111".parse().expect("valid bits");
    let flips_sys = k33_system(&standard.xor(b))?;
    let flips = solve(&flips_sys).ok_or_else(|| RepError::EvenRhs(b.to_string()))?;

    let images = (0..9)
        .map(|v| {
            let m = pauli_observable(v / 3, v % 3);
            if flips.get(v) {
                -m
            } else {
                m
            }
        })
        .collect();
    let names = (1..=9).map(|i| format!("x{i}")).collect();
    let rep = Representation::new(DenseAlgebra::new(4), names, images, None)?;

    let sys = k33_system(b)?;
    let report = verify_representation(&rep, &sys, Mode::Iso, 1e-12)?;
    if !report.passed {
        let first = report.failures().next().map(|c| c.relation.clone());
        return Err(RepError::Internal(first.unwrap_or_default()));
    }
    Ok(rep)
}
