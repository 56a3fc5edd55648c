//! Exact linear algebra over F₂ and the linear systems `Mx = b` built on it.
//!
//! Rows are bit-packed into `u64` words so elimination is word-level XOR.
//! Indices are 0-based throughout; the text formats are where 1-based
//! numbering shows up (graph files list vertices starting at 1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const WORD: usize = 64;

/// A fixed-length vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn first_one_from(&self, start: usize) -> Option<usize> {
        (start..self.len).find(|&i| self.get(i))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = F2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(F2Error::BadBit {
                        position: i + 1,
                        found: other,
                    })
                }
            }
        }
        Ok(BitVec::from_bools(&bits))
    }
}

impl Serialize for BitVec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("right-hand side has length {found}, expected {expected}")]
    RhsLength { expected: usize, found: usize },
    #[error("non-binary character {found:?} at position {position}")]
    BadBit { position: usize, found: char },
    #[error("group order 2^{exponent} is too large")]
    TooLarge { exponent: usize },
    #[error("edge {{{u}, {v}}} is invalid for a graph on {n} vertices")]
    BadEdge { u: usize, v: usize, n: usize },
    #[error("duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize },
}

/// Parse failure with a 1-based source location.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// An `m × n` matrix over F₂, stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self, F2Error> {
        if rows == 0 || cols == 0 {
            return Err(F2Error::EmptyMatrix { rows, cols });
        }
        Ok(Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        })
    }

    pub fn identity(n: usize) -> Result<Self, F2Error> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, true);
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, F2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        if rows.is_empty() || cols == 0 {
            return Err(F2Error::EmptyMatrix {
                rows: rows.len(),
                cols,
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(F2Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from 0/1 integer rows; any nonzero entry counts as 1.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self, F2Error> {
        let rows = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&x| x != 0).collect::<Vec<_>>()))
            .collect();
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    /// Column indices with a 1 in row `r` (the support `S_r`).
    pub fn support(&self, r: usize) -> Vec<usize> {
        self.rows[r].ones().collect()
    }

    pub fn transpose(&self) -> BinMatrix {
        let mut t = BinMatrix::zeros(self.cols, self.rows()).expect("non-empty");
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols);
        let bits: Vec<bool> = self.rows.iter().map(|r| r.dot(x)).collect();
        BitVec::from_bools(&bits)
    }

    pub fn column_weight(&self, c: usize) -> usize {
        self.rows.iter().filter(|r| r.get(c)).count()
    }

    /// Row strings joined by `;`, the left half of the system file format.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinMatrix[{}]", self.to_text())
    }
}

/// Rank over F₂ by Gaussian elimination.
pub fn rank(m: &BinMatrix) -> usize {
    let mut rows = m.rows.clone();
    eliminate(&mut rows, m.cols)
}

/// Reduces `rows` in place to row-echelon form on the first `cols` columns
/// and returns the number of pivots.
fn eliminate(rows: &mut [BitVec], cols: usize) -> usize {
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].get(c)) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    pivot_row
}

/// `2^(n - rank M)`, the order of the abelianization of the homogeneous
/// solution group.
pub fn abelianized_order(m: &BinMatrix) -> Result<u64, F2Error> {
    let exponent = m.cols() - rank(m);
    if exponent >= 64 {
        return Err(F2Error::TooLarge { exponent });
    }
    Ok(1u64 << exponent)
}

/// A linear system `Mx = b` over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearSystem {
    matrix: BinMatrix,
    rhs: BitVec,
}

impl LinearSystem {
    pub fn new(matrix: BinMatrix, rhs: BitVec) -> Result<Self, F2Error> {
        if rhs.len() != matrix.rows() {
            return Err(F2Error::RhsLength {
                expected: matrix.rows(),
                found: rhs.len(),
            });
        }
        Ok(Self { matrix, rhs })
    }

    /// The homogeneous system `Mx = 0`.
    pub fn homogeneous(matrix: BinMatrix) -> Self {
        let rhs = BitVec::zeros(matrix.rows());
        Self { matrix, rhs }
    }

    pub fn matrix(&self) -> &BinMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &BitVec {
        &self.rhs
    }

    /// Number of constraints `m`.
    pub fn constraints(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of variables `n`.
    pub fn variables(&self) -> usize {
        self.matrix.cols()
    }

    pub fn support(&self, k: usize) -> Vec<usize> {
        self.matrix.support(k)
    }

    pub fn with_rhs(&self, rhs: BitVec) -> Result<Self, F2Error> {
        Self::new(self.matrix.clone(), rhs)
    }

    /// Rendering in the system file format, e.g. `11100;10011|01`.
    pub fn to_text(&self) -> String {
        format!("{}|{}", self.matrix.to_text(), self.rhs)
    }
}

impl fmt::Debug for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearSystem({})", self.to_text())
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for LinearSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for LinearSystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_system(&s).map_err(serde::de::Error::custom)
    }
}

/// Some `x` with `Mx = b`, or `None` if the system is inconsistent.
pub fn solve(sys: &LinearSystem) -> Option<BitVec> {
    let n = sys.variables();
    // Augmented rows [M | b].
    let mut rows: Vec<BitVec> = (0..sys.constraints())
        .map(|k| {
            let mut r = BitVec::zeros(n + 1);
            for c in sys.matrix.row(k).ones() {
                r.set(c, true);
            }
            r.set(n, sys.rhs.get(k));
            r
        })
        .collect();
    let pivots = eliminate(&mut rows, n);
    if rows[pivots..].iter().any(|r| r.get(n)) {
        return None;
    }
    let mut x = BitVec::zeros(n);
    for r in &rows[..pivots] {
        let lead = r.first_one_from(0).expect("pivot row is nonzero");
        x.set(lead, r.get(n));
    }
    debug_assert_eq!(sys.matrix.mul_vec(&x), sys.rhs);
    Some(x)
}

/// Parses the system file format: rows of `M` over `{0,1}` separated by `;`,
/// then `|`, then `b`. Whitespace (including newlines) between tokens is
/// ignored.
pub fn parse_system(text: &str) -> Result<LinearSystem, ParseError> {
    let mut rows: Vec<Vec<bool>> = vec![Vec::new()];
    let mut rhs: Vec<bool> = Vec::new();
    let mut in_rhs = false;
    let mut row_start = (1, 1);
    let mut last = (1, 1);

    for (line_no, line) in text.lines().enumerate() {
        for (col_no, ch) in line.chars().enumerate() {
            let pos = (line_no + 1, col_no + 1);
            last = pos;
            match ch {
                c if c.is_whitespace() => {}
                '0' | '1' => {
                    let bit = ch == '1';
                    if in_rhs {
                        rhs.push(bit);
                    } else {
                        let row = rows.last_mut().expect("at least one row");
                        if row.is_empty() {
                            row_start = pos;
                        }
                        row.push(bit);
                    }
                }
                ';' if !in_rhs => {
                    check_row(&rows, row_start, pos)?;
                    rows.push(Vec::new());
                }
                '|' if !in_rhs => {
                    check_row(&rows, row_start, pos)?;
                    in_rhs = true;
                }
                other => {
                    return Err(ParseError::new(
                        pos.0,
                        pos.1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
        }
    }
    if !in_rhs {
        return Err(ParseError::new(last.0, last.1, "missing '|' before right-hand side"));
    }
    if rhs.len() != rows.len() {
        return Err(ParseError::new(
            last.0,
            last.1,
            format!(
                "right-hand side has length {}, expected {} (one bit per row)",
                rhs.len(),
                rows.len()
            ),
        ));
    }
    let matrix = BinMatrix::from_rows(rows.iter().map(|r| BitVec::from_bools(r)).collect())
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    LinearSystem::new(matrix, BitVec::from_bools(&rhs))
        .map_err(|e| ParseError::new(last.0, last.1, e.to_string()))
}

fn check_row(
    rows: &[Vec<bool>],
    row_start: (usize, usize),
    at: (usize, usize),
) -> Result<(), ParseError> {
    let row = rows.last().expect("at least one row");
    if row.is_empty() {
        return Err(ParseError::new(at.0, at.1, "empty row"));
    }
    let expected = rows[0].len();
    if row.len() != expected {
        return Err(ParseError::new(
            row_start.0,
            row_start.1,
            format!(
                "row length mismatch: row {} has {} entries, expected {}",
                rows.len(),
                row.len(),
                expected
            ),
        ));
    }
    Ok(())
}

/// A simple undirected graph on vertices `0..n`. Edge order is significant:
/// it fixes the variable numbering of the incidence system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, F2Error> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v {
                return Err(F2Error::BadEdge { u, v, n });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(F2Error::DuplicateEdge { u, v });
            }
        }
        Ok(Self { n, edges })
    }

    /// `K_{a,b}` with left part `0..a`, right part `a..a+b`, edges in
    /// lexicographic order.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Self { n: a + b, edges }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Graph file format: vertex count on the first line, then one `u v`
    /// pair per line, 1-indexed.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

/// Parses the graph file format. Blank lines and `#` comments are skipped.
pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing vertex count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| ParseError::new(first_no, 1, format!("invalid vertex count {first:?}")))?;
    let mut edges = Vec::new();
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(ParseError::new(line_no, 1, "expected an edge \"u v\""));
        }
        let mut ends = [0usize; 2];
        for (slot, part) in ends.iter_mut().zip(&parts) {
            let column = line.find(part).unwrap_or(0) + 1;
            let v: usize = part
                .parse()
                .map_err(|_| ParseError::new(line_no, column, format!("invalid vertex {part:?}")))?;
            if v == 0 || v > n {
                return Err(ParseError::new(
                    line_no,
                    column,
                    format!("vertex {v} out of range 1..={n}"),
                ));
            }
            *slot = v - 1;
        }
        edges.push((ends[0], ends[1]));
    }
    SimpleGraph::new(n, edges).map_err(|e| ParseError::new(first_no, 1, e.to_string()))
}

/// The incidence system `(M_H, b)`: one constraint per vertex of `H`, one
/// variable per edge, `M[k][i] = 1` iff vertex `k` is an endpoint of edge `i`.
pub fn incidence_system(h: &SimpleGraph, b: &BitVec) -> Result<LinearSystem, F2Error> {
    if b.len() != h.vertex_count() {
        return Err(F2Error::RhsLength {
            expected: h.vertex_count(),
            found: b.len(),
        });
    }
    let mut m = BinMatrix::zeros(h.vertex_count(), h.edges().len())?;
    for (i, &(u, v)) in h.edges().iter().enumerate() {
        m.set(u, i, true);
        m.set(v, i, true);
    }
    LinearSystem::new(m, b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k33() -> LinearSystem {
        incidence_system(&SimpleGraph::complete_bipartite(3, 3), &BitVec::zeros(6)).unwrap()
    }

    #[test]
    fn parses_worked_example() {
        let sys = parse_system("11100;10011|01").unwrap();
        assert_eq!(
            sys.matrix(),
            &BinMatrix::from_dense(&[vec![1, 1, 1, 0, 0], vec![1, 0, 0, 1, 1]]).unwrap()
        );
        assert_eq!(sys.rhs().to_string(), "01");
        assert_eq!(sys.support(1), vec![0, 3, 4]);
    }

    #[test]
    fn parses_smallest_system() {
        let sys = parse_system("1|0").unwrap();
        assert_eq!(sys.constraints(), 1);
        assert_eq!(sys.variables(), 1);
        assert!(!sys.rhs().get(0));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = parse_system("111;11|00").unwrap_err();
        assert!(err.message.contains("row length mismatch"), "{err}");
        assert_eq!((err.line, err.column), (1, 5));

        let err = parse_system("102|0").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));

        let err = parse_system("11;01|0").unwrap_err();
        assert!(err.message.contains("right-hand side"), "{err}");

        let err = parse_system("11\n01").unwrap_err();
        assert!(err.message.contains("missing '|'"));
    }

    #[test]
    fn system_text_round_trips() {
        let sys = parse_system("11100;\n10011 | 01").unwrap();
        assert_eq!(parse_system(&sys.to_text()).unwrap(), sys);
    }

    #[test]
    fn incidence_of_single_edge() {
        let h = SimpleGraph::new(2, vec![(0, 1)]).unwrap();
        let sys = incidence_system(&h, &BitVec::zeros(2)).unwrap();
        assert_eq!(sys.matrix(), &BinMatrix::from_dense(&[vec![1], vec![1]]).unwrap());
        assert!(incidence_system(&h, &BitVec::zeros(3)).is_err());
    }

    #[test]
    fn incidence_of_k33_and_k34() {
        let m = k33();
        assert_eq!((m.constraints(), m.variables()), (6, 9));
        for k in 0..6 {
            assert_eq!(m.support(k).len(), 3);
        }
        for i in 0..9 {
            assert_eq!(m.matrix().column_weight(i), 2);
        }

        let k34 =
            incidence_system(&SimpleGraph::complete_bipartite(3, 4), &BitVec::zeros(7)).unwrap();
        assert_eq!((k34.constraints(), k34.variables()), (7, 12));
        let degrees: Vec<usize> = (0..7).map(|k| k34.support(k).len()).collect();
        assert_eq!(degrees, vec![4, 4, 4, 3, 3, 3, 3]);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&BinMatrix::identity(3).unwrap()), 3);
        assert_eq!(rank(k33().matrix()), 5);
        assert_eq!(rank(&BinMatrix::zeros(2, 5).unwrap()), 0);
    }

    #[test]
    fn abelianized_orders() {
        assert_eq!(abelianized_order(k33().matrix()).unwrap(), 16);
        let k34 =
            incidence_system(&SimpleGraph::complete_bipartite(3, 4), &BitVec::zeros(7)).unwrap();
        assert_eq!(abelianized_order(k34.matrix()).unwrap(), 64);
        assert_eq!(abelianized_order(&BinMatrix::identity(5).unwrap()).unwrap(), 1);
        let wide = BinMatrix::zeros(1, 70).unwrap();
        assert_eq!(
            abelianized_order(&wide),
            Err(F2Error::TooLarge { exponent: 70 })
        );
    }

    #[test]
    fn solves() {
        let sys = k33();
        assert_eq!(solve(&sys), Some(BitVec::zeros(9)));
        assert_eq!(solve(&sys.with_rhs(BitVec::unit(6, 0)).unwrap()), None);
        let single = parse_system("11|1").unwrap();
        assert_eq!(solve(&single).unwrap().to_string(), "10");
    }

    #[test]
    fn graph_file_format() {
        let g = parse_graph("# K3\n3\n1 2\n2 3\n\n1 3\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
        assert!(parse_graph("2\n1 1\n").is_err());
        assert!(parse_graph("2\n1 2\n2 1\n").is_err());
        let err = parse_graph("2\n1 3\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(!SimpleGraph::new(4, vec![(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(SimpleGraph::complete_bipartite(3, 4).is_connected());
    }

    fn arb_matrix() -> impl Strategy<Value = BinMatrix> {
        (1usize..8, 1usize..12).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), m).prop_map(
                |rows| {
                    BinMatrix::from_rows(rows.iter().map(|r| BitVec::from_bools(r)).collect())
                        .unwrap()
                },
            )
        })
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (2usize..8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            proptest::sample::subsequence(pairs.clone(), 1..=pairs.len())
                .prop_map(move |edges| SimpleGraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn solve_agrees_with_rank_test(m in arb_matrix(), seed in any::<u64>()) {
            let bits: Vec<bool> = (0..m.rows()).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
            let sys = LinearSystem::new(m.clone(), BitVec::from_bools(&bits)).unwrap();
            let augmented = BinMatrix::from_rows(
                (0..m.rows())
                    .map(|k| {
                        let mut bits: Vec<bool> = m.row(k).iter().collect();
                        bits.push(sys.rhs().get(k));
                        BitVec::from_bools(&bits)
                    })
                    .collect(),
            )
            .unwrap();
            match solve(&sys) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), sys.rhs().clone()),
                None => prop_assert!(rank(&m) < rank(&augmented)),
            }
        }

        #[test]
        fn incidence_columns_have_two_ones(h in arb_graph()) {
            let sys = incidence_system(&h, &BitVec::zeros(h.vertex_count())).unwrap();
            for i in 0..sys.variables() {
                prop_assert_eq!(sys.matrix().column_weight(i), 2);
            }
        }
    }
}
