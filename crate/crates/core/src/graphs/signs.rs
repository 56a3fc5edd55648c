use std::fmt;

use serde::{Deserialize, Serialize};

/// A single ±1 value. `Plus` orders before `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}1", self.symbol())
    }
}

/// A function `S → {+1, −1}` on a sorted set of variable indices.
///
/// Ordering is lexicographic over the sorted domain with `+1 < −1`, which is
/// the canonical vertex order inside a block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    domain: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignVector {
    /// Panics unless `domain` is strictly ascending and the lengths agree.
    pub fn new(domain: Vec<usize>, signs: Vec<Sign>) -> Self {
        assert_eq!(domain.len(), signs.len(), "domain/sign length mismatch");
        assert!(
            domain.windows(2).all(|w| w[0] < w[1]),
            "domain must be strictly ascending"
        );
        Self { domain, signs }
    }

    pub fn all_plus(domain: &[usize]) -> Self {
        Self::new(domain.to_vec(), vec![Sign::Plus; domain.len()])
    }

    /// All of `±1^S` in canonical order.
    pub fn enumerate(domain: &[usize]) -> Vec<SignVector> {
        let d = domain.len();
        assert!(d < 32, "domain too large to enumerate");
        (0..1u32 << d)
            .map(|code| {
                let signs = (0..d)
                    .map(|j| Sign::from_parity((code >> (d - 1 - j)) & 1 == 1))
                    .collect();
                SignVector {
                    domain: domain.to_vec(),
                    signs,
                }
            })
            .collect()
    }

    /// `±1^S_p`: sign vectors whose product is `(−1)^p`, in canonical order.
    pub fn with_parity(domain: &[usize], odd: bool) -> Vec<SignVector> {
        Self::enumerate(domain)
            .into_iter()
            .filter(|s| s.is_odd() == odd)
            .collect()
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.domain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn get(&self, var: usize) -> Option<Sign> {
        self.domain
            .binary_search(&var)
            .ok()
            .map(|pos| self.signs[pos])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.domain.iter().copied().zip(self.signs.iter().copied())
    }

    /// Product of all signs.
    pub fn product(&self) -> Sign {
        Sign::from_parity(self.is_odd())
    }

    pub fn is_odd(&self) -> bool {
        self.signs.iter().filter(|s| s.is_minus()).count() % 2 == 1
    }

    pub fn is_all_plus(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Plus)
    }

    /// Pointwise product `α △ β` over the common domain.
    pub fn delta(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.domain, other.domain, "△ needs equal domains");
        SignVector {
            domain: self.domain.clone(),
            signs: self
                .signs
                .iter()
                .zip(&other.signs)
                .map(|(&a, &b)| a * b)
                .collect(),
        }
    }

    /// Restriction to `subset`, which must lie inside the domain.
    pub fn restrict(&self, subset: &[usize]) -> SignVector {
        let signs = subset
            .iter()
            .map(|&v| self.get(v).expect("restriction outside the domain"))
            .collect();
        SignVector::new(subset.to_vec(), signs)
    }

    /// The signs as a compact string such as `+-+`.
    pub fn pattern(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }

    /// Rebuilds a sign vector from [`pattern`](Self::pattern) output.
    pub fn from_pattern(domain: &[usize], pattern: &str) -> Option<SignVector> {
        let signs: Option<Vec<Sign>> = pattern.chars().map(Sign::from_symbol).collect();
        let signs = signs?;
        (signs.len() == domain.len()).then(|| SignVector::new(domain.to_vec(), signs))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.domain, self.pattern())
    }
}

/// Set intersection of two ascending index lists.
pub fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_plus_first() {
        let all = SignVector::enumerate(&[2, 5]);
        let patterns: Vec<String> = all.iter().map(SignVector::pattern).collect();
        assert_eq!(patterns, ["++", "+-", "-+", "--"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn parity_classes_have_half_the_vectors() {
        for d in 1..6 {
            let dom: Vec<usize> = (0..d).collect();
            assert_eq!(SignVector::with_parity(&dom, false).len(), 1 << (d - 1));
            assert_eq!(SignVector::with_parity(&dom, true).len(), 1 << (d - 1));
        }
    }

    #[test]
    fn delta_and_restrict() {
        let a = SignVector::from_pattern(&[0, 1, 2], "+--").unwrap();
        let b = SignVector::from_pattern(&[0, 1, 2], "-+-").unwrap();
        assert_eq!(a.delta(&b).pattern(), "--+");
        assert_eq!(a.restrict(&[0, 2]).pattern(), "+-");
        assert_eq!(a.get(1), Some(Sign::Minus));
        assert_eq!(a.get(7), None);
        assert!(a.delta(&a).is_all_plus());
        assert_eq!(intersect_sorted(&[0, 1, 2], &[0, 3, 4]), vec![0]);
    }
}
