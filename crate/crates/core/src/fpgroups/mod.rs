//! Finitely presented groups generated by involutions: solution-group
//! presentations, coset enumeration, and queries on the resulting finite
//! groups.
//!
//! Every generator is an involution, so words are plain sequences of
//! generator indices with no inverse markers.

mod coset;
mod group;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::LinearSystem;

pub use coset::{todd_coxeter, CosetTable, EnumerationStatus, DEFAULT_COSET_CAP};
pub use group::{group_order, is_abelian, regular_perm_rep, word_is_identity, FiniteGroup};

pub type Word = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("presentation parse error: {0}")]
    Parse(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("coset table is incomplete")]
    Incomplete,
    #[error("coset enumeration exceeded the cap of {0} cosets")]
    CapExceeded(usize),
}

/// A group presentation `⟨ generators | relators ⟩` whose generators are all
/// involutions. The involution relators are stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Adds `g g` for any generator lacking an explicit involution relator.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, FpError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(FpError::DuplicateGenerator(g.clone()));
            }
        }
        if let Some(&bad) = relators.iter().flatten().find(|&&g| g >= generators.len()) {
            return Err(FpError::GeneratorOutOfRange(bad));
        }
        let mut relators = relators;
        for g in 0..generators.len() {
            if !relators.iter().any(|r| r.as_slice() == [g, g]) {
                relators.push(vec![g, g]);
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Same generators with relators in a different order.
    pub fn with_relators(&self, relators: Vec<Word>) -> Result<Self, FpError> {
        Self::new(self.generators.clone(), relators)
    }

    /// Parses a whitespace-separated word such as `x1 x2 gamma`; `1` is the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|t| {
                self.generator_index(t)
                    .ok_or_else(|| FpError::UnknownGenerator(t.to_string()))
            })
            .collect()
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&g| self.generators[g].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Text form `gens: x1..x9, gamma; rels: x1 x1; x1 x2 x1 x2; …`.
    pub fn to_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        format!("gens: {}; rels: {}", compress_names(&self.generators), rels.join("; "))
    }

    /// Parses [`to_text`](Self::to_text) output. Generator lists accept
    /// ranges `x1..x9` over a common prefix.
    pub fn parse(text: &str) -> Result<Self, FpError> {
        let bad = |m: &str| FpError::Parse(m.to_string());
        let text = text.trim();
        let rest = text
            .strip_prefix("gens:")
            .ok_or_else(|| bad("expected `gens:`"))?;
        let (gens_part, rels_part) = match rest.find("rels:") {
            Some(pos) => (&rest[..pos], &rest[pos + "rels:".len()..]),
            None => (rest, ""),
        };
        let gens_part = gens_part.trim().trim_end_matches(';');
        let mut generators = Vec::new();
        for item in gens_part.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            generators.extend(expand_range(item).ok_or_else(|| bad(&format!("bad generator {item:?}")))?);
        }
        let shell = Presentation {
            generators,
            relators: Vec::new(),
        };
        let relators = rels_part
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|r| shell.parse_word(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(shell.generators, relators)
    }

    pub fn to_json(&self) -> String {
        let doc = PresentationDoc {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.iter().map(|&g| self.generators[g].clone()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("presentations always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, FpError> {
        let doc: PresentationDoc =
            serde_json::from_str(text).map_err(|e| FpError::Parse(e.to_string()))?;
        let shell = Presentation {
            generators: doc.generators,
            relators: Vec::new(),
        };
        let relators = doc
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| {
                        shell
                            .generator_index(t)
                            .ok_or_else(|| FpError::UnknownGenerator(t.clone()))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Word>, _>>()?;
        Self::new(shell.generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<String>,
    relators: Vec<Vec<String>>,
}

fn split_name(s: &str) -> Option<(&str, usize)> {
    let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 || digits == s.len() {
        return None;
    }
    let (prefix, num) = s.split_at(s.len() - digits);
    Some((prefix, num.parse().ok()?))
}

fn expand_range(item: &str) -> Option<Vec<String>> {
    let Some((a, b)) = item.split_once("..") else {
        return (!item.contains(char::is_whitespace)).then(|| vec![item.to_string()]);
    };
    let (pa, lo) = split_name(a.trim())?;
    let (pb, hi) = split_name(b.trim())?;
    (pa == pb && lo <= hi).then(|| (lo..=hi).map(|i| format!("{pa}{i}")).collect())
}

/// Renders runs of three or more consecutive `prefixN` names as ranges.
fn compress_names(names: &[String]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < names.len() {
        let mut j = i;
        if let Some((p, n)) = split_name(&names[i]) {
            while j + 1 < names.len()
                && split_name(&names[j + 1]) == Some((p, n + (j + 1 - i)))
            {
                j += 1;
            }
        }
        if j >= i + 2 {
            parts.push(format!("{}..{}", names[i], names[j]));
        } else {
            parts.extend(names[i..=j].iter().cloned());
        }
        i = j + 1;
    }
    parts.join(", ")
}

/// Presentation of the solution group.
///
/// Homogeneous: generators `x1..xn`, involutions, commutation of variables
/// sharing a constraint, and `∏_{i∈S_k} x_i = 1`. Otherwise an extra central
/// involution `gamma` with `∏_{i∈S_k} x_i = gamma^{b_k}`.
pub fn solution_presentation(sys: &LinearSystem, homogeneous: bool) -> Presentation {
    let n = sys.variables();
    let mut generators: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut relators: Vec<Word> = (0..n).map(|i| vec![i, i]).collect();

    let mut pairs = std::collections::BTreeSet::new();
    for k in 0..sys.constraints() {
        let s = sys.support(k);
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                pairs.insert((i, j));
            }
        }
    }
    relators.extend(pairs.into_iter().map(|(i, j)| vec![i, j, i, j]));

    let gamma = n;
    for k in 0..sys.constraints() {
        let mut w = sys.support(k);
        if !homogeneous && sys.rhs().get(k) {
            w.push(gamma);
        }
        relators.push(w);
    }
    if !homogeneous {
        generators.push("gamma".into());
        relators.push(vec![gamma, gamma]);
        relators.extend((0..n).map(|i| vec![gamma, i, gamma, i]));
    }
    Presentation::new(generators, relators).expect("solution presentations are well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{incidence_system, parse_system, BitVec, SimpleGraph};

    #[test]
    fn single_constraint_presentation() {
        let sys = parse_system("11|0").unwrap();
        let p = solution_presentation(&sys, true);
        assert_eq!(p.to_text(), "gens: x1, x2; rels: x1 x1; x2 x2; x1 x2 x1 x2; x1 x2");
    }

    #[test]
    fn k33_relator_counts() {
        let h = SimpleGraph::complete_bipartite(3, 3);
        let sys = incidence_system(&h, &BitVec::zeros(6)).unwrap();
        let p = solution_presentation(&sys, true);
        assert_eq!(p.generator_count(), 9);
        let count = |len: usize| p.relators().iter().filter(|r| r.len() == len).count();
        assert_eq!(count(2), 9);
        // Two edges of K3,3 share a constraint iff they meet at a vertex.
        assert_eq!(
            p.relators().iter().filter(|r| r.len() == 4 && r[0] == r[2]).count(),
            18
        );
        assert_eq!(count(3), 6);

        let sys1 = sys.with_rhs(BitVec::unit(6, 0)).unwrap();
        let q = solution_presentation(&sys1, false);
        assert_eq!(q.generator_count(), 10);
        let gamma = q.generator_index("gamma").unwrap();
        assert!(q.relators().contains(&vec![0, 1, 2, gamma]));
        assert!(q.relators().contains(&vec![gamma, gamma]));
        assert!(q.relators().contains(&vec![gamma, 4, gamma, 4]));
    }

    #[test]
    fn text_and_json_round_trip() {
        let sys = parse_system("11100;10011|01").unwrap();
        for homogeneous in [true, false] {
            let p = solution_presentation(&sys, homogeneous);
            assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
            assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        }
        let p = solution_presentation(&sys, false);
        assert!(p.to_text().starts_with("gens: x1..x5, gamma; rels: x1 x1;"));
    }

    #[test]
    fn parse_adds_involutions_and_rejects_garbage() {
        let p = Presentation::parse("gens: a, b; rels: a b a b").unwrap();
        assert_eq!(p.relators().len(), 3);
        assert!(matches!(
            Presentation::parse("gens: a; rels: a c"),
            Err(FpError::UnknownGenerator(_))
        ));
        assert!(Presentation::parse("rels: a").is_err());
        assert!(matches!(
            Presentation::parse("gens: a, a"),
            Err(FpError::DuplicateGenerator(_))
        ));
        assert_eq!(p.parse_word("1").unwrap(), Vec::<usize>::new());
    }
}
