use std::collections::VecDeque;

use super::{todd_coxeter, CosetTable, FpError, Presentation, Word};

/// A finite group given by a complete coset table over the trivial
/// subgroup. Elements are coset indices; `0` is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: CosetTable,
    /// Schreier tree: `(parent, generator)` with `parent·generator = c`.
    tree: Vec<(u32, u16)>,
    inverse: Vec<u32>,
    /// Full multiplication table for small groups.
    cayley: Option<Vec<u32>>,
}

const CAYLEY_LIMIT: usize = 4096;

impl FiniteGroup {
    pub fn from_table(table: CosetTable) -> Result<Self, FpError> {
        if !table.is_complete() {
            return Err(FpError::Incomplete);
        }
        let n = table.len();
        let mut tree = vec![(u32::MAX, 0u16); n];
        tree[0] = (0, 0);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..table.generator_count() {
                let d = table.get(c, x).expect("complete table");
                if !seen[d] {
                    seen[d] = true;
                    tree[d] = (c as u32, x as u16);
                    queue.push_back(d);
                }
            }
        }
        let mut group = Self {
            table,
            tree,
            inverse: Vec::new(),
            cayley: None,
        };
        group.inverse = (0..n)
            .map(|g| {
                let mut w = group.word(g);
                w.reverse();
                group.table.trace(0, &w).expect("complete table") as u32
            })
            .collect();
        if n <= CAYLEY_LIMIT {
            let words: Vec<Word> = (0..n).map(|g| group.word(g)).collect();
            let mut cayley = vec![0u32; n * n];
            for a in 0..n {
                for (b, w) in words.iter().enumerate() {
                    cayley[a * n + b] = group.table.trace(a, w).expect("complete table") as u32;
                }
            }
            group.cayley = Some(cayley);
        }
        Ok(group)
    }

    /// Enumerates `p` over the trivial subgroup.
    pub fn enumerate(p: &Presentation, cap: usize) -> Result<Self, FpError> {
        let t = todd_coxeter(p, &[], cap);
        if !t.is_complete() {
            return Err(FpError::CapExceeded(cap));
        }
        Self::from_table(t)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn generator_count(&self) -> usize {
        self.table.generator_count()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The element represented by generator `x`.
    pub fn generator(&self, x: usize) -> usize {
        self.table.get(0, x).expect("complete table")
    }

    /// A shortest word for `g` in the generators.
    pub fn word(&self, g: usize) -> Word {
        let mut w = Vec::new();
        let mut c = g;
        while c != 0 {
            let (p, x) = self.tree[c];
            w.push(x as usize);
            c = p as usize;
        }
        w.reverse();
        w
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.table.trace(a, &self.word(b)).expect("complete table"),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn evaluate(&self, w: &[usize]) -> usize {
        self.table.trace(0, w).expect("complete table")
    }

    pub fn is_abelian(&self) -> bool {
        let t = &self.table;
        let k = t.generator_count();
        (0..t.len()).all(|c| {
            (0..k).all(|x| {
                (x + 1..k).all(|y| t.trace(c, &[x, y]) == t.trace(c, &[y, x]))
            })
        })
    }
}

/// Order of the group, or `None` when enumeration exceeds `cap`.
pub fn group_order(p: &Presentation, cap: usize) -> Option<usize> {
    let t = todd_coxeter(p, &[], cap);
    t.is_complete().then(|| t.len())
}

/// Generator `x` acting as `c ↦ c·x` on the cosets.
pub fn regular_perm_rep(t: &CosetTable) -> Result<Vec<Vec<usize>>, FpError> {
    if !t.is_complete() {
        return Err(FpError::Incomplete);
    }
    Ok((0..t.generator_count())
        .map(|x| (0..t.len()).map(|c| t.get(c, x).expect("complete")).collect())
        .collect())
}

/// `Some(true)` iff all generators commute; `None` when enumeration is capped.
pub fn is_abelian(p: &Presentation, cap: usize) -> Option<bool> {
    let t = todd_coxeter(p, &[], cap);
    if !t.is_complete() {
        return None;
    }
    Some(FiniteGroup::from_table(t).ok()?.is_abelian())
}

/// Whether `w` is trivial in the group; `None` when enumeration is capped.
pub fn word_is_identity(p: &Presentation, w: &[usize], cap: usize) -> Option<bool> {
    let t = todd_coxeter(p, &[], cap);
    if !t.is_complete() {
        return None;
    }
    Some(t.trace(0, w) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::{abelianized_order, incidence_system, parse_system, solve, BitVec, SimpleGraph};
    use crate::fpgroups::solution_presentation;

    fn k33(b: BitVec) -> crate::f2::LinearSystem {
        incidence_system(&SimpleGraph::complete_bipartite(3, 3), &b).unwrap()
    }

    #[test]
    fn klein_four_and_z2() {
        let v4 = Presentation::parse("gens: x, y; rels: x y x y").unwrap();
        assert_eq!(group_order(&v4, 100), Some(4));
        let z2 = Presentation::parse("gens: x").unwrap();
        let t = todd_coxeter(&z2, &[], 100);
        assert_eq!(regular_perm_rep(&t).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn two_equal_involutions() {
        let p = solution_presentation(&parse_system("11|0").unwrap(), true);
        assert_eq!(group_order(&p, 100), Some(2));
        assert_eq!(word_is_identity(&p, &[0, 1], 100), Some(true));
    }

    #[test]
    fn free_product_is_unknown() {
        let p = Presentation::parse("gens: a, b").unwrap();
        assert_eq!(is_abelian(&p, 100), None);
        assert_eq!(group_order(&p, 100), None);
        assert_eq!(word_is_identity(&p, &[0, 0], 100), None);
        assert!(matches!(
            regular_perm_rep(&todd_coxeter(&p, &[], 100)),
            Err(FpError::Incomplete)
        ));
    }

    #[test]
    fn k33_homogeneous_group() {
        let sys = k33(BitVec::zeros(6));
        let p = solution_presentation(&sys, true);
        let g = FiniteGroup::enumerate(&p, 1000).unwrap();
        assert_eq!(g.order() as u64, abelianized_order(sys.matrix()).unwrap());
        assert_eq!(g.order(), 16);
        assert!(g.is_abelian());
        let perms = regular_perm_rep(g.table()).unwrap();
        for k in 0..sys.constraints() {
            for c in 0..16 {
                let end = sys.support(k).iter().fold(c, |d, &i| perms[i][d]);
                assert_eq!(end, c);
            }
        }
    }

    #[test]
    fn gamma_survives_without_classical_solution() {
        let sys = k33(BitVec::unit(6, 0));
        assert!(solve(&sys).is_none());
        let p = solution_presentation(&sys, false);
        let gamma = p.generator_index("gamma").unwrap();
        assert_eq!(word_is_identity(&p, &[gamma], 10_000), Some(false));
        assert_eq!(word_is_identity(&p, &[0, 0], 10_000), Some(true));
    }

    #[test]
    fn gamma_and_classical_solutions() {
        // x1 = 1 and x1 = gamma force gamma = 1.
        let forced = solution_presentation(&parse_system("1;1|01").unwrap(), false);
        assert_eq!(word_is_identity(&forced, &[1], 100), Some(true));

        // A classical solution x yields the character x_i ↦ (−1)^{x_i},
        // gamma ↦ −1, so gamma is never trivial for solvable systems.
        let sys = parse_system("110;011|10").unwrap();
        let x = solve(&sys).unwrap();
        let p = solution_presentation(&sys, false);
        let g = FiniteGroup::enumerate(&p, 1000).unwrap();
        let chi = |w: &[usize]| {
            w.iter()
                .filter(|&&i| i == 3 || x.get(i))
                .count()
                % 2
        };
        for r in p.relators() {
            assert_eq!(chi(r), 0, "character respects {}", p.render_word(r));
        }
        assert_eq!(word_is_identity(&p, &[3], 1000), Some(false));
        assert_ne!(g.generator(3), g.identity());
    }

    #[test]
    fn group_operations_agree_with_words() {
        let p = Presentation::parse(
            "gens: a, b, c; rels: a b a b a b; b c b c b c; a c a c",
        )
        .unwrap();
        let g = FiniteGroup::enumerate(&p, 1000).unwrap();
        assert_eq!(g.order(), 24);
        assert!(!g.is_abelian());
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(g.evaluate(&g.word(a)), a);
            for b in 0..g.order() {
                let mut w = g.word(a);
                w.extend(g.word(b));
                assert_eq!(g.mul(a, b), g.evaluate(&w));
            }
        }
    }

    #[test]
    fn relator_order_does_not_matter() {
        let sys = k33(BitVec::zeros(6));
        let p = solution_presentation(&sys, true);
        let mut rels = p.relators().to_vec();
        rels.reverse();
        rels.rotate_left(5);
        let q = p.with_relators(rels).unwrap();
        assert_eq!(group_order(&q, 1000), Some(16));
    }
}
