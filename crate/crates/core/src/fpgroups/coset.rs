//! HLT coset enumeration with lookahead, specialised to involutory
//! generators: one column per generator and `c·x = d ⇔ d·x = c`.

use std::fmt::Write as _;

use super::{Presentation, Word};

pub const DEFAULT_COSET_CAP: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    Capped,
}

/// Action of the generators on the cosets of a subgroup. Coset `0` is the
/// subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    gens: usize,
    entries: Vec<u32>,
    status: EnumerationStatus,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.entries.len() / self.gens.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// `c·x`, if defined.
    pub fn get(&self, c: usize, x: usize) -> Option<usize> {
        let d = self.entries[c * self.gens + x];
        (d != UNDEF).then_some(d as usize)
    }

    /// `c·w`; `None` once an undefined entry is reached.
    pub fn trace(&self, c: usize, w: &[usize]) -> Option<usize> {
        w.iter().try_fold(c, |c, &x| self.get(c, x))
    }

    /// Debug export: header `coset,<gens>`, one 1-based row per coset,
    /// empty cells for undefined entries.
    pub fn to_csv(&self, p: &Presentation) -> String {
        let mut out = String::from("coset");
        for g in p.generators() {
            out.push(',');
            out.push_str(g);
        }
        out.push('\n');
        for c in 0..self.len() {
            write!(out, "{}", c + 1).unwrap();
            for x in 0..self.gens {
                out.push(',');
                if let Some(d) = self.get(c, x) {
                    write!(out, "{}", d + 1).unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

struct Full;

struct Enumerator<'a> {
    gens: usize,
    relators: &'a [Word],
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    cap: usize,
}

impl<'a> Enumerator<'a> {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.gens + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.gens + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32, Full> {
        if self.rows() >= self.cap {
            return Err(Full);
        }
        let c = self.rows() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(UNDEF, self.gens));
        Ok(c)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.gens {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x, UNDEF);
                let (mu, nu) = (self.rep(g), self.rep(d));
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                    continue;
                }
                let nx = self.get(nu, x);
                if nx != UNDEF {
                    self.merge(mu, nx);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, x, mu);
            }
        }
        self.queue.clear();
    }

    /// Scans `c·w = c`, closing a single gap by deduction and reporting a
    /// coincidence when both ends meet. With `fill`, gaps are filled with
    /// new cosets.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j {
                let next = self.get(f, w[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let next = self.get(b, w[j]);
                if next == UNDEF {
                    break;
                }
                b = next;
                if j == 0 {
                    // Backward scan consumed the whole word.
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if i == j {
                let x = w[i];
                self.set(f, x, b);
                self.set(b, x, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            let d = self.new_coset()?;
            let x = w[i];
            self.set(f, x, d);
            self.set(d, x, f);
        }
    }

    fn process(&mut self, c: u32) -> Result<(), Full> {
        let relators = self.relators;
        for r in relators {
            self.scan(c, r, true)?;
            if !self.alive(c) {
                return Ok(());
            }
        }
        for x in 0..self.gens {
            if self.get(c, x) == UNDEF {
                let d = self.new_coset()?;
                self.set(c, x, d);
                self.set(d, x, c);
            }
        }
        Ok(())
    }

    fn lookahead(&mut self) {
        let relators = self.relators;
        for c in 0..self.rows() as u32 {
            for r in relators {
                if !self.alive(c) {
                    break;
                }
                // Scans without filling never need a new coset.
                let _ = self.scan(c, r, false);
            }
        }
    }

    /// Renumbers live cosets consecutively; returns the old→new map.
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![UNDEF; self.rows()];
        let mut next = 0u32;
        for c in 0..self.rows() {
            if self.parent[c] == c as u32 {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.gens);
        for c in 0..self.rows() {
            if map[c] != UNDEF {
                for x in 0..self.gens {
                    let d = self.table[c * self.gens + x];
                    table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    fn closed(&self) -> bool {
        if self.table.contains(&UNDEF) {
            return false;
        }
        (0..self.rows() as u32).all(|c| {
            self.relators
                .iter()
                .all(|r| r.iter().fold(c, |d, &x| self.get(d, x)) == c)
        })
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` (trivial
/// when empty). At most `cap` cosets are alive at once; when that is hit,
/// a lookahead pass tries to free space before giving up with
/// [`EnumerationStatus::Capped`].
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], cap: usize) -> CosetTable {
    assert!(cap >= 1, "cap must be positive");
    let gens = p.generator_count();
    let mut e = Enumerator {
        gens,
        relators: p.relators(),
        table: vec![UNDEF; gens],
        parent: vec![0],
        queue: Vec::new(),
        cap,
    };

    let mut status = EnumerationStatus::Complete;
    let mut start = true;
    let mut c = 0usize;
    'outer: loop {
        let step = (|| -> Result<(), Full> {
            if start {
                for w in subgroup {
                    e.scan(0, w, true)?;
                }
                start = false;
            }
            while c < e.rows() {
                if e.alive(c as u32) {
                    e.process(c as u32)?;
                }
                c += 1;
            }
            Ok(())
        })();
        match step {
            Ok(()) => {
                let map = e.compact();
                c = map.len();
                if e.closed() {
                    break 'outer;
                }
                // Not expected, but restart the sweep over the compacted table.
                c = 0;
            }
            Err(Full) => {
                e.lookahead();
                let before = e.rows();
                let map = e.compact();
                // Resume at the first live coset at or after `c`.
                c = map[c.min(before - 1)..]
                    .iter()
                    .find(|&&m| m != UNDEF)
                    .map_or(e.rows(), |&m| m as usize);
                if e.rows() >= cap {
                    status = EnumerationStatus::Capped;
                    break 'outer;
                }
            }
        }
    }
    let _ = c;
    CosetTable {
        gens,
        entries: e.table,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_of_order_two() {
        let t = todd_coxeter(&pres("gens: x"), &[], 100);
        assert!(t.is_complete());
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(0, 0), Some(1));
        assert_eq!(t.to_csv(&pres("gens: x")), "coset,x\n1,2\n2,1\n");
    }

    #[test]
    fn dihedral_groups() {
        // (ab)^n = 1 gives the dihedral group of order 2n.
        for n in 1..12 {
            let rel = vec!["a b"; n].join(" ");
            let t = todd_coxeter(&pres(&format!("gens: a, b; rels: {rel}")), &[], 10_000);
            assert!(t.is_complete());
            assert_eq!(t.len(), 2 * n);
        }
    }

    #[test]
    fn subgroup_index() {
        let p = pres("gens: a, b; rels: a b a b a b");
        let t = todd_coxeter(&p, &[vec![0]], 100);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn infinite_dihedral_hits_cap() {
        let t = todd_coxeter(&pres("gens: a, b"), &[], 100);
        assert_eq!(t.status(), EnumerationStatus::Capped);
        assert!(t.len() <= 100);
    }

    #[test]
    fn symmetric_group_s5_from_coxeter_presentation() {
        let p = pres(
            "gens: a, b, c, d; rels: a b a b a b; b c b c b c; c d c d c d; \
             a c a c; a d a d; b d b d",
        );
        let t = todd_coxeter(&p, &[], 1000);
        assert!(t.is_complete());
        assert_eq!(t.len(), 120);
    }

    #[test]
    fn tight_cap_still_completes_with_lookahead() {
        let p = pres(
            "gens: a, b, c, d; rels: a b a b a b; b c b c b c; c d c d c d; \
             a c a c; a d a d; b d b d",
        );
        let t = todd_coxeter(&p, &[], 130);
        assert!(t.is_complete());
        assert_eq!(t.len(), 120);
    }
}
