//! Todd–Coxeter coset enumeration (HLT strategy with coincidence handling).

use std::collections::VecDeque;

use super::group::{FpGroup, IntWord};
use crate::error::{Error, Result};

pub const DEFAULT_COSET_BOUND: usize = 100_000;

const UNDEF: usize = usize::MAX;

/// Letter `2g` is generator `g`, letter `2g + 1` its inverse.
pub(crate) fn letters(word: &IntWord) -> Vec<usize> {
    let mut out = Vec::new();
    for &(g, e) in word {
        let l = if e < 0 { 2 * g + 1 } else { 2 * g };
        out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
    }
    out
}

fn inv(l: usize) -> usize {
    l ^ 1
}

/// Complete coset table: `action(c, g)` is the coset `c·g`. Coset 0 is the
/// subgroup itself; cosets are numbered in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    table: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Table from one permutation of the cosets per generator (`perms[g][c] = c·g`).
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let n = perms.first().map_or(1, |p| p.len());
        let mut table = vec![vec![UNDEF; 2 * perms.len()]; n];
        for (g, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::InvalidInput(
                    "permutations of different degrees".into(),
                ));
            }
            for (c, &d) in p.iter().enumerate() {
                if d >= n || table[d][2 * g + 1] != UNDEF {
                    return Err(Error::InvalidInput(format!(
                        "generator {g} does not act as a permutation"
                    )));
                }
                table[c][2 * g] = d;
                table[d][2 * g + 1] = c;
            }
        }
        Ok(CosetTable {
            generators: perms.len(),
            table,
        })
    }

    pub fn index(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn action(&self, coset: usize, g: usize) -> usize {
        self.table[coset][2 * g]
    }

    pub fn inverse_action(&self, coset: usize, g: usize) -> usize {
        self.table[coset][2 * g + 1]
    }

    pub fn act_word(&self, coset: usize, word: &IntWord) -> usize {
        letters(word)
            .into_iter()
            .fold(coset, |c, l| self.table[c][l])
    }

    /// Shortest words reaching each coset from coset 0, with the tree edge
    /// used (`(parent, letter)`) for every coset but 0.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.index()];
        let mut seen = vec![false; self.index()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for l in 0..2 * self.generators {
                let d = self.table[c][l];
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, l));
                    queue.push_back(d);
                }
            }
        }
        parent
    }

    /// Representative word for every coset, built from the spanning tree.
    pub fn transversal(&self) -> Vec<IntWord> {
        let parent = self.spanning_tree();
        let mut words: Vec<Option<IntWord>> = vec![None; self.index()];
        words[0] = Some(Vec::new());
        fn build(
            c: usize,
            parent: &[Option<(usize, usize)>],
            words: &mut Vec<Option<IntWord>>,
        ) -> IntWord {
            if let Some(w) = &words[c] {
                return w.clone();
            }
            let (p, l) = parent[c].expect("connected table");
            let mut w = build(p, parent, words);
            w.push((l / 2, if l % 2 == 0 { 1 } else { -1 }));
            words[c] = Some(w.clone());
            w
        }
        (0..self.index())
            .map(|c| build(c, &parent, &mut words))
            .collect()
    }
}

struct Enumerator {
    letters: usize,
    table: Vec<Vec<usize>>,
    forward: Vec<usize>,
    bound: usize,
}

impl Enumerator {
    fn new(generators: usize, bound: usize) -> Self {
        Enumerator {
            letters: 2 * generators,
            table: vec![vec![UNDEF; 2 * generators]],
            forward: vec![0],
            bound,
        }
    }

    fn define(&mut self, c: usize, l: usize) -> Result<()> {
        if self.table.len() >= self.bound {
            return Err(Error::EnumerationBoundExceeded(self.bound));
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.letters]);
        self.forward.push(d);
        self.table[c][l] = d;
        self.table[d][inv(l)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut j = c;
        while self.forward[j] != r {
            let next = self.forward[j];
            self.forward[j] = r;
            j = next;
        }
        r
    }

    fn merge(&mut self, queue: &mut VecDeque<usize>, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.forward[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(&mut queue, a, b);
        while let Some(e) = queue.pop_front() {
            for l in 0..self.letters {
                let f = self.table[e][l];
                if f == UNDEF {
                    continue;
                }
                self.table[f][inv(l)] = UNDEF;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][l] != UNDEF {
                    let t = self.table[e1][l];
                    self.merge(&mut queue, f1, t);
                } else if self.table[f1][inv(l)] != UNDEF {
                    let t = self.table[f1][inv(l)];
                    self.merge(&mut queue, e1, t);
                } else {
                    self.table[e1][l] = f1;
                    self.table[f1][inv(l)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != UNDEF {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inv(w[j as usize])] != UNDEF {
                b = self.table[b][inv(w[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][inv(w[i])] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn finish(mut self) -> Vec<Vec<usize>> {
        // renumber live cosets breadth-first from 0
        let n = self.table.len();
        let mut new = vec![UNDEF; n];
        let mut order = vec![0];
        new[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for l in 0..self.letters {
                let d = self.rep(self.table[c][l]);
                if new[d] == UNDEF {
                    new[d] = order.len();
                    order.push(d);
                }
            }
            k += 1;
        }
        order
            .iter()
            .map(|&c| {
                (0..self.letters)
                    .map(|l| {
                        let d = self.rep(self.table[c][l]);
                        new[d]
                    })
                    .collect()
            })
            .collect()
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in `group`.
pub fn coset_enumerate(group: &FpGroup, subgroup: &[IntWord], bound: usize) -> Result<CosetTable> {
    let k = group.generators();
    for w in group.relators().iter().chain(subgroup) {
        if let Some(&(g, _)) = w.iter().find(|(g, _)| *g >= k) {
            return Err(Error::InvalidInput(format!(
                "word uses generator {g} of {k}"
            )));
        }
    }
    let relators: Vec<Vec<usize>> = group.relators().iter().map(letters).collect();
    let mut en = Enumerator::new(k, bound);
    for w in subgroup {
        en.scan_and_fill(0, &letters(w))?;
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in &relators {
            if en.rep(c) != c {
                break;
            }
            en.scan_and_fill(c, r)?;
        }
        for l in 0..en.letters {
            if en.rep(c) != c {
                break;
            }
            if en.table[c][l] == UNDEF {
                en.define(c, l)?;
            }
        }
        c += 1;
    }
    Ok(CosetTable {
        generators: k,
        table: en.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(g: &FpGroup) -> usize {
        coset_enumerate(g, &[], 10_000).unwrap().index()
    }

    #[test]
    fn cyclic_group_index() {
        let c6 = FpGroup::new(1, vec![vec![(0, 6)]]);
        assert_eq!(order(&c6), 6);
        let t = coset_enumerate(&c6, &[vec![(0, 3)]], 100).unwrap();
        assert_eq!(t.index(), 3);
    }

    #[test]
    fn dihedral_subgroups() {
        // S3 = ⟨a, b | a², b³, (ab)²⟩
        let s3 = FpGroup::new(
            2,
            vec![
                vec![(0, 2)],
                vec![(1, 3)],
                vec![(0, 1), (1, 1), (0, 1), (1, 1)],
            ],
        );
        assert_eq!(order(&s3), 6);
        assert_eq!(
            coset_enumerate(&s3, &[vec![(0, 1)]], 100).unwrap().index(),
            3
        );
        // D12 = ⟨a, b | a⁶, b², (ab)²⟩ with ⟨a³, b⟩ of order 4
        let d12 = FpGroup::new(
            2,
            vec![
                vec![(0, 6)],
                vec![(1, 2)],
                vec![(0, 1), (1, 1), (0, 1), (1, 1)],
            ],
        );
        assert_eq!(order(&d12), 12);
        assert_eq!(
            coset_enumerate(&d12, &[vec![(0, 3)], vec![(1, 1)]], 100)
                .unwrap()
                .index(),
            3
        );
    }

    #[test]
    fn coincidences_collapse() {
        // a³ = a² = 1 and a = b collapse everything
        let g = FpGroup::new(2, vec![vec![(0, 3)], vec![(0, 1), (1, -1)], vec![(0, 2)]]);
        assert_eq!(order(&g), 1);
        // binary tetrahedral ⟨a, b | a³ = b³ = (ab)²⟩ has order 24
        let t = FpGroup::new(
            2,
            vec![
                vec![(0, 3), (1, -3)],
                vec![(0, 3), (1, -1), (0, -1), (1, -1), (0, -1)],
                vec![(0, 6)],
            ],
        );
        assert_eq!(order(&t), 24);
    }

    #[test]
    fn bound_is_enforced() {
        let free = FpGroup::new(1, vec![]);
        assert_eq!(
            coset_enumerate(&free, &[], 50),
            Err(Error::EnumerationBoundExceeded(50))
        );
    }

    #[test]
    fn transversal_words_reach_their_cosets() {
        let d8 = FpGroup::new(
            2,
            vec![
                vec![(0, 4)],
                vec![(1, 2)],
                vec![(0, 1), (1, 1), (0, 1), (1, 1)],
            ],
        );
        let t = coset_enumerate(&d8, &[], 100).unwrap();
        for (c, w) in t.transversal().iter().enumerate() {
            assert_eq!(t.act_word(0, w), c);
        }
    }
}
