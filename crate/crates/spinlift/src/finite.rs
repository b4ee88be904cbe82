//! Small finite groups as explicit multiplication tables.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::fp::{CosetTable, IntWord};

/// Finite group on `0..n` with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Elements must start with the identity and be closed under `op`.
    pub fn from_elements<T: Eq + Hash>(elements: &[T], op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let n = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != n {
            return Err(Error::Invariant("repeated group element".into()));
        }
        let mut table = vec![0; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = *index
                    .get(&op(a, b))
                    .ok_or_else(|| Error::Invariant("element list is not closed".into()))?;
            }
        }
        FiniteGroup::from_table(n, table)
    }

    fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 || (0..n).any(|i| table[i] != i || table[i * n] != i) {
            return Err(Error::Invariant("element 0 is not the identity".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .ok_or_else(|| Error::Invariant("element without inverse".into()))?;
        }
        Ok(FiniteGroup { n, table, inverse })
    }

    /// Breadth-first closure of `generators` under `op`, starting from `identity`.
    /// Returns the elements in discovery order together with the table.
    pub fn closure<T: Clone + Eq + Hash>(
        identity: T,
        generators: &[T],
        op: impl Fn(&T, &T) -> T,
        bound: usize,
    ) -> Result<(Vec<T>, FiniteGroup)> {
        let mut elements = vec![identity.clone()];
        let mut seen: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let y = op(&elements[i], g);
                if !seen.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::ClosureBoundExceeded(bound));
                    }
                    seen.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let group = FiniteGroup::from_elements(&elements, op)?;
        Ok((elements, group))
    }

    /// The regular representation read off a coset table of the trivial subgroup.
    pub fn from_coset_table(t: &CosetTable) -> Result<Self> {
        let n = t.index();
        let words = t.transversal();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for (b, w) in words.iter().enumerate() {
                table[a * n + b] = t.act_word(a, w);
            }
        }
        FiniteGroup::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn conj(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(self.inv(by), a), by)
    }

    pub fn evaluate(&self, word: &IntWord, images: &[usize]) -> usize {
        word.iter()
            .fold(0, |acc, &(g, e)| self.mul(acc, self.pow(images[g], e)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// element order ↦ number of elements of that order
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.n {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| inside[i]).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.generated(&comms)
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|g| self.conj(a, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                class_of[c] = classes.len();
            }
            classes.push(cls);
        }
        classes
    }

    /// Elementary divisors (prime powers, sorted) of the abelianization.
    pub fn abelian_invariants(&self) -> Vec<usize> {
        let derived = self.derived_subgroup();
        let mut in_derived = vec![false; self.n];
        for &d in &derived {
            in_derived[d] = true;
        }
        let quotient_order = self.n / derived.len();
        // a^m ∈ G' counts cosets aG' with (aG')^m = 1, times |G'|
        let count = |m: usize| {
            (0..self.n)
                .filter(|&a| in_derived[self.pow(a, m as i64)])
                .count()
                / derived.len()
        };
        let mut out = Vec::new();
        let mut rest = quotient_order;
        let mut p = 2;
        while rest > 1 {
            if rest.is_multiple_of(p) {
                let mut exps = vec![0u32];
                let mut pk = 1;
                loop {
                    pk *= p;
                    let c = count(pk);
                    let e = (c as f64).log(p as f64).round() as u32;
                    exps.push(e);
                    if c == count(pk * p) {
                        break;
                    }
                }
                let total = *exps.last().unwrap();
                for k in 1..exps.len() {
                    let at_least_k = exps[k] - exps[k - 1];
                    let at_least_next = if k + 1 < exps.len() {
                        exps[k + 1] - exps[k]
                    } else {
                        0
                    };
                    for _ in 0..at_least_k - at_least_next {
                        out.push(p.pow(k as u32));
                    }
                }
                rest /= p.pow(total);
            }
            p += 1;
        }
        out.sort_unstable();
        out
    }
}
