//! Reidemeister–Schreier rewriting: a presentation of a finite-index subgroup
//! from a coset table.

use super::coset::CosetTable;
use super::group::{invert_word, reduce_word, FpGroup, IntWord};
use crate::error::{Error, Result};

/// Presentation on Schreier generators, each given as a word in the parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub group: FpGroup,
    pub generator_words: Vec<IntWord>,
}

pub fn reidemeister_schreier(group: &FpGroup, table: &CosetTable) -> Result<SubgroupPresentation> {
    let k = group.generators();
    if table.generators() != k {
        return Err(Error::InvalidInput(format!(
            "coset table has {} generators, group has {k}",
            table.generators()
        )));
    }
    let n = table.index();
    let parent = table.spanning_tree();
    let transversal = table.transversal();
    let mut tree = vec![vec![false; k]; n];
    for (d, p) in parent.iter().enumerate() {
        if let Some((c, l)) = *p {
            let g = l / 2;
            if l % 2 == 0 {
                tree[c][g] = true;
            } else {
                tree[d][g] = true;
            }
        }
    }
    let mut index = vec![vec![None; k]; n];
    let mut words = Vec::new();
    let mut names = Vec::new();
    for c in 0..n {
        for g in 0..k {
            if tree[c][g] {
                continue;
            }
            index[c][g] = Some(words.len());
            let mut w = transversal[c].clone();
            w.push((g, 1));
            w.extend(invert_word(&transversal[table.action(c, g)]));
            words.push(reduce_word(&w));
            names.push(format!("{}_{c}", group.names()[g]));
        }
    }
    let rewrite = |start: usize, w: &IntWord| -> (usize, IntWord) {
        let mut c = start;
        let mut out = Vec::new();
        for &(g, e) in w {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    if let Some(s) = index[c][g] {
                        out.push((s, 1));
                    }
                    c = table.action(c, g);
                } else {
                    c = table.inverse_action(c, g);
                    if let Some(s) = index[c][g] {
                        out.push((s, -1));
                    }
                }
            }
        }
        (c, reduce_word(&out))
    };
    let mut relators = Vec::new();
    for c in 0..n {
        for r in group.relators() {
            let (end, w) = rewrite(c, r);
            if end != c {
                return Err(Error::InvalidInput(
                    "relator does not fix every coset".into(),
                ));
            }
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
    }
    Ok(SubgroupPresentation {
        group: FpGroup::with_names(names, relators),
        generator_words: words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteGroup;
    use crate::fp::coset::coset_enumerate;
    use crate::fp::presentation::abelianization_mod2_rank;

    #[test]
    fn index_one_relabels() {
        let g = FpGroup::new(
            2,
            vec![
                vec![(0, 4)],
                vec![(1, 2)],
                vec![(0, 1), (1, 1), (0, 1), (1, 1)],
            ],
        );
        let t = coset_enumerate(&g, &[vec![(0, 1)], vec![(1, 1)]], 100).unwrap();
        assert_eq!(t.index(), 1);
        let s = reidemeister_schreier(&g, &t).unwrap();
        assert_eq!(s.group.relators(), g.relators());
        assert_eq!(s.generator_words, vec![vec![(0, 1)], vec![(1, 1)]]);
    }

    #[test]
    fn free_groups_follow_nielsen_schreier() {
        let z = FpGroup::new(1, vec![]);
        let t = CosetTable::from_permutations(&[vec![1, 0]]).unwrap();
        let s = reidemeister_schreier(&z, &t).unwrap();
        assert_eq!(s.group.generators(), 1);
        assert_eq!(s.generator_words, vec![vec![(0, 2)]]);

        let f2 = FpGroup::new(2, vec![]);
        let t = CosetTable::from_permutations(&[vec![1, 0], vec![0, 1]]).unwrap();
        let s = reidemeister_schreier(&f2, &t).unwrap();
        assert_eq!(s.group.generators(), 3);
        assert!(s.group.relators().is_empty());
    }

    #[test]
    fn subgroup_of_finite_group_has_right_order() {
        // ⟨a³, b⟩ in D12 is C2 × C2
        let d12 = FpGroup::new(
            2,
            vec![
                vec![(0, 6)],
                vec![(1, 2)],
                vec![(0, 1), (1, 1), (0, 1), (1, 1)],
            ],
        );
        let t = coset_enumerate(&d12, &[vec![(0, 3)], vec![(1, 1)]], 100).unwrap();
        assert_eq!(t.index(), 3);
        let s = reidemeister_schreier(&d12, &t).unwrap();
        let h =
            FiniteGroup::from_coset_table(&coset_enumerate(&s.group, &[], 100).unwrap()).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.abelian_invariants(), vec![2, 2]);
        assert_eq!(abelianization_mod2_rank(&s.group), 2);
    }
}
