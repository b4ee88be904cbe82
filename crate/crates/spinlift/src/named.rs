//! Catalog of small groups by presentation, and identification up to isomorphism.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::{coset_enumerate, FpGroup, IntWord};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupName(&'static str);

impl GroupName {
    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn parse(s: &str) -> Option<GroupName> {
        let norm = |x: &str| x.replace(['×', 'x'], "x").replace(['⋊', ':'], ":");
        catalog()
            .iter()
            .map(|e| e.name)
            .find(|n| norm(n.0) == norm(s))
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

pub struct NamedGroup {
    pub name: GroupName,
    pub presentation: FpGroup,
    pub group: FiniteGroup,
}

fn comm(a: usize, b: usize) -> IntWord {
    vec![(a, -1), (b, -1), (a, 1), (b, 1)]
}

fn cyclic(n: i64) -> FpGroup {
    FpGroup::new(1, vec![vec![(0, n)]])
}

/// `⟨a, b | aⁿ, b², (ab)²⟩`, order `2n`.
fn dihedral(n: i64) -> FpGroup {
    FpGroup::new(
        2,
        vec![
            vec![(0, n)],
            vec![(1, 2)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1)],
        ],
    )
}

/// `⟨a, b | a^{2n}, b² = aⁿ, b⁻¹ab = a⁻¹⟩`, order `4n`.
fn dicyclic(n: i64) -> FpGroup {
    FpGroup::new(
        2,
        vec![
            vec![(0, 2 * n)],
            vec![(1, 2), (0, -n)],
            vec![(1, -1), (0, 1), (1, 1), (0, 1)],
        ],
    )
}

/// `⟨a, b | aᵐ, bᵏ, b⁻¹ab = aʳ⟩`.
fn metacyclic(m: i64, k: i64, r: i64) -> FpGroup {
    FpGroup::new(
        2,
        vec![
            vec![(0, m)],
            vec![(1, k)],
            vec![(1, -1), (0, 1), (1, 1), (0, -r)],
        ],
    )
}

fn product(g: &FpGroup, h: &FpGroup) -> FpGroup {
    let k = g.generators();
    let mut rels: Vec<IntWord> = g.relators().to_vec();
    rels.extend(
        h.relators()
            .iter()
            .map(|w| w.iter().map(|&(x, e)| (x + k, e)).collect()),
    );
    for a in 0..k {
        for b in 0..h.generators() {
            rels.push(comm(a, k + b));
        }
    }
    FpGroup::new(k + h.generators(), rels)
}

fn abelian(orders: &[i64]) -> FpGroup {
    orders[1..]
        .iter()
        .fold(cyclic(orders[0]), |g, &n| product(&g, &cyclic(n)))
}

fn definitions() -> Vec<(&'static str, FpGroup)> {
    let a4 = FpGroup::new(
        2,
        vec![
            vec![(0, 2)],
            vec![(1, 3)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)],
        ],
    );
    vec![
        ("1", FpGroup::new(0, vec![])),
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2×C2", abelian(&[2, 2])),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", dihedral(3)),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C2×C4", abelian(&[2, 4])),
        ("C2×C2×C2", abelian(&[2, 2, 2])),
        ("D8", dihedral(4)),
        ("Q8", dicyclic(2)),
        ("C9", cyclic(9)),
        ("C3×C3", abelian(&[3, 3])),
        ("C10", cyclic(10)),
        ("D10", dihedral(5)),
        ("C12", cyclic(12)),
        ("C2×C6", abelian(&[2, 6])),
        ("D12", dihedral(6)),
        ("C3⋊C4", dicyclic(3)),
        ("A4", a4.clone()),
        ("C16", cyclic(16)),
        ("C4×C4", abelian(&[4, 4])),
        ("C2×C8", abelian(&[2, 8])),
        ("C2×C2×C4", abelian(&[2, 2, 4])),
        ("C2×C2×C2×C2", abelian(&[2, 2, 2, 2])),
        ("D16", dihedral(8)),
        ("Q16", dicyclic(4)),
        ("SD16", metacyclic(8, 2, 3)),
        ("M16", metacyclic(8, 2, 5)),
        ("C4⋊C4", metacyclic(4, 4, 3)),
        ("C2×D8", product(&cyclic(2), &dihedral(4))),
        ("C2×Q8", product(&cyclic(2), &dicyclic(2))),
        ("C24", cyclic(24)),
        ("C2×C12", abelian(&[2, 12])),
        ("C2×C2×C6", abelian(&[2, 2, 6])),
        ("D24", dihedral(12)),
        ("C3⋊Q8", dicyclic(6)),
        ("C3⋊C8", metacyclic(3, 8, 2)),
        (
            "SL(2,3)",
            FpGroup::new(
                2,
                vec![
                    vec![(0, 3), (1, -3)],
                    vec![(0, 3), (1, -1), (0, -1), (1, -1), (0, -1)],
                    vec![(0, 6)],
                ],
            ),
        ),
        (
            "S4",
            FpGroup::new(
                2,
                vec![
                    vec![(0, 4)],
                    vec![(1, 2)],
                    vec![(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)],
                ],
            ),
        ),
        ("C2×A4", product(&cyclic(2), &a4)),
        ("C4×S3", product(&cyclic(4), &dihedral(3))),
        ("C2×D12", product(&cyclic(2), &dihedral(6))),
        ("C3×D8", product(&cyclic(3), &dihedral(4))),
        ("C3×Q8", product(&cyclic(3), &dicyclic(2))),
        ("C2×(C3⋊C4)", product(&cyclic(2), &dicyclic(3))),
    ]
}

/// Every catalog group, with its multiplication table built by coset enumeration.
pub fn catalog() -> &'static [NamedGroup] {
    static CATALOG: OnceLock<Vec<NamedGroup>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        definitions()
            .into_iter()
            .map(|(name, presentation)| {
                let table =
                    coset_enumerate(&presentation, &[], 1000).expect("catalog groups are small");
                let group = FiniteGroup::from_coset_table(&table).expect("regular representation");
                NamedGroup {
                    name: GroupName(name),
                    presentation,
                    group,
                }
            })
            .collect()
    })
}

pub fn named(name: &str) -> Option<&'static NamedGroup> {
    catalog().iter().find(|g| g.name.0 == name)
}

fn profile_string(p: &BTreeMap<usize, usize>) -> String {
    p.iter()
        .map(|(o, c)| format!("{c}×{o}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Images in `g` of the presentation generators of `h`, defining an isomorphism.
pub fn find_isomorphism(h: &NamedGroup, g: &FiniteGroup) -> Option<Vec<usize>> {
    if h.group.order() != g.order() {
        return None;
    }
    let k = h.presentation.generators();
    let mut images = vec![0; k];
    search(h, g, 0, &mut images).then_some(images)
}

fn search(h: &NamedGroup, g: &FiniteGroup, i: usize, images: &mut Vec<usize>) -> bool {
    if i == images.len() {
        return h
            .presentation
            .relators()
            .iter()
            .all(|r| g.evaluate(r, images) == 0)
            && g.generated(images).len() == g.order();
    }
    for x in 0..g.order() {
        images[i] = x;
        if search(h, g, i + 1, images) {
            return true;
        }
    }
    false
}

/// Identifies `g` among the catalog groups, up to isomorphism.
pub fn identify(g: &FiniteGroup) -> Result<GroupName> {
    let profile = g.order_profile();
    let invariants = g.abelian_invariants();
    catalog()
        .iter()
        .filter(|h| {
            h.group.order() == g.order()
                && h.group.order_profile() == profile
                && h.group.abelian_invariants() == invariants
        })
        .find(|h| find_isomorphism(h, g).is_some())
        .map(|h| h.name)
        .ok_or_else(|| Error::UnknownGroup {
            order: g.order(),
            profile: profile_string(&profile),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let expect = [
            ("1", 1),
            ("C2", 2),
            ("C2×C2", 4),
            ("S3", 6),
            ("D8", 8),
            ("Q8", 8),
            ("C3⋊C4", 12),
            ("A4", 12),
            ("D12", 12),
            ("Q16", 16),
            ("SD16", 16),
            ("M16", 16),
            ("C4⋊C4", 16),
            ("C3⋊Q8", 24),
            ("SL(2,3)", 24),
            ("S4", 24),
            ("C3⋊C8", 24),
        ];
        for (n, o) in expect {
            assert_eq!(named(n).unwrap().group.order(), o, "{n}");
        }
    }

    #[test]
    fn catalog_entries_are_pairwise_non_isomorphic() {
        for (i, a) in catalog().iter().enumerate() {
            assert_eq!(identify(&a.group).unwrap(), a.name);
            for b in &catalog()[..i] {
                assert!(
                    find_isomorphism(a, &b.group).is_none(),
                    "{} ≅ {}",
                    a.name,
                    b.name
                );
            }
        }
    }

    #[test]
    fn quaternion_and_dihedral_differ_only_by_search() {
        let q8 = &named("Q8").unwrap().group;
        let d8 = &named("D8").unwrap().group;
        assert_ne!(q8.order_profile(), d8.order_profile());
        let c3c4 = &named("C3⋊C4").unwrap().group;
        assert_eq!(
            c3c4.order_profile(),
            BTreeMap::from([(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)])
        );
    }

    #[test]
    fn parse_names() {
        assert_eq!(GroupName::parse("C3:C4").unwrap().as_str(), "C3⋊C4");
        assert_eq!(GroupName::parse("C2xC2").unwrap().as_str(), "C2×C2");
        assert!(GroupName::parse("C99").is_none());
    }
}
