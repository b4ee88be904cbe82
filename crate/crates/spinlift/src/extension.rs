//! The preimage `λ⁻¹(θ(F))` of the holonomy group in `Spin(n)`.
//!
//! Two constructions. The concrete one closes the preimages of a
//! signed-permutation realization together with `−1`. The abstract one
//! presents the central extension of `F` by `⟨c | c²⟩` whose relator signs
//! are read off rotation angles, and needs no realization.

use std::fmt;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::{coset_enumerate, render_word, FpGroup, IntWord, DEFAULT_COSET_BOUND};
use crate::holonomy::IntMatrix;
use crate::lift::base_preimages;
use crate::named::{identify, GroupName};
use crate::record::AlmostBieberbachRecord;
use crate::spin::{identify_group, subgroup_closure, SpinElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Concrete,
    Abstract,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Concrete => "concrete",
            Route::Abstract => "abstract",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LiftGroup {
    pub name: GroupName,
    pub order: usize,
    pub holonomy_order: usize,
    pub route: Route,
    /// Spin elements for the concrete route, normal-form words otherwise.
    pub elements: Vec<String>,
}

type PowerRelators = &'static [(&'static [(usize, i64)], i64)];

/// Presentations `⟨gens | w₁^{m₁}, …⟩` in which every relator is a power.
struct PowerPresentation {
    generators: usize,
    relators: PowerRelators,
}

fn power_presentation(name: &str) -> Option<PowerPresentation> {
    let (generators, relators): (usize, PowerRelators) = match name {
        "1" => (0, &[]),
        "C2" => (1, &[(&[(0, 1)], 2)]),
        "C2×C2" => (2, &[(&[(0, 1)], 2), (&[(1, 1)], 2), (&[(0, 1), (1, 1)], 2)]),
        "C3" => (1, &[(&[(0, 1)], 3)]),
        "C4" => (1, &[(&[(0, 1)], 4)]),
        "S3" => (2, &[(&[(0, 1)], 3), (&[(1, 1)], 2), (&[(0, 1), (1, 1)], 2)]),
        "C6" => (1, &[(&[(0, 1)], 6)]),
        "D8" => (2, &[(&[(0, 1)], 4), (&[(1, 1)], 2), (&[(0, 1), (1, 1)], 2)]),
        "D12" => (2, &[(&[(0, 1)], 6), (&[(1, 1)], 2), (&[(0, 1), (1, 1)], 2)]),
        _ => return None,
    };
    Some(PowerPresentation {
        generators,
        relators,
    })
}

fn power_word(w: &[(usize, i64)], m: i64) -> IntWord {
    (0..m).flat_map(|_| w.iter().copied()).collect()
}

/// Coefficients, constant term first.
type Poly = Vec<i64>;

/// `det(xI − M)` by Faddeev–LeVerrier.
fn characteristic_polynomial(m: &IntMatrix) -> Poly {
    let n = m.dim();
    let mut coeffs = vec![0i64; n + 1];
    coeffs[n] = 1;
    let mut mk = IntMatrix::identity(n);
    let mut c = 1i64;
    for k in 1..=n {
        if k > 1 {
            let am = m.mul(&mk);
            let shifted = (0..n).map(|i| {
                (0..n)
                    .map(|j| am.rows()[i][j] + if i == j { c } else { 0 })
                    .collect()
            });
            mk = IntMatrix::new(shifted.collect()).expect("square");
        }
        c = -m.mul(&mk).trace() / k as i64;
        coeffs[n - k] = c;
    }
    coeffs
}

fn cyclotomic(n: u32) -> Poly {
    match n {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        5 => vec![1, 1, 1, 1, 1],
        6 => vec![1, -1, 1],
        8 => vec![1, 0, 0, 0, 1],
        10 => vec![1, -1, 1, -1, 1],
        12 => vec![1, 0, -1, 0, 1],
        _ => unreachable!("no cyclotomic factor of degree ≤ 4 for {n}"),
    }
}

/// Exact division by a monic polynomial.
fn divide(p: &Poly, d: &Poly) -> Option<Poly> {
    if p.len() < d.len() {
        return None;
    }
    let mut r = p.clone();
    let mut q = vec![0; p.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + d.len() - 1];
        q[i] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponent `ε` with `x^m = (−1)^ε` for either preimage `x` of a rotation `M`
/// with `M^m = I` and `m` even.
fn power_sign(m: &IntMatrix, power: i64) -> Result<i64> {
    let mut p = characteristic_polynomial(m);
    let mut eps = 0i64;
    let mut half_turns = 0i64;
    for n in [1u32, 2, 3, 4, 5, 6, 8, 10, 12] {
        let phi = cyclotomic(n);
        while let Some(q) = divide(&p, &phi) {
            p = q;
            match n {
                1 => {}
                2 => half_turns += 1,
                _ => {
                    for k in (1..n).filter(|&k| 2 * k < n && gcd(k, n) == 1) {
                        let num = power * i64::from(k);
                        if num % i64::from(n) != 0 {
                            return Err(Error::Invariant(format!(
                                "rotation of order {n} does not divide {power}"
                            )));
                        }
                        eps += num / i64::from(n);
                    }
                }
            }
        }
    }
    if p != vec![1] {
        return Err(Error::Invariant(format!(
            "characteristic polynomial of {m} is not a product of small cyclotomic factors"
        )));
    }
    if half_turns % 2 != 0 {
        return Err(Error::NotInSO);
    }
    Ok((eps + half_turns / 2 * (power / 2)).rem_euclid(2))
}

/// Images in `θ(F)` of the power-presentation generators.
fn power_generators(
    record: &AlmostBieberbachRecord,
    pres: &PowerPresentation,
) -> Result<Vec<IntMatrix>> {
    let group = record.matrix_group()?;
    let f = group.table();
    let satisfies = |images: &[usize]| {
        pres.relators
            .iter()
            .all(|(w, m)| f.evaluate(&power_word(w, *m), images) == f.identity())
            && f.generated(images).len() == f.order()
    };
    let tuple: Option<Vec<usize>> = match pres.generators {
        0 => Some(Vec::new()),
        1 => (0..f.order()).map(|x| vec![x]).find(|t| satisfies(t)),
        _ => (0..f.order())
            .flat_map(|x| (0..f.order()).map(move |y| vec![x, y]))
            .find(|t| satisfies(t)),
    };
    let tuple = tuple.ok_or_else(|| {
        Error::inconsistent(
            &record.family,
            format!(
                "holonomy does not satisfy the presentation of {}",
                record.holonomy
            ),
        )
    })?;
    Ok(tuple
        .into_iter()
        .map(|x| group.elements()[x].clone())
        .collect())
}

/// `⟨gens, c | c², [g, c], wᵢ^{mᵢ} c^{−εᵢ}⟩`.
pub fn extension_presentation(record: &AlmostBieberbachRecord) -> Result<FpGroup> {
    let pres = power_presentation(record.holonomy.as_str()).ok_or_else(|| {
        Error::InvalidInput(format!("no power presentation for {}", record.holonomy))
    })?;
    let images = power_generators(record, &pres)?;
    let k = pres.generators;
    let c = k;
    let mut relators: Vec<IntWord> = vec![vec![(c, 2)]];
    relators.extend((0..k).map(|g| vec![(g, -1), (c, -1), (g, 1), (c, 1)]));
    for (i, &(w, m)) in pres.relators.iter().enumerate() {
        let word = power_word(w, m);
        let eps = if m % 2 == 0 {
            let base = w
                .iter()
                .fold(IntMatrix::identity(record.dimension), |acc, &(g, e)| {
                    acc.mul(&images[g].pow(e as u32))
                });
            power_sign(&base, m)?
        } else {
            let free_sign = match w {
                [(g, 1)] => pres
                    .relators
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .all(|(_, &(v, n))| {
                        v.iter()
                            .filter(|&&(h, _)| h == *g)
                            .map(|&(_, e)| e)
                            .sum::<i64>()
                            * n
                            % 2
                            == 0
                    }),
                _ => false,
            };
            if !free_sign {
                return Err(Error::Invariant(format!(
                    "odd power relator {i} has no free sign"
                )));
            }
            0
        };
        let mut r = word;
        if eps != 0 {
            r.push((c, -1));
        }
        relators.push(r);
    }
    let mut names: Vec<String> = (0..k).map(|g| ["a", "b"][g].to_string()).collect();
    names.push("c".to_string());
    Ok(FpGroup::with_names(names, relators))
}

pub fn lift_group_abstract(record: &AlmostBieberbachRecord) -> Result<LiftGroup> {
    let pres = extension_presentation(record)?;
    let table = coset_enumerate(&pres, &[], DEFAULT_COSET_BOUND)?;
    let group = FiniteGroup::from_coset_table(&table)?;
    let name = identify(&group)?;
    let elements = table
        .transversal()
        .iter()
        .map(|w| render_word(w, pres.names()))
        .collect();
    Ok(LiftGroup {
        name,
        order: group.order(),
        holonomy_order: record.matrix_group()?.order(),
        route: Route::Abstract,
        elements,
    })
}

pub fn lift_group_concrete(record: &AlmostBieberbachRecord) -> Result<LiftGroup> {
    let bases = base_preimages(record)?;
    let mut gens: Vec<SpinElement> = record
        .holonomy_generators()
        .into_iter()
        .map(|g| bases[g].clone())
        .collect();
    gens.push(SpinElement::minus_one(record.dimension)?);
    let group = subgroup_closure(&gens)?;
    Ok(LiftGroup {
        name: identify_group(&group)?,
        order: group.order(),
        holonomy_order: record.matrix_group()?.order(),
        route: Route::Concrete,
        elements: group.elements().iter().map(ToString::to_string).collect(),
    })
}

/// Concrete when the holonomy has a signed-permutation realization, abstract
/// otherwise. Errors if `|𝔽̃| ≠ 2|F|`.
pub fn lift_group(record: &AlmostBieberbachRecord) -> Result<LiftGroup> {
    let g = match lift_group_concrete(record) {
        Err(Error::UnsupportedScalar) => lift_group_abstract(record)?,
        other => other?,
    };
    if g.order != 2 * g.holonomy_order {
        return Err(Error::Invariant(format!(
            "preimage group has order {}, holonomy {}",
            g.order, g.holonomy_order
        )));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(c: i64, s: i64) -> Vec<Vec<i64>> {
        vec![vec![c, -s], vec![s, c]]
    }

    fn block(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> IntMatrix {
        let n = a.len() + b.len();
        let mut rows = vec![vec![0; n]; n];
        for (i, r) in a.iter().enumerate() {
            rows[i][..a.len()].copy_from_slice(r);
        }
        for (i, r) in b.iter().enumerate() {
            rows[a.len() + i][a.len()..].copy_from_slice(r);
        }
        IntMatrix::new(rows).unwrap()
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(
            characteristic_polynomial(&IntMatrix::identity(4)),
            vec![1, -4, 6, -4, 1]
        );
        let m = block(rotation(0, 1), vec![vec![1, 0], vec![0, 1]]);
        // (x² + 1)(x − 1)²
        assert_eq!(characteristic_polynomial(&m), vec![1, -2, 2, -2, 1]);
    }

    #[test]
    fn rotation_signs() {
        let id2 = vec![vec![1, 0], vec![0, 1]];
        // a quarter turn lifts to an element of order 8
        assert_eq!(
            power_sign(&block(rotation(0, 1), id2.clone()), 4).unwrap(),
            1
        );
        // two quarter turns: (−1)(−1)
        assert_eq!(
            power_sign(&block(rotation(0, 1), rotation(0, 1)), 4).unwrap(),
            0
        );
        // a half turn in two planes is e₁e₂e₃e₄, which squares to 1
        assert_eq!(
            power_sign(&IntMatrix::diag(&[-1, -1, -1, -1]), 2).unwrap(),
            0
        );
        assert_eq!(power_sign(&IntMatrix::diag(&[1, 1, -1, -1]), 2).unwrap(), 1);
        // a sixth turn, x⁶ = −1
        let r6 = vec![vec![1, -1], vec![1, 0]];
        assert_eq!(power_sign(&block(r6, id2), 6).unwrap(), 1);
        assert_eq!(power_sign(&IntMatrix::identity(4), 2).unwrap(), 0);
    }
}
