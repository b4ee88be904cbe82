//! Lifting the holonomy representation through `Spin(n) → SO(n)`: sign
//! enumeration over a presentation and the 2-Sylow reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::{
    abelianization_mod2_rank, coset_enumerate, exponent_sums, reidemeister_schreier, CosetTable,
    GeneratorId, IntWord, ParamValues, Presentation, Role, Word, DEFAULT_COSET_BOUND,
};
use crate::holonomy::{matrix_group_closure, realization_map, IntMatrix};
use crate::named::identify;
use crate::record::AlmostBieberbachRecord;
use crate::spin::{preimage_signed_perm, SpinElement};

pub const MAX_GENERATORS: usize = 24;

/// A sign `±1` for every generator, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignAssignment {
    negated: Vec<bool>,
    names: Vec<String>,
}

impl SignAssignment {
    pub fn new(names: Vec<String>, signs: &[i8]) -> Result<Self> {
        if names.len() != signs.len() {
            return Err(Error::InvalidInput(format!(
                "{} signs for {} generators",
                signs.len(),
                names.len()
            )));
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::InvalidInput(format!("sign {s} is not ±1")));
        }
        Ok(SignAssignment {
            negated: signs.iter().map(|&s| s < 0).collect(),
            names,
        })
    }

    pub fn all_positive(names: Vec<String>) -> Self {
        SignAssignment {
            negated: vec![false; names.len()],
            names,
        }
    }

    fn from_mask(names: &[String], mask: u32) -> Self {
        SignAssignment {
            negated: (0..names.len()).map(|g| mask >> g & 1 == 1).collect(),
            names: names.to_vec(),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sign(&self, g: usize) -> i8 {
        if self.negated[g] {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.negated.len()).map(|g| self.sign(g)).collect()
    }

    pub fn len(&self) -> usize {
        self.negated.len()
    }

    pub fn is_empty(&self) -> bool {
        self.negated.is_empty()
    }

    /// Pointwise product; both sides must range over the same generators.
    pub fn product(&self, other: &SignAssignment) -> SignAssignment {
        assert_eq!(
            self.names, other.names,
            "assignments over different generators"
        );
        let negated = self
            .negated
            .iter()
            .zip(&other.negated)
            .map(|(a, b)| a ^ b)
            .collect();
        SignAssignment {
            negated,
            names: self.names.clone(),
        }
    }

    fn renamed(&self, names: Vec<String>) -> SignAssignment {
        SignAssignment {
            negated: self.negated.clone(),
            names,
        }
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(&self.negated)
            .map(|(n, &neg)| format!("{n}={}", if neg { "-1" } else { "+1" }))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Direct,
    Sylow,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Direct => "direct",
            Strategy::Sylow => "sylow",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub exists: bool,
    pub count: u64,
    pub valid_assignments: Vec<SignAssignment>,
    pub strategy: Strategy,
    pub parallelizable: bool,
}

impl LiftResult {
    /// Equality ignoring which strategy produced the result.
    pub fn same_outcome(&self, other: &LiftResult) -> bool {
        self.exists == other.exists
            && self.count == other.count
            && self.valid_assignments == other.valid_assignments
            && self.parallelizable == other.parallelizable
    }
}

fn ensure_orientable(record: &AlmostBieberbachRecord) -> Result<()> {
    if record.is_orientable() {
        Ok(())
    } else {
        Err(Error::NonOrientable(record.family.clone()))
    }
}

/// Canonical preimages of a signed-permutation realization of the holonomy
/// representation; lattice generators map to `1`.
pub fn base_preimages(record: &AlmostBieberbachRecord) -> Result<Vec<SpinElement>> {
    ensure_orientable(record)?;
    let hol = record.holonomy_generators();
    let mut spanning: Vec<IntMatrix> = Vec::new();
    let mut order = 1;
    for &g in &hol {
        let m = record.theta(g);
        let mut trial = spanning.clone();
        trial.push(m);
        let size = matrix_group_closure(&trial, record.dimension)?.order();
        if size > order {
            spanning = trial;
            order = size;
        }
    }
    let group = matrix_group_closure(&spanning, record.dimension)?;
    let nu = realization_map(&group).ok_or(Error::UnsupportedScalar)?;
    (0..record.presentation.generators().len())
        .map(|g| {
            let m = nu
                .get(&record.theta(g))
                .ok_or_else(|| Error::Invariant("holonomy image outside the closure".into()))?;
            Ok(preimage_signed_perm(m)?.into_canonical())
        })
        .collect()
}

fn evaluate_int_word(word: &IntWord, signs: &[i8], bases: &[SpinElement]) -> Result<SpinElement> {
    let dim = bases.first().map_or(1, SpinElement::dim);
    let mut acc = SpinElement::one(dim)?;
    for &(g, e) in word {
        let x = if signs[g] < 0 {
            -&bases[g]
        } else {
            bases[g].clone()
        };
        acc = acc.try_mul(&x.pow(e))?;
    }
    Ok(acc)
}

/// `∏ (σ_s x_s)^{e}` over the letters of `word`.
pub fn evaluate_word(
    word: &Word,
    assignment: &SignAssignment,
    bases: &[SpinElement],
    params: &ParamValues,
) -> Result<SpinElement> {
    if assignment.len() != bases.len() {
        return Err(Error::InvalidInput(format!(
            "{} signs for {} preimages",
            assignment.len(),
            bases.len()
        )));
    }
    evaluate_int_word(&word.eval(params)?, &assignment.signs(), bases)
}

pub fn reduce_params_mod2(params: &ParamValues) -> ParamValues {
    params.mod2()
}

pub fn enumerate_lifts(
    record: &AlmostBieberbachRecord,
    params: &ParamValues,
) -> Result<LiftResult> {
    let bases = base_preimages(record)?;
    enumerate_lifts_with(record, params, &bases)
}

/// Sign enumeration over the given base preimages. Signs are central, so a
/// relator evaluates under `σ` to its value under `+1…+1` times the signs of
/// the generators it contains an odd number of times.
pub fn enumerate_lifts_with(
    record: &AlmostBieberbachRecord,
    params: &ParamValues,
    bases: &[SpinElement],
) -> Result<LiftResult> {
    let names = record.presentation.names();
    let n = names.len();
    if n > MAX_GENERATORS {
        return Err(Error::TooManyGenerators(n));
    }
    if bases.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} preimages for {n} generators",
            bases.len()
        )));
    }
    let gamma = record.presentation.eval(params)?;
    let plus = vec![1i8; n];
    let mut constraints = Vec::with_capacity(gamma.relators().len());
    for (i, (r, sums)) in gamma
        .relators()
        .iter()
        .zip(exponent_sums(&gamma))
        .enumerate()
    {
        let value = evaluate_int_word(r, &plus, bases)?;
        let sign = value.as_sign().ok_or_else(|| {
            Error::inconsistent(
                &record.family,
                format!(
                    "relator {} evaluates to {value}, not ±1",
                    record.presentation.render_relator(i)
                ),
            )
        })?;
        let parity = sums
            .iter()
            .enumerate()
            .filter(|(_, &s)| s % 2 != 0)
            .fold(0u32, |m, (g, _)| m | 1 << g);
        constraints.push((parity, sign < 0));
    }
    let mut valid: Vec<SignAssignment> = (0..1u32 << n)
        .filter(|&mask| {
            constraints
                .iter()
                .all(|&(parity, neg)| ((mask & parity).count_ones() % 2 == 1) == neg)
        })
        .map(|mask| SignAssignment::from_mask(&names, mask))
        .collect();
    valid.sort();
    let count = valid.len() as u64;
    Ok(LiftResult {
        exists: count > 0,
        count,
        valid_assignments: valid,
        strategy: Strategy::Direct,
        parallelizable: count > 0 && record.dimension == 4,
    })
}

/// Maximal 2-subgroup of `group`, grown greedily; returns its generators.
fn sylow2_generators(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut size = 1;
    for x in 0..group.order() {
        if !group.element_order(x).is_power_of_two() {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(x);
        let h = group.generated(&trial).len();
        if h > size && h.is_power_of_two() {
            gens = trial;
            size = h;
        }
    }
    gens
}

/// The record of `π⁻¹(Syl₂(F))`, presented by Reidemeister–Schreier at the
/// parameters reduced mod 2.
pub fn sylow_pullback(
    record: &AlmostBieberbachRecord,
    params: &ParamValues,
) -> Result<AlmostBieberbachRecord> {
    let params = params.mod2();
    let hol = record.holonomy_generators();
    let fpres = record.holonomy_presentation(&params)?;
    let regular = coset_enumerate(&fpres, &[], DEFAULT_COSET_BOUND)?;
    let f = FiniteGroup::from_coset_table(&regular)?;
    let transversal = regular.transversal();
    let words: Vec<IntWord> = sylow2_generators(&f)
        .into_iter()
        .map(|x| transversal[x].clone())
        .collect();
    let cosets = coset_enumerate(&fpres, &words, DEFAULT_COSET_BOUND)?;
    let identity: Vec<usize> = (0..cosets.index()).collect();
    let perms: Vec<Vec<usize>> = (0..record.presentation.generators().len())
        .map(|g| match hol.iter().position(|&h| h == g) {
            Some(i) => (0..cosets.index()).map(|c| cosets.action(c, i)).collect(),
            None => identity.clone(),
        })
        .collect();
    let table = CosetTable::from_permutations(&perms)?;
    let gamma = record.presentation.eval(&params)?;
    let sub = reidemeister_schreier(&gamma, &table)?;

    let thetas: Vec<IntMatrix> = sub
        .generator_words
        .iter()
        .map(|w| record.theta_word(w))
        .collect();
    let generators = sub
        .group
        .names()
        .iter()
        .zip(&thetas)
        .map(|(name, m)| {
            GeneratorId::new(
                name,
                if m.is_identity() {
                    Role::Lattice
                } else {
                    Role::Holonomy
                },
            )
        })
        .collect();
    let relators = sub.group.relators().iter().map(Word::from_ints).collect();
    let presentation = Presentation::new(generators, relators, Vec::new())?;
    let holonomy_matrices = thetas
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_identity())
        .collect();
    let mut child = AlmostBieberbachRecord {
        family: format!("{}/Syl2", record.family),
        holonomy: record.holonomy,
        nilpotency_class: record.nilpotency_class,
        source: record.source.clone(),
        orientable: record.orientable,
        dimension: record.dimension,
        presentation,
        holonomy_matrices,
        parameter_classes: Vec::new(),
        sylow_pullback: None,
    };
    child.holonomy = identify(child.matrix_group()?.table())?;
    Ok(child)
}

/// Existence from the pullback to the 2-Sylow subgroup; the count is `2^d`
/// with `d` the mod-2 abelianization rank of the full group. Assignments are
/// reported only when the pullback is the whole group.
pub fn sylow_strategy(record: &AlmostBieberbachRecord, params: &ParamValues) -> Result<LiftResult> {
    ensure_orientable(record)?;
    let child = match &record.sylow_pullback {
        Some(c) => (**c).clone(),
        None => sylow_pullback(record, params)?,
    };
    let inner = enumerate_lifts(&child, &ParamValues::default())?;
    let n = record.presentation.generators().len();
    let d = abelianization_mod2_rank(&record.presentation.eval(&params.mod2())?);
    if d > 63 {
        return Err(Error::TooManyGenerators(n));
    }
    let count = if inner.exists { 1u64 << d } else { 0 };
    let valid_assignments =
        if child.presentation.generators().len() == n && child.holonomy == record.holonomy {
            inner
                .valid_assignments
                .iter()
                .map(|a| a.renamed(record.presentation.names()))
                .collect()
        } else {
            Vec::new()
        };
    Ok(LiftResult {
        exists: inner.exists,
        count,
        valid_assignments,
        strategy: Strategy::Sylow,
        parallelizable: inner.exists && record.dimension == 4,
    })
}

/// Direct enumeration, falling back to the 2-Sylow reduction when the
/// holonomy has no signed-permutation realization.
pub fn lift(record: &AlmostBieberbachRecord, params: &ParamValues) -> Result<LiftResult> {
    match enumerate_lifts(record, params) {
        Err(Error::UnsupportedScalar) => sylow_strategy(record, params),
        other => other,
    }
}
