use std::collections::HashSet;
use std::fmt;

use super::expr::{ExponentExpr, ParamValues};
use super::group::{reduce_word, FpGroup, IntWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Lattice,
    Holonomy,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Lattice => "lattice",
            Role::Holonomy => "holonomy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub name: String,
    pub role: Role,
}

impl GeneratorId {
    pub fn new(name: impl Into<String>, role: Role) -> Self {
        GeneratorId {
            name: name.into(),
            role,
        }
    }
}

/// Word over generator indices with symbolic exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(usize, ExponentExpr)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_ints(w: &IntWord) -> Self {
        Word(
            w.iter()
                .map(|&(g, e)| (g, ExponentExpr::constant(e)))
                .collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        Word(
            self.0
                .iter()
                .rev()
                .map(|(g, e)| (*g, e.negated()))
                .collect(),
        )
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Numeric word with exponents evaluated, adjacent powers merged and zeros dropped.
    pub fn eval(&self, params: &ParamValues) -> Result<IntWord> {
        let w = self
            .0
            .iter()
            .map(|(g, e)| Ok((*g, e.eval(params)?)))
            .collect::<Result<IntWord>>()?;
        Ok(reduce_word(&w))
    }
}

/// `⟨ S | R ⟩` with symbolic exponents over declared parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GeneratorId>,
    relators: Vec<Word>,
    parameters: Vec<String>,
}

impl Presentation {
    pub fn new(
        generators: Vec<GeneratorId>,
        relators: Vec<Word>,
        parameters: Vec<String>,
    ) -> Result<Self> {
        let mut names = HashSet::new();
        for g in &generators {
            if !names.insert(g.name.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "generator {} declared twice",
                    g.name
                )));
            }
        }
        let declared: HashSet<&str> = parameters.iter().map(String::as_str).collect();
        for (i, r) in relators.iter().enumerate() {
            for (g, e) in &r.0 {
                if *g >= generators.len() {
                    return Err(Error::InvalidInput(format!(
                        "relator {i} uses undeclared generator {g}"
                    )));
                }
                if let Some(s) = e.symbols().find(|s| !declared.contains(s)) {
                    return Err(Error::InvalidInput(format!(
                        "relator {i} uses undeclared parameter {s}"
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
            parameters,
        })
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn eval(&self, params: &ParamValues) -> Result<FpGroup> {
        let rels = self
            .relators
            .iter()
            .map(|r| r.eval(params))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpGroup::with_names(self.names(), rels))
    }

    pub fn render_relator(&self, i: usize) -> String {
        let r = &self.relators[i];
        if r.0.is_empty() {
            return "1".into();
        }
        r.0.iter()
            .map(|(g, e)| {
                let name = &self.generators[*g].name;
                match e.as_constant() {
                    Some(1) => name.clone(),
                    Some(c) => format!("{name}^{c}"),
                    None => format!("{name}^({e})"),
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Relator × generator matrix of exponent sums.
pub fn exponent_sums(group: &FpGroup) -> Vec<Vec<i64>> {
    group
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0; group.generators()];
            for &(g, e) in r {
                row[g] += e;
            }
            row
        })
        .collect()
}

/// `|S| − rank_𝔽₂` of the exponent-sum matrix, i.e. the 𝔽₂-dimension of `Hom(Γ, C₂)`.
pub fn abelianization_mod2_rank(group: &FpGroup) -> usize {
    let rows: Vec<u64> = exponent_sums(group)
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(0, |m, (g, e)| m | ((e.rem_euclid(2) as u64) << g))
        })
        .collect();
    group.generators() - rank_gf2(rows)
}

pub(crate) fn rank_gf2(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}
