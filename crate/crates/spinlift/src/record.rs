//! One family of almost-Bieberbach groups: a parameterized presentation of Γ
//! together with its integral holonomy representation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fp::{reduce_word, FpGroup, IntWord, ParamValues, Presentation, Role};
use crate::holonomy::{
    character_table, decompose_representation, matrix_group_closure, orientability, Decomposition,
    FiniteMatrixGroup, IntMatrix,
};
use crate::named::{find_isomorphism, named, GroupName};

#[derive(Clone, Debug)]
pub struct AlmostBieberbachRecord {
    pub family: String,
    pub holonomy: GroupName,
    pub nilpotency_class: u8,
    pub source: String,
    pub orientable: bool,
    pub dimension: usize,
    pub presentation: Presentation,
    /// Images of the holonomy generators; lattice generators map to the identity.
    pub holonomy_matrices: BTreeMap<usize, IntMatrix>,
    /// Parameter vectors (mod 2) listed for this family.
    pub parameter_classes: Vec<Vec<i64>>,
    pub sylow_pullback: Option<Box<AlmostBieberbachRecord>>,
}

impl AlmostBieberbachRecord {
    fn inconsistent(&self, detail: impl Into<String>) -> Error {
        Error::inconsistent(&self.family, detail)
    }

    pub fn parameters(&self) -> &[String] {
        self.presentation.parameters()
    }

    pub fn params(&self, values: &[i64]) -> Result<ParamValues> {
        ParamValues::from_vector(self.parameters(), values)
    }

    pub fn holonomy_generators(&self) -> Vec<usize> {
        (0..self.presentation.generators().len())
            .filter(|&g| self.presentation.generators()[g].role == Role::Holonomy)
            .collect()
    }

    /// `θ` on the generator with index `g`.
    pub fn theta(&self, g: usize) -> IntMatrix {
        self.holonomy_matrices
            .get(&g)
            .cloned()
            .unwrap_or_else(|| IntMatrix::identity(self.dimension))
    }

    pub fn theta_word(&self, w: &IntWord) -> IntMatrix {
        w.iter()
            .fold(IntMatrix::identity(self.dimension), |acc, &(g, e)| {
                let m = self.theta(g);
                let m = if e < 0 {
                    m.inverse().expect("holonomy matrices are unimodular")
                } else {
                    m
                };
                acc.mul(&m.pow(e.unsigned_abs() as u32))
            })
    }

    /// The image of `θ`, generated by the holonomy generators in declaration order.
    pub fn matrix_group(&self) -> Result<FiniteMatrixGroup> {
        let gens: Vec<IntMatrix> = self
            .holonomy_generators()
            .iter()
            .map(|&g| self.theta(g))
            .collect();
        matrix_group_closure(&gens, self.dimension)
    }

    /// Presentation of `F = Γ/Λ` on the holonomy generators.
    pub fn holonomy_presentation(&self, params: &ParamValues) -> Result<FpGroup> {
        let hol = self.holonomy_generators();
        let gamma = self.presentation.eval(params)?;
        let relators = gamma
            .relators()
            .iter()
            .map(|r| {
                let w: IntWord = r
                    .iter()
                    .filter_map(|&(g, e)| hol.iter().position(|&h| h == g).map(|i| (i, e)))
                    .collect();
                reduce_word(&w)
            })
            .filter(|w| !w.is_empty())
            .collect();
        let names = hol
            .iter()
            .map(|&g| self.presentation.generators()[g].name.clone())
            .collect();
        Ok(FpGroup::with_names(names, relators))
    }

    /// The holonomy character in terms of the irreducibles of `F`.
    pub fn character(&self) -> Result<Decomposition> {
        let table = character_table(self.holonomy.as_str()).ok_or_else(|| {
            Error::InvalidInput(format!("no character table for {}", self.holonomy))
        })?;
        decompose_representation(&self.matrix_group()?, table)
    }

    pub fn is_orientable(&self) -> bool {
        orientability(&self.holonomy_matrices.values().cloned().collect::<Vec<_>>())
    }

    /// Load-time consistency: matrix shapes, relators mapping to the identity,
    /// faithfulness onto the named holonomy group and the orientability claim.
    pub fn validate(&self) -> Result<()> {
        for (&g, m) in &self.holonomy_matrices {
            let name = &self.presentation.generators()[g].name;
            if m.dim() != self.dimension {
                return Err(
                    self.inconsistent(format!("matrix of {name} is not {0}×{0}", self.dimension))
                );
            }
            if m.det().abs() != 1 {
                return Err(self.inconsistent(format!(
                    "matrix of {name} is not invertible over the integers"
                )));
            }
            if self.presentation.generators()[g].role == Role::Lattice && !m.is_identity() {
                return Err(self.inconsistent(format!(
                    "lattice generator {name} has a non-identity matrix"
                )));
            }
        }
        for g in self.holonomy_generators() {
            if !self.holonomy_matrices.contains_key(&g) {
                let name = &self.presentation.generators()[g].name;
                return Err(self.inconsistent(format!("holonomy generator {name} has no matrix")));
            }
        }
        if self.orientable != self.is_orientable() {
            return Err(self.inconsistent(format!(
                "declared orientable = {} but the holonomy matrices {} in SL(n,Z)",
                self.orientable,
                if self.is_orientable() {
                    "lie"
                } else {
                    "do not lie"
                }
            )));
        }
        let mut checks = self.parameter_classes.clone();
        checks.push(vec![0; self.parameters().len()]);
        for values in &checks {
            let params = self.params(values)?;
            for (i, r) in self.presentation.relators().iter().enumerate() {
                if !self.theta_word(&r.eval(&params)?).is_identity() {
                    return Err(self.inconsistent(format!(
                        "relator {} does not map to the identity matrix",
                        self.presentation.render_relator(i)
                    )));
                }
            }
        }
        let group = self.matrix_group()?;
        let f = named(self.holonomy.as_str()).ok_or_else(|| {
            self.inconsistent(format!("unknown holonomy group {}", self.holonomy))
        })?;
        if group.order() != f.group.order() {
            return Err(self.inconsistent(format!(
                "holonomy matrices generate a group of order {}, but {} has order {}",
                group.order(),
                self.holonomy,
                f.group.order()
            )));
        }
        if find_isomorphism(f, group.table()).is_none() {
            return Err(self.inconsistent(format!(
                "holonomy matrices do not generate {}",
                self.holonomy
            )));
        }
        if let Some(child) = &self.sylow_pullback {
            child.validate()?;
        }
        Ok(())
    }
}
