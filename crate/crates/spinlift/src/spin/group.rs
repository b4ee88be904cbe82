use super::cover::lambda;
use super::element::SpinElement;
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::named::{identify, GroupName};

pub const DEFAULT_CLOSURE_BOUND: usize = 4096;

/// Finite subgroup of `Spin(n)` with its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteSpinGroup {
    elements: Vec<SpinElement>,
    generators: Vec<SpinElement>,
    table: FiniteGroup,
}

impl FiniteSpinGroup {
    pub fn elements(&self) -> &[SpinElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[SpinElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn table(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn contains(&self, x: &SpinElement) -> bool {
        self.elements.contains(x)
    }

    /// `{ x : λ(x) = I }`.
    pub fn kernel(&self) -> Result<Vec<SpinElement>> {
        let mut out = Vec::new();
        for x in &self.elements {
            if lambda(x)?.is_identity() {
                out.push(x.clone());
            }
        }
        Ok(out)
    }
}

pub fn subgroup_closure(gens: &[SpinElement]) -> Result<FiniteSpinGroup> {
    subgroup_closure_bounded(gens, DEFAULT_CLOSURE_BOUND)
}

pub fn subgroup_closure_bounded(gens: &[SpinElement], bound: usize) -> Result<FiniteSpinGroup> {
    let dim = match gens.first() {
        Some(g) => g.dim(),
        None => 1,
    };
    if let Some(g) = gens.iter().find(|g| g.dim() != dim) {
        return Err(Error::Dimension(dim, g.dim()));
    }
    let (elements, table) =
        FiniteGroup::closure(SpinElement::one(dim)?, gens, |a, b| a * b, bound)?;
    Ok(FiniteSpinGroup {
        elements,
        generators: gens.to_vec(),
        table,
    })
}

pub fn identify_group(g: &FiniteSpinGroup) -> Result<GroupName> {
    identify(&g.table)
}
