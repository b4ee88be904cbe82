use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::element::SpinElement;
use super::linalg::nullspace;
use super::matrix::{OrthMatrix, SignedPermMatrix};
use crate::clifford::{Blade, CliffordElement, QSqrt2};
use crate::error::{Error, Result};

/// `λ(x)v = x v x̄`.
pub fn lambda(x: &SpinElement) -> Result<OrthMatrix> {
    let n = x.dim();
    let xv = x.value();
    let xc = xv.conjugate();
    let mut cols = Vec::with_capacity(n);
    for j in 1..=n {
        let ej = CliffordElement::basis_vector(n, j)?;
        let img = xv.try_mul(&ej)?.try_mul(&xc)?;
        cols.push(
            img.vector_extract()
                .map_err(|_| Error::Invariant(format!("λ({x}) e{j} is not a vector")))?,
        );
    }
    let rows = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    OrthMatrix::new(rows).map_err(|e| Error::Invariant(format!("λ({x}) not orthogonal: {e}")))
}

/// The two preimages `{x, −x}` of a rotation; `canonical()` has a positive
/// leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Preimage(SpinElement);

impl Preimage {
    fn new(x: SpinElement) -> Self {
        Preimage(x.canonical())
    }

    pub fn canonical(&self) -> &SpinElement {
        &self.0
    }

    pub fn negated(&self) -> SpinElement {
        -&self.0
    }

    pub fn pair(&self) -> [SpinElement; 2] {
        [self.0.clone(), self.negated()]
    }

    pub fn contains(&self, x: &SpinElement) -> bool {
        x.canonical() == self.0
    }

    pub fn into_canonical(self) -> SpinElement {
        self.0
    }
}

fn verify(x: SpinElement, m: &OrthMatrix) -> Result<Preimage> {
    let l = lambda(&x)?;
    if &l != m {
        return Err(Error::Invariant(format!("λ({x}) = {l}, expected {m}")));
    }
    Ok(Preimage::new(x))
}

/// `(1 + e_p e_q)/√2` for 0-based `p < q`, the preimage of `P′_{(p q)}`.
fn twisted_transposition_preimage(n: usize, p: usize, q: usize) -> Result<SpinElement> {
    let x = CliffordElement::one(n)?
        .try_add(&CliffordElement::monomial(n, &[p + 1, q + 1])?)?
        .scale(&QSqrt2::inv_sqrt2());
    SpinElement::new(x)
}

pub fn preimage_signed_perm(m: &SignedPermMatrix) -> Result<Preimage> {
    let n = m.dim();
    if m.det() != 1 {
        return Err(Error::NotInSO);
    }
    // π = τ1 ∘ … ∘ τk, peeling one transposition off the left at a time.
    let mut sigma = m.perm().to_vec();
    let mut taus = Vec::new();
    while let Some(j) = (0..n).find(|&j| sigma[j] != j) {
        let k = sigma[j];
        taus.push((j.min(k), j.max(k)));
        for s in sigma.iter_mut() {
            if *s == j {
                *s = k;
            } else if *s == k {
                *s = j;
            }
        }
    }
    let mut q = SignedPermMatrix::identity(n)?;
    let mut x = SpinElement::one(n)?;
    for &(p, r) in &taus {
        q = q.compose(&SignedPermMatrix::twisted_transposition(n, p, r)?);
        x = &x * &twisted_transposition_preimage(n, p, r)?;
    }
    let d = m.compose(&q.inverse());
    if !d.is_diagonal() {
        return Err(Error::Invariant(format!("residual of {m} is not diagonal")));
    }
    let flipped: Vec<usize> = (0..n)
        .filter(|&i| d.signs()[i] < 0)
        .map(|i| i + 1)
        .collect();
    let xd = SpinElement::new(CliffordElement::monomial(n, &flipped)?)?;
    verify(&xd * &x, &m.to_orth())
}

/// Solves `y e_j = (M e_j) y` over the even subalgebra and normalizes.
pub fn preimage_general(m: &OrthMatrix) -> Result<Preimage> {
    let n = m.dim();
    if m.det() != 1 {
        return Err(Error::NotInSO);
    }
    let unknowns: Vec<Blade> = Blade::all(n)?
        .into_iter()
        .filter(|b| b.grade() % 2 == 0)
        .collect();
    let mut equations: BTreeMap<(usize, Blade), Vec<QSqrt2>> = BTreeMap::new();
    for j in 0..n {
        let ej = CliffordElement::basis_vector(n, j + 1)?;
        let mej = CliffordElement::vector_embed(n, &m.column(j))?;
        for (u, &b) in unknowns.iter().enumerate() {
            let yb = CliffordElement::blade(b, QSqrt2::one());
            let term = yb.try_mul(&ej)?.try_sub(&mej.try_mul(&yb)?)?;
            for (blade, c) in term.terms() {
                let row = equations
                    .entry((j, *blade))
                    .or_insert_with(|| vec![QSqrt2::zero(); unknowns.len()]);
                row[u] = &row[u] + c;
            }
        }
    }
    let rows: Vec<Vec<QSqrt2>> = equations.into_values().collect();
    let basis = nullspace(&rows, unknowns.len());
    let sol = basis.first().ok_or(Error::NotInImage)?;
    let y = CliffordElement::from_terms(n, unknowns.iter().copied().zip(sol.iter().cloned()))?;
    let s = y.try_mul(&y.conjugate())?;
    if !s.is_scalar() || !s.scalar_part().is_positive() {
        return Err(Error::Invariant(format!(
            "y·ȳ = {s} is not a positive scalar"
        )));
    }
    let root = s.scalar_part().sqrt().ok_or(Error::UnsupportedScalar)?;
    let x = y.scale(&root.inverse().expect("positive root"));
    verify(SpinElement::new(x)?, m)
}

/// Dispatches to the signed-permutation formula when it applies.
pub fn preimage(m: &OrthMatrix) -> Result<Preimage> {
    match m.to_signed_perm() {
        Ok(p) => preimage_signed_perm(&p),
        Err(_) => preimage_general(m),
    }
}
