use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::blade::{blade_product, check_dim, Blade};
use super::scalar::QSqrt2;
use crate::error::{Error, Result};

/// Sparse element of the Clifford algebra `C_n` (`e_i² = −1`) over Q(√2).
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    dim: u8,
    terms: BTreeMap<Blade, QSqrt2>,
}

impl CliffordElement {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(CliffordElement {
            dim: dim as u8,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(dim: usize, c: QSqrt2) -> Result<Self> {
        Ok(CliffordElement::zero(dim)?.with_term(Blade::scalar(dim)?, c))
    }

    pub fn one(dim: usize) -> Result<Self> {
        CliffordElement::scalar(dim, QSqrt2::one())
    }

    pub fn blade(b: Blade, c: QSqrt2) -> Self {
        CliffordElement {
            dim: b.dim() as u8,
            terms: BTreeMap::new(),
        }
        .with_term(b, c)
    }

    /// `e_{i1}…e_{ik}` from 1-based indices, which must be distinct.
    pub fn monomial(dim: usize, indices: &[usize]) -> Result<Self> {
        Ok(CliffordElement::blade(
            Blade::from_indices(dim, indices)?,
            QSqrt2::one(),
        ))
    }

    pub fn basis_vector(dim: usize, i: usize) -> Result<Self> {
        CliffordElement::monomial(dim, &[i])
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Blade, QSqrt2)>,
    ) -> Result<Self> {
        let mut x = CliffordElement::zero(dim)?;
        for (b, c) in terms {
            if b.dim() != dim {
                return Err(Error::Dimension(dim, b.dim()));
            }
            x.add_term(b, &c);
        }
        Ok(x)
    }

    fn with_term(mut self, b: Blade, c: QSqrt2) -> Self {
        self.add_term(b, &c);
        self
    }

    fn add_term(&mut self, b: Blade, c: &QSqrt2) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b).or_insert_with(QSqrt2::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &QSqrt2)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &Blade) -> QSqrt2 {
        self.terms.get(b).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| b.is_scalar())
    }

    /// Coefficient of the scalar blade.
    pub fn scalar_part(&self) -> QSqrt2 {
        self.terms
            .iter()
            .find(|(b, _)| b.is_scalar())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(QSqrt2::zero)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.grade() % 2 == 0)
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension(self.dim(), other.dim()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = CliffordElement {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let (s, b) = blade_product(*x, *y)?;
                let c = cx * cy;
                out.add_term(b, &if s < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QSqrt2) -> Self {
        CliffordElement {
            dim: self.dim,
            terms: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(b, x)| (*b, x * c)).collect()
            },
        }
    }

    fn map_signs(&self, sign: impl Fn(Blade) -> i8) -> Self {
        CliffordElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if sign(*b) < 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Reversal `x*`.
    pub fn star(&self) -> Self {
        self.map_signs(Blade::reversal_sign)
    }

    /// Grade involution `x′`.
    pub fn grade_involution(&self) -> Self {
        self.map_signs(Blade::grade_sign)
    }

    /// `x̄ = (x′)*`.
    pub fn conjugate(&self) -> Self {
        self.map_signs(|b| b.reversal_sign() * b.grade_sign())
    }

    pub fn vector_embed(dim: usize, v: &[QSqrt2]) -> Result<Self> {
        check_dim(dim)?;
        if v.len() != dim {
            return Err(Error::Dimension(dim, v.len()));
        }
        let terms = v
            .iter()
            .enumerate()
            .map(|(i, c)| Ok((Blade::basis(dim, i + 1)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        CliffordElement::from_terms(dim, terms)
    }

    pub fn vector_extract(&self) -> Result<Vec<QSqrt2>> {
        let mut v = vec![QSqrt2::zero(); self.dim()];
        for (b, c) in &self.terms {
            if b.grade() != 1 {
                return Err(Error::NonVector);
            }
            v[b.indices().next().unwrap() - 1] = c.clone();
        }
        Ok(v)
    }

    /// `x^k` for `k ≥ 0`.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CliffordElement::one(self.dim()).expect("valid dimension");
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.map_signs(|_| -1)
    }
}

impl Neg for CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        -&self
    }
}

/// Operators panic on a dimension mismatch; use the `try_` methods to get an error.
macro_rules! checked_op {
    ($tr:ident $m:ident $try:ident) => {
        impl $tr<&CliffordElement> for &CliffordElement {
            type Output = CliffordElement;
            fn $m(self, o: &CliffordElement) -> CliffordElement {
                self.$try(o)
                    .expect("Clifford operands must share a dimension")
            }
        }
        impl $tr<CliffordElement> for CliffordElement {
            type Output = CliffordElement;
            fn $m(self, o: CliffordElement) -> CliffordElement {
                (&self).$m(&o)
            }
        }
    };
}
checked_op!(Add add try_add);
checked_op!(Sub sub try_sub);
checked_op!(Mul mul try_mul);

impl fmt::Display for CliffordElement {
    /// e.g. `1/2 + (-1/2)√2·e1e3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let one = QSqrt2::one();
            match (b.is_scalar(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, c) if *c == one => write!(f, "{b}")?,
                (false, c) if *c == -&one => write!(f, "-{b}")?,
                (false, c) if c.is_rational() || c.rational_part().is_zero() => {
                    write!(f, "{c}·{b}")?
                }
                (false, c) => write!(f, "({c})·{b}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::scalar::rat;

    fn e(idx: &[usize]) -> CliffordElement {
        CliffordElement::monomial(4, idx).unwrap()
    }

    fn one() -> CliffordElement {
        CliffordElement::one(4).unwrap()
    }

    fn r2() -> QSqrt2 {
        QSqrt2::inv_sqrt2()
    }

    #[test]
    fn frozen_products() {
        let c = (one() + e(&[1, 2])).scale(&r2());
        assert_eq!(&c * &c, e(&[1, 2]));
        assert_eq!(e(&[3, 4]) * e(&[3, 4]), -one());
        let x = e(&[1, 3]) + e(&[2]).scale(&QSqrt2::from_int(3));
        assert_eq!(&x * &one(), x);
    }

    #[test]
    fn addition_and_scaling() {
        let x = e(&[1]) + e(&[2, 3]);
        assert_eq!(x.try_add(&CliffordElement::zero(4).unwrap()).unwrap(), x);
        assert!(x.scale(&QSqrt2::zero()).is_zero());
        assert_eq!(e(&[1]) + e(&[1]), e(&[1]).scale(&QSqrt2::from_int(2)));
        assert!((e(&[1]) - e(&[1])).is_zero());
        assert!(x.try_add(&CliffordElement::one(3).unwrap()).is_err());
        assert!(x.try_mul(&CliffordElement::one(3).unwrap()).is_err());
    }

    #[test]
    fn involutions() {
        assert_eq!(e(&[1, 2]).star(), -e(&[1, 2]));
        assert_eq!(one().star(), one());
        assert_eq!(e(&[1, 2, 3]).star(), -e(&[1, 2, 3]));
        assert_eq!(e(&[1]).grade_involution(), -e(&[1]));
        assert_eq!(e(&[1, 2]).grade_involution(), e(&[1, 2]));
        assert_eq!(
            (one() + e(&[1, 2, 3])).grade_involution(),
            one() - e(&[1, 2, 3])
        );
        assert_eq!(e(&[1, 2]).conjugate(), -e(&[1, 2]));
        assert_eq!(one().conjugate(), one());
        let c = (one() + e(&[1, 2])).scale(&r2());
        assert_eq!(c.conjugate(), (one() - e(&[1, 2])).scale(&r2()));
    }

    #[test]
    fn vectors() {
        let q = |n| QSqrt2::from_int(n);
        assert_eq!(
            CliffordElement::vector_embed(4, &[q(1), q(0), q(0), q(0)]).unwrap(),
            e(&[1])
        );
        assert!(CliffordElement::vector_embed(4, &[q(0), q(0), q(0), q(0)])
            .unwrap()
            .is_zero());
        let v = CliffordElement::vector_embed(4, &[r2(), -r2(), q(0), q(0)]).unwrap();
        assert_eq!(v, (e(&[1]) - e(&[2])).scale(&r2()));
        assert!(CliffordElement::vector_embed(4, &[q(1)]).is_err());
        assert_eq!(
            e(&[3]).vector_extract().unwrap(),
            vec![q(0), q(0), q(1), q(0)]
        );
        assert_eq!(
            (e(&[1]) + e(&[4])).vector_extract().unwrap(),
            vec![q(1), q(0), q(0), q(1)]
        );
        assert_eq!((one() + e(&[1])).vector_extract(), Err(Error::NonVector));
    }

    #[test]
    fn display() {
        let x = one().scale(&QSqrt2::from_rational(rat(1, 2)))
            + e(&[1, 3]).scale(&QSqrt2::new(rat(0, 1), rat(-1, 2)));
        assert_eq!(x.to_string(), "1/2 + (-1/2)√2·e1e3");
        assert_eq!((-e(&[3, 4])).to_string(), "-e3e4");
        assert_eq!(CliffordElement::zero(2).unwrap().to_string(), "0");
    }

    #[test]
    fn pow() {
        let c = (one() + e(&[1, 2])).scale(&r2());
        assert_eq!(c.pow(8), one());
        assert_eq!(c.pow(4), -one());
        assert_eq!(c.pow(0), one());
    }
}
