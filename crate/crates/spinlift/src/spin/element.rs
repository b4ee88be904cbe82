use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Zero};

use crate::clifford::{CliffordElement, QSqrt2};
use crate::error::{Error, Result};

pub fn is_spin(x: &CliffordElement) -> bool {
    x.grade_involution() == *x
        && x.try_mul(&x.conjugate())
            .map(|p| p.is_scalar() && p.scalar_part().is_one())
            .unwrap_or(false)
}

/// Element of `Spin(n) = { x : x′ = x, x·x̄ = 1 }`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpinElement(CliffordElement);

impl SpinElement {
    pub fn new(x: CliffordElement) -> Result<Self> {
        if is_spin(&x) {
            Ok(SpinElement(x))
        } else {
            Err(Error::NotSpin)
        }
    }

    pub fn one(dim: usize) -> Result<Self> {
        Ok(SpinElement(CliffordElement::one(dim)?))
    }

    pub fn minus_one(dim: usize) -> Result<Self> {
        Ok(SpinElement(-CliffordElement::one(dim)?))
    }

    pub fn value(&self) -> &CliffordElement {
        &self.0
    }

    pub fn into_value(self) -> CliffordElement {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn inverse(&self) -> Self {
        SpinElement(self.0.conjugate())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_scalar() && self.0.scalar_part().is_one()
    }

    pub fn is_minus_one(&self) -> bool {
        self.0.is_scalar() && self.0.scalar_part() == -QSqrt2::one()
    }

    /// `Some(±1)` when the element is central `±1`.
    pub fn as_sign(&self) -> Option<i8> {
        if self.is_one() {
            Some(1)
        } else if self.is_minus_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(SpinElement(self.0.try_mul(&other.0)?))
    }

    /// `x^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        SpinElement(base.0.pow(k.unsigned_abs()))
    }

    /// The representative of `{x, −x}` whose first nonzero coefficient, in
    /// canonical blade order, is positive.
    pub fn canonical(&self) -> Self {
        match self.0.terms().next() {
            Some((_, c)) if !c.is_positive() && !c.is_zero() => -self,
            _ => self.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

impl Mul<&SpinElement> for &SpinElement {
    type Output = SpinElement;
    fn mul(self, o: &SpinElement) -> SpinElement {
        SpinElement(&self.0 * &o.0)
    }
}

impl Mul for SpinElement {
    type Output = SpinElement;
    fn mul(self, o: SpinElement) -> SpinElement {
        &self * &o
    }
}

impl Neg for &SpinElement {
    type Output = SpinElement;
    fn neg(self) -> SpinElement {
        SpinElement(-&self.0)
    }
}

impl Neg for SpinElement {
    type Output = SpinElement;
    fn neg(self) -> SpinElement {
        -&self
    }
}

impl TryFrom<CliffordElement> for SpinElement {
    type Error = Error;
    fn try_from(x: CliffordElement) -> Result<Self> {
        SpinElement::new(x)
    }
}

impl fmt::Display for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
