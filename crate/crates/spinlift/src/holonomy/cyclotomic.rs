//! Exact arithmetic in ℚ(ζ₁₂), with ζ = e^{2πi/12} and ζ⁴ = ζ² − 1.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::clifford::{rat, Rational};

/// `c₀ + c₁ζ + c₂ζ² + c₃ζ³`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycValue([Rational; 4]);

impl CycValue {
    pub fn from_int(n: i64) -> Self {
        CycValue::from_rational(rat(n, 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        CycValue([q, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.0
    }

    /// `ζᵏ`.
    pub fn zeta(k: i64) -> Self {
        let z = CycValue([
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
        ]);
        (0..k.rem_euclid(12)).fold(CycValue::from_int(1), |acc, _| &acc * &z)
    }

    pub fn i() -> Self {
        CycValue::zeta(3)
    }

    /// `e^{2πi/3}`.
    pub fn omega() -> Self {
        CycValue::zeta(4)
    }

    /// Complex conjugation, `ζ ↦ ζ⁻¹ = ζ − ζ³`.
    pub fn conj(&self) -> Self {
        let inv = CycValue([
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            -Rational::one(),
        ]);
        let mut acc = CycValue::default();
        let mut p = CycValue::from_int(1);
        for c in &self.0 {
            acc = &acc + &p.scale(c);
            p = &p * &inv;
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycValue(self.0.clone().map(|c| c * q))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.0[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.0[0].clone())
    }

    pub fn to_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.to_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
    }
}

impl From<i64> for CycValue {
    fn from(n: i64) -> Self {
        CycValue::from_int(n)
    }
}

impl Add<&CycValue> for &CycValue {
    type Output = CycValue;
    fn add(self, o: &CycValue) -> CycValue {
        CycValue(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub<&CycValue> for &CycValue {
    type Output = CycValue;
    fn sub(self, o: &CycValue) -> CycValue {
        CycValue(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        CycValue(self.0.clone().map(|c| -c))
    }
}

impl Mul<&CycValue> for &CycValue {
    type Output = CycValue;
    fn mul(self, o: &CycValue) -> CycValue {
        let mut p: [Rational; 7] = std::array::from_fn(|_| Rational::zero());
        for i in 0..4 {
            for j in 0..4 {
                p[i + j] += &self.0[i] * &o.0[j];
            }
        }
        // ζ⁶ = −1, ζ⁵ = ζ³ − ζ, ζ⁴ = ζ² − 1
        for k in (4..7).rev() {
            let c = std::mem::take(&mut p[k]);
            p[k - 2] += &c;
            p[k - 4] -= c;
        }
        CycValue([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("({c})ζ"),
                _ => format!("({c})ζ^{k}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
