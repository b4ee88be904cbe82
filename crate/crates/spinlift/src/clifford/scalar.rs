use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational; `BigRational` keeps itself reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// `a + b·√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    a: Rational,
    b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn from_rational(a: Rational) -> Self {
        QSqrt2::new(a, Rational::zero())
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::one())
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), rat(1, 2))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        (self.b.is_zero() && self.a.is_integer())
            .then(|| self.a.to_integer().to_i64())
            .flatten()
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    /// Galois conjugate `a − b√2`.
    pub fn galois(&self) -> Self {
        QSqrt2::new(self.a.clone(), -&self.b)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let g = self.galois();
        Some(QSqrt2::new(g.a / &n, g.b / n))
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (x, _) => {
                let a2 = &self.a * &self.a;
                let b2 = Rational::from_integer(2.into()) * &self.b * &self.b;
                match a2.cmp(&b2) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Positive square root when it lies in Q(√2).
    pub fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            Ordering::Less => return None,
            Ordering::Equal => return Some(QSqrt2::zero()),
            Ordering::Greater => {}
        }
        let two = Rational::from_integer(2.into());
        let mut candidates = Vec::new();
        if self.b.is_zero() {
            if let Some(x) = rational_sqrt(&self.a) {
                candidates.push(QSqrt2::from_rational(x));
            }
            if let Some(y) = rational_sqrt(&(&self.a / &two)) {
                candidates.push(QSqrt2::new(Rational::zero(), y));
            }
        } else if let Some(r) = rational_sqrt(&self.norm()) {
            for x2 in [(&self.a + &r) / &two, (&self.a - &r) / &two] {
                if let Some(x) = rational_sqrt(&x2).filter(|x| !x.is_zero()) {
                    let y = &self.b / (&two * &x);
                    candidates.push(QSqrt2::new(x, y));
                }
            }
        }
        candidates
            .into_iter()
            .map(|c| if c.is_positive() { c } else { -c })
            .find(|c| &(c * c) == self)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from_int(1)
    }
}

impl From<i64> for QSqrt2 {
    fn from(n: i64) -> Self {
        QSqrt2::from_int(n)
    }
}

impl From<Rational> for QSqrt2 {
    fn from(a: Rational) -> Self {
        QSqrt2::from_rational(a)
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-&self.a, -&self.b)
    }
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, o: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, o: &QSqrt2) -> QSqrt2 {
        let two = Rational::from_integer(2.into());
        QSqrt2::new(
            &self.a * &o.a + two * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Div<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QSqrt2) -> QSqrt2 {
        self * &o.inverse().expect("division by zero in Q(sqrt 2)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: QSqrt2) -> QSqrt2 { (&self).$m(&o) }
        }
        impl $tr<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: &QSqrt2) -> QSqrt2 { (&self).$m(o) }
        }
        impl $tr<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, o: QSqrt2) -> QSqrt2 { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, o: &QSqrt2) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "√2"),
            (true, false) => write!(f, "({})√2", self.b),
            (false, false) => write!(f, "{} + ({})√2", self.a, self.b),
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(&QSqrt2::sqrt2() * &QSqrt2::sqrt2(), QSqrt2::from_int(2));
        assert_eq!(&QSqrt2::inv_sqrt2() * &QSqrt2::sqrt2(), QSqrt2::one());
    }

    #[test]
    fn inverse_and_norm() {
        let x = q((3, 1), (1, 2));
        assert_eq!(&x * &x.inverse().unwrap(), QSqrt2::one());
        assert!(QSqrt2::zero().inverse().is_none());
        assert_eq!(q((1, 1), (1, 1)).norm(), rat(-1, 1));
    }

    #[test]
    fn signum_of_mixed_signs() {
        assert_eq!(q((3, 2), (-1, 1)).signum(), Ordering::Greater);
        assert_eq!(q((1, 1), (-1, 1)).signum(), Ordering::Less);
        assert_eq!(q((-3, 2), (1, 1)).signum(), Ordering::Less);
        assert_eq!(q((0, 1), (-1, 3)).signum(), Ordering::Less);
        assert_eq!(QSqrt2::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn square_roots() {
        assert_eq!(QSqrt2::from_int(2).sqrt(), Some(QSqrt2::sqrt2()));
        assert_eq!(QSqrt2::from_int(9).sqrt(), Some(QSqrt2::from_int(3)));
        assert_eq!(
            QSqrt2::from_rational(rat(1, 2)).sqrt(),
            Some(QSqrt2::inv_sqrt2())
        );
        // (1 + √2)² = 3 + 2√2
        assert_eq!(q((3, 1), (2, 1)).sqrt(), Some(q((1, 1), (1, 1))));
        // 3 − 2√2 = (√2 − 1)²
        assert_eq!(q((3, 1), (-2, 1)).sqrt(), Some(q((-1, 1), (1, 1))));
        assert_eq!(QSqrt2::from_int(3).sqrt(), None);
        assert_eq!(QSqrt2::from_int(12).sqrt(), None);
        assert_eq!(QSqrt2::from_int(-4).sqrt(), None);
    }

    #[test]
    fn display() {
        assert_eq!(q((1, 2), (0, 1)).to_string(), "1/2");
        assert_eq!(q((0, 1), (-1, 2)).to_string(), "(-1/2)√2");
        assert_eq!(q((1, 1), (1, 1)).to_string(), "1 + (1)√2");
    }
}
