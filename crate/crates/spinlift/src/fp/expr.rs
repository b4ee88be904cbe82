//! Integer polynomial exponents in the family parameters, e.g. `-k2 - k3` or `2*k1*l`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Parameter name ↦ value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamValues(BTreeMap<String, i64>);

impl ParamValues {
    pub fn new() -> Self {
        ParamValues::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Self {
        ParamValues(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// Values for `names`, in order.
    pub fn from_vector(names: &[String], values: &[i64]) -> Result<Self> {
        if names.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} parameters, got {}",
                names.len(),
                values.len()
            )));
        }
        Ok(ParamValues::from_pairs(
            names.iter().cloned().zip(values.iter().copied()),
        ))
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, value: i64) {
        self.0.insert(name.into(), value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn vector(&self, names: &[String]) -> Result<Vec<i64>> {
        names
            .iter()
            .map(|n| {
                self.get(n)
                    .ok_or_else(|| Error::InvalidInput(format!("missing parameter {n}")))
            })
            .collect()
    }

    pub fn mod2(&self) -> Self {
        ParamValues(
            self.0
                .iter()
                .map(|(k, &v)| (k.clone(), v.rem_euclid(2)))
                .collect(),
        )
    }
}

/// Sum of integer multiples of monomials; a monomial is a sorted list of parameter names.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentExpr {
    terms: BTreeMap<Vec<String>, i64>,
}

impl ExponentExpr {
    pub fn constant(c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Vec::new(), c);
        }
        ExponentExpr { terms }
    }

    pub fn param(name: &str) -> Self {
        ExponentExpr {
            terms: BTreeMap::from([(vec![name.to_string()], 1)]),
        }
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn is_affine(&self) -> bool {
        self.terms.keys().all(|m| m.len() <= 1)
    }

    /// Parameter names that occur.
    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        let mut v: Vec<&str> = self.terms.keys().flatten().map(String::as_str).collect();
        v.sort_unstable();
        v.dedup();
        v.into_iter()
    }

    pub fn eval(&self, params: &ParamValues) -> Result<i64> {
        let overflow = || Error::InvalidInput(format!("exponent {self} overflows"));
        let mut total: i128 = 0;
        for (mono, &c) in &self.terms {
            let mut t = c as i128;
            for name in mono {
                let v = params
                    .get(name)
                    .ok_or_else(|| Error::InvalidInput(format!("missing parameter {name}")))?;
                t = t.checked_mul(v as i128).ok_or_else(overflow)?;
            }
            total = total.checked_add(t).ok_or_else(overflow)?;
        }
        i64::try_from(total).map_err(|_| overflow())
    }

    pub fn negated(&self) -> Self {
        ExponentExpr::default().add(self, -1)
    }

    fn add(mut self, other: &ExponentExpr, sign: i64) -> Self {
        for (m, &c) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert(0);
            *e += sign * c;
            if *e == 0 {
                self.terms.remove(m);
            }
        }
        self
    }

    fn mul(&self, other: &ExponentExpr) -> Self {
        let mut out = ExponentExpr::default();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let mut m: Vec<String> = m1.iter().chain(m2).cloned().collect();
                m.sort();
                out = out.add(
                    &ExponentExpr {
                        terms: BTreeMap::from([(m, c1 * c2)]),
                    },
                    1,
                );
            }
        }
        out
    }
}

impl From<i64> for ExponentExpr {
    fn from(c: i64) -> Self {
        ExponentExpr::constant(c)
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else {
                if a != 1 {
                    write!(f, "{a}*")?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExponentExpr({self})")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::InvalidInput(format!(
            "exponent {:?}: {msg} at offset {}",
            self.src, self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExponentExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?, 1);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExponentExpr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExponentExpr> {
        if self.eat('-') {
            return Ok(ExponentExpr::default().add(&self.factor()?, -1));
        }
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: i64 = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("integer too large"))?;
                Ok(ExponentExpr::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                Ok(ExponentExpr::param(&self.src[start..self.pos]))
            }
            _ => Err(self.error("expected integer, parameter or '('")),
        }
    }
}
