use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::fp::IntWord;
use crate::spin::SignedPermMatrix;

/// Square integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "matrix is not square ({n} rows)"
            )));
        }
        Ok(IntMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn diag(d: &[i64]) -> Self {
        let mut m = IntMatrix::identity(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.rows[i][i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim()).map(|i| self.rows[i][i]).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.dim())
    }

    /// Panics on dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim(), other.dim(), "matrix dimension mismatch");
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix { rows }
    }

    /// Fraction-free Gaussian elimination.
    pub fn det(&self) -> i64 {
        let n = self.dim();
        let mut a: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    /// Inverse of a unimodular matrix by adjugate.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let d = self.det();
        if d.abs() != 1 {
            return None;
        }
        let n = self.dim();
        if n == 1 {
            return Some(IntMatrix {
                rows: vec![vec![d]],
            });
        }
        let minor = |r: usize, c: usize| IntMatrix {
            rows: (0..n)
                .filter(|&i| i != r)
                .map(|i| {
                    (0..n)
                        .filter(|&j| j != c)
                        .map(|j| self.rows[i][j])
                        .collect()
                })
                .collect(),
        };
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                        s * minor(j, i).det() * d
                    })
                    .collect()
            })
            .collect();
        Some(IntMatrix { rows })
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        (0..k).fold(IntMatrix::identity(self.dim()), |acc, _| acc.mul(self))
    }
}

impl From<&SignedPermMatrix> for IntMatrix {
    fn from(m: &SignedPermMatrix) -> Self {
        IntMatrix { rows: m.to_ints() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

pub const DEFAULT_MATRIX_BOUND: usize = 1024;

/// The finite group generated by the images of the abstract generators.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    elements: Vec<IntMatrix>,
    generators: Vec<IntMatrix>,
    table: FiniteGroup,
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn table(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.elements.iter().position(|x| x == m)
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index_of(g).expect("generators lie in the closure"))
            .collect()
    }

    pub fn evaluate(&self, word: &IntWord) -> usize {
        self.table.evaluate(word, &self.generator_indices())
    }

    /// `(class representative, trace)` for each conjugacy class; errors if a
    /// class carries two traces.
    pub fn trace_character(&self) -> Result<Vec<(usize, i64)>> {
        self.table
            .conjugacy_classes()
            .into_iter()
            .map(|cls| {
                let t = self.elements[cls[0]].trace();
                if cls.iter().any(|&x| self.elements[x].trace() != t) {
                    return Err(Error::Invariant("trace is not a class function".into()));
                }
                Ok((cls[0], t))
            })
            .collect()
    }
}

pub fn matrix_group_closure(generators: &[IntMatrix], dim: usize) -> Result<FiniteMatrixGroup> {
    matrix_group_closure_bounded(generators, dim, DEFAULT_MATRIX_BOUND)
}

pub fn matrix_group_closure_bounded(
    generators: &[IntMatrix],
    dim: usize,
    bound: usize,
) -> Result<FiniteMatrixGroup> {
    if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
        return Err(Error::Dimension(dim, g.dim()));
    }
    let (elements, table) =
        FiniteGroup::closure(IntMatrix::identity(dim), generators, |a, b| a.mul(b), bound)?;
    Ok(FiniteMatrixGroup {
        elements,
        generators: generators.to_vec(),
        table,
    })
}

/// Orientable iff every generator lies in `SL(n, ℤ)`.
pub fn orientability(generators: &[IntMatrix]) -> bool {
    generators.iter().all(|g| g.det() == 1)
}

/// Images in `SO(n, ℤ)` of the generators, as signed permutations, defining a
/// representation with the same character, if one exists.
pub fn orthogonal_realization(group: &FiniteMatrixGroup) -> Option<Vec<SignedPermMatrix>> {
    let gens = group.generators();
    let dim = gens.first().map_or(1, IntMatrix::dim);
    if gens
        .iter()
        .all(|g| SignedPermMatrix::from_ints(g.rows()).is_ok_and(|s| s.det() == 1))
    {
        return gens
            .iter()
            .map(|g| SignedPermMatrix::from_ints(g.rows()).ok())
            .collect();
    }
    let special = SignedPermMatrix::all_special(dim);
    let profile = |m: &IntMatrix| -> Vec<i64> {
        let mut out = Vec::new();
        let mut x = m.clone();
        loop {
            out.push(x.trace());
            if x.is_identity() {
                return out;
            }
            x = x.mul(m);
        }
    };
    let candidates: Vec<Vec<IntMatrix>> = gens
        .iter()
        .map(|g| {
            let p = profile(g);
            special
                .iter()
                .map(IntMatrix::from)
                .filter(|c| profile(c) == p)
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    if search(group, &candidates, &mut chosen) {
        Some(
            chosen
                .iter()
                .map(|m| SignedPermMatrix::from_ints(m.rows()).expect("candidate"))
                .collect(),
        )
    } else {
        None
    }
}

/// The realization of [`orthogonal_realization`] on every element of the group.
pub fn realization_map(group: &FiniteMatrixGroup) -> Option<HashMap<IntMatrix, SignedPermMatrix>> {
    if group.generators().is_empty() {
        let id = group.elements()[0].clone();
        let one = SignedPermMatrix::identity(id.dim()).ok()?;
        return Some(HashMap::from([(id, one)]));
    }
    let nu: Vec<IntMatrix> = orthogonal_realization(group)?
        .iter()
        .map(IntMatrix::from)
        .collect();
    let pairs = joint_closure(group.generators(), &nu).ok()?;
    pairs
        .into_iter()
        .map(|(x, y)| SignedPermMatrix::from_ints(y.rows()).ok().map(|s| (x, s)))
        .collect()
}

fn search(
    group: &FiniteMatrixGroup,
    candidates: &[Vec<IntMatrix>],
    chosen: &mut Vec<IntMatrix>,
) -> bool {
    if chosen.len() == candidates.len() {
        return joint_closure(group.generators(), chosen).is_ok_and(|j| {
            j.len() == group.order() && j.iter().all(|(x, y)| x.trace() == y.trace())
        });
    }
    for c in &candidates[chosen.len()] {
        chosen.push(c.clone());
        if search(group, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Trace equality on every pair `(A(w), B(w))` reachable by words `w` in the
/// matched generators.
pub fn characters_equal(a: &[IntMatrix], b: &[IntMatrix]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "{} generators matched against {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Ok(true);
    }
    if a[0].dim() != b[0].dim() {
        return Ok(false);
    }
    Ok(joint_closure(a, b)?
        .iter()
        .all(|(x, y)| x.trace() == y.trace()))
}

/// The subgroup of `GL × GL` generated by the pairs `(a[i], b[i])`.
fn joint_closure(a: &[IntMatrix], b: &[IntMatrix]) -> Result<Vec<(IntMatrix, IntMatrix)>> {
    let pairs: Vec<(IntMatrix, IntMatrix)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    let identity = (
        IntMatrix::identity(a[0].dim()),
        IntMatrix::identity(b[0].dim()),
    );
    let mut elements = vec![identity.clone()];
    let mut seen = std::collections::HashSet::from([identity]);
    let mut i = 0;
    while i < elements.len() {
        for p in &pairs {
            let y = (elements[i].0.mul(&p.0), elements[i].1.mul(&p.1));
            if seen.insert(y.clone()) {
                if elements.len() >= DEFAULT_MATRIX_BOUND {
                    return Err(Error::ClosureBoundExceeded(DEFAULT_MATRIX_BOUND));
                }
                elements.push(y);
            }
        }
        i += 1;
    }
    Ok(elements)
}
