use std::fmt;

use num_traits::{One, Zero};

use super::linalg::{determinant, Rows};
use crate::clifford::{QSqrt2, MAX_DIM};
use crate::error::{Error, Result};

/// Exactly orthogonal `n×n` matrix over Q(√2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthMatrix {
    rows: Rows,
}

fn check_square(rows: &Rows) -> Result<usize> {
    let n = rows.len();
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange(n));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::Dimension(n, r.len()));
    }
    Ok(n)
}

fn product(a: &Rows, b: &Rows) -> Rows {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(QSqrt2::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &Rows) -> Rows {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| a[j][i].clone()).collect())
        .collect()
}

impl OrthMatrix {
    pub fn new(rows: Vec<Vec<QSqrt2>>) -> Result<Self> {
        let n = check_square(&rows)?;
        let p = product(&transpose(&rows), &rows);
        for (i, row) in p.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != QSqrt2::from_int((i == j) as i64) {
                    return Err(Error::NotOrthogonal);
                }
            }
        }
        debug_assert_eq!(rows.len(), n);
        Ok(OrthMatrix { rows })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        OrthMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| QSqrt2::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Result<Self> {
        OrthMatrix::diag(&vec![1; n])
    }

    pub fn diag(d: &[i64]) -> Result<Self> {
        let n = d.len();
        OrthMatrix::from_ints(
            &(0..n)
                .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<QSqrt2>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<QSqrt2> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Determinant, always `±1`.
    pub fn det(&self) -> i8 {
        let d = determinant(&self.rows);
        if d.is_one() {
            1
        } else {
            debug_assert_eq!(d, -QSqrt2::one());
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| {
            r.iter()
                .enumerate()
                .all(|(j, x)| *x == QSqrt2::from_int((i == j) as i64))
        })
    }

    pub fn transpose(&self) -> Self {
        OrthMatrix {
            rows: transpose(&self.rows),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(self.dim(), other.dim()));
        }
        Ok(OrthMatrix {
            rows: product(&self.rows, &other.rows),
        })
    }

    pub fn to_signed_perm(&self) -> Result<SignedPermMatrix> {
        let n = self.dim();
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![0i8; n];
        for j in 0..n {
            for i in 0..n {
                let x = &self.rows[i][j];
                if x.is_zero() {
                    continue;
                }
                let s = match x.to_integer() {
                    Some(1) => 1,
                    Some(-1) => -1,
                    _ => return Err(Error::NotSignedPerm),
                };
                if perm[j] != usize::MAX {
                    return Err(Error::NotSignedPerm);
                }
                perm[j] = i;
                signs[j] = s;
            }
        }
        SignedPermMatrix::new(perm, signs)
    }

    /// Integer entries, when every entry is an integer.
    pub fn to_ints(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(QSqrt2::to_integer).collect())
            .collect()
    }
}

impl fmt::Display for OrthMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for OrthMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Signed permutation matrix: column `j` is `signs[j] · e_{perm[j]}` (0-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermMatrix {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermMatrix {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionOutOfRange(n));
        }
        if signs.len() != n {
            return Err(Error::Dimension(n, signs.len()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotSignedPerm);
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::NotSignedPerm);
        }
        Ok(SignedPermMatrix { perm, signs })
    }

    pub fn identity(n: usize) -> Result<Self> {
        SignedPermMatrix::new((0..n).collect(), vec![1; n])
    }

    pub fn diag(signs: &[i8]) -> Result<Self> {
        SignedPermMatrix::new((0..signs.len()).collect(), signs.to_vec())
    }

    /// `P′_{(p q)} = diag(…,−1 at p,…)·P_{(p q)}` for 0-based `p < q`:
    /// sends `e_p ↦ e_q` and `e_q ↦ −e_p`.
    pub fn twisted_transposition(n: usize, p: usize, q: usize) -> Result<Self> {
        if p >= q || q >= n {
            return Err(Error::InvalidInput(format!(
                "bad transposition ({p} {q}) in dimension {n}"
            )));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(p, q);
        let mut signs = vec![1; n];
        signs[q] = -1;
        SignedPermMatrix::new(perm, signs)
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut perm = vec![usize::MAX; n];
        let mut signs = vec![0; n];
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(n, r.len()));
            }
            for (j, &x) in r.iter().enumerate() {
                match x {
                    0 => {}
                    1 | -1 if perm[j] == usize::MAX => {
                        perm[j] = i;
                        signs[j] = x as i8;
                    }
                    _ => return Err(Error::NotSignedPerm),
                }
            }
        }
        if perm.contains(&usize::MAX) {
            return Err(Error::NotSignedPerm);
        }
        SignedPermMatrix::new(perm, signs)
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn det(&self) -> i8 {
        let mut visited = vec![false; self.dim()];
        let mut parity = 0;
        for s in 0..self.dim() {
            let mut len = 0;
            let mut j = s;
            while !visited[j] {
                visited[j] = true;
                j = self.perm[j];
                len += 1;
            }
            if len > 0 {
                parity += len - 1;
            }
        }
        let sign: i8 = self.signs.iter().product();
        if parity % 2 == 0 {
            sign
        } else {
            -sign
        }
    }

    pub fn to_ints(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut rows = vec![vec![0; n]; n];
        for j in 0..n {
            rows[self.perm[j]][j] = self.signs[j] as i64;
        }
        rows
    }

    pub fn to_orth(&self) -> OrthMatrix {
        OrthMatrix::from_ints(&self.to_ints()).expect("signed permutations are orthogonal")
    }

    pub fn compose(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&k, &s)| s * self.signs[k])
            .collect();
        SignedPermMatrix { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPermMatrix { perm, signs }
    }

    /// Every signed permutation matrix of dimension `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<SignedPermMatrix> {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        let mut out = Vec::new();
        for p in perms {
            for bits in 0..1u32 << n {
                let signs = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermMatrix {
                    perm: p.clone(),
                    signs,
                });
            }
        }
        out
    }

    /// The determinant-one signed permutations, `SO(n, Z)`.
    pub fn all_special(n: usize) -> Vec<SignedPermMatrix> {
        SignedPermMatrix::all(n)
            .into_iter()
            .filter(|m| m.det() == 1)
            .collect()
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

impl fmt::Display for SignedPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_orth(), f)
    }
}
