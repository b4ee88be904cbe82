//! Dense linear algebra over Q(√2).

use num_traits::{One, Zero};

use crate::clifford::QSqrt2;

/// Row-major square or rectangular matrix.
pub(crate) type Rows = Vec<Vec<QSqrt2>>;

pub(crate) fn determinant(m: &Rows) -> QSqrt2 {
    let n = m.len();
    let mut a = m.clone();
    let mut det = QSqrt2::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return QSqrt2::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inverse().expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            let pivot_row = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &(&f * y);
            }
        }
    }
    det
}

/// Basis of `{ y : A y = 0 }`.
pub(crate) fn nullspace(a: &Rows, unknowns: usize) -> Vec<Vec<QSqrt2>> {
    let mut m: Rows = a
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inverse().expect("nonzero pivot");
        for x in m[row].iter_mut().take(unknowns) {
            *x = &*x * &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row).take(unknowns) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    (0..unknowns)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![QSqrt2::zero(); unknowns];
            v[free] = QSqrt2::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][free];
            }
            v
        })
        .collect()
}
