use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Basis monomial `e_{i1}…e_{ik}` with `i1 < … < ik`, stored as a bitmask
/// (bit `i − 1` for `e_i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    dim: u8,
    mask: u8,
}

pub fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

impl Blade {
    pub fn new(dim: usize, mask: u8) -> Result<Self> {
        check_dim(dim)?;
        if dim < 8 && mask >> dim != 0 {
            return Err(Error::InvalidInput(format!(
                "blade mask {mask:#b} exceeds dimension {dim}"
            )));
        }
        Ok(Blade {
            dim: dim as u8,
            mask,
        })
    }

    pub fn scalar(dim: usize) -> Result<Self> {
        Blade::new(dim, 0)
    }

    /// `e_i`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::InvalidInput(format!("e{i} outside dimension {dim}")));
        }
        Blade::new(dim, 1 << (i - 1))
    }

    /// From 1-based indices in any order; repeated indices are rejected.
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0u8;
        for &i in indices {
            let b = Blade::basis(dim, i)?.mask;
            if mask & b != 0 {
                return Err(Error::InvalidInput(format!("repeated index e{i}")));
            }
            mask |= b;
        }
        Blade::new(dim, mask)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn grade(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_scalar(self) -> bool {
        self.mask == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..8)
            .filter(move |i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
    }

    /// All blades of the given dimension in canonical order.
    pub fn all(dim: usize) -> Result<Vec<Blade>> {
        check_dim(dim)?;
        let mut v: Vec<Blade> = (0..1u16 << dim)
            .map(|m| Blade {
                dim: dim as u8,
                mask: m as u8,
            })
            .collect();
        v.sort();
        Ok(v)
    }

    /// Sign of `(−1)^{k(k−1)/2}` picked up by reversal.
    pub fn reversal_sign(self) -> i8 {
        let k = self.grade();
        if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn grade_sign(self) -> i8 {
        if self.grade().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `e_x · e_y = sign · e_{x △ y}` under `e_i² = −1`.
pub fn blade_product(x: Blade, y: Blade) -> Result<(i8, Blade)> {
    if x.dim != y.dim {
        return Err(Error::Dimension(x.dim(), y.dim()));
    }
    let mut swaps = 0u32;
    for i in 0..8 {
        if y.mask >> i & 1 == 1 {
            swaps += (x.mask >> i >> 1).count_ones();
        }
    }
    let repeats = (x.mask & y.mask).count_ones();
    let sign = if (swaps + repeats).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok((
        sign,
        Blade {
            dim: x.dim,
            mask: x.mask ^ y.mask,
        },
    ))
}

impl Ord for Blade {
    /// Dimension, then grade, then lexicographic on the index sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.grade().cmp(&other.grade()))
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_scalar() {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
