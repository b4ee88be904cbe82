//! Exact Clifford algebra `C_n` with `e_i² = −1` over Q(√2).

mod blade;
mod element;
mod scalar;

pub use blade::{blade_product, Blade, MAX_DIM};
pub use element::CliffordElement;
pub use scalar::{rat, rational_sqrt, QSqrt2, Rational};
