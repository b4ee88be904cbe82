//! `Spin(n)` inside `C_n` and the covering map onto `SO(n)`.

mod cover;
mod element;
mod group;
mod linalg;
mod matrix;

pub use cover::{lambda, preimage, preimage_general, preimage_signed_perm, Preimage};
pub use element::{is_spin, SpinElement};
pub use group::{
    identify_group, subgroup_closure, subgroup_closure_bounded, FiniteSpinGroup,
    DEFAULT_CLOSURE_BOUND,
};
pub use matrix::{OrthMatrix, SignedPermMatrix};
