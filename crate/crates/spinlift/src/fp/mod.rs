//! Finitely presented groups, coset enumeration, subgroup presentations
//! and the sign-lifting enumeration.

mod coset;
mod expr;
mod group;
mod presentation;
mod schreier;

pub use coset::{coset_enumerate, CosetTable, DEFAULT_COSET_BOUND};
pub use expr::{ExponentExpr, ParamValues};
pub use group::{invert_word, reduce_word, render_word, FpGroup, IntWord};
pub use presentation::{
    abelianization_mod2_rank, exponent_sums, GeneratorId, Presentation, Role, Word,
};
pub use schreier::{reidemeister_schreier, SubgroupPresentation};
