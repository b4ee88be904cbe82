//! Integral holonomy representations, orientability and characters.

mod cyclotomic;
mod matrix;
mod tables;

pub use cyclotomic::CycValue;
pub use matrix::{
    characters_equal, matrix_group_closure, matrix_group_closure_bounded, orientability,
    orthogonal_realization, realization_map, FiniteMatrixGroup, IntMatrix, DEFAULT_MATRIX_BOUND,
};
pub use tables::{
    character_on_table, character_table, character_tables, character_tables_markdown,
    decompose_character, decompose_representation, table_matchings, CharacterTable, ConjugacyClass,
    Decomposition, Xi,
};
