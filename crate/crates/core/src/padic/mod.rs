//! Exact p-adic linear algebra over Q.

pub mod decompose;
pub mod matrix;
pub mod measure;
pub mod scalar;

pub use decompose::{
    bruhat_cell, iwahori_bruhat_decompose, iwahori_factorize_unit, open_cell_character,
    open_cell_factorize, opposite_parahoric_cell, u_matrix, BruhatCell, BruhatDecomposition, OpenCell,
};
pub use matrix::PadicMatrix;
pub use scalar::{valuation, PadicScalar};
