//! Exact coefficient arithmetic.

pub mod cyc;
pub mod elem;
pub mod poly;

pub use cyc::{q_frac, q_int, q_pow, CycNum, Q};
pub use elem::{geometric_tail, sym_eval, SymElem};
pub use poly::{Gen, Mono, Poly};
