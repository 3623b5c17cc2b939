//! Shalika-model values, local zeta integrals at p and the interpolation
//! factors built from them.

pub mod character;
pub mod euler;
pub mod support;
pub mod zeta;

pub use euler::{comparison_constant, ep_factor, qprime_factor, unramified_ratio};
pub use character::{psi_orthogonality, RootSum, TwistCharacter};
pub use zeta::{
    ag_intertwine_value, shalika_test_vector, w_value_closed, zeta_iwahori_closed, zeta_iwahori_oracle,
    q_factor, zeta_parahoric_closed, zeta_parahoric_oracle, Provenance, ZetaResult,
};
