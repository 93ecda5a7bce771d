//! Archimedean side: K-Bessel values, the Whittaker function at the identity,
//! the constant of the rank-2 archimedean integral, and identity checkers.

pub mod bessel;
pub mod identities;
pub mod quad;
pub mod whittaker;

pub use bessel::{bessel_k, bessel_k_all};
pub use identities::{
    bessel_sum_check, comb_identity_check, f0_closed, f0_double_sum, gamma_integral_check,
    hypergeometric_family_check, rank1_vanishing_check, CheckOutcome,
};
pub use whittaker::{arch_constant, whittaker_at, PiRational, WhittakerEval};
