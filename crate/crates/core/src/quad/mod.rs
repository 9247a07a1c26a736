//! Imaginary quadratic orders through reduced binary quadratic forms.

pub mod class_group;
mod discriminant;
mod form;
pub mod norm;
pub mod orders;

use thiserror::Error;

pub use class_group::{
    class_number, class_order_of_prime, h_inverted, reduced_forms, FormClassGroup,
};
pub use discriminant::{discriminants_up_to, Discriminant};
pub use form::QuadForm;
pub use norm::{first_norm_witness, l_p_norm_length, NormLength, NormWitness};
pub use orders::{
    enumerate_l_s, in_family, inertia_degree, s_inertia_degree, splitting_symbol, OrderClassData,
    Splitting,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("{0} is not a negative discriminant (need D < 0, D = 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("forms have different discriminants {left} and {right}")]
    DiscriminantMismatch { left: i64, right: i64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} is inert in discriminant {d}; no prime class of norm {p}")]
    InertPrime { d: i64, p: u64 },
    #[error("{p} divides the conductor of discriminant {d}")]
    ConductorDivisible { d: i64, p: u64 },
    #[error("{l} splits in discriminant {d}")]
    SplitPrime { d: i64, l: u64 },
    #[error("p = {0} must not belong to S")]
    PrimeInS(u64),
    #[error("discriminant bound {0} is too large")]
    BoundTooLarge(u64),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}
