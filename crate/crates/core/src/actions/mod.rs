//! Finite right M-sets and the constructions on them.

mod classifier;
mod congruence;
mod hom;
mod limits;
mod mset;
mod tensor;

pub use classifier::{
    exponential, omega, omega_into_power, power_complement, power_mset, DEFAULT_EXPONENTIAL_CAP, DEFAULT_POWER_SET_CAP,
};
pub use congruence::{
    congruence_category, joint_cover, pullback_congruence, right_congruences, CongFactorization, CongMorphism,
    CongruenceCategory, RightCongruence, DEFAULT_CONGRUENCE_CAP,
};
pub use hom::{for_each_hom, generating_set, hom_count, hom_set, hom_set_capped};
pub use limits::{coequalizer, cokernel, coproduct, equalizer, image, product, pushout};
pub use mset::{FiniteMSet, MSetMap};
pub use tensor::{is_flat_left, tensor, FlatnessFailure, Tensor};
