//! Computational toolkit for Suzuki groups `Sz(q)`, small Ree groups `R(q)`
//! and finite generalized quadrangles.
//!
//! The crate builds the groups as permutation groups, verifies their
//! structural properties exactly (orders, conjugacy classes, centralizers,
//! fixed-point counts on coset actions) and runs the arithmetic exclusion
//! of primitive actions of these groups on thick generalized quadrangles.

pub mod finitefield;
pub mod permgroup;
pub mod groupzoo;
pub mod suzuki;
pub mod verifier;
pub mod ree;
pub mod quadrangle;
