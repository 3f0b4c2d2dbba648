//! Elliptic gamma functions, gamma functions of wedges and the gamma gerbe
//! cocycle, with a seeded harness that checks the functional identities.

pub mod bernoulli;
pub mod checker;
pub mod hermitian;
pub mod lattice;
pub mod poly;
pub mod sampling;
pub mod special;
pub mod wedge;

pub use num_complex::Complex64;
