//! Exact verification engine for Euler-factor identities, critical sets and
//! period exponents of Asai and Rankin-Selberg L-functions.

pub mod algebra;
pub mod gauss;
pub mod satake;
pub mod period;
pub mod weights;
