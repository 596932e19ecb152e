//! The Riemann surface of the zeta function: Ω, branch points, monodromy,
//! genus and the checks built on them.

pub mod branch;
pub mod monodromy;
pub mod omega;
pub mod report;
pub mod symmetric;
