//! Cocycle data `rho`, the obstruction algebra `A_rho` and its
//! trivialisations.

mod csa;
mod gamma;
mod rho;
mod trivialisation;

pub use csa::{Certification, Csa};
pub use gamma::{solve_gamma, GammaWitness};
pub use rho::{partial, rho_from_point, validate_rho, RElement, RhoReport, RhoTable};
pub use trivialisation::{TrivMode, Trivialisation};
