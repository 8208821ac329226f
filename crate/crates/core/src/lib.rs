//! Critical curves of the total CR twist functional on transversal curves
//! of the CR 3-sphere: moduli, twist profiles, closed-form reconstruction,
//! closing conditions and discrete invariants.

pub mod closure;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod moduli;
pub mod ode;
pub mod poly;
pub mod quadrature;
pub mod reconstruction;

pub use error::{Error, Result};
pub use moduli::Modulus;
