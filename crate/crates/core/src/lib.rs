//! Exact-arithmetic Hochschild and Lie–Rinehart cohomology for enveloping
//! algebras of differential operators on central line arrangements, and for
//! the Weyl subalgebras `A_h`.

pub mod ah;
pub mod classes;
pub mod error;
pub mod hochschild;
pub mod lifting;
pub mod lr_ce;
pub mod par;
pub mod pbw;
pub mod poly;
pub mod ratmat;
pub mod selftest;
pub mod slices;
pub mod spectral;
pub mod truncated;

pub use error::{Error, Result};
