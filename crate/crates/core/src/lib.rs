//! Arithmetic of the twist family C_d of y^2 = x^6 + 1: point counting, Euler factors,
//! conductors, counting lemmas and 1-level density sums.

pub mod arith;
pub mod cache;
pub mod conductor;
pub mod density;
pub mod error;
pub mod family;
pub mod ffcount;
pub mod frobdata;
pub mod poly;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
