pub mod algebra;
pub mod catalog;
pub mod error;
pub mod hochschild;
pub mod invpoly;
pub mod json;
pub mod linalg;
pub mod milnor;
pub mod orbjac;
pub mod poly;
pub mod scalar;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
