pub mod acceptance;
pub mod cech;
pub mod combinatorics;
pub mod decomp;
pub mod error;
pub mod exactla;
pub mod ext;
pub mod hochschild;
pub mod poly;
pub mod random;

pub use error::{Error, Result};
