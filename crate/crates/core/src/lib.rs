pub mod acceptance;
pub mod butterfly;
pub mod derived;
pub mod error;
pub mod exactness;
pub mod fgab;
pub mod fixtures;
pub mod intlinalg;
pub mod json;
pub mod oracle;
pub mod twocomplex;

pub use error::{Axiom, Error, Result};
