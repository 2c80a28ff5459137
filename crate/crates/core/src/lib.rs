//! Expected coverage depth of linear codes over finite fields: how many
//! uniformly random generator columns must be drawn before they span the
//! whole message space.

pub mod codefile;
pub mod codes;
pub mod coverage;
pub mod enumeration;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod numeric;

pub use codes::LinearCode;
pub use error::{Error, Result};
pub use gf::FiniteField;
pub use linalg::MatrixGF;
pub use numeric::ExactRational;
