//! Exact dense linear algebra over `F_p` and `Q`.

mod field;
mod matrix;

pub(crate) use field::prints_negative;
pub use field::{Field, Fp};
pub use matrix::{quotient_dimension, LinearError, Matrix, Rref};

pub use num_rational::BigRational;
