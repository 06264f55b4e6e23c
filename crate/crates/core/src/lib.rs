//! Co-t-structures generated by compact objects, computed in the homotopy
//! category of bounded complexes of projectives over a path algebra.

pub mod algebra;
pub mod complexes;
pub mod cotstructure;
mod error;
pub mod exact_linear;
pub mod random;

pub use error::{Error, Result};

pub type F5 = exact_linear::Fp<5>;
pub type Q = exact_linear::BigRational;

pub type MatrixF5 = exact_linear::Matrix<F5>;
pub type MatrixQ = exact_linear::Matrix<Q>;
pub type ComplexF5 = complexes::Complex<F5>;
pub type ComplexQ = complexes::Complex<Q>;
pub type ChainMapF5 = complexes::ChainMap<F5>;
pub type ChainMapQ = complexes::ChainMap<Q>;
pub type GeneratorSetF5 = cotstructure::GeneratorSet<F5>;
pub type GeneratorSetQ = cotstructure::GeneratorSet<Q>;
