//! Exact matrices over the Gaussian rationals.

mod matrix;
mod pfaffian;
mod rep;
pub mod sample;
mod scalar;

pub use matrix::MatrixN;
pub use pfaffian::{
    cayley_hamilton_residue, characteristic_pfaffian, characteristic_polynomial, is_symplectic_self_adjoint,
    pfaffian, q_n_direct, q_n_polarized, PfaffianPolynomial,
};
pub use rep::{eval_word, group_star, trace, RepresentationTuple};
pub use sample::{sample_so, sample_sl, sample_sp, torus_element_so};
pub use scalar::Scalar;
