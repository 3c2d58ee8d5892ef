//! Exact arithmetic: Gaussian rationals, a modular shadow field, cyclotomic
//! fields, echelon bases and small dense matrices.

mod cyclotomic;
mod echelon;
mod matrix;
mod poly;
mod scalar;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_power, euler_phi, CyclotomicElement};
pub use echelon::{echelon_insert, EchelonBasis, EchelonRow};
pub use matrix::ExactMatrix;
pub use poly::{characteristic_polynomial, rational_eigenvalues, RationalSpectrum};
pub use scalar::{parse_rational, rat, rat_int, GaussianRational, ModGaussian, Rational, Scalar, MERSENNE_61};
