//! Exact arithmetic: rationals, sparse polynomials, arrangement fractions and
//! matrices over them.

pub mod frac;
pub mod linform;
pub mod matrix;
pub(crate) mod modular;
pub mod monomial;
pub mod poly;
pub mod rational;

pub use frac::{den_poly, factorize, frac_arith, ArrFrac, Denominator, FracOp};
pub use linform::{Factor, LinForm};
pub use matrix::{mat_det_adj, ExactRing, FracMatrix, Matrix, PolyMatrix, RatMatrix};
pub use monomial::Monomial;
pub use poly::{poly_arith, Poly, PolyOp};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
