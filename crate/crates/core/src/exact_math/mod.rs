//! Exact integer and rational polynomial arithmetic, Sturm root isolation and
//! real algebraic numbers.

pub mod algebraic;
pub mod factor;
pub mod poly;

pub use algebraic::{
    algebraic_sign, isolate_with_multiplicity, sturm_isolate, unit_root_real_parts,
    unit_roots_with_multiplicity, AlgebraicReal, IsolatedRoot, SturmChain,
};
pub use factor::irreducible_factors;
pub use poly::{format_rational, parse_rational, rat, IntPolynomial, RatPolynomial};

pub use num_rational::BigRational as Rational;
