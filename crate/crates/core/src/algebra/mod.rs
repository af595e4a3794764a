//! Exact arithmetic: rationals, dense polynomials over them, cyclotomic
//! factorization, Smith normal form over `Q[t]`, and rational linear algebra.

pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod smith;

pub use cyclotomic::{cyclotomic, factor_cyclotomic, CyclotomicFactorization};
pub use linalg::{rank_rational, EchelonBasis, QMatrix, QVector};
pub use poly::{poly_gcd, ExactPoly, LaurentClass};
pub use smith::{smith_normal_form, smith_normal_form_with_transforms, PolyMatrix, SmithForm, SmithTransforms};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
