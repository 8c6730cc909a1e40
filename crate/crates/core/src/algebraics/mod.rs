//! Exact real algebraic numbers and polynomials over Z.

pub mod classify;
pub mod complex;
pub mod factor;
pub mod field;
pub(crate) mod modp;
pub mod number;
pub mod poly;
pub mod roots;

pub use classify::{classify, classify_polynomial, ClassFlags, NumberClass, NumberTag};
pub use factor::{factor, is_irreducible, Factorization};
pub use field::{Field, FieldElement};
pub use number::{named_parameter, parse_named, AlgebraicNumber, NamedKind};
pub use poly::IntPolynomial;
pub use roots::{isolate_real_roots, RealRoot, SturmChain};
