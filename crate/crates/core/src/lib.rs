//! Exact computational algebra on finite quasi-posets.
//!
//! The crate implements the Hopf algebra of quasi-posets with its topological
//! coproduct and its extraction–contraction coproduct, the monoid of characters
//! of the latter, the weak and strict Ehrhart polynomials of quasi-posets, and
//! the noncommutative lift of all of this to the Hopf algebra of packed words
//! (`WQSym`). All arithmetic is exact over arbitrary-precision rationals.
//!
//! ```
//! use qpehr_core::{ehrhart::{ehr_polynomial, CountMode}, QuasiPoset};
//!
//! let chain: QuasiPoset = "2: 1<2".parse().unwrap();
//! let ehr = ehr_polynomial(&chain, CountMode::Weak);
//! assert_eq!(ehr.to_string(), "1/2*X + 1/2*X^2");
//! ```

pub mod cache;
pub mod character;
pub mod ehrhart;
mod error;
pub mod hopf;
pub mod json;
pub mod linear;
pub mod poly;
pub mod qp;
pub mod verify;
pub mod wqsym;

pub use character::Character;
pub use error::{Error, Result};
pub use linear::LinComb;
pub use poly::Polynomial;
pub use qp::{CanonicalKey, Equivalence, QuasiPoset, QuotientView, RelKind};
pub use wqsym::PackedWord;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds the integer `v` as a rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
