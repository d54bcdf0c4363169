//! Exact computer algebra for the quantum Schur algebra `S_v(2,d)`.
//!
//! * [`laurent`]: the coefficient ring `Z[v, v^-1]` and quantum combinatorics.
//! * [`schur`]: the presented algebra, its canonical monomial bases,
//!   normal-form multiplication, reduction formulas and base changes.
//! * [`oracle`]: the matrix representation on `E^{⊗d}` used as ground truth.
//! * [`suites`]: verification suites producing [`Report`]s.
//! * [`text`]: text and JSON forms of elements.

pub mod error;
pub mod laurent;
pub mod oracle;
pub mod report;
pub mod schur;
pub mod suites;
pub mod text;

pub use error::{Error, Result};
pub use laurent::{gauss_binomial, quantum_factorial, quantum_int, LaurentPoly, RationalScalar};
pub use report::{Check, Report};
pub use schur::{Context, Element, Generator, KElement, Monomial, Orientation};
