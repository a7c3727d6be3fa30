//! Exact recognition of second companion matrices and block companion
//! matrices over `Q` and `GF(p)`.
//!
//! A square matrix is a second companion matrix `F_p` when it has ones on the
//! subdiagonal, the coefficient vector `p` in its last column and zeros
//! elsewhere. This crate builds such matrices, the associated reachability
//! matrices and bilinear maps, and decides companion-ness by each of several
//! equivalent criteria, which are required to agree.
//!
//! ```
//! use companion::{make_companion, recognize, CoeffVector, FieldSpec, Rational};
//!
//! let spec = FieldSpec::RATIONALS;
//! let p = CoeffVector::new(vec![Rational::from_integer(2.into()); 3], spec).unwrap();
//! let report = recognize(&make_companion(&p)).unwrap();
//! assert!(report.is_companion());
//! assert_eq!(report.extracted_p(), Some(&p));
//! ```

pub mod bilinear;
pub mod block;
pub mod cli;
pub mod companion;
pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod random;

pub use bilinear::{recognize, TheoremId, TheoremVerdict};
pub use block::{make_block_companion, recognize_block, BlockColumn};
pub use companion::{make_companion, reachability, CoeffVector, CompanionReport, Criterion};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, Gf, Gf2, Gf3, Gf5, Gf7, Rational, Scalar};
pub use matrix::{Matrix, Polynomial};

/// Matrices over `Q`.
pub type QMatrix = Matrix<Rational>;
/// Matrices whose field is chosen at run time.
pub type DynMatrix = Matrix<FieldElement>;
pub type QCoeffVector = CoeffVector<Rational>;
pub type DynCoeffVector = CoeffVector<FieldElement>;
