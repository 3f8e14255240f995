//! Exact-arithmetic toolkit for shifts of finite type.
//!
//! Everything here is computed over big integers and rationals: transition
//! matrices, word counts, characteristic polynomials, Perron eigenvalues with
//! certified isolating intervals, left eigenvectors in `Z[lambda]`, left ideal
//! classes over `Z[lambda, 1/lambda]`, and the entropy-conjugacy map
//! `pi2 ∘ pi1⁻¹` between shifts sharing an almost invertible, left-closing
//! common extension. No floating point is used anywhere; every numeric claim
//! comes with an interval or an algebraic certificate that can be re-checked.
//!
//! The main entry points:
//!
//! * [`Sft`] — a vertex shift given by a 0/1 transition matrix.
//! * [`OneBlockCode`] — a symbol map inducing a sliding block code.
//! * [`perron_data`](spectral::perron_data) — exact spectral data.
//! * [`left_ideal`](ideal::left_ideal) / [`class_equivalent`](ideal::class_equivalent).
//! * [`ConjugacySetup`](conjugacy::ConjugacySetup) — validated common extension
//!   with magic symbols, used to evaluate the conjugacy on finitely presented
//!   points with window certificates.

pub mod algebraic;
pub mod code;
pub mod conjugacy;
pub mod doc;
pub mod error;
pub mod ideal;
pub mod interval;
pub mod limits;
pub mod point;
pub mod poly;
pub mod sample;
pub mod sft;
pub mod spectral;

pub use code::{ClosingReport, DegreeReport, OneBlockCode};
// re-exports added as modules land
pub use error::SftError;

pub use interval::RationalInterval;
pub use limits::Limits;
pub use point::EventuallyPeriodicPoint;
pub use sft::{Sft, Word};


/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, SftError>;
