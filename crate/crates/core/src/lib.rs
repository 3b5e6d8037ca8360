//! Exact computer algebra for localized multiple harmonic sums and
//! adjoint p-adic multiple zeta values at roots of unity.
//!
//! The crate is organized in layers:
//!
//! - [`cyclo`], [`bernoulli`], [`padic`]: the exact arithmetic substrate —
//!   arbitrary-precision rationals, the cyclotomic field Q(ξ_N), Bernoulli
//!   numbers with a persistent cache, and precision-tracked p-adic numbers
//!   with Teichmüller-embedded roots of unity.
//! - [`word`], [`index`]: the two index languages (integration words over
//!   the alphabet extended by inverse letters, and series indices with
//!   integer exponents of any sign plus d+1 root-of-unity twists), with
//!   shuffle, deconcatenation (plain and localized), antipode and the
//!   quasi-shuffle (stuffle) product.
//! - [`mhs`]: naive exact evaluators for multiple harmonic sums over the
//!   strict and the mixed strict/large ("tilde") summation domains.
//! - [`polyexp`], [`faulhaber`]: generalized polynomials `Σ c·ξ^{χm}·m^δ`
//!   and the two-boundary power-sum coefficient engine built on Bernoulli
//!   numbers and twisted geometric sums.
//! - [`localization`]: the recursive rewriting of mixed-sign harmonic sums
//!   as combinations of proper harmonic sums with polynomial coefficients,
//!   plus the sign-partition trees used as diagnostics.
//! - [`kz`]: truncated noncommutative series, the plain and localized
//!   integration operators, and their fixed points (multiple polylogarithm
//!   coefficients).
//! - [`action`]: the p-adic harmonic action — expansions of weighted sums
//!   at `p^α m` through sums at `m` and at `p^α`, extraction of adjoint
//!   p-adic multiple zeta values, closed forms for totally negative
//!   indices, and the depth-one p-adic zeta series.
//! - [`harness`]: batch verification suites with reproducible JSON reports.

pub mod action;
pub mod bernoulli;
pub mod cyclo;
pub mod error;
pub mod faulhaber;
pub mod harness;
pub mod index;
pub mod kz;
pub mod localization;
pub mod mhs;
pub mod padic;
pub mod polyexp;
pub mod word;

pub use cyclo::{CycloNum, Rat};
pub use error::Error;

pub use padic::PadicNum;
pub use polyexp::{PolyExp, PolyExp2};


/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
