//! Exact and modular discriminant data for the truncated logarithm
//! polynomials `F_n(x) = 1 + x + x^2/2 + ... + x^n/n`, together with
//! independently checkable certificates that `disc(F_n)` is not a rational
//! square.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`], [`prime`], [`factor`], [`crt`] and [`rational`] form the
//!   arbitrary-precision numeric kernel.
//! * [`poly`] holds dense integer and prime-field polynomials and the three
//!   resultant routes (modular, CRT-exact, subresultant PRS).
//! * [`logpoly`] builds every object attached to `F_n`: the reduced
//!   coefficients, `P_n`, the discriminant, `X(m)`, `Y(m)` and `E_m`.
//! * [`certify`] routes each `n` to the cheapest applicable argument and
//!   re-checks the resulting [`Certificate`].

pub mod arith;
pub mod certify;
pub mod crt;
mod error;
pub mod factor;
pub mod logpoly;
pub mod poly;
pub mod prime;
pub mod rational;
mod zp;

pub use certify::{classify, verify_certificate, Certificate, ClassifyConfig};
pub use error::{Error, Result};
pub use factor::FactorMap;
pub use logpoly::{DiscReport, ReducedLogPoly, XYProfile};
pub use poly::{IntPoly, PrimeFieldPoly};
pub use rational::{ExactRational, PrimeValuation};
