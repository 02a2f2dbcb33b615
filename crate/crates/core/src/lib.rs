//! Descartes' rectangle-apposition construction for the quadrature of the
//! circle, its cotangent closed forms, the telescoping tangent series and its
//! descendants, the cosine and secant products, and the quadratrix.
//!
//! The numeric layers ([`numerics`], [`sequences`], [`identities`],
//! [`quadratrix`]) are pure functions; [`emit`] turns them into reports,
//! figures and the command-line interface.

// unit tests spell out reference values digit by digit
#![cfg_attr(test, allow(clippy::approx_constant, clippy::excessive_precision))]

pub mod emit;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod quadratrix;
pub mod sequences;

pub use error::{Error, Result};
pub use numerics::{Angle, Extended, Mode, PrecisionContext, Real};
