//! Exact critical integrability indices (log-canonical thresholds) for
//! bivariate polynomial germs at the origin.
//!
//! The pipeline: parse a polynomial over the rationals ([`bivar`]), build its
//! Newton polygon and locate the main face ([`newton`]), then iterate the
//! adapted-coordinates algorithm ([`adapt`]) until the Newton distance reads
//! off the index. Closed-form references for classical families live in
//! [`oracle`], and ascending-chain / accumulation-point exploration in
//! [`chains`].
//!
//! Everything here is exact rational arithmetic; the only floating point is
//! [`bivar::BivarPoly::eval_complex`] and friends, which exist for the
//! numerical probe in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adapt;
pub mod bivar;
pub mod chains;
pub mod factor;
pub mod newton;
pub mod oracle;
pub mod rational;
pub mod univar;

pub use adapt::{compute_lct, Field, LctResult, Normalization, Threshold};
pub use bivar::{Axis, BivarPoly, ShearTerm};
pub use newton::{polygon, newton_distance, Face, MainFace, NewtonPolygon};
pub use rational::Rational;
pub use univar::UnivarPoly;
