//! Inertial versus uniformly accelerated two-level detectors.
//!
//! The crate evolves a two-level atom coupled to a massless scalar vacuum
//! (optionally entangled with an ancilla that does not couple to the field)
//! and quantifies how well the accelerated trajectory can be told apart from
//! the inertial one through the trace distance and the Helstrom error
//! probability.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod detector;
pub mod discrimination;
mod error;
pub mod qmath;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{one_minus_exp_neg, Scalar};

pub type ComplexMatrix = qmath::ComplexMatrix<f64>;
pub type DetectorParams = detector::DetectorParams<f64>;
pub type BlochVector = detector::BlochVector<f64>;
pub type KossakowskiCoeffs = detector::KossakowskiCoeffs<f64>;
pub type ThermalParams = detector::ThermalParams<f64>;
pub type LambdaTriple = discrimination::LambdaTriple<f64>;
pub type XStateCoeffs = discrimination::XStateCoeffs<f64>;
pub type DiscriminationResult = discrimination::DiscriminationResult<f64>;
pub type Extremum = analysis::Extremum<f64>;
pub type SweepGrid = analysis::SweepGrid<f64>;

pub type ComplexMatrix32 = qmath::ComplexMatrix<f32>;
pub type DetectorParams32 = detector::DetectorParams<f32>;
pub type BlochVector32 = detector::BlochVector<f32>;
