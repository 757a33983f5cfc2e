//! Transverse spin of structured optical fields.
//!
//! The crate builds the complex phasor fields of rectangular-waveguide TM/TE
//! modes and of planar evanescent surface waves, and derives from them:
//!
//!   * time-averaged electric and magnetic spin densities, energy and
//!     momentum densities ([`spin`]),
//!   * volume/half-space totals, energy velocity, photon-number
//!     quantization and ellipticity ([`observables`]),
//!   * effective rest masses and the relativistic identities they obey
//!     ([`mass`]),
//!   * the six-component spin-1 matrix algebra and helicity bases
//!     ([`algebra`]).
//!
//! Every closed-form expression is paired with an independent numerical route
//! (quadrature, brute-force time averaging, finite differences), and the
//! [`verify`] module runs the full catalogue of those cross-checks.

// Validation is written as `!(x >= lo)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod constants;
pub mod error;
pub mod fields;
pub mod mass;
pub mod mode;
pub mod observables;
pub mod quadrature;
pub mod spin;
pub mod spinmap;
pub mod verify;

pub use constants::{PhysicalConstants, UnitSystem};
pub use error::{Error, Result};
pub use fields::FieldPhasor;
pub use mode::{Direction, Family, GuidedModeSpec, ModeIndex, SurfaceWaveSpec, WaveguideGeometry};
pub use spin::{SpinCombination, SpinDensityPair};

/// Complex scalar used for all phasor components.
pub type C64 = nalgebra::Complex<f64>;
/// Complex 3-vector.
pub type CVec3 = nalgebra::Vector3<C64>;
/// Real 3-vector.
pub type Vec3 = nalgebra::Vector3<f64>;
/// Position in metres.
pub type Point = nalgebra::Point3<f64>;
