//! Mode parameterizations: waveguide geometry, mode indices, and the two
//! field families (guided modes and planar surface waves).

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Transverse magnetic: no longitudinal magnetic field.
    TM,
    /// Transverse electric: no longitudinal electric field.
    TE,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::TM => "TM",
            Family::TE => "TE",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Propagation direction along the guide / interface. Backward propagation
/// is the same field with the axial wavenumber negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Direction {
    #[default]
    #[serde(rename = "+z")]
    Forward,
    #[serde(rename = "-z")]
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Rectangular guide with perfectly conducting walls at x = 0, a and y = 0, b.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideGeometry {
    pub a: f64,
    pub b: f64,
    pub length: f64,
}

impl WaveguideGeometry {
    pub fn new(a: f64, b: f64, length: f64) -> Result<Self> {
        let geometry = Self { a, b, length };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b.is_finite() && self.b > 0.0) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: self.b,
                reason: "height must be positive and finite",
            });
        }
        if !(self.a.is_finite() && self.a >= self.b) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: self.a,
                reason: "width must be finite and at least the height b",
            });
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::InvalidParameter {
                name: "length",
                value: self.length,
                reason: "length must be positive and finite",
            });
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        self.a * self.b * self.length
    }

    pub fn cross_section(&self) -> f64 {
        self.a * self.b
    }
}

/// Family plus the two transverse half-wave counts.
///
/// TM needs m, n ≥ 1; TE needs m ≥ 1 and n ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub family: Family,
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn new(family: Family, m: u32, n: u32) -> Result<Self> {
        let index = Self { family, m, n };
        index.validate()?;
        Ok(index)
    }

    pub fn tm(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::TM, m, n)
    }

    pub fn te(m: u32, n: u32) -> Result<Self> {
        Self::new(Family::TE, m, n)
    }

    pub fn validate(&self) -> Result<()> {
        let reject = |reason| Error::RejectedMode {
            family: self.family.as_str(),
            m: self.m,
            n: self.n,
            reason,
        };
        match self.family {
            Family::TM if self.m == 0 || self.n == 0 => Err(reject("TM modes need m >= 1 and n >= 1")),
            Family::TE if self.m == 0 => Err(reject("TE modes need m >= 1")),
            _ => Ok(()),
        }
    }

    /// Ratio between the exact cross-section integral of a squared mode
    /// profile and the `ab/4` it takes when both indices are non-zero.
    ///
    /// A vanishing index turns `cos²(0)` into 1 instead of averaging to 1/2,
    /// so TE_{m0} modes carry twice the energy, momentum and spin of the
    /// `ab/4` bookkeeping.
    pub fn cross_section_weight(&self) -> f64 {
        if self.n == 0 {
            2.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.family, self.m, self.n)
    }
}

/// Cutoff angular frequency ω_c = cπ√((m/a)² + (n/b)²).
pub fn cutoff_frequency(geometry: &WaveguideGeometry, index: &ModeIndex, c: f64) -> Result<f64> {
    index.validate()?;
    let kx = f64::from(index.m) / geometry.a;
    let ky = f64::from(index.n) / geometry.b;
    Ok(c * PI * kx.hypot(ky))
}

/// Axial wavenumber from the guided dispersion ω² = ω_c² + c²k_z².
///
/// Below cutoff the result is purely imaginary, `iβ` with β > 0 for forward
/// direction; `Backward` negates the whole wavenumber.
pub fn axial_wavenumber(omega: f64, omega_c: f64, c: f64, direction: Direction) -> C64 {
    let s = direction.sign();
    if omega >= omega_c {
        let kz = ((omega - omega_c) * (omega + omega_c)).sqrt() / c;
        C64::new(s * kz, 0.0)
    } else {
        let beta = ((omega_c - omega) * (omega_c + omega)).sqrt() / c;
        C64::new(0.0, s * beta)
    }
}

/// A single rectangular-waveguide mode at a fixed frequency and amplitude.
///
/// `amplitude` is `E0` for TM and `c·B0` for TE, so both families share the
/// same energy scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidedModeSpec {
    pub geometry: WaveguideGeometry,
    pub index: ModeIndex,
    pub omega: f64,
    pub amplitude: f64,
    pub direction: Direction,
    pub constants: PhysicalConstants,
}

impl GuidedModeSpec {
    pub fn new(
        geometry: WaveguideGeometry,
        index: ModeIndex,
        omega: f64,
        amplitude: f64,
        direction: Direction,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let spec = Self {
            geometry,
            index,
            omega,
            amplitude,
            direction,
            constants,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same mode with ω set to `ratio · ω_c`.
    pub fn at_cutoff_ratio(
        geometry: WaveguideGeometry,
        index: ModeIndex,
        ratio: f64,
        amplitude: f64,
        direction: Direction,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let omega_c = cutoff_frequency(&geometry, &index, constants.c)?;
        Self::new(geometry, index, ratio * omega_c, amplitude, direction, constants)
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.index.validate()?;
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: self.omega,
                reason: "angular frequency must be positive and finite",
            });
        }
        if !(self.amplitude.is_finite() && self.amplitude > 0.0) {
            return Err(Error::InvalidParameter {
                name: "amplitude",
                value: self.amplitude,
                reason: "field amplitude must be positive and finite",
            });
        }
        Ok(())
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    pub fn cutoff(&self) -> f64 {
        let kx = f64::from(self.index.m) / self.geometry.a;
        let ky = f64::from(self.index.n) / self.geometry.b;
        self.constants.c * PI * kx.hypot(ky)
    }

    pub fn kx(&self) -> f64 {
        f64::from(self.index.m) * PI / self.geometry.a
    }

    pub fn ky(&self) -> f64 {
        f64::from(self.index.n) * PI / self.geometry.b
    }

    pub fn axial_wavenumber(&self) -> C64 {
        axial_wavenumber(self.omega, self.cutoff(), self.constants.c, self.direction)
    }

    pub fn is_propagating(&self) -> bool {
        self.omega > self.cutoff()
    }

    /// Signed real axial wavenumber; zero for evanescent modes.
    pub fn real_kz(&self) -> f64 {
        self.axial_wavenumber().re
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        (0.0..=self.geometry.a).contains(&x) && (0.0..=self.geometry.b).contains(&y)
    }
}

/// Evanescent surface wave on the vacuum side (x > 0) of a planar interface
/// with a medium of refractive index `eta`, excited by total internal
/// reflection at incidence angle `phi`.
///
/// `amplitude` is `c·a0` for TM and `b0` for TE; `area` is the transverse
/// (y, z) area used to regularize the totals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceWaveSpec {
    pub family: Family,
    pub eta: f64,
    pub phi: f64,
    pub omega: f64,
    pub amplitude: f64,
    pub area: f64,
    pub direction: Direction,
    pub constants: PhysicalConstants,
}

impl SurfaceWaveSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        family: Family,
        eta: f64,
        phi: f64,
        omega: f64,
        amplitude: f64,
        area: f64,
        direction: Direction,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let spec = Self {
            family,
            eta,
            phi,
            omega,
            amplitude,
            area,
            direction,
            constants,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let tir = self.eta * self.phi.sin();
        if !(tir.is_finite() && tir > 1.0) {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: self.phi,
                reason: "total internal reflection requires eta * sin(phi) > 1",
            });
        }
        for (name, value) in [
            ("omega", self.omega),
            ("amplitude", self.amplitude),
            ("area", self.area),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be positive and finite",
                });
            }
        }
        Ok(())
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    /// Decay constant κ = (ω/c)√(η² sin²φ − 1).
    pub fn kappa(&self) -> f64 {
        let s = self.eta * self.phi.sin();
        (self.omega / self.constants.c) * ((s - 1.0) * (s + 1.0)).sqrt()
    }

    /// Signed propagation constant k_z = ±(ω/c) η sin φ.
    pub fn kz(&self) -> f64 {
        self.direction.sign() * (self.omega / self.constants.c) * self.eta * self.phi.sin()
    }

    /// κ / |k_z|, the tangent of the ellipse angle.
    pub fn tan_theta_prime(&self) -> f64 {
        let s = self.eta * self.phi.sin();
        ((s - 1.0) * (s + 1.0)).sqrt() / s
    }
}
