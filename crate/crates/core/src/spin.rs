//! Potentials and time-averaged densities of harmonic fields.
//!
//! With the harmonic factor `exp(−iωt)` and the radiation gauge, the vector
//! potential and its dual are `A = −iE/ω` and `C = −ic²B/ω`. The averaged
//! spin densities are then
//!
//! ```text
//! s_e = (ε0/2) Re(E × A*),   s_m = (ε0/2) Re(B × C*)
//! ```
//!
//! Closed forms for guided and surface modes live next to the pipeline that
//! evaluates them from phasors, and [`time_average`] provides the brute-force
//! period average that checks both.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fields::FieldPhasor;
use crate::mode::{Family, GuidedModeSpec, SurfaceWaveSpec};
use crate::{CVec3, Point, Vec3, C64};

/// Vector potential `a` (V·s/m) and dual potential `c` (V·s·m/s² · T, i.e.
/// the potential that generates B the way A generates E).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialPhasor {
    pub a: CVec3,
    pub c: CVec3,
}

pub fn vector_potentials(field: &FieldPhasor, omega: f64, constants: &PhysicalConstants) -> PotentialPhasor {
    let minus_i_over_w = C64::new(0.0, -1.0 / omega);
    let c2 = constants.c * constants.c;
    PotentialPhasor {
        a: field.e * minus_i_over_w,
        c: field.b * (minus_i_over_w * c2),
    }
}

/// How the electric and magnetic spin densities combine into "the" spin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpinCombination {
    /// `s_e + s_m`: for the pure TM or TE modes handled here only one term is
    /// non-zero, so this is the family's own density.
    #[default]
    Single,
    /// `(s_e + s_m) / 2`, the electric–magnetic symmetric definition.
    Averaged,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinDensityPair {
    /// Electric spin density (J·s/m³).
    pub electric: Vec3,
    /// Magnetic spin density (J·s/m³).
    pub magnetic: Vec3,
}

impl SpinDensityPair {
    pub fn zero() -> Self {
        Self {
            electric: Vec3::zeros(),
            magnetic: Vec3::zeros(),
        }
    }

    pub fn total(&self, combination: SpinCombination) -> Vec3 {
        match combination {
            SpinCombination::Single => self.electric + self.magnetic,
            SpinCombination::Averaged => (self.electric + self.magnetic) * 0.5,
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            electric: -self.electric,
            magnetic: -self.magnetic,
        }
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.electric - other.electric)
            .amax()
            .max((self.magnetic - other.magnetic).amax())
    }

    pub fn max_abs(&self) -> f64 {
        self.electric.amax().max(self.magnetic.amax())
    }
}

/// Energy, momentum and spin densities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    /// J/m³
    pub energy: f64,
    /// kg/(m²·s)
    pub momentum: Vec3,
    pub spin: SpinDensityPair,
}

fn re_cross_conj(u: &CVec3, v: &CVec3) -> Vec3 {
    // Re(u × v*)
    let w = u.cross(&v.map(|z| z.conj()));
    w.map(|z| z.re)
}

pub fn spin_densities(field: &FieldPhasor, omega: f64, constants: &PhysicalConstants) -> SpinDensityPair {
    let pot = vector_potentials(field, omega, constants);
    let half_eps = 0.5 * constants.eps0;
    SpinDensityPair {
        electric: re_cross_conj(&field.e, &pot.a) * half_eps,
        magnetic: re_cross_conj(&field.b, &pot.c) * half_eps,
    }
}

/// Time-averaged energy density (ε0/4) Re(E·E* + c² B·B*).
pub fn energy_density(field: &FieldPhasor, constants: &PhysicalConstants) -> f64 {
    let c2 = constants.c * constants.c;
    0.25 * constants.eps0 * (field.e.norm_squared() + c2 * field.b.norm_squared())
}

/// Time-averaged momentum density (ε0/2) Re(E × B*).
pub fn momentum_density(field: &FieldPhasor, constants: &PhysicalConstants) -> Vec3 {
    re_cross_conj(&field.e, &field.b) * (0.5 * constants.eps0)
}

pub fn density_report(field: &FieldPhasor, omega: f64, constants: &PhysicalConstants) -> DensityReport {
    DensityReport {
        energy: energy_density(field, constants),
        momentum: momentum_density(field, constants),
        spin: spin_densities(field, omega, constants),
    }
}

/// Natural magnitude bound for the spin densities at a point,
/// `ε0 (|E|² + c²|B|²) / 2ω`; neither density can exceed it.
pub fn spin_density_scale(field: &FieldPhasor, omega: f64, constants: &PhysicalConstants) -> f64 {
    2.0 * energy_density(field, constants) / omega
}

/// Closed-form spin densities of a guided mode.
///
/// Below cutoff the electric and transverse fields oscillate in phase and
/// both densities vanish identically.
pub fn analytic_spin_guided(spec: &GuidedModeSpec, point: &Point) -> Result<SpinDensityPair> {
    if !spec.contains(point.x, point.y) {
        return Err(Error::Domain {
            x: point.x,
            y: point.y,
            z: point.z,
            reason: "guided fields are defined on 0 <= x <= a, 0 <= y <= b",
        });
    }
    if !spec.is_propagating() {
        return Ok(SpinDensityPair::zero());
    }
    let k = &spec.constants;
    let (kx, ky) = (spec.kx(), spec.ky());
    let wc2 = spec.cutoff().powi(2);
    let prefactor = spec.real_kz() * spec.amplitude.powi(2) / (2.0 * k.mu0 * wc2 * spec.omega);
    let (sx, cx) = (kx * point.x).sin_cos();
    let (sy, cy) = (ky * point.y).sin_cos();
    let sin2x = (2.0 * kx * point.x).sin();
    let sin2y = (2.0 * ky * point.y).sin();

    Ok(match spec.index.family {
        Family::TM => SpinDensityPair {
            electric: Vec3::new(
                -ky * prefactor * sx * sx * sin2y,
                kx * prefactor * sin2x * sy * sy,
                0.0,
            ),
            magnetic: Vec3::zeros(),
        },
        Family::TE => SpinDensityPair {
            electric: Vec3::zeros(),
            magnetic: Vec3::new(
                ky * prefactor * cx * cx * sin2y,
                -kx * prefactor * sin2x * cy * cy,
                0.0,
            ),
        },
    })
}

/// Closed-form spin densities of a surface wave at depth `x`.
pub fn analytic_spin_surface(spec: &SurfaceWaveSpec, x: f64) -> Result<SpinDensityPair> {
    if !(x >= 0.0) {
        return Err(Error::Domain {
            x,
            y: 0.0,
            z: 0.0,
            reason: "surface-wave fields are only modelled on the vacuum side x >= 0",
        });
    }
    let k = &spec.constants;
    let (kz, kappa, w) = (spec.kz(), spec.kappa(), spec.omega);
    let sy = k.eps0 * spec.amplitude.powi(2) * kappa * kz * k.c * k.c / w.powi(3) * (-2.0 * kappa * x).exp();
    let s = Vec3::new(0.0, sy, 0.0);
    Ok(match spec.family {
        Family::TM => SpinDensityPair {
            electric: s,
            magnetic: Vec3::zeros(),
        },
        Family::TE => SpinDensityPair {
            electric: Vec3::zeros(),
            magnetic: s,
        },
    })
}

/// Uniform-grid average of `sampler` over one period `2π/ω`.
///
/// For trigonometric integrands whose harmonic content is below `samples`
/// the uniform rule is exact up to rounding.
pub fn time_average<T, F>(omega: f64, samples: usize, mut sampler: F) -> Result<T>
where
    T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    F: FnMut(f64) -> T,
{
    if samples < 4 {
        return Err(Error::Config(format!(
            "time averaging needs at least 4 samples per period, got {samples}"
        )));
    }
    let period = std::f64::consts::TAU / omega;
    let dt = period / samples as f64;
    let mut acc = sampler(0.0);
    for k in 1..samples {
        acc = acc + sampler(k as f64 * dt);
    }
    Ok(acc * (1.0 / samples as f64))
}

/// Instantaneous (real-field) densities built from a phasor that already
/// carries its time factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantaneousDensities {
    /// ε0 E × A with real fields
    pub spin_electric: Vec3,
    /// ε0 B × C with real fields
    pub spin_magnetic: Vec3,
    /// (ε0/2)(E² + c²B²)
    pub energy: f64,
    /// ε0 E × B
    pub momentum: Vec3,
}

impl std::ops::Add for InstantaneousDensities {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            spin_electric: self.spin_electric + rhs.spin_electric,
            spin_magnetic: self.spin_magnetic + rhs.spin_magnetic,
            energy: self.energy + rhs.energy,
            momentum: self.momentum + rhs.momentum,
        }
    }
}

impl std::ops::Mul<f64> for InstantaneousDensities {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            spin_electric: self.spin_electric * s,
            spin_magnetic: self.spin_magnetic * s,
            energy: self.energy * s,
            momentum: self.momentum * s,
        }
    }
}

pub fn instantaneous_densities(
    field: &FieldPhasor,
    omega: f64,
    constants: &PhysicalConstants,
) -> InstantaneousDensities {
    let pot = vector_potentials(field, omega, constants);
    let re = |v: &CVec3| v.map(|z| z.re);
    let (e, b, a, c) = (re(&field.e), re(&field.b), re(&pot.a), re(&pot.c));
    let eps0 = constants.eps0;
    InstantaneousDensities {
        spin_electric: e.cross(&a) * eps0,
        spin_magnetic: b.cross(&c) * eps0,
        energy: 0.5 * eps0 * (e.norm_squared() + constants.c.powi(2) * b.norm_squared()),
        momentum: e.cross(&b) * eps0,
    }
}
