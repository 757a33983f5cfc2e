//! Phasor fields of guided modes and surface waves, and finite-difference
//! Maxwell residuals used to check them.
//!
//! Both families carry the harmonic factor `exp[i(k_z z − ωt)]`; the real
//! instantaneous field is the real part of the returned phasor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mode::{Family, GuidedModeSpec, SurfaceWaveSpec};
use crate::{CVec3, Point, C64};

/// Complex electric (V/m) and magnetic (T) field at one point and instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldPhasor {
    pub e: CVec3,
    pub b: CVec3,
}

impl FieldPhasor {
    pub fn zero() -> Self {
        Self {
            e: CVec3::zeros(),
            b: CVec3::zeros(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().chain(self.b.iter()).all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

fn harmonic_factor(kz: C64, z: f64, omega: f64, t: f64) -> C64 {
    // exp(i k_z z − i ω t); complex k_z gives the evanescent decay.
    (C64::i() * kz * z - C64::new(0.0, omega * t)).exp()
}

/// Guided-mode phasor at `point` and time `t`.
pub fn guided_field_phasor(spec: &GuidedModeSpec, point: &Point, t: f64) -> Result<FieldPhasor> {
    guided_field_phasor_with_kz(spec, spec.axial_wavenumber(), point, t)
}

/// Guided-mode phasor with an explicit axial wavenumber. Passing anything
/// other than `spec.axial_wavenumber()` breaks the dispersion relation; this
/// is how negative controls are built.
pub fn guided_field_phasor_with_kz(
    spec: &GuidedModeSpec,
    kz: C64,
    point: &Point,
    t: f64,
) -> Result<FieldPhasor> {
    if !spec.contains(point.x, point.y) {
        return Err(Error::Domain {
            x: point.x,
            y: point.y,
            z: point.z,
            reason: "guided fields are defined on 0 <= x <= a, 0 <= y <= b",
        });
    }
    let c = spec.constants.c;
    let (kx, ky) = (spec.kx(), spec.ky());
    let wc2 = spec.cutoff().powi(2);
    let omega = spec.omega;
    let h = spec.amplitude;

    let (sx, cx) = (kx * point.x).sin_cos();
    let (sy, cy) = (ky * point.y).sin_cos();
    let phase = harmonic_factor(kz, point.z, omega, t);
    let i = C64::i();
    let zero = C64::new(0.0, 0.0);

    let (e, b) = match spec.index.family {
        Family::TM => {
            let e0 = h;
            let transverse = i * kz * (c * c / wc2) * e0;
            let magnetic = i * (omega / wc2) * e0;
            let e = CVec3::new(
                transverse * (kx * cx * sy),
                transverse * (ky * sx * cy),
                C64::new(e0 * sx * sy, 0.0),
            );
            let b = CVec3::new(-magnetic * (ky * sx * cy), magnetic * (kx * cx * sy), zero);
            (e, b)
        }
        Family::TE => {
            let b0 = h / c;
            let electric = i * (omega / wc2) * c * c * b0;
            let transverse = -i * kz * (c * c / wc2) * b0;
            let e = CVec3::new(-electric * (ky * cx * sy), electric * (kx * sx * cy), zero);
            let b = CVec3::new(
                transverse * (kx * sx * cy),
                transverse * (ky * cx * sy),
                C64::new(b0 * cx * cy, 0.0),
            );
            (e, b)
        }
    };
    Ok(FieldPhasor {
        e: e * phase,
        b: b * phase,
    })
}

/// Surface-wave phasor on the vacuum side, `x >= 0`.
pub fn surface_field_phasor(spec: &SurfaceWaveSpec, point: &Point, t: f64) -> Result<FieldPhasor> {
    if !(point.x >= 0.0) {
        return Err(Error::Domain {
            x: point.x,
            y: point.y,
            z: point.z,
            reason: "surface-wave fields are only modelled on the vacuum side x >= 0",
        });
    }
    let c = spec.constants.c;
    let omega = spec.omega;
    let kz = spec.kz();
    let kappa = spec.kappa();
    let f = (C64::new(-kappa * point.x, kz * point.z - omega * t)).exp();
    let zero = C64::new(0.0, 0.0);

    let (e, b) = match spec.family {
        Family::TM => {
            let a0 = spec.amplitude / c;
            let e = CVec3::new(
                C64::new(kz / omega * c * c * a0, 0.0),
                zero,
                C64::new(0.0, -kappa / omega * c * c * a0),
            );
            let b = CVec3::new(zero, C64::new(a0, 0.0), zero);
            (e, b)
        }
        Family::TE => {
            let b0 = spec.amplitude;
            let e = CVec3::new(zero, C64::new(b0, 0.0), zero);
            let b = CVec3::new(
                C64::new(-kz / omega * b0, 0.0),
                zero,
                C64::new(0.0, kappa / omega * b0),
            );
            (e, b)
        }
    };
    Ok(FieldPhasor { e: e * f, b: b * f })
}

/// Anything that yields a time-harmonic phasor field.
pub trait FieldSource {
    fn phasor(&self, point: &Point, t: f64) -> Result<FieldPhasor>;
    fn omega(&self) -> f64;
    fn speed_of_light(&self) -> f64;
    /// Characteristic wavenumber used to scale derivative residuals.
    fn wavenumber_scale(&self) -> f64;
    /// Central-difference step for Maxwell checks.
    fn finite_difference_step(&self) -> f64;
}

impl FieldSource for GuidedModeSpec {
    fn phasor(&self, point: &Point, t: f64) -> Result<FieldPhasor> {
        guided_field_phasor(self, point, t)
    }
    fn omega(&self) -> f64 {
        self.omega
    }
    fn speed_of_light(&self) -> f64 {
        self.constants.c
    }
    fn wavenumber_scale(&self) -> f64 {
        // |k| of the constituent plane waves; also bounds |β| below cutoff.
        (self.omega / self.constants.c).max(self.cutoff() / self.constants.c)
    }
    fn finite_difference_step(&self) -> f64 {
        1e-6 * self.geometry.a.min(self.geometry.b)
    }
}

impl FieldSource for SurfaceWaveSpec {
    fn phasor(&self, point: &Point, t: f64) -> Result<FieldPhasor> {
        surface_field_phasor(self, point, t)
    }
    fn omega(&self) -> f64 {
        self.omega
    }
    fn speed_of_light(&self) -> f64 {
        self.constants.c
    }
    fn wavenumber_scale(&self) -> f64 {
        self.kz().abs()
    }
    fn finite_difference_step(&self) -> f64 {
        1e-6 / self.kappa()
    }
}

/// Relative finite-difference residuals of the source-free Maxwell equations
/// at one point, each scaled by `|k| · |field|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResiduals {
    pub div_e: f64,
    pub div_b: f64,
    /// |∇×E − iωB|
    pub faraday: f64,
    /// |∇×B + iωE/c²|
    pub ampere: f64,
}

impl MaxwellResiduals {
    pub fn max(&self) -> f64 {
        self.div_e.max(self.div_b).max(self.faraday).max(self.ampere)
    }
}

/// Central-difference Jacobian `d[field][component] / d[axis]`.
fn jacobian<S: FieldSource + ?Sized>(source: &S, point: &Point, t: f64) -> Result<([CVec3; 3], [CVec3; 3])> {
    let h = source.finite_difference_step();
    let mut de = [CVec3::zeros(); 3];
    let mut db = [CVec3::zeros(); 3];
    for axis in 0..3 {
        let mut plus = *point;
        let mut minus = *point;
        plus[axis] += h;
        minus[axis] -= h;
        let fp = source.phasor(&plus, t)?;
        let fm = source.phasor(&minus, t)?;
        de[axis] = (fp.e - fm.e) / C64::new(2.0 * h, 0.0);
        db[axis] = (fp.b - fm.b) / C64::new(2.0 * h, 0.0);
    }
    Ok((de, db))
}

fn divergence(d: &[CVec3; 3]) -> C64 {
    d[0][0] + d[1][1] + d[2][2]
}

fn curl(d: &[CVec3; 3]) -> CVec3 {
    // d[axis][component]
    CVec3::new(d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0])
}

/// Maxwell residuals at an interior point (at least one step away from any
/// domain boundary).
pub fn maxwell_residuals<S: FieldSource + ?Sized>(source: &S, point: &Point, t: f64) -> Result<MaxwellResiduals> {
    let f = source.phasor(point, t)?;
    let c = source.speed_of_light();
    maxwell_residuals_relative_to(source, point, t, f.e.norm() + c * f.b.norm())
}

/// As [`maxwell_residuals`], but normalized by `|k| · field_scale` with a
/// caller-supplied field scale (in units of E). Use this at or near nodes of
/// the field, where the local magnitude is not a meaningful reference.
pub fn maxwell_residuals_relative_to<S: FieldSource + ?Sized>(
    source: &S,
    point: &Point,
    t: f64,
    field_scale: f64,
) -> Result<MaxwellResiduals> {
    let f = source.phasor(point, t)?;
    let (de, db) = jacobian(source, point, t)?;
    let c = source.speed_of_light();
    let omega = source.omega();
    let scale = source.wavenumber_scale() * field_scale;
    let iw = C64::new(0.0, omega);

    let faraday = (curl(&de) - f.b * iw).norm();
    let ampere = (curl(&db) + f.e * (iw / (c * c))).norm() * c;
    Ok(MaxwellResiduals {
        div_e: divergence(&de).norm() / scale,
        div_b: divergence(&db).norm() * c / scale,
        faraday: faraday / scale,
        ampere: ampere / scale,
    })
}

/// Largest tangential-E or normal-B component on the four walls of the guide,
/// sampled at `samples` points per wall, relative to the peak field scale.
pub fn wall_boundary_residual(spec: &GuidedModeSpec, samples: usize, z: f64, t: f64) -> Result<f64> {
    let (a, b) = (spec.geometry.a, spec.geometry.b);
    let c = spec.constants.c;
    let mut worst = 0.0f64;
    let mut peak = 0.0f64;
    for k in 0..samples {
        let s = (k as f64 + 0.5) / samples as f64;
        // walls normal to x: tangential E_y, E_z; normal B_x
        for x in [0.0, a] {
            let f = guided_field_phasor(spec, &Point::new(x, s * b, z), t)?;
            worst = worst.max(f.e.y.norm()).max(f.e.z.norm()).max(c * f.b.x.norm());
            peak = peak.max(f.e.norm()).max(c * f.b.norm());
        }
        // walls normal to y: tangential E_x, E_z; normal B_y
        for y in [0.0, b] {
            let f = guided_field_phasor(spec, &Point::new(s * a, y, z), t)?;
            worst = worst.max(f.e.x.norm()).max(f.e.z.norm()).max(c * f.b.y.norm());
            peak = peak.max(f.e.norm()).max(c * f.b.norm());
        }
    }
    Ok(if peak > 0.0 { worst / peak } else { worst })
}
