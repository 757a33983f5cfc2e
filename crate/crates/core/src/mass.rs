//! Effective rest mass of guided photons and of surface-wave quanta, with
//! the relativistic identities and Klein–Gordon dispersion they satisfy.
//!
//! A guided mode behaves like a particle of rest mass `m0 = ħω_c/c²` moving
//! along the guide: the transverse wavenumber plays the role of the rest
//! energy. A surface wave likewise acquires `m_s = ħκω/(c²|k_z|)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{guided_field_phasor_with_kz, surface_field_phasor};
use crate::mode::{Family, GuidedModeSpec, SurfaceWaveSpec};
use crate::observables::{
    integrate_guided, integrate_surface, GuidedObservables, PhotonCount, QuadratureConfig, SurfaceObservables,
};
use crate::quadrature::GaussLegendre;
use crate::spin::{energy_density, momentum_density, SpinCombination};
use crate::{Point, C64};

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}

/// `√(W² − P²c²)/c²`, written to limit cancellation.
pub fn invariant_mass(energy: f64, momentum: f64, c: f64) -> f64 {
    let pc = momentum.abs() * c;
    ((energy - pc) * (energy + pc)).max(0.0).sqrt() / (c * c)
}

/// Relative residuals of the relativistic identities of a propagating mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidedIdentityResiduals {
    /// `ε² = p²c² + m0²c⁴`
    pub energy_momentum: f64,
    /// `v_g v_p = c²`
    pub velocity_product: f64,
    /// `ε = m0c²/√(1 − v²/c²)`
    pub single_energy: f64,
    /// `W = M0c²/√(1 − v²/c²)`
    pub total_energy: f64,
    /// `P_z = M0 v/√(1 − v²/c²)`
    pub total_momentum: f64,
    /// `M0 = n m0`, when the photon number is an integer.
    pub quanta: Option<f64>,
}

impl GuidedIdentityResiduals {
    pub fn max(&self) -> f64 {
        [
            self.energy_momentum,
            self.velocity_product,
            self.single_energy,
            self.total_energy,
            self.total_momentum,
            self.quanta.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Mass and kinematics of a guided mode. Velocity and momentum entries are
/// `None` below cutoff, where they would be imaginary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidedMassReport {
    /// `ħω_c/c²` (kg)
    pub m0: f64,
    /// `√(W² − P_z²c²)/c²` from quadrature totals (kg)
    pub total_rest_mass: Option<f64>,
    /// `ħω` (J)
    pub epsilon: f64,
    /// `ħk_z` (kg·m/s)
    pub momentum: Option<f64>,
    /// `c²k_z/ω`
    pub group_velocity: Option<f64>,
    /// `ω/k_z`
    pub phase_velocity: Option<f64>,
    pub photons: PhotonCount,
    pub identities: Option<GuidedIdentityResiduals>,
}

pub fn guided_mass_report(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<GuidedMassReport> {
    let obs = integrate_guided(spec, config)?;
    Ok(guided_mass_report_from(spec, &obs))
}

/// Mass report built on already-computed quadrature totals.
pub fn guided_mass_report_from(spec: &GuidedModeSpec, obs: &GuidedObservables) -> GuidedMassReport {
    let k = spec.constants;
    let c = k.c;
    let m0 = k.hbar * spec.cutoff() / (c * c);
    let epsilon = k.hbar * spec.omega;
    if !spec.is_propagating() || spec.real_kz() == 0.0 {
        return GuidedMassReport {
            m0,
            total_rest_mass: None,
            epsilon,
            momentum: None,
            group_velocity: None,
            phase_velocity: None,
            photons: obs.photons,
            identities: None,
        };
    }
    let kz = spec.real_kz();
    let p = k.hbar * kz;
    let vg = c * c * kz / spec.omega;
    let vp = spec.omega / kz;
    let big_m = invariant_mass(obs.energy, obs.momentum_z, c);
    let v = obs.energy_velocity;
    let gamma_inv = ((1.0 - v / c) * (1.0 + v / c)).sqrt();
    let identities = GuidedIdentityResiduals {
        energy_momentum: rel(epsilon * epsilon - p * p * c * c, (m0 * c * c).powi(2)),
        velocity_product: rel(vg * vp, c * c),
        single_energy: rel(m0 * c * c / ((1.0 - vg / c) * (1.0 + vg / c)).sqrt(), epsilon),
        total_energy: rel(big_m * c * c / gamma_inv, obs.energy),
        total_momentum: rel(big_m * v / gamma_inv, obs.momentum_z),
        quanta: obs.photons.integer.map(|n| rel(big_m, n as f64 * m0)),
    };
    GuidedMassReport {
        m0,
        total_rest_mass: Some(big_m),
        epsilon,
        momentum: Some(p),
        group_velocity: Some(vg),
        phase_velocity: Some(vp),
        photons: obs.photons,
        identities: Some(identities),
    }
}

/// `|ω² − c²k_z² − ω_c²| / ω²` for the spec's own axial wavenumber.
pub fn dispersion_residual(spec: &GuidedModeSpec) -> f64 {
    dispersion_residual_with_kz(spec, spec.axial_wavenumber())
}

/// Dispersion residual for an arbitrary (possibly inconsistent) `k_z`.
pub fn dispersion_residual_with_kz(spec: &GuidedModeSpec, kz: C64) -> f64 {
    let c = spec.constants.c;
    let w2 = spec.omega * spec.omega;
    let wc2 = spec.cutoff().powi(2);
    (C64::new(w2 - wc2, 0.0) - kz * kz * (c * c)).norm() / w2
}

/// Fourth-order five-point second derivative.
fn second_derivative(f: impl Fn(f64) -> C64, h: f64) -> C64 {
    (-f(-2.0 * h) + f(-h) * 16.0 - f(0.0) * 30.0 + f(h) * 16.0 - f(2.0 * h)) / (12.0 * h * h)
}

/// Finite-difference Klein–Gordon residual
/// `|(∂_t²/c² − ∂_z² + m0²c²/ħ²) F| / ((ω/c)² |F|)` for the longitudinal
/// field component `F` (E_z for TM, B_z for TE) at `point`, with the field
/// built from axial wavenumber `kz`.
pub fn klein_gordon_stencil_residual_with_kz(spec: &GuidedModeSpec, kz: C64, point: &Point) -> Result<f64> {
    let k = spec.constants;
    let c = k.c;
    let component = |z: f64, t: f64| -> Result<C64> {
        let f = guided_field_phasor_with_kz(spec, kz, &Point::new(point.x, point.y, z), t)?;
        Ok(match spec.index.family {
            Family::TM => f.e.z,
            Family::TE => f.b.z * c,
        })
    };
    let f0 = component(point.z, 0.0)?;
    if f0.norm() == 0.0 {
        return Err(Error::Domain {
            x: point.x,
            y: point.y,
            z: point.z,
            reason: "the longitudinal field vanishes here; pick an interior point off the nodal lines",
        });
    }
    let dt = 1e-3 * std::f64::consts::TAU / spec.omega;
    let kref = if kz.norm() > 0.0 { kz.norm() } else { spec.omega / c };
    let dz = 1e-3 * std::f64::consts::TAU / kref;
    // The closures cannot propagate errors; the domain is validated by `f0`
    // and z/t shifts never leave it.
    let eval = |z: f64, t: f64| component(z, t).unwrap_or(C64::new(f64::NAN, f64::NAN));
    let d2t = second_derivative(|s| eval(point.z, s), dt);
    let d2z = second_derivative(|s| eval(point.z + s, 0.0), dz);
    let mass_term = (k.hbar * spec.cutoff() / (c * c)).powi(2) * c * c / (k.hbar * k.hbar);
    let residual = d2t / (c * c) - d2z + f0 * mass_term;
    Ok(residual.norm() / ((spec.omega / c).powi(2) * f0.norm()))
}

pub fn klein_gordon_stencil_residual(spec: &GuidedModeSpec, point: &Point) -> Result<f64> {
    klein_gordon_stencil_residual_with_kz(spec, spec.axial_wavenumber(), point)
}

/// Minkowski inner product with metric diag(−1, 1, 1, 1).
pub fn minkowski_dot(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
}

/// Orthogonal split of the guided 4-momentum `(ħω/c, ħk_x, ħk_y, ħk_z)` into
/// a transverse part `p_T = (0, ħk_x, ħk_y, 0)` and a longitudinal part
/// `p_L = (ħω/c, 0, 0, ħk_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourMomentumSplit {
    pub total: [f64; 4],
    pub transverse: [f64; 4],
    pub longitudinal: [f64; 4],
}

impl FourMomentumSplit {
    /// `p_L · p_T`; zero by construction.
    pub fn cross_product(&self) -> f64 {
        minkowski_dot(&self.longitudinal, &self.transverse)
    }

    /// Euclidean norm of the transverse part, `ħω_c/c`.
    pub fn transverse_magnitude(&self) -> f64 {
        self.transverse[1].hypot(self.transverse[2])
    }

    /// `√(−p_L·p_L)/c`, the rest mass carried by the longitudinal part.
    pub fn longitudinal_mass(&self, c: f64) -> f64 {
        let l = &self.longitudinal;
        ((l[0] - l[3].abs()) * (l[0] + l[3].abs())).max(0.0).sqrt() / c
    }

    /// The two sides of `p_μ x^μ = p_{Tμ} x_T^μ + p_{Lμ} x_L^μ` at the event
    /// `x = (ct, x, y, z)`, with `x_T = (0, x, y, 0)` and `x_L = (ct, 0, 0, z)`.
    pub fn phase_sides(&self, event: &[f64; 4]) -> (f64, f64) {
        let x_t = [0.0, event[1], event[2], 0.0];
        let x_l = [event[0], 0.0, 0.0, event[3]];
        let lhs = minkowski_dot(&self.total, event);
        let rhs = minkowski_dot(&self.transverse, &x_t) + minkowski_dot(&self.longitudinal, &x_l);
        (lhs, rhs)
    }
}

pub fn four_momentum_split(spec: &GuidedModeSpec) -> Result<FourMomentumSplit> {
    if !spec.is_propagating() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: spec.omega,
            reason: "the 4-momentum split needs a real axial wavenumber (omega above cutoff)",
        });
    }
    let k = spec.constants;
    let (px, py, pz) = (k.hbar * spec.kx(), k.hbar * spec.ky(), k.hbar * spec.real_kz());
    let p0 = k.hbar * spec.omega / k.c;
    Ok(FourMomentumSplit {
        total: [p0, px, py, pz],
        transverse: [0.0, px, py, 0.0],
        longitudinal: [p0, 0.0, 0.0, pz],
    })
}

/// Residuals of the surface-wave mass identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceIdentityResiduals {
    /// `ε² = p²c² + m_s²c⁴` with `p = vħω/c²`
    pub energy_momentum: f64,
    /// `W = M_s c²/√(1 − v²/c²)`
    pub total_energy: f64,
    /// `P_z = M_s v/√(1 − v²/c²)`
    pub total_momentum: f64,
    /// `A ∫ρ0 dx` by quadrature against the closed-form `M_s`
    pub density_integral: f64,
    /// Largest pointwise `|w² − p_z²c² − ρ0²c⁴| / (ρ0²c⁴)` over the sampled depths
    pub pointwise: f64,
    /// `M_s = n m_s`, when the quantum number is an integer.
    pub quanta: Option<f64>,
}

impl SurfaceIdentityResiduals {
    pub fn max(&self) -> f64 {
        [
            self.energy_momentum,
            self.total_energy,
            self.total_momentum,
            self.density_integral,
            self.pointwise,
            self.quanta.unwrap_or(0.0),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMassReport {
    /// Rest-mass density at the interface (kg/m³); decays as `e^{−2κx}`.
    pub rho0_surface: f64,
    pub kappa: f64,
    /// `|k_z| ε0 A h′² / (4ω²)` (kg)
    pub total_rest_mass: f64,
    /// `ħκω/(c²|k_z|)` (kg)
    pub single_rest_mass: f64,
    pub photons: PhotonCount,
    pub identities: SurfaceIdentityResiduals,
}

impl SurfaceMassReport {
    /// `ρ0(x) = (κ|k_z|/2ω²) ε0 h′² e^{−2κx}`.
    pub fn rho0_at(&self, x: f64) -> f64 {
        self.rho0_surface * (-2.0 * self.kappa * x).exp()
    }
}

/// Closed-form rest-mass density at depth `x`.
pub fn surface_rest_mass_density(spec: &SurfaceWaveSpec, x: f64) -> f64 {
    let k = spec.constants;
    let kappa = spec.kappa();
    kappa * spec.kz().abs() / (2.0 * spec.omega * spec.omega)
        * k.eps0
        * spec.amplitude
        * spec.amplitude
        * (-2.0 * kappa * x).exp()
}

pub fn surface_mass_report(spec: &SurfaceWaveSpec, config: &QuadratureConfig) -> Result<SurfaceMassReport> {
    let obs = integrate_surface(spec, config, SpinCombination::Single)?;
    surface_mass_report_from(spec, config, &obs)
}

pub fn surface_mass_report_from(
    spec: &SurfaceWaveSpec,
    config: &QuadratureConfig,
    obs: &SurfaceObservables,
) -> Result<SurfaceMassReport> {
    let k = spec.constants;
    let c = k.c;
    let (kz, kappa, w) = (spec.kz().abs(), spec.kappa(), spec.omega);
    let total_rest_mass = kz * k.eps0 * spec.area * spec.amplitude.powi(2) / (4.0 * w * w);
    let single_rest_mass = k.hbar * kappa * w / (c * c * kz);

    // single quantum
    let v = w / kz;
    let eps = k.hbar * w;
    let p = v * k.hbar * w / (c * c);
    let energy_momentum = rel(eps * eps - p * p * c * c, (single_rest_mass * c * c).powi(2));

    let vt = obs.energy_velocity.abs();
    let gamma_inv = ((1.0 - vt / c) * (1.0 + vt / c)).sqrt();
    let total_energy = rel(total_rest_mass * c * c / gamma_inv, obs.energy);
    let total_momentum = rel(total_rest_mass * vt / gamma_inv, obs.momentum_z.abs());

    let rule = GaussLegendre::new(config.surface_nodes);
    let nodes = rule.composite(0.0, config.surface_depth / kappa, config.surface_panels);
    let mut integral = 0.0;
    let mut pointwise = 0.0f64;
    for (x, wt) in nodes {
        let f = surface_field_phasor(spec, &Point::new(x, 0.0, 0.0), 0.0)?;
        let dens_w = energy_density(&f, &k);
        let dens_p = momentum_density(&f, &k).z;
        let rho = invariant_mass(dens_w, dens_p, c);
        integral += wt * rho;
        let rho_closed = surface_rest_mass_density(spec, x);
        let lhs = (dens_w - dens_p.abs() * c) * (dens_w + dens_p.abs() * c);
        if rho_closed > 0.0 {
            pointwise = pointwise.max(rel(lhs, (rho_closed * c * c).powi(2)));
        }
    }
    let density_integral = rel(integral * spec.area, total_rest_mass);

    Ok(SurfaceMassReport {
        rho0_surface: surface_rest_mass_density(spec, 0.0),
        kappa,
        total_rest_mass,
        single_rest_mass,
        photons: obs.photons,
        identities: SurfaceIdentityResiduals {
            energy_momentum,
            total_energy,
            total_momentum,
            density_integral,
            pointwise,
            quanta: obs.photons.integer.map(|n| rel(total_rest_mass, n as f64 * single_rest_mass)),
        },
    })
}
