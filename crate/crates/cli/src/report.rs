//! JSON observable reports: quadrature totals, their closed forms, the
//! relative residuals between the two, and the mass/kinematics summary.

use serde::Serialize;
use transpin::mass::{guided_mass_report_from, surface_mass_report_from, GuidedMassReport, SurfaceMassReport};
use transpin::observables::{
    closed_form_surface_totals, closed_form_totals, closed_form_totals_unweighted, group_velocity_guided,
    group_velocity_surface, guided_theta, integrate_guided, integrate_surface, surface_momentum_forms,
    transverse_spin_rms_norm, GuidedObservables, QuadratureConfig, SurfaceMomentumForms, SurfaceObservables, Totals,
};
use transpin::{GuidedModeSpec, SpinCombination, SurfaceWaveSpec, UnitSystem};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

/// `|quadrature − closed form| / |closed form|` per total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    pub energy: f64,
    pub momentum_z: f64,
    pub transverse_spin: f64,
}

impl Residuals {
    fn between(quadrature: &Totals, closed: &Totals) -> Self {
        let rel = |q: f64, c: f64| if c == 0.0 { q.abs() } else { (q - c).abs() / c.abs() };
        Self {
            energy: rel(quadrature.energy, closed.energy),
            momentum_z: rel(quadrature.momentum_z, closed.momentum_z),
            transverse_spin: rel(quadrature.transverse_spin, closed.transverse_spin),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuidedReport {
    pub kind: &'static str,
    pub mode: String,
    pub units: UnitSystem,
    pub spec: GuidedModeSpec,
    pub cutoff: f64,
    pub kz: Complex,
    pub propagating: bool,
    /// Ellipticity angle with `cos θ = |k_z c/ω|`.
    pub theta: f64,
    pub group_velocity: Option<f64>,
    pub observables: GuidedObservables,
    /// Quadrature transverse spin in units of ħ.
    #[serde(rename = "S_perp_over_hbar")]
    pub s_perp_over_hbar: f64,
    /// Closed-form totals (propagating modes only).
    pub closed_form: Option<Totals>,
    /// Closed forms without the doubled TE_{m0} cross-section weight.
    pub closed_form_unweighted: Option<Totals>,
    pub residuals: Option<Residuals>,
    /// RMS norm of the transverse-spin density over the volume (diagnostic).
    pub transverse_spin_rms_norm: f64,
    pub mass: GuidedMassReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceReport {
    pub kind: &'static str,
    pub family: String,
    pub units: UnitSystem,
    pub spec: SurfaceWaveSpec,
    pub kappa: f64,
    pub kz: f64,
    /// `κ / k_z`
    pub tan_theta_prime: f64,
    pub group_velocity: f64,
    pub observables: SurfaceObservables,
    /// Quadrature `S_y` in units of ħ.
    #[serde(rename = "S_y_over_hbar")]
    pub s_y_over_hbar: f64,
    /// Closed-form totals; the spin entry follows the chosen combination.
    pub closed_form: Totals,
    pub residuals: Residuals,
    /// The two candidate per-quantum momentum forms, when the photon
    /// number is an integer.
    pub momentum_forms: Option<SurfaceMomentumForms>,
    pub mass: SurfaceMassReport,
}

pub fn guided_report(spec: &GuidedModeSpec, units: UnitSystem, quadrature: &QuadratureConfig) -> CliResult<GuidedReport> {
    let obs = integrate_guided(spec, quadrature)?;
    let propagating = spec.is_propagating();
    let closed = propagating.then(|| closed_form_totals(spec));
    let kz = spec.axial_wavenumber();
    Ok(GuidedReport {
        kind: "guided",
        mode: format!("{}{}{}", spec.index.family, spec.index.m, spec.index.n),
        units,
        spec: *spec,
        cutoff: spec.cutoff(),
        kz: Complex { re: kz.re, im: kz.im },
        propagating,
        theta: guided_theta(spec),
        group_velocity: group_velocity_guided(spec).ok(),
        observables: obs,
        s_perp_over_hbar: obs.transverse_spin / spec.constants.hbar,
        closed_form: closed,
        closed_form_unweighted: propagating.then(|| closed_form_totals_unweighted(spec)),
        residuals: closed.map(|c| Residuals::between(&obs.totals(), &c)),
        transverse_spin_rms_norm: transverse_spin_rms_norm(spec, quadrature)?,
        mass: guided_mass_report_from(spec, &obs),
    })
}

pub fn surface_report(
    spec: &SurfaceWaveSpec,
    units: UnitSystem,
    quadrature: &QuadratureConfig,
    combination: SpinCombination,
) -> CliResult<SurfaceReport> {
    let obs = integrate_surface(spec, quadrature, combination)?;
    let mut closed = closed_form_surface_totals(spec);
    if combination == SpinCombination::Averaged {
        // a single family carries spin in one part only
        closed.transverse_spin *= 0.5;
    }
    Ok(SurfaceReport {
        kind: "surface",
        family: spec.family.to_string(),
        units,
        spec: *spec,
        kappa: spec.kappa(),
        kz: spec.kz(),
        tan_theta_prime: spec.tan_theta_prime(),
        group_velocity: group_velocity_surface(spec),
        observables: obs,
        s_y_over_hbar: obs.spin_y / spec.constants.hbar,
        closed_form: closed,
        residuals: Residuals::between(&obs.totals(), &closed),
        momentum_forms: obs.photons.integer.filter(|&n| n > 0).map(|n| surface_momentum_forms(n, spec)),
        mass: surface_mass_report_from(spec, quadrature, &obs)?,
    })
}
