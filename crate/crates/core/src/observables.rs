//! Volume and half-space totals: energy, momentum, transverse spin, energy
//! velocity, photon-number quantization and polarization ellipticity.
//!
//! Every total is available twice: as a closed form and as a tensor-product
//! Gauss–Legendre quadrature of the phasor densities. The two routes share no
//! code beyond the phasor fields themselves.
//!
//! # Total transverse spin of a guided mode
//!
//! The spin density of a guided mode integrates to the zero vector over the
//! cross-section (each component carries a full period of `sin(2kx)` or
//! `sin(2ky)`), so the total transverse spin is a magnitude rather than a
//! vector sum. It is defined here as the spin of the equivalent polarization
//! ellipse, `S⊥ = sign(k_z) (ε0 V / ω) h⊥ h_L`, with `h⊥` and `h_L` the
//! root-mean-square transverse and longitudinal amplitudes of the field that
//! carries the spin (E for TM, cB for TE). This gives `S⊥ = (W/ω) sin 2θ`
//! for every mode; the plain L2 norm of the density is kept as a diagnostic
//! ([`transverse_spin_rms_norm`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{guided_field_phasor, surface_field_phasor, FieldPhasor};
use crate::mode::{Family, GuidedModeSpec, SurfaceWaveSpec};
use crate::quadrature::{integrate_box_many, GaussLegendre};
use crate::spin::{energy_density, momentum_density, spin_densities, SpinCombination};
use crate::Point;

/// Node counts for guided volume integrals and the surface half-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Nodes across x; `None` picks [`QuadratureConfig::default_transverse_nodes`].
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    /// Nodes along z. Totals of propagating modes are z-independent, so two
    /// nodes are a guard rather than a requirement.
    pub nz: usize,
    /// Composite panels across the surface-wave depth.
    pub surface_panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub surface_nodes: usize,
    /// Truncation depth in decay lengths `1/κ`.
    pub surface_depth: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nx: None,
            ny: None,
            nz: 2,
            surface_panels: 20,
            surface_nodes: 16,
            surface_depth: 20.0,
        }
    }
}

/// Shallowest truncation, in decay lengths, whose neglected tail
/// `e^{−2·depth}` stays below 1e−12 of the total.
pub const MIN_SURFACE_DEPTH: f64 = 14.0;

impl QuadratureConfig {
    /// Minimum transverse node count: the integrands are trigonometric
    /// polynomials of harmonic order up to `2(m + n)`.
    pub fn minimum_transverse_nodes(spec: &GuidedModeSpec) -> usize {
        2 * (spec.index.m + spec.index.n) as usize + 2
    }

    /// Default transverse node count. Gauss–Legendre is exact for polynomials,
    /// not trigonometric polynomials, so the default sits well above the
    /// minimum to reach round-off accuracy.
    pub fn default_transverse_nodes(spec: &GuidedModeSpec) -> usize {
        16 + 8 * spec.index.m.max(spec.index.n) as usize
    }

    fn guided_nodes(&self, spec: &GuidedModeSpec) -> Result<[usize; 3]> {
        let min = Self::minimum_transverse_nodes(spec);
        let default = Self::default_transverse_nodes(spec);
        let nx = self.nx.unwrap_or(default);
        let ny = self.ny.unwrap_or(default);
        for (axis, got) in [("x", nx), ("y", ny)] {
            if got < min {
                return Err(Error::Resolution {
                    axis,
                    got,
                    suggested: default,
                });
            }
        }
        if self.nz < 1 {
            return Err(Error::Resolution {
                axis: "z",
                got: self.nz,
                suggested: 2,
            });
        }
        Ok([nx, ny, self.nz])
    }

    fn surface_check(&self) -> Result<()> {
        if !(self.surface_depth >= MIN_SURFACE_DEPTH) {
            return Err(Error::Truncation {
                depth: self.surface_depth,
                tail: (-2.0 * self.surface_depth).exp(),
                suggested: 20.0,
            });
        }
        // Each panel should span at most about one decay length.
        let needed = self.surface_depth.ceil() as usize;
        if self.surface_panels < needed {
            return Err(Error::Resolution {
                axis: "x panels",
                got: self.surface_panels,
                suggested: needed,
            });
        }
        if self.surface_nodes < 8 {
            return Err(Error::Resolution {
                axis: "x nodes per panel",
                got: self.surface_nodes,
                suggested: 16,
            });
        }
        Ok(())
    }
}

/// `W / ħω`, with the nearest integer when it is within 1e−6 of one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonCount {
    pub value: f64,
    pub integer: Option<u64>,
}

impl PhotonCount {
    pub fn from_energy(energy: f64, hbar: f64, omega: f64) -> Self {
        let value = energy / (hbar * omega);
        let nearest = value.round();
        let integer = ((value - nearest).abs() <= 1e-6 && nearest >= 0.0).then_some(nearest as u64);
        Self { value, integer }
    }
}

/// Energy (J), axial momentum (kg·m/s) and total transverse spin (J·s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub energy: f64,
    pub momentum_z: f64,
    pub transverse_spin: f64,
}

impl Totals {
    /// Largest relative deviation from `reference`, component by component.
    /// Components whose reference vanishes are compared against the energy
    /// scale `W/ω` (spin) or `W/c` (momentum) supplied by the caller.
    pub fn max_relative_error(&self, reference: &Totals, momentum_scale: f64, spin_scale: f64) -> f64 {
        let rel = |got: f64, want: f64, scale: f64| {
            let denom = if want != 0.0 { want.abs() } else { scale };
            (got - want).abs() / denom
        };
        rel(self.energy, reference.energy, reference.energy.abs())
            .max(rel(self.momentum_z, reference.momentum_z, momentum_scale))
            .max(rel(self.transverse_spin, reference.transverse_spin, spin_scale))
    }
}

/// Which field the ellipticity was measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EllipticitySource {
    /// Electric field of a TM mode, the derived case.
    Electric,
    /// Magnetic field of a TE mode; an extrapolation of the TM argument.
    MagneticExtrapolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipticity {
    /// `h_L / h⊥`
    pub e: f64,
    /// `atan2(h_L, h⊥)`, in [0, π/2].
    pub theta: f64,
    pub h_transverse: f64,
    pub h_longitudinal: f64,
    pub source: EllipticitySource,
}

impl Ellipticity {
    fn from_rms(h_transverse: f64, h_longitudinal: f64, source: EllipticitySource) -> Self {
        let e = if h_transverse > 0.0 {
            h_longitudinal / h_transverse
        } else {
            f64::INFINITY
        };
        Self {
            e,
            theta: h_longitudinal.atan2(h_transverse),
            h_transverse,
            h_longitudinal,
            source,
        }
    }
}

/// Quadrature totals of a guided mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidedObservables {
    pub energy: f64,
    pub momentum_z: f64,
    pub transverse_spin: f64,
    /// `P_z c² / W`
    pub energy_velocity: f64,
    pub ellipticity: Ellipticity,
    pub photons: PhotonCount,
    /// `(ε0/4) ∫ Re(E·E* − c² B·B*) dV`; vanishes for every mode.
    pub balance_residual: f64,
}

impl GuidedObservables {
    pub fn totals(&self) -> Totals {
        Totals {
            energy: self.energy,
            momentum_z: self.momentum_z,
            transverse_spin: self.transverse_spin,
        }
    }
}

/// Volume integrals shared by every guided observable.
#[derive(Debug, Clone, Copy)]
struct GuidedIntegrals {
    energy: f64,
    momentum_z: f64,
    /// ∫|F⊥|² dV and ∫|F_z|² dV for F = E (TM) or cB (TE)
    transverse_sq: f64,
    longitudinal_sq: f64,
    balance: f64,
}

fn guided_integrals(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<GuidedIntegrals> {
    guided_integrals_with(spec, config, |p| guided_field_phasor(spec, p, 0.0))
}

fn guided_integrals_with<F>(spec: &GuidedModeSpec, config: &QuadratureConfig, mut phasor: F) -> Result<GuidedIntegrals>
where
    F: FnMut(&Point) -> Result<FieldPhasor>,
{
    spec.validate()?;
    let [nx, ny, nz] = config.guided_nodes(spec)?;
    let g = spec.geometry;
    let xs = GaussLegendre::new(nx).mapped(0.0, g.a);
    let ys = GaussLegendre::new(ny).mapped(0.0, g.b);
    let zs = GaussLegendre::new(nz).mapped(0.0, g.length);
    let k = spec.constants;
    let c = k.c;
    let family = spec.index.family;

    let mut failure = None;
    let sums = integrate_box_many([&xs, &ys, &zs], |x, y, z| {
        let f = match phasor(&Point::new(x, y, z)) {
            Ok(f) => f,
            Err(e) => {
                failure.get_or_insert(e);
                return [0.0; 5];
            }
        };
        let e2 = f.e.norm_squared();
        let cb2 = c * c * f.b.norm_squared();
        let carrier = match family {
            Family::TM => f.e,
            Family::TE => f.b * crate::C64::new(c, 0.0),
        };
        let long = carrier.z.norm_sqr();
        let trans = carrier.x.norm_sqr() + carrier.y.norm_sqr();
        [
            energy_density(&f, &k),
            momentum_density(&f, &k).z,
            trans,
            long,
            0.25 * k.eps0 * (e2 - cb2),
        ]
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(GuidedIntegrals {
        energy: sums[0],
        momentum_z: sums[1],
        transverse_sq: sums[2],
        longitudinal_sq: sums[3],
        balance: sums[4],
    })
}

fn ellipticity_from(spec: &GuidedModeSpec, ints: &GuidedIntegrals) -> Ellipticity {
    let v = spec.geometry.volume();
    let source = match spec.index.family {
        Family::TM => EllipticitySource::Electric,
        Family::TE => EllipticitySource::MagneticExtrapolation,
    };
    Ellipticity::from_rms((ints.transverse_sq / v).sqrt(), (ints.longitudinal_sq / v).sqrt(), source)
}

fn transverse_spin_from(spec: &GuidedModeSpec, ints: &GuidedIntegrals) -> f64 {
    if !spec.is_propagating() {
        return 0.0;
    }
    let v = spec.geometry.volume();
    let ell = ellipticity_from(spec, ints);
    spec.real_kz().signum() * spec.constants.eps0 * v / spec.omega * ell.h_transverse * ell.h_longitudinal
}

/// Quadrature totals of a guided mode over the full guide volume.
pub fn integrate_guided(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<GuidedObservables> {
    let ints = guided_integrals(spec, config)?;
    let k = spec.constants;
    Ok(GuidedObservables {
        energy: ints.energy,
        momentum_z: ints.momentum_z,
        transverse_spin: transverse_spin_from(spec, &ints),
        energy_velocity: energy_velocity(ints.energy, ints.momentum_z, k.c)?,
        ellipticity: ellipticity_from(spec, &ints),
        photons: PhotonCount::from_energy(ints.energy, k.hbar, spec.omega),
        balance_residual: ints.balance,
    })
}

/// Exact closed-form totals of a propagating guided mode, including the
/// doubled cross-section weight of TE_{m0} modes.
pub fn closed_form_totals(spec: &GuidedModeSpec) -> Totals {
    scale_totals(closed_form_totals_unweighted(spec), spec.index.cross_section_weight())
}

/// Closed-form totals under the `ab/4` cross-section bookkeeping that holds
/// when both mode indices are non-zero:
///
/// ```text
/// W  = ε0 ω² V h² / (8 ω_c²)
/// P_z = ε0 ω k_z V h² / (8 ω_c²)
/// S⊥ = ε0 c k_z V h² / (4 ω_c ω)
/// ```
///
/// For TE_{m0} these are half the true totals; see [`closed_form_totals`].
pub fn closed_form_totals_unweighted(spec: &GuidedModeSpec) -> Totals {
    let k = spec.constants;
    let v = spec.geometry.volume();
    let h2 = spec.amplitude * spec.amplitude;
    let (w, wc, kz) = (spec.omega, spec.cutoff(), spec.real_kz());
    Totals {
        energy: k.eps0 * w * w * v * h2 / (8.0 * wc * wc),
        momentum_z: k.eps0 * w * kz * v * h2 / (8.0 * wc * wc),
        transverse_spin: k.eps0 * k.c * kz * v * h2 / (4.0 * wc * w),
    }
}

fn scale_totals(t: Totals, s: f64) -> Totals {
    Totals {
        energy: t.energy * s,
        momentum_z: t.momentum_z * s,
        transverse_spin: t.transverse_spin * s,
    }
}

/// `v = P_z c² / W`.
pub fn energy_velocity(energy: f64, momentum_z: f64, c: f64) -> Result<f64> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "energy",
            value: energy,
            reason: "energy velocity needs a positive total energy",
        });
    }
    Ok(momentum_z * c * c / energy)
}

fn require_quanta(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n_quanta",
            value: 0.0,
            reason: "amplitude normalization needs at least one quantum",
        });
    }
    Ok(())
}

/// Amplitude `h` for which the guided mode carries energy `nħω`.
pub fn amplitude_for_quanta_guided(n: u64, spec: &GuidedModeSpec) -> Result<f64> {
    require_quanta(n)?;
    let k = spec.constants;
    let (w, wc) = (spec.omega, spec.cutoff());
    let weight = spec.index.cross_section_weight();
    Ok((8.0 * wc * wc * n as f64 * k.hbar * w / (weight * k.eps0 * w * w * spec.geometry.volume())).sqrt())
}

/// `spec` with its amplitude set to hold `n` quanta.
pub fn quantized_guided(n: u64, spec: &GuidedModeSpec) -> Result<GuidedModeSpec> {
    Ok(spec.with_amplitude(amplitude_for_quanta_guided(n, spec)?))
}

/// `±nħ sin 2θ` with `cos θ = |k_z c / ω|`, i.e. `2nħ (v/c) √(1 − v²/c²)`.
/// Zero below cutoff, where the spin density vanishes.
pub fn quantized_transverse_spin_guided(n: u64, spec: &GuidedModeSpec) -> f64 {
    if !spec.is_propagating() {
        return 0.0;
    }
    let beta = spec.real_kz() * spec.constants.c / spec.omega;
    2.0 * n as f64 * spec.constants.hbar * beta * (1.0 - beta * beta).sqrt()
}

/// Closed-form ellipticity angle `θ` with `cos θ = |k_z c / ω|`.
pub fn guided_theta(spec: &GuidedModeSpec) -> f64 {
    spec.cutoff().atan2(spec.real_kz().abs() * spec.constants.c)
}

/// Ellipticity of the electric polarization ellipse of a TM mode, from
/// cross-section RMS amplitudes.
pub fn ellipticity_guided(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<Ellipticity> {
    if spec.index.family == Family::TE {
        return Err(Error::UnsupportedDerivation(
            "guided ellipticity is derived for TM modes; use ellipticity_guided_magnetic for the TE extrapolation",
        ));
    }
    let ints = guided_integrals(spec, config)?;
    Ok(ellipticity_from(spec, &ints))
}

/// The same RMS construction applied to `cB` of a TE mode. Agrees with
/// `|ω_c / k_z c|` but rests on analogy, not derivation.
pub fn ellipticity_guided_magnetic(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<Ellipticity> {
    if spec.index.family == Family::TM {
        return Err(Error::UnsupportedDerivation(
            "TM modes have no longitudinal magnetic field; use ellipticity_guided",
        ));
    }
    let ints = guided_integrals(spec, config)?;
    Ok(ellipticity_from(spec, &ints))
}

/// `(ε0/4) ∫ Re(E·E* − c² B·B*) dV` over the guide.
pub fn balance_integral(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<f64> {
    Ok(guided_integrals(spec, config)?.balance)
}

/// Balance integral with the magnetic field rescaled by `magnetic_scale`,
/// as if E and B were built from different amplitudes. Any scale other
/// than 1 must leave a non-zero residual.
pub fn balance_integral_mismatched(spec: &GuidedModeSpec, magnetic_scale: f64, config: &QuadratureConfig) -> Result<f64> {
    let ints = guided_integrals_with(spec, config, |p| {
        let mut f = guided_field_phasor(spec, p, 0.0)?;
        f.b *= crate::C64::new(magnetic_scale, 0.0);
        Ok(f)
    })?;
    Ok(ints.balance)
}

/// `sqrt(∫ (s_x² + s_y²) dV)` of the family's spin density; a diagnostic,
/// not the total transverse spin.
pub fn transverse_spin_rms_norm(spec: &GuidedModeSpec, config: &QuadratureConfig) -> Result<f64> {
    let [nx, ny, nz] = config.guided_nodes(spec)?;
    let g = spec.geometry;
    let xs = GaussLegendre::new(nx).mapped(0.0, g.a);
    let ys = GaussLegendre::new(ny).mapped(0.0, g.b);
    let zs = GaussLegendre::new(nz).mapped(0.0, g.length);
    let mut failure = None;
    let [sum] = integrate_box_many([&xs, &ys, &zs], |x, y, z| {
        match guided_field_phasor(spec, &Point::new(x, y, z), 0.0) {
            Ok(f) => {
                let s = spin_densities(&f, spec.omega, &spec.constants).total(SpinCombination::Single);
                [s.x * s.x + s.y * s.y]
            }
            Err(e) => {
                failure.get_or_insert(e);
                [0.0]
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(sum.sqrt()),
    }
}

/// Richardson-extrapolated central difference `dω/dk` at `k`; the leading
/// `O(dk²)` truncation term cancels, leaving `O(dk⁴)`.
fn richardson_derivative(omega: impl Fn(f64) -> f64, k: f64, dk: f64) -> f64 {
    let central = |h: f64| (omega(k + h) - omega(k - h)) / (2.0 * h);
    (4.0 * central(0.5 * dk) - central(dk)) / 3.0
}

/// `dω/dk_z` of the guided dispersion by finite differences.
pub fn group_velocity_guided(spec: &GuidedModeSpec) -> Result<f64> {
    if !spec.is_propagating() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: spec.omega,
            reason: "group velocity is defined only above cutoff",
        });
    }
    let c = spec.constants.c;
    let wc = spec.cutoff();
    let kz = spec.real_kz();
    let omega = |k: f64| (wc * wc + c * c * k * k).sqrt();
    let dk = 1e-3 * kz.abs().max(wc / c);
    Ok(richardson_derivative(omega, kz, dk))
}

/// `dω/dk_z` of the surface dispersion at fixed index and incidence angle.
pub fn group_velocity_surface(spec: &SurfaceWaveSpec) -> f64 {
    let s = spec.eta * spec.phi.sin();
    let c = spec.constants.c;
    let omega = |k: f64| k * c / s;
    let kz = spec.kz();
    richardson_derivative(omega, kz, 1e-3 * kz.abs())
}

/// Quadrature totals of a surface wave over `x ∈ [0, depth/κ]` times the
/// transverse area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceObservables {
    pub energy: f64,
    pub momentum_z: f64,
    /// Total spin along y under the requested combination.
    pub spin_y: f64,
    pub combination: SpinCombination,
    pub energy_velocity: f64,
    /// `atan(κ/|k_z|)`, in (0, π/4); the sign of propagation lives in the spec.
    pub theta_prime: f64,
    /// `κ / |k_z|`
    pub ellipticity: f64,
    pub photons: PhotonCount,
}

impl SurfaceObservables {
    pub fn totals(&self) -> Totals {
        Totals {
            energy: self.energy,
            momentum_z: self.momentum_z,
            transverse_spin: self.spin_y,
        }
    }
}

pub fn integrate_surface(
    spec: &SurfaceWaveSpec,
    config: &QuadratureConfig,
    combination: SpinCombination,
) -> Result<SurfaceObservables> {
    spec.validate()?;
    config.surface_check()?;
    let k = spec.constants;
    let kappa = spec.kappa();
    let rule = GaussLegendre::new(config.surface_nodes);
    let xs = rule.composite(0.0, config.surface_depth / kappa, config.surface_panels);
    let (mut w, mut pz, mut sy) = (0.0, 0.0, 0.0);
    for (x, wt) in xs {
        let f = surface_field_phasor(spec, &Point::new(x, 0.0, 0.0), 0.0)?;
        w += wt * energy_density(&f, &k);
        pz += wt * momentum_density(&f, &k).z;
        sy += wt * spin_densities(&f, spec.omega, &k).total(combination).y;
    }
    let area = spec.area;
    let (energy, momentum_z, spin_y) = (w * area, pz * area, sy * area);
    let e = spec.tan_theta_prime();
    Ok(SurfaceObservables {
        energy,
        momentum_z,
        spin_y,
        combination,
        energy_velocity: energy_velocity(energy, momentum_z, k.c)?,
        theta_prime: e.atan(),
        ellipticity: e,
        photons: PhotonCount::from_energy(energy, k.hbar, spec.omega),
    })
}

/// Closed-form half-space totals; `transverse_spin` is `S_y` under the
/// single-family combination.
pub fn closed_form_surface_totals(spec: &SurfaceWaveSpec) -> Totals {
    let k = spec.constants;
    let (kz, kappa, w) = (spec.kz(), spec.kappa(), spec.omega);
    let base = k.eps0 * spec.area * spec.amplitude * spec.amplitude;
    let c2 = k.c * k.c;
    Totals {
        energy: kz * kz * c2 * base / (4.0 * kappa * w * w),
        momentum_z: kz * base / (4.0 * kappa * w),
        transverse_spin: kz * c2 * base / (2.0 * w.powi(3)),
    }
}

/// Amplitude `h′` for which the surface wave carries energy `nħω`.
pub fn amplitude_for_quanta_surface(n: u64, spec: &SurfaceWaveSpec) -> Result<f64> {
    require_quanta(n)?;
    let k = spec.constants;
    let (kz, kappa, w) = (spec.kz(), spec.kappa(), spec.omega);
    Ok((4.0 * kappa * w * w * n as f64 * k.hbar * w / (kz * kz * k.c * k.c * k.eps0 * spec.area)).sqrt())
}

pub fn quantized_surface(n: u64, spec: &SurfaceWaveSpec) -> Result<SurfaceWaveSpec> {
    Ok(spec.with_amplitude(amplitude_for_quanta_surface(n, spec)?))
}

/// `2nħκ/k_z`, halved under the averaged combination.
pub fn quantized_transverse_spin_surface(n: u64, spec: &SurfaceWaveSpec, combination: SpinCombination) -> f64 {
    let full = 2.0 * n as f64 * spec.constants.hbar * spec.kappa() / spec.kz();
    match combination {
        SpinCombination::Single => full,
        SpinCombination::Averaged => 0.5 * full,
    }
}

/// Two candidate closed forms for the axial momentum of `n` surface quanta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMomentumForms {
    /// `(v/c²) nħω = nħω² / (k_z c²)`; the form the quadrature supports.
    pub energy_velocity_form: f64,
    /// `nħk_z`, the guided-wave analogue; differs by `(ω / k_z c)²`.
    pub wavenumber_form: f64,
}

pub fn surface_momentum_forms(n: u64, spec: &SurfaceWaveSpec) -> SurfaceMomentumForms {
    let k = spec.constants;
    let (kz, w) = (spec.kz(), spec.omega);
    let nh = n as f64 * k.hbar;
    SurfaceMomentumForms {
        energy_velocity_form: nh * w * w / (kz * k.c * k.c),
        wavenumber_form: nh * kz,
    }
}

/// `|E_z / E_x|` (TM) or `|B_z / B_x|` (TE) from the phasor at the interface.
pub fn ellipticity_surface(spec: &SurfaceWaveSpec) -> Result<f64> {
    let f = surface_field_phasor(spec, &Point::origin(), 0.0)?;
    Ok(match spec.family {
        Family::TM => f.e.z.norm() / f.e.x.norm(),
        Family::TE => f.b.z.norm() / f.b.x.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::mode::{Direction, ModeIndex, WaveguideGeometry};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    fn guided(family: Family, m: u32, n: u32, ratio: f64, k: PhysicalConstants) -> GuidedModeSpec {
        let g = WaveguideGeometry::new(1.5, 1.0, 2.0).unwrap();
        GuidedModeSpec::at_cutoff_ratio(g, ModeIndex::new(family, m, n).unwrap(), ratio, 0.8, Direction::Forward, k)
            .unwrap()
    }

    fn surface(eta: f64, phi_deg: f64, family: Family, k: PhysicalConstants) -> SurfaceWaveSpec {
        let omega = if k.c == 1.0 { 2.0 } else { 2.0e15 };
        SurfaceWaveSpec::new(family, eta, phi_deg.to_radians(), omega, 1.0, 1e-12, Direction::Forward, k).unwrap()
    }

    #[test]
    fn tm_quadrature_matches_closed_forms() {
        let k = PhysicalConstants::natural();
        for (m, n) in [(1, 1), (2, 1), (2, 2)] {
            for ratio in [1.1, SQRT_2, 2.0] {
                let spec = guided(Family::TM, m, n, ratio, k);
                let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
                let closed = closed_form_totals_unweighted(&spec);
                assert_eq!(closed, closed_form_totals(&spec));
                assert!(obs.totals().max_relative_error(&closed, 0.0, 0.0) < 1e-12, "TM{m}{n} at {ratio}");
            }
        }
    }

    #[test]
    fn te_m0_totals_carry_double_weight() {
        let k = PhysicalConstants::si();
        let spec = guided(Family::TE, 1, 0, 1.7, k);
        let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
        let unweighted = closed_form_totals_unweighted(&spec);
        assert_relative_eq!(obs.energy / unweighted.energy, 2.0, max_relative = 1e-12);
        assert_relative_eq!(obs.momentum_z / unweighted.momentum_z, 2.0, max_relative = 1e-12);
        assert_relative_eq!(obs.transverse_spin / unweighted.transverse_spin, 2.0, max_relative = 1e-12);
        assert!(obs.totals().max_relative_error(&closed_form_totals(&spec), 0.0, 0.0) < 1e-12);
    }

    #[test]
    fn spin_equals_energy_over_omega_times_sin_2theta() {
        let k = PhysicalConstants::natural();
        for fam in [Family::TM, Family::TE] {
            let spec = guided(fam, 2, 1, 1.3, k);
            let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
            let theta = guided_theta(&spec);
            assert_relative_eq!(obs.transverse_spin, obs.energy / spec.omega * (2.0 * theta).sin(), max_relative = 1e-12);
        }
    }

    #[test]
    fn tm11_square_guide_circular_point() {
        let k = PhysicalConstants::natural();
        let g = WaveguideGeometry::new(1.0, 1.0, 1.0).unwrap();
        let spec = GuidedModeSpec::at_cutoff_ratio(g, ModeIndex::tm(1, 1).unwrap(), SQRT_2, 1.0, Direction::Forward, k)
            .unwrap();
        let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(obs.transverse_spin * spec.omega / obs.energy, 1.0, max_relative = 1e-12);
        assert_relative_eq!(obs.ellipticity.e, 1.0, max_relative = 1e-12);
        assert_relative_eq!(obs.ellipticity.theta, FRAC_PI_4, max_relative = 1e-12);
        assert_relative_eq!(obs.energy_velocity, 1.0 / SQRT_2, max_relative = 1e-12);
    }

    #[test]
    fn at_cutoff_spin_and_momentum_vanish() {
        let k = PhysicalConstants::natural();
        let spec = guided(Family::TM, 1, 1, 1.0, k);
        let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
        assert_eq!(obs.transverse_spin, 0.0);
        assert!(obs.momentum_z.abs() < 1e-15 * obs.energy);
        assert!(obs.ellipticity.e.is_infinite());
        assert_relative_eq!(obs.ellipticity.theta, PI / 2.0);
    }

    #[test]
    fn under_resolved_quadrature_is_rejected() {
        let k = PhysicalConstants::natural();
        let spec = guided(Family::TM, 2, 2, 1.5, k);
        let cfg = QuadratureConfig {
            nx: Some(9),
            ..QuadratureConfig::default()
        };
        match integrate_guided(&spec, &cfg) {
            Err(Error::Resolution { axis: "x", got: 9, suggested }) => assert!(suggested >= 10),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quantization_round_trip_and_spin_law() {
        let k = PhysicalConstants::si();
        for n in [1, 3] {
            let spec = quantized_guided(n, &guided(Family::TM, 1, 1, 2.0, k)).unwrap();
            let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
            assert_eq!(obs.photons.integer, Some(n));
            assert_relative_eq!(obs.energy, n as f64 * k.hbar * spec.omega, max_relative = 1e-12);
            assert_relative_eq!(obs.transverse_spin, quantized_transverse_spin_guided(n, &spec), max_relative = 1e-12);
        }
        let base = guided(Family::TE, 1, 0, 1.5, k);
        let h1 = amplitude_for_quanta_guided(1, &base).unwrap();
        let h2 = amplitude_for_quanta_guided(2, &base).unwrap();
        assert_relative_eq!(h2 / h1, SQRT_2, max_relative = 1e-15);
        assert!(amplitude_for_quanta_guided(0, &base).is_err());
    }

    #[test]
    fn quantized_spin_limits() {
        let k = PhysicalConstants::si();
        let circ = guided(Family::TM, 1, 1, SQRT_2, k);
        assert_relative_eq!(quantized_transverse_spin_guided(4, &circ), 4.0 * k.hbar, max_relative = 1e-15);
        assert_eq!(quantized_transverse_spin_guided(4, &guided(Family::TM, 1, 1, 1.0, k)), 0.0);
        let back = circ.with_direction(Direction::Backward);
        assert_relative_eq!(quantized_transverse_spin_guided(4, &back), -4.0 * k.hbar, max_relative = 1e-15);
    }

    #[test]
    fn ellipticity_matches_cutoff_ratio() {
        let k = PhysicalConstants::natural();
        let spec = guided(Family::TM, 2, 1, 1.3, k);
        let e = ellipticity_guided(&spec, &QuadratureConfig::default()).unwrap();
        let expected = spec.cutoff() / (spec.real_kz() * k.c);
        assert!((e.e - expected).abs() < 1e-10);
        assert_eq!(e.source, EllipticitySource::Electric);
        let te = guided(Family::TE, 2, 1, 1.3, k);
        assert!(matches!(
            ellipticity_guided(&te, &QuadratureConfig::default()),
            Err(Error::UnsupportedDerivation(_))
        ));
        let em = ellipticity_guided_magnetic(&te, &QuadratureConfig::default()).unwrap();
        assert!((em.e - expected).abs() < 1e-10);
        assert_eq!(em.source, EllipticitySource::MagneticExtrapolation);
    }

    #[test]
    fn balance_vanishes_and_control_does_not() {
        let k = PhysicalConstants::si();
        for (fam, m, n) in [(Family::TM, 1, 1), (Family::TE, 1, 0)] {
            let spec = guided(fam, m, n, 1.6, k);
            let cfg = QuadratureConfig::default();
            let w = integrate_guided(&spec, &cfg).unwrap().energy;
            assert!(balance_integral(&spec, &cfg).unwrap().abs() <= 1e-12 * w);
            let bad = balance_integral_mismatched(&spec, 1.1, &cfg).unwrap();
            assert!(bad.abs() > 1e-3 * w);
        }
    }

    #[test]
    fn rms_norm_diagnostic_matches_derived_value() {
        let k = PhysicalConstants::natural();
        let spec = guided(Family::TM, 1, 1, 1.8, k);
        let got = transverse_spin_rms_norm(&spec, &QuadratureConfig::default()).unwrap();
        let big_k = spec.real_kz() / (2.0 * k.mu0 * spec.cutoff().powi(2) * spec.omega);
        let want = (3.0 * spec.geometry.volume() / 16.0).sqrt() * spec.cutoff() / k.c * big_k * spec.amplitude.powi(2);
        assert_relative_eq!(got, want, max_relative = 1e-12);
    }

    #[test]
    fn energy_velocity_equals_group_velocity() {
        let k = PhysicalConstants::si();
        let spec = guided(Family::TE, 2, 1, 1.25, k);
        let obs = integrate_guided(&spec, &QuadratureConfig::default()).unwrap();
        let vg = group_velocity_guided(&spec).unwrap();
        assert_relative_eq!(obs.energy_velocity, vg, max_relative = 1e-6);
        let closed = k.c * (1.0 - (spec.cutoff() / spec.omega).powi(2)).sqrt();
        assert_relative_eq!(obs.energy_velocity, closed, max_relative = 1e-12);
        assert!(energy_velocity(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn surface_quadrature_matches_closed_forms() {
        for k in [PhysicalConstants::natural(), PhysicalConstants::si()] {
            for fam in [Family::TM, Family::TE] {
                let spec = surface(1.5, 60.0, fam, k);
                let obs = integrate_surface(&spec, &QuadratureConfig::default(), SpinCombination::Single).unwrap();
                let closed = closed_form_surface_totals(&spec);
                assert!(obs.totals().max_relative_error(&closed, 0.0, 0.0) < 1e-12);
                assert_relative_eq!(obs.energy_velocity, spec.omega / spec.kz(), max_relative = 1e-12);
                assert!(obs.energy_velocity < k.c);
            }
        }
    }

    #[test]
    fn surface_quantization_and_averaged_spin() {
        let k = PhysicalConstants::si();
        let spec = quantized_surface(2, &surface(2.0, 70.0, Family::TM, k)).unwrap();
        let cfg = QuadratureConfig::default();
        let single = integrate_surface(&spec, &cfg, SpinCombination::Single).unwrap();
        let avg = integrate_surface(&spec, &cfg, SpinCombination::Averaged).unwrap();
        assert_eq!(single.photons.integer, Some(2));
        let t = spec.tan_theta_prime();
        assert_relative_eq!(single.spin_y, 4.0 * k.hbar * t, max_relative = 1e-12);
        assert_relative_eq!(avg.spin_y, 2.0 * k.hbar * t, max_relative = 1e-12);
        assert_relative_eq!(
            quantized_transverse_spin_surface(2, &spec, SpinCombination::Averaged),
            avg.spin_y,
            max_relative = 1e-12
        );
        assert_eq!(quantized_transverse_spin_surface(0, &spec, SpinCombination::Single), 0.0);
    }

    #[test]
    fn surface_momentum_follows_energy_velocity_form() {
        let k = PhysicalConstants::si();
        let spec = quantized_surface(1, &surface(1.45, 50.0, Family::TE, k)).unwrap();
        let obs = integrate_surface(&spec, &QuadratureConfig::default(), SpinCombination::Single).unwrap();
        let forms = surface_momentum_forms(1, &spec);
        assert_relative_eq!(obs.momentum_z, forms.energy_velocity_form, max_relative = 1e-12);
        let ratio = forms.energy_velocity_form / forms.wavenumber_form;
        assert_relative_eq!(ratio, (spec.omega / (spec.kz() * k.c)).powi(2), max_relative = 1e-12);
        assert!(ratio < 1.0);
    }

    #[test]
    fn surface_spin_flips_with_direction() {
        let k = PhysicalConstants::natural();
        let spec = surface(1.5, 60.0, Family::TM, k);
        let cfg = QuadratureConfig::default();
        let fwd = integrate_surface(&spec, &cfg, SpinCombination::Single).unwrap();
        let back = integrate_surface(&spec.with_direction(Direction::Backward), &cfg, SpinCombination::Single).unwrap();
        assert_eq!(fwd.spin_y, -back.spin_y);
        assert_eq!(fwd.energy, back.energy);
    }

    #[test]
    fn surface_ellipticity_from_phasors() {
        let k = PhysicalConstants::natural();
        for fam in [Family::TM, Family::TE] {
            let spec = surface(1.5, 60.0, fam, k);
            let e = ellipticity_surface(&spec).unwrap();
            let s = 1.5 * 60f64.to_radians().sin();
            assert_relative_eq!(e, (s * s - 1.0).sqrt() / s, max_relative = 1e-12);
            assert!(e < 1.0);
        }
        assert_relative_eq!(group_velocity_surface(&surface(1.5, 60.0, Family::TM, k)), 1.0 / (1.5 * 60f64.to_radians().sin()), max_relative = 1e-10);
    }

    #[test]
    fn shallow_truncation_is_rejected() {
        let spec = surface(1.5, 60.0, Family::TM, PhysicalConstants::natural());
        let cfg = QuadratureConfig {
            surface_depth: 10.0,
            ..QuadratureConfig::default()
        };
        assert!(matches!(
            integrate_surface(&spec, &cfg, SpinCombination::Single),
            Err(Error::Truncation { .. })
        ));
    }

    #[test]
    fn photon_count_rounding() {
        assert_eq!(PhotonCount::from_energy(3.0000000001, 1.0, 1.0).integer, Some(3));
        assert_eq!(PhotonCount::from_energy(2.5, 1.0, 1.0).integer, None);
    }
}
