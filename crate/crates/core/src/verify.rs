//! Catalogue of named numerical cross-checks.
//!
//! Every closed form in the crate is compared against an independent route
//! (quadrature, brute-force time averaging, finite differences, matrix
//! algebra). Checks are built lazily: the catalogue holds closures and a
//! check does no work until it is run. Names are `group/what/instance`, and
//! filtering is a plain substring match on the name.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    build_spin_matrices, closure_ranks, commutator, commutator_table, decompose_polarization, helicity_eigensystem,
    levi_civita, test_directions, CMat3, CMat6, CommutatorTable, SixSpinor, GENERATORS,
};
use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::fields::{
    guided_field_phasor, maxwell_residuals, maxwell_residuals_relative_to, surface_field_phasor, wall_boundary_residual,
};
use crate::mass::{
    dispersion_residual, dispersion_residual_with_kz, four_momentum_split, guided_mass_report,
    klein_gordon_stencil_residual, klein_gordon_stencil_residual_with_kz, surface_mass_report,
};
use crate::mode::{Direction, Family, GuidedModeSpec, ModeIndex, SurfaceWaveSpec, WaveguideGeometry};
use crate::observables::{
    balance_integral, balance_integral_mismatched, closed_form_surface_totals, closed_form_totals,
    closed_form_totals_unweighted, ellipticity_guided, ellipticity_guided_magnetic, ellipticity_surface,
    group_velocity_guided, group_velocity_surface, guided_theta, integrate_guided, integrate_surface,
    quantized_guided, quantized_surface, quantized_transverse_spin_guided, quantized_transverse_spin_surface,
    surface_momentum_forms, transverse_spin_rms_norm, QuadratureConfig,
};
use crate::spin::{
    analytic_spin_guided, analytic_spin_surface, energy_density, instantaneous_densities, spin_densities,
    spin_density_scale, time_average, SpinCombination, SpinDensityPair,
};
use crate::{CVec3, Point, Vec3, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Guided,
    Surface,
    Mass,
    Algebra,
    Oracle,
    Resolution,
    Fault,
}

impl Group {
    pub fn as_str(self) -> &'static str {
        match self {
            Group::Guided => "guided",
            Group::Surface => "surface",
            Group::Mass => "mass",
            Group::Algebra => "algebra",
            Group::Oracle => "oracle",
            Group::Resolution => "resolution",
            Group::Fault => "fault",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether the residual must stay below or reach the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    AtMost,
    /// Negative controls: the residual must be at least the tolerance.
    AtLeast,
}

/// What a check measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub expected: f64,
    pub actual: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Measurement {
    /// `|actual − expected| / |expected|` (absolute when `expected` is 0).
    pub fn relative(actual: f64, expected: f64, tolerance: f64) -> Self {
        let residual = if expected == 0.0 {
            actual.abs()
        } else {
            (actual - expected).abs() / expected.abs()
        };
        Self {
            expected,
            actual,
            residual,
            tolerance,
            bound: Bound::AtMost,
        }
    }

    /// A residual that should vanish.
    pub fn residual(residual: f64, tolerance: f64) -> Self {
        Self {
            expected: 0.0,
            actual: residual,
            residual: residual.abs(),
            tolerance,
            bound: Bound::AtMost,
        }
    }

    /// A negative control: `value` must reach `floor`.
    pub fn at_least(value: f64, floor: f64) -> Self {
        Self {
            expected: floor,
            actual: value,
            residual: value.abs(),
            tolerance: floor,
            bound: Bound::AtLeast,
        }
    }

    /// A boolean property.
    pub fn flag(ok: bool) -> Self {
        Self {
            expected: 1.0,
            actual: if ok { 1.0 } else { 0.0 },
            residual: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            bound: Bound::AtMost,
        }
    }

    /// Exact equality of two integers (ranks, counts).
    pub fn exact(actual: f64, expected: f64) -> Self {
        Self {
            expected,
            actual,
            residual: (actual - expected).abs(),
            tolerance: 0.0,
            bound: Bound::AtMost,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.residual.is_finite() && self.residual <= self.tolerance,
            Bound::AtLeast => self.residual.is_finite() && self.residual >= self.tolerance,
        }
    }

    /// Keep whichever of two measurements is closer to failing.
    pub fn worst(self, other: Self) -> Self {
        let margin = |m: &Self| match m.bound {
            _ if !m.residual.is_finite() => f64::INFINITY,
            Bound::AtMost if m.tolerance > 0.0 => m.residual / m.tolerance,
            Bound::AtMost => {
                if m.residual > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            Bound::AtLeast => m.tolerance / m.residual.max(f64::MIN_POSITIVE),
        };
        if margin(&other) > margin(&self) {
            other
        } else {
            self
        }
    }
}

type CheckFn = Box<dyn Fn() -> Result<Measurement> + Send + Sync>;

/// A named, lazily evaluated check.
pub struct Check {
    pub name: String,
    pub group: Group,
    run: CheckFn,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("name", &self.name).field("group", &self.group).finish()
    }
}

impl Check {
    pub fn new(group: Group, name: impl Into<String>, run: impl Fn() -> Result<Measurement> + Send + Sync + 'static) -> Self {
        Self {
            name: format!("{}/{}", group, name.into()),
            group,
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> CheckOutcome {
        let result = (self.run)();
        let (passed, measurement, error) = match result {
            Ok(m) => (m.passed(), Some(m), None),
            Err(e) => (false, None, Some(e.to_string())),
        };
        CheckOutcome {
            name: self.name.clone(),
            group: self.group,
            passed,
            measurement,
            error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub group: Group,
    pub passed: bool,
    pub measurement: Option<Measurement>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CatalogueOptions {
    /// Append a check that always fails, to exercise the failure path.
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }
}

/// Run every check whose name contains `filter` (all when `None`), in
/// parallel, returning outcomes in catalogue order. An injected fault runs
/// regardless of the filter.
pub fn run_checks(filter: Option<&str>, options: CatalogueOptions) -> VerifyReport {
    let checks: Vec<Check> = catalogue(options)
        .into_iter()
        .filter(|c| c.group == Group::Fault || filter.is_none_or(|f| c.name.contains(f)))
        .collect();
    VerifyReport {
        outcomes: checks.par_iter().map(Check::run).collect(),
    }
}

// ---------------------------------------------------------------------------
// Shared test configurations

/// X-band guide, SI units.
pub fn reference_geometry() -> WaveguideGeometry {
    WaveguideGeometry {
        a: 0.02286,
        b: 0.01016,
        length: 0.05,
    }
}

/// Modes covered by the guided checks.
pub const GUIDED_MODES: [(Family, u32, u32); 6] = [
    (Family::TM, 1, 1),
    (Family::TM, 2, 1),
    (Family::TM, 2, 2),
    (Family::TE, 1, 0),
    (Family::TE, 1, 1),
    (Family::TE, 2, 1),
];

/// Frequencies, as multiples of cutoff, covered by the guided checks.
pub const GUIDED_RATIOS: [f64; 3] = [1.1, SQRT_2, 2.0];

/// (η, φ in degrees) pairs covered by the surface checks.
pub const SURFACE_CASES: [(f64, f64); 4] = [(1.45, 50.0), (1.45, 70.0), (2.0, 50.0), (2.0, 70.0)];

pub fn reference_guided(family: Family, m: u32, n: u32, ratio: f64, direction: Direction) -> Result<GuidedModeSpec> {
    let index = ModeIndex::new(family, m, n)?;
    GuidedModeSpec::at_cutoff_ratio(reference_geometry(), index, ratio, 1.0e3, direction, PhysicalConstants::si())
}

/// Visible-light surface wave (λ = 633 nm) over a 1 µm² area.
pub fn reference_surface(family: Family, eta: f64, phi_deg: f64, direction: Direction) -> Result<SurfaceWaveSpec> {
    let k = PhysicalConstants::si();
    let omega = 2.0 * PI * k.c / 633e-9;
    SurfaceWaveSpec::new(family, eta, phi_deg.to_radians(), omega, 1.0e3, 1e-12, direction, k)
}

fn ratio_label(r: f64) -> String {
    if (r - SQRT_2).abs() < 1e-15 {
        "sqrt2".to_string()
    } else {
        format!("{r}")
    }
}

fn mode_label(family: Family, m: u32, n: u32) -> String {
    format!("{family}{m}{n}")
}

fn surface_label(family: Family, eta: f64, phi: f64) -> String {
    format!("{family}/eta={eta}/phi={phi}")
}

/// Quasi-random interior sample points of the cross-section. The sequence
/// skips its starting point, the centre, which lies on nodal lines of many
/// modes.
pub fn guided_sample_points(spec: &GuidedModeSpec, count: usize) -> Vec<Point> {
    let g = spec.geometry;
    (0..count)
        .map(|k| {
            // Weyl sequence on (0,1)²
            let j = (k + 1) as f64;
            let u = (0.5 + j * 0.618_033_988_749_895) % 1.0;
            let v = (0.5 + j * 0.414_213_562_373_095) % 1.0;
            let w = (0.5 + j * 0.732_050_807_568_877) % 1.0;
            Point::new(g.a * (0.05 + 0.9 * u), g.b * (0.05 + 0.9 * v), g.length * w)
        })
        .collect()
}

/// Uniform `side × side` grid of cell-centred points.
pub fn guided_grid_points(spec: &GuidedModeSpec, side: usize, z: f64) -> Vec<Point> {
    let g = spec.geometry;
    let mut pts = Vec::with_capacity(side * side);
    for j in 0..side {
        for i in 0..side {
            pts.push(Point::new(
                g.a * (i as f64 + 0.5) / side as f64,
                g.b * (j as f64 + 0.5) / side as f64,
                z,
            ));
        }
    }
    pts
}

/// Largest `|E| + c|B|` over a fine grid of the cross-section at `z`.
fn peak_field(spec: &GuidedModeSpec, z: f64, t: f64) -> Result<f64> {
    let c = spec.constants.c;
    guided_grid_points(spec, 24, z).iter().try_fold(0.0f64, |acc, p| {
        let f = guided_field_phasor(spec, p, t)?;
        Ok(acc.max(f.e.norm() + c * f.b.norm()))
    })
}

fn surface_depths(spec: &SurfaceWaveSpec, count: usize) -> Vec<f64> {
    (0..count).map(|k| k as f64 * 0.5 / spec.kappa()).collect()
}

fn pair_residual(a: &SpinDensityPair, b: &SpinDensityPair, scale: f64) -> f64 {
    a.max_abs_diff(b) / scale
}

/// Machine-precision bound for wall boundary conditions, relative to the peak field.
pub const WALL_TOLERANCE: f64 = 16.0 * f64::EPSILON;

// ---------------------------------------------------------------------------
// Catalogue

pub fn catalogue(options: CatalogueOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    guided_checks(&mut checks);
    surface_checks(&mut checks);
    mass_checks(&mut checks);
    algebra_checks(&mut checks);
    oracle_checks(&mut checks);
    resolution_checks(&mut checks);
    if options.inject_fault {
        checks.push(Check::new(Group::Fault, "injected", || {
            Ok(Measurement::relative(1.0, 2.0, 1e-12))
        }));
    }
    checks
}

fn guided_checks(out: &mut Vec<Check>) {
    let cfg = QuadratureConfig::default();
    for (fam, m, n) in GUIDED_MODES {
        let mode = mode_label(fam, m, n);
        for ratio in GUIDED_RATIOS {
            let at = format!("{mode}@{}", ratio_label(ratio));
            out.push(Check::new(Group::Guided, format!("totals/{at}"), move || {
                let spec = reference_guided(fam, m, n, ratio, Direction::Forward)?;
                let obs = integrate_guided(&spec, &cfg)?;
                let closed = closed_form_totals(&spec);
                let mut worst = Measurement::relative(obs.energy, closed.energy, 1e-9);
                worst = worst.worst(Measurement::relative(obs.momentum_z, closed.momentum_z, 1e-9));
                Ok(worst.worst(Measurement::relative(obs.transverse_spin, closed.transverse_spin, 1e-9)))
            }));
            out.push(Check::new(Group::Guided, format!("balance/{at}"), move || {
                let spec = reference_guided(fam, m, n, ratio, Direction::Forward)?;
                let w = integrate_guided(&spec, &cfg)?.energy;
                Ok(Measurement::residual(balance_integral(&spec, &cfg)? / w, 1e-12))
            }));
            out.push(Check::new(Group::Guided, format!("structural-zeros/{at}"), move || {
                let spec = reference_guided(fam, m, n, ratio, Direction::Forward)?;
                structural_zeros_guided(&spec)
            }));
        }
        out.push(Check::new(Group::Guided, format!("structural-zeros/{mode}@0.7-evanescent"), move || {
            let spec = reference_guided(fam, m, n, 0.7, Direction::Forward)?;
            structural_zeros_guided(&spec)
        }));
        out.push(Check::new(Group::Guided, format!("pipeline/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.6, Direction::Forward)?;
            let mut worst = Measurement::residual(0.0, 1e-12);
            for p in guided_grid_points(&spec, 4, 0.3 * spec.geometry.length) {
                let f = guided_field_phasor(&spec, &p, 1e-11)?;
                let pipe = spin_densities(&f, spec.omega, &spec.constants);
                let closed = analytic_spin_guided(&spec, &p)?;
                let scale = spin_density_scale(&f, spec.omega, &spec.constants);
                worst = worst.worst(Measurement::residual(pair_residual(&pipe, &closed, scale), 1e-12));
            }
            Ok(worst)
        }));
        out.push(Check::new(Group::Guided, format!("locking/{mode}"), move || {
            let fwd = reference_guided(fam, m, n, 1.6, Direction::Forward)?;
            let back = fwd.with_direction(Direction::Backward);
            let mut worst = Measurement::residual(0.0, 1e-15);
            for p in guided_grid_points(&fwd, 4, 0.0) {
                let f = guided_field_phasor(&fwd, &p, 0.0)?;
                let sf = spin_densities(&f, fwd.omega, &fwd.constants);
                let sb = spin_densities(&guided_field_phasor(&back, &p, 0.0)?, back.omega, &back.constants);
                let scale = spin_density_scale(&f, fwd.omega, &fwd.constants);
                worst = worst.worst(Measurement::residual(pair_residual(&sb, &sf.negated(), scale), 1e-15));
                let af = analytic_spin_guided(&fwd, &p)?;
                let ab = analytic_spin_guided(&back, &p)?;
                worst = worst.worst(Measurement::flag(ab == af.negated()));
            }
            Ok(worst)
        }));
        out.push(Check::new(Group::Guided, format!("maxwell/{mode}"), move || {
            let mut worst = Measurement::residual(0.0, 1e-8);
            for ratio in [0.7, 1.3, 2.0] {
                let spec = reference_guided(fam, m, n, ratio, Direction::Forward)?;
                let t = 0.2 / spec.omega;
                for p in guided_sample_points(&spec, 4) {
                    // relative to the peak field of this cross-section: sample
                    // points may sit on nodal lines where the local field is zero
                    let peak = peak_field(&spec, p.z, t)?;
                    let r = maxwell_residuals_relative_to(&spec, &p, t, peak)?;
                    worst = worst.worst(Measurement::residual(r.max(), 1e-8));
                }
            }
            Ok(worst)
        }));
        out.push(Check::new(Group::Guided, format!("walls/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.5, Direction::Forward)?;
            // machine precision: sin(mπ) rounds to ~m·1e-16, amplified by a few ulps
            Ok(Measurement::residual(wall_boundary_residual(&spec, 16, 0.01, 0.0)?, WALL_TOLERANCE))
        }));
        out.push(Check::new(Group::Guided, format!("velocity-duality/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.3, Direction::Forward)?;
            let obs = integrate_guided(&spec, &cfg)?;
            Ok(Measurement::relative(obs.energy_velocity, group_velocity_guided(&spec)?, 1e-6))
        }));
        out.push(Check::new(Group::Guided, format!("spin-sin2theta/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.7, Direction::Forward)?;
            let obs = integrate_guided(&spec, &cfg)?;
            let want = obs.energy / spec.omega * (2.0 * guided_theta(&spec)).sin();
            Ok(Measurement::relative(obs.transverse_spin, want, 1e-9))
        }));
        out.push(Check::new(Group::Guided, format!("cutoff-extinction/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.0, Direction::Forward)?;
            let obs = integrate_guided(&spec, &cfg)?;
            Ok(Measurement::residual(obs.transverse_spin.abs() + obs.momentum_z.abs() * spec.constants.c / obs.energy, 1e-15))
        }));
    }
    for (fam, m, n) in [(Family::TM, 1, 1), (Family::TE, 1, 0), (Family::TE, 2, 1)] {
        let mode = mode_label(fam, m, n);
        for quanta in [1u64, 2, 5] {
            for ratio in [1.1, SQRT_2, 2.0, 5.0] {
                out.push(Check::new(
                    Group::Guided,
                    format!("quantized-spin/{mode}/n={quanta}@{}", ratio_label(ratio)),
                    move || {
                        let spec = quantized_guided(quanta, &reference_guided(fam, m, n, ratio, Direction::Forward)?)?;
                        let obs = integrate_guided(&spec, &cfg)?;
                        let theta = guided_theta(&spec);
                        let want = quanta as f64 * spec.constants.hbar * (2.0 * theta).sin();
                        let law = Measurement::relative(obs.transverse_spin, want, 1e-9);
                        Ok(law.worst(Measurement::relative(quantized_transverse_spin_guided(quanta, &spec), want, 1e-12)))
                    },
                ));
            }
        }
        out.push(Check::new(Group::Guided, format!("circular-spin/{mode}"), move || {
            let spec = quantized_guided(3, &reference_guided(fam, m, n, SQRT_2, Direction::Backward)?)?;
            let obs = integrate_guided(&spec, &cfg)?;
            Ok(Measurement::relative(obs.transverse_spin, -3.0 * spec.constants.hbar, 1e-9))
        }));
        out.push(Check::new(Group::Guided, format!("spin-maximum-at-sqrt2/{mode}"), move || {
            let spin = |r: f64| -> Result<f64> {
                let spec = quantized_guided(1, &reference_guided(fam, m, n, r, Direction::Forward)?)?;
                Ok(integrate_guided(&spec, &cfg)?.transverse_spin)
            };
            let peak = spin(SQRT_2)?;
            let mut ok = true;
            for r in [1.0001, 1.2, 1.4, 1.43, 2.0, 10.0, 1e3] {
                ok &= spin(r)? < peak;
            }
            ok &= spin(1.000_000_01)? < 1e-3 * peak && spin(1e4)? < 1e-3 * peak;
            Ok(Measurement::flag(ok))
        }));
    }
    out.push(Check::new(Group::Guided, "ellipticity/TM21@1.3", move || {
        let spec = reference_guided(Family::TM, 2, 1, 1.3, Direction::Forward)?;
        let e = ellipticity_guided(&spec, &cfg)?;
        let want = spec.cutoff() / (spec.real_kz() * spec.constants.c);
        Ok(Measurement::residual(e.e - want, 1e-10))
    }));
    out.push(Check::new(Group::Guided, "ellipticity/TM11@sqrt2", move || {
        let spec = reference_guided(Family::TM, 1, 1, SQRT_2, Direction::Forward)?;
        let e = ellipticity_guided(&spec, &cfg)?;
        Ok(Measurement::residual(e.e - 1.0, 1e-10).worst(Measurement::residual(e.theta - PI / 4.0, 1e-10)))
    }));
    out.push(Check::new(Group::Guided, "ellipticity-magnetic-extrapolation/TE21@1.3", move || {
        let spec = reference_guided(Family::TE, 2, 1, 1.3, Direction::Forward)?;
        let e = ellipticity_guided_magnetic(&spec, &cfg)?;
        let want = spec.cutoff() / (spec.real_kz() * spec.constants.c);
        Ok(Measurement::residual(e.e - want, 1e-10))
    }));
    out.push(Check::new(Group::Guided, "balance-control/TM11", move || {
        let spec = reference_guided(Family::TM, 1, 1, 1.5, Direction::Forward)?;
        let w = integrate_guided(&spec, &cfg)?.energy;
        Ok(Measurement::at_least(balance_integral_mismatched(&spec, 1.05, &cfg)?.abs() / w, 1e-3))
    }));
}

fn structural_zeros_guided(spec: &GuidedModeSpec) -> Result<Measurement> {
    let mut worst = Measurement::residual(0.0, 1e-15);
    for p in guided_sample_points(spec, 8) {
        let f = guided_field_phasor(spec, &p, 0.37 / spec.omega)?;
        let s = spin_densities(&f, spec.omega, &spec.constants);
        let scale = spin_density_scale(&f, spec.omega, &spec.constants);
        let mut zero = s.electric.z.abs().max(s.magnetic.z.abs());
        match spec.index.family {
            Family::TM => zero = zero.max(s.magnetic.amax()),
            Family::TE => zero = zero.max(s.electric.amax()),
        }
        if !spec.is_propagating() {
            zero = zero.max(s.max_abs());
        }
        worst = worst.worst(Measurement::residual(zero / scale, 1e-15));
    }
    Ok(worst)
}

fn surface_checks(out: &mut Vec<Check>) {
    let cfg = QuadratureConfig::default();
    for fam in [Family::TM, Family::TE] {
        for (eta, phi) in SURFACE_CASES {
            let label = surface_label(fam, eta, phi);
            out.push(Check::new(Group::Surface, format!("totals/{label}"), move || {
                let spec = reference_surface(fam, eta, phi, Direction::Forward)?;
                let obs = integrate_surface(&spec, &cfg, SpinCombination::Single)?;
                let closed = closed_form_surface_totals(&spec);
                let mut worst = Measurement::relative(obs.energy, closed.energy, 1e-9);
                worst = worst.worst(Measurement::relative(obs.momentum_z, closed.momentum_z, 1e-9));
                Ok(worst.worst(Measurement::relative(obs.spin_y, closed.transverse_spin, 1e-9)))
            }));
            for quanta in [1u64, 3] {
                out.push(Check::new(Group::Surface, format!("quantized-spin/{label}/n={quanta}"), move || {
                    let spec = quantized_surface(quanta, &reference_surface(fam, eta, phi, Direction::Forward)?)?;
                    let obs = integrate_surface(&spec, &cfg, SpinCombination::Single)?;
                    let want = 2.0 * quanta as f64 * spec.constants.hbar * spec.tan_theta_prime();
                    let m = Measurement::relative(obs.spin_y, want, 1e-9);
                    Ok(m.worst(Measurement::relative(quantized_transverse_spin_surface(quanta, &spec, SpinCombination::Single), want, 1e-12)))
                }));
            }
            out.push(Check::new(Group::Surface, format!("averaged-spin/{label}"), move || {
                let spec = quantized_surface(2, &reference_surface(fam, eta, phi, Direction::Forward)?)?;
                let obs = integrate_surface(&spec, &cfg, SpinCombination::Averaged)?;
                Ok(Measurement::relative(obs.spin_y, 2.0 * spec.constants.hbar * spec.tan_theta_prime(), 1e-9))
            }));
            out.push(Check::new(Group::Surface, format!("energy-quanta/{label}"), move || {
                let spec = quantized_surface(1, &reference_surface(fam, eta, phi, Direction::Forward)?)?;
                let obs = integrate_surface(&spec, &cfg, SpinCombination::Single)?;
                Ok(Measurement::relative(obs.energy, spec.constants.hbar * spec.omega, 1e-9))
            }));
            out.push(Check::new(Group::Surface, format!("pipeline/{label}"), move || {
                let spec = reference_surface(fam, eta, phi, Direction::Forward)?;
                let mut worst = Measurement::residual(0.0, 1e-12);
                for x in surface_depths(&spec, 8) {
                    let f = surface_field_phasor(&spec, &Point::new(x, 0.1e-6, 0.2e-6), 1e-16)?;
                    let pipe = spin_densities(&f, spec.omega, &spec.constants);
                    let closed = analytic_spin_surface(&spec, x)?;
                    let scale = spin_density_scale(&f, spec.omega, &spec.constants);
                    worst = worst.worst(Measurement::residual(pair_residual(&pipe, &closed, scale), 1e-12));
                }
                Ok(worst)
            }));
            out.push(Check::new(Group::Surface, format!("structural-zeros/{label}"), move || {
                let spec = reference_surface(fam, eta, phi, Direction::Forward)?;
                let mut worst = Measurement::residual(0.0, 1e-15);
                for x in surface_depths(&spec, 8) {
                    let f = surface_field_phasor(&spec, &Point::new(x, 0.0, 0.3e-6), 0.7 / spec.omega)?;
                    let s = spin_densities(&f, spec.omega, &spec.constants);
                    let scale = spin_density_scale(&f, spec.omega, &spec.constants);
                    let other = match fam {
                        Family::TM => s.magnetic.amax(),
                        Family::TE => s.electric.amax(),
                    };
                    let zero = s.electric.z.abs().max(s.magnetic.z.abs()).max(s.electric.x.abs()).max(s.magnetic.x.abs()).max(other);
                    worst = worst.worst(Measurement::residual(zero / scale, 1e-15));
                }
                Ok(worst)
            }));
            out.push(Check::new(Group::Surface, format!("locking/{label}"), move || {
                let fwd = reference_surface(fam, eta, phi, Direction::Forward)?;
                let back = fwd.with_direction(Direction::Backward);
                let mut worst = Measurement::residual(0.0, 1e-15);
                for x in surface_depths(&fwd, 8) {
                    let p = Point::new(x, 0.0, 0.0);
                    let f = surface_field_phasor(&fwd, &p, 0.0)?;
                    let sf = spin_densities(&f, fwd.omega, &fwd.constants);
                    let sb = spin_densities(&surface_field_phasor(&back, &p, 0.0)?, back.omega, &back.constants);
                    let scale = spin_density_scale(&f, fwd.omega, &fwd.constants);
                    worst = worst.worst(Measurement::residual(pair_residual(&sb, &sf.negated(), scale), 1e-15));
                }
                let tf = integrate_surface(&fwd, &cfg, SpinCombination::Single)?.spin_y;
                let tb = integrate_surface(&back, &cfg, SpinCombination::Single)?.spin_y;
                Ok(worst.worst(Measurement::relative(tb, -tf, 1e-15)))
            }));
            out.push(Check::new(Group::Surface, format!("maxwell/{label}"), move || {
                let mut worst = Measurement::residual(0.0, 1e-8);
                for dir in [Direction::Forward, Direction::Backward] {
                    let spec = reference_surface(fam, eta, phi, dir)?;
                    for x in [0.3, 1.0, 2.5] {
                        let p = Point::new(x / spec.kappa(), 0.1e-6, 0.2e-6);
                        worst = worst.worst(Measurement::residual(maxwell_residuals(&spec, &p, 0.1 / spec.omega)?.max(), 1e-8));
                    }
                }
                Ok(worst)
            }));
            out.push(Check::new(Group::Surface, format!("ellipticity/{label}"), move || {
                let spec = reference_surface(fam, eta, phi, Direction::Forward)?;
                let s = eta * phi.to_radians().sin();
                let want = (s * s - 1.0).sqrt() / s;
                let e = ellipticity_surface(&spec)?;
                Ok(Measurement::relative(e, want, 1e-12).worst(Measurement::flag(e < 1.0)))
            }));
            out.push(Check::new(Group::Surface, format!("velocity/{label}"), move || {
                let spec = reference_surface(fam, eta, phi, Direction::Forward)?;
                let obs = integrate_surface(&spec, &cfg, SpinCombination::Single)?;
                let c = spec.constants.c;
                let closed = c * (1.0 - spec.tan_theta_prime().powi(2)).sqrt();
                let m = Measurement::relative(obs.energy_velocity, closed, 1e-9)
                    .worst(Measurement::relative(obs.energy_velocity, group_velocity_surface(&spec), 1e-6));
                let positive_mass = obs.energy.powi(2) - (obs.momentum_z * c).powi(2) > 0.0;
                Ok(m.worst(Measurement::flag(obs.energy_velocity < c && positive_mass)))
            }));
        }
    }
}

fn mass_checks(out: &mut Vec<Check>) {
    let cfg = QuadratureConfig::default();
    for (fam, m, n) in GUIDED_MODES {
        let mode = mode_label(fam, m, n);
        for ratio in [1.1, 2.0, 10.0] {
            out.push(Check::new(Group::Mass, format!("guided-identities/{mode}@{ratio}"), move || {
                let spec = quantized_guided(3, &reference_guided(fam, m, n, ratio, Direction::Forward)?)?;
                let report = guided_mass_report(&spec, &cfg)?;
                let ids = report.identities.ok_or(crate::Error::UnsupportedDerivation("mode below cutoff"))?;
                let quanta = ids.quanta.unwrap_or(f64::INFINITY);
                Ok(Measurement::residual(ids.max().max(quanta), 1e-12))
            }));
        }
        out.push(Check::new(Group::Mass, format!("dispersion/{mode}"), move || {
            let mut worst = Measurement::residual(0.0, 1e-15);
            for ratio in [0.6, 1.0, 1.1, 2.0, 10.0] {
                let spec = reference_guided(fam, m, n, ratio, Direction::Forward)?;
                worst = worst.worst(Measurement::residual(dispersion_residual(&spec), 1e-15));
            }
            Ok(worst)
        }));
        out.push(Check::new(Group::Mass, format!("dispersion-control/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.7, Direction::Forward)?;
            let kz = spec.axial_wavenumber();
            let got = dispersion_residual_with_kz(&spec, kz * 1.01);
            let first_order = 2.0 * (spec.constants.c * kz.re / spec.omega).powi(2) * 0.01;
            Ok(Measurement::relative(got, first_order, 0.01))
        }));
        out.push(Check::new(Group::Mass, format!("klein-gordon/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.6, Direction::Forward)?;
            let p = Point::new(spec.geometry.a * 0.31, spec.geometry.b * 0.37, 0.01);
            Ok(Measurement::residual(klein_gordon_stencil_residual(&spec, &p)?, 1e-6))
        }));
        out.push(Check::new(Group::Mass, format!("klein-gordon-control/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.6, Direction::Forward)?;
            let p = Point::new(spec.geometry.a * 0.31, spec.geometry.b * 0.37, 0.01);
            let bad = klein_gordon_stencil_residual_with_kz(&spec, spec.axial_wavenumber() * 1.01, &p)?;
            Ok(Measurement::at_least(bad, 1e-3))
        }));
        out.push(Check::new(Group::Mass, format!("four-momentum/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.9, Direction::Forward)?;
            let split = four_momentum_split(&spec)?;
            let k = spec.constants;
            let mut worst = Measurement::exact(split.cross_product(), 0.0);
            worst = worst.worst(Measurement::relative(split.transverse_magnitude(), k.hbar * spec.cutoff() / k.c, 1e-14));
            for i in 0..4 {
                worst = worst.worst(Measurement::exact(split.total[i], split.transverse[i] + split.longitudinal[i]));
            }
            for e in 0..100 {
                let u = |s: f64| ((e as f64 + 1.0) * s) % 1.0 - 0.5;
                let event = [
                    k.c * u(0.618_033_988_749_895) / spec.omega * 20.0,
                    spec.geometry.a * u(0.414_213_562_373_095) * 3.0,
                    spec.geometry.b * u(0.732_050_807_568_877) * 3.0,
                    spec.geometry.length * u(0.236_067_977_499_79) * 3.0,
                ];
                let (lhs, rhs) = split.phase_sides(&event);
                let scale = split.total.iter().zip(&event).map(|(p, x)| (p * x).abs()).sum::<f64>();
                worst = worst.worst(Measurement::residual((lhs - rhs) / scale, 1e-12));
            }
            Ok(worst)
        }));
    }
    out.push(Check::new(Group::Mass, "rest-mass-independent-of-frequency/TM21", move || {
        let a = guided_mass_report(&reference_guided(Family::TM, 2, 1, 1.2, Direction::Forward)?, &cfg)?;
        let b = guided_mass_report(&reference_guided(Family::TM, 2, 1, 6.0, Direction::Forward)?, &cfg)?;
        Ok(Measurement::relative(b.m0, a.m0, 1e-15))
    }));
    out.push(Check::new(Group::Mass, "root-two-kinematics/TE10", move || {
        let spec = reference_guided(Family::TE, 1, 0, SQRT_2, Direction::Forward)?;
        let r = guided_mass_report(&spec, &cfg)?;
        let c = spec.constants.c;
        let vg = r.group_velocity.unwrap_or(f64::NAN);
        let vp = r.phase_velocity.unwrap_or(f64::NAN);
        Ok(Measurement::relative(vg, c / SQRT_2, 1e-14)
            .worst(Measurement::relative(vp, c * SQRT_2, 1e-14))
            .worst(Measurement::relative(r.m0 * c * c * SQRT_2, r.epsilon, 1e-14)))
    }));
    for fam in [Family::TM, Family::TE] {
        for (eta, phi) in SURFACE_CASES {
            let label = surface_label(fam, eta, phi);
            out.push(Check::new(Group::Mass, format!("surface-identities/{label}"), move || {
                let spec = quantized_surface(2, &reference_surface(fam, eta, phi, Direction::Forward)?)?;
                let r = surface_mass_report(&spec, &cfg)?;
                let quanta = r.identities.quanta.unwrap_or(f64::INFINITY);
                let rho0 = Measurement::relative(r.rho0_surface, crate::mass::surface_rest_mass_density(&spec, 0.0), 1e-15);
                Ok(Measurement::residual(r.identities.max().max(quanta), 1e-12).worst(rho0))
            }));
        }
    }
}

fn algebra_checks(out: &mut Vec<Check>) {
    out.push(Check::new(Group::Algebra, "tau-entries", || {
        let s = build_spin_matrices();
        let mut ok = true;
        for k in 0..3 {
            for l in 0..3 {
                for m in 0..3 {
                    ok &= s.tau[k][(l, m)] == C64::new(0.0, -levi_civita(k, l, m));
                }
            }
            ok &= s.tau[k] == s.tau[k].adjoint();
        }
        ok &= s.tau[2][(0, 1)] == C64::new(0.0, -1.0) && s.tau[2][(1, 0)] == C64::new(0.0, 1.0);
        Ok(Measurement::flag(ok))
    }));
    out.push(Check::new(Group::Algebra, "spin-one-commutators", || {
        let s = build_spin_matrices();
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let mut rhs = CMat3::zeros();
                for k in 0..3 {
                    rhs += s.tau[k] * C64::new(0.0, levi_civita(i, j, k));
                }
                worst = worst.max((commutator(&s.tau[i], &s.tau[j]) - rhs).norm());
            }
        }
        Ok(Measurement::residual(worst, 1e-15))
    }));
    out.push(Check::new(Group::Algebra, "casimir", || {
        let s = build_spin_matrices();
        let tt: CMat3 = s.tau.iter().map(|t| t * t).sum();
        let a = (tt - CMat3::identity() * C64::new(2.0, 0.0)).norm();
        let b = (s.sigma_squared() - CMat6::identity() * C64::new(2.0, 0.0)).norm();
        Ok(Measurement::residual(a.max(b), 1e-15))
    }));
    out.push(Check::new(Group::Algebra, "unitary-involution", || {
        let s = build_spin_matrices();
        let a = (s.u - s.u.adjoint()).norm();
        let b = (s.u * s.u - CMat6::identity()).norm();
        let c = (s.u * s.u.adjoint() - CMat6::identity()).norm();
        Ok(Measurement::residual(a.max(b).max(c), 1e-15))
    }));
    out.push(Check::new(Group::Algebra, "spin-tensor-antisymmetry", || {
        let s = build_spin_matrices();
        let mut ok = true;
        for mu in 0..4 {
            for nu in 0..4 {
                ok &= s.s_tensor[mu][nu] == -s.s_tensor[nu][mu];
            }
        }
        Ok(Measurement::flag(ok))
    }));
    out.push(Check::new(Group::Algebra, "commutator-fixture", || {
        let computed = commutator_table(&build_spin_matrices());
        let fixture = CommutatorTable::fixture()?;
        Ok(Measurement::residual(computed.projection_residual.max(computed.rounding_residual), 1e-13)
            .worst(Measurement::flag(computed.table == fixture)))
    }));
    out.push(Check::new(Group::Algebra, "closure-rank", || {
        let (gens, all) = closure_ranks(&build_spin_matrices());
        Ok(Measurement::exact(gens as f64, 6.0).worst(Measurement::exact(all as f64, 6.0)))
    }));
    out.push(Check::new(Group::Algebra, "chiral-similarity", || {
        let s = build_spin_matrices();
        let sc = s.chiral_s_tensor();
        let mut worst = 0.0f64;
        for (a, b) in GENERATORS {
            for (p, q) in GENERATORS {
                let lhs = commutator(&sc[a][b], &sc[p][q]);
                let rhs = s.u * commutator(&s.s_tensor[a][b], &s.s_tensor[p][q]) * s.u;
                worst = worst.max((lhs - rhs).norm());
            }
        }
        Ok(Measurement::residual(worst, 1e-14))
    }));
    out.push(Check::new(Group::Algebra, "eigen-residual/1000-directions", || {
        let mut worst = Measurement::residual(0.0, 1e-13);
        for n in test_directions(1000) {
            let sys = helicity_eigensystem(&n)?;
            worst = worst.worst(Measurement::residual(sys.eigen_residual(), 1e-13));
            worst = worst.worst(Measurement::residual(sys.orthonormality_residual(), 1e-13));
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Algebra, "axis-eigenvectors", || {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| C64::new(re, im);
        let cases = [
            (Vec3::z(), CVec3::new(c(r, 0.0), c(0.0, r), c(0.0, 0.0))),
            (Vec3::x(), CVec3::new(c(0.0, 0.0), c(0.0, r), c(-r, 0.0))),
            (Vec3::y(), CVec3::new(c(r, 0.0), c(0.0, 0.0), c(0.0, -r))),
        ];
        let mut worst = Measurement::residual(0.0, 1e-15);
        for (n, plus) in cases {
            let sys = helicity_eigensystem(&n)?;
            let phase_gap = |a: &CVec3, b: &CVec3| (a.dotc(b).norm() - 1.0).abs() + (a.norm() - 1.0).abs();
            worst = worst.worst(Measurement::residual(phase_gap(&sys.plus, &plus), 1e-15));
            worst = worst.worst(Measurement::residual(phase_gap(&sys.minus, &plus.map(|z| z.conj())), 1e-15));
            worst = worst.worst(Measurement::flag(sys.zero == n.map(|x| c(x, 0.0))));
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Algebra, "decomposition-reconstruction", || {
        let mut worst = Measurement::residual(0.0, 1e-13);
        for (k, n) in test_directions(200).into_iter().enumerate() {
            let t = k as f64;
            let v = CVec3::new(C64::new(t.sin(), 0.3), C64::new(-0.7, t.cos()), C64::new(0.2 * t, -1.0));
            let d = decompose_polarization(&v, &n)?;
            worst = worst.worst(Measurement::residual((d.reconstruct() - v).norm() / v.norm(), 1e-13));
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Algebra, "spinor-round-trip", || {
        let s = build_spin_matrices();
        let mut worst = Measurement::residual(0.0, 1e-15);
        for k in 0..100 {
            let t = k as f64 * 0.37;
            let e = CVec3::new(C64::new(t.cos(), 0.1), C64::new(0.5, -t.sin()), C64::new(t.sin(), t));
            let b = CVec3::new(C64::new(0.2, t.cos()), C64::new(-t, 0.4), C64::new(1.0, t.sin()));
            let psi = SixSpinor::from_fields(&e, &b, 1.0);
            let back = psi.to_chiral(&s)?.to_standard(&s)?;
            worst = worst.worst(Measurement::residual((back.components - psi.components).norm() / psi.components.norm(), 1e-15));
        }
        let unit = SixSpinor::from_fields(&CVec3::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)), &CVec3::zeros(), 1.0);
        let chi = unit.to_chiral(&s)?;
        let want = [0.5, 0.0, 0.0, 0.5, 0.0, 0.0];
        let gap = (0..6).map(|i| (chi.components[i] - C64::new(want[i], 0.0)).norm()).fold(0.0, f64::max);
        Ok(worst.worst(Measurement::residual(gap, 1e-15)))
    }));
    for fam_dir in [Direction::Forward, Direction::Backward] {
        let label = match fam_dir {
            Direction::Forward => "+z",
            Direction::Backward => "-z",
        };
        out.push(Check::new(Group::Algebra, format!("helicity-bridge/{label}"), move || {
            let mut ok = true;
            for (eta, phi) in SURFACE_CASES {
                let spec = reference_surface(Family::TM, eta, phi, fam_dir)?;
                let f = surface_field_phasor(&spec, &Point::new(0.4 / spec.kappa(), 0.0, 0.1e-6), 0.3 / spec.omega)?;
                let s = spin_densities(&f, spec.omega, &spec.constants).electric;
                let d = decompose_polarization(&f.e, &Vec3::y())?;
                let sign = spec.kz().signum();
                ok &= s.y.signum() == sign && d.helicity_imbalance().signum() == sign;
            }
            Ok(Measurement::flag(ok))
        }));
    }
    out.push(Check::new(Group::Algebra, "helicity-longitudinal-balance/TM-surface", || {
        let mut worst = Measurement::residual(0.0, 1e-14);
        for (eta, phi) in SURFACE_CASES {
            let spec = reference_surface(Family::TM, eta, phi, Direction::Forward)?;
            let f = surface_field_phasor(&spec, &Point::new(0.4 / spec.kappa(), 0.0, 0.0), 0.0)?;
            let d = decompose_polarization(&f.e, &Vec3::z())?;
            worst = worst.worst(Measurement::residual((d.plus.norm() - d.minus.norm()) / f.e.norm(), 1e-14));
        }
        Ok(worst)
    }));
}

fn oracle_checks(out: &mut Vec<Check>) {
    for (fam, m, n) in [(Family::TM, 1, 1), (Family::TE, 1, 0), (Family::TM, 2, 1), (Family::TE, 1, 1)] {
        let mode = mode_label(fam, m, n);
        out.push(Check::new(Group::Oracle, format!("guided/{mode}"), move || {
            let spec = reference_guided(fam, m, n, 1.7, Direction::Forward)?;
            let k = spec.constants;
            let mut worst = Measurement::residual(0.0, 1e-10);
            for p in guided_sample_points(&spec, 8) {
                let avg = time_average(spec.omega, 64, |t| {
                    let f = guided_field_phasor(&spec, &p, t).unwrap_or_else(|_| crate::FieldPhasor::zero());
                    instantaneous_densities(&f, spec.omega, &k)
                })?;
                let f = guided_field_phasor(&spec, &p, 0.0)?;
                let phasor = spin_densities(&f, spec.omega, &k);
                let scale = spin_density_scale(&f, spec.omega, &k);
                let ds = (avg.spin_electric - phasor.electric).amax().max((avg.spin_magnetic - phasor.magnetic).amax());
                worst = worst.worst(Measurement::residual(ds / scale, 1e-10));
                let w = energy_density(&f, &k);
                worst = worst.worst(Measurement::residual((avg.energy - w) / w, 1e-10));
                let closed = analytic_spin_guided(&spec, &p)?;
                worst = worst.worst(Measurement::residual(pair_residual(&SpinDensityPair { electric: avg.spin_electric, magnetic: avg.spin_magnetic }, &closed, scale), 1e-10));
            }
            Ok(worst)
        }));
    }
    for fam in [Family::TM, Family::TE] {
        out.push(Check::new(Group::Oracle, format!("surface/{fam}"), move || {
            let spec = reference_surface(fam, 1.5, 60.0, Direction::Forward)?;
            let k = spec.constants;
            let mut worst = Measurement::residual(0.0, 1e-10);
            for (i, x) in surface_depths(&spec, 8).into_iter().enumerate() {
                let p = Point::new(x, 0.0, i as f64 * 0.05e-6);
                let avg = time_average(spec.omega, 64, |t| {
                    let f = surface_field_phasor(&spec, &p, t).unwrap_or_else(|_| crate::FieldPhasor::zero());
                    instantaneous_densities(&f, spec.omega, &k)
                })?;
                let f = surface_field_phasor(&spec, &p, 0.0)?;
                let phasor = spin_densities(&f, spec.omega, &k);
                let scale = spin_density_scale(&f, spec.omega, &k);
                let ds = (avg.spin_electric - phasor.electric).amax().max((avg.spin_magnetic - phasor.magnetic).amax());
                worst = worst.worst(Measurement::residual(ds / scale, 1e-10));
                let w = energy_density(&f, &k);
                worst = worst.worst(Measurement::residual((avg.energy - w) / w, 1e-10));
                let pz = crate::spin::momentum_density(&f, &k).z;
                worst = worst.worst(Measurement::residual((avg.momentum.z - pz) / pz, 1e-10));
            }
            Ok(worst)
        }));
    }
}

fn resolution_checks(out: &mut Vec<Check>) {
    let cfg = QuadratureConfig::default();
    out.push(Check::new(Group::Resolution, "surface-momentum-form", move || {
        let mut worst = Measurement::residual(0.0, 1e-9);
        for fam in [Family::TM, Family::TE] {
            for (eta, phi) in SURFACE_CASES {
                let spec = quantized_surface(1, &reference_surface(fam, eta, phi, Direction::Forward)?)?;
                let obs = integrate_surface(&spec, &cfg, SpinCombination::Single)?;
                let forms = surface_momentum_forms(1, &spec);
                worst = worst.worst(Measurement::relative(obs.momentum_z, forms.energy_velocity_form, 1e-9));
                let ratio = obs.momentum_z / forms.wavenumber_form;
                let want = (spec.omega / (spec.kz() * spec.constants.c)).powi(2);
                worst = worst.worst(Measurement::relative(ratio, want, 1e-9));
                // the two forms are genuinely different
                worst = worst.worst(Measurement::flag((ratio - 1.0).abs() > 1e-3));
            }
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Resolution, "pole-convention", || {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let north = helicity_eigensystem(&Vec3::z())?;
        let south = helicity_eigensystem(&-Vec3::z())?;
        let c = |re: f64, im: f64| C64::new(re, im);
        let np = CVec3::new(c(r, 0.0), c(0.0, r), c(0.0, 0.0));
        let mut worst = Measurement::flag(north.plus == np && south.plus == np.map(|z| z.conj()));
        worst = worst.worst(Measurement::residual(north.eigen_residual().max(south.eigen_residual()), 1e-15));
        // continuity at the north pole: approaching from any azimuth
        for k in 0..8 {
            let a = k as f64 * PI / 4.0;
            let eps = 1e-9;
            let n = Vec3::new(eps * a.cos(), eps * a.sin(), (1.0 - eps * eps).sqrt());
            let sys = helicity_eigensystem(&n)?;
            worst = worst.worst(Measurement::residual((sys.plus - np).norm(), 1e-8));
            worst = worst.worst(Measurement::residual(sys.eigen_residual(), 1e-13));
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Resolution, "te-m0-cross-section-weight", move || {
        let mut worst = Measurement::residual(0.0, 1e-9);
        for ratio in GUIDED_RATIOS {
            let spec = reference_guided(Family::TE, 1, 0, ratio, Direction::Forward)?;
            let obs = integrate_guided(&spec, &cfg)?;
            let unweighted = closed_form_totals_unweighted(&spec);
            worst = worst.worst(Measurement::relative(obs.energy / unweighted.energy, 2.0, 1e-9));
            worst = worst.worst(Measurement::relative(obs.transverse_spin / unweighted.transverse_spin, 2.0, 1e-9));
        }
        Ok(worst)
    }));
    out.push(Check::new(Group::Resolution, "spin-density-half-factor", || {
        // The phasor spin formula with its factor 1/2 reproduces the closed
        // forms, and the brute-force period average agrees with both.
        let spec = reference_guided(Family::TE, 1, 0, 1.5, Direction::Forward)?;
        let k = spec.constants;
        let p = Point::new(spec.geometry.a / 4.0, spec.geometry.b / 3.0, 0.0);
        let f = guided_field_phasor(&spec, &p, 0.0)?;
        let pipe = spin_densities(&f, spec.omega, &k).magnetic.y;
        let avg = time_average(spec.omega, 64, |t| {
            let f = guided_field_phasor(&spec, &p, t).unwrap_or_else(|_| crate::FieldPhasor::zero());
            instantaneous_densities(&f, spec.omega, &k)
        })?;
        let closed = -(PI / spec.geometry.a) * spec.real_kz() / (2.0 * k.mu0 * spec.cutoff().powi(2) * spec.omega)
            * spec.amplitude.powi(2);
        Ok(Measurement::relative(pipe, closed, 1e-12).worst(Measurement::relative(avg.spin_magnetic.y, closed, 1e-10)))
    }));
    out.push(Check::new(Group::Resolution, "transverse-spin-definition", move || {
        let spec = reference_guided(Family::TM, 1, 1, 1.8, Direction::Forward)?;
        let k = spec.constants;
        let obs = integrate_guided(&spec, &cfg)?;
        let closed = closed_form_totals_unweighted(&spec).transverse_spin;
        let big_k = spec.real_kz() / (2.0 * k.mu0 * spec.cutoff().powi(2) * spec.omega);
        let l2 = (3.0 * spec.geometry.volume() / 16.0).sqrt() * spec.cutoff() / k.c * big_k * spec.amplitude.powi(2);
        Ok(Measurement::relative(obs.transverse_spin, closed, 1e-9)
            .worst(Measurement::relative(transverse_spin_rms_norm(&spec, &cfg)?, l2, 1e-9)))
    }));
    out.push(Check::new(Group::Resolution, "helicity-transverse-axis", || {
        // Along the propagation-normal in-plane axis (x) the TM surface field
        // has balanced helicity; along the spin axis (y) it does not.
        let mut worst = Measurement::residual(0.0, 1e-14);
        for (eta, phi) in SURFACE_CASES {
            let spec = reference_surface(Family::TM, eta, phi, Direction::Forward)?;
            let f = surface_field_phasor(&spec, &Point::origin(), 0.0)?;
            let dx = decompose_polarization(&f.e, &Vec3::x())?;
            worst = worst.worst(Measurement::residual((dx.plus.norm() - dx.minus.norm()) / f.e.norm(), 1e-14));
            let dy = decompose_polarization(&f.e, &Vec3::y())?;
            let want = 2.0 * spec.kz() * spec.kappa() / (spec.kz().powi(2) + spec.kappa().powi(2));
            worst = worst.worst(Measurement::relative(dy.helicity_imbalance() / f.e.norm_squared(), want, 1e-12));
        }
        Ok(worst)
    }));
}
