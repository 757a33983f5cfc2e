//! Spin-density maps on uniform grids.
//!
//! Rows are produced in y-major order (all x for the first y, then the next
//! y, …). Grid points are evaluated in parallel, but collection preserves the
//! order, so output is identical for any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mode::{GuidedModeSpec, SurfaceWaveSpec};
use crate::spin::{analytic_spin_guided, analytic_spin_surface, SpinCombination};
use crate::Point;

/// One grid sample of the spin density (J·s/m³).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinMapRow {
    pub x: f64,
    pub y: f64,
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    /// Euclidean norm of `(sx, sy, sz)`.
    pub mag: f64,
}

impl SpinMapRow {
    fn new(x: f64, y: f64, s: crate::Vec3) -> Self {
        Self {
            x,
            y,
            sx: s.x,
            sy: s.y,
            sz: s.z,
            mag: s.norm(),
        }
    }
}

/// Amplitude conventions for maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Use the spec's amplitude as given.
    #[default]
    None,
    /// Guided: `π k_z h² / (2 μ0 ω_c² ω) = 1`, so the spin density reads
    /// `(1/π)(k_x sin… , …)` in units of the guide dimensions.
    /// Surface: unit spin density at the interface.
    PaperFigures,
}

/// Guided amplitude with `π |k_z| h² / (2 μ0 ω_c² ω) = 1`.
pub fn paper_figures_amplitude_guided(spec: &GuidedModeSpec) -> Result<f64> {
    let kz = spec.real_kz().abs();
    if !(kz > 0.0) {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: spec.omega,
            reason: "the figure normalization needs a propagating mode",
        });
    }
    let k = spec.constants;
    Ok((2.0 * k.mu0 * spec.cutoff().powi(2) * spec.omega / (std::f64::consts::PI * kz)).sqrt())
}

/// Surface amplitude giving `|s_y(0)| = 1`.
pub fn paper_figures_amplitude_surface(spec: &SurfaceWaveSpec) -> f64 {
    let k = spec.constants;
    (spec.omega.powi(3) / (k.eps0 * spec.kappa() * spec.kz().abs() * k.c * k.c)).sqrt()
}

pub fn normalize_guided(spec: &GuidedModeSpec, normalization: Normalization) -> Result<GuidedModeSpec> {
    match normalization {
        Normalization::None => Ok(*spec),
        Normalization::PaperFigures => Ok(spec.with_amplitude(paper_figures_amplitude_guided(spec)?)),
    }
}

pub fn normalize_surface(spec: &SurfaceWaveSpec, normalization: Normalization) -> SurfaceWaveSpec {
    match normalization {
        Normalization::None => *spec,
        Normalization::PaperFigures => spec.with_amplitude(paper_figures_amplitude_surface(spec)),
    }
}

fn check_grid(nx: usize, ny: usize) -> Result<()> {
    if nx < 2 || ny < 2 {
        return Err(Error::Config(format!("grid needs nx >= 2 and ny >= 2, got {nx} x {ny}")));
    }
    Ok(())
}

fn axis(len: f64, n: usize) -> impl Fn(usize) -> f64 {
    // endpoints exact: i = n−1 maps to `len`, not len·(1 − ε)
    move |i| if i + 1 == n { len } else { len * i as f64 / (n - 1) as f64 }
}

fn grid_map<F>(nx: usize, ny: usize, xs: impl Fn(usize) -> f64 + Sync, ys: impl Fn(usize) -> f64 + Sync, f: F) -> Result<Vec<SpinMapRow>>
where
    F: Fn(f64, f64) -> Result<crate::Vec3> + Sync,
{
    check_grid(nx, ny)?;
    (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (xs(k % nx), ys(k / nx));
            f(x, y).map(|s| SpinMapRow::new(x, y, s))
        })
        .collect()
}

/// Closed-form spin density of a guided mode on an `nx × ny` grid spanning
/// the closed cross-section `[0, a] × [0, b]`, at `z = 0`.
pub fn guided_spin_map(
    spec: &GuidedModeSpec,
    nx: usize,
    ny: usize,
    combination: SpinCombination,
) -> Result<Vec<SpinMapRow>> {
    spec.validate()?;
    let g = spec.geometry;
    grid_map(nx, ny, axis(g.a, nx), axis(g.b, ny), |x, y| {
        Ok(analytic_spin_guided(spec, &Point::new(x, y, 0.0))?.total(combination))
    })
}

/// Closed-form spin density of a surface wave on the plane `z = 0`,
/// `x ∈ [0, depth/κ]` and `y` over the same extent (the density does not
/// depend on y).
pub fn surface_spin_map(
    spec: &SurfaceWaveSpec,
    nx: usize,
    ny: usize,
    depth: f64,
    combination: SpinCombination,
) -> Result<Vec<SpinMapRow>> {
    spec.validate()?;
    if !(depth.is_finite() && depth > 0.0) {
        return Err(Error::InvalidParameter {
            name: "depth",
            value: depth,
            reason: "map depth, in decay lengths, must be positive",
        });
    }
    let extent = depth / spec.kappa();
    grid_map(nx, ny, axis(extent, nx), axis(extent, ny), |x, _| {
        Ok(analytic_spin_surface(spec, x)?.total(combination))
    })
}
