//! Acceptance suite: one numbered criterion per function, each evaluated at
//! its stated tolerance. Prints one PASS/FAIL line per criterion (plus the
//! offending cases on failure) and exits non-zero if any criterion fails.
//!
//! Runs without the libtest harness so the summary lines are always shown.

// `!(residual <= tol)` on purpose: a NaN residual must fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::SQRT_2;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use transpin::algebra::{build_spin_matrices, helicity_eigensystem, levi_civita, test_directions, CMat3, CMat6};
use transpin::fields::{guided_field_phasor, surface_field_phasor};
use transpin::mass::{guided_mass_report, surface_mass_report};
use transpin::observables::{
    balance_integral, closed_form_surface_totals, closed_form_totals_unweighted, integrate_guided, integrate_surface,
    quantized_guided, quantized_surface, QuadratureConfig,
};
use transpin::spin::{
    analytic_spin_guided, energy_density, instantaneous_densities, momentum_density, spin_densities,
    spin_density_scale, time_average, SpinDensityPair,
};
use transpin::verify::{guided_grid_points, guided_sample_points, reference_guided, reference_surface, run_checks, CatalogueOptions};
use transpin::{CVec3, Direction, Family, FieldPhasor, GuidedModeSpec, Point, SpinCombination, Vec3, C64};

const MODES: [(Family, u32, u32); 6] = [
    (Family::TM, 1, 1),
    (Family::TM, 2, 1),
    (Family::TM, 2, 2),
    (Family::TE, 1, 0),
    (Family::TE, 1, 1),
    (Family::TE, 2, 1),
];
const RATIOS: [f64; 3] = [1.1, SQRT_2, 2.0];
const SURFACES: [(f64, f64); 4] = [(1.45, 50.0), (1.45, 70.0), (2.0, 50.0), (2.0, 70.0)];
const QUANTA: [u64; 3] = [1, 2, 5];

/// Accumulates the worst residual of one criterion and the cases that
/// exceed the tolerance.
struct Tally {
    tolerance: f64,
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new(tolerance: f64) -> Self {
        Self {
            tolerance,
            worst: 0.0,
            failures: Vec::new(),
        }
    }

    fn residual(&mut self, case: impl FnOnce() -> String, residual: f64) {
        if residual.is_nan() || residual > self.worst {
            self.worst = residual;
        }
        if !(residual <= self.tolerance) {
            self.failures.push(format!("{}: residual {residual:e} > {:e}", case(), self.tolerance));
        }
    }

    fn relative(&mut self, case: impl FnOnce() -> String, actual: f64, expected: f64) {
        let r = (actual - expected).abs() / expected.abs();
        self.residual(|| format!("{} (actual {actual:e}, expected {expected:e})", case()), r);
    }

    fn require(&mut self, case: impl FnOnce() -> String, ok: bool) {
        if !ok {
            self.failures.push(case());
        }
    }
}

fn label(fam: Family, m: u32, n: u32) -> String {
    format!("{fam}{m}{n}")
}

fn guided(fam: Family, m: u32, n: u32, ratio: f64) -> GuidedModeSpec {
    reference_guided(fam, m, n, ratio, Direction::Forward).expect("reference mode is valid")
}

fn pair_gap(a: &SpinDensityPair, b: &SpinDensityPair) -> f64 {
    a.max_abs_diff(b)
}

// 1 ---------------------------------------------------------------------------

fn quadrature_vs_closed_form_totals() -> Tally {
    let cfg = QuadratureConfig::default();
    let mut t = Tally::new(1e-9);
    for (fam, m, n) in MODES {
        for ratio in RATIOS {
            let spec = guided(fam, m, n, ratio);
            let obs = integrate_guided(&spec, &cfg).unwrap();
            // the literal closed forms for W, P_z and S⊥
            let closed = closed_form_totals_unweighted(&spec);
            let case = |q: &'static str| {
                let l = label(fam, m, n);
                move || format!("{l} @ {ratio:.4} {q}")
            };
            t.relative(case("W"), obs.energy, closed.energy);
            t.relative(case("P_z"), obs.momentum_z, closed.momentum_z);
            t.relative(case("S_perp"), obs.transverse_spin, closed.transverse_spin);
        }
    }
    t
}

// 2 ---------------------------------------------------------------------------

fn quantization_law() -> Tally {
    let cfg = QuadratureConfig::default();
    let mut t = Tally::new(1e-9);
    for (fam, m, n) in MODES {
        for ratio in RATIOS {
            for quanta in QUANTA {
                let spec = quantized_guided(quanta, &guided(fam, m, n, ratio)).unwrap();
                let k = spec.constants;
                let obs = integrate_guided(&spec, &cfg).unwrap();
                let cos = spec.real_kz() * k.c / spec.omega;
                let sin2 = 2.0 * cos * (1.0 - cos * cos).sqrt();
                let nh = quanta as f64 * k.hbar;
                let l = label(fam, m, n);
                t.relative(|| format!("{l} @ {ratio:.4}, n = {quanta}: S_perp vs n hbar sin 2theta"), obs.transverse_spin, nh * sin2);
                if ratio == SQRT_2 {
                    t.relative(|| format!("{l} @ sqrt2, n = {quanta}: S_perp vs n hbar"), obs.transverse_spin, nh);
                }
            }
        }
    }
    t
}

// 3 ---------------------------------------------------------------------------

fn surface_totals() -> Tally {
    let cfg = QuadratureConfig::default();
    let mut t = Tally::new(1e-9);
    for fam in [Family::TM, Family::TE] {
        for (eta, phi) in SURFACES {
            let spec = reference_surface(fam, eta, phi, Direction::Forward).unwrap();
            let obs = integrate_surface(&spec, &cfg, SpinCombination::Single).unwrap();
            let closed = closed_form_surface_totals(&spec);
            let case = |q: &'static str| move || format!("{fam} eta={eta} phi={phi}: {q}");
            t.relative(case("W"), obs.energy, closed.energy);
            t.relative(case("P_z"), obs.momentum_z, closed.momentum_z);
            t.relative(case("S_y"), obs.spin_y, closed.transverse_spin);
            for quanta in QUANTA {
                let q = quantized_surface(quanta, &spec).unwrap();
                let k = q.constants;
                let s = eta * phi.to_radians().sin();
                let k0 = q.omega / k.c;
                let tan_theta_prime = (k0 * (s * s - 1.0).sqrt()) / (k0 * s);
                let obs = integrate_surface(&q, &cfg, SpinCombination::Single).unwrap();
                let want = 2.0 * quanta as f64 * k.hbar * tan_theta_prime;
                t.relative(|| format!("{fam} eta={eta} phi={phi}, n = {quanta}: S_y vs 2 n hbar tan theta'"), obs.spin_y, want);
            }
        }
    }
    t
}

// 4 ---------------------------------------------------------------------------

fn oracle_equivalence() -> Tally {
    let mut t = Tally::new(1e-10);
    let samples = 64;
    let mut compare = |case: String, f0: &FieldPhasor, avg: transpin::spin::InstantaneousDensities, omega: f64, k| {
        let phasor = spin_densities(f0, omega, &k);
        let scale = spin_density_scale(f0, omega, &k);
        let ds = (avg.spin_electric - phasor.electric).amax().max((avg.spin_magnetic - phasor.magnetic).amax());
        t.residual(|| format!("{case}: spin"), ds / scale);
        let w = energy_density(f0, &k);
        t.residual(|| format!("{case}: energy"), (avg.energy - w).abs() / w);
        let p = momentum_density(f0, &k);
        t.residual(|| format!("{case}: momentum"), (avg.momentum - p).amax() / (w / k.c));
    };
    for (fam, m, n) in [(Family::TM, 1, 1), (Family::TE, 1, 0), (Family::TM, 2, 1), (Family::TE, 1, 1)] {
        let spec = guided(fam, m, n, 1.7);
        let k = spec.constants;
        for (i, p) in guided_sample_points(&spec, 8).into_iter().enumerate() {
            let avg = time_average(spec.omega, samples, |time| {
                instantaneous_densities(&guided_field_phasor(&spec, &p, time).unwrap(), spec.omega, &k)
            })
            .unwrap();
            let f0 = guided_field_phasor(&spec, &p, 0.0).unwrap();
            compare(format!("{} point {i}", label(fam, m, n)), &f0, avg, spec.omega, k);
        }
    }
    for fam in [Family::TM, Family::TE] {
        let spec = reference_surface(fam, 1.45, 50.0, Direction::Forward).unwrap();
        let k = spec.constants;
        for i in 0..8 {
            let p = Point::new(i as f64 * 0.4 / spec.kappa(), 0.0, i as f64 * 3e-8);
            let avg = time_average(spec.omega, samples, |time| {
                instantaneous_densities(&surface_field_phasor(&spec, &p, time).unwrap(), spec.omega, &k)
            })
            .unwrap();
            let f0 = surface_field_phasor(&spec, &p, 0.0).unwrap();
            compare(format!("surface {fam} point {i}"), &f0, avg, spec.omega, k);
        }
    }
    t
}

// 5 ---------------------------------------------------------------------------

fn structural_zeros() -> Tally {
    let mut t = Tally::new(1e-15);
    for (fam, m, n) in MODES {
        for ratio in [RATIOS.as_slice(), &[0.7]].concat() {
            let spec = guided(fam, m, n, ratio);
            let k = spec.constants;
            for p in guided_sample_points(&spec, 8) {
                let f = guided_field_phasor(&spec, &p, 0.37 / spec.omega).unwrap();
                let s = spin_densities(&f, spec.omega, &k);
                let scale = spin_density_scale(&f, spec.omega, &k);
                let l = label(fam, m, n);
                let at = |what: &'static str| {
                    let l = l.clone();
                    move || format!("{l} @ {ratio:.4} {p:?}: {what}")
                };
                t.residual(at("s_z"), s.electric.z.abs().max(s.magnetic.z.abs()) / scale);
                match fam {
                    Family::TM => t.residual(at("s_m (TM)"), s.magnetic.amax() / scale),
                    Family::TE => t.residual(at("s_e (TE)"), s.electric.amax() / scale),
                }
                if ratio < 1.0 {
                    t.residual(at("evanescent spin"), s.max_abs() / scale);
                }
            }
        }
    }
    t
}

// 6 ---------------------------------------------------------------------------

fn spin_momentum_locking() -> Tally {
    let mut t = Tally::new(1e-15);
    for (fam, m, n) in MODES {
        for ratio in RATIOS {
            let fwd = guided(fam, m, n, ratio);
            let back = fwd.with_direction(Direction::Backward);
            let k = fwd.constants;
            for z in [0.0, 0.3 * fwd.geometry.length] {
                for p in guided_grid_points(&fwd, 5, z) {
                    let ff = guided_field_phasor(&fwd, &p, 0.0).unwrap();
                    let sf = spin_densities(&ff, fwd.omega, &k);
                    let sb = spin_densities(&guided_field_phasor(&back, &p, 0.0).unwrap(), back.omega, &k);
                    let scale = spin_density_scale(&ff, fwd.omega, &k);
                    let l = label(fam, m, n);
                    t.residual(|| format!("{l} @ {ratio:.4} {p:?}: fields"), pair_gap(&sb, &sf.negated()) / scale);
                    let (af, ab) = (analytic_spin_guided(&fwd, &p).unwrap(), analytic_spin_guided(&back, &p).unwrap());
                    t.require(|| format!("{l} @ {ratio:.4} {p:?}: closed form is not an exact sign flip"), ab == af.negated());
                }
            }
        }
    }
    for fam in [Family::TM, Family::TE] {
        for (eta, phi) in SURFACES {
            let fwd = reference_surface(fam, eta, phi, Direction::Forward).unwrap();
            let back = fwd.with_direction(Direction::Backward);
            let k = fwd.constants;
            for i in 0..6 {
                let p = Point::new(i as f64 * 0.5 / fwd.kappa(), 0.0, 0.0);
                let ff = surface_field_phasor(&fwd, &p, 0.0).unwrap();
                let sf = spin_densities(&ff, fwd.omega, &k);
                let sb = spin_densities(&surface_field_phasor(&back, &p, 0.0).unwrap(), back.omega, &k);
                let scale = spin_density_scale(&ff, fwd.omega, &k);
                t.residual(|| format!("surface {fam} eta={eta} phi={phi} x{i}"), pair_gap(&sb, &sf.negated()) / scale);
            }
        }
    }
    t
}

// 7 ---------------------------------------------------------------------------

fn balance_integral_vanishes() -> Tally {
    let cfg = QuadratureConfig::default();
    let mut t = Tally::new(1e-12);
    for (fam, m, n) in MODES {
        for ratio in RATIOS {
            let spec = guided(fam, m, n, ratio);
            let w = integrate_guided(&spec, &cfg).unwrap().energy;
            let b = balance_integral(&spec, &cfg).unwrap();
            t.residual(|| format!("{} @ {ratio:.4}", label(fam, m, n)), b.abs() / w);
        }
    }
    t
}

// 8 ---------------------------------------------------------------------------

fn mass_identities() -> Tally {
    let cfg = QuadratureConfig::default();
    let mut t = Tally::new(1e-12);
    for (fam, m, n) in MODES {
        for ratio in RATIOS {
            let spec = quantized_guided(3, &guided(fam, m, n, ratio)).unwrap();
            let r = guided_mass_report(&spec, &cfg).unwrap();
            let l = label(fam, m, n);
            let Some(ids) = r.identities else {
                t.require(|| format!("{l} @ {ratio:.4}: no identities for a propagating mode"), false);
                continue;
            };
            t.require(|| format!("{l} @ {ratio:.4}: photon number not integral"), ids.quanta.is_some());
            t.residual(|| format!("{l} @ {ratio:.4}: eps^2 = p^2c^2 + m0^2c^4"), ids.energy_momentum);
            t.residual(|| format!("{l} @ {ratio:.4}: v_g v_p = c^2"), ids.velocity_product);
            t.residual(|| format!("{l} @ {ratio:.4}: W = M0 c^2 gamma"), ids.total_energy);
            t.residual(|| format!("{l} @ {ratio:.4}: P = M0 v gamma"), ids.total_momentum);
            t.residual(|| format!("{l} @ {ratio:.4}: M0 = n m0"), ids.quanta.unwrap_or(f64::NAN));
        }
    }
    for fam in [Family::TM, Family::TE] {
        for (eta, phi) in SURFACES {
            let spec = quantized_surface(2, &reference_surface(fam, eta, phi, Direction::Forward).unwrap()).unwrap();
            let ids = surface_mass_report(&spec, &cfg).unwrap().identities;
            let case = |what: &'static str| move || format!("surface {fam} eta={eta} phi={phi}: {what}");
            t.residual(case("eps^2 = p^2c^2 + m_s^2c^4"), ids.energy_momentum);
            t.residual(case("W = M_s c^2 gamma"), ids.total_energy);
            t.residual(case("P = M_s v gamma"), ids.total_momentum);
            t.residual(case("integral of rho0"), ids.density_integral);
            t.residual(case("pointwise w^2 - p^2c^2 = rho0^2c^4"), ids.pointwise);
            t.residual(case("M_s = n m_s"), ids.quanta.unwrap_or(f64::NAN));
        }
    }
    t
}

// 9 ---------------------------------------------------------------------------

fn spin_algebra() -> Tally {
    let mut t = Tally::new(1e-13);
    let set = build_spin_matrices();
    let c = |re: f64, im: f64| C64::new(re, im);
    let (o, i, mi) = (c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0));
    #[rustfmt::skip]
    let literal = [
        CMat3::new(o, o, o,  o, o, mi,  o, i, o),
        CMat3::new(o, o, i,  o, o, o,  mi, o, o),
        CMat3::new(o, mi, o,  i, o, o,  o, o, o),
    ];
    for (k, (tau, lit)) in set.tau.iter().zip(&literal).enumerate() {
        t.require(|| format!("tau_{} differs from the literal matrix", k + 1), tau == lit);
    }
    for a in 0..3 {
        for b in 0..3 {
            let comm = set.tau[a] * set.tau[b] - set.tau[b] * set.tau[a];
            let mut want = CMat3::zeros();
            for (k, tau) in set.tau.iter().enumerate() {
                want += tau * c(0.0, levi_civita(a, b, k));
            }
            t.residual(|| format!("[tau_{}, tau_{}]", a + 1, b + 1), (comm - want).norm());
        }
    }
    t.residual(|| "Sigma.Sigma = 2I".into(), (set.sigma_squared() - CMat6::identity() * c(2.0, 0.0)).norm());
    let u = set.u;
    t.residual(|| "U unitary".into(), (u.adjoint() * u - CMat6::identity()).norm());
    t.residual(|| "U involutive".into(), (u * u - CMat6::identity()).norm());
    t.residual(|| "U Hermitian".into(), (u - u.adjoint()).norm());
    let dirs = test_directions(1000);
    t.require(|| format!("expected 1000 directions, got {}", dirs.len()), dirs.len() == 1000);
    t.require(|| "directions must include both poles".into(), dirs.contains(&Vec3::z()) && dirs.contains(&-Vec3::z()));
    for n in &dirs {
        let sys = helicity_eigensystem(n).unwrap();
        t.residual(|| format!("eigen-residual at {n:?}"), sys.eigen_residual());
    }
    // explicit eigenvectors along the three axes, up to a global phase
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let v = |a: C64, b: C64, cc: C64| CVec3::new(a, b, cc);
    let (one, zero) = (c(1.0, 0.0), c(0.0, 0.0));
    let axes: [(Vec3, [CVec3; 3]); 3] = [
        (Vec3::z(), [v(one, i, zero) * c(r, 0.0), v(zero, zero, one), v(one, mi, zero) * c(r, 0.0)]),
        (Vec3::x(), [v(zero, i, -one) * c(r, 0.0), v(one, zero, zero), v(zero, mi, -one) * c(r, 0.0)]),
        (Vec3::y(), [v(one, zero, mi) * c(r, 0.0), v(zero, one, zero), v(one, zero, i) * c(r, 0.0)]),
    ];
    for (n, [plus, zero_vec, minus]) in axes {
        let sys = helicity_eigensystem(&n).unwrap();
        for (name, got, want) in [("+1", sys.plus, plus), ("0", sys.zero, zero_vec), ("-1", sys.minus, minus)] {
            // |<want, got>| = 1 for unit vectors equal up to a phase
            let overlap = want.dotc(&got).norm();
            t.residual(|| format!("axis {n:?} helicity {name}: phase-free overlap"), (overlap - 1.0).abs());
            t.residual(|| format!("axis {n:?} helicity {name}: norm"), (got.norm() - 1.0).abs());
        }
    }
    t
}

// 10 --------------------------------------------------------------------------

struct Map {
    nx: usize,
    rows: Vec<[f64; 6]>,
}

impl Map {
    fn at(&self, i: usize, j: usize) -> [f64; 6] {
        self.rows[j * self.nx + i]
    }
}

fn spinmap(family: &str, m: u32, n: u32, nx: usize, ny: usize) -> Map {
    let out = Command::new(env!("CARGO_BIN_EXE_transpin"))
        .args(["spinmap", "--kind", "guided", "--family", family])
        .args(["--m", &m.to_string(), "--n", &n.to_string()])
        .args(["--a", "1", "--b", "1", "--length", "1", "--omega-ratio", "1.5"])
        .args(["--normalize", "paper-figures", "--nx", &nx.to_string(), "--ny", &ny.to_string()])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,sx,sy,sz,mag"));
    let rows: Vec<[f64; 6]> = lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4], v[5]]
        })
        .collect();
    assert_eq!(rows.len(), nx * ny);
    Map { nx, rows }
}

fn figure_reproduction() -> Tally {
    let mut t = Tally::new(1e-15);
    // TE10: s_y odd about x = a/2, zero at 0, a/2, a, extrema at a/4 (−) and 3a/4 (+)
    let te10 = spinmap("TE", 1, 0, 41, 5);
    for j in 0..5 {
        for i in 0..41 {
            let (s, mirror) = (te10.at(i, j)[3], te10.at(40 - i, j)[3]);
            t.residual(|| format!("TE10 antisymmetry at i={i}, j={j}"), (s + mirror).abs());
            t.require(|| format!("TE10 has non-y spin at i={i}"), te10.at(i, j)[2] == 0.0 && te10.at(i, j)[4] == 0.0);
        }
        for i in [0, 20, 40] {
            t.residual(|| format!("TE10 zero at x = {}", te10.at(i, j)[0]), te10.at(i, j)[3].abs());
        }
        let column: Vec<f64> = (0..41).map(|i| te10.at(i, j)[3]).collect();
        let argmin = (0..41).min_by(|&a, &b| column[a].total_cmp(&column[b])).unwrap();
        let argmax = (0..41).max_by(|&a, &b| column[a].total_cmp(&column[b])).unwrap();
        t.require(|| format!("TE10 extrema at i = {argmin}, {argmax}, want 10, 30"), argmin == 10 && argmax == 30);
        t.require(|| "TE10 extrema have equal magnitude and opposite sign".into(), column[10] < 0.0 && column[10] == -column[30]);
    }
    // TM11: zeros at the centre and the four corners
    let tm11 = spinmap("TM", 1, 1, 21, 21);
    for (i, j) in [(0, 0), (20, 0), (0, 20), (20, 20), (10, 10)] {
        t.residual(|| format!("TM11 zero at ({i}, {j})"), tm11.at(i, j)[5]);
    }
    // (m, n) → (2m, 2n) doubles every wavenumber: under the figure
    // normalization each quadrant is the base pattern at twice the amplitude
    for family in ["TM", "TE"] {
        let base = spinmap(family, 1, 1, 21, 21);
        let tiled = spinmap(family, 2, 2, 41, 41);
        let peak = base.rows.iter().map(|r| r[5]).fold(0.0, f64::max);
        let fold = |i: usize| if i >= 20 { i - 20 } else { i };
        let mut worst = 0.0f64;
        for j in 0..41 {
            for i in 0..41 {
                let (a, b) = (tiled.at(i, j), base.at(fold(i), fold(j)));
                for c in 2..5 {
                    worst = worst.max((a[c] - 2.0 * b[c]).abs() / (2.0 * peak));
                }
            }
        }
        // the tiling compares values computed at different arguments, so it
        // is held to a few ulps of the peak rather than to exact zeros
        t.require(|| format!("{family}22 is not a 2x2 tiling of {family}11 (worst {worst:e})"), worst <= 1e-13);
    }
    t
}

// 11 --------------------------------------------------------------------------

fn resolutions_documented() -> Tally {
    let mut t = Tally::new(0.0);
    let doc_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/derivations.md");
    match std::fs::read_to_string(&doc_path) {
        Err(e) => t.require(|| format!("{}: {e}", doc_path.display()), false),
        Ok(doc) => {
            for heading in [
                "## Surface-wave momentum per quantum",
                "## Helicity basis at the poles",
                "## TE modes with a vanishing index",
                "## Total transverse spin",
            ] {
                t.require(|| format!("derivations doc lacks `{heading}`"), doc.contains(heading));
            }
            for check in ["resolution/surface-momentum-form", "resolution/pole-convention"] {
                t.require(|| format!("derivations doc does not cite `{check}`"), doc.contains(check));
            }
        }
    }
    let report = run_checks(Some("resolution/"), CatalogueOptions::default());
    for name in ["resolution/surface-momentum-form", "resolution/pole-convention"] {
        t.require(|| format!("verify lacks {name}"), report.outcomes.iter().any(|o| o.name == name));
    }
    for o in report.failures() {
        t.require(|| format!("{} failed: {:?} {:?}", o.name, o.measurement, o.error), false);
    }
    t
}

type Criterion = (u32, &'static str, fn() -> Tally);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "quadrature vs closed-form totals (W, P_z, S_perp)", quadrature_vs_closed_form_totals),
        (2, "quantization law S_perp = n hbar sin 2theta", quantization_law),
        (3, "surface totals and S_y = 2 n hbar tan theta'", surface_totals),
        (4, "time-average oracle vs phasor densities", oracle_equivalence),
        (5, "structural zeros of the spin densities", structural_zeros),
        (6, "spin-momentum locking", spin_momentum_locking),
        (7, "balance integral", balance_integral_vanishes),
        (8, "effective-mass identities", mass_identities),
        (9, "spin-1 algebra and helicity eigenvectors", spin_algebra),
        (10, "spin-map figure structure", figure_reproduction),
        (11, "reconciliations documented and verified", resolutions_documented),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let started = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(t) if t.failures.is_empty() => {
                println!("criterion {id:>2} PASS  {title}  [worst {:e}, tol {:e}, {secs:.2}s]", t.worst, t.tolerance);
            }
            Ok(t) => {
                failed += 1;
                println!(
                    "criterion {id:>2} FAIL  {title}  [worst {:e}, tol {:e}, {} failing cases]",
                    t.worst,
                    t.tolerance,
                    t.failures.len()
                );
                for f in &t.failures {
                    println!("    {f}");
                }
            }
            Err(_) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {title}  [panicked]");
            }
        }
    }
    println!("\nacceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
