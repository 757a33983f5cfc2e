//! Spin-1 matrices of the six-component field `(E, iB)`, the 4D spin tensor,
//! the standard↔chiral change of representation, and helicity bases.
//!
//! Conventions:
//!
//! * `(τ_k)_{lm} = −i ε_{klm}`, so `(τ·n) v = i n × v`.
//! * `Σ_l = diag(τ_l, τ_l)`, `α_l` has `τ_l` in both off-diagonal blocks.
//! * `S_{lm} = ε_{lmn} Σ_n`, `S_{0l} = −i α_l`, `S_{μν} = −S_{νμ}`.
//! * `U = (1/√2) [[I, I], [I, −I]]` maps the standard spinor `(E, icB)/√2`
//!   to the chiral spinor `((E + icB), (E − icB))/2`; `U = U† = U⁻¹`.
//! * Helicity eigenvectors for a direction `n = (sinϑ cosφ, sinϑ sinφ, cosϑ)`:
//!   `e₊ = e^{iφ} (n₃ cosφ − i sinφ, n₃ sinφ + i cosφ, −ρ)/√2` with
//!   `ρ = √(n₁² + n₂²)`, which is the null vector `(1, i, 0)/√2` rotated from
//!   `e₃` to `n`. It is continuous at the north pole; at the south pole the
//!   conjugate `(1, −i, 0)/√2` is used. `e₋ = e₊*` and `e₀ = n`.

use nalgebra::{DMatrix, Matrix3, SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{CVec3, Vec3, C64};

pub type CMat3 = Matrix3<C64>;
pub type CMat6 = SMatrix<C64, 6, 6>;
pub type CVec6 = SVector<C64, 6>;

/// Commutator table of the spin-tensor generators, computed once by an
/// independent projection and stored as a fixture.
pub const COMMUTATOR_FIXTURE: &str = include_str!("../fixtures/commutator_table.json");

/// Levi-Civita symbol on indices 0..3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn blocks(tl: &CMat3, tr: &CMat3, bl: &CMat3, br: &CMat3) -> CMat6 {
    let mut m = CMat6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(tl);
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(tr);
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(bl);
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(br);
    m
}

pub fn commutator<const N: usize>(a: &SMatrix<C64, N, N>, b: &SMatrix<C64, N, N>) -> SMatrix<C64, N, N> {
    a * b - b * a
}

/// The full set of spin matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrixSet {
    pub tau: [CMat3; 3],
    pub sigma: [CMat6; 3],
    pub alpha: [CMat6; 3],
    /// `s_tensor[μ][ν]`, μ, ν ∈ 0..4.
    pub s_tensor: [[CMat6; 4]; 4],
    pub u: CMat6,
}

/// Names and index pairs of the six independent generators `S_{μν}`, μ < ν.
pub const GENERATORS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn generator_name(pair: (usize, usize)) -> String {
    format!("S{}{}", pair.0, pair.1)
}

pub fn build_spin_matrices() -> SpinMatrixSet {
    let tau: [CMat3; 3] = std::array::from_fn(|k| CMat3::from_fn(|l, m| c(0.0, -levi_civita(k, l, m))));
    let zero = CMat3::zeros();
    let sigma: [CMat6; 3] = std::array::from_fn(|k| blocks(&tau[k], &zero, &zero, &tau[k]));
    let alpha: [CMat6; 3] = std::array::from_fn(|k| blocks(&zero, &tau[k], &tau[k], &zero));
    let mut s_tensor = [[CMat6::zeros(); 4]; 4];
    for l in 0..3 {
        for m in 0..3 {
            let mut s = CMat6::zeros();
            for (n, sig) in sigma.iter().enumerate() {
                s += sig * c(levi_civita(l, m, n), 0.0);
            }
            s_tensor[l + 1][m + 1] = s;
        }
        s_tensor[0][l + 1] = alpha[l] * c(0.0, -1.0);
        s_tensor[l + 1][0] = alpha[l] * c(0.0, 1.0);
    }
    let id = CMat3::identity();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let u = blocks(&id, &id, &id, &(-id)) * c(r, 0.0);
    SpinMatrixSet {
        tau,
        sigma,
        alpha,
        s_tensor,
        u,
    }
}

impl SpinMatrixSet {
    /// `τ·n`
    pub fn tau_dot(&self, n: &Vec3) -> CMat3 {
        self.tau[0] * c(n.x, 0.0) + self.tau[1] * c(n.y, 0.0) + self.tau[2] * c(n.z, 0.0)
    }

    /// `Σ·Σ = Σ_k Σ_k²`
    pub fn sigma_squared(&self) -> CMat6 {
        self.sigma.iter().map(|s| s * s).sum()
    }

    /// `U S_{μν} U⁻¹`: the spin tensor in the chiral representation.
    pub fn chiral_s_tensor(&self) -> [[CMat6; 4]; 4] {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.u * self.s_tensor[mu][nu] * self.u))
    }

    pub fn generators(&self) -> [CMat6; 6] {
        GENERATORS.map(|(a, b)| self.s_tensor[a][b])
    }
}

/// One commutator expanded on the generators: `[left, right] = Σ coeff · generator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<CommutatorTerm>,
}

/// Integer complex coefficient `re + i·im` of one generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorTerm {
    pub generator: String,
    pub re: i64,
    pub im: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorTable {
    pub description: String,
    pub generators: Vec<String>,
    pub commutators: Vec<CommutatorEntry>,
}

impl CommutatorTable {
    pub fn fixture() -> Result<Self> {
        serde_json::from_str(COMMUTATOR_FIXTURE).map_err(|e| Error::Config(format!("commutator fixture: {e}")))
    }
}

/// Result of projecting every commutator onto the generator span.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputedCommutators {
    pub table: CommutatorTable,
    /// Largest Frobenius norm of `[A, B] − Σ c_k G_k` before rounding.
    pub projection_residual: f64,
    /// Largest distance of a projected coefficient from its rounded integer.
    pub rounding_residual: f64,
}

fn frobenius_inner(a: &CMat6, b: &CMat6) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Brute-force commutator table: each `[G_i, G_j]` is projected onto the six
/// generators by a Gram-matrix solve and the coefficients rounded.
pub fn commutator_table(set: &SpinMatrixSet) -> ComputedCommutators {
    let gens = set.generators();
    let gram = SMatrix::<C64, 6, 6>::from_fn(|i, j| frobenius_inner(&gens[i], &gens[j]));
    let gram_inv = gram.try_inverse().expect("spin-tensor generators are linearly independent");
    let names: Vec<String> = GENERATORS.iter().map(|&p| generator_name(p)).collect();
    let mut entries = Vec::new();
    let mut projection_residual = 0.0f64;
    let mut rounding_residual = 0.0f64;
    for i in 0..6 {
        for j in (i + 1)..6 {
            let x = commutator(&gens[i], &gens[j]);
            let rhs = SVector::<C64, 6>::from_fn(|k, _| frobenius_inner(&gens[k], &x));
            let coeffs = gram_inv * rhs;
            let mut recon = CMat6::zeros();
            for (k, g) in gens.iter().enumerate() {
                recon += g * coeffs[k];
            }
            projection_residual = projection_residual.max((recon - x).norm());
            let mut terms = Vec::new();
            for (k, name) in names.iter().enumerate() {
                let (re, im) = (coeffs[k].re.round(), coeffs[k].im.round());
                rounding_residual = rounding_residual.max((coeffs[k] - c(re, im)).norm());
                if re != 0.0 || im != 0.0 {
                    terms.push(CommutatorTerm {
                        generator: name.clone(),
                        re: re as i64,
                        im: im as i64,
                    });
                }
            }
            entries.push(CommutatorEntry {
                left: names[i].clone(),
                right: names[j].clone(),
                terms,
            });
        }
    }
    let description = CommutatorTable::fixture().map(|t| t.description).unwrap_or_default();
    ComputedCommutators {
        table: CommutatorTable {
            description,
            generators: names,
            commutators: entries,
        },
        projection_residual,
        rounding_residual,
    }
}

/// Numerical rank of a set of 6×6 matrices viewed as vectors in C³⁶.
pub fn matrix_span_rank(mats: &[CMat6], tol: f64) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let stacked = DMatrix::<C64>::from_fn(36, mats.len(), |r, col| mats[col][(r / 6, r % 6)]);
    let sv = stacked.svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Ranks of `{iS_{μν}}` alone and together with all their pairwise
/// commutators. Equal ranks of 6 mean a closed six-dimensional Lie algebra.
pub fn closure_ranks(set: &SpinMatrixSet) -> (usize, usize) {
    let i = c(0.0, 1.0);
    let gens: Vec<CMat6> = set.generators().iter().map(|g| g * i).collect();
    let mut all = gens.clone();
    for a in 0..6 {
        for b in (a + 1)..6 {
            all.push(commutator(&gens[a], &gens[b]));
        }
    }
    (matrix_span_rank(&gens, 1e-12), matrix_span_rank(&all, 1e-12))
}

/// Helicity eigenvectors of `τ·n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityEigensystem {
    pub direction: Vec3,
    pub plus: CVec3,
    pub zero: CVec3,
    pub minus: CVec3,
}

impl HelicityEigensystem {
    /// `(λ, e_λ)` for λ = +1, 0, −1.
    pub fn eigenpairs(&self) -> [(f64, CVec3); 3] {
        [(1.0, self.plus), (0.0, self.zero), (-1.0, self.minus)]
    }

    /// Largest `‖(τ·n) e_λ − λ e_λ‖` over the three pairs.
    pub fn eigen_residual(&self) -> f64 {
        let n = self.direction.map(|x| c(x, 0.0));
        self.eigenpairs()
            .iter()
            .map(|(lambda, e)| (n.cross(e) * c(0.0, 1.0) - e * c(*lambda, 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let basis = [self.plus, self.zero, self.minus];
        let mut worst = 0.0f64;
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((u.dotc(v) - c(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Directions closer than this to the unit sphere are accepted as unit.
pub const UNIT_TOLERANCE: f64 = 1e-12;

pub fn helicity_eigensystem(n: &Vec3) -> Result<HelicityEigensystem> {
    if !((n.norm() - 1.0).abs() <= UNIT_TOLERANCE) {
        return Err(Error::Domain {
            x: n.x,
            y: n.y,
            z: n.z,
            reason: "helicity direction must be a unit vector",
        });
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let rho = n.x.hypot(n.y);
    let plus = if rho == 0.0 && n.z < 0.0 {
        CVec3::new(c(r, 0.0), c(0.0, -r), c(0.0, 0.0))
    } else {
        let phi = n.y.atan2(n.x);
        let (s, co) = phi.sin_cos();
        let ph = C64::from_polar(r, phi);
        CVec3::new(ph * c(n.z * co, -s), ph * c(n.z * s, co), ph * c(-rho, 0.0))
    };
    Ok(HelicityEigensystem {
        direction: *n,
        plus,
        zero: n.map(|x| c(x, 0.0)),
        minus: plus.map(|z| z.conj()),
    })
}

/// Helicity coefficients `c_λ = ⟨e_λ, v⟩` (first argument conjugated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityCoefficients {
    pub plus: C64,
    pub zero: C64,
    pub minus: C64,
    pub basis: HelicityEigensystem,
}

impl HelicityCoefficients {
    pub fn reconstruct(&self) -> CVec3 {
        self.basis.plus * self.plus + self.basis.zero * self.zero + self.basis.minus * self.minus
    }

    /// `|c₊|² − |c₋|²`: net helicity along the direction.
    pub fn helicity_imbalance(&self) -> f64 {
        self.plus.norm_sqr() - self.minus.norm_sqr()
    }
}

pub fn decompose_polarization(v: &CVec3, n: &Vec3) -> Result<HelicityCoefficients> {
    let basis = helicity_eigensystem(n)?;
    Ok(HelicityCoefficients {
        plus: basis.plus.dotc(v),
        zero: basis.zero.dotc(v),
        minus: basis.minus.dotc(v),
        basis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Standard,
    Chiral,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Standard => "standard",
            Representation::Chiral => "chiral",
        }
    }
}

/// Six-component field spinor tagged with its representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SixSpinor {
    pub components: CVec6,
    pub representation: Representation,
}

impl SixSpinor {
    /// Standard spinor `(E, icB)/√2`.
    pub fn from_fields(e: &CVec3, b: &CVec3, speed_of_light: f64) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let icb = c(0.0, speed_of_light);
        let components = CVec6::from_fn(|k, _| if k < 3 { e[k] * r } else { b[k - 3] * icb * r });
        Self {
            components,
            representation: Representation::Standard,
        }
    }

    fn require(&self, expected: Representation) -> Result<()> {
        if self.representation != expected {
            return Err(Error::Representation {
                expected: expected.as_str(),
                found: self.representation.as_str(),
            });
        }
        Ok(())
    }

    pub fn to_chiral(&self, set: &SpinMatrixSet) -> Result<Self> {
        self.require(Representation::Standard)?;
        Ok(Self {
            components: set.u * self.components,
            representation: Representation::Chiral,
        })
    }

    pub fn to_standard(&self, set: &SpinMatrixSet) -> Result<Self> {
        self.require(Representation::Chiral)?;
        Ok(Self {
            components: set.u * self.components,
            representation: Representation::Standard,
        })
    }
}

/// Deterministic test directions: a Fibonacci lattice on the sphere, both
/// poles, and points within `1e−9` of each pole.
pub fn test_directions(count: usize) -> Vec<Vec3> {
    let mut dirs = vec![Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -1.0)];
    for &(eps, sign) in &[(1e-9, 1.0), (3e-10, -1.0), (1e-12, 1.0), (2e-11, -1.0)] {
        for k in 0..4 {
            let a = k as f64 * std::f64::consts::FRAC_PI_2 + 0.3;
            let (x, y) = (eps * a.cos(), eps * a.sin());
            dirs.push(Vec3::new(x, y, sign * (1.0 - x * x - y * y).sqrt()));
        }
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let m = count.saturating_sub(dirs.len()).max(1);
    for i in 0..m {
        let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
        let r = (1.0 - z * z).sqrt();
        let a = golden * i as f64;
        dirs.push(Vec3::new(r * a.cos(), r * a.sin(), z));
    }
    dirs.truncate(count);
    dirs
}
