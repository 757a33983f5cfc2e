use serde::{Deserialize, Serialize};

/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum magnetic permeability (H/m), CODATA 2018.
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
/// Reduced Planck constant (J·s), exact since the 2019 SI redefinition.
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    #[default]
    Si,
    /// c = ε0 = μ0 = ħ = 1.
    Natural,
}

/// The four constants every formula needs.
///
/// `eps0` is derived as `1 / (mu0 c²)` so that `c² ε0 μ0 = 1` holds to the
/// last bit rather than to the rounding of tabulated values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub eps0: f64,
    pub mu0: f64,
    pub hbar: f64,
}

impl PhysicalConstants {
    pub fn si() -> Self {
        let c = SPEED_OF_LIGHT;
        let mu0 = VACUUM_PERMEABILITY;
        Self {
            c,
            eps0: 1.0 / (mu0 * c * c),
            mu0,
            hbar: REDUCED_PLANCK,
        }
    }

    pub fn natural() -> Self {
        Self {
            c: 1.0,
            eps0: 1.0,
            mu0: 1.0,
            hbar: 1.0,
        }
    }

    pub fn for_units(units: UnitSystem) -> Self {
        match units {
            UnitSystem::Si => Self::si(),
            UnitSystem::Natural => Self::natural(),
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}
