//! Run configuration: one JSON document, optionally overridden field by field
//! from the command line, resolved into a validated mode specification.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use transpin::observables::{quantized_guided, quantized_surface, QuadratureConfig};
use transpin::spinmap::{normalize_guided, normalize_surface, Normalization};
use transpin::{
    Direction, Family, GuidedModeSpec, ModeIndex, PhysicalConstants, SpinCombination, SurfaceWaveSpec, UnitSystem,
    WaveguideGeometry,
};

use crate::error::{CliError, CliResult};

pub const DEFAULT_GRID: usize = 41;
pub const DEFAULT_MAP_DEPTH: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: ModeConfig,
    #[serde(default)]
    pub units: UnitSystem,
    /// How the electric and magnetic spin parts combine.
    #[serde(default)]
    pub combination: SpinCombination,
    #[serde(default)]
    pub normalize: Normalization,
    #[serde(default)]
    pub grid: GridConfig,
    /// Surface-wave map extent in decay lengths `1/κ`.
    #[serde(default = "default_depth")]
    pub depth: f64,
    /// Output file; standard output when absent or `-`.
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

fn default_depth() -> f64 {
    DEFAULT_MAP_DEPTH
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            nx: DEFAULT_GRID,
            ny: DEFAULT_GRID,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Guided,
    Surface,
}

/// Mode parameters. Which fields are required depends on `kind`:
///
/// * guided: `m`, `n`, `a`, `b`, `length`, and one of `omega` / `omega_ratio`;
/// * surface: `eta`, one of `phi` (rad) / `phi_deg`, `omega`, `area`.
///
/// The amplitude comes from exactly one of `amplitude`, `n_quanta`, or the
/// `paper-figures` normalization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeConfig {
    pub kind: ModeKind,
    pub family: Family,
    #[serde(default)]
    pub direction: Direction,
    pub amplitude: Option<f64>,
    pub n_quanta: Option<u64>,
    pub omega: Option<f64>,
    pub omega_ratio: Option<f64>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub length: Option<f64>,
    pub eta: Option<f64>,
    pub phi: Option<f64>,
    pub phi_deg: Option<f64>,
    pub area: Option<f64>,
}

/// A fully resolved, validated mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedMode {
    Guided(GuidedModeSpec),
    Surface(SurfaceWaveSpec),
}

/// Load the configuration from `path` (or start from an empty document),
/// apply `overrides` as `(dotted.path, value)` pairs, and deserialize.
/// Every error names the offending key.
pub fn load(path: Option<&Path>, overrides: &[(&str, Value)]) -> CliResult<RunConfig> {
    let mut doc = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            parse_document(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
        }
        None => Value::Object(Map::new()),
    };
    for (key, value) in overrides {
        set_path(&mut doc, key, value.clone())?;
    }
    from_value(doc)
}

fn describe<E: std::fmt::Display>(e: serde_path_to_error::Error<E>) -> String {
    let path = e.path().to_string();
    if path == "." {
        e.into_inner().to_string()
    } else {
        format!("at key `{path}`: {}", e.into_inner())
    }
}

/// Parse JSON text, reporting syntax errors with the key being read.
pub fn parse_document(text: &str) -> Result<Value, String> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: Value = serde_path_to_error::deserialize(&mut de).map_err(describe)?;
    de.end().map_err(|e| e.to_string())?;
    Ok(value)
}

pub fn from_value(doc: Value) -> CliResult<RunConfig> {
    serde_path_to_error::deserialize(doc).map_err(|e| CliError::Config(describe(e)))
}

fn set_path(doc: &mut Value, key: &str, value: Value) -> CliResult<()> {
    let mut node = doc;
    let mut parts = key.split('.').peekable();
    while let Some(part) = parts.next() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("cannot override `{key}`: parent is not an object")))?;
        if parts.peek().is_none() {
            obj.insert(part.to_owned(), value);
            return Ok(());
        }
        node = obj.entry(part).or_insert_with(|| Value::Object(Map::new()));
    }
    Ok(())
}

fn require<T: Copy>(value: Option<T>, key: &str, kind: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Config(format!("at key `mode.{key}`: required for {kind} modes")))
}

fn forbid<T>(value: &Option<T>, key: &str, kind: &str) -> CliResult<()> {
    match value {
        Some(_) => Err(CliError::Config(format!("at key `mode.{key}`: not used by {kind} modes"))),
        None => Ok(()),
    }
}

fn exactly_one(keys: &[(&str, bool)]) -> CliResult<()> {
    let set: Vec<&str> = keys.iter().filter(|(_, on)| *on).map(|(k, _)| *k).collect();
    if set.len() == 1 {
        return Ok(());
    }
    let names: Vec<&str> = keys.iter().map(|(k, _)| *k).collect();
    let msg = if set.is_empty() {
        format!("one of {} is required", names.join(", "))
    } else {
        format!("{} conflict; give only one", set.join(" and "))
    };
    Err(CliError::Config(msg))
}

impl RunConfig {
    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants::for_units(self.units)
    }

    /// Output path, or `None` for standard output.
    pub fn output_path(&self) -> Option<&Path> {
        self.output.as_deref().filter(|p| p != &Path::new("-"))
    }

    pub fn validate_grid(&self) -> CliResult<()> {
        let GridConfig { nx, ny } = self.grid;
        if nx < 2 || ny < 2 {
            return Err(CliError::Config(format!("at key `grid`: nx and ny must be at least 2, got {nx} x {ny}")));
        }
        if !(self.depth.is_finite() && self.depth > 0.0) {
            return Err(CliError::Config(format!("at key `depth`: must be positive, got {}", self.depth)));
        }
        Ok(())
    }

    /// Build the mode and fix its amplitude.
    pub fn resolve(&self) -> CliResult<ResolvedMode> {
        let m = &self.mode;
        let figures = self.normalize == Normalization::PaperFigures;
        exactly_one(&[
            ("mode.amplitude", m.amplitude.is_some()),
            ("mode.n_quanta", m.n_quanta.is_some()),
            ("normalize = paper-figures", figures),
        ])?;
        // placeholder amplitude until the chosen rule replaces it
        let amplitude = m.amplitude.unwrap_or(1.0);
        let constants = self.constants();
        match m.kind {
            ModeKind::Guided => {
                for (key, v) in [("eta", m.eta), ("phi", m.phi), ("phi_deg", m.phi_deg), ("area", m.area)] {
                    forbid(&v, key, "guided")?;
                }
                let geometry = WaveguideGeometry::new(
                    require(m.a, "a", "guided")?,
                    require(m.b, "b", "guided")?,
                    require(m.length, "length", "guided")?,
                )?;
                let index = ModeIndex::new(m.family, require(m.m, "m", "guided")?, require(m.n, "n", "guided")?)?;
                exactly_one(&[("mode.omega", m.omega.is_some()), ("mode.omega_ratio", m.omega_ratio.is_some())])?;
                let spec = match (m.omega, m.omega_ratio) {
                    (Some(omega), _) => GuidedModeSpec::new(geometry, index, omega, amplitude, m.direction, constants)?,
                    (_, Some(ratio)) => {
                        GuidedModeSpec::at_cutoff_ratio(geometry, index, ratio, amplitude, m.direction, constants)?
                    }
                    (None, None) => unreachable!("checked above"),
                };
                let spec = match m.n_quanta {
                    Some(n) => quantized_guided(n, &spec)?,
                    None => normalize_guided(&spec, self.normalize)?,
                };
                Ok(ResolvedMode::Guided(spec))
            }
            ModeKind::Surface => {
                for (key, v) in [("a", m.a), ("b", m.b), ("length", m.length), ("omega_ratio", m.omega_ratio)] {
                    forbid(&v, key, "surface")?;
                }
                forbid(&m.m, "m", "surface")?;
                forbid(&m.n, "n", "surface")?;
                exactly_one(&[("mode.phi", m.phi.is_some()), ("mode.phi_deg", m.phi_deg.is_some())])?;
                let phi = m.phi.or(m.phi_deg.map(f64::to_radians)).expect("checked above");
                let spec = SurfaceWaveSpec::new(
                    m.family,
                    require(m.eta, "eta", "surface")?,
                    phi,
                    require(m.omega, "omega", "surface")?,
                    amplitude,
                    require(m.area, "area", "surface")?,
                    m.direction,
                    constants,
                )?;
                let spec = match m.n_quanta {
                    Some(n) => quantized_surface(n, &spec)?,
                    None => normalize_surface(&spec, self.normalize),
                };
                Ok(ResolvedMode::Surface(spec))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn guided_doc() -> Value {
        json!({
            "mode": {"kind": "guided", "family": "TM", "m": 1, "n": 1,
                     "a": 2.0, "b": 1.0, "length": 1.0, "omega_ratio": 1.5, "amplitude": 1.0},
            "units": "natural"
        })
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = from_value(guided_doc()).unwrap();
        assert_eq!(cfg.grid, GridConfig { nx: 41, ny: 41 });
        assert_eq!(cfg.combination, SpinCombination::Single);
        assert_eq!(cfg.depth, DEFAULT_MAP_DEPTH);
        assert!(cfg.output_path().is_none());
        let ResolvedMode::Guided(spec) = cfg.resolve().unwrap() else { panic!() };
        assert!((spec.omega - 1.5 * spec.cutoff()).abs() < 1e-15);
    }

    #[test]
    fn overrides_create_nested_keys() {
        let mut doc = guided_doc();
        set_path(&mut doc, "grid.nx", json!(7)).unwrap();
        set_path(&mut doc, "mode.m", json!(2)).unwrap();
        let cfg = from_value(doc).unwrap();
        assert_eq!(cfg.grid.nx, 7);
        assert_eq!(cfg.grid.ny, 41);
        assert_eq!(cfg.mode.m, Some(2));
    }

    #[test]
    fn type_errors_name_the_key() {
        let mut doc = guided_doc();
        doc["mode"]["m"] = json!("one");
        let err = from_value(doc).unwrap_err().to_string();
        assert!(err.contains("mode.m"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected_with_path() {
        let mut doc = guided_doc();
        doc["grid"] = json!({"nx": 3, "nz": 4});
        let err = from_value(doc).unwrap_err().to_string();
        assert!(err.contains("grid") && err.contains("nz"), "{err}");
    }

    #[test]
    fn syntax_errors_name_the_key() {
        let err = parse_document(r#"{"mode": {"kind": "guided", "m": 1,, }}"#).unwrap_err();
        assert!(err.contains("mode"), "{err}");
    }

    #[test]
    fn amplitude_sources_are_exclusive() {
        let mut doc = guided_doc();
        doc["mode"]["n_quanta"] = json!(1);
        assert!(matches!(from_value(doc).unwrap().resolve(), Err(CliError::Config(_))));
        let mut doc = guided_doc();
        doc["mode"].as_object_mut().unwrap().remove("amplitude");
        let err = from_value(doc).unwrap().resolve().unwrap_err().to_string();
        assert!(err.contains("required"), "{err}");
    }

    #[test]
    fn missing_and_misplaced_fields() {
        let mut doc = guided_doc();
        doc["mode"].as_object_mut().unwrap().remove("b");
        let err = from_value(doc).unwrap().resolve().unwrap_err().to_string();
        assert!(err.contains("mode.b"), "{err}");
        let mut doc = guided_doc();
        doc["mode"]["eta"] = json!(1.5);
        let err = from_value(doc).unwrap().resolve().unwrap_err().to_string();
        assert!(err.contains("mode.eta"), "{err}");
    }

    #[test]
    fn surface_resolves_with_degrees() {
        let doc = json!({
            "mode": {"kind": "surface", "family": "TE", "eta": 1.5, "phi_deg": 60.0,
                     "omega": 2.0, "area": 1.0, "n_quanta": 3, "direction": "-z"},
            "units": "natural"
        });
        let ResolvedMode::Surface(spec) = from_value(doc).unwrap().resolve().unwrap() else { panic!() };
        assert!((spec.phi - 60f64.to_radians()).abs() < 1e-15);
        assert!(spec.kz() < 0.0);
    }

    #[test]
    fn grid_bounds() {
        let mut cfg = from_value(guided_doc()).unwrap();
        cfg.grid.nx = 1;
        assert!(matches!(cfg.validate_grid(), Err(CliError::Config(_))));
    }
}
