use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Mode indices outside the family's allowed range.
    #[error("rejected mode {family}{m}{n}: {reason}")]
    RejectedMode {
        family: &'static str,
        m: u32,
        n: u32,
        reason: &'static str,
    },

    /// A physical parameter violates its invariant.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Evaluation point outside the region where the field is defined.
    #[error("point ({x}, {y}, {z}) is outside the domain: {reason}")]
    Domain {
        x: f64,
        y: f64,
        z: f64,
        reason: &'static str,
    },

    /// Quadrature too coarse to resolve the integrand.
    #[error("under-resolved quadrature on {axis}: {got} nodes, need at least {suggested}")]
    Resolution {
        axis: &'static str,
        got: usize,
        suggested: usize,
    },

    /// Half-space truncation depth leaves a tail above tolerance.
    #[error("truncation depth {depth} decay lengths leaves tail fraction {tail:e}; use at least {suggested}")]
    Truncation {
        depth: f64,
        tail: f64,
        suggested: f64,
    },

    #[error("spinor is in the {found} representation, expected {expected}")]
    Representation {
        expected: &'static str,
        found: &'static str,
    },

    /// The requested quantity has no derivation for this mode family.
    #[error("{0}")]
    UnsupportedDerivation(&'static str),

    #[error("configuration error: {0}")]
    Config(String),
}
