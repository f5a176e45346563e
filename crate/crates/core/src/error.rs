use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// `t_+ = 0` or `t_- = 0`: the momentum deformation diverges.
    #[error("exceptional coupling: t+ = {t_plus}, t- = {t_minus}")]
    ExceptionalCoupling { t_plus: f64, t_minus: f64 },

    #[error("surrogate formulas require t2 = 1, got t2 = {0}")]
    UnsupportedHopping(f64),

    #[error("defective matrix: {0}")]
    DefectiveMatrix(String),

    #[error("eigenvalue iteration failed to converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("ambiguous filling: Re(E) = {0} lies within tolerance of the chemical potential")]
    AmbiguousFilling(f64),

    #[error("gap closed: min |E(k)| = {0:e}")]
    GapClosed(f64),

    #[error("parameter point lies on a critical line ({0})")]
    OnCriticalLine(String),

    #[error("complex leakage: Re = {re:e}, Im = {im:e}")]
    ComplexLeakage { re: f64, im: f64 },

    #[error("temperature must be positive, got {0}")]
    NonPositiveTemperature(f64),

    #[error("finite-difference step {step} too large for critical distance {distance}")]
    StepTooLarge { step: f64, distance: f64 },

    #[error("fit window holds {0} points, at least 5 are required")]
    WindowTooNarrow(usize),

    #[error("found {0} peaks, at least 2 are required")]
    NoPeaksFound(usize),

    #[error("need at least 5 system sizes, got {0}")]
    InsufficientSizes(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
