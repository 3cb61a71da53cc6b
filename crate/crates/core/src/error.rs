use thiserror::Error;

/// Errors raised by the library. `exit_code` maps them onto the CLI contract.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no hat ball for x0 = 0 in the ball ambient; use the origin branch")]
    NoHatBall,
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("immersion lost at (u, v) = ({u:.6}, {v:.6}): metric determinant {det:e}")]
    Immersion { u: f64, v: f64, det: f64 },
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("winding number undefined: point at distance {distance:e} from the curve")]
    UndefinedWinding { distance: f64 },
    #[error("resolution error: {found} samples inside the smallest ball, {required} required")]
    Resolution { required: usize, found: usize },
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("surface is not minimal: max |H| = {0:e}")]
    NonMinimal(f64),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 2 for usage and configuration problems, 1 for everything numeric or geometric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) => 2,
            _ => 1,
        }
    }
}
