use core::fmt;

/// Errors shared by all kernels. Indices identify the offending row,
/// degree or condition so callers can report exactly what failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A pairing or moment operation needed a moment beyond the stored horizon.
    HorizonExceeded { needed: usize, horizon: usize },
    /// A requested product window cannot be computed exactly from the stored sections.
    WindowTooLarge { window: usize, available: usize },
    /// A recombination coefficient array is not d x d unit lower triangular.
    BadShape,
    /// An expansion coefficient outside the guaranteed band was nonzero.
    BandViolation { row: usize, col: usize },
    /// The lowest recurrence band a_{n,n-d} vanished at row `row`.
    ZeroLowBand { row: usize },
    /// The edge band of a connection matrix vanished at row `row`.
    ZeroEdgeBand { row: usize },
    /// The moment linear system for degree `degree` is singular.
    RegularityFailure { degree: usize },
    /// A pairing required to be nonzero by d-orthogonality vanished.
    DegeneracyFailure { degree: usize, j: usize, m: usize },
    /// Level `level` of the transformation chain is not regular.
    ChainBroken { level: usize },
    /// P_n^{(d)}(a) = 0, which the recurrence relation forbids.
    ZeroAtShift { degree: usize },
    /// A mass list had the wrong length for the band parameter d.
    BadMassCount { expected: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::HorizonExceeded { needed, horizon } => {
                write!(f, "moment horizon exceeded: needed {needed}, have {horizon}")
            }
            Error::WindowTooLarge { window, available } => {
                write!(f, "window {window} too large for stored section of {available} rows")
            }
            Error::BadShape => write!(f, "coefficient array is not unit lower triangular"),
            Error::BandViolation { row, col } => {
                write!(f, "nonzero expansion coefficient outside band at ({row}, {col})")
            }
            Error::ZeroLowBand { row } => write!(f, "a_{{n,n-d}} = 0 at row {row}"),
            Error::ZeroEdgeBand { row } => write!(f, "connection edge band vanished at row {row}"),
            Error::RegularityFailure { degree } => {
                write!(f, "singular orthogonality system at degree {degree}")
            }
            Error::DegeneracyFailure { degree, j, m } => {
                write!(f, "pairing <u_{j}, x^{m} P_{degree}> vanished but must be nonzero")
            }
            Error::ChainBroken { level } => {
                write!(f, "transformation chain broken at level {level}")
            }
            Error::ZeroAtShift { degree } => {
                write!(f, "P_{degree}^(d)(a) = 0; incompatible with the recurrence")
            }
            Error::BadMassCount { expected, got } => {
                write!(f, "expected {expected} masses, got {got}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
