//! Error types shared across the crate.

use std::fmt;

/// Why a map has no unique fixed point: a translation fixes nothing,
/// the identity fixes everything.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DegenerateIsometry {
    Identity,
    Translation { dx: f64, dy: f64 },
}

#[derive(Debug)]
pub enum Error {
    /// The rotor is (numerically) 1, so `z = f(z)` has no unique solution.
    NoUniqueFixedPoint(DegenerateIsometry),
    /// Input quadrilateral violates a constructor invariant.
    DegenerateQuadrilateral(String),
    DegenerateTriangle(String),
    DegenerateHexagon(String),
    /// `alpha_i + alpha_j` is a multiple of 2*pi; the pivot center is undefined.
    PivotUndefined {
        i: u8,
        j: u8,
        n: i32,
    },
    /// Closure relation `a1 - a2 + a3 - a4 = 0` (or an angle relation implied
    /// by it) fails beyond the accepted tolerance. Residual is scale-relative.
    NotAParallelogram {
        residual: f64,
        tolerance: f64,
    },
    /// Tuple is not among the eight admissible square-producing tuples.
    NotAdmissibleTuple {
        digits: [u8; 4],
    },
    /// Digits are not a permutation of 1..=4.
    InvalidPermutation {
        digits: [u8; 4],
    },
    InvalidOffsets(String),
    /// The first-stage parallelogram of the two-stage square map collapsed.
    DegenerateIntermediate {
        area: f64,
    },
    /// Center-line fitting needs at least two centers per parity class.
    InsufficientPoints {
        even: usize,
        odd: usize,
    },
    SamplingExhausted {
        kind: &'static str,
        attempts: u32,
    },
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    ValidationError(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NoUniqueFixedPoint(DegenerateIsometry::Identity) => {
                write!(f, "no unique fixed point: the map is the identity")
            }
            Error::NoUniqueFixedPoint(DegenerateIsometry::Translation { dx, dy }) => {
                write!(
                    f,
                    "no unique fixed point: the map is a translation by ({dx}, {dy})"
                )
            }
            Error::DegenerateQuadrilateral(why) => write!(f, "degenerate quadrilateral: {why}"),
            Error::DegenerateTriangle(why) => write!(f, "degenerate triangle: {why}"),
            Error::DegenerateHexagon(why) => write!(f, "degenerate hexagon: {why}"),
            Error::PivotUndefined { i, j, n } => write!(
                f,
                "pivot O({i}{j},{n}) undefined: alpha_{i} + alpha_{j} is a multiple of 2*pi"
            ),
            Error::NotAParallelogram {
                residual,
                tolerance,
            } => write!(
                f,
                "not a parallelogram: relative residual {residual:.3e} exceeds {tolerance:.3e}"
            ),
            Error::NotAdmissibleTuple { digits } => write!(
                f,
                "tuple ({},{},{},{}) is not admissible for the square construction",
                digits[0], digits[1], digits[2], digits[3]
            ),
            Error::InvalidPermutation { digits } => write!(
                f,
                "({},{},{},{}) is not a permutation of (1,2,3,4)",
                digits[0], digits[1], digits[2], digits[3]
            ),
            Error::InvalidOffsets(why) => write!(f, "invalid angle offsets: {why}"),
            Error::DegenerateIntermediate { area } => write!(
                f,
                "first-stage parallelogram is degenerate (area {area:.3e}); squares would collapse"
            ),
            Error::InsufficientPoints { even, odd } => write!(
                f,
                "center-line fit needs two centers per parity, got {even} even and {odd} odd"
            ),
            Error::SamplingExhausted { kind, attempts } => {
                write!(f, "could not sample a valid {kind} in {attempts} attempts")
            }
            Error::ParseError {
                line,
                column,
                message,
            } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            Error::ValidationError(why) => write!(f, "invalid input: {why}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
