use core::fmt;

/// Parity requirement attached to predicates that are only defined for even
/// or odd variable counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Variable count outside `1..=MAX_VARS` (or an op-specific ceiling on combined sizes).
    VariableCount { n: usize },
    /// A truth table or value list does not have `2^n` entries.
    TableLength { expected: usize, got: usize },
    /// A monomial mentions a variable index outside `1..=n`.
    VariableOutOfRange { var: usize, n: usize },
    /// Two operands were expected to live on the same number of variables.
    MismatchedVariables { left: usize, right: usize },
    /// The linear part of an affine map is singular.
    NotInvertible,
    /// The input has higher degree than the operation accepts.
    DegreeTooHigh { max: usize, found: usize },
    /// A quadratic was required but the input is affine.
    AffineInput,
    /// A cubic was required.
    NotCubic { found: usize },
    /// A vectorial function's degree lies outside the range the result holds for.
    DegreeOutOfRange { min: usize, max: usize, found: usize },
    /// A predicate that is only defined for one parity of `n`.
    Parity { n: usize, required: Parity },
    /// Parts of a split sum share a variable.
    OverlappingBlocks { var: usize },
    /// The brute-force path for `op` is capped at `cap` variables.
    SizeCap { op: &'static str, n: usize, cap: usize },
    /// Component index `λ = 0` has no meaning.
    ZeroComponent,
    /// A point does not fit in `n` bits.
    PointOutOfRange { point: u32, n: usize },
    /// Any other violated precondition on numeric parameters.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableCount { n } => {
                write!(f, "variable count {n} outside 1..={}", crate::MAX_VARS)
            }
            Error::TableLength { expected, got } => {
                write!(f, "expected {expected} table entries, got {got}")
            }
            Error::VariableOutOfRange { var, n } => {
                write!(f, "variable x{var} out of range for {n} variables")
            }
            Error::MismatchedVariables { left, right } => {
                write!(f, "operands on {left} and {right} variables")
            }
            Error::NotInvertible => f.write_str("matrix is not invertible over F2"),
            Error::DegreeTooHigh { max, found } => {
                write!(f, "degree {found} exceeds maximum {max}")
            }
            Error::AffineInput => f.write_str("function is affine, a quadratic is required"),
            Error::NotCubic { found } => write!(f, "function has degree {found}, expected 3"),
            Error::DegreeOutOfRange { min, max, found } => {
                write!(f, "degree {found} outside {min}..={max}")
            }
            Error::Parity { n, required } => {
                let p = match required {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                };
                write!(f, "predicate requires {p} n, got n = {n}")
            }
            Error::OverlappingBlocks { var } => {
                write!(f, "variable x{var} appears in more than one block")
            }
            Error::SizeCap { op, n, cap } => {
                write!(f, "{op} is capped at n <= {cap}, got n = {n}")
            }
            Error::ZeroComponent => f.write_str("component index must be nonzero"),
            Error::PointOutOfRange { point, n } => {
                write!(f, "point {point:#x} does not fit in {n} bits")
            }
            Error::InvalidParameter(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_cap(op: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { op, n, cap })
    } else {
        Ok(())
    }
}
