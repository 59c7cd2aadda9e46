use core::fmt;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
    },
    /// A closed-form expression left its domain (non-positive radicand or denominator).
    OutOfDomain(&'static str),
    /// The point lies strictly inside the droplet, where the exterior formulas do not apply.
    InsideDomain,
    /// The point sits on a pole of the evaluated function.
    Pole,
    /// The parameters fall in Regime III, for which no explicit description is available.
    UnsupportedRegime,
    /// Inputs that should describe the same droplet disagree.
    Inconsistent(&'static str),
    /// A bracketing root search found no sign change. Indicates a bug or a broken invariant.
    Bracket(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::OutOfDomain(what) => write!(f, "out of domain: {what}"),
            Error::InsideDomain => f.write_str("point lies inside the droplet"),
            Error::Pole => f.write_str("point is a pole"),
            Error::UnsupportedRegime => f.write_str("unsupported regime (III)"),
            Error::Inconsistent(what) => write!(f, "inconsistent input: {what}"),
            Error::Bracket(what) => write!(f, "no sign change while bracketing {what}"),
        }
    }
}

impl core::error::Error for Error {}
