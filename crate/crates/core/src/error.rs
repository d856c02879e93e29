use std::fmt;

use thiserror::Error;

/// Which level of the tower a polynomial belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerLevel {
    /// `f`, defining GF(q) over GF(p).
    Base,
    /// `g`, defining GF(q^n) over GF(q).
    Extension,
}

impl fmt::Display for TowerLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerLevel::Base => f.write_str("f over GF(p)"),
            TowerLevel::Extension => f.write_str("g over GF(q)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial {0} is reducible")]
    ReduciblePolynomial(TowerLevel),
    #[error("polynomial {0} has degree zero")]
    DegreeZero(TowerLevel),
    #[error("polynomial {0} is not monic")]
    NotMonic(TowerLevel),
    #[error("coefficient {value} is out of range for modulus {modulus}")]
    CoefficientOutOfRange { value: u64, modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different towers or have the wrong shape")]
    TowerMismatch,
    #[error("{m} does not divide {n}")]
    NotADivisor { m: usize, n: usize },
    #[error("field of size {size} exceeds the enumeration bound {bound}")]
    FieldTooLarge { size: u128, bound: u128 },
    #[error("scalar is not in the base field GF(q)")]
    ScalarNotInBaseField,
    #[error("matrix is not a Dickson matrix")]
    NotDickson,
    #[error("polynomial is not a permutation")]
    NotAPermutation,
    #[error("elements do not form a basis over GF(q)")]
    NotABasis,
    #[error("right division by the zero skew polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("expected rank {expected}, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("coefficients do not lie in the subfield GF(q^{m})")]
    NotSubfieldPoly { m: usize },
    #[error("element does not generate a normal basis")]
    NotNormalBasis,
    #[error("trace form is not the full form over the given basis")]
    NotFullForm,
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable identifier, used in machine-readable error payloads.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::DegreeZero(_) => "DegreeZero",
            Error::NotMonic(_) => "NotMonic",
            Error::CoefficientOutOfRange { .. } => "CoefficientOutOfRange",
            Error::DivisionByZero => "DivisionByZero",
            Error::TowerMismatch => "TowerMismatch",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::ScalarNotInBaseField => "ScalarNotInBaseField",
            Error::NotDickson => "NotDickson",
            Error::NotAPermutation => "NotAPermutation",
            Error::NotABasis => "NotABasis",
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::BothZero => "BothZero",
            Error::WrongRank { .. } => "WrongRank",
            Error::NotSubfieldPoly { .. } => "NotSubfieldPoly",
            Error::NotNormalBasis => "NotNormalBasis",
            Error::NotFullForm => "NotFullForm",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::Malformed(_) => "MalformedInput",
        }
    }

    /// Errors caused by the shape or validity of the input itself rather than
    /// by a failed mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::ReduciblePolynomial(_)
                | Error::DegreeZero(_)
                | Error::NotMonic(_)
                | Error::CoefficientOutOfRange { .. }
                | Error::TowerMismatch
                | Error::Malformed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
