use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    NotPrimePower(u64),
    FieldTooLarge {
        p: u64,
        m: u32,
    },
    InvalidPolynomial(&'static str),
    NotPrimitivePolynomial,
    NotPrimitiveElement(u32),
    ElementOutOfRange(u32),
    DivisionByZero,
    ZeroHasNoLog,
    NotOneMod4(u64),
    NotOneMod8(u64),
    OrderDoesNotDivide {
        e: u32,
        q: u64,
    },
    NoRepresentation(&'static str),
    /// A fourth root of unity that should lie in `GF(p)` did not.
    NotInPrimeSubfield(u32),
    IndexOutOfRange {
        index: u32,
        e: u32,
    },
    NoClosedForm(u32),
    /// A closed-form numerator was not divisible by its denominator.
    NonIntegralFormula {
        entry: (u32, u32),
        numerator: i64,
        denominator: i64,
    },
    CalibrationAmbiguous {
        matches: usize,
    },
    DuplicateElement(u32),
    NotDisjoint(u32),
    ContainsZero(usize),
    NotApplicable(&'static str),
    PredictionMismatch {
        recipe: &'static str,
        claim: String,
        detail: String,
    },
    DeltaNotConstant,
    ProfileNotTwoValued(usize),
    HypothesisNotMet(&'static str),
    /// A recipe's parameter formula did not divide exactly.
    FormulaNotIntegral {
        recipe: &'static str,
        numerator: i64,
        denominator: i64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            Error::FieldTooLarge { p, m } => write!(f, "field {p}^{m} exceeds 2^31 elements"),
            Error::InvalidPolynomial(why) => write!(f, "invalid polynomial: {why}"),
            Error::NotPrimitivePolynomial => f.write_str("polynomial is not primitive"),
            Error::NotPrimitiveElement(g) => write!(f, "element {g} is not a primitive element"),
            Error::ElementOutOfRange(c) => write!(f, "element code {c} is outside the field"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::ZeroHasNoLog => f.write_str("zero has no discrete logarithm"),
            Error::NotOneMod4(q) => write!(f, "{q} is not congruent to 1 mod 4"),
            Error::NotOneMod8(q) => write!(f, "{q} is not congruent to 1 mod 8"),
            Error::OrderDoesNotDivide { e, q } => write!(f, "order {e} does not divide {q}-1"),
            Error::NoRepresentation(form) => write!(f, "no proper representation by {form}"),
            Error::NotInPrimeSubfield(c) => {
                write!(f, "element {c} was expected in the prime subfield")
            }
            Error::IndexOutOfRange { index, e } => {
                write!(f, "class index {index} out of range for order {e}")
            }
            Error::NoClosedForm(e) => write!(f, "no closed form for cyclotomic numbers of order {e}"),
            Error::NonIntegralFormula { entry, numerator, denominator } => {
                write!(f, "closed form for ({},{}) gives {numerator}/{denominator}", entry.0, entry.1)
            }
            Error::CalibrationAmbiguous { matches } => {
                write!(f, "order-8 sign calibration matched {matches} sign choices (expected at least one)")
            }
            Error::DuplicateElement(c) => write!(f, "element {c} appears twice"),
            Error::NotDisjoint(c) => write!(f, "sets are not disjoint (element {c})"),
            Error::ContainsZero(i) => write!(f, "set {i} contains zero"),
            Error::NotApplicable(id) => write!(f, "recipe {id} is not applicable to this field"),
            Error::PredictionMismatch { recipe, claim, detail } => {
                write!(f, "{recipe} / {claim}: prediction mismatch: {detail}")
            }
            Error::DeltaNotConstant => f.write_str("lambda_i - mu_i is not constant"),
            Error::ProfileNotTwoValued(i) => {
                write!(f, "difference profile of set {i} is not two-valued on (A_i, G*\\A_i)")
            }
            Error::HypothesisNotMet(why) => write!(f, "hypothesis not met: {why}"),
            Error::FormulaNotIntegral { recipe, numerator, denominator } => {
                write!(f, "{recipe}: parameter formula gives {numerator}/{denominator}")
            }
        }
    }
}

impl core::error::Error for Error {}
