use core::fmt;

use crate::ideal::IdealViolation;
use crate::ring::ValidationReport;

/// Dimension or range problems in a raw table candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MalformedTables {
    EmptyCarrier,
    Dimension { table: &'static str, expected: usize, found: usize },
    OutOfRange { table: &'static str, value: usize, size: usize },
}

impl fmt::Display for MalformedTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MalformedTables::EmptyCarrier => write!(f, "carrier has no elements"),
            MalformedTables::Dimension { table, expected, found } => {
                write!(f, "{table} table has length {found}, expected {expected}")
            }
            MalformedTables::OutOfRange { table, value, size } => {
                write!(f, "{table} table entry {value} outside carrier of size {size}")
            }
        }
    }
}

/// A pair `(r, s)` of a base ring element and a member of the multiplicative set.
pub type Fraction = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    MalformedTables(MalformedTables),
    InvalidHyperring(ValidationReport),
    RingMismatch,
    ElementOutOfRange { element: usize, size: usize },
    EmptyTuple,
    ZeroExponent,

    EmptyA,
    InvalidModulus(usize),
    TooLarge { size: usize, cap: usize },
    TooFewFactors(usize),
    NotAnIdeal(IdealViolation),
    LengthMismatch { expected: usize, found: usize },
    NotAdditive { a: usize, b: usize },
    NotMultiplicative { a: usize, b: usize },
    /// The image of `a∘b` is strictly contained in `f(a)∘f(b)`.
    NotGoodMultiplicative { a: usize, b: usize },
    NotSurjective { missing: usize },
    KernelNotContained { element: usize },
    DegreeOverflow { degree: usize, dmax: usize },
    EmptyMultiplicativeSet,
    NotMultiplicativelyClosed { a: usize, b: usize },
    NotAnEquivalence { x: Fraction, y: Fraction, z: Fraction },
    IllDefinedTables { op: &'static str, left: Fraction, right: Fraction },

    ImproperIdeal,
    MissingParameter(&'static str),
    ScanCapExceeded { required: u128, cap: u64 },

    IndexOutOfRange { index: usize, len: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedTables(m) => write!(f, "malformed tables: {m}"),
            Error::InvalidHyperring(r) => {
                write!(f, "tables violate {} hyperring axiom(s)", r.failures.len())?;
                if let Some(first) = r.failures.first() {
                    write!(f, ", first: {} at {:?}", first.axiom.name(), first.witness)?;
                }
                Ok(())
            }
            Error::RingMismatch => write!(f, "operands belong to different hyperrings"),
            Error::ElementOutOfRange { element, size } => {
                write!(f, "element {element} outside carrier of size {size}")
            }
            Error::EmptyTuple => write!(f, "tuple product needs at least one factor"),
            Error::ZeroExponent => write!(f, "element powers start at exponent 1"),
            Error::EmptyA => write!(f, "the multiplier set A is empty"),
            Error::InvalidModulus(n) => write!(f, "modulus {n} is below 2"),
            Error::TooLarge { size, cap } => write!(f, "carrier size {size} exceeds cap {cap}"),
            Error::TooFewFactors(k) => write!(f, "a product needs at least 2 factors, got {k}"),
            Error::NotAnIdeal(v) => write!(f, "not a hyperideal: {v}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "map has length {found}, source has {expected} elements")
            }
            Error::NotAdditive { a, b } => write!(f, "map does not preserve {a}+{b}"),
            Error::NotMultiplicative { a, b } => {
                write!(f, "image of {a}∘{b} is not contained in the product of images")
            }
            Error::NotGoodMultiplicative { a, b } => write!(
                f,
                "image of {a}∘{b} is a proper subset of the product of images (not good)"
            ),
            Error::NotSurjective { missing } => write!(f, "map misses target element {missing}"),
            Error::KernelNotContained { element } => {
                write!(f, "kernel element {element} lies outside the ideal")
            }
            Error::DegreeOverflow { degree, dmax } => {
                write!(f, "product degree {degree} exceeds tracked maximum {dmax}")
            }
            Error::EmptyMultiplicativeSet => write!(f, "multiplicative set is empty"),
            Error::NotMultiplicativelyClosed { a, b } => {
                write!(f, "{a}∘{b} does not meet the multiplicative set")
            }
            Error::NotAnEquivalence { x, y, z } => write!(
                f,
                "relation is not transitive: {x:?}~{y:?} and {y:?}~{z:?} but not {x:?}~{z:?}"
            ),
            Error::IllDefinedTables { op, left, right } => {
                write!(f, "{op} on classes depends on representatives at {left:?}, {right:?}")
            }
            Error::ImproperIdeal => write!(f, "predicate requires a proper hyperideal"),
            Error::MissingParameter(p) => write!(f, "predicate requires parameter {p}"),
            Error::ScanCapExceeded { required, cap } => {
                write!(f, "scan of {required} tuples exceeds cap {cap}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} entries")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
