use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::numbers::Enclosure;

/// Failure modes shared by every module.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// The number description cannot be refined to the requested width.
    /// Carries the tightest enclosure that was reached.
    PrecisionUnattainable { best: Box<Enclosure> },
    /// A threshold comparison stayed ambiguous after the refinement budget.
    Undecidable { what: String },
    /// A continued fraction ran out of partial quotients.
    DepthExceeded { needed: usize, available: usize },
    /// An Ostrowski digit string broke one of the digit rules.
    InvalidDigits(DigitRule),
    /// Input outside an operation's admissible range.
    InvalidParameter(String),
    /// An enumeration or construction would exceed its size budget.
    BudgetExceeded(String),
    /// A property that the mathematics guarantees failed to certify.
    NotCertified(String),
}

/// The three constraints on Ostrowski digits `c_1, c_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitRule {
    /// `c_1 < a_1`.
    FirstBelowA1 { c1: String, a1: String },
    /// `c_{k+1} <= a_{k+1}`.
    AtMostQuotient {
        index: usize,
        digit: String,
        quotient: String,
    },
    /// `c_{k+1} = a_{k+1}` forces `c_k = 0`.
    FullDigitNeedsZeroBelow { index: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn unattainable(best: Enclosure) -> Self {
        Error::PrecisionUnattainable {
            best: Box::new(best),
        }
    }

    pub fn undecidable(what: impl Into<String>) -> Self {
        Error::Undecidable { what: what.into() }
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExceeded(msg.into())
    }

    /// Short stable identifier, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PrecisionUnattainable { .. } => "precision_unattainable",
            Error::Undecidable { .. } => "undecidable_at_budget",
            Error::DepthExceeded { .. } => "depth_exceeded",
            Error::InvalidDigits(_) => "invalid_digits",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::NotCertified(_) => "not_certified",
        }
    }
}

impl fmt::Display for DigitRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitRule::FirstBelowA1 { c1, a1 } => {
                write!(f, "first digit c_1 = {c1} must be < a_1 = {a1}")
            }
            DigitRule::AtMostQuotient {
                index,
                digit,
                quotient,
            } => {
                write!(
                    f,
                    "digit c_{index} = {digit} exceeds a_{index} = {quotient}"
                )
            }
            DigitRule::FullDigitNeedsZeroBelow { index } => {
                write!(f, "c_{index} = a_{index} requires c_{} = 0", index - 1)
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionUnattainable { best } => write!(
                f,
                "precision unattainable; best enclosure has width {}",
                best.width()
            ),
            Error::Undecidable { what } => write!(f, "undecidable at budget: {what}"),
            Error::DepthExceeded { needed, available } => write!(
                f,
                "continued fraction depth {needed} requested, only {available} available"
            ),
            Error::InvalidDigits(rule) => write!(f, "invalid Ostrowski digits: {rule}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "budget exceeded: {msg}"),
            Error::NotCertified(msg) => write!(f, "not certified: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
