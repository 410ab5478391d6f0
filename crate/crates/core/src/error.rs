use alloc::vec::Vec;
use core::fmt;

use crate::polyomino::Violation;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Volumes must satisfy `0 < small <= large`.
    InvalidVolumes { large: f64, small: f64 },
    /// A constructor was called outside the ratio range it handles.
    RatioOutOfRange { n: u64, m: u64 },
    InvalidConfig(Vec<Violation>),
    /// Trimming could not reach the target without touching protected cells.
    TrimBlocked { target: usize, reachable: usize },
    /// The projected curves have a vanishing denominator at this abscissa.
    Pole { x: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidVolumes { large, small } => {
                write!(f, "invalid volumes ({large}, {small}): need 0 < second <= first")
            }
            Error::RatioOutOfRange { n, m } => {
                write!(f, "volume pair ({n}, {m}) is outside the constructor's ratio range")
            }
            Error::InvalidConfig(v) => {
                write!(f, "invalid configuration:")?;
                for violation in v {
                    write!(f, " {violation};")?;
                }
                Ok(())
            }
            Error::TrimBlocked { target, reachable } => {
                write!(f, "cannot trim to {target} cells, protected cells leave at least {reachable}")
            }
            Error::Pole { x } => write!(f, "curve denominator vanishes at x = {x}"),
        }
    }
}

impl core::error::Error for Error {}
