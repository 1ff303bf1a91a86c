//! Exact first-occurrence statistics of S/F patterns in Bernoulli trials,
//! and exact win probabilities and durations of races between patterns.
//!
//! The crate is `no_std` and needs only `alloc`. All quantities are exact
//! rationals; generating functions are reduced rational functions in `s`
//! evaluated at a fixed rational success probability `p`.
//!
//! * [`algebra`]: rationals, polynomials, rational functions, limits at `s = 1`.
//! * [`patterns`]: parsing, overlap (correlation) structure, head-start initials.
//! * [`renewal`]: `U(s)`, `F(s)`, their head-start variants and the mean table.
//! * [`competition`]: duels, conditional duels and three-way races.
//! * [`oracle`]: absorbing Markov chain on the prefix automaton, any number of patterns.
//! * [`montecarlo`]: seeded simulation of races.
//! * [`verify`]: cross-checks every route against every other.
#![no_std]

extern crate alloc;

use alloc::boxed::Box;
use core::fmt;

pub mod algebra;
pub mod competition;
pub mod montecarlo;
pub mod oracle;
pub mod patterns;
pub mod renewal;
pub mod verify;

pub use algebra::{parse_rational, rat, Limit, Polynomial, Rational, RationalFunction};
pub use patterns::{Pattern, PatternError, ProbParams, Symbol};
pub use renewal::MeanTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    Pattern(PatternError),
    Algebra(algebra::AlgebraError),
    /// A limit at `s = 1` that should be finite diverged.
    InfiniteLimit(&'static str),
    /// Two independent routes produced different exact values.
    RouteMismatch {
        what: &'static str,
        left: Box<Rational>,
        right: Box<Rational>,
    },
    /// A closed form in the means has a zero denominator.
    Degenerate {
        what: &'static str,
        means: MeanTable,
    },
    MeanTableShape {
        expected: usize,
        got: usize,
    },
    InvalidInput(&'static str),
    SingularSystem,
    /// Feeding a head-start word through the automaton completed a pattern.
    AbsorbedDuringHead {
        pattern: Pattern,
        position: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pattern(e) => e.fmt(f),
            Error::Algebra(e) => e.fmt(f),
            Error::InfiniteLimit(what) => write!(f, "{what}: limit at s = 1 is infinite"),
            Error::RouteMismatch { what, left, right } => {
                write!(
                    f,
                    "{what}: generating-function route gives {left}, closed form gives {right}"
                )
            }
            Error::Degenerate { what, means } => {
                write!(f, "{what}: zero denominator for means {:?}", means.matrix())
            }
            Error::MeanTableShape { expected, got } => {
                write!(f, "expected {expected} patterns, got {got}")
            }
            Error::InvalidInput(msg) => write!(f, "{msg}"),
            Error::SingularSystem => write!(f, "absorption system is singular"),
            Error::AbsorbedDuringHead { pattern, position } => {
                write!(f, "head start completes {pattern} at symbol {position}")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<PatternError> for Error {
    fn from(e: PatternError) -> Self {
        Error::Pattern(e)
    }
}

impl From<algebra::AlgebraError> for Error {
    fn from(e: algebra::AlgebraError) -> Self {
        Error::Algebra(e)
    }
}
