//! Occurrence and first-occurrence generating functions of a single pattern,
//! from scratch or after a head start, and the expected waiting times built
//! from them.
//!
//! With `P` the pattern probability and `C(s)` its correlation polynomial,
//! the renewal equation gives
//!
//! ```text
//! U(s)   = 1 + P s^m / ((1 - s) C(s))
//! F(s)   = (U(s) - 1) / U(s)
//! U^H(s) = [P s^m / (1 - s) + sum_k P_k s^(m-k) B_k(s)] / C(s)
//! F^H(s) = U^H(s) / U(s)
//! ```
//!
//! where `B_k(s)` collects the head-start initials `u_j^H s^j` for `j < k`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{Limit, Polynomial, Rational, RationalFunction};
use crate::patterns::{
    autocorrelation, head_completes_at, head_start_initials, validate_pattern_set,
    word_probability, Pattern, ProbParams,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SgfKind {
    /// Counting starts from an empty history, `u_0 = 1`.
    Scratch,
    /// Counting starts after a head-start word, `u_0 = 0`.
    HeadStart,
}

/// Sequence generating function of renewal-occurrence probabilities `u_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceSgf {
    pub func: RationalFunction,
    pub kind: SgfKind,
}

/// Probability generating function of the first-occurrence trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOccurrencePgf(pub RationalFunction);

impl FirstOccurrencePgf {
    pub fn func(&self) -> &RationalFunction {
        &self.0
    }
}

/// `P s^m / (1 - s)` as a rational function.
fn tail_term(w: &Pattern, params: &ProbParams) -> RationalFunction {
    let pw = word_probability(w.symbols(), params);
    RationalFunction::new(Polynomial::monomial(pw, w.len()), Polynomial::one_minus_s())
        .expect("1 - s is nonzero")
}

pub fn scratch_u(w: &Pattern, params: &ProbParams) -> OccurrenceSgf {
    let c = autocorrelation(w, params).polynomial();
    let pw = word_probability(w.symbols(), params);
    let den = &Polynomial::one_minus_s() * &c;
    let num = &den + &Polynomial::monomial(pw, w.len());
    OccurrenceSgf {
        func: RationalFunction::new(num, den).expect("C(s) has constant term 1"),
        kind: SgfKind::Scratch,
    }
}

pub fn scratch_f(w: &Pattern, params: &ProbParams) -> FirstOccurrencePgf {
    let u = scratch_u(w, params).func;
    let f = (&u - &RationalFunction::one())
        .checked_div(&u)
        .expect("U(s) is not identically zero");
    FirstOccurrencePgf(f)
}

pub fn head_u(w: &Pattern, head: &Pattern, params: &ProbParams) -> OccurrenceSgf {
    let m = w.len();
    let corr = autocorrelation(w, params);
    let initials = head_start_initials(w, head, params);
    let mut rhs = tail_term(w, params);
    for (k, pk) in corr.iter() {
        let b_k = initials.truncated_polynomial(k);
        if !b_k.is_zero() {
            let term = b_k.shift_up(m - k).scale(pk);
            rhs = &rhs + &RationalFunction::from_poly(term);
        }
    }
    let c = RationalFunction::from_poly(corr.polynomial());
    OccurrenceSgf {
        func: rhs.checked_div(&c).expect("C(s) is nonzero"),
        kind: SgfKind::HeadStart,
    }
}

pub fn head_f(w: &Pattern, head: &Pattern, params: &ProbParams) -> FirstOccurrencePgf {
    let uh = head_u(w, head, params).func;
    let u = scratch_u(w, params).func;
    FirstOccurrencePgf(uh.checked_div(&u).expect("U(s) is not identically zero"))
}

/// `F'(1)`, by exact cancellation of `(s - 1)` factors.
pub fn mean(f: &FirstOccurrencePgf) -> Result<Rational, Error> {
    match f.0.derivative().limit_at_one() {
        Limit::Finite(mu) => Ok(mu),
        Limit::Infinite => Err(Error::InfiniteLimit("mean waiting time")),
    }
}

/// `C(1) / P`.
pub fn mean_from_correlation(w: &Pattern, params: &ProbParams) -> Rational {
    autocorrelation(w, params).total() / word_probability(w.symbols(), params)
}

/// `(C(1) - M(1)) / P`, where `M(1)` sums the probabilities of the tails that
/// complete `w` early by reusing a suffix of `head`.
pub fn head_mean_from_correlation(w: &Pattern, head: &Pattern, params: &ProbParams) -> Rational {
    let sym = w.symbols();
    let m = sym.len();
    let early = (1..m)
        .filter(|&j| head_completes_at(sym, head.symbols(), j))
        .fold(Rational::zero(), |acc, j| {
            acc + word_probability(&sym[m - j..], params)
        });
    (autocorrelation(w, params).total() - early) / word_probability(sym, params)
}

/// Expected waiting times `mu_i` (diagonal) and `mu_{i|j}` (off-diagonal) for
/// a set of competing patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanTable {
    mu: Vec<Vec<Rational>>,
}

impl MeanTable {
    /// Builds a table from a square matrix with `mu_i` on the diagonal and
    /// `mu_{i|j}` at row `i`, column `j`.
    pub fn from_matrix(mu: Vec<Vec<Rational>>) -> Self {
        assert!(
            mu.iter().all(|row| row.len() == mu.len()),
            "mean table must be square"
        );
        MeanTable { mu }
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// `mu_i`, waiting time from scratch.
    pub fn scratch(&self, i: usize) -> &Rational {
        &self.mu[i][i]
    }

    /// `mu_{i|j}`, waiting time for pattern `i` right after pattern `j`.
    pub fn given(&self, i: usize, j: usize) -> &Rational {
        &self.mu[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.mu
    }
}

/// Means from the derivative of each PGF at `s = 1`.
pub fn mean_table(patterns: &[Pattern], params: &ProbParams) -> Result<MeanTable, Error> {
    validate_pattern_set(patterns)?;
    let mut mu = Vec::with_capacity(patterns.len());
    for (i, wi) in patterns.iter().enumerate() {
        let mut row = Vec::with_capacity(patterns.len());
        for (j, wj) in patterns.iter().enumerate() {
            let f = if i == j {
                scratch_f(wi, params)
            } else {
                head_f(wi, wj, params)
            };
            row.push(mean(&f)?);
        }
        mu.push(row);
    }
    Ok(MeanTable { mu })
}

/// Same table from the correlation closed forms; no generating functions.
pub fn mean_table_from_correlation(
    patterns: &[Pattern],
    params: &ProbParams,
) -> Result<MeanTable, Error> {
    validate_pattern_set(patterns)?;
    let mu = patterns
        .iter()
        .enumerate()
        .map(|(i, wi)| {
            patterns
                .iter()
                .enumerate()
                .map(|(j, wj)| {
                    if i == j {
                        mean_from_correlation(wi, params)
                    } else {
                        head_mean_from_correlation(wi, wj, params)
                    }
                })
                .collect()
        })
        .collect();
    Ok(MeanTable { mu })
}
