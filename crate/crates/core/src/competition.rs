//! Races between two or three patterns.
//!
//! Win generating functions are assembled from the first-occurrence PGFs
//! `F_i` and head-start PGFs `F_{i|j}`. Every headline number is produced by
//! two routes: the limit `s -> 1` of the generating function and a closed
//! form in the expected waiting times. The routes must agree exactly;
//! disagreement is reported as [`Error::RouteMismatch`].

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{Limit, Rational, RationalFunction};
use crate::patterns::{validate_pattern_set, Pattern, PatternError, ProbParams};
use crate::renewal::{head_f, mean, scratch_f, MeanTable};
use crate::Error;

/// Outcome of a two-pattern race.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuelOutcome {
    /// `X_{1{2}}(s)` and `X_{2{1}}(s)`.
    pub sgf_win: [RationalFunction; 2],
    pub win_prob: [Rational; 2],
    pub means: MeanTable,
}

/// Outcome of a three-pattern race.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrioOutcome {
    /// `X_{i{j,k}}(s)` for each pattern `i`.
    pub sgf_win: [RationalFunction; 3],
    pub win_prob: [Rational; 3],
    /// `H(s)`, the PGF of the race duration.
    pub duration_pgf: RationalFunction,
    pub expected_duration: Rational,
    pub means: MeanTable,
}

/// `F_i` on the diagonal, `F_{i|j}` off it.
struct PgfTable {
    f: Vec<Vec<RationalFunction>>,
}

impl PgfTable {
    fn build(patterns: &[Pattern], params: &ProbParams) -> Self {
        let f = patterns
            .iter()
            .enumerate()
            .map(|(i, wi)| {
                patterns
                    .iter()
                    .enumerate()
                    .map(|(j, wj)| {
                        if i == j {
                            scratch_f(wi, params).0
                        } else {
                            head_f(wi, wj, params).0
                        }
                    })
                    .collect()
            })
            .collect();
        PgfTable { f }
    }

    fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.f[i][j]
    }

    fn means(&self) -> Result<MeanTable, Error> {
        let mu = self
            .f
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| match f.derivative().limit_at_one() {
                        Limit::Finite(x) => Ok(x),
                        Limit::Infinite => Err(Error::InfiniteLimit("mean waiting time")),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MeanTable::from_matrix(mu))
    }
}

fn finite(f: &RationalFunction, what: &'static str) -> Result<Rational, Error> {
    f.limit_at_one().finite().ok_or(Error::InfiniteLimit(what))
}

fn agree(what: &'static str, left: Rational, right: &Rational) -> Result<Rational, Error> {
    if &left == right {
        Ok(left)
    } else {
        Err(Error::RouteMismatch {
            what,
            left: Box::new(left),
            right: Box::new(right.clone()),
        })
    }
}

fn require_count(patterns: &[Pattern], need: usize) -> Result<(), Error> {
    if patterns.len() < need {
        return Err(PatternError::TooFewPatterns {
            got: patterns.len(),
            need,
        }
        .into());
    }
    validate_pattern_set(patterns).map_err(Error::from)
}

/// Win probability of pattern `target` in a duel, from the means:
/// `(mu_b - mu_a + mu_{a|b}) / (mu_{a|b} + mu_{b|a})`.
pub fn duel_win_prob_closed_form(means: &MeanTable, target: usize) -> Result<Rational, Error> {
    if means.len() != 2 || target > 1 {
        return Err(Error::MeanTableShape {
            expected: 2,
            got: means.len(),
        });
    }
    let (a, b) = (target, 1 - target);
    let den = means.given(a, b) + means.given(b, a);
    if den.is_zero() {
        return Err(Error::Degenerate {
            what: "duel win probability",
            means: means.clone(),
        });
    }
    Ok((means.scratch(b) - means.scratch(a) + means.given(a, b)) / den)
}

pub fn duel(w1: &Pattern, w2: &Pattern, params: &ProbParams) -> Result<DuelOutcome, Error> {
    let patterns = [w1.clone(), w2.clone()];
    require_count(&patterns, 2)?;
    let t = PgfTable::build(&patterns, params);
    let den = &RationalFunction::one() - &(t.get(0, 1) * t.get(1, 0));
    let x1 = (t.get(0, 0) - &(t.get(1, 1) * t.get(0, 1))).checked_div(&den)?;
    let x2 = (t.get(1, 1) - &(t.get(0, 0) * t.get(1, 0))).checked_div(&den)?;
    let means = t.means()?;
    let win_prob = [
        agree(
            "duel win probability (pattern 1)",
            finite(&x1, "duel win probability")?,
            &duel_win_prob_closed_form(&means, 0)?,
        )?,
        agree(
            "duel win probability (pattern 2)",
            finite(&x2, "duel win probability")?,
            &duel_win_prob_closed_form(&means, 1)?,
        )?,
    ];
    Ok(DuelOutcome {
        sgf_win: [x1, x2],
        win_prob,
        means,
    })
}

/// Duel between patterns 1 and 2 that starts right after pattern 3 was
/// completed. The returned `means` table covers all three patterns.
pub fn duel_given(
    w1: &Pattern,
    w2: &Pattern,
    given: &Pattern,
    params: &ProbParams,
) -> Result<DuelOutcome, Error> {
    let patterns = [w1.clone(), w2.clone(), given.clone()];
    require_count(&patterns, 3)?;
    let t = PgfTable::build(&patterns, params);
    let den = &RationalFunction::one() - &(t.get(0, 1) * t.get(1, 0));
    let x1 = (t.get(0, 2) - &(t.get(1, 2) * t.get(0, 1))).checked_div(&den)?;
    let x2 = (t.get(1, 2) - &(t.get(0, 2) * t.get(1, 0))).checked_div(&den)?;
    let means = t.means()?;
    let closed = |a: usize, b: usize| -> Result<Rational, Error> {
        // (mu_{a|b} + mu_{b|3} - mu_{a|3}) / (mu_{a|b} + mu_{b|a})
        let den = means.given(a, b) + means.given(b, a);
        if den.is_zero() {
            return Err(Error::Degenerate {
                what: "conditional duel win probability",
                means: means.clone(),
            });
        }
        Ok((means.given(a, b) + means.given(b, 2) - means.given(a, 2)) / den)
    };
    let win_prob = [
        agree(
            "conditional duel win probability (pattern 1)",
            finite(&x1, "conditional duel win probability")?,
            &closed(0, 1)?,
        )?,
        agree(
            "conditional duel win probability (pattern 2)",
            finite(&x2, "conditional duel win probability")?,
            &closed(1, 0)?,
        )?,
    ];
    Ok(DuelOutcome {
        sgf_win: [x1, x2],
        win_prob,
        means,
    })
}

/// `X_{a{b,c}}(s)`:
///
/// ```text
///   F_a (1 - F_{b|c} F_{c|b}) - F_b (F_{a|b} - F_{a|c} F_{c|b}) - F_c (F_{a|c} - F_{a|b} F_{b|c})
///   -------------------------------------------------------------------------------------------
///   1 - F_{a|b}F_{b|a} - F_{a|c}F_{c|a} - F_{b|c}F_{c|b} + F_{a|b}F_{b|c}F_{c|a} + F_{a|c}F_{c|b}F_{b|a}
/// ```
fn trio_win_sgf(t: &PgfTable, a: usize, b: usize, c: usize) -> Result<RationalFunction, Error> {
    let f = |i, j| t.get(i, j);
    let one = RationalFunction::one();
    let num = &(&(f(a, a) * &(&one - &(f(b, c) * f(c, b))))
        - &(f(b, b) * &(f(a, b) - &(f(a, c) * f(c, b)))))
        - &(f(c, c) * &(f(a, c) - &(f(a, b) * f(b, c))));
    let den = &(&(&(&one - &(f(a, b) * f(b, a))) - &(f(a, c) * f(c, a))) - &(f(b, c) * f(c, b)))
        + &(&(&(f(a, b) * f(b, c)) * f(c, a)) + &(&(f(a, c) * f(c, b)) * f(b, a)));
    Ok(num.checked_div(&den)?)
}

/// Indices of the two opponents of `target` among three patterns.
fn opponents(target: usize) -> (usize, usize) {
    match target {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Denominator shared by the trio closed forms.
fn trio_means_den(m: &MeanTable) -> Rational {
    let g = |i, j| m.given(i, j);
    g(0, 1) * g(1, 0) + g(0, 2) * g(2, 0) + g(1, 2) * g(2, 1)
        - g(0, 1) * g(1, 2)
        - g(0, 2) * g(2, 1)
        - g(1, 0) * g(0, 2)
        - g(1, 2) * g(2, 0)
        - g(2, 0) * g(0, 1)
        - g(2, 1) * g(1, 0)
}

fn check_trio_table(means: &MeanTable) -> Result<(), Error> {
    if means.len() != 3 {
        return Err(Error::MeanTableShape {
            expected: 3,
            got: means.len(),
        });
    }
    Ok(())
}

/// Probability that pattern `target` wins a three-way race, as a ratio of
/// products of expected waiting times.
pub fn win_prob_closed_form(means: &MeanTable, target: usize) -> Result<Rational, Error> {
    check_trio_table(means)?;
    if target > 2 {
        return Err(Error::MeanTableShape {
            expected: 3,
            got: target + 1,
        });
    }
    let (b, c) = opponents(target);
    let a = target;
    let mu = |i| means.scratch(i);
    let g = |i, j| means.given(i, j);
    let num = mu(a) * (g(b, c) + g(c, b))
        + mu(b) * (g(a, b) - g(a, c) - g(c, b))
        + mu(c) * (g(a, c) - g(a, b) - g(b, c))
        + g(b, c) * g(c, b)
        - g(a, c) * g(c, b)
        - g(a, b) * g(b, c);
    let den = trio_means_den(means);
    if den.is_zero() {
        return Err(Error::Degenerate {
            what: "trio win probability",
            means: means.clone(),
        });
    }
    Ok(num / den)
}

/// Expected duration of a three-way race from the mean table.
pub fn duration_closed_form(means: &MeanTable) -> Result<Rational, Error> {
    check_trio_table(means)?;
    let mu = |i| means.scratch(i);
    let g = |i, j| means.given(i, j);
    let num = mu(0) * (g(1, 2) * g(2, 1) - g(1, 2) * g(2, 0) - g(2, 1) * g(1, 0))
        + mu(1) * (g(0, 2) * g(2, 0) - g(0, 2) * g(2, 1) - g(2, 0) * g(0, 1))
        + mu(2) * (g(0, 1) * g(1, 0) - g(0, 1) * g(1, 2) - g(1, 0) * g(0, 2))
        + g(0, 1) * g(1, 2) * g(2, 0)
        + g(0, 2) * g(2, 1) * g(1, 0);
    let den = trio_means_den(means);
    if den.is_zero() {
        return Err(Error::Degenerate {
            what: "trio expected duration",
            means: means.clone(),
        });
    }
    Ok(num / den)
}

pub fn trio(
    w1: &Pattern,
    w2: &Pattern,
    w3: &Pattern,
    params: &ProbParams,
) -> Result<TrioOutcome, Error> {
    let patterns = [w1.clone(), w2.clone(), w3.clone()];
    require_count(&patterns, 3)?;
    let t = PgfTable::build(&patterns, params);
    let sgf_win = [
        trio_win_sgf(&t, 0, 1, 2)?,
        trio_win_sgf(&t, 1, 0, 2)?,
        trio_win_sgf(&t, 2, 0, 1)?,
    ];
    let means = t.means()?;
    let mut win_prob: [Rational; 3] = Default::default();
    for (i, x) in sgf_win.iter().enumerate() {
        win_prob[i] = agree(
            "trio win probability",
            finite(x, "trio win probability")?,
            &win_prob_closed_form(&means, i)?,
        )?;
    }
    let duration_pgf = &(&sgf_win[0] + &sgf_win[1]) + &sgf_win[2];
    let expected_duration = agree(
        "trio expected duration",
        finite(&duration_pgf.derivative(), "trio expected duration")?,
        &duration_closed_form(&means)?,
    )?;
    Ok(TrioOutcome {
        sgf_win,
        win_prob,
        duration_pgf,
        expected_duration,
        means,
    })
}

/// `X_{a{b,c}}` for an explicit opponent order; exposed so callers can
/// confirm that the order of the two opponents does not matter.
pub fn trio_win_sgf_ordered(
    patterns: [&Pattern; 3],
    order: [usize; 3],
    params: &ProbParams,
) -> Result<RationalFunction, Error> {
    let owned: Vec<Pattern> = patterns.iter().map(|&w| w.clone()).collect();
    require_count(&owned, 3)?;
    if order.iter().any(|&i| i > 2)
        || order[0] == order[1]
        || order[1] == order[2]
        || order[0] == order[2]
    {
        return Err(Error::MeanTableShape {
            expected: 3,
            got: order.len(),
        });
    }
    let t = PgfTable::build(&owned, params);
    trio_win_sgf(&t, order[0], order[1], order[2])
}

/// `F'(1)` for the generating function `H` of a race duration.
pub fn expected_from_pgf(h: &RationalFunction) -> Result<Rational, Error> {
    finite(&h.derivative(), "expected duration")
}

/// Convenience wrapper: mean of the first-occurrence time of `w` after
/// `head` (or from scratch when `head` is `None`).
pub fn waiting_time(
    w: &Pattern,
    head: Option<&Pattern>,
    params: &ProbParams,
) -> Result<Rational, Error> {
    match head {
        None => mean(&scratch_f(w, params)),
        Some(h) => mean(&head_f(w, h, params)),
    }
}
