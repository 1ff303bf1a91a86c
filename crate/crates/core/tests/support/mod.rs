#![allow(dead_code)]

use penney_core::patterns::word_probability;
use penney_core::{rat, Pattern, ProbParams, Rational, Symbol};

pub fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

pub fn params(n: i64, d: i64) -> ProbParams {
    ProbParams::new(rat(n, d)).unwrap()
}

/// Every S/F string of length `n`, as symbol vectors.
pub fn all_strings(n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    (0u32..(1 << n)).map(move |bits| {
        (0..n)
            .map(|i| {
                if bits >> i & 1 == 0 {
                    Symbol::S
                } else {
                    Symbol::F
                }
            })
            .collect()
    })
}

/// Direct scan of `head ++ trials`: the first trial (1-based) at which some
/// pattern ends, and which pattern.
pub fn first_completion(
    patterns: &[Pattern],
    head: &[Symbol],
    trials: &[Symbol],
) -> Option<(usize, usize)> {
    let mut text: Vec<Symbol> = head.to_vec();
    for (t, &s) in trials.iter().enumerate() {
        text.push(s);
        for (i, w) in patterns.iter().enumerate() {
            if text.ends_with(w.symbols()) {
                return Some((i, t + 1));
            }
        }
    }
    None
}

/// `table[i][n]`: probability that pattern `i` is the first to appear and
/// does so at trial `n`, by enumerating all `2^n_max` strings.
pub fn enumerate_wins(
    patterns: &[Pattern],
    head: &[Symbol],
    params: &ProbParams,
    n_max: usize,
) -> Vec<Vec<Rational>> {
    let mut table = vec![vec![rat(0, 1); n_max + 1]; patterns.len()];
    for n in 1..=n_max {
        for s in all_strings(n) {
            if let Some((i, t)) = first_completion(patterns, head, &s) {
                if t == n {
                    table[i][n] += word_probability(&s, params);
                }
            }
        }
    }
    table
}

/// Probability of a renewal occurrence at each trial `0..=n_max`: occurrences
/// counted greedily, with the scan restarting after each one.
pub fn enumerate_renewals(
    w: &Pattern,
    head: &[Symbol],
    params: &ProbParams,
    n_max: usize,
) -> Vec<Rational> {
    let mut u = vec![rat(0, 1); n_max + 1];
    u[0] = if head.is_empty() {
        rat(1, 1)
    } else {
        rat(0, 1)
    };
    for s in all_strings(n_max) {
        let prob = word_probability(&s, params);
        let mut text: Vec<Symbol> = head.to_vec();
        for (t, &c) in s.iter().enumerate() {
            text.push(c);
            if text.ends_with(w.symbols()) {
                u[t + 1] += &prob;
                text.clear();
            }
        }
    }
    u
}
