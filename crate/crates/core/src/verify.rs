//! Cross-check battery: generating functions vs closed forms vs the
//! automaton oracle vs finite-horizon distributions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{Rational, RationalFunction};
use crate::competition::{duel, duel_given, expected_from_pgf, trio};
use crate::oracle::{absorption, build_automaton, finite_horizon, StateId};
use crate::patterns::{validate_pattern_set, Pattern, PatternError, ProbParams};
use crate::renewal::{head_f, head_mean_from_correlation, mean, mean_from_correlation, scratch_f};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Values compared, or the error that stopped the check.
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: String, outcome: Result<(bool, String), Error>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    fn equal(&mut self, name: String, values: Result<Vec<Rational>, Error>) {
        self.record(
            name,
            values.map(|v| {
                let same = v.windows(2).all(|w| w[0] == w[1]);
                let shown: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
                (same, shown.join(" vs "))
            }),
        );
    }

    fn series(&mut self, name: String, f: &RationalFunction, expected: &[Rational]) {
        let n_max = expected.len().saturating_sub(1);
        self.record(
            name,
            f.series_coefficients(n_max)
                .map_err(Error::from)
                .map(
                    |got| match got.iter().zip(expected).position(|(a, b)| a != b) {
                        None => (true, format!("{} coefficients equal", got.len())),
                        Some(n) => (
                            false,
                            format!("first difference at n = {n}: {} vs {}", got[n], expected[n]),
                        ),
                    },
                ),
        );
    }
}

fn oracle_start(
    patterns: &[Pattern],
    head: Option<&Pattern>,
) -> Result<(crate::oracle::PrefixAutomaton, StateId), Error> {
    let a = build_automaton(patterns)?;
    let s = match head {
        Some(h) => a.start_state_after(h.symbols())?,
        None => a.start(),
    };
    Ok((a, s))
}

/// Runs every cross-check for two or three patterns. Invalid input is an
/// `Err`; disagreements are failed checks in the report.
pub fn verify(
    patterns: &[Pattern],
    params: &ProbParams,
    n_max: usize,
) -> Result<VerifyReport, Error> {
    if !(2..=3).contains(&patterns.len()) {
        return Err(Error::InvalidInput("verify needs two or three patterns"));
    }
    validate_pattern_set(patterns).map_err(|e: PatternError| Error::Pattern(e))?;
    let mut report = VerifyReport::default();

    for (i, wi) in patterns.iter().enumerate() {
        let f = scratch_f(wi, params);
        report.equal(
            format!("mean {wi}: derivative limit = correlation = oracle"),
            (|| {
                let (a, s) = oracle_start(core::slice::from_ref(wi), None)?;
                Ok(alloc::vec![
                    mean(&f)?,
                    mean_from_correlation(wi, params),
                    absorption(&a, s, params)?.expected_steps,
                ])
            })(),
        );
        if let Ok((a, s)) = oracle_start(core::slice::from_ref(wi), None) {
            let fh = finite_horizon(&a, s, params, n_max);
            report.series(format!("F series {wi} vs finite horizon"), f.func(), &fh[0]);
        }
        for (j, wj) in patterns.iter().enumerate() {
            if i == j {
                continue;
            }
            let fh = head_f(wi, wj, params);
            report.equal(
                format!("mean {wi} after {wj}: derivative limit = correlation = oracle"),
                (|| {
                    let (a, s) = oracle_start(core::slice::from_ref(wi), Some(wj))?;
                    Ok(alloc::vec![
                        mean(&fh)?,
                        head_mean_from_correlation(wi, wj, params),
                        absorption(&a, s, params)?.expected_steps,
                    ])
                })(),
            );
            if let Ok((a, s)) = oracle_start(core::slice::from_ref(wi), Some(wj)) {
                let dist = finite_horizon(&a, s, params, n_max);
                report.series(
                    format!("F series {wi} after {wj} vs finite horizon"),
                    fh.func(),
                    &dist[0],
                );
            }
        }
    }

    let names: Vec<String> = patterns.iter().map(|w| format!("{w}")).collect();
    let label = names.join(" vs ");
    let (automaton, start) = oracle_start(patterns, None)?;
    let truth = absorption(&automaton, start, params)?;
    let dist = finite_horizon(&automaton, start, params, n_max);

    let (sgfs, probs, duration): (
        Vec<RationalFunction>,
        Vec<Rational>,
        Result<Rational, Error>,
    ) = if patterns.len() == 2 {
        match duel(&patterns[0], &patterns[1], params) {
            Ok(d) => {
                let h = &d.sgf_win[0] + &d.sgf_win[1];
                (
                    d.sgf_win.to_vec(),
                    d.win_prob.to_vec(),
                    expected_from_pgf(&h),
                )
            }
            Err(e) => {
                report.record(format!("duel {label}"), Err(e));
                return Ok(report);
            }
        }
    } else {
        match trio(&patterns[0], &patterns[1], &patterns[2], params) {
            Ok(t) => (
                t.sgf_win.to_vec(),
                t.win_prob.to_vec(),
                Ok(t.expected_duration),
            ),
            Err(e) => {
                report.record(format!("trio {label}"), Err(e));
                return Ok(report);
            }
        }
    };

    for (i, w) in patterns.iter().enumerate() {
        report.equal(
            format!("{label}: win probability of {w}, engine = oracle"),
            Ok(alloc::vec![probs[i].clone(), truth.win_prob[i].clone()]),
        );
        report.series(
            format!("{label}: win series of {w} vs finite horizon"),
            &sgfs[i],
            &dist[i],
        );
    }
    report.equal(
        format!("{label}: expected duration, engine = oracle"),
        duration.map(|d| alloc::vec![d, truth.expected_steps.clone()]),
    );

    if patterns.len() == 3 {
        for given in 0..3 {
            let (a, b) = match given {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let pair = [patterns[a].clone(), patterns[b].clone()];
            let pair_label = format!("{} vs {}", pair[0], pair[1]);
            report.equal(
                format!("duel {pair_label}: win probability, engine = oracle"),
                (|| {
                    let d = duel(&pair[0], &pair[1], params)?;
                    let (auto, s) = oracle_start(&pair, None)?;
                    Ok(alloc::vec![
                        d.win_prob[0].clone(),
                        absorption(&auto, s, params)?.win_prob[0].clone()
                    ])
                })(),
            );
            let g = &patterns[given];
            match duel_given(&pair[0], &pair[1], g, params) {
                Ok(d) => {
                    let checked = oracle_start(&pair, Some(g)).and_then(|(auto, s)| {
                        Ok((
                            absorption(&auto, s, params)?,
                            finite_horizon(&auto, s, params, n_max),
                        ))
                    });
                    match checked {
                        Ok((abs, fh)) => {
                            report.equal(
                                format!(
                                    "duel {pair_label} after {g}: win probability, engine = oracle"
                                ),
                                Ok(alloc::vec![d.win_prob[0].clone(), abs.win_prob[0].clone()]),
                            );
                            for k in 0..2 {
                                report.series(
                                    format!("duel {pair_label} after {g}: win series of {} vs finite horizon", pair[k]),
                                    &d.sgf_win[k],
                                    &fh[k],
                                );
                            }
                        }
                        Err(e) => report.record(format!("duel {pair_label} after {g}"), Err(e)),
                    }
                }
                Err(e) => report.record(format!("duel {pair_label} after {g}"), Err(e)),
            }
        }
    }
    Ok(report)
}
