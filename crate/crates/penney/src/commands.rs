//! Exact computations behind `mean`, `duel`, `trio`, `race` and `verify`.

use penney_core::competition::{duel, duel_given, expected_from_pgf, trio, waiting_time};
use penney_core::oracle::{absorption, build_automaton};
use penney_core::patterns::validate_pattern_set;
use penney_core::renewal::{head_f, head_mean_from_correlation, mean_from_correlation, scratch_f};
use penney_core::verify::verify;
use penney_core::{parse_rational, Pattern, PatternError, ProbParams, Rational, RationalFunction};

use crate::error::{CliError, Result};
use crate::record::{CheckLine, NamedFunction, Number, OutputRecord, Quantity, VerifyRecord};

pub const ROUTE_GF: &str =
    "generating-function limit at s = 1, mean closed form, oracle absorption";
pub const ROUTE_ORACLE: &str =
    "oracle absorption on the prefix automaton (no generating-function route for four or more patterns)";

/// Parse `p` exactly (`a/b`, integer or finite decimal) and check `0 < p < 1`.
pub fn parse_p(text: &str) -> Result<ProbParams> {
    let p = parse_rational(text).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(ProbParams::new(p)?)
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    Pattern::parse(text).map_err(|e| CliError::Invalid(format!("pattern {text:?}: {e}")))
}

pub fn parse_patterns<S: AsRef<str>>(texts: &[S]) -> Result<Vec<Pattern>> {
    texts.iter().map(|t| parse_pattern(t.as_ref())).collect()
}

fn names(patterns: &[Pattern]) -> Vec<String> {
    patterns.iter().map(|w| w.to_string()).collect()
}

fn same(what: &str, values: &[&Rational]) -> Result<()> {
    if values.windows(2).all(|w| w[0] == w[1]) {
        Ok(())
    } else {
        let shown: Vec<String> = values.iter().map(|x| x.to_string()).collect();
        Err(CliError::Mismatch(format!(
            "{what}: routes disagree ({})",
            shown.join(" vs ")
        )))
    }
}

fn oracle_race(
    patterns: &[Pattern],
    start_after: Option<&Pattern>,
    params: &ProbParams,
) -> Result<(Vec<Rational>, Rational)> {
    let auto = build_automaton(patterns)?;
    let start = match start_after {
        Some(h) => auto.start_state_after(h.symbols())?,
        None => auto.start(),
    };
    let r = absorption(&auto, start, params)?;
    Ok((r.win_prob, r.expected_steps))
}

fn function(name: String, f: &RationalFunction) -> NamedFunction {
    NamedFunction {
        name,
        function: f.to_string(),
    }
}

pub fn mean_cmd(pattern: &str, p: &str, head: Option<&str>, pgf: bool) -> Result<OutputRecord> {
    let w = parse_pattern(pattern)?;
    let params = parse_p(p)?;
    let head = head.map(parse_pattern).transpose()?;
    if let Some(h) = &head {
        if w.is_substring_of(h) {
            return Err(CliError::Invalid(format!(
                "head start {h} already contains {w}"
            )));
        }
    }
    let mu = waiting_time(&w, head.as_ref(), &params)?;
    let closed = match &head {
        Some(h) => head_mean_from_correlation(&w, h, &params),
        None => mean_from_correlation(&w, &params),
    };
    let (_, oracle) = oracle_race(std::slice::from_ref(&w), head.as_ref(), &params)?;
    same("mean", &[&mu, &closed, &oracle])?;
    let mut generating_functions = Vec::new();
    if pgf {
        let (name, f) = match &head {
            Some(h) => (format!("F^{h}(s)"), head_f(&w, h, &params).0),
            None => ("F(s)".to_string(), scratch_f(&w, &params).0),
        };
        generating_functions.push(function(name, &f));
    }
    Ok(OutputRecord {
        command: "mean".into(),
        patterns: vec![w.to_string()],
        p: Number::new(params.p()),
        head: head.map(|h| h.to_string()),
        given: None,
        results: vec![Quantity::new("mean", &mu)],
        generating_functions,
        provenance: ROUTE_GF.into(),
    })
}

pub fn duel_cmd(a: &str, b: &str, p: &str, given: Option<&str>, pgf: bool) -> Result<OutputRecord> {
    let patterns = parse_patterns(&[a, b])?;
    let params = parse_p(p)?;
    let given = given.map(parse_pattern).transpose()?;
    let outcome = match &given {
        Some(g) => duel_given(&patterns[0], &patterns[1], g, &params)?,
        None => duel(&patterns[0], &patterns[1], &params)?,
    };
    let (oracle, _) = oracle_race(&patterns, given.as_ref(), &params)?;
    for i in 0..2 {
        same(
            &format!("win {}", patterns[i]),
            &[&outcome.win_prob[i], &oracle[i]],
        )?;
    }
    let results = (0..2)
        .map(|i| Quantity::new(format!("win {}", patterns[i]), &outcome.win_prob[i]))
        .collect();
    let generating_functions = if pgf {
        (0..2)
            .map(|i| function(format!("X[{}](s)", patterns[i]), &outcome.sgf_win[i]))
            .collect()
    } else {
        Vec::new()
    };
    Ok(OutputRecord {
        command: "duel".into(),
        patterns: names(&patterns),
        p: Number::new(params.p()),
        head: None,
        given: given.map(|g| g.to_string()),
        results,
        generating_functions,
        provenance: ROUTE_GF.into(),
    })
}

/// Exact win probabilities and expected duration of a race among any
/// number of patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRace {
    pub win_prob: Vec<Rational>,
    pub expected_duration: Rational,
    pub sgf_win: Vec<RationalFunction>,
    pub duration_pgf: Option<RationalFunction>,
    pub route: &'static str,
}

pub fn exact_race(patterns: &[Pattern], params: &ProbParams) -> Result<ExactRace> {
    validate_pattern_set(patterns)?;
    let race = match patterns {
        [w] => {
            let f = scratch_f(w, params).0;
            ExactRace {
                win_prob: vec![Rational::from_integer(1.into())],
                expected_duration: waiting_time(w, None, params)?,
                sgf_win: vec![f.clone()],
                duration_pgf: Some(f),
                route: ROUTE_GF,
            }
        }
        [a, b] => {
            let d = duel(a, b, params)?;
            let h = &d.sgf_win[0] + &d.sgf_win[1];
            ExactRace {
                win_prob: d.win_prob.to_vec(),
                expected_duration: expected_from_pgf(&h)?,
                sgf_win: d.sgf_win.to_vec(),
                duration_pgf: Some(h),
                route: ROUTE_GF,
            }
        }
        [a, b, c] => {
            let t = trio(a, b, c, params)?;
            ExactRace {
                win_prob: t.win_prob.to_vec(),
                expected_duration: t.expected_duration,
                sgf_win: t.sgf_win.to_vec(),
                duration_pgf: Some(t.duration_pgf),
                route: ROUTE_GF,
            }
        }
        _ => {
            let (win_prob, expected_duration) = oracle_race(patterns, None, params)?;
            return Ok(ExactRace {
                win_prob,
                expected_duration,
                sgf_win: Vec::new(),
                duration_pgf: None,
                route: ROUTE_ORACLE,
            });
        }
    };
    let (oracle, steps) = oracle_race(patterns, None, params)?;
    for (i, w) in patterns.iter().enumerate() {
        same(&format!("win {w}"), &[&race.win_prob[i], &oracle[i]])?;
    }
    same("duration", &[&race.expected_duration, &steps])?;
    Ok(race)
}

fn race_record(command: &str, texts: &[String], p: &str, pgf: bool) -> Result<OutputRecord> {
    let patterns = parse_patterns(texts)?;
    let params = parse_p(p)?;
    let race = exact_race(&patterns, &params)?;
    let mut results: Vec<Quantity> = patterns
        .iter()
        .zip(&race.win_prob)
        .map(|(w, x)| Quantity::new(format!("win {w}"), x))
        .collect();
    results.push(Quantity::new("duration", &race.expected_duration));
    let mut generating_functions = Vec::new();
    if pgf {
        for (w, x) in patterns.iter().zip(&race.sgf_win) {
            generating_functions.push(function(format!("X[{w}](s)"), x));
        }
        if let Some(h) = &race.duration_pgf {
            generating_functions.push(function("H(s)".into(), h));
        }
    }
    Ok(OutputRecord {
        command: command.into(),
        patterns: names(&patterns),
        p: Number::new(params.p()),
        head: None,
        given: None,
        results,
        generating_functions,
        provenance: race.route.into(),
    })
}

pub fn trio_cmd(patterns: &[String], p: &str, pgf: bool) -> Result<OutputRecord> {
    if patterns.len() != 3 {
        return Err(CliError::Invalid(format!(
            "trio needs 3 patterns, got {}",
            patterns.len()
        )));
    }
    race_record("trio", patterns, p, pgf)
}

pub fn race_cmd(patterns: &[String], p: &str, pgf: bool) -> Result<OutputRecord> {
    if patterns.len() < 2 {
        return Err(PatternError::TooFewPatterns {
            got: patterns.len(),
            need: 2,
        }
        .into());
    }
    race_record("race", patterns, p, pgf)
}

/// Runs the cross-check battery. Mismatches are reported in the record, not
/// as an error.
pub fn verify_cmd(texts: &[String], p: &str, nmax: usize) -> Result<VerifyRecord> {
    let patterns = parse_patterns(texts)?;
    let params = parse_p(p)?;
    if !(2..=3).contains(&patterns.len()) {
        return Err(CliError::Invalid(format!(
            "verify needs 2 or 3 patterns, got {}",
            patterns.len()
        )));
    }
    let report = verify(&patterns, &params, nmax)?;
    Ok(VerifyRecord {
        patterns: names(&patterns),
        p: Number::new(params.p()),
        nmax,
        passed: report.all_passed(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckLine {
                name: c.name,
                passed: c.passed,
                detail: c.detail,
            })
            .collect(),
    })
}
