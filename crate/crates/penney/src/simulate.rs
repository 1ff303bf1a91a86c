//! Parallel Monte Carlo runs compared against the exact engine.

use penney_core::algebra::to_f64;
use penney_core::montecarlo::{SimConfig, SimReport, SimTally, Simulator};
use penney_core::Pattern;
use rayon::prelude::*;

use crate::commands::{exact_race, parse_p, parse_patterns};
use crate::error::Result;
use crate::record::{Number, SimColumn, SimRecord};

/// Games per work unit. Any value gives the same report.
pub const CHUNK: u64 = 4096;

pub fn simulate_parallel(config: &SimConfig) -> Result<SimReport> {
    let sim = Simulator::new(config)?;
    let chunks = sim.games().div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| sim.run(c * CHUNK..((c + 1) * CHUNK).min(sim.games())))
        .reduce(
            || SimTally::new(sim.patterns()),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    Ok(tally.report())
}

fn z_score(simulated: f64, exact: f64, se: f64) -> Option<f64> {
    (se > 0.0).then(|| (simulated - exact) / se)
}

pub fn simulate_cmd(texts: &[String], p: &str, games: u64, seed: u64) -> Result<SimRecord> {
    let patterns: Vec<Pattern> = parse_patterns(texts)?;
    let params = parse_p(p)?;
    let config = SimConfig {
        patterns: patterns.clone(),
        p: params.p().clone(),
        games,
        seed,
    };
    let report = simulate_parallel(&config)?;
    let exact = exact_race(&patterns, &params)?;
    let n = report.games as f64;
    let mut columns: Vec<SimColumn> = patterns
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let truth = to_f64(&exact.win_prob[i]);
            let freq = report.win_frequency(i);
            let se = (truth * (1.0 - truth) / n).sqrt();
            SimColumn {
                name: format!("win {w}"),
                simulated: freq,
                std_error: se,
                exact: Number::new(&exact.win_prob[i]),
                z: z_score(freq, truth, se),
            }
        })
        .collect();
    let truth = to_f64(&exact.expected_duration);
    columns.push(SimColumn {
        name: "duration".into(),
        simulated: report.mean_duration,
        std_error: report.std_error_duration,
        exact: Number::new(&exact.expected_duration),
        z: z_score(report.mean_duration, truth, report.std_error_duration),
    });
    Ok(SimRecord {
        patterns: patterns.iter().map(|w| w.to_string()).collect(),
        p: Number::new(params.p()),
        games,
        seed,
        win_counts: report.win_counts,
        columns,
        exact_route: exact.route.into(),
    })
}
