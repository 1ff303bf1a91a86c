//! Seeded simulation of pattern races.
//!
//! Randomness comes from SplitMix64 (state increment `0x9E3779B97F4A7C15`,
//! finalizer multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`,
//! shifts 30/27/31). Game `g` (0-based) draws from its own generator seeded
//! with the `g`-th output of a SplitMix64 seeded with the run seed, so any
//! partition of the games over workers merges to the same report.
//!
//! A trial is a success when the 53-bit uniform `(x >> 11) * 2^-53` is
//! below `p` rounded once to `f64`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::algebra::{to_f64, Rational};
use crate::oracle::{build_automaton, PrefixAutomaton, Target};
use crate::patterns::{Pattern, PatternError, ProbParams, Symbol};
use crate::Error;

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Seed of game `g`: the `g`-th output of SplitMix64 started at `seed`.
pub fn game_seed(seed: u64, game: u64) -> u64 {
    mix64(seed.wrapping_add(GAMMA.wrapping_mul(game.wrapping_add(1))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub patterns: Vec<Pattern>,
    pub p: Rational,
    pub games: u64,
    pub seed: u64,
}

/// Integer accumulators; merging tallies is exact and order-independent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimTally {
    pub wins: Vec<u64>,
    pub games: u64,
    pub duration_sum: u128,
    pub duration_sq_sum: u128,
}

impl SimTally {
    pub fn new(patterns: usize) -> Self {
        SimTally {
            wins: vec![0; patterns],
            ..Default::default()
        }
    }

    pub fn merge(&mut self, other: &SimTally) {
        for (a, b) in self.wins.iter_mut().zip(&other.wins) {
            *a += b;
        }
        self.games += other.games;
        self.duration_sum += other.duration_sum;
        self.duration_sq_sum += other.duration_sq_sum;
    }

    pub fn report(&self) -> SimReport {
        let n = self.games as f64;
        let mean = self.duration_sum as f64 / n;
        let var = if self.games > 1 {
            let ss = self.duration_sq_sum as f64 - (self.duration_sum as f64) * mean;
            (ss / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        SimReport {
            win_counts: self.wins.clone(),
            games: self.games,
            mean_duration: mean,
            std_error_win: self
                .wins
                .iter()
                .map(|&w| {
                    let f = w as f64 / n;
                    libm::sqrt(f * (1.0 - f) / n)
                })
                .collect(),
            std_error_duration: libm::sqrt(var / n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    pub win_counts: Vec<u64>,
    pub games: u64,
    pub mean_duration: f64,
    /// Binomial standard error of each win frequency.
    pub std_error_win: Vec<f64>,
    /// Sample standard deviation of the duration over `sqrt(games)`.
    pub std_error_duration: f64,
}

impl SimReport {
    pub fn win_frequency(&self, i: usize) -> f64 {
        self.win_counts[i] as f64 / self.games as f64
    }
}

/// Validated simulation setup shared by all partitions of a run.
#[derive(Clone, Debug)]
pub struct Simulator {
    automaton: PrefixAutomaton,
    p: f64,
    seed: u64,
    games: u64,
}

impl Simulator {
    pub fn new(config: &SimConfig) -> Result<Self, Error> {
        if config.games == 0 {
            return Err(Error::InvalidInput("games must be at least 1"));
        }
        ProbParams::new(config.p.clone()).map_err(|_| PatternError::ProbabilityOutOfRange)?;
        Ok(Simulator {
            automaton: build_automaton(&config.patterns)?,
            p: to_f64(&config.p),
            seed: config.seed,
            games: config.games,
        })
    }

    pub fn games(&self) -> u64 {
        self.games
    }

    pub fn patterns(&self) -> usize {
        self.automaton.patterns().len()
    }

    /// Plays games with indices in `range`.
    pub fn run(&self, range: Range<u64>) -> SimTally {
        let mut tally = SimTally::new(self.patterns());
        for g in range {
            let mut rng = SplitMix64::new(game_seed(self.seed, g));
            let mut state = self.automaton.start();
            let mut steps: u64 = 0;
            let winner = loop {
                steps += 1;
                let sym = if rng.next_f64() < self.p {
                    Symbol::S
                } else {
                    Symbol::F
                };
                match self.automaton.step(state, sym) {
                    Target::State(s) => state = s,
                    Target::Absorb(w) => break w,
                }
            };
            tally.wins[winner] += 1;
            tally.games += 1;
            tally.duration_sum += u128::from(steps);
            tally.duration_sq_sum += u128::from(steps) * u128::from(steps);
        }
        tally
    }
}

/// Runs every game of `config` sequentially.
pub fn simulate(config: &SimConfig) -> Result<SimReport, Error> {
    let sim = Simulator::new(config)?;
    Ok(sim.run(0..sim.games()).report())
}
