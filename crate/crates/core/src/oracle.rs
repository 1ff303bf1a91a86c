//! Formula-free ground truth: an absorbing Markov chain on the prefix
//! automaton of the competing patterns.
//!
//! The oracle never touches correlation polynomials or generating
//! functions, so agreement with the renewal engine is independent evidence.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::patterns::{validate_pattern_set, Pattern, ProbParams, Symbol};
use crate::Error;

/// Index of a transient automaton state.
pub type StateId = usize;

/// Where a transition leads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    State(StateId),
    /// Pattern with this index has just been completed.
    Absorb(usize),
}

impl Target {
    pub fn state(self) -> Option<StateId> {
        match self {
            Target::State(s) => Some(s),
            Target::Absorb(_) => None,
        }
    }
}

/// Prefix automaton over a substring-free pattern set. Each transient state
/// is the longest suffix of the text so far that is a proper prefix of some
/// pattern; state 0 is the empty word.
#[derive(Clone, Debug)]
pub struct PrefixAutomaton {
    patterns: Vec<Pattern>,
    labels: Vec<Vec<Symbol>>,
    next: Vec<[Target; 2]>,
}

fn sym_index(s: Symbol) -> usize {
    match s {
        Symbol::S => 0,
        Symbol::F => 1,
    }
}

pub fn build_automaton(patterns: &[Pattern]) -> Result<PrefixAutomaton, Error> {
    validate_pattern_set(patterns)?;
    let mut ids: BTreeMap<&[Symbol], StateId> = BTreeMap::new();
    let mut labels: Vec<Vec<Symbol>> = Vec::new();
    // shortest first, so the empty word is state 0
    let mut prefixes: Vec<&[Symbol]> = patterns
        .iter()
        .flat_map(|w| (0..w.len()).map(move |l| &w.symbols()[..l]))
        .collect();
    prefixes.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    prefixes.dedup();
    for p in prefixes {
        ids.insert(p, labels.len());
        labels.push(p.to_vec());
    }

    let mut next = Vec::with_capacity(labels.len());
    for label in &labels {
        let mut row = [Target::State(0); 2];
        for sym in Symbol::ALL {
            let mut text = label.clone();
            text.push(sym);
            let target = match patterns.iter().position(|w| text.ends_with(w.symbols())) {
                Some(winner) => Target::Absorb(winner),
                None => {
                    let id = (0..=text.len())
                        .find_map(|start| ids.get(&text[start..]).copied())
                        .expect("empty word is always a state");
                    Target::State(id)
                }
            };
            row[sym_index(sym)] = target;
        }
        next.push(row);
    }
    Ok(PrefixAutomaton {
        patterns: patterns.to_vec(),
        labels,
        next,
    })
}

impl PrefixAutomaton {
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn num_transient(&self) -> usize {
        self.labels.len()
    }

    pub fn start(&self) -> StateId {
        0
    }

    /// The suffix-prefix word a state stands for.
    pub fn label(&self, state: StateId) -> &[Symbol] {
        &self.labels[state]
    }

    pub fn step(&self, state: StateId, sym: Symbol) -> Target {
        self.next[state][sym_index(sym)]
    }

    /// State reached by feeding `head` from the empty state.
    pub fn start_state_after(&self, head: &[Symbol]) -> Result<StateId, Error> {
        let mut state = self.start();
        for (i, &sym) in head.iter().enumerate() {
            match self.step(state, sym) {
                Target::State(s) => state = s,
                Target::Absorb(winner) => {
                    return Err(Error::AbsorbedDuringHead {
                        pattern: self.patterns[winner].clone(),
                        position: i,
                    })
                }
            }
        }
        Ok(state)
    }
}

/// Absorption probabilities and mean absorption time from one start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorptionResult {
    pub win_prob: Vec<Rational>,
    pub expected_steps: Rational,
}

/// Solves `(I - Q) x = r_i` for each pattern `i` and `(I - Q) t = 1` by exact
/// Gaussian elimination.
pub fn absorption(
    automaton: &PrefixAutomaton,
    start: StateId,
    params: &ProbParams,
) -> Result<AbsorptionResult, Error> {
    let n = automaton.num_transient();
    let k = automaton.patterns.len();
    // augmented [I - Q | R | 1]
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for s in 0..n {
        let mut row = vec![Rational::zero(); n + k + 1];
        row[s] += Rational::one();
        for sym in Symbol::ALL {
            let pr = params.prob(sym);
            match automaton.step(s, sym) {
                Target::State(t) => row[t] -= pr,
                Target::Absorb(w) => row[n + w] += pr,
            }
        }
        row[n + k] = Rational::one();
        rows.push(row);
    }
    let solution = gauss_solve(rows, n)?;
    let x = &solution[start];
    Ok(AbsorptionResult {
        win_prob: x[..k].to_vec(),
        expected_steps: x[k].clone(),
    })
}

/// Reduces an `n`-by-`(n + r)` augmented system in place and returns the
/// `n` rows of the `r` solution columns.
fn gauss_solve(mut a: Vec<Vec<Rational>>, n: usize) -> Result<Vec<Vec<Rational>>, Error> {
    let width = a.first().map_or(0, Vec::len);
    let size = |x: &Rational| x.numer().bits() + x.denom().bits();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| size(&a[r][col]))
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..width {
                if !pivot_row[c].is_zero() {
                    row[c] -= &factor * &pivot_row[c];
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// `result[i][n]` is the exact probability that pattern `i` wins at trial
/// `n`, for `0 <= n <= n_max`, by forward propagation of state occupancy.
pub fn finite_horizon(
    automaton: &PrefixAutomaton,
    start: StateId,
    params: &ProbParams,
    n_max: usize,
) -> Vec<Vec<Rational>> {
    let n = automaton.num_transient();
    let k = automaton.patterns.len();
    let mut out = vec![vec![Rational::zero(); n_max + 1]; k];
    let mut occ = vec![Rational::zero(); n];
    occ[start] = Rational::one();
    for trial in 1..=n_max {
        let mut nxt = vec![Rational::zero(); n];
        for (s, mass) in occ.iter().enumerate() {
            if mass.is_zero() {
                continue;
            }
            for sym in Symbol::ALL {
                let flow = mass * params.prob(sym);
                match automaton.step(s, sym) {
                    Target::State(t) => nxt[t] += flow,
                    Target::Absorb(w) => out[w][trial] += flow,
                }
            }
        }
        occ = nxt;
    }
    out
}
