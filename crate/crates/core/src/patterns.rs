//! Binary outcome patterns and their overlap structure.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rational};

/// One Bernoulli outcome: success or failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    S,
    F,
}

impl Symbol {
    pub const ALL: [Symbol; 2] = [Symbol::S, Symbol::F];

    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::S => Symbol::F,
            Symbol::F => Symbol::S,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::S => 'S',
            Symbol::F => 'F',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    Empty,
    InvalidSymbol {
        symbol: char,
        position: usize,
    },
    /// Both the S/F and the H/T spellings appear in one pattern.
    MixedAliases,
    TooFewPatterns {
        got: usize,
        need: usize,
    },
    Duplicate {
        pattern: String,
    },
    /// `inner` occurs as a contiguous block of `outer`.
    Substring {
        inner: String,
        outer: String,
    },
    ProbabilityOutOfRange,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::Empty => write!(f, "pattern is empty"),
            PatternError::InvalidSymbol { symbol, position } => {
                write!(
                    f,
                    "invalid symbol {symbol:?} at position {position} (expected S/F or H/T)"
                )
            }
            PatternError::MixedAliases => {
                write!(f, "pattern mixes S/F with H/T spellings")
            }
            PatternError::TooFewPatterns { got, need } => {
                write!(f, "need at least {need} patterns, got {got}")
            }
            PatternError::Duplicate { pattern } => write!(f, "duplicate pattern {pattern}"),
            PatternError::Substring { inner, outer } => {
                write!(f, "{inner} is a substring of {outer}")
            }
            PatternError::ProbabilityOutOfRange => write!(f, "p must be in (0,1)"),
        }
    }
}

impl core::error::Error for PatternError {}

/// A nonempty word over `{S, F}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Vec<Symbol>);

impl Pattern {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, PatternError> {
        if symbols.is_empty() {
            return Err(PatternError::Empty);
        }
        Ok(Pattern(symbols))
    }

    /// Accepts `S`/`F` or the coin spelling `H`/`T` (case-insensitive), but
    /// not both spellings in one string.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut symbols = Vec::with_capacity(text.len());
        let (mut sf, mut ht) = (false, false);
        for (position, ch) in text.chars().enumerate() {
            let sym = match ch.to_ascii_uppercase() {
                'S' => {
                    sf = true;
                    Symbol::S
                }
                'F' => {
                    sf = true;
                    Symbol::F
                }
                'H' => {
                    ht = true;
                    Symbol::S
                }
                'T' => {
                    ht = true;
                    Symbol::F
                }
                _ => {
                    return Err(PatternError::InvalidSymbol {
                        symbol: ch,
                        position,
                    })
                }
            };
            symbols.push(sym);
        }
        if sf && ht {
            return Err(PatternError::MixedAliases);
        }
        Pattern::new(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; patterns are nonempty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if `self` occurs as a contiguous block of `other`.
    pub fn is_substring_of(&self, other: &Pattern) -> bool {
        contains(&other.0, &self.0)
    }

    /// The S<->F mirror image.
    pub fn flipped(&self) -> Pattern {
        Pattern(self.0.iter().map(|s| s.flipped()).collect())
    }
}

impl FromStr for Pattern {
    type Err = PatternError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

fn contains(haystack: &[Symbol], needle: &[Symbol]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Success probability `p` and its complement `q = 1 - p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbParams {
    p: Rational,
    q: Rational,
}

impl ProbParams {
    pub fn new(p: Rational) -> Result<Self, PatternError> {
        if p <= Rational::zero() || p >= Rational::one() {
            return Err(PatternError::ProbabilityOutOfRange);
        }
        let q = Rational::one() - &p;
        Ok(ProbParams { p, q })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn prob(&self, s: Symbol) -> &Rational {
        match s {
            Symbol::S => &self.p,
            Symbol::F => &self.q,
        }
    }
}

/// Checks that patterns are pairwise distinct and that none occurs inside
/// another. A single pattern is trivially valid.
pub fn validate_pattern_set(patterns: &[Pattern]) -> Result<(), PatternError> {
    if patterns.is_empty() {
        return Err(PatternError::TooFewPatterns { got: 0, need: 1 });
    }
    for (i, a) in patterns.iter().enumerate() {
        for b in &patterns[i + 1..] {
            if a == b {
                return Err(PatternError::Duplicate {
                    pattern: a.to_string(),
                });
            }
            let (inner, outer) = if a.len() <= b.len() { (a, b) } else { (b, a) };
            if inner.is_substring_of(outer) {
                return Err(PatternError::Substring {
                    inner: inner.to_string(),
                    outer: outer.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Product of `p` per `S` and `q` per `F`; the empty word has probability 1.
pub fn word_probability(word: &[Symbol], params: &ProbParams) -> Rational {
    word.iter()
        .fold(Rational::one(), |acc, &s| acc * params.prob(s))
}

/// Overlap lengths `k` at which a pattern's length-`k` prefix equals its
/// length-`k` suffix, each weighted by the probability of the `m - k`
/// symbols that follow the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationSet {
    len: usize,
    entries: BTreeMap<usize, Rational>,
}

impl CorrelationSet {
    /// Pattern length `m`.
    pub fn pattern_len(&self) -> usize {
        self.len
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.entries.get(&k)
    }

    pub fn contains(&self, k: usize) -> bool {
        self.entries.contains_key(&k)
    }

    /// `(k, P_k)` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(&k, w)| (k, w))
    }

    /// `C(s) = sum_k P_k s^(m-k)`.
    pub fn polynomial(&self) -> Polynomial {
        self.iter().fold(Polynomial::zero(), |acc, (k, w)| {
            acc + Polynomial::monomial(w.clone(), self.len - k)
        })
    }

    /// `C(1) = sum_k P_k`.
    pub fn total(&self) -> Rational {
        self.entries
            .values()
            .fold(Rational::zero(), |acc, w| acc + w)
    }
}

pub fn autocorrelation(w: &Pattern, params: &ProbParams) -> CorrelationSet {
    let sym = w.symbols();
    let m = sym.len();
    let entries = (1..=m)
        .filter(|&k| sym[..k] == sym[m - k..])
        .map(|k| (k, word_probability(&sym[k..], params)))
        .collect();
    CorrelationSet { len: m, entries }
}

/// Renewal-occurrence probabilities `u_1 .. u_{m-1}` of a pattern when the
/// stream is preceded by a head-start word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadStartInitials {
    values: Vec<Rational>,
}

impl HeadStartInitials {
    /// `u_j` for `1 <= j <= m-1`; zero outside that range.
    pub fn get(&self, j: usize) -> Rational {
        j.checked_sub(1)
            .and_then(|i| self.values.get(i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(j, u_j)` for `j = 1 .. m-1`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().enumerate().map(|(i, u)| (i + 1, u))
    }

    pub fn is_all_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `sum_j u_j s^j` for `j < limit`.
    pub fn truncated_polynomial(&self, limit: usize) -> Polynomial {
        self.iter()
            .take_while(|&(j, _)| j < limit)
            .fold(Polynomial::zero(), |acc, (j, u)| {
                acc + Polynomial::monomial(u.clone(), j)
            })
    }
}

/// `true` when the pattern can be completed at trial `j < m` by reusing
/// the last `m - j` symbols of `head`.
pub(crate) fn head_completes_at(w: &[Symbol], head: &[Symbol], j: usize) -> bool {
    let need = w.len() - j;
    head.len() >= need && w[..need] == head[head.len() - need..]
}

/// Solves the triangular system for `u_j^H`, `j = 1 .. m-1`:
///
/// `u_j = match(j) * P(last j symbols) - sum_{k in Corr, k < m, j-(m-k) >= 1} P_k u_{j-(m-k)}`
pub fn head_start_initials(w: &Pattern, head: &Pattern, params: &ProbParams) -> HeadStartInitials {
    let sym = w.symbols();
    let m = sym.len();
    let corr = autocorrelation(w, params);
    let mut values: Vec<Rational> = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        let mut u = if head_completes_at(sym, head.symbols(), j) {
            word_probability(&sym[m - j..], params)
        } else {
            Rational::zero()
        };
        for (k, pk) in corr.iter().filter(|&(k, _)| k < m) {
            if j > m - k {
                u -= pk * &values[j - (m - k) - 1];
            }
        }
        values.push(u);
    }
    HeadStartInitials { values }
}

/// Longest suffix of `head` that is a proper prefix of `w` (possibly empty).
pub fn effective_head<'h>(w: &Pattern, head: &'h Pattern) -> &'h [Symbol] {
    let (ws, hs) = (w.symbols(), head.symbols());
    let max = (ws.len() - 1).min(hs.len());
    (1..=max)
        .rev()
        .find(|&l| ws[..l] == hs[hs.len() - l..])
        .map_or(&hs[hs.len()..], |l| &hs[hs.len() - l..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use alloc::vec;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn half() -> ProbParams {
        ProbParams::new(rat(1, 2)).unwrap()
    }

    #[test]
    fn parse_canonical_and_aliases() {
        use Symbol::*;
        assert_eq!(pat("SSFFS").symbols(), &[S, S, F, F, S]);
        assert_eq!(pat("htt").symbols(), &[S, F, F]);
        assert_eq!(pat("sSfF").symbols(), &[S, S, F, F]);
        assert_eq!(
            Pattern::parse("SXF"),
            Err(PatternError::InvalidSymbol {
                symbol: 'X',
                position: 1
            })
        );
        assert_eq!(Pattern::parse(""), Err(PatternError::Empty));
        assert_eq!(Pattern::parse("SH"), Err(PatternError::MixedAliases));
        assert_eq!(pat("SFFS").to_string(), "SFFS");
    }

    #[test]
    fn pattern_set_validation() {
        assert!(validate_pattern_set(&[pat("SSFFS"), pat("FSFSSF")]).is_ok());
        assert!(validate_pattern_set(&[pat("SSFFS"), pat("FSFSSF"), pat("FSSSF")]).is_ok());
        assert_eq!(
            validate_pattern_set(&[pat("SS"), pat("SSF")]),
            Err(PatternError::Substring {
                inner: "SS".into(),
                outer: "SSF".into()
            })
        );
        assert_eq!(
            validate_pattern_set(&[pat("SSF"), pat("FS"), pat("SSF")]),
            Err(PatternError::Duplicate {
                pattern: "SSF".into()
            })
        );
        assert!(validate_pattern_set(&[pat("SSF")]).is_ok());
        assert!(validate_pattern_set(&[]).is_err());
    }

    #[test]
    fn probability_range() {
        assert_eq!(
            ProbParams::new(rat(0, 1)),
            Err(PatternError::ProbabilityOutOfRange)
        );
        assert_eq!(
            ProbParams::new(rat(1, 1)),
            Err(PatternError::ProbabilityOutOfRange)
        );
        assert_eq!(ProbParams::new(rat(3, 10)).unwrap().q(), &rat(7, 10));
    }

    #[test]
    fn word_probabilities() {
        let pp = ProbParams::new(rat(1, 3)).unwrap();
        assert_eq!(
            word_probability(pat("SSFFS").symbols(), &half()),
            rat(1, 32)
        );
        assert_eq!(word_probability(pat("SFFS").symbols(), &pp), rat(4, 81));
        assert_eq!(word_probability(&[], &pp), rat(1, 1));
    }

    #[test]
    fn autocorrelation_examples() {
        let pp = ProbParams::new(rat(1, 3)).unwrap();
        let (p, q) = (pp.p().clone(), pp.q().clone());
        let c = autocorrelation(&pat("SSFFS"), &pp);
        assert_eq!(c.iter().count(), 2);
        assert_eq!(c.get(5), Some(&rat(1, 1)));
        assert_eq!(c.get(1), Some(&(&p * &p * &q * &q)));

        let c = autocorrelation(&pat("SSFF"), &pp);
        assert_eq!(c.iter().map(|(k, _)| k).collect::<Vec<_>>(), vec![4]);

        let c = autocorrelation(&pat("SSSS"), &pp);
        assert_eq!(c.get(4), Some(&rat(1, 1)));
        assert_eq!(c.get(3), Some(&p));
        assert_eq!(c.get(2), Some(&(&p * &p)));
        assert_eq!(c.get(1), Some(&(&p * &p * &p)));
    }

    #[test]
    fn head_start_examples() {
        let pp = ProbParams::new(rat(2, 7)).unwrap();
        let (p, q) = (pp.p().clone(), pp.q().clone());

        let h = head_start_initials(&pat("SSFFS"), &pat("SSF"), &pp);
        assert_eq!(h.get(2), &p * &q);
        for j in [1, 3, 4] {
            assert_eq!(h.get(j), rat(0, 1), "j={j}");
        }

        let h = head_start_initials(&pat("SSSS"), &pat("SSS"), &pp);
        assert_eq!(h.get(1), p);
        assert_eq!(h.get(2), rat(0, 1));
        assert_eq!(h.get(3), rat(0, 1));

        let h = head_start_initials(&pat("FSSFF"), &pat("FSSF"), &pp);
        assert_eq!(h.get(1), q);
        assert_eq!(h.get(4), &p * &p * &q * &q);
        assert_eq!(h.get(2), rat(0, 1));
        assert_eq!(h.get(3), rat(0, 1));
    }

    #[test]
    fn disjoint_head_gives_zero_initials() {
        let h = head_start_initials(&pat("SSS"), &pat("FFF"), &half());
        assert!(h.is_all_zero());
    }

    #[test]
    fn effective_head_examples() {
        let ssffs = pat("SSFFS");
        let fsfssf = pat("FSFSSF");
        assert_eq!(effective_head(&ssffs, &fsfssf), pat("SSF").symbols());
        assert_eq!(effective_head(&fsfssf, &ssffs), pat("FS").symbols());
        assert!(effective_head(&pat("SSS"), &pat("FFF")).is_empty());
        assert_eq!(
            effective_head(&pat("FFS"), &pat("SSFF")),
            pat("FF").symbols()
        );
        // a proper prefix only, never the whole target
        assert_eq!(
            effective_head(&pat("SFS"), &pat("FSF")),
            pat("SF").symbols()
        );
    }
}
