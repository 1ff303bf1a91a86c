//! Acceptance suite: nine criteria, one PASS/FAIL line each.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::One;
use penney::sweep::{self, Mode};
use penney_core::algebra::to_f64;
use penney_core::competition::{
    duel, duration_closed_form, trio, trio_win_sgf_ordered, win_prob_closed_form,
};
use penney_core::montecarlo::{simulate, SimConfig, SplitMix64};
use penney_core::oracle::{absorption, build_automaton, finite_horizon};
use penney_core::patterns::{effective_head, validate_pattern_set};
use penney_core::renewal::{
    head_f, head_mean_from_correlation, mean, mean_from_correlation, mean_table,
    mean_table_from_correlation, scratch_f,
};
use penney_core::{
    rat, Limit, Pattern, Polynomial, ProbParams, Rational, RationalFunction, Symbol,
};
use support::{enumerate_wins, params, pat};

fn grid() -> impl Iterator<Item = (Rational, ProbParams)> {
    (1..=21).map(|i| (rat(i, 22), params(i, 22)))
}

fn poly(coeffs: &[Rational]) -> Polynomial {
    Polynomial::new(coeffs.to_vec())
}

fn limit(f: &RationalFunction) -> Rational {
    match f.limit_at_one() {
        Limit::Finite(v) => v,
        Limit::Infinite => panic!("infinite limit for {f}"),
    }
}

fn oracle(patterns: &[Pattern], pp: &ProbParams) -> (Vec<Rational>, Rational) {
    let a = build_automaton(patterns).unwrap();
    let r = absorption(&a, a.start(), pp).unwrap();
    (r.win_prob, r.expected_steps)
}

fn within(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

fn trio_patterns() -> [Pattern; 3] {
    [pat("SSFFS"), pat("FSFSSF"), pat("FSSSF")]
}

fn criterion_1() -> String {
    let start = Instant::now();
    let w = pat("SSFFS");
    for (p, pp) in grid() {
        let q = rat(1, 1) - &p;
        let p2q2 = &p * &p * &q * &q;
        let expected = (rat(1, 1) + &p2q2) / (&p2q2 * &p);
        let derivative = mean(&scratch_f(&w, &pp)).unwrap();
        let closed = mean_from_correlation(&w, &pp);
        let (_, steps) = oracle(std::slice::from_ref(&w), &pp);
        assert_eq!(derivative, expected, "derivative route at p={p}");
        assert_eq!(closed, expected, "correlation route at p={p}");
        assert_eq!(steps, expected, "oracle at p={p}");
    }
    assert_eq!(mean(&scratch_f(&w, &params(1, 2))).unwrap(), rat(34, 1));
    within(start.elapsed(), Duration::from_secs(1), "criterion 1");
    format!(
        "mean of SSFFS exact on 21 grid points by three routes, 34 at p=1/2 ({:?})",
        start.elapsed()
    )
}

fn criterion_2() -> String {
    let (w, h) = (pat("SSFFS"), pat("SSF"));
    for (p, pp) in grid() {
        let q = rat(1, 1) - &p;
        let z = rat(0, 1);
        let one = rat(1, 1);
        let p2 = &p * &p;
        let lead = poly(&[one.clone(), -one.clone(), z.clone(), &p2 * &q]);
        let num = &lead * &poly(&[z.clone(), z.clone(), &p * &q]);
        let den = poly(&[
            one.clone(),
            -one.clone(),
            z.clone(),
            z.clone(),
            &p2 * &q * &q,
            -(&p2 * &q * &q * &q),
        ]);
        let expected = RationalFunction::new(num, den).unwrap();
        assert_eq!(head_f(&w, &h, &pp).0, expected, "F^SSF at p={p}");
        let pq = &p * &q;
        let mu = (&one + &pq * &pq - &pq) / (&p2 * &p * &q * &q);
        assert_eq!(mean(&head_f(&w, &h, &pp)).unwrap(), mu, "mean at p={p}");
        assert_eq!(head_mean_from_correlation(&w, &h, &pp), mu);
    }
    "F^SSF of SSFFS equals the reduced closed form and its mean on the grid".into()
}

fn duel_formula(p: &Rational) -> Rational {
    let q = rat(1, 1) - p;
    let one = rat(1, 1);
    (&one - p * &q * &q * &q * (&one + p)) / (&one + &q * &q + p * p * &q)
}

fn criterion_3() -> String {
    let (a, b) = (pat("SSFFS"), pat("FSFSSF"));
    for (p, pp) in grid() {
        let d = duel(&a, &b, &pp).unwrap();
        assert_eq!(d.win_prob[0], duel_formula(&p), "p={p}");
        assert_eq!(limit(&d.sgf_win[0]), d.win_prob[0]);
    }
    let million = 1_000_000;
    let low = duel(&a, &b, &params(1, million)).unwrap().win_prob[0].clone();
    let high = duel(&a, &b, &params(million - 1, million))
        .unwrap()
        .win_prob[0]
        .clone();
    assert!(
        (to_f64(&low) - 0.5).abs() < 1e-3,
        "p=1e-6 gives {}",
        to_f64(&low)
    );
    assert!(
        (to_f64(&high) - 1.0).abs() < 1e-3,
        "p=1-1e-6 gives {}",
        to_f64(&high)
    );
    assert_eq!(
        duel(&a, &b, &params(1, 2)).unwrap().win_prob[0],
        rat(29, 44)
    );
    format!(
        "duel formula exact on the grid, 29/44 at p=1/2, endpoints {:.6} and {:.6}",
        to_f64(&low),
        to_f64(&high)
    )
}

fn trio_formula(p: &Rational) -> Rational {
    let q = rat(1, 1) - p;
    let one = rat(1, 1);
    (&one - p * &q * &q * (&one + p) * (&one + &q)) / (rat(3, 1) * &q + p * p * (rat(2, 1) + &q))
}

fn criterion_4() -> String {
    let ws = trio_patterns();
    for (p, pp) in grid() {
        let t = trio(&ws[0], &ws[1], &ws[2], &pp).unwrap();
        assert_eq!(t.win_prob[0], trio_formula(&p), "p={p}");
    }
    let at = trio(&ws[0], &ws[1], &ws[2], &params(499, 2000))
        .unwrap()
        .win_prob[0]
        .clone();
    let v = to_f64(&at);
    assert!((v - 0.2859).abs() < 5e-5, "value at 0.2495 is {v}");
    let m = sweep::find_min(Mode::Trio, &ws, 999, "win1").unwrap();
    let p_star: f64 = m.p_star.parse().unwrap();
    assert!((0.2490..=0.2500).contains(&p_star), "p* = {p_star}");
    format!(
        "trio formula exact on the grid; {v:.6} at p=0.2495; minimizer p* = {}",
        m.p_star
    )
}

fn criterion_5() -> String {
    let ws = trio_patterns();
    let t = trio(&ws[0], &ws[1], &ws[2], &params(1, 2)).unwrap();
    assert_eq!(t.expected_duration, rat(571, 34));
    let m = sweep::find_min(Mode::Trio, &ws, 999, "duration").unwrap();
    let p_star: f64 = m.p_star.parse().unwrap();
    let value: f64 = m.value.parse().unwrap();
    assert!((0.5791..=0.5801).contains(&p_star), "p* = {p_star}");
    assert!((value - 15.88).abs() < 0.01, "minimum {value}");
    format!(
        "duration 571/34 at p=1/2; minimum {} at p* = {}",
        m.value, m.p_star
    )
}

fn random_pattern(rng: &mut SplitMix64) -> Pattern {
    let len = 3 + (rng.next_u64() % 4) as usize;
    let symbols = (0..len)
        .map(|_| {
            if rng.next_u64() & 1 == 0 {
                Symbol::S
            } else {
                Symbol::F
            }
        })
        .collect();
    Pattern::new(symbols).unwrap()
}

fn random_triples(count: usize, seed: u64) -> Vec<[Pattern; 3]> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let t = [
            random_pattern(&mut rng),
            random_pattern(&mut rng),
            random_pattern(&mut rng),
        ];
        if validate_pattern_set(&t).is_ok() {
            out.push(t);
        }
    }
    out
}

fn criterion_6() -> String {
    let start = Instant::now();
    let mut triples = vec![trio_patterns()];
    triples.extend(random_triples(10, 20240601));
    let mut checked = 0;
    for ws in &triples {
        for pp in [params(1, 3), params(1, 2), params(7, 10)] {
            let t = trio(&ws[0], &ws[1], &ws[2], &pp).unwrap();
            let by_derivative = mean_table(ws, &pp).unwrap();
            let by_correlation = mean_table_from_correlation(ws, &pp).unwrap();
            assert_eq!(by_derivative, by_correlation);
            let (truth, steps) = oracle(ws, &pp);
            for i in 0..3 {
                let from_limit = limit(&t.sgf_win[i]);
                let closed = win_prob_closed_form(&by_correlation, i).unwrap();
                assert_eq!(from_limit, closed, "{ws:?} win {i}");
                assert_eq!(from_limit, truth[i], "{ws:?} win {i} vs oracle");
            }
            let h = &(&t.sgf_win[0] + &t.sgf_win[1]) + &t.sgf_win[2];
            let from_limit = limit(&h.derivative());
            assert_eq!(from_limit, duration_closed_form(&by_correlation).unwrap());
            assert_eq!(from_limit, steps, "{ws:?} duration vs oracle");
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(30), "criterion 6");
    format!(
        "{checked} trio configurations agree across all routes ({:?})",
        start.elapsed()
    )
}

fn all_patterns(max_len: usize) -> Vec<Pattern> {
    (1..=max_len)
        .flat_map(|n| support::all_strings(n).map(|s| Pattern::new(s).unwrap()))
        .collect()
}

fn criterion_7() -> String {
    let pp = params(1, 2);
    let corpus = all_patterns(5);
    for w in &corpus {
        let series = scratch_f(w, &pp).0.series_coefficients(12).unwrap();
        let brute = enumerate_wins(std::slice::from_ref(w), &[], &pp, 12);
        assert_eq!(series, brute[0], "{w}");
    }
    let (a, b) = (pat("SSFFS"), pat("FSFSSF"));
    let d = duel(&a, &b, &pp).unwrap();
    let auto = build_automaton(&[a, b]).unwrap();
    let fh = finite_horizon(&auto, auto.start(), &pp, 30);
    for i in 0..2 {
        assert_eq!(d.sgf_win[i].series_coefficients(30).unwrap(), fh[i]);
    }
    format!(
        "{} patterns match 2^n enumeration to n=12; duel series match the oracle to n=30",
        corpus.len()
    )
}

fn criterion_8() -> String {
    let ws = trio_patterns();
    let mut cases = 0;
    for pp in [params(1, 3), params(1, 2), params(7, 10)] {
        for (t, x, y) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
            let one = trio_win_sgf_ordered([&ws[0], &ws[1], &ws[2]], [t, x, y], &pp).unwrap();
            let two = trio_win_sgf_ordered([&ws[0], &ws[1], &ws[2]], [t, y, x], &pp).unwrap();
            assert_eq!(one, two);
        }
        let tr = trio(&ws[0], &ws[1], &ws[2], &pp).unwrap();
        assert!(tr.win_prob.iter().sum::<Rational>().is_one());
        let d = duel(&ws[0], &ws[1], &pp).unwrap();
        assert!((&d.win_prob[0] + &d.win_prob[1]).is_one());
        cases += 1;
    }
    let corpus = all_patterns(4);
    let pp = params(2, 5);
    let mut pairs = 0;
    for w in &corpus {
        let mu = mean_from_correlation(w, &pp);
        for h in &corpus {
            if w.is_substring_of(h) {
                continue;
            }
            let mu_h = mean(&head_f(w, h, &pp)).unwrap();
            assert!(mu_h <= mu, "{w} after {h}");
            assert_eq!(mu_h == mu, effective_head(w, h).is_empty(), "{w} after {h}");
            pairs += 1;
        }
    }
    for t in random_triples(10, 7) {
        let pp = params(1, 2);
        let tr = trio(&t[0], &t[1], &t[2], &pp).unwrap();
        assert!(tr.win_prob.iter().sum::<Rational>().is_one());
    }
    format!("opponent order and total probability hold at {cases} p values; {pairs} head-start pairs obey mu_i|j <= mu_i")
}

fn criterion_9() -> String {
    let start = Instant::now();
    let ws = trio_patterns();
    let pp = params(1, 2);
    let exact = trio(&ws[0], &ws[1], &ws[2], &pp).unwrap();
    assert_eq!(exact.win_prob[0], rat(23, 68));
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut worst: f64 = 0.0;
    for (k, order) in orders.iter().enumerate() {
        let config = SimConfig {
            patterns: order.iter().map(|&i| ws[i].clone()).collect(),
            p: rat(1, 2),
            games: 100_000,
            seed: 0x5EED + k as u64,
        };
        let report = simulate(&config).unwrap();
        for (slot, &i) in order.iter().enumerate() {
            let z = (report.win_frequency(slot) - to_f64(&exact.win_prob[i]))
                / report.std_error_win[slot];
            assert!(z.abs() < 4.0, "order {order:?}: win z = {z}");
            worst = worst.max(z.abs());
        }
        let z =
            (report.mean_duration - to_f64(&exact.expected_duration)) / report.std_error_duration;
        assert!(z.abs() < 4.0, "order {order:?}: duration z = {z}");
        worst = worst.max(z.abs());
        if k == 0 {
            let again = simulate(&config).unwrap();
            assert_eq!(report, again);
            assert_eq!(
                report.mean_duration.to_bits(),
                again.mean_duration.to_bits()
            );
            let parallel = penney::simulate::simulate_parallel(&config).unwrap();
            assert_eq!(report, parallel);
        }
    }
    within(start.elapsed(), Duration::from_secs(60), "criterion 9");
    format!(
        "6 label orders of 10^5 games, max |z| = {worst:.3}, rerun bit-identical ({:?})",
        start.elapsed()
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> String); 9] = [
        ("single-pattern mean", criterion_1),
        ("head-start regression", criterion_2),
        ("duel", criterion_3),
        ("trio win probability", criterion_4),
        ("trio duration", criterion_5),
        ("route equivalence", criterion_6),
        ("series vs brute force", criterion_7),
        ("symmetry suite", criterion_8),
        ("Monte Carlo", criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
