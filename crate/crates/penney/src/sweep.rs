//! Parameter sweeps over `p` and minimization of a sweep column.

use penney_core::algebra::to_f64;
use penney_core::competition::{
    duel_win_prob_closed_form, duration_closed_form, win_prob_closed_form,
};
use penney_core::renewal::mean_table_from_correlation;
use penney_core::{rat, Pattern, ProbParams, Rational};
use rayon::prelude::*;

use crate::decimal::{self, SIGNIFICANT};
use crate::error::{CliError, Result};
use crate::record::{MinimumRecord, SweepRow, SweepTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Duel,
    Trio,
}

impl Mode {
    pub fn patterns(self) -> usize {
        match self {
            Mode::Duel => 2,
            Mode::Trio => 3,
        }
    }

    /// Column names after `p`.
    pub fn columns(self) -> Vec<String> {
        let mut cols: Vec<String> = (1..=self.patterns()).map(|i| format!("win{i}")).collect();
        if self == Mode::Trio {
            cols.push("duration".into());
        }
        cols
    }
}

/// Exact column values at one `p`, from the mean table closed forms.
pub fn evaluate(mode: Mode, patterns: &[Pattern], params: &ProbParams) -> Result<Vec<Rational>> {
    let means = mean_table_from_correlation(patterns, params)?;
    let mut out = Vec::with_capacity(4);
    match mode {
        Mode::Duel => {
            for i in 0..2 {
                out.push(duel_win_prob_closed_form(&means, i)?);
            }
        }
        Mode::Trio => {
            for i in 0..3 {
                out.push(win_prob_closed_form(&means, i)?);
            }
            out.push(duration_closed_form(&means)?);
        }
    }
    Ok(out)
}

fn check(mode: Mode, patterns: &[Pattern], grid: usize) -> Result<()> {
    if patterns.len() != mode.patterns() {
        return Err(CliError::Invalid(format!(
            "{mode:?} sweep needs {} patterns, got {}",
            mode.patterns(),
            patterns.len()
        )));
    }
    if grid < 2 {
        return Err(CliError::Invalid(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    penney_core::patterns::validate_pattern_set(patterns)?;
    Ok(())
}

/// Exact values at `p = i/(grid+1)`, `i = 1..=grid`, in ascending `p`.
pub fn grid_values(
    mode: Mode,
    patterns: &[Pattern],
    grid: usize,
) -> Result<Vec<(Rational, Vec<Rational>)>> {
    check(mode, patterns, grid)?;
    (1..=grid)
        .into_par_iter()
        .map(|i| {
            let p = rat(i as i64, grid as i64 + 1);
            let params = ProbParams::new(p.clone())?;
            Ok((p, evaluate(mode, patterns, &params)?))
        })
        .collect()
}

pub fn sweep(mode: Mode, patterns: &[Pattern], grid: usize) -> Result<SweepTable> {
    let rows = grid_values(mode, patterns, grid)?
        .into_iter()
        .map(|(p, values)| SweepRow {
            p: decimal::render(&p, SIGNIFICANT),
            values: values
                .iter()
                .map(|v| decimal::render(v, SIGNIFICANT))
                .collect(),
        })
        .collect();
    Ok(SweepTable {
        patterns: patterns.iter().map(|w| w.to_string()).collect(),
        columns: mode.columns(),
        rows,
    })
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

/// Tolerance in `p` for the minimizer refinement.
pub const P_TOLERANCE: f64 = 1e-6;

/// Value of one column at a decimal `p`, rounded to 12 decimal places.
pub fn column_at(mode: Mode, patterns: &[Pattern], column: usize, p: f64) -> Result<Rational> {
    let params = ProbParams::new(decimal::from_f64(p))?;
    Ok(evaluate(mode, patterns, &params)?.swap_remove(column))
}

pub fn find_min(
    mode: Mode,
    patterns: &[Pattern],
    grid: usize,
    column: &str,
) -> Result<MinimumRecord> {
    let cols = mode.columns();
    let idx = cols.iter().position(|c| c == column).ok_or_else(|| {
        CliError::Invalid(format!(
            "unknown column {column:?}; expected one of {}",
            cols.join(", ")
        ))
    })?;
    let table = grid_values(mode, patterns, grid)?;
    let (best, (grid_p, grid_vals)) = table
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.1[idx].cmp(&b.1[idx]))
        .expect("grid is nonempty");
    let step = 1.0 / (grid as f64 + 1.0);
    let centre = to_f64(grid_p);
    let lo = if best == 0 {
        centre / 2.0
    } else {
        centre - step
    };
    let hi = if best + 1 == table.len() {
        (centre + 1.0) / 2.0
    } else {
        centre + step
    };
    let mut failure = None;
    let x = golden_section(
        |p| match column_at(mode, patterns, idx, p) {
            Ok(v) => to_f64(&v),
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        },
        lo,
        hi,
        P_TOLERANCE,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let value = column_at(mode, patterns, idx, x)?;
    Ok(MinimumRecord {
        patterns: patterns.iter().map(|w| w.to_string()).collect(),
        column: column.to_string(),
        p_star: format!("{x:.4}"),
        value: decimal::render(&value, SIGNIFICANT),
        grid_p: decimal::render(grid_p, SIGNIFICANT),
        grid_value: decimal::render(&grid_vals[idx], SIGNIFICANT),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let x = golden_section(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
    }

    #[test]
    fn trio_columns() {
        assert_eq!(Mode::Trio.columns(), ["win1", "win2", "win3", "duration"]);
        assert_eq!(Mode::Duel.columns(), ["win1", "win2"]);
    }
}
