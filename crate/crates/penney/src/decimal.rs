//! Decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use penney_core::Rational;

/// Significant digits used for every decimal in command output.
pub const SIGNIFICANT: usize = 12;

fn pow10(k: i64) -> Rational {
    let ten = Rational::from_integer(BigInt::from(10));
    ten.pow(k as i32)
}

/// Round `x` to `sig` significant digits, half away from zero. Plain
/// notation for magnitudes in `[1e-6, 1e21)`, scientific otherwise;
/// trailing zeros are dropped.
pub fn render(x: &Rational, sig: usize) -> String {
    assert!(sig > 0);
    if x.is_zero() {
        return "0".to_string();
    }
    let a = x.abs();
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let mut shift = sig as i64 - 1 - e;
    let mut digits = (&a * pow10(shift)).round().to_integer();
    if digits == BigInt::from(10).pow(sig as u32) {
        digits /= 10;
        e += 1;
        shift -= 1;
    }
    let digits = digits.to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    if (-6..21).contains(&e) {
        let body = if shift <= 0 {
            format!("{digits}{}", "0".repeat((-shift) as usize))
        } else {
            let shift = shift as usize;
            let padded = if digits.len() <= shift {
                format!("{}{digits}", "0".repeat(shift + 1 - digits.len()))
            } else {
                digits
            };
            let (int, frac) = padded.split_at(padded.len() - shift);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        };
        format!("{sign}{body}")
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = rest.trim_end_matches('0');
        if rest.is_empty() {
            format!("{sign}{lead}e{e}")
        } else {
            format!("{sign}{lead}.{rest}e{e}")
        }
    }
}

/// Exact rational rendered as `a/b`, or `a` when the denominator is one.
pub fn exact(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Closest rational with denominator `10^12` to a finite float.
pub fn from_f64(x: f64) -> Rational {
    let scale = 1e12;
    Rational::new(
        BigInt::from((x * scale).round() as i64),
        BigInt::from(1_000_000_000_000i64),
    )
}
