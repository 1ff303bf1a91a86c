//! Exact arithmetic over rationals, univariate polynomials in `s` and
//! reduced rational functions.
//!
//! Every generating function in the crate is a [`RationalFunction`] whose
//! coefficients are exact [`Rational`]s. Rational functions are kept in a
//! canonical form: numerator and denominator are coprime and the denominator
//! is monic, so structural equality is mathematical equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a small rational constant.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Closest `f64` to an exact rational.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// A rational function was built with the zero polynomial as denominator.
    ZeroDenominator,
    /// Division by the identically zero rational function.
    DivisionByZero,
    /// `(s - 1)^k` did not divide the polynomial; `stage` is the first
    /// factor (1-based) that left a nonzero remainder.
    NotDivisible { k: usize, stage: usize },
    /// Power series requested for a function whose reduced denominator
    /// vanishes at `s = 0`.
    NoPowerSeries,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::ZeroDenominator => write!(f, "denominator is the zero polynomial"),
            AlgebraError::DivisionByZero => write!(f, "division by the zero function"),
            AlgebraError::NotDivisible { k, stage } => write!(
                f,
                "(s-1)^{k} does not divide the polynomial (nonzero remainder at factor {stage})"
            ),
            AlgebraError::NoPowerSeries => {
                write!(
                    f,
                    "denominator vanishes at s = 0; no power series expansion"
                )
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} as a rational (expected \"a/b\" or a finite decimal)",
            self.input
        )
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"0.2495"`.
///
/// Decimals are read exactly as scale-of-ten fractions, never through
/// floating point: `"0.2495"` is `499/2000`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: String::from(text),
    };
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = parse_int(n.trim()).ok_or_else(err)?;
        let d: BigInt = parse_int(d.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(err());
    }
    let mut digits = String::from(int_part);
    digits.push_str(frac_part);
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Dense univariate polynomial in `s`, lowest power first, trailing zeros
/// trimmed. The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * s^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// The formal variable `s`.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `1 - s`
    pub fn one_minus_s() -> Self {
        Self::new(vec![Rational::one(), -Rational::one()])
    }

    /// `s - 1`
    pub fn s_minus_one() -> Self {
        Self::new(vec![-Rational::one(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Value at `s = 1`, i.e. the sum of coefficients.
    pub fn eval_one(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `s^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    /// Exact division by `(s - 1)^k` using `k` rounds of synthetic division.
    pub fn shift_and_divide(&self, k: usize) -> Result<Polynomial, AlgebraError> {
        let mut cur = self.clone();
        for stage in 1..=k {
            let (q, r) = cur.synthetic_div_at_one();
            if !r.is_zero() {
                return Err(AlgebraError::NotDivisible { k, stage });
            }
            cur = q;
        }
        Ok(cur)
    }

    /// Quotient and remainder of division by `s - 1`.
    fn synthetic_div_at_one(&self) -> (Polynomial, Rational) {
        let Some(d) = self.degree() else {
            return (Self::zero(), Rational::zero());
        };
        let mut quot = vec![Rational::zero(); d];
        let mut carry = Rational::zero();
        for i in (0..=d).rev() {
            carry += &self.coeffs[i];
            if i > 0 {
                quot[i - 1] = carry.clone();
            }
        }
        (Self::new(quot), carry)
    }

    /// Multiplicity of the root `s = 1` (zero polynomial reports `None`).
    pub fn order_at_one(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = cur.synthetic_div_at_one();
            if !r.is_zero() {
                return Some(k);
            }
            cur = q;
            k += 1;
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, x) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c += x;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Value of a limit that may diverge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    Infinite,
}

impl Limit {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Limit::Finite(x) => Some(x),
            Limit::Infinite => None,
        }
    }
}

/// Reduced quotient of polynomials in `s` with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Quotient-rule derivative `(n'd - nd') / d^2`, reduced.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(num, &self.den * &self.den)
    }

    /// Value at `x`, or `None` when the reduced denominator vanishes there.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Limit as `s -> 1`, found by cancelling common `(s - 1)` factors
    /// exactly (the rational-function form of L'Hospital's rule).
    pub fn limit_at_one(&self) -> Limit {
        let Some(num_order) = self.num.order_at_one() else {
            return Limit::Finite(Rational::zero());
        };
        let den_order = self.den.order_at_one().expect("nonzero denominator");
        if den_order > num_order {
            return Limit::Infinite;
        }
        let num = self
            .num
            .shift_and_divide(den_order)
            .expect("order_at_one guarantees divisibility");
        let den = self
            .den
            .shift_and_divide(den_order)
            .expect("order_at_one guarantees divisibility");
        Limit::Finite(num.eval_one() / den.eval_one())
    }

    /// Taylor coefficients `c_0 ..= c_{n_max}` about `s = 0`, from the
    /// linear recurrence `sum_j den_j c_{n-j} = num_n`.
    pub fn series_coefficients(&self, n_max: usize) -> Result<Vec<Rational>, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::NoPowerSeries);
        }
        let d0_inv = d0.recip();
        let den = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = self.num.coeff(n);
            for (j, dj) in den.iter().enumerate().skip(1).take(n) {
                if !dj.is_zero() {
                    acc -= dj * &out[n - j];
                }
            }
            out.push(acc * &d0_inv);
        }
        Ok(out)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned_binop!(RationalFunction, Add, add);
forward_owned_binop!(RationalFunction, Sub, sub);
forward_owned_binop!(RationalFunction, Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
