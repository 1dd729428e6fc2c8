//! The constant `θ_b` with `c_b(n) ~ θ_b 2^n`, in exact rationals.
//!
//! `θ_b` is computed twice: from its closed product formula, and by
//! assembling the residue at the simple pole `z = 1/2` from the derivative
//! of the denominator and the two numerator pieces.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::recurrence::Counts;

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// `2^k - 1`.
fn mersenne(k: u32) -> BigInt {
    pow2(k) - 1
}

fn at_least_two(b: u32) -> Result<()> {
    if b < 2 {
        return Err(Error::UnsupportedB(b));
    }
    Ok(())
}

fn at_least_one(b: u32) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be at least 1".into()));
    }
    Ok(())
}

/// `(1/2)^(b-1) prod_{k<b} 2^k/(2^k-1) (1 + sum_{i=0}^{b-2} 1/prod_{k=i+1}^{b-1} (2^k-1))`.
pub fn theta_exact(b: u32) -> Result<BigRational> {
    at_least_two(b)?;
    let product = (1..b).fold(BigRational::one(), |acc, k| {
        acc * ratio(pow2(k), mersenne(k))
    });
    let mut tail = BigRational::one();
    // Suffix products prod_{k=i+1}^{b-1} (2^k - 1), built from the top down.
    let mut suffix = BigInt::one();
    for i in (0..b - 1).rev() {
        suffix *= mersenne(i + 1);
        tail += ratio(1, suffix.clone());
    }
    Ok(ratio(1, pow2(b - 1)) * product * tail)
}

/// Derivative of the denominator of `C_b` at `1/2`:
/// `-2 (2^b-1)/2^b prod_{k<b} ((2^k-1)/2^k)^3`.
pub fn denominator_derivative_at_half(b: u32) -> Result<BigRational> {
    at_least_two(b)?;
    let cube = (1..b).fold(BigRational::one(), |acc, k| {
        let f = ratio(mersenne(k), pow2(k));
        acc * &f * &f * f
    });
    Ok(ratio(-2, 1) * ratio(mersenne(b), pow2(b)) * cube)
}

/// `(1/2)^b prod_{k=2}^{b} (2^k-1)/2^k`.
pub fn numerator_hat_at_half(b: u32) -> Result<BigRational> {
    at_least_one(b)?;
    Ok((2..=b).fold(ratio(1, pow2(b)), |acc, k| {
        acc * ratio(mersenne(k), pow2(k))
    }))
}

/// `sum_{i=0}^{b-1} prod_{k=1}^{i} (2^k-1) / prod_{k=1}^{b-1} 2^k`.
pub fn numerator_bar_at_half(b: u32) -> Result<BigRational> {
    at_least_one(b)?;
    let mut sum = BigInt::zero();
    let mut prefix = BigInt::one();
    for i in 0..b {
        if i > 0 {
            prefix *= mersenne(i);
        }
        sum += &prefix;
    }
    // prod_{k=1}^{b-1} 2^k = 2^(b(b-1)/2)
    Ok(ratio(sum, pow2(b * (b - 1) / 2)))
}

/// `-2 f̂(1/2) f̄(1/2) / g'(1/2)`.
pub fn theta_from_parts(b: u32) -> Result<BigRational> {
    let derivative = denominator_derivative_at_half(b)?;
    Ok(ratio(-2, 1) * numerator_hat_at_half(b)? * numerator_bar_at_half(b)? / derivative)
}

/// `prod_{k=1}^{terms} 2^k / (2^k - 1)`.
pub fn limit_constant(terms: u32) -> Result<BigRational> {
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    Ok((1..=terms).fold(BigRational::one(), |acc, k| {
        acc * ratio(pow2(k), mersenne(k))
    }))
}

/// Leading decimal digits of the infinite product (no decimal point).
///
/// Uses `P_T < P < P_T (1 + 2^(1-T))` and doubles `T` until both bounds
/// agree on `digits` digits.
pub fn limit_constant_digits(digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits.saturating_sub(1));
    let mut terms = 16;
    loop {
        let lower = limit_constant(terms).expect("terms >= 1");
        let upper = &lower * (BigRational::one() + ratio(1, pow2(terms - 1)));
        let lo = (&lower * &scale).floor().to_integer();
        let hi = (&upper * &scale).floor().to_integer();
        if lo == hi {
            return lo.to_string();
        }
        terms *= 2;
    }
}

/// `3.46 (1/2)^(b-1)`, the rounded estimate of `θ_b`.
pub fn theta_estimate(b: u32) -> BigRational {
    ratio(346, 100) / ratio(pow2(b.saturating_sub(1)), 1)
}

/// Empirical comparison of `c_b(n) / 2^n` with `θ_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub b: u32,
    pub n: u32,
    /// `c_b(n) / 2^n`.
    pub ratio: BigRational,
    pub theta: BigRational,
    /// `|ratio - θ_b| / θ_b`.
    pub relative_error: BigRational,
    /// `c_b(n+1) / c_b(n)`.
    pub growth: BigRational,
    pub estimate: BigRational,
    /// `|θ_b - estimate|`.
    pub estimate_error: BigRational,
}

pub fn convergence_report(b: u32, n: u32) -> Result<ConvergenceReport> {
    let theta = theta_exact(b)?;
    if n < b {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must be at least b = {b}"
        )));
    }
    let mut counts = Counts::new();
    let here = BigInt::from(counts.c(b, n));
    let next = BigInt::from(counts.c(b, n + 1));
    let ratio_n = ratio(here.clone(), pow2(n));
    let estimate = theta_estimate(b);
    Ok(ConvergenceReport {
        b,
        n,
        relative_error: (&ratio_n - &theta).abs() / &theta,
        ratio: ratio_n,
        growth: ratio(next, here),
        estimate_error: (&theta - &estimate).abs(),
        estimate,
        theta,
    })
}

/// One column of the θ table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaColumn {
    pub b: u32,
    pub theta: BigRational,
    pub estimate: BigRational,
    pub error: BigRational,
}

pub fn theta_table(max_b: u32) -> Result<Vec<ThetaColumn>> {
    at_least_two(max_b)?;
    (2..=max_b)
        .map(|b| {
            let theta = theta_exact(b)?;
            let estimate = theta_estimate(b);
            Ok(ThetaColumn {
                b,
                error: (&theta - &estimate).abs(),
                theta,
                estimate,
            })
        })
        .collect()
}

/// Decimal rendering with `decimals` places, ties rounded away from zero.
pub fn to_decimal(x: &BigRational, decimals: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), decimals as usize);
    let (num, den): (BigInt, BigInt) = (x.numer().abs() * &scale, x.denom().clone());
    // floor(num/den + 1/2)
    let q: BigInt = (num * 2u32 + &den).div_floor(&(den * 2u32));
    let digits = q.to_string();
    let digits = format!("{digits:0>width$}", width = decimals as usize + 1);
    let (int, frac) = digits.split_at(digits.len() - decimals as usize);
    let sign = if x.is_negative() && !q.is_zero() {
        "-"
    } else {
        ""
    };
    if decimals == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Parses a plain decimal literal such as `-0.00319` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a decimal number: `{s}`"));
    let (negative, body) = match s.trim().strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.trim()),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let all = format!("{int}{frac}");
    if !all.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mantissa: BigUint = all.parse().map_err(|_| bad())?;
    let value = ratio(mantissa, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn theta_small_values() {
        assert_eq!(theta_exact(2).unwrap(), q(2, 1));
        assert_eq!(theta_exact(3).unwrap(), q(10, 9));
        assert_eq!(theta_exact(4).unwrap(), q(208, 441));
        assert_eq!(theta_exact(5).unwrap(), q(21824, 99225));
        assert!(matches!(theta_exact(1), Err(Error::UnsupportedB(1))));
    }

    #[test]
    fn residue_pieces() {
        assert_eq!(denominator_derivative_at_half(2).unwrap(), q(-3, 16));
        assert_eq!(denominator_derivative_at_half(3).unwrap(), q(-189, 2048));
        for b in 2..=16 {
            assert!(denominator_derivative_at_half(b).unwrap().is_negative());
        }
        assert_eq!(numerator_hat_at_half(1).unwrap(), q(1, 2));
        assert_eq!(numerator_hat_at_half(2).unwrap(), q(3, 16));
        assert_eq!(numerator_hat_at_half(3).unwrap(), q(21, 256));
        assert_eq!(numerator_bar_at_half(1).unwrap(), q(1, 1));
        assert_eq!(numerator_bar_at_half(2).unwrap(), q(1, 1));
        assert_eq!(numerator_bar_at_half(3).unwrap(), q(5, 8));
    }

    #[test]
    fn both_routes_agree() {
        for b in 2..=16 {
            assert_eq!(
                theta_from_parts(b).unwrap(),
                theta_exact(b).unwrap(),
                "b={b}"
            );
        }
    }

    #[test]
    fn limit_constant_converges_from_below() {
        assert_eq!(limit_constant(1).unwrap(), q(2, 1));
        let bound = parse_decimal("3.4627466196").unwrap();
        let mut prev = BigRational::zero();
        for t in 1..=64 {
            let p = limit_constant(t).unwrap();
            assert!(p > prev && p < bound);
            prev = p;
        }
        assert_eq!(to_decimal(&prev, 10), "3.4627466195");
        assert_eq!(limit_constant_digits(10), "3462746619");
        assert!(limit_constant(0).is_err());
    }

    #[test]
    fn convergence_at_sixty() {
        let report = convergence_report(3, 60).unwrap();
        assert!(report.relative_error < q(1, 1_000_000));
        assert!(convergence_report(3, 2).is_err());
        assert_eq!(convergence_report(2, 2).unwrap().estimate_error, q(27, 100));
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&q(10, 9), 5), "1.11111");
        assert_eq!(to_decimal(&q(2, 1), 1), "2.0");
        assert_eq!(to_decimal(&q(173, 100), 1), "1.7");
        assert_eq!(to_decimal(&q(27, 100), 1), "0.3");
        assert_eq!(to_decimal(&q(1, 8), 2), "0.13");
        assert_eq!(to_decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(to_decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&q(7, 2), 0), "4");
        assert_eq!(to_decimal(&q(1, 200000), 5), "0.00001");
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.00319").unwrap(), q(319, 100000));
        assert_eq!(parse_decimal("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_decimal(".5").unwrap(), q(1, 2));
        for bad in ["", ".", "1.2.3", "x", "1e5"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }
}
