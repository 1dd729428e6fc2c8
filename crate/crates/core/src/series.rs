//! Truncated power series with exact integer coefficients.
//!
//! Generating functions for g, h, r and c are built two ways. The closed
//! forms multiply expanded geometric factors; the functional equations
//! instead divide by `1 - λx^a` in place. Every denominator involved is such
//! a factor, so no general division is needed.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 64;
pub const MAX_ORDER: usize = 4096;
/// Largest base for which subset sums are expanded.
pub const MAX_CLOSED_FORM_B: u32 = 12;

/// Coefficients of `x^0..=x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `coeff * x^exp`, dropped if `exp > order`.
    pub fn monomial(order: usize, exp: usize, coeff: BigInt) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// The order is `coeffs.len() - 1`; an empty vector is rejected.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficients as naturals, or `None` if any is negative.
    pub fn to_naturals(&self) -> Option<Vec<BigUint>> {
        self.coeffs.iter().map(|c| c.to_biguint()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.coeffs.iter().any(Signed::is_negative)
    }

    /// Drops terms above `order`; never raises the order.
    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self * x^a / (1 - λx^a)` by the recurrence `y[n] = s[n-a] + λ y[n-a]`.
    pub fn divide_geometric(&self, f: GeometricFactor) -> Self {
        let a = f.exponent() as usize;
        let lambda = BigInt::from(f.lambda());
        let mut out = Self::zero(self.order());
        for n in a..=self.order() {
            let carried = &out.coeffs[n - a] * &lambda;
            out.coeffs[n] = &self.coeffs[n - a] + carried;
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (wrote, sign) {
                (false, "-") => f.write_str("-")?,
                (false, _) => {}
                (true, s) => write!(f, " {s} ")?,
            }
            let mag = c.abs();
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{n}")?,
                (_, false) => write!(f, "{mag}x^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

pub fn series_add(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> TruncatedSeries {
    TruncatedSeries {
        coeffs: lhs
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect(),
    }
}

pub fn series_mul(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> TruncatedSeries {
    let order = lhs.order().min(rhs.order());
    let mut out = TruncatedSeries::zero(order);
    for (i, a) in lhs.coeffs[..=order]
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
    {
        for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
            if !b.is_zero() {
                out.coeffs[i + j] += a * b;
            }
        }
    }
    out
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        series_add(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}

/// `x^a / (1 - λx^a)` with `a >= 1` and `λ` in `{1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometricFactor {
    a: u32,
    lambda: u32,
}

impl GeometricFactor {
    pub fn new(a: u32, lambda: u32) -> Result<Self> {
        if a == 0 || !(1..=2).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "geometric factor needs a >= 1 and lambda in {{1, 2}} (got a = {a}, lambda = {lambda})"
            )));
        }
        Ok(GeometricFactor { a, lambda })
    }

    fn unit(a: u32) -> Self {
        GeometricFactor { a, lambda: 1 }
    }

    fn doubled(a: u32) -> Self {
        GeometricFactor { a, lambda: 2 }
    }

    pub fn exponent(self) -> u32 {
        self.a
    }

    pub fn lambda(self) -> u32 {
        self.lambda
    }
}

/// `λ^(j-1)` at `x^(a j)` for every `a j <= order`.
pub fn expand_geometric(f: GeometricFactor, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    let lambda = BigInt::from(f.lambda);
    let mut c = BigInt::one();
    for n in (f.a as usize..=order).step_by(f.a as usize) {
        out.coeffs[n] = c.clone();
        c *= &lambda;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    ClosedForm,
    #[default]
    Functional,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Functional => "functional",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "closed-form" | "closed" => Ok(Method::ClosedForm),
            "functional" => Ok(Method::Functional),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

fn check(b: u32, order: usize) -> Result<()> {
    if b == 0 {
        return Err(Error::InvalidArgument("b must be at least 1".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds the maximum of {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn check_closed_form(b: u32, order: usize) -> Result<()> {
    check(b, order)?;
    if b > MAX_CLOSED_FORM_B {
        return Err(Error::SubsetBlowup(b));
    }
    Ok(())
}

/// `sum_{i=1}^{b-1} prod_{j=1}^{i} x^(b-j) / (1 - x^(b-j))`.
pub fn build_g(b: u32, order: usize) -> Result<TruncatedSeries> {
    check(b, order)?;
    let mut sum = TruncatedSeries::zero(order);
    let mut prod = TruncatedSeries::one(order);
    for j in 1..b {
        prod = &prod * &expand_geometric(GeometricFactor::unit(b - j), order);
        sum = &sum + &prod;
    }
    Ok(sum)
}

pub fn build_h(b: u32, order: usize, method: Method) -> Result<TruncatedSeries> {
    match method {
        Method::ClosedForm => {
            check_closed_form(b, order)?;
            Ok(h_closed(b, order))
        }
        Method::Functional => {
            check(b, order)?;
            Ok(h_functional(b, order).pop().expect("b >= 1"))
        }
    }
}

pub fn build_r(b: u32, order: usize, method: Method) -> Result<TruncatedSeries> {
    match method {
        Method::ClosedForm => {
            check_closed_form(b, order)?;
            Ok(r_closed(b, order))
        }
        Method::Functional => {
            check(b, order)?;
            Ok(r_functional(b, order).pop().expect("b >= 1"))
        }
    }
}

/// `(G_b + 1)(2 R_b + H_b)`.
pub fn build_c(b: u32, order: usize) -> Result<TruncatedSeries> {
    check(b, order)?;
    let g = &build_g(b, order)? + &TruncatedSeries::one(order);
    let h = h_functional(b, order);
    let r = r_functional_from(&h, order);
    let upper = &r[b as usize - 1].scale(&BigInt::from(2)) + &h[b as usize - 1];
    Ok(&g * &upper)
}

/// Elements of `{lo..hi}` picked by the bits of `mask`, ascending.
fn subset(lo: u32, hi: u32, mask: u32) -> impl Iterator<Item = u32> {
    (lo..hi).filter(move |k| mask & (1 << (k - lo)) != 0)
}

/// `x^b/(1-x^b) sum_S prod_j (2(k_{j+1}-k_j)+1) x^{k_j}/(1-x^{k_j})`,
/// over `S = {k_1 < ... < k_m}` in `{1..b-1}` with `k_{m+1} = b`.
fn h_closed(b: u32, order: usize) -> TruncatedSeries {
    let mut sum = TruncatedSeries::zero(order);
    for mask in 0..1u32 << (b - 1) {
        let mut ks: Vec<u32> = subset(1, b, mask).collect();
        ks.push(b);
        let mut term = TruncatedSeries::one(order);
        for w in ks.windows(2) {
            let weight = BigInt::from(2 * (w[1] - w[0]) + 1);
            term = &term * &expand_geometric(GeometricFactor::unit(w[0]), order).scale(&weight);
        }
        sum = &sum + &term;
    }
    &expand_geometric(GeometricFactor::unit(b), order) * &sum
}

/// `x^b/(1-2x^b) sum_{j=1}^{b} H_j sum_{S in {j..b-1}} prod_{k in S} 2x^k/(1-2x^k)`.
fn r_closed(b: u32, order: usize) -> TruncatedSeries {
    let mut sum = TruncatedSeries::zero(order);
    for j in 1..=b {
        let mut subsets = TruncatedSeries::zero(order);
        for mask in 0..1u32 << (b - j) {
            let mut term = TruncatedSeries::one(order);
            for k in subset(j, b, mask) {
                term = &term
                    * &expand_geometric(GeometricFactor::doubled(k), order).scale(&BigInt::from(2));
            }
            subsets = &subsets + &term;
        }
        sum = &sum + &(&h_closed(j, order) * &subsets);
    }
    &expand_geometric(GeometricFactor::doubled(b), order) * &sum
}

/// `H_1..=H_b` from `H_i = x^i/(1-x^i) (sum_{l<i} (2(i-l)+1) H_l + 1)`.
fn h_functional(b: u32, order: usize) -> Vec<TruncatedSeries> {
    let mut hs: Vec<TruncatedSeries> = Vec::with_capacity(b as usize);
    for i in 1..=b {
        let mut inner = TruncatedSeries::one(order);
        for (l, h) in (1..).zip(&hs) {
            inner = &inner + &h.scale(&BigInt::from(2 * (i - l) + 1));
        }
        hs.push(inner.divide_geometric(GeometricFactor::unit(i)));
    }
    hs
}

fn r_functional(b: u32, order: usize) -> Vec<TruncatedSeries> {
    r_functional_from(&h_functional(b, order), order)
}

/// `R_i = x^i/(1-2x^i) (sum_{l<i} (2 R_l + H_l) + H_i)` for every `H_i` given.
fn r_functional_from(hs: &[TruncatedSeries], order: usize) -> Vec<TruncatedSeries> {
    let two = BigInt::from(2);
    let mut rs: Vec<TruncatedSeries> = Vec::with_capacity(hs.len());
    for (i, h) in (1..).zip(hs) {
        let mut inner = h.clone();
        for (r, h_lower) in rs.iter().zip(hs) {
            inner = &inner + &(&r.scale(&two) + h_lower);
        }
        rs.push(inner.divide_geometric(GeometricFactor::doubled(i)));
    }
    debug_assert!(rs.iter().all(|r| r.order() == order));
    rs
}
