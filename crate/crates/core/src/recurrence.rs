//! Exact counting by memoized recurrences.
//!
//! * `g_b(n)`: supporting towers of `n` dominoes whose top row has `b - 1`.
//! * `h_b(n)`: domino stacks, `n` dominoes on a base of `b`.
//! * `r_b(n)`: right-skewed towers, `n` dominoes on a base of `b`.
//! * `c_b(n)`: convex towers whose widest row has `b` dominoes, obtained by
//!   convolving `g_b + 1` with `2 r_b + h_b`.
//!
//! Tables are filled bottom-up in increasing `n`, so arbitrarily large `n`
//! never recurses. [`BlockCounts`] carries the same three families for blocks
//! of length `k`; it is a separate code path from [`Counts`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G,
    H,
    R,
    C,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::G, Family::H, Family::R, Family::C];

    pub fn name(self) -> &'static str {
        match self {
            Family::G => "g",
            Family::H => "h",
            Family::R => "r",
            Family::C => "c",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// `cols[b][n]`, grown on demand.
#[derive(Debug, Default, Clone)]
struct Grid {
    cols: Vec<Vec<BigUint>>,
}

impl Grid {
    fn at(&self, b: i64, n: i64) -> Option<&BigUint> {
        if b < 0 || n < 0 {
            return None;
        }
        let v = &self.cols[b as usize][n as usize];
        (!v.is_zero()).then_some(v)
    }

    fn value(&self, b: i64, n: i64) -> BigUint {
        self.at(b, n).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy)]
enum Rule {
    Domino,
    Block(u32),
}

#[derive(Debug, Clone)]
struct Tables {
    rule: Rule,
    g: Grid,
    h: Grid,
    r: Grid,
    width: usize,
    len: usize,
}

impl Tables {
    fn new(rule: Rule) -> Self {
        Tables {
            rule,
            g: Grid::default(),
            h: Grid::default(),
            r: Grid::default(),
            width: 0,
            len: 0,
        }
    }

    /// Makes every entry with `b' <= b` and `n' <= n` available.
    fn ensure(&mut self, b: u32, n: u32) {
        let width = self.width.max(b as usize + 1);
        let len = self.len.max(n as usize + 1);
        if width == self.width && len == self.len {
            return;
        }
        for grid in [&mut self.g, &mut self.h, &mut self.r] {
            grid.cols.resize_with(width, Vec::new);
        }
        for col in 0..width {
            let b = col as i64;
            for family in [Family::G, Family::H, Family::R] {
                let filled = self.grid(family).cols[col].len();
                for n in filled..len {
                    let v = self.entry(family, b, n as i64);
                    self.grid_mut(family).cols[col].push(v);
                }
            }
        }
        self.width = width;
        self.len = len;
    }

    fn grid(&self, family: Family) -> &Grid {
        match family {
            Family::G => &self.g,
            Family::H => &self.h,
            Family::R => &self.r,
            Family::C => unreachable!("c is not tabulated"),
        }
    }

    fn grid_mut(&mut self, family: Family) -> &mut Grid {
        match family {
            Family::G => &mut self.g,
            Family::H => &mut self.h,
            Family::R => &mut self.r,
            Family::C => unreachable!("c is not tabulated"),
        }
    }

    fn entry(&self, family: Family, b: i64, n: i64) -> BigUint {
        match (self.rule, family) {
            (Rule::Domino, Family::G) => self.domino_g(b, n),
            (Rule::Domino, Family::H) => self.domino_h(b, n),
            (Rule::Domino, Family::R) => self.domino_r(b, n),
            (Rule::Block(k), Family::G) => self.block_g(k, b, n),
            (Rule::Block(k), Family::H) => self.block_h(k, b, n),
            (Rule::Block(k), Family::R) => self.block_r(k, b, n),
            (_, Family::C) => unreachable!("c is not tabulated"),
        }
    }

    // g_b(n) = g_b(n-b+1) + g_{b-1}(n-b+1); g_b(b-1) = 1 for b >= 2.
    fn domino_g(&self, b: i64, n: i64) -> BigUint {
        if b < 2 || n < 1 || n < b - 1 {
            return BigUint::zero();
        }
        if n == b - 1 {
            return BigUint::one();
        }
        let m = n - b + 1;
        self.g.value(b, m) + self.g.value(b - 1, m)
    }

    // h_b(n) = sum_{i=1}^{b} (2(b-i)+1) h_i(n-b); h_b(b) = 1.
    fn domino_h(&self, b: i64, n: i64) -> BigUint {
        if b < 1 || n < b {
            return BigUint::zero();
        }
        if n == b {
            return BigUint::one();
        }
        let mut sum = BigUint::zero();
        for i in 1..=b {
            if let Some(v) = self.h.at(i, n - b) {
                sum += v * BigUint::from((2 * (b - i) + 1) as u64);
            }
        }
        sum
    }

    // r_b(n) = sum_{i=1}^{b} (2 r_i(n-b) + h_i(n-b)); r_b(b+1) = 1.
    fn domino_r(&self, b: i64, n: i64) -> BigUint {
        if b < 1 || n < 2 || n < b + 1 {
            return BigUint::zero();
        }
        if n == b + 1 {
            return BigUint::one();
        }
        let mut sum = BigUint::zero();
        for i in 1..=b {
            if let Some(v) = self.r.at(i, n - b) {
                sum += v << 1;
            }
            if let Some(v) = self.h.at(i, n - b) {
                sum += v;
            }
        }
        sum
    }

    fn block_g(&self, k: u32, b: i64, n: i64) -> BigUint {
        if b < 2 || n < 1 || n < b - 1 {
            return BigUint::zero();
        }
        if n == b - 1 {
            return BigUint::one();
        }
        let m = n - b + 1;
        self.g.value(b, m) + self.g.value(b - 1, m) * BigUint::from(k - 1)
    }

    fn block_h(&self, k: u32, b: i64, n: i64) -> BigUint {
        if b < 1 || n < b {
            return BigUint::zero();
        }
        if n == b {
            return BigUint::one();
        }
        (1..=b)
            .filter_map(|i| {
                self.h
                    .at(i, n - b)
                    .map(|v| v * BigUint::from(k as u64 * (b - i) as u64 + 1))
            })
            .sum()
    }

    // No imposed value at n = b + 1: the recurrence itself yields k - 1 there
    // (a single block overhanging the base's right end by 1..k-1 cells).
    fn block_r(&self, k: u32, b: i64, n: i64) -> BigUint {
        if b < 1 || n < b + 1 {
            return BigUint::zero();
        }
        let (kk, k1) = (BigUint::from(k), BigUint::from(k - 1));
        let mut sum = BigUint::zero();
        for i in 1..=b {
            if let Some(v) = self.r.at(i, n - b) {
                sum += v * &kk;
            }
            if let Some(v) = self.h.at(i, n - b) {
                sum += v * &k1;
            }
        }
        sum
    }

    fn get(&mut self, family: Family, b: u32, n: u32) -> BigUint {
        self.ensure(b, n);
        self.grid(family).value(b as i64, n as i64)
    }
}

/// Domino (k = 2) counts for all four families.
#[derive(Debug, Clone)]
pub struct Counts {
    tables: Tables,
}

impl Default for Counts {
    fn default() -> Self {
        Self::new()
    }
}

impl Counts {
    pub fn new() -> Self {
        Counts {
            tables: Tables::new(Rule::Domino),
        }
    }

    pub fn g(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::G, b, n)
    }

    pub fn h(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::H, b, n)
    }

    pub fn r(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::R, b, n)
    }

    /// `sum_{m=0}^{n} (g_b(m) + [m = 0]) (2 r_b(n-m) + h_b(n-m))`.
    pub fn c(&mut self, b: u32, n: u32) -> BigUint {
        if b == 0 {
            return BigUint::zero();
        }
        self.tables.ensure(b, n);
        let t = &self.tables;
        let (b, n) = (b as i64, n as i64);
        let mut total = BigUint::zero();
        for m in 0..=n {
            let mut lower = t.g.value(b, m);
            if m == 0 {
                lower += 1u32;
            }
            if lower.is_zero() {
                continue;
            }
            let upper = (t.r.value(b, n - m) << 1) + t.h.value(b, n - m);
            total += lower * upper;
        }
        total
    }

    pub fn get(&mut self, family: Family, b: u32, n: u32) -> BigUint {
        match family {
            Family::C => self.c(b, n),
            other => self.tables.get(other, b, n),
        }
    }

    /// Largest `(b, n)` for which g, h and r are already tabulated.
    pub fn frontier(&self) -> Option<(u32, u32)> {
        (self.tables.width > 0).then(|| (self.tables.width as u32 - 1, self.tables.len as u32 - 1))
    }

    pub fn table(&mut self, family: Family, max_n: u32, max_b: u32) -> Result<CountTable> {
        check_bounds(max_n, max_b)?;
        self.tables.ensure(max_b, max_n);
        let rows = (1..=max_n)
            .map(|n| (1..=max_b).map(|b| self.get(family, b, n)).collect())
            .collect();
        Ok(CountTable {
            family,
            k: 2,
            max_n,
            max_b,
            rows,
        })
    }
}

/// g, h and r for blocks of length `k >= 2`.
///
/// Only the k = 2 base cases are known; they are reused for every k (see
/// [`Tables::block_r`] for the one place where the recurrence already
/// determines the initial value).
#[derive(Debug, Clone)]
pub struct BlockCounts {
    k: u32,
    tables: Tables,
}

impl BlockCounts {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::UnsupportedK(k));
        }
        Ok(BlockCounts {
            k,
            tables: Tables::new(Rule::Block(k)),
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn g(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::G, b, n)
    }

    pub fn h(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::H, b, n)
    }

    pub fn r(&mut self, b: u32, n: u32) -> BigUint {
        self.tables.get(Family::R, b, n)
    }

    pub fn get(&mut self, family: Family, b: u32, n: u32) -> Result<BigUint> {
        match family {
            Family::C => Err(Error::InvalidArgument(format!(
                "no convex count is defined for blocks of length k = {}",
                self.k
            ))),
            other => Ok(self.tables.get(other, b, n)),
        }
    }

    pub fn table(&mut self, family: Family, max_n: u32, max_b: u32) -> Result<CountTable> {
        check_bounds(max_n, max_b)?;
        let mut rows = Vec::with_capacity(max_n as usize);
        for n in 1..=max_n {
            rows.push(
                (1..=max_b)
                    .map(|b| self.get(family, b, n))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(CountTable {
            family,
            k: self.k,
            max_n,
            max_b,
            rows,
        })
    }
}

fn check_bounds(max_n: u32, max_b: u32) -> Result<()> {
    if max_n == 0 || max_b == 0 {
        return Err(Error::InvalidArgument(format!(
            "table bounds must be positive (max_n = {max_n}, max_b = {max_b})"
        )));
    }
    Ok(())
}

/// Counts for one family and any block length.
pub fn count(family: Family, k: u32, b: u32, n: u32) -> Result<BigUint> {
    match k {
        2 => Ok(Counts::new().get(family, b, n)),
        _ => BlockCounts::new(k)?.get(family, b, n),
    }
}

/// Dense slice `1 <= n <= max_n`, `1 <= b <= max_b` of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub family: Family,
    pub k: u32,
    pub max_n: u32,
    pub max_b: u32,
    /// `rows[n - 1][b - 1]`.
    pub rows: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn get(&self, n: u32, b: u32) -> Option<&BigUint> {
        self.rows
            .get((n as usize).checked_sub(1)?)?
            .get((b as usize).checked_sub(1)?)
    }

    /// Sum of each row over the columns present in the slice.
    pub fn row_totals(&self) -> Vec<BigUint> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }
}
