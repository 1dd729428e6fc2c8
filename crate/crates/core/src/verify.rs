//! Exhaustive enumeration checked against the recurrences and known counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::enumerate::{par_fold, BaseSelector, EnumerationRequest};
use crate::error::Result;
use crate::model::{buildable_by_placement, TowerClass, TowerShape};
use crate::recurrence::Counts;

/// Mismatches kept per check; the rest are only counted.
pub const MISMATCH_LIMIT: usize = 10;

/// Everything observed about the towers of one size.
#[derive(Debug, Default)]
struct Tally {
    total: u64,
    by_base: BTreeMap<u32, u64>,
    convex_by_widest: BTreeMap<u32, u64>,
    stacks: BTreeMap<u32, u64>,
    right: BTreeMap<u32, u64>,
    left: BTreeMap<u32, u64>,
    /// Supporting towers keyed by top row + 1.
    supporting: BTreeMap<u32, u64>,
    /// `(widest row, lower size, upper class)`.
    pieces: BTreeMap<(u32, u32, TowerClass), u64>,
    unbuildable: Vec<String>,
    round_trip_failures: Vec<String>,
    round_trips: u64,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, u64>, key: K) {
    *map.entry(key).or_default() += 1;
}

fn merge_maps<K: Ord>(into: &mut BTreeMap<K, u64>, from: BTreeMap<K, u64>) {
    for (k, v) in from {
        *into.entry(k).or_default() += v;
    }
}

impl Tally {
    fn observe(&mut self, shape: TowerShape) {
        self.total += 1;
        bump(&mut self.by_base, shape.base_b());
        if !buildable_by_placement(shape.dominoes()) {
            self.unbuildable.push(shape.to_string());
        }
        let class = shape.classify();
        match class {
            TowerClass::Stack => bump(&mut self.stacks, shape.base_b()),
            TowerClass::RightSkewed => bump(&mut self.right, shape.base_b()),
            TowerClass::LeftSkewed => bump(&mut self.left, shape.base_b()),
            _ => {}
        }
        if shape.is_supporting() {
            bump(&mut self.supporting, shape.top_b() + 1);
        }
        if !class.is_convex() {
            return;
        }
        let widest = shape.max_row_b();
        bump(&mut self.convex_by_widest, widest);
        self.round_trips += 1;
        match shape.dissect() {
            Ok(d) => {
                let lower = d.lower.as_ref().map_or(0, TowerShape::n);
                bump(&mut self.pieces, (widest, lower, d.upper.classify()));
                match d.recombine() {
                    Ok(back) if back == shape => {}
                    Ok(back) => self
                        .round_trip_failures
                        .push(format!("{shape} came back as {back}")),
                    Err(e) => self.round_trip_failures.push(format!("{shape}: {e}")),
                }
            }
            Err(e) => self.round_trip_failures.push(format!("{shape}: {e}")),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.round_trips += other.round_trips;
        merge_maps(&mut self.by_base, other.by_base);
        merge_maps(&mut self.convex_by_widest, other.convex_by_widest);
        merge_maps(&mut self.stacks, other.stacks);
        merge_maps(&mut self.right, other.right);
        merge_maps(&mut self.left, other.left);
        merge_maps(&mut self.supporting, other.supporting);
        merge_maps(&mut self.pieces, other.pieces);
        self.unbuildable.extend(other.unbuildable);
        self.round_trip_failures.extend(other.round_trip_failures);
        self
    }
}

/// Result of one named check across all sizes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub comparisons: u64,
    pub mismatch_count: u64,
    /// At most [`MISMATCH_LIMIT`] descriptions, in discovery order.
    pub mismatches: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }

    fn compare(&mut self, what: impl FnOnce() -> String, observed: &BigUint, expected: &BigUint) {
        self.comparisons += 1;
        if observed != expected {
            self.fail(format!(
                "{}: enumerated {observed}, expected {expected}",
                what()
            ));
        }
    }

    fn fail(&mut self, message: String) {
        self.mismatch_count += 1;
        if self.mismatches.len() < MISMATCH_LIMIT {
            self.mismatches.push(message);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub max_n: u32,
    /// Towers enumerated per size.
    pub shapes: Vec<(u32, u64)>,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    /// The first [`MISMATCH_LIMIT`] mismatches over all checks.
    pub fn first_mismatches(&self) -> Vec<String> {
        self.checks
            .iter()
            .flat_map(|c| c.mismatches.iter().map(move |m| format!("{}: {m}", c.name)))
            .take(MISMATCH_LIMIT)
            .collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, count) in &self.shapes {
            writeln!(f, "n={n}: {count} towers enumerated")?;
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {} ({} comparisons", c.name, c.comparisons)?;
            if !c.passed() {
                write!(f, ", {} mismatches", c.mismatch_count)?;
            }
            writeln!(f, ")")?;
        }
        let first = self.first_mismatches();
        if !first.is_empty() {
            writeln!(f, "first mismatches:")?;
            for m in first {
                writeln!(f, "  {m}")?;
            }
        }
        Ok(())
    }
}

fn observed<K: Ord>(map: &BTreeMap<K, u64>, key: &K) -> BigUint {
    BigUint::from(map.get(key).copied().unwrap_or(0))
}

fn four_pow(e: u32) -> BigUint {
    BigUint::one() << (2 * e)
}

/// Enumerates every tower of size `1..=max_n` (each size at most `cap`) and
/// compares the census against the recurrences and closed counts.
pub fn verify(max_n: u32, cap: u32) -> Result<VerifyReport> {
    let mut counts = Counts::new();
    let mut total = CheckOutcome::new("total towers = 4^(n-1)");
    let mut binomial = CheckOutcome::new("towers on base b = C(2n-1, n-b)");
    let mut placement = CheckOutcome::new("every tower buildable by placement");
    let mut convex = CheckOutcome::new("convex towers by widest row = c");
    let mut stacks = CheckOutcome::new("stacks by base = h");
    let mut right = CheckOutcome::new("right-skewed by base = r");
    let mut left = CheckOutcome::new("left-skewed by base = r");
    let mut supporting = CheckOutcome::new("supporting towers by top row + 1 = g");
    let mut round_trip = CheckOutcome::new("dissect then recombine is the identity");
    let mut convolution = CheckOutcome::new("dissection pieces = (g + [m=0]) x (h, r, r)");
    let mut shapes = Vec::new();

    for n in 1..=max_n {
        let req = EnumerationRequest::new(n, BaseSelector::All).cap(cap);
        let tally = par_fold(&req, Tally::default, Tally::observe, Tally::merge)?;
        shapes.push((n, tally.total));

        total.compare(
            || format!("n={n}"),
            &BigUint::from(tally.total),
            &four_pow(n - 1),
        );
        placement.comparisons += tally.total;
        for s in &tally.unbuildable {
            placement.fail(format!("n={n}: {s}"));
        }
        round_trip.comparisons += tally.round_trips;
        for s in &tally.round_trip_failures {
            round_trip.fail(format!("n={n}: {s}"));
        }

        for b in 1..=n {
            let choose = num_integer::binomial(BigUint::from(2 * n - 1), BigUint::from(n - b));
            let at = || format!("n={n} b={b}");
            binomial.compare(at, &observed(&tally.by_base, &b), &choose);
            convex.compare(at, &observed(&tally.convex_by_widest, &b), &counts.c(b, n));
            stacks.compare(at, &observed(&tally.stacks, &b), &counts.h(b, n));
            right.compare(at, &observed(&tally.right, &b), &counts.r(b, n));
            left.compare(at, &observed(&tally.left, &b), &counts.r(b, n));
        }
        for b in 2..=n + 1 {
            let at = || format!("n={n} b={b}");
            supporting.compare(at, &observed(&tally.supporting, &b), &counts.g(b, n));
        }

        for b in 1..=n {
            for m in 0..=n {
                let mut lower = counts.g(b, m);
                if m == 0 {
                    lower += 1u32;
                }
                let rest = n - m;
                let expected = [
                    (TowerClass::Stack, counts.h(b, rest)),
                    (TowerClass::RightSkewed, counts.r(b, rest)),
                    (TowerClass::LeftSkewed, counts.r(b, rest)),
                ];
                for (class, upper) in expected {
                    let want = &lower * upper;
                    let got = observed(&tally.pieces, &(b, m, class));
                    convolution.compare(
                        || format!("n={n} b={b} lower={m} upper={class}"),
                        &got,
                        &want,
                    );
                }
            }
        }
        for (&(b, m, class), &count) in &tally.pieces {
            if !matches!(
                class,
                TowerClass::Stack | TowerClass::RightSkewed | TowerClass::LeftSkewed
            ) {
                convolution.comparisons += 1;
                convolution.fail(format!(
                    "n={n} b={b} lower={m}: {count} upper parts classified {class}"
                ));
            }
        }
    }

    let checks = vec![
        total,
        binomial,
        placement,
        convex,
        stacks,
        right,
        left,
        supporting,
        round_trip,
        convolution,
    ];
    debug_assert!(checks
        .iter()
        .all(|c| c.mismatch_count > 0 || c.mismatches.is_empty()));
    Ok(VerifyReport {
        max_n,
        shapes,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    use crate::enumerate::DEFAULT_CAP;

    #[test]
    fn small_sizes_pass() {
        let report = verify(6, DEFAULT_CAP).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.shapes.last(), Some(&(6, 1024)));
        assert!(report.first_mismatches().is_empty());
        assert!(report.to_string().contains("PASS stacks by base = h"));
    }

    #[test]
    fn single_domino() {
        let report = verify(1, DEFAULT_CAP).unwrap();
        assert!(report.passed());
        assert_eq!(report.shapes, vec![(1, 1)]);
    }

    #[test]
    fn respects_the_cap() {
        assert!(verify(5, 4).is_err());
    }

    #[test]
    fn mismatches_are_truncated() {
        let mut c = CheckOutcome::new("x");
        for i in 0..25u32 {
            c.compare(|| i.to_string(), &BigUint::from(i), &BigUint::zero());
        }
        assert_eq!(
            (c.comparisons, c.mismatch_count, c.mismatches.len()),
            (25, 24, MISMATCH_LIMIT)
        );
    }
}
