//! Exhaustive generation of domino towers.
//!
//! Towers are built level by level: each level is a non-empty set of
//! pairwise non-overlapping dominoes, every one of which has an occupied cell
//! directly beneath it. Choosing whole levels rather than single dominoes
//! means every tower is produced exactly once, with no deduplication pass.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{TowerClass, TowerShape};

pub const DEFAULT_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSelector {
    Fixed(u32),
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupBy {
    Base,
    MaxRow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    Class(TowerClass),
    Convex,
}

impl ClassFilter {
    pub fn accepts(self, class: TowerClass) -> bool {
        match self {
            ClassFilter::Class(c) => c == class,
            ClassFilter::Convex => class.is_convex(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub n: u32,
    pub base: BaseSelector,
    pub class_filter: Option<ClassFilter>,
    pub group_by: GroupBy,
    pub cap: u32,
}

impl EnumerationRequest {
    pub fn new(n: u32, base: BaseSelector) -> Self {
        EnumerationRequest {
            n,
            base,
            class_filter: None,
            group_by: GroupBy::Base,
            cap: DEFAULT_CAP,
        }
    }

    pub fn filter(mut self, filter: ClassFilter) -> Self {
        self.class_filter = Some(filter);
        self
    }

    pub fn group_by(mut self, group_by: GroupBy) -> Self {
        self.group_by = group_by;
        self
    }

    pub fn cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    fn check(&self) -> Result<()> {
        if self.n > self.cap {
            return Err(Error::CapExceeded {
                n: self.n,
                cap: self.cap,
            });
        }
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "a tower needs at least one domino".into(),
            ));
        }
        if let BaseSelector::Fixed(b) = self.base {
            if b == 0 || b > self.n {
                return Err(Error::InvalidArgument(format!(
                    "base b = {b} must satisfy 1 <= b <= n = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    fn seeds(&self) -> Vec<Vec<Vec<i32>>> {
        let bases = match self.base {
            BaseSelector::Fixed(b) => b..=b,
            BaseSelector::All => 1..=self.n,
        };
        bases
            .map(|b| vec![(0..b as i32).map(|i| 2 * i).collect()])
            .collect()
    }
}

/// Every way to place a non-empty level of at most `budget` dominoes on top of
/// the level whose domino columns are `below` (sorted), in lexicographic order.
fn level_choices(below: &[i32], budget: u32) -> Vec<Vec<i32>> {
    let lo = below[0] - 1;
    let hi = below[below.len() - 1] + 1;
    // A domino at x is supported iff some domino below sits at x-1, x or x+1.
    let candidates: Vec<i32> = (lo..=hi)
        .filter(|&x| {
            below.binary_search(&(x - 1)).is_ok()
                || below.binary_search(&x).is_ok()
                || below.binary_search(&(x + 1)).is_ok()
        })
        .collect();

    fn extend(
        candidates: &[i32],
        from: usize,
        budget: u32,
        current: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
    ) {
        for i in from..candidates.len() {
            let x = candidates[i];
            if current.last().is_some_and(|&last| x < last + 2) {
                continue;
            }
            current.push(x);
            out.push(current.clone());
            if budget > 1 {
                extend(candidates, i + 1, budget - 1, current, out);
            }
            current.pop();
        }
    }

    let mut out = Vec::new();
    extend(&candidates, 0, budget, &mut Vec::new(), &mut out);
    out
}

struct Frame {
    level: usize,
    budget: u32,
    choices: Vec<Vec<i32>>,
    next: usize,
}

/// Depth-first stream of towers completing a list of row prefixes.
pub struct Towers {
    n: u32,
    seeds: std::vec::IntoIter<Vec<Vec<i32>>>,
    rows: Vec<Vec<i32>>,
    frames: Vec<Frame>,
}

impl Towers {
    fn from_seeds(n: u32, seeds: Vec<Vec<Vec<i32>>>) -> Self {
        Towers {
            n,
            seeds: seeds.into_iter(),
            rows: Vec::new(),
            frames: Vec::new(),
        }
    }

    fn used(rows: &[Vec<i32>]) -> u32 {
        rows.iter().map(|r| r.len() as u32).sum()
    }
}

impl Iterator for Towers {
    type Item = TowerShape;

    fn next(&mut self) -> Option<TowerShape> {
        loop {
            let Some(frame) = self.frames.last_mut() else {
                let seed = self.seeds.next()?;
                let used = Self::used(&seed);
                self.rows = seed;
                if used == self.n {
                    return Some(TowerShape::from_rows_unchecked(&self.rows));
                }
                let level = self.rows.len();
                let budget = self.n - used;
                self.frames.push(Frame {
                    level,
                    budget,
                    choices: level_choices(&self.rows[level - 1], budget),
                    next: 0,
                });
                continue;
            };

            if frame.next == frame.choices.len() {
                self.frames.pop();
                continue;
            }
            let choice = frame.choices[frame.next].clone();
            frame.next += 1;
            let (level, remaining) = (frame.level, frame.budget - choice.len() as u32);
            self.rows.truncate(level);
            self.rows.push(choice);
            if remaining == 0 {
                return Some(TowerShape::from_rows_unchecked(&self.rows));
            }
            self.frames.push(Frame {
                level: level + 1,
                budget: remaining,
                choices: level_choices(&self.rows[level], remaining),
                next: 0,
            });
        }
    }
}

/// Streams every tower matching `req` exactly once, ordered by base width and
/// then lexicographically by `(level, x)`.
///
/// The class filter is applied to the stream; grouping only affects
/// [`census`].
pub fn enumerate(req: &EnumerationRequest) -> Result<impl Iterator<Item = TowerShape>> {
    req.check()?;
    let filter = req.class_filter;
    Ok(Towers::from_seeds(req.n, req.seeds())
        .filter(move |s| filter.is_none_or(|f| f.accepts(s.classify()))))
}

/// Splits the search below each seed one level deep so branches can be
/// enumerated independently.
fn branches(req: &EnumerationRequest) -> Vec<Vec<Vec<i32>>> {
    let mut out = Vec::new();
    for seed in req.seeds() {
        let used = Towers::used(&seed);
        if used == req.n {
            out.push(seed);
            continue;
        }
        for choice in level_choices(&seed[seed.len() - 1], req.n - used) {
            let mut prefix = seed.clone();
            prefix.push(choice);
            out.push(prefix);
        }
    }
    out
}

/// Counts of towers per `(group key, class)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassCensus {
    pub counts: BTreeMap<(u32, TowerClass), BigUint>,
    pub total: BigUint,
}

impl ClassCensus {
    pub fn get(&self, key: u32, class: TowerClass) -> BigUint {
        self.counts.get(&(key, class)).cloned().unwrap_or_default()
    }

    /// Totals per group key, summed over classes.
    pub fn by_group(&self) -> BTreeMap<u32, BigUint> {
        let mut out: BTreeMap<u32, BigUint> = BTreeMap::new();
        for ((key, _), count) in &self.counts {
            *out.entry(*key).or_default() += count;
        }
        out
    }

    /// Totals per group key for one class.
    pub fn class_by_group(&self, class: TowerClass) -> BTreeMap<u32, BigUint> {
        self.counts
            .iter()
            .filter(|((_, c), _)| *c == class)
            .map(|((key, _), count)| (*key, count.clone()))
            .collect()
    }
}

/// Folds every tower of the request (class filter applied) in parallel.
///
/// `fold` sees each tower exactly once in some branch-local accumulator;
/// `merge` must be associative and commutative for the result to be
/// independent of scheduling.
pub fn par_fold<A, I, F, M>(req: &EnumerationRequest, init: I, fold: F, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, TowerShape) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    req.check()?;
    let filter = req.class_filter;
    let n = req.n;
    Ok(branches(req)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            for shape in Towers::from_seeds(n, vec![prefix]) {
                if filter.is_none_or(|f| f.accepts(shape.classify())) {
                    fold(&mut acc, shape);
                }
            }
            acc
        })
        .reduce(&init, &merge))
}

/// Classifies every tower of the request and tallies the labels. Branches are
/// counted in parallel; the result does not depend on scheduling.
pub fn census(req: &EnumerationRequest) -> Result<ClassCensus> {
    let group_by = req.group_by;
    let merged = par_fold(
        req,
        BTreeMap::<(u32, TowerClass), u64>::new,
        |local, shape| {
            let key = match group_by {
                GroupBy::Base => shape.base_b(),
                GroupBy::MaxRow => shape.max_row_b(),
            };
            *local.entry((key, shape.classify())).or_default() += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    )?;

    let mut out = ClassCensus::default();
    for (key, count) in merged {
        out.total += count;
        out.counts.insert(key, BigUint::from(count));
    }
    Ok(out)
}

/// Counts partitions of `n` whose distinct parts form a run of consecutive
/// integers, keyed by largest part. Partitions are generated directly, not
/// derived from any tower recurrence.
pub fn gapfree_partition_census(n: u32) -> Result<BTreeMap<u32, BigUint>> {
    if !(1..=40).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "gap-free partition census needs 1 <= n <= 40, got {n}"
        )));
    }

    // Parts are generated in non-increasing order.
    fn walk(remaining: u32, max_part: u32, parts: &mut Vec<u32>, out: &mut BTreeMap<u32, u64>) {
        if remaining == 0 {
            let gap_free = parts.windows(2).all(|w| w[0] - w[1] <= 1);
            if gap_free {
                *out.entry(parts[0]).or_default() += 1;
            }
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            parts.push(part);
            walk(remaining - part, part, parts, out);
            parts.pop();
        }
    }

    let mut counts = BTreeMap::new();
    walk(n, n, &mut Vec::new(), &mut counts);
    Ok(counts
        .into_iter()
        .map(|(k, v)| (k, BigUint::from(v)))
        .collect())
}
