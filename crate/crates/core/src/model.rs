//! Grid model of domino towers.
//!
//! A domino at `(x, y)` covers the cells `(x, y)` and `(x + 1, y)`; `y` is the
//! level above the base row. Shapes are fixed polyominoes, so a [`TowerShape`]
//! is stored in canonical translation (leftmost cell at `x = 0`, base at
//! `y = 0`) with its dominoes sorted by `(y, x)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domino {
    /// Column of the left cell.
    pub x: i32,
    /// Level, counted from the base row.
    pub y: i32,
}

impl Domino {
    pub const fn new(x: i32, y: i32) -> Self {
        Domino { x, y }
    }

    pub fn cells(self) -> [(i32, i32); 2] {
        [(self.x, self.y), (self.x + 1, self.y)]
    }
}

impl Ord for Domino {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Domino {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Classification of a valid tower. Exactly one label applies to every shape;
/// see [`TowerShape::classify`] for the precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TowerClass {
    Stack,
    RightSkewed,
    LeftSkewed,
    Supporting,
    ConvexOther,
    NonConvex,
}

impl TowerClass {
    pub const ALL: [TowerClass; 6] = [
        TowerClass::Stack,
        TowerClass::RightSkewed,
        TowerClass::LeftSkewed,
        TowerClass::Supporting,
        TowerClass::ConvexOther,
        TowerClass::NonConvex,
    ];

    pub fn is_convex(self) -> bool {
        self != TowerClass::NonConvex
    }

    pub fn name(self) -> &'static str {
        match self {
            TowerClass::Stack => "stack",
            TowerClass::RightSkewed => "right-skewed",
            TowerClass::LeftSkewed => "left-skewed",
            TowerClass::Supporting => "supporting",
            TowerClass::ConvexOther => "convex-other",
            TowerClass::NonConvex => "non-convex",
        }
    }
}

impl fmt::Display for TowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TowerClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TowerClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tower class `{s}`")))
    }
}

/// Why a candidate domino set fails to be a tower.
fn check(candidate: &[Domino]) -> std::result::Result<(), String> {
    if candidate.is_empty() {
        return Err("no dominoes".into());
    }
    let mut cells = HashSet::with_capacity(candidate.len() * 2);
    for d in candidate {
        for cell in d.cells() {
            if !cells.insert(cell) {
                return Err(format!("cell {cell:?} is covered twice"));
            }
        }
    }
    let base_level = candidate.iter().map(|d| d.y).min().unwrap();
    let mut base: Vec<i32> = candidate
        .iter()
        .filter(|d| d.y == base_level)
        .map(|d| d.x)
        .collect();
    base.sort_unstable();
    if base.windows(2).any(|w| w[1] - w[0] != 2) {
        return Err("base row is not a contiguous run of dominoes".into());
    }
    for d in candidate.iter().filter(|d| d.y > base_level) {
        if !cells.contains(&(d.x, d.y - 1)) && !cells.contains(&(d.x + 1, d.y - 1)) {
            return Err(format!("domino at ({}, {}) is unsupported", d.x, d.y));
        }
    }
    Ok(())
}

/// Total validity predicate on an arbitrary finite domino set.
///
/// The lowest occupied level is taken as the base. A set is valid when it is
/// non-empty, no two dominoes share a cell, the base is one contiguous run and
/// every higher domino has an occupied cell directly beneath one of its halves.
pub fn validate(candidate: &[Domino]) -> bool {
    check(candidate).is_ok()
}

/// Validity by literally replaying sequential placement: start from the base
/// row and repeatedly place any remaining domino that rests on an already
/// placed domino offset by -1, 0 or +1 on the level below.
///
/// This is an independent route to [`validate`]; the two must agree on every
/// input.
pub fn buildable_by_placement(candidate: &[Domino]) -> bool {
    if candidate.is_empty() {
        return false;
    }
    let base_level = candidate.iter().map(|d| d.y).min().unwrap();
    let mut base: Vec<i32> = candidate
        .iter()
        .filter(|d| d.y == base_level)
        .map(|d| d.x)
        .collect();
    base.sort_unstable();
    if base.windows(2).any(|w| w[1] - w[0] != 2) {
        return false;
    }

    let mut placed: HashSet<Domino> = HashSet::new();
    let mut covered: HashSet<(i32, i32)> = HashSet::new();
    for &x in &base {
        placed.insert(Domino::new(x, base_level));
        covered.insert((x, base_level));
        covered.insert((x + 1, base_level));
    }
    let mut pending: Vec<Domino> = candidate
        .iter()
        .copied()
        .filter(|d| d.y != base_level)
        .collect();

    loop {
        let before = pending.len();
        pending.retain(|d| {
            let rests = (-1..=1).any(|dx| placed.contains(&Domino::new(d.x + dx, d.y - 1)));
            let free = d.cells().iter().all(|c| !covered.contains(c));
            if rests && free {
                placed.insert(*d);
                covered.extend(d.cells());
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            return true;
        }
        if pending.len() == before {
            return false;
        }
    }
}

/// A valid domino tower in canonical translation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerShape {
    dominoes: Vec<Domino>,
}

impl TowerShape {
    pub fn new(dominoes: impl IntoIterator<Item = Domino>) -> Result<Self> {
        let dominoes: Vec<Domino> = dominoes.into_iter().collect();
        check(&dominoes).map_err(Error::InvalidShape)?;
        Ok(Self::canonical(dominoes))
    }

    /// Builds a shape from contiguous rows listed from the base upward, each
    /// given as `(leftmost cell column, number of dominoes)`.
    pub fn from_row_runs(rows: &[(i32, u32)]) -> Result<Self> {
        let dominoes = rows.iter().enumerate().flat_map(|(y, &(left, count))| {
            (0..count as i32).map(move |i| Domino::new(left + 2 * i, y as i32))
        });
        Self::new(dominoes)
    }

    /// Rows of domino columns from the base upward; the caller guarantees
    /// validity (used by the enumerator on its own output).
    pub(crate) fn from_rows_unchecked(rows: &[Vec<i32>]) -> Self {
        let dominoes: Vec<Domino> = rows
            .iter()
            .enumerate()
            .flat_map(|(y, xs)| xs.iter().map(move |&x| Domino::new(x, y as i32)))
            .collect();
        debug_assert!(validate(&dominoes));
        Self::canonical(dominoes)
    }

    fn canonical(mut dominoes: Vec<Domino>) -> Self {
        let min_x = dominoes.iter().map(|d| d.x).min().unwrap_or(0);
        let min_y = dominoes.iter().map(|d| d.y).min().unwrap_or(0);
        for d in &mut dominoes {
            d.x -= min_x;
            d.y -= min_y;
        }
        dominoes.sort_unstable();
        TowerShape { dominoes }
    }

    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    /// Occupied cells ordered by `(y, x)`.
    pub fn cells(&self) -> Vec<(i32, i32)> {
        self.dominoes.iter().flat_map(|d| d.cells()).collect()
    }

    pub fn n(&self) -> u32 {
        self.dominoes.len() as u32
    }

    pub fn height(&self) -> u32 {
        self.dominoes.last().map_or(0, |d| d.y as u32 + 1)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Domino]> {
        self.dominoes.chunk_by(|a, b| a.y == b.y)
    }

    /// Dominoes in the base row.
    pub fn base_b(&self) -> u32 {
        self.rows().next().map_or(0, |r| r.len() as u32)
    }

    /// Dominoes in the top row.
    pub fn top_b(&self) -> u32 {
        self.rows().last().map_or(0, |r| r.len() as u32)
    }

    /// Largest number of dominoes in any row.
    pub fn max_row_b(&self) -> u32 {
        self.rows().map(|r| r.len() as u32).max().unwrap_or(0)
    }

    /// Inclusive cell interval `[left, right]` of each row, base first, or
    /// `None` when some row has a gap.
    pub fn row_intervals(&self) -> Option<Vec<(i32, i32)>> {
        self.rows()
            .map(|row| {
                let contiguous = row.windows(2).all(|w| w[1].x - w[0].x == 2);
                contiguous.then(|| (row[0].x, row[row.len() - 1].x + 1))
            })
            .collect()
    }

    pub fn is_convex(&self) -> bool {
        self.convex_intervals().is_some()
    }

    fn convex_intervals(&self) -> Option<Vec<(i32, i32)>> {
        let intervals = self.row_intervals()?;
        // column -> (lowest level, highest level, occupied levels)
        let mut columns: BTreeMap<i32, (usize, usize, usize)> = BTreeMap::new();
        for (y, &(left, right)) in intervals.iter().enumerate() {
            for c in left..=right {
                let e = columns.entry(c).or_insert((y, y, 0));
                e.1 = y;
                e.2 += 1;
            }
        }
        columns
            .values()
            .all(|&(lo, hi, count)| hi - lo + 1 == count)
            .then_some(intervals)
    }

    /// Convex, and every column reaches the top row. These are exactly the
    /// shapes left below the lowest widest row by [`TowerShape::dissect`].
    pub fn is_supporting(&self) -> bool {
        match self.convex_intervals() {
            Some(rows) => {
                let (top_l, top_u) = rows[rows.len() - 1];
                rows.iter().all(|&(l, u)| l >= top_l && u <= top_u)
            }
            None => false,
        }
    }

    /// Precedence: non-convex, stack, right-skewed, left-skewed, supporting,
    /// other convex.
    ///
    /// A right-skewed tower has a left edge that never moves left going up and
    /// some row reaching past the right end of the base. Its right edge may
    /// fall again after its peak, because a stack may sit on an overhanging
    /// row.
    pub fn classify(&self) -> TowerClass {
        let Some(rows) = self.convex_intervals() else {
            return TowerClass::NonConvex;
        };
        let (base_l, base_u) = rows[0];
        if rows.iter().all(|&(l, u)| l >= base_l && u <= base_u) {
            return TowerClass::Stack;
        }
        let lefts_rise = rows.windows(2).all(|w| w[1].0 >= w[0].0);
        if lefts_rise && rows.iter().any(|&(_, u)| u > base_u) {
            return TowerClass::RightSkewed;
        }
        let rights_fall = rows.windows(2).all(|w| w[1].1 <= w[0].1);
        if rights_fall && rows.iter().any(|&(l, _)| l < base_l) {
            return TowerClass::LeftSkewed;
        }
        if self.is_supporting() {
            return TowerClass::Supporting;
        }
        TowerClass::ConvexOther
    }

    /// Reflection across a vertical axis.
    pub fn mirror(&self) -> TowerShape {
        Self::canonical(
            self.dominoes
                .iter()
                .map(|d| Domino::new(-d.x - 1, d.y))
                .collect(),
        )
    }

    /// Splits a convex tower at the lowest row of maximum length.
    pub fn dissect(&self) -> Result<Dissection> {
        let rows = self.convex_intervals().ok_or(Error::NotConvex)?;
        let widest = rows.iter().map(|&(l, u)| u - l).max().unwrap();
        let split = rows.iter().position(|&(l, u)| u - l == widest).unwrap() as i32;
        let (below, above): (Vec<Domino>, Vec<Domino>) =
            self.dominoes.iter().partition(|d| d.y < split);
        let lower = (!below.is_empty()).then(|| Self::canonical(below));
        Ok(Dissection {
            lower,
            upper: Self::canonical(above),
            split_level: split as u32,
        })
    }
}

impl fmt::Display for TowerShape {
    /// One-line cell list, e.g. `(0,0) (1,0) (1,1) (2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.cells().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// A convex tower cut below its lowest widest row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissection {
    /// Everything strictly below the split; `None` when the base is widest.
    pub lower: Option<TowerShape>,
    /// The widest row and everything above it.
    pub upper: TowerShape,
    pub split_level: u32,
}

impl Dissection {
    /// Stacks `upper` back onto `lower`. The upper base is one domino wider
    /// than the lower top row and overhangs it by one cell on each side, so
    /// the placement is forced.
    pub fn recombine(&self) -> Result<TowerShape> {
        let Some(lower) = &self.lower else {
            if self.split_level != 0 {
                return Err(Error::InvalidArgument(
                    "split level must be 0 when the lower part is empty".into(),
                ));
            }
            return Ok(self.upper.clone());
        };
        if lower.height() != self.split_level {
            return Err(Error::InvalidArgument(format!(
                "lower part has height {} but split level is {}",
                lower.height(),
                self.split_level
            )));
        }
        if self.upper.base_b() != lower.top_b() + 1 {
            return Err(Error::InvalidArgument(format!(
                "upper base of {} dominoes cannot rest on a lower top row of {}",
                self.upper.base_b(),
                lower.top_b()
            )));
        }
        let top_left = lower.rows().last().unwrap()[0].x;
        // Upper rows may overhang its base on the left, so align by the base.
        let base_left = self.upper.dominoes[0].x;
        let dx = top_left - 1 - base_left;
        let dy = self.split_level as i32;
        let shifted = self
            .upper
            .dominoes
            .iter()
            .map(|d| Domino::new(d.x + dx, d.y + dy));
        TowerShape::new(lower.dominoes.iter().copied().chain(shifted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(rows: &[(i32, u32)]) -> TowerShape {
        TowerShape::from_row_runs(rows).unwrap()
    }

    fn d(x: i32, y: i32) -> Domino {
        Domino::new(x, y)
    }

    // Figure 1, left tower, read from the bottom row upward.
    fn figure_one_left() -> TowerShape {
        shape(&[(3, 1), (2, 2), (2, 2), (1, 3), (0, 4), (0, 4), (3, 2)])
    }

    #[test]
    fn validate_basic_cases() {
        assert!(validate(&[d(0, 0)]));
        // x is the left cell, so (0,0),(2,0) is a contiguous base of two.
        assert!(validate(&[d(0, 0), d(2, 0)]));
        assert!(!validate(&[d(0, 0), d(3, 0)]));
        assert!(!validate(&[d(0, 0), d(4, 0)]));
        assert!(validate(&[d(0, 0), d(1, 1)]));
        assert!(!validate(&[d(0, 0), d(3, 1)]));
        assert!(!validate(&[]));
        assert!(!validate(&[d(0, 0), d(1, 0)]));
    }

    #[test]
    fn two_domino_sets_in_small_window() {
        // All 2-domino sets with cells inside a 6x2 window.
        let spots: Vec<Domino> = (0..2).flat_map(|y| (0..5).map(move |x| d(x, y))).collect();
        let mut shapes = HashSet::new();
        let mut base_one = HashSet::new();
        for i in 0..spots.len() {
            for j in i + 1..spots.len() {
                let set = [spots[i], spots[j]];
                if validate(&set) {
                    let s = TowerShape::new(set).unwrap();
                    if s.base_b() == 1 {
                        base_one.insert(s.clone());
                    }
                    shapes.insert(s);
                }
            }
        }
        assert_eq!(base_one.len(), 3);
        assert_eq!(shapes.len(), 4);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let s = TowerShape::new([d(5, 3), d(7, 3), d(6, 4)]).unwrap();
        assert_eq!(s.dominoes(), &[d(0, 0), d(2, 0), d(1, 1)]);
        assert_eq!(TowerShape::new(s.dominoes().to_vec()).unwrap(), s);
    }

    #[test]
    fn derived_sizes() {
        let s = figure_one_left();
        assert_eq!(s.n(), 18);
        assert_eq!(s.base_b(), 1);
        assert_eq!(s.max_row_b(), 4);
        assert_eq!(s.height(), 7);
        assert_eq!(s.top_b(), 2);
    }

    #[test]
    fn convexity() {
        assert!(shape(&[(0, 5)]).is_convex());
        assert!(figure_one_left().is_convex());
        // Gap between two level-1 dominoes.
        let gap = TowerShape::new([d(0, 0), d(2, 0), d(4, 0), d(6, 0), d(0, 1), d(5, 1)]).unwrap();
        assert!(!gap.is_convex());
        assert_eq!(gap.classify(), TowerClass::NonConvex);
        // Column 0 occupied at levels 0 and 2 only.
        assert!(!shape(&[(0, 1), (1, 1), (0, 2)]).is_convex());
    }

    #[test]
    fn classify_reference_shapes() {
        assert_eq!(shape(&[(0, 4)]).classify(), TowerClass::Stack);
        // Figure 3, first stack.
        assert_eq!(
            shape(&[(0, 4), (1, 3), (3, 2), (4, 1)]).classify(),
            TowerClass::Stack
        );
        // Figure 4, first (right) and second (left) towers.
        assert_eq!(
            shape(&[(0, 4), (3, 3), (6, 2), (8, 1)]).classify(),
            TowerClass::RightSkewed
        );
        assert_eq!(
            shape(&[(1, 4), (1, 3), (1, 1), (1, 1), (0, 1)]).classify(),
            TowerClass::LeftSkewed
        );
        // Figure 4, third tower: rows (4, 3, 3) leaning left.
        let third = shape(&[(2, 4), (1, 3), (0, 3)]);
        assert_eq!(third.classify(), TowerClass::LeftSkewed);
        assert_eq!(third.mirror().classify(), TowerClass::RightSkewed);
        // Figure 1 left tower: base is not widest.
        assert_eq!(figure_one_left().classify(), TowerClass::ConvexOther);
    }

    #[test]
    fn skewed_right_edge_may_fall_after_overhang() {
        // Base of two, an overhanging row of two, then one domino back inside.
        let s = shape(&[(0, 2), (1, 2), (1, 1)]);
        assert_eq!(s.classify(), TowerClass::RightSkewed);
    }

    #[test]
    fn rectangles_are_stacks_and_supporting() {
        let column = shape(&[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(column.classify(), TowerClass::Stack);
        assert!(column.is_supporting());
        let pyramid = shape(&[(2, 1), (1, 2), (0, 3)]);
        assert_eq!(pyramid.classify(), TowerClass::Supporting);
        // Shifted rows of equal length are skewed, not supporting.
        let shifted = shape(&[(0, 1), (1, 1)]);
        assert!(!shifted.is_supporting());
        assert_eq!(shifted.classify(), TowerClass::RightSkewed);
    }

    #[test]
    fn dissect_figure_two() {
        let whole = figure_one_left();
        let cut = whole.dissect().unwrap();
        assert_eq!(cut.split_level, 4);
        let lower = cut.lower.as_ref().unwrap();
        assert_eq!(lower.n(), 8);
        assert_eq!(
            lower.rows().map(|r| r.len()).collect::<Vec<_>>(),
            [1, 2, 2, 3]
        );
        assert!(lower.is_supporting());
        assert_eq!(cut.upper.n(), 10);
        assert_eq!(cut.upper.base_b(), 4);
        assert_eq!(cut.upper.classify(), TowerClass::Stack);
        assert_eq!(cut.recombine().unwrap(), whole);
    }

    #[test]
    fn dissect_bar_and_non_convex() {
        let bar = shape(&[(0, 3)]);
        let cut = bar.dissect().unwrap();
        assert_eq!(cut.lower, None);
        assert_eq!(cut.upper, bar);
        assert_eq!(cut.split_level, 0);
        let bent = shape(&[(0, 1), (1, 1), (0, 2)]);
        assert!(matches!(bent.dissect(), Err(Error::NotConvex)));
    }

    #[test]
    fn recombine_with_left_overhanging_upper() {
        // Upper part is left-skewed, so its leftmost cell is not on its base.
        let whole = shape(&[(2, 1), (1, 2), (0, 1)]);
        let cut = whole.dissect().unwrap();
        assert_eq!(cut.upper.classify(), TowerClass::LeftSkewed);
        assert_eq!(cut.recombine().unwrap(), whole);
    }

    #[test]
    fn recombine_rejects_inconsistent_parts() {
        let cut = Dissection {
            lower: Some(shape(&[(0, 1)])),
            upper: shape(&[(0, 3)]),
            split_level: 1,
        };
        assert!(cut.recombine().is_err());
        let cut = Dissection {
            lower: None,
            upper: shape(&[(0, 3)]),
            split_level: 2,
        };
        assert!(cut.recombine().is_err());
    }

    #[test]
    fn mirror_swaps_skew() {
        let s = shape(&[(0, 2), (1, 2), (2, 1)]);
        assert_eq!(s.classify(), TowerClass::RightSkewed);
        assert_eq!(s.mirror().classify(), TowerClass::LeftSkewed);
        assert_eq!(s.mirror().mirror(), s);
    }

    #[test]
    fn display_lists_cells() {
        let s = TowerShape::new([d(0, 0), d(1, 1)]).unwrap();
        assert_eq!(s.to_string(), "(0,0) (1,0) (1,1) (2,1)");
    }

    #[test]
    fn class_names_round_trip() {
        for c in TowerClass::ALL {
            assert_eq!(c.name().parse::<TowerClass>().unwrap(), c);
        }
        assert!("tall".parse::<TowerClass>().is_err());
    }
}
