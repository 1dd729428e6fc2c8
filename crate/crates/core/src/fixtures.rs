//! Published reference tables, embedded verbatim.
//!
//! The count tables use the same CSV layout as `render::count_table_csv`
//! (`n,b=1,...,b=max_b,total`); totals are kept exactly as printed, even
//! where they disagree with the sum of their row.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::recurrence::Family;

pub const STACKS_CSV: &str = include_str!("../fixtures/table1_stacks.csv");
pub const SKEWED_CSV: &str = include_str!("../fixtures/table2_skewed.csv");
pub const CONVEX_CSV: &str = include_str!("../fixtures/table3_convex.csv");
pub const THETA_CSV: &str = include_str!("../fixtures/table4_theta.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub n: u32,
    pub cells: Vec<BigUint>,
    pub total: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTable {
    pub family: Family,
    pub max_b: u32,
    pub rows: Vec<FixtureRow>,
}

impl FixtureTable {
    pub fn parse(family: Family, csv: &str) -> Result<Self> {
        let mut lines = csv
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty fixture".into()))?;
        let max_b = header.split(',').filter(|h| h.starts_with("b=")).count() as u32;
        let bad = |line: usize, message: String| Error::BFileParse {
            line: line + 1,
            message,
        };
        let mut rows = Vec::new();
        for (i, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != max_b as usize + 2 {
                return Err(bad(i, format!("expected {} fields", max_b + 2)));
            }
            let n = fields[0]
                .parse()
                .map_err(|_| bad(i, format!("bad n `{}`", fields[0])))?;
            let mut nums = fields[1..].iter().map(|f| {
                f.parse::<BigUint>()
                    .map_err(|_| bad(i, format!("bad count `{f}`")))
            });
            let cells = nums.by_ref().take(max_b as usize).collect::<Result<_>>()?;
            let total = nums.next().expect("length checked")?;
            rows.push(FixtureRow { n, cells, total });
        }
        Ok(FixtureTable {
            family,
            max_b,
            rows,
        })
    }

    pub fn max_n(&self) -> u32 {
        self.rows.last().map_or(0, |r| r.n)
    }

    pub fn get(&self, n: u32, b: u32) -> Option<&BigUint> {
        self.rows
            .iter()
            .find(|r| r.n == n)?
            .cells
            .get((b as usize).checked_sub(1)?)
    }
}

pub fn stacks() -> FixtureTable {
    FixtureTable::parse(Family::H, STACKS_CSV).expect("embedded fixture parses")
}

pub fn skewed() -> FixtureTable {
    FixtureTable::parse(Family::R, SKEWED_CSV).expect("embedded fixture parses")
}

pub fn convex() -> FixtureTable {
    FixtureTable::parse(Family::C, CONVEX_CSV).expect("embedded fixture parses")
}

/// Rounded decimals as printed: `(label, [(b, text)])`.
pub fn theta_rows() -> Vec<(String, Vec<(u32, String)>)> {
    let mut lines = THETA_CSV.lines();
    let header: Vec<u32> = lines
        .next()
        .unwrap_or_default()
        .split(',')
        .skip(1)
        .map(|h| h.trim_start_matches("b=").parse().expect("embedded header"))
        .collect();
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut fields = l.split(',');
            let label = fields.next().unwrap_or_default().to_string();
            let cells = header
                .iter()
                .copied()
                .zip(fields.map(str::to_string))
                .collect();
            (label, cells)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceSource {
    Embedded,
    BFile,
    Fetched,
}

/// A finite prefix of an integer sequence starting at index `offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFixture {
    pub id: String,
    pub offset: i64,
    pub values: Vec<BigInt>,
    pub source: SequenceSource,
}

impl SequenceFixture {
    /// Row totals of an embedded table, as printed.
    pub fn row_totals(id: &str, table: &FixtureTable) -> Self {
        SequenceFixture {
            id: id.to_string(),
            offset: table.rows.first().map_or(1, |r| r.n as i64),
            values: table
                .rows
                .iter()
                .map(|r| BigInt::from(r.total.clone()))
                .collect(),
            source: SequenceSource::Embedded,
        }
    }

    pub fn get(&self, index: i64) -> Option<&BigInt> {
        self.values.get(usize::try_from(index - self.offset).ok()?)
    }
}
