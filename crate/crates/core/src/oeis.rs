//! OEIS b-file parsing, caching and term-by-term comparison.
//!
//! Nothing here touches the network unless [`FetchConfig::allow_network`]
//! is set.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;

use crate::asymptotics::limit_constant_digits;
use crate::enumerate::gapfree_partition_census;
use crate::error::{Error, Result};
use crate::fixtures::{SequenceFixture, SequenceSource};
use crate::recurrence::{Counts, Family};

/// Overrides the default cache location.
pub const CACHE_ENV: &str = "DOMINO_TOWERS_CACHE";
/// Default number of triangle rows (or sequence terms) computed on our side.
pub const DEFAULT_ROW_CAP: u32 = 64;
const TIMEOUT: Duration = Duration::from_secs(10);

/// Parses `index value` lines; `#` comments, blank lines and CRLF are
/// tolerated, indices must be consecutive.
pub fn parse_bfile(id: &str, text: &str) -> Result<SequenceFixture> {
    let mut offset = None;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::BFileParse {
            line: line_no,
            message,
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [index, value] = fields[..] else {
            return Err(err(format!("expected `index value`, found `{line}`")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| err(format!("bad index `{index}`")))?;
        let value: BigInt = value
            .parse()
            .map_err(|_| err(format!("bad value `{value}`")))?;
        let start = *offset.get_or_insert(index);
        let expected = start + values.len() as i64;
        if index != expected {
            return Err(err(format!("expected index {expected}, found {index}")));
        }
        values.push(value);
    }
    let offset = offset.ok_or(Error::BFileParse {
        line: 0,
        message: "no terms found".into(),
    })?;
    Ok(SequenceFixture {
        id: id.to_string(),
        offset,
        values,
        source: SequenceSource::BFile,
    })
}

/// What our side of a comparison computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// Row-by-row flattening of `T(n, k)`; for `g`, `T(n, k) = g(k + 1, n)`,
    /// otherwise `T(n, k)` is the family at base `k`.
    Triangle(Family),
    /// Gap-free partitions of `n`, `a(0) = 1`.
    FlatPartitions,
    /// Decimal digits of `prod_{k>=1} 2^k / (2^k - 1)`.
    LimitDigits,
}

impl Selector {
    /// The selector conventionally paired with a sequence id.
    pub fn for_id(id: &str) -> Option<Selector> {
        Some(match id.to_ascii_uppercase().as_str() {
            "A117468" => Selector::Triangle(Family::G),
            "A275204" => Selector::Triangle(Family::H),
            "A275599" => Selector::Triangle(Family::R),
            "A275662" => Selector::Triangle(Family::C),
            "A034296" => Selector::FlatPartitions,
            "A065446" => Selector::LimitDigits,
            _ => return None,
        })
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Triangle(family) => write!(f, "{family}"),
            Selector::FlatPartitions => f.write_str("flat"),
            Selector::LimitDigits => f.write_str("digits"),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "flat" | "gapfree" => Ok(Selector::FlatPartitions),
            "digits" => Ok(Selector::LimitDigits),
            other => other
                .parse::<Family>()
                .map(Selector::Triangle)
                .map_err(|_| Error::InvalidArgument(format!("unknown selector `{s}`"))),
        }
    }
}

/// How a triangle is flattened: rows `n >= first_row`, and in row `n` the
/// columns `first_col..=n - short_rows`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleLayout {
    pub first_row: u32,
    pub first_col: u32,
    pub short_rows: bool,
}

impl TriangleLayout {
    /// Every distinct layout; ones whose first row would be empty duplicate
    /// a layout starting one row later and are left out.
    pub fn all() -> Vec<TriangleLayout> {
        let mut out = Vec::new();
        for first_row in 0..=1 {
            for first_col in 0..=1 {
                for short_rows in [false, true] {
                    let layout = TriangleLayout {
                        first_row,
                        first_col,
                        short_rows,
                    };
                    if layout.columns(first_row).next().is_some() {
                        out.push(layout);
                    }
                }
            }
        }
        out
    }

    fn columns(self, n: u32) -> impl Iterator<Item = u32> {
        let last = n as i64 - self.short_rows as i64;
        (self.first_col as i64..=last).map(|k| k as u32)
    }

    /// Flattened terms from up to `row_cap` rows, stopping at `limit` terms.
    fn flatten(
        self,
        family: Family,
        counts: &mut Counts,
        row_cap: u32,
        limit: usize,
    ) -> Vec<BigInt> {
        let mut out = Vec::new();
        for n in self.first_row..self.first_row + row_cap {
            for k in self.columns(n) {
                if out.len() == limit {
                    return out;
                }
                let value = match family {
                    Family::G => counts.g(k + 1, n),
                    other => counts.get(other, k, n),
                };
                out.push(BigInt::from(value));
            }
        }
        out
    }
}

impl fmt::Display for TriangleLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = if self.short_rows { "n-1" } else { "n" };
        write!(
            f,
            "rows from n={}, columns k={}..={cols}",
            self.first_row, self.first_col
        )
    }
}

/// First disagreement: position in the b-file, its index, its value, ours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub position: usize,
    pub index: i64,
    pub expected: BigInt,
    pub computed: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term {} (index {}): b-file has {}, computed {}",
            self.position + 1,
            self.index,
            self.expected,
            self.computed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisReport {
    pub id: String,
    pub selector: Selector,
    pub bfile_terms: usize,
    /// Terms present on both sides.
    pub compared: usize,
    /// Leading terms that agree.
    pub matched: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Triangle layouts consistent with every compared term.
    pub layouts: Vec<TriangleLayout>,
    /// For triangles, each layout tried and where it first failed.
    pub attempts: Vec<(TriangleLayout, Option<Mismatch>)>,
}

impl OeisReport {
    pub fn passed(&self) -> bool {
        self.compared > 0 && self.first_mismatch.is_none()
    }
}

impl fmt::Display for OeisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {} vs {}: {} of {} compared terms match ({} terms in b-file)",
            self.id, self.selector, self.matched, self.compared, self.bfile_terms
        )?;
        if let Some(layout) = self.layouts.first() {
            writeln!(f, "layout: {layout}")?;
            for other in &self.layouts[1..] {
                writeln!(f, "also consistent: {other}")?;
            }
        } else if !self.attempts.is_empty() {
            writeln!(f, "no triangle layout fits the b-file:")?;
            for (layout, miss) in &self.attempts {
                match miss {
                    Some(m) => writeln!(f, "  {layout}: {m}")?,
                    None => writeln!(f, "  {layout}: no terms to compare")?,
                }
            }
        }
        if let Some(m) = &self.first_mismatch {
            writeln!(f, "first mismatch: {m}")?;
        }
        Ok(())
    }
}

/// Compares in order; returns `(compared, matched, first mismatch)`.
fn compare(bfile: &SequenceFixture, ours: &[BigInt]) -> (usize, usize, Option<Mismatch>) {
    let compared = bfile.values.len().min(ours.len());
    let matched = bfile
        .values
        .iter()
        .zip(ours)
        .take_while(|(a, b)| a == b)
        .count();
    let first_mismatch = (matched < compared).then(|| Mismatch {
        position: matched,
        index: bfile.offset + matched as i64,
        expected: bfile.values[matched].clone(),
        computed: ours[matched].clone(),
    });
    (compared, matched, first_mismatch)
}

/// Checks a b-file against our computation.
///
/// Triangles are tried under every [`TriangleLayout`]; the report names the
/// layouts that fit, or each layout's first mismatch if none does.
pub fn check(bfile: &SequenceFixture, selector: Selector, row_cap: u32) -> Result<OeisReport> {
    let limit = bfile.values.len();
    let mut report = OeisReport {
        id: bfile.id.clone(),
        selector,
        bfile_terms: limit,
        compared: 0,
        matched: 0,
        first_mismatch: None,
        layouts: Vec::new(),
        attempts: Vec::new(),
    };
    match selector {
        Selector::Triangle(family) => {
            let mut counts = Counts::new();
            let mut best: Option<(usize, usize, Option<Mismatch>)> = None;
            for layout in TriangleLayout::all() {
                let ours = layout.flatten(family, &mut counts, row_cap, limit);
                let result = compare(bfile, &ours);
                if result.0 > 0 && result.2.is_none() {
                    report.layouts.push(layout);
                }
                report.attempts.push((layout, result.2.clone()));
                if best.as_ref().is_none_or(|b| result.1 > b.1) {
                    best = Some(result);
                }
            }
            let (compared, matched, miss) = best.expect("at least one layout");
            report.compared = compared;
            report.matched = matched;
            report.first_mismatch = miss;
        }
        Selector::FlatPartitions => {
            if bfile.offset < 0 {
                return Err(Error::InvalidArgument(
                    "flat partitions start at index 0".into(),
                ));
            }
            let last = (bfile.offset + limit as i64 - 1).min(row_cap.min(40) as i64);
            let ours: Vec<BigInt> = (bfile.offset..=last)
                .map(|n| match n {
                    0 => Ok(BigInt::from(1)),
                    n => gapfree_partition_census(n as u32)
                        .map(|m| m.into_values().map(BigInt::from).sum()),
                })
                .collect::<Result<_>>()?;
            (report.compared, report.matched, report.first_mismatch) = compare(bfile, &ours);
        }
        Selector::LimitDigits => {
            let digits = limit_constant_digits(limit.min(row_cap as usize).max(1));
            let ours: Vec<BigInt> = digits.bytes().map(|d| BigInt::from(d - b'0')).collect();
            (report.compared, report.matched, report.first_mismatch) = compare(bfile, &ours);
        }
    }
    Ok(report)
}

/// Network and cache settings for b-file retrieval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchConfig {
    pub allow_network: bool,
    pub cache_dir: PathBuf,
}

impl FetchConfig {
    pub fn offline(cache_dir: impl Into<PathBuf>) -> Self {
        FetchConfig {
            allow_network: false,
            cache_dir: cache_dir.into(),
        }
    }
}

/// `$DOMINO_TOWERS_CACHE`, else `$HOME/.cache/domino-towers/oeis`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    match std::env::var_os("HOME") {
        Some(home) => Path::new(&home).join(".cache/domino-towers/oeis"),
        None => PathBuf::from(".domino-towers-cache"),
    }
}

/// Normalizes `a275662` to `A275662`; rejects anything else.
pub fn normalize_id(id: &str) -> Result<String> {
    let upper = id.trim().to_ascii_uppercase();
    let ok = upper.len() == 7
        && upper.starts_with('A')
        && upper[1..].bytes().all(|c| c.is_ascii_digit());
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "`{id}` is not a sequence id like A275662"
        )));
    }
    Ok(upper)
}

pub fn bfile_url(id: &str) -> Result<String> {
    let id = normalize_id(id)?;
    Ok(format!("https://oeis.org/{id}/b{}.txt", &id[1..]))
}

fn cache_path(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("b{}.txt", &id[1..]))
}

/// Reads a cached b-file, fetching it first if allowed.
pub fn load_bfile(id: &str, config: &FetchConfig) -> Result<SequenceFixture> {
    let id = normalize_id(id)?;
    let path = cache_path(&config.cache_dir, &id);
    if path.is_file() {
        let mut seq = parse_bfile(&id, &fs::read_to_string(&path)?)?;
        seq.source = SequenceSource::Fetched;
        return Ok(seq);
    }
    if !config.allow_network {
        return Err(Error::NetworkDisabled(id));
    }
    let url = bfile_url(&id)?;
    let text = fetch(&url)?;
    let mut seq = parse_bfile(&id, &text)?;
    fs::create_dir_all(&config.cache_dir)?;
    fs::write(&path, text)?;
    seq.source = SequenceSource::Fetched;
    Ok(seq)
}

/// One GET with a single retry.
fn fetch(url: &str) -> Result<String> {
    let agent = ureq::AgentBuilder::new().timeout(TIMEOUT).build();
    let attempt = || -> std::result::Result<String, String> {
        agent
            .get(url)
            .call()
            .map_err(|e| e.to_string())?
            .into_string()
            .map_err(|e| e.to_string())
    };
    attempt()
        .or_else(|_| attempt())
        .map_err(|message| Error::Network {
            url: url.to_string(),
            message,
        })
}

/// Loads a b-file from a local path.
pub fn read_bfile(id: &str, path: &Path) -> Result<SequenceFixture> {
    parse_bfile(id, &fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bfile(offset: i64, values: &[i64]) -> SequenceFixture {
        let text: String = values
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{} {v}\n", offset + i as i64))
            .collect();
        parse_bfile("A000000", &text).unwrap()
    }

    #[test]
    fn parses_comments_and_crlf() {
        let seq = parse_bfile("A1", "# header\r\n\r\n1 1\r\n2 3\r\n3 -7\r\n").unwrap();
        assert_eq!(seq.offset, 1);
        assert_eq!(seq.values, [1, 3, -7].map(BigInt::from));
    }

    #[test]
    fn reports_bad_lines() {
        let err = parse_bfile("A1", "1 1\n2 2\n3 3\n4 4\n5 abc\n").unwrap_err();
        assert!(matches!(err, Error::BFileParse { line: 5, .. }), "{err}");
        assert!(matches!(
            parse_bfile("A1", "0 1\n2 1\n"),
            Err(Error::BFileParse { line: 2, .. })
        ));
        assert!(matches!(
            parse_bfile("A1", "0 1 2\n"),
            Err(Error::BFileParse { line: 1, .. })
        ));
        assert!(parse_bfile("A1", "# nothing\n").is_err());
    }

    #[test]
    fn triangle_layout_is_detected() {
        // Rows n >= 1, columns 1..=n of the stack table.
        let seq = bfile(1, &[1, 1, 1, 1, 3, 1, 1, 4, 5, 1]);
        let report = check(&seq, Selector::Triangle(Family::H), DEFAULT_ROW_CAP).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.compared, 10);
        assert!(report.layouts.contains(&TriangleLayout {
            first_row: 1,
            first_col: 1,
            short_rows: false
        }));
        // With a leading zero column.
        let seq = bfile(0, &[0, 1, 0, 1, 1, 0, 1, 3, 1]);
        let report = check(&seq, Selector::Triangle(Family::H), DEFAULT_ROW_CAP).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn unfit_triangle_lists_every_attempt() {
        let seq = bfile(1, &[1, 1, 2, 1, 3]);
        let report = check(&seq, Selector::Triangle(Family::H), DEFAULT_ROW_CAP).unwrap();
        assert!(!report.passed());
        assert!(report.layouts.is_empty());
        assert_eq!(report.attempts.len(), TriangleLayout::all().len());
        assert!(report.to_string().contains("no triangle layout fits"));
    }

    #[test]
    fn g_triangle_shifts_the_base() {
        // T(n, k) = g(k + 1, n) counts gap-free partitions of n with largest
        // part k; row 4 is {1111}, {22, 211}, {}, {4}.
        let seq = bfile(1, &[1, 1, 1, 1, 1, 1, 1, 2, 0, 1]);
        let report = check(&seq, Selector::Triangle(Family::G), DEFAULT_ROW_CAP).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn flat_partitions_and_digits() {
        let seq = bfile(0, &[1, 1, 2, 3, 4, 5, 7]);
        assert!(check(&seq, Selector::FlatPartitions, DEFAULT_ROW_CAP)
            .unwrap()
            .passed());
        let seq = bfile(1, &[3, 4, 6, 2, 7, 4, 6, 6, 1, 9]);
        let report = check(&seq, Selector::LimitDigits, DEFAULT_ROW_CAP).unwrap();
        assert!(report.passed() && report.compared == 10);
        let seq = bfile(1, &[3, 4, 7]);
        let report = check(&seq, Selector::LimitDigits, DEFAULT_ROW_CAP).unwrap();
        assert_eq!(report.first_mismatch.unwrap().index, 3);
    }

    #[test]
    fn ids_and_urls() {
        assert_eq!(
            bfile_url("a275662").unwrap(),
            "https://oeis.org/A275662/b275662.txt"
        );
        assert!(normalize_id("A27566").is_err());
        assert!(normalize_id("B275662").is_err());
        assert_eq!(
            Selector::for_id("A275599"),
            Some(Selector::Triangle(Family::R))
        );
        assert_eq!(
            "flat".parse::<Selector>().unwrap(),
            Selector::FlatPartitions
        );
        assert_eq!(
            "c".parse::<Selector>().unwrap(),
            Selector::Triangle(Family::C)
        );
    }

    #[test]
    fn offline_loads_use_only_the_cache() {
        let dir = tempfile::tempdir().unwrap();
        let config = FetchConfig::offline(dir.path());
        assert!(matches!(
            load_bfile("A034296", &config),
            Err(Error::NetworkDisabled(_))
        ));
        fs::write(dir.path().join("b034296.txt"), "0 1\n1 1\n2 2\n").unwrap();
        let seq = load_bfile("A034296", &config).unwrap();
        assert_eq!(
            (seq.offset, seq.values.len(), seq.source),
            (0, 3, SequenceSource::Fetched)
        );
    }
}
