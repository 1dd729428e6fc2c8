//! Byte-stable text rendering of tables and series.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::asymptotics::{to_decimal, ThetaColumn};
use crate::error::{Error, Result};
use crate::recurrence::CountTable;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Tsv,
    Markdown,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Csv, Format::Tsv, Format::Markdown];

    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Tsv => "tsv",
            Format::Markdown => "markdown",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::InvalidArgument(format!("unknown format `{s}`"))),
        }
    }
}

/// Renders a header and rows; every line ends in `\n`.
pub fn render_grid(header: &[String], rows: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    let mut line = |cells: &[String]| match format {
        Format::Csv => out.push_str(&(cells.join(",") + "\n")),
        Format::Tsv => out.push_str(&(cells.join("\t") + "\n")),
        Format::Markdown => out.push_str(&format!("| {} |\n", cells.join(" | "))),
    };
    line(header);
    if format == Format::Markdown {
        let rule: Vec<String> = std::iter::once("---".to_string())
            .chain(header.iter().skip(1).map(|_| "---:".to_string()))
            .collect();
        line(&rule);
    }
    for row in rows {
        line(row);
    }
    out
}

/// `n,b=1,...,b=max_b,total`, one row per `n`.
pub fn render_count_table(table: &CountTable, format: Format) -> String {
    let header: Vec<String> = std::iter::once("n".to_string())
        .chain((1..=table.max_b).map(|b| format!("b={b}")))
        .chain(std::iter::once("total".to_string()))
        .collect();
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .zip(table.row_totals())
        .zip(1..)
        .map(|((cells, total), n)| {
            std::iter::once(n.to_string())
                .chain(cells.iter().map(ToString::to_string))
                .chain(std::iter::once(total.to_string()))
                .collect()
        })
        .collect();
    render_grid(&header, &rows, format)
}

/// Rows `theta`, `estimate` and `error`, one column per base.
pub fn render_theta_table(columns: &[ThetaColumn], decimals: u32, format: Format) -> String {
    let header: Vec<String> = std::iter::once("row".to_string())
        .chain(columns.iter().map(|c| format!("b={}", c.b)))
        .collect();
    let row = |label: &str, field: fn(&ThetaColumn) -> &BigRational| -> Vec<String> {
        std::iter::once(label.to_string())
            .chain(columns.iter().map(|c| to_decimal(field(c), decimals)))
            .collect()
    };
    let rows = vec![
        row("theta", |c| &c.theta),
        row("estimate", |c| &c.estimate),
        row("error", |c| &c.error),
    ];
    render_grid(&header, &rows, format)
}

/// `n,coefficient` for every retained term.
pub fn render_series(series: &TruncatedSeries, format: Format) -> String {
    let header = ["n".to_string(), "coefficient".to_string()];
    let rows: Vec<Vec<String>> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| vec![n.to_string(), c.to_string()])
        .collect();
    render_grid(&header, &rows, format)
}
