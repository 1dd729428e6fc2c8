use std::fs;
use std::process::{Command, Output};

use domino_towers::fixtures::{self, FixtureTable};
use num_bigint::BigUint;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino-towers"))
        .args(args)
        .env_remove("DOMINO_TOWERS_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parses rendered csv back into a table (totals as rendered).
fn rendered(family: &str, max_n: u32, max_b: u32) -> FixtureTable {
    let text = stdout(&[
        "table",
        family,
        "--max-n",
        &max_n.to_string(),
        "--max-b",
        &max_b.to_string(),
    ]);
    FixtureTable::parse(family.parse().unwrap(), &text).unwrap()
}

fn assert_cells_match(ours: &FixtureTable, published: &FixtureTable) {
    assert_eq!(ours.max_b, published.max_b);
    assert_eq!(ours.rows.len(), published.rows.len());
    for (a, b) in ours.rows.iter().zip(&published.rows) {
        assert_eq!((a.n, &a.cells), (b.n, &b.cells), "row n={}", a.n);
        assert_eq!(
            a.total,
            a.cells.iter().sum::<BigUint>(),
            "rendered total n={}",
            a.n
        );
    }
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "c", "--b", "4", "--n", "10"]), "531\n");
    assert_eq!(stdout(&["count", "g", "--b", "2", "--n", "1"]), "1\n");
    assert_eq!(stdout(&["count", "r", "--b", "9", "--n", "10"]), "1\n");
    assert_eq!(
        stdout(&["count", "h", "--b", "2", "--n", "4", "--k", "3"]),
        "5\n"
    );
}

#[test]
fn published_table_cells() {
    assert_cells_match(&rendered("h", 10, 10), &fixtures::stacks());
    assert_cells_match(&rendered("r", 10, 9), &fixtures::skewed());
    assert_cells_match(&rendered("c", 10, 10), &fixtures::convex());
}

#[test]
fn published_totals_that_agree_with_their_rows() {
    for (ours, published) in [
        (rendered("h", 10, 10), fixtures::stacks()),
        (rendered("r", 10, 9), fixtures::skewed()),
        (rendered("c", 10, 10), fixtures::convex()),
    ] {
        for (a, b) in ours.rows.iter().zip(&published.rows) {
            if b.total == b.cells.iter().sum::<BigUint>() {
                assert_eq!(a.total, b.total, "{} n={}", published.family, a.n);
            }
        }
    }
}

#[test]
fn tiny_table() {
    assert_eq!(
        stdout(&["table", "r", "--max-n", "1", "--max-b", "1"]),
        "n,b=1,total\n1,0,0\n"
    );
}

#[test]
fn rendering_is_deterministic() {
    for format in ["csv", "tsv", "markdown"] {
        let args = [
            "table", "c", "--max-n", "12", "--max-b", "12", "--format", format,
        ];
        assert_eq!(stdout(&args), stdout(&args));
    }
}

#[test]
fn theta_rows() {
    let text = stdout(&["theta"]);
    let first = text.lines().nth(1).unwrap();
    assert_eq!(
        first,
        "theta,2.00000,1.11111,0.47166,0.21994,0.10853,0.05414,0.02706,0.01353,0.00676"
    );
    assert!(text.lines().nth(3).unwrap().split(',').nth(5) == Some("0.00040"));
    assert_eq!(
        stdout(&["theta", "--max-b", "2", "--decimals", "1"]),
        "row,b=2\ntheta,2.0\nestimate,1.7\nerror,0.3\n"
    );
}

#[test]
fn verify_reports() {
    let text = stdout(&["verify", "--max-n", "6"]);
    assert!(text.contains("n=6: 1024 towers enumerated"));
    assert!(!text.contains("FAIL"));
    let text = stdout(&["verify", "--max-n", "1"]);
    assert!(text.contains("n=1: 1 towers enumerated"));
}

#[test]
fn verify_convex_census_matches_published_rows() {
    let text = stdout(&["verify", "--max-n", "8"]);
    assert!(
        text.contains("PASS convex towers by widest row = c"),
        "{text}"
    );
    let published = fixtures::convex();
    let text = stdout(&["table", "c", "--max-n", "8", "--max-b", "10"]);
    let ours = FixtureTable::parse(published.family, &text).unwrap();
    for (a, b) in ours.rows.iter().zip(&published.rows) {
        assert_eq!(a.cells, b.cells);
    }
}

#[test]
fn enumerate_streams_cell_lists() {
    let text = stdout(&["enumerate", "--n", "2"]);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.starts_with('(') && l.ends_with(')')));
    let text = stdout(&[
        "enumerate",
        "--n",
        "5",
        "--b",
        "2",
        "--class",
        "right-skewed",
    ]);
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn series_coefficients() {
    let text = stdout(&["series", "r", "--b", "1", "--order", "5"]);
    assert_eq!(text, "n,coefficient\n0,0\n1,0\n2,1\n3,3\n4,7\n5,15\n");
    let closed = stdout(&[
        "series",
        "h",
        "--b",
        "4",
        "--order",
        "20",
        "--method",
        "closed-form",
    ]);
    assert_eq!(
        closed,
        stdout(&["series", "h", "--b", "4", "--order", "20"])
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["count", "q", "--b", "1", "--n", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["enumerate", "--n", "13"]).status.code(), Some(2));
    assert_eq!(
        run(&["count", "h", "--b", "1", "--n", "1", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["theta", "--max-b", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["series", "h", "--b", "13", "--method", "closed-form"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert_eq!(
        run(&["oeis-check", "A275662", "--cache-dir", cache])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn malformed_bfile_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    fs::write(&path, "# test\n1 1\n2 3\n3 1\n4 7\n5 abc\n").unwrap();
    let out = run(&["oeis-check", "A275662", "--bfile", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6"), "{err}");
}

/// The convex table flattened by rows, `b = 1..=n`, as a b-file.
fn convex_bfile() -> String {
    let table = fixtures::convex();
    let mut text = String::from("# convex towers, T(n, b)\n");
    let mut index = 1;
    for row in &table.rows {
        for value in &row.cells[..row.n as usize] {
            text.push_str(&format!("{index} {value}\n"));
            index += 1;
        }
    }
    text
}

#[test]
fn synthetic_bfile_from_published_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b275662.txt");
    fs::write(&path, convex_bfile()).unwrap();
    let text = stdout(&["oeis-check", "A275662", "--bfile", path.to_str().unwrap()]);
    assert!(text.starts_with("PASS A275662 vs c: 55 of 55"), "{text}");
    assert!(
        text.contains("layout: rows from n=1, columns k=1..=n"),
        "{text}"
    );

    // The cache is used when no path is given.
    let cache = dir.path().to_str().unwrap();
    let text = stdout(&["oeis-check", "A275662", "--cache-dir", cache]);
    assert!(text.starts_with("PASS"), "{text}");
}

#[test]
fn wrong_family_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    fs::write(&path, convex_bfile()).unwrap();
    let out = run(&[
        "oeis-check",
        "A275662",
        "--family",
        "h",
        "--bfile",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("no triangle layout fits"), "{text}");
}
