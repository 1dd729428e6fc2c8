use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use domino_towers::asymptotics::theta_table;
use domino_towers::enumerate::{
    enumerate, BaseSelector, ClassFilter, EnumerationRequest, DEFAULT_CAP,
};
use domino_towers::oeis::{self, Selector, DEFAULT_ROW_CAP};
use domino_towers::recurrence::{count, BlockCounts, Counts, Family};
use domino_towers::render::{render_count_table, render_series, render_theta_table, Format};
use domino_towers::series::{build_c, build_g, build_h, build_r, Method, DEFAULT_ORDER, MAX_ORDER};
use domino_towers::verify::verify;
use domino_towers::{Error, RunConfig, TowerClass};

/// Exact counts, tables and checks for convex domino towers.
#[derive(Debug, Parser)]
#[command(name = "domino-towers", version)]
struct Cli {
    /// Output format for tables and series.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,

    /// Largest tower size that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    enum_cap: u32,

    /// Largest series order and table height.
    #[arg(long, global = true, default_value_t = MAX_ORDER)]
    order_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one count.
    Count {
        family: Family,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        n: u32,
        /// Block length.
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Print a table of counts with row totals.
    Table {
        family: Family,
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        #[arg(long, default_value_t = 10)]
        max_b: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Print θ_b, its 3.46 (1/2)^(b-1) estimate and their difference.
    Theta {
        #[arg(long, default_value_t = 10)]
        max_b: u32,
        #[arg(long, default_value_t = 5)]
        decimals: u32,
    },
    /// Check exhaustive enumeration against the recurrences.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
    },
    /// Stream towers, one cell list per line.
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Base width; all bases if omitted.
        #[arg(long)]
        b: Option<u32>,
        /// Keep one class only, or `convex`.
        #[arg(long)]
        class: Option<String>,
        /// Prefix each line with the tower's class.
        #[arg(long)]
        show_class: bool,
    },
    /// Print generating-function coefficients.
    Series {
        family: Family,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value = "functional")]
        method: Method,
    },
    /// Compare an OEIS b-file with computed terms.
    OeisCheck {
        /// Sequence id such as A275662.
        id: String,
        /// g, h, r, c, flat or digits; inferred from known ids.
        #[arg(long)]
        family: Option<Selector>,
        /// Local b-file; otherwise the cache is used.
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Allow downloading missing b-files.
        #[arg(long)]
        fetch: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Rows (or terms) computed on our side.
        #[arg(long, default_value_t = DEFAULT_ROW_CAP)]
        rows: u32,
    },
}

/// A finished command: output text and whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let mut config = RunConfig {
        order_cap: cli.order_cap,
        enumeration_cap: cli.enum_cap,
        format: cli.format,
        ..RunConfig::default()
    };
    config.validate()?;
    match cli.command {
        Command::Count { family, b, n, k } => Ok(format!("{}\n", count(family, k, b, n)?).into()),
        Command::Table {
            family,
            max_n,
            max_b,
            k,
        } => {
            if max_n as usize > config.order_cap {
                return Err(Error::CapExceeded {
                    n: max_n,
                    cap: config.order_cap as u32,
                });
            }
            let table = match k {
                2 => Counts::new().table(family, max_n, max_b)?,
                _ => BlockCounts::new(k)?.table(family, max_n, max_b)?,
            };
            Ok(render_count_table(&table, config.format).into())
        }
        Command::Theta { max_b, decimals } => {
            Ok(render_theta_table(&theta_table(max_b)?, decimals, config.format).into())
        }
        Command::Verify { max_n } => {
            let report = verify(max_n, config.enumeration_cap)?;
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
        Command::Enumerate {
            n,
            b,
            class,
            show_class,
        } => {
            let base = b.map_or(BaseSelector::All, BaseSelector::Fixed);
            let mut req = EnumerationRequest::new(n, base).cap(config.enumeration_cap);
            if let Some(class) = class {
                req = req.filter(match class.as_str() {
                    "convex" => ClassFilter::Convex,
                    other => ClassFilter::Class(other.parse::<TowerClass>()?),
                });
            }
            let stdout = io::stdout();
            let mut out = io::BufWriter::new(stdout.lock());
            for shape in enumerate(&req)? {
                if show_class {
                    write!(out, "{}\t", shape.classify())?;
                }
                writeln!(out, "{shape}")?;
            }
            out.flush()?;
            Ok(String::new().into())
        }
        Command::Series {
            family,
            b,
            order,
            method,
        } => {
            if order > config.order_cap {
                return Err(Error::InvalidArgument(format!(
                    "order {order} exceeds the cap of {}",
                    config.order_cap
                )));
            }
            let series = match family {
                Family::G => build_g(b, order)?,
                Family::H => build_h(b, order, method)?,
                Family::R => build_r(b, order, method)?,
                Family::C => build_c(b, order)?,
            };
            Ok(render_series(&series, config.format).into())
        }
        Command::OeisCheck {
            id,
            family,
            bfile,
            fetch,
            cache_dir,
            rows,
        } => {
            let id = oeis::normalize_id(&id)?;
            let selector = family.or_else(|| Selector::for_id(&id)).ok_or_else(|| {
                Error::InvalidArgument(format!("no default family for {id}; pass --family"))
            })?;
            config.allow_network = fetch;
            if let Some(dir) = cache_dir {
                config.cache_dir = dir;
            }
            let seq = match bfile {
                Some(path) => oeis::read_bfile(&id, &path)?,
                None => oeis::load_bfile(&id, &config.fetch_config())?,
            };
            let report = oeis::check(&seq, selector, rows)?;
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
