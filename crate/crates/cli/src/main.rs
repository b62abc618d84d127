use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use rithmo_core::board::{
    self, find_progressions, generate_army, generate_extended, verify_boethian_structure, Arity,
    Color, NumberTable, ProgressionKind, StructureReport, TableRow,
};
use rithmo_core::boethius::classify;
use rithmo_core::exact::{csv_string, format_rational, int_json, parse_int};
use rithmo_core::fiboquad::{convergence_report, Direction, FiboquadSequence};
use rithmo_core::identities::{
    sweep, IdentityKind, IndexRange, SeedSource, SweepGrid, DEFAULT_RNG_SEED, DEFAULT_SEED_BOUND,
};
use rithmo_core::oeis::{best_offset, compare, parse_bfile};
use rithmo_core::{fib, GeneralizedFibSeed, DEFAULT_PRECISION};

const USAGE_ERROR: u8 = 2;
const VIOLATION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "rithmo", version, about = "Fiboquadratic tables and rithmomachia arithmetic")]
struct Cli {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Fractional digits for decimal output
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// TOML file with defaults for the flags above (flags win)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extended Fibonacci numbers over an index range, e.g. -6..6
    Fib {
        #[arg(allow_hyphen_values = true)]
        range: IndexRange,
    },
    /// The two armies or the infinite table
    Table {
        kind: TableKind,
        /// Number of rows of the extended table (rows 0..N-1)
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<u64>>,
        /// Also check adjacent rows against the ratio classes; exit 1 on mismatch
        #[arg(long)]
        check_boethius: bool,
    },
    /// Sweep an identity over a grid; exit 1 on any violation
    Verify {
        identity: String,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<IndexRange>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<IndexRange>,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<IndexRange>,
        /// Seed `a,b`; repeatable
        #[arg(long = "seed", allow_hyphen_values = true)]
        seeds: Vec<GeneralizedFibSeed>,
        /// Number of random seeds (ignored when --seed is given)
        #[arg(long)]
        random_seeds: Option<usize>,
        #[arg(long)]
        rng_seed: Option<u64>,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Ratio class of p : m
    Classify {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        m: String,
    },
    /// Progressions among positive integers
    #[command(group(ArgGroup::new("input").required(true).args(["values", "armies"])))]
    Progressions {
        /// Comma-separated values
        #[arg(allow_hyphen_values = true)]
        values: Option<String>,
        /// Use the 48 army values
        #[arg(long)]
        armies: bool,
        #[arg(long, value_delimiter = ',')]
        kind: Vec<ProgressionKind>,
        #[arg(long, default_value = "both")]
        arity: Arity,
    },
    /// Ratios of consecutive terms against the golden ratio
    #[command(group(ArgGroup::new("sequence").required(true).args(["n", "seed"])))]
    Convergence {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        seed: Option<GeneralizedFibSeed>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long, default_value = "forward")]
        direction: Direction,
    },
    /// Compare a generator column with a local OEIS b-file
    OeisCheck {
        file: PathBuf,
        #[arg(long)]
        n: u64,
        /// b-file index i is compared with row i - offset; searched when omitted
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    Armies,
    Extended,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    format: Option<Format>,
    precision: Option<u32>,
    rows: Option<u32>,
    m_max: Option<u32>,
    rng_seed: Option<u64>,
    bound: Option<i64>,
}

type CliResult<T> = Result<T, String>;

struct Ctx {
    format: Format,
    precision: u32,
    config: Config,
}

fn load_config(path: Option<&Path>) -> CliResult<Config> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let config = load_config(cli.config.as_deref())?;
    let ctx = Ctx {
        format: cli.format.or(config.format).unwrap_or(Format::Pretty),
        precision: cli.precision.or(config.precision).unwrap_or(DEFAULT_PRECISION),
        config,
    };
    match cli.command {
        Command::Fib { range } => cmd_fib(&ctx, range),
        Command::Table {
            kind,
            rows,
            generators,
            check_boethius,
        } => cmd_table(&ctx, kind, rows, generators, check_boethius),
        Command::Verify {
            identity,
            m,
            k,
            j,
            seeds,
            random_seeds,
            rng_seed,
            bound,
        } => {
            let kind: IdentityKind = identity.parse().map_err(|e| format!("{e}"))?;
            let seeds = if !seeds.is_empty() {
                Some(SeedSource::List { seeds })
            } else {
                random_seeds.map(|count| SeedSource::Random {
                    count,
                    rng_seed: rng_seed.or(ctx.config.rng_seed).unwrap_or(DEFAULT_RNG_SEED),
                    bound: bound.or(ctx.config.bound).unwrap_or(DEFAULT_SEED_BOUND),
                })
            };
            cmd_verify(&ctx, kind, SweepGrid { m, k, j, seeds })
        }
        Command::Classify { p, m } => cmd_classify(&ctx, &p, &m),
        Command::Progressions {
            values,
            armies,
            kind,
            arity,
        } => cmd_progressions(&ctx, values.as_deref(), armies, kind, arity),
        Command::Convergence {
            n,
            seed,
            m_max,
            direction,
        } => {
            let seq = match (n, seed) {
                (Some(n), _) => FiboquadSequence::generator(n).map_err(|e| e.to_string())?,
                (None, Some(seed)) => FiboquadSequence::general(seed),
                (None, None) => unreachable!("clap requires one of --n, --seed"),
            };
            let m_max = m_max.or(ctx.config.m_max).unwrap_or(100);
            cmd_convergence(&ctx, &seq, m_max, direction)
        }
        Command::OeisCheck { file, n, offset } => cmd_oeis_check(&ctx, &file, n, offset),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Left-aligned first column, right-aligned numbers.
fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate().take(cols) {
            if i == 0 {
                let _ = write!(line, "{cell:<w$}", w = widths[i]);
            } else {
                let _ = write!(line, "  {cell:>w$}", w = widths[i]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn cmd_fib(ctx: &Ctx, range: IndexRange) -> CliResult<ExitCode> {
    #[derive(Serialize)]
    struct Entry {
        k: i64,
        #[serde(with = "int_json")]
        value: BigInt,
    }
    let entries: Vec<Entry> = range.iter().map(|k| Entry { k, value: fib(k) }).collect();
    let out = match ctx.format {
        Format::Json => to_json(&entries),
        Format::Csv => csv_string(
            &["k", "fib"],
            entries.iter().map(|e| [e.k.to_string(), e.value.to_string()]),
        ),
        Format::Pretty => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| vec![e.k.to_string(), e.value.to_string()])
                .collect();
            aligned(&["k".into(), "F_k".into()], &rows)
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn pretty_table(title: &str, table: &NumberTable) -> String {
    let mut header = vec!["m".to_string(), "row".to_string()];
    header.extend(table.generators.iter().map(|n| format!("n={n}")));
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![r.m.to_string(), r.label.clone()];
            v.extend(r.values.iter().map(|x| x.to_string()));
            v
        })
        .collect();
    format!("{title}\n{}", aligned(&header, &rows))
}

/// Both armies side by side as one table, white generators first.
fn merged_armies(white: &NumberTable, black: &NumberTable) -> NumberTable {
    let mut generators = white.generators.clone();
    generators.extend(&black.generators);
    let rows = white
        .rows
        .iter()
        .zip(&black.rows)
        .map(|(w, b)| TableRow {
            m: w.m,
            label: w.label.clone(),
            values: w.values.iter().chain(&b.values).cloned().collect(),
        })
        .collect();
    NumberTable { generators, rows }
}

fn report_structure(name: &str, report: &StructureReport) -> bool {
    if report.conforms() {
        eprintln!("{name}: {} adjacent pairs conform", report.pairs_checked);
    } else {
        for m in &report.mismatches {
            eprintln!(
                "{name}: n={} rows {}->{}: ratio {} is {}, expected {}",
                m.n,
                m.from_m,
                m.to_m,
                format_rational(&m.ratio),
                m.found,
                m.expected
            );
        }
    }
    report.conforms()
}

fn cmd_table(
    ctx: &Ctx,
    kind: TableKind,
    rows: Option<u32>,
    generators: Option<Vec<u64>>,
    check: bool,
) -> CliResult<ExitCode> {
    let mut conforms = true;
    let out = match kind {
        TableKind::Armies => {
            let white = generate_army(Color::White);
            let black = generate_army(Color::Black);
            if check {
                conforms &= report_structure("white", &verify_boethian_structure(&white.table));
                conforms &= report_structure("black", &verify_boethian_structure(&black.table));
            }
            match ctx.format {
                Format::Json => to_json(&[&white, &black]),
                Format::Csv => merged_armies(&white.table, &black.table).to_csv(),
                Format::Pretty => format!(
                    "{}\n{}",
                    pretty_table("white", &white.table),
                    pretty_table("black", &black.table)
                ),
            }
        }
        TableKind::Extended => {
            let rows = rows.or(ctx.config.rows).unwrap_or(15);
            if rows == 0 {
                return Err("--rows must be at least 1".into());
            }
            let generators = generators.unwrap_or_else(|| board::DEFAULT_GENERATORS.to_vec());
            let table = generate_extended(rows - 1, &generators).map_err(|e| e.to_string())?;
            if check {
                conforms &= report_structure("extended", &verify_boethian_structure(&table.table));
            }
            match ctx.format {
                Format::Json => to_json(&table),
                Format::Csv => table.table.to_csv(),
                Format::Pretty => pretty_table("extended", &table.table),
            }
        }
    };
    print!("{out}");
    Ok(if conforms {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VIOLATION)
    })
}

fn cmd_verify(ctx: &Ctx, kind: IdentityKind, grid: SweepGrid) -> CliResult<ExitCode> {
    let report = sweep(kind, &grid.resolved_for(kind)).map_err(|e| e.to_string())?;
    let out = match ctx.format {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
        Format::Pretty => {
            let mut s = format!(
                "{}: {} cases, {} violations\n",
                report.identity,
                report.cases,
                report.violations.len()
            );
            for v in &report.violations {
                let _ = writeln!(
                    s,
                    "  {}: lhs {} rhs {} residual {}",
                    v.params, v.lhs, v.rhs, v.residual
                );
            }
            for note in &report.notes {
                let _ = writeln!(s, "  note: {note}");
            }
            s
        }
    };
    print!("{out}");
    Ok(if report.holds() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VIOLATION)
    })
}

fn cmd_classify(ctx: &Ctx, p: &str, m: &str) -> CliResult<ExitCode> {
    let p = parse_int(p).map_err(|e| e.to_string())?;
    let m = parse_int(m).map_err(|e| e.to_string())?;
    let result = classify(&p, &m).map_err(|e| e.to_string())?;
    let out = match ctx.format {
        Format::Json => to_json(&result),
        Format::Csv => csv_string(
            &["p", "m", "ratio", "class"],
            [[
                p.to_string(),
                m.to_string(),
                format_rational(&result.reduced_ratio),
                result.canonical.to_string(),
            ]],
        ),
        Format::Pretty => {
            let mut s = format!(
                "{p}/{m} = {}: {}\n",
                format_rational(&result.reduced_ratio),
                result.canonical
            );
            for w in result.all_representations.iter().filter(|w| **w != result.canonical) {
                let _ = writeln!(s, "  also {w}");
            }
            s
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_progressions(
    ctx: &Ctx,
    values: Option<&str>,
    armies: bool,
    kinds: Vec<ProgressionKind>,
    arity: Arity,
) -> CliResult<ExitCode> {
    let values: Vec<BigInt> = if armies {
        board::army_values()
    } else {
        values
            .unwrap_or_default()
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_int(s).map_err(|e| e.to_string()))
            .collect::<CliResult<_>>()?
    };
    let kinds = if kinds.is_empty() {
        ProgressionKind::ALL.to_vec()
    } else {
        kinds
    };
    let found = find_progressions(&values, &kinds, arity).map_err(|e| e.to_string())?;
    let out = match ctx.format {
        Format::Json => to_json(&found),
        Format::Csv => csv_string(
            &["kind", "t1", "t2", "t3", "t4"],
            found.iter().map(|p| {
                let mut rec = vec![p.kind.to_string()];
                rec.extend(p.terms.iter().map(|t| t.to_string()));
                rec.resize(5, String::new());
                rec
            }),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for p in &found {
                let terms: Vec<String> = p.terms.iter().map(|t| t.to_string()).collect();
                let _ = writeln!(s, "{:<20} ({})  {}", p.kind, terms.join(", "), p.witness);
            }
            let _ = writeln!(s, "{} found", found.len());
            s
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_convergence(
    ctx: &Ctx,
    seq: &FiboquadSequence,
    m_max: u32,
    direction: Direction,
) -> CliResult<ExitCode> {
    let report =
        convergence_report(seq, m_max, ctx.precision, direction).map_err(|e| e.to_string())?;
    let out = match ctx.format {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
        Format::Pretty => {
            let header = vec![
                "index".to_string(),
                "ratio".to_string(),
                format!("|error| (p{})", report.precision),
            ];
            let rows: Vec<Vec<String>> = report
                .entries
                .iter()
                .map(|e| vec![e.index.to_string(), format_rational(&e.ratio), e.error.to_string()])
                .collect();
            let threshold = report
                .threshold_index
                .map_or_else(|| "never".to_string(), |i| i.to_string());
            format!(
                "{seq} {}, limit {}\nwithin 1e{} from index {threshold}\n{}",
                match direction {
                    Direction::Forward => "forward",
                    Direction::Backward => "backward",
                },
                report.limit,
                report.tolerance_exp,
                aligned(&header, &rows)
            )
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_oeis_check(ctx: &Ctx, file: &Path, n: u64, offset: Option<i64>) -> CliResult<ExitCode> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let entries = parse_bfile(&text).map_err(|e| e.to_string())?;
    let report = match offset {
        Some(o) => compare(&entries, n, o),
        None => best_offset(&entries, n),
    };
    let out = match ctx.format {
        Format::Json => to_json(&report),
        Format::Csv => csv_string(
            &["n", "offset", "entries", "matched_prefix", "first_mismatch_index"],
            [[
                report.n.to_string(),
                report.offset.to_string(),
                report.entries.to_string(),
                report.matched_prefix.to_string(),
                report
                    .first_mismatch
                    .as_ref()
                    .map(|m| m.index.to_string())
                    .unwrap_or_default(),
            ]],
        ),
        Format::Pretty => {
            let mut s = format!(
                "n={} offset {}: {} of {} entries match\n",
                report.n, report.offset, report.matched_prefix, report.entries
            );
            if let Some(m) = &report.first_mismatch {
                let _ = writeln!(
                    s,
                    "first mismatch at index {}: file has {}, table has {}",
                    m.index, m.expected, m.found
                );
            }
            s
        }
    };
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}
