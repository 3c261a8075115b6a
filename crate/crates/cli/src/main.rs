use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qt_stirling::homology::{build_complex, homology, homology_json, homology_text};
use qt_stirling::posets::{
    build_gamma, build_pi, check_acyclic, decompose_poset, match_poset, to_dot, to_json,
    unmatched_genfn, GradedPoset,
};
use qt_stirling::rgwords::{enumerate_allowable, enumerate_rg};
use qt_stirling::rookboards::{enumerate_allowable_rooks, enumerate_rooks};
use qt_stirling::stirlingnum::{
    allowable_words_csv, format_q_one_plus_q, rg_words_csv, CountKind, CountTable, StirlingTable,
    TableKind,
};
use qt_stirling::verify::{run_suite, Suite};
use qt_stirling::{BiPoly, BigInt};

#[derive(Parser)]
#[command(name = "qtstirling", version, about = "q- and (q,t)-Stirling numbers, Stirling posets and their homology")]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a triangle of Stirling numbers, row n and column k.
    Table {
        kind: TableArg,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// List RG-words or rook placements with their weights.
    Enumerate {
        kind: EnumerateArg,
        /// Word length, or board length for placements.
        a: usize,
        /// Maximum letter, or number of rooks.
        b: usize,
        #[arg(long)]
        json: bool,
        /// Draw each board as an ASCII grid.
        #[arg(long)]
        render: bool,
    },
    /// Build a Stirling poset, optionally with its matching and decomposition.
    Poset {
        which: Which,
        a: usize,
        b: usize,
        #[arg(long = "match")]
        matching: bool,
        #[arg(long)]
        decompose: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Integer homology of the complex supported by a Stirling poset.
    Homology {
        which: Which,
        a: usize,
        b: usize,
        #[arg(long)]
        json: bool,
        /// Include the boundary matrices as (row, col, value) triples.
        #[arg(long, requires = "json")]
        matrices: bool,
    },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        suite: SuiteArg,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    #[value(name = "S_q")]
    SecondQ,
    #[value(name = "c_q")]
    FirstQ,
    #[value(name = "S_qt")]
    SecondQt,
    #[value(name = "s_qt")]
    FirstQt,
    #[value(name = "a")]
    A,
    #[value(name = "d")]
    D,
    #[value(name = "bell")]
    Bell,
    /// Every RG-word with its partition and weight.
    #[value(name = "rg-words")]
    RgWords,
    /// Every allowable word with its (1+q) weight.
    #[value(name = "allowable-words")]
    AllowableWords,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateArg {
    Rg,
    Allowable,
    Rooks,
    AllowableRooks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Pi,
    Gamma,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Statistics,
    Posets,
    Homology,
    Orthogonality,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Statistics => Suite::Statistics,
            SuiteArg::Posets => Suite::Posets,
            SuiteArg::Homology => Suite::Homology,
            SuiteArg::Orthogonality => Suite::Orthogonality,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

type CmdResult = Result<(String, bool), Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table { kind, n_max, format } => cmd_table(kind, n_max, format),
        Command::Enumerate { kind, a, b, json, render } => cmd_enumerate(kind, a, b, json, render),
        Command::Poset { which, a, b, matching, decompose, dot, json } => {
            cmd_poset(which, a, b, matching, decompose, dot, json)
        }
        Command::Homology { which, a, b, json, matrices } => cmd_homology(which, a, b, json, matrices),
        Command::Verify { suite, n_max, json } => cmd_verify(suite.into(), n_max, json),
    };
    match result {
        Ok((text, ok)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn poly_table_json(kind: &str, table: &StirlingTable<BigInt>) -> Value {
    let mut entries = Vec::new();
    for n in 0..=table.n_max() {
        for k in 0..=n {
            entries.push(json!({ "n": n, "k": k, "value": table.get(n, k) }));
        }
    }
    json!({ "kind": kind, "n_max": table.n_max(), "entries": entries })
}

fn count_table_json(kind: &str, table: &CountTable<BigInt>) -> Value {
    let mut rows = Vec::new();
    for n in 0..=table.n_max() {
        let row: Vec<String> = (0..=n).map(|k| table.get(n, k).to_string()).collect();
        rows.push(json!({ "n": n, "values": row, "row_sum": table.row_sum(n).to_string() }));
    }
    json!({ "kind": kind, "n_max": table.n_max(), "rows": rows })
}

fn cmd_table(kind: TableArg, n_max: usize, format: TableFormat) -> CmdResult {
    let poly = |k: TableKind| StirlingTable::<BigInt>::build(k, n_max);
    let count = |k: CountKind| CountTable::<BigInt>::build(k, n_max);
    let json = format == TableFormat::Json;
    let text = match kind {
        TableArg::SecondQ | TableArg::FirstQ | TableArg::SecondQt | TableArg::FirstQt => {
            let table = poly(match kind {
                TableArg::SecondQ => TableKind::SecondQ,
                TableArg::FirstQ => TableKind::FirstQ,
                TableArg::SecondQt => TableKind::SecondQt,
                _ => TableKind::FirstQtSigned,
            });
            if json {
                pretty(&poly_table_json(table.kind().symbol(), &table))
            } else {
                table.to_csv()
            }
        }
        TableArg::A | TableArg::D | TableArg::Bell => {
            let (kind, name) = match kind {
                TableArg::A => (CountKind::AllowableSecond, "a"),
                TableArg::D => (CountKind::AllowableFirst, "d"),
                _ => (CountKind::ClassicalSecond, "bell"),
            };
            let table = count(kind);
            if json {
                pretty(&count_table_json(name, &table))
            } else {
                table.to_csv()
            }
        }
        TableArg::RgWords | TableArg::AllowableWords => {
            if json {
                return Err("word listings are CSV only; use `enumerate --json` instead".into());
            }
            if matches!(kind, TableArg::RgWords) {
                rg_words_csv(n_max)?
            } else {
                allowable_words_csv(n_max)?
            }
        }
    };
    Ok((text, true))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn cmd_enumerate(kind: EnumerateArg, a: usize, b: usize, json: bool, render: bool) -> CmdResult {
    let mut out = String::new();
    let mut items = Vec::new();
    match kind {
        EnumerateArg::Rg => {
            for w in enumerate_rg(a, b)? {
                let wt: BiPoly = w.wt();
                if json {
                    items.push(json!({ "word": w.to_string(), "partition": w.to_partition().to_string(), "wt": wt }));
                } else {
                    writeln!(out, "{w}\t{}\t{wt}", w.to_partition())?;
                }
            }
        }
        EnumerateArg::Allowable => {
            for w in enumerate_allowable(a, b)? {
                let wt: BiPoly = w.wt_prime()?;
                let pretty = format_q_one_plus_q(w.stat_a(), w.stat_b());
                if json {
                    items.push(json!({ "word": w.to_string(), "wt": wt, "weight": pretty }));
                } else {
                    writeln!(out, "{w}\t{wt}\t{pretty}")?;
                }
            }
        }
        EnumerateArg::Rooks | EnumerateArg::AllowableRooks => {
            let allowable = matches!(kind, EnumerateArg::AllowableRooks);
            let placements = if allowable { enumerate_allowable_rooks(a, b)? } else { enumerate_rooks(a, b)? };
            for t in placements {
                let wt: BiPoly = if allowable { t.wt_rook()? } else { t.q_weight() };
                if json {
                    items.push(json!({ "placement": t, "below": t.below(), "nrow": t.nrow(), "wt": wt }));
                } else {
                    writeln!(out, "{t}\t{wt}")?;
                    if render {
                        out.push_str(&t.render());
                        out.push('\n');
                    }
                }
            }
        }
    }
    if json {
        out = pretty(&Value::Array(items));
    }
    Ok((out, true))
}

fn build(which: Which, a: usize, b: usize) -> qt_stirling::Result<GradedPoset> {
    match which {
        Which::Pi => {
            if b == 0 || b > a {
                return Err(qt_stirling::Error::Parse(format!("Pi(n,k) needs 1 <= k <= n, got ({a},{b})")));
            }
            build_pi(a, b)
        }
        Which::Gamma => {
            if b >= a.max(1) {
                return Err(qt_stirling::Error::Parse(format!("Gamma(m,n) needs n < m, got ({a},{b})")));
            }
            build_gamma(a, b)
        }
    }
}

fn cmd_poset(which: Which, a: usize, b: usize, want_match: bool, decompose: bool, dot: bool, json: bool) -> CmdResult {
    let poset = build(which, a, b)?;
    let matching = if want_match || dot { Some(match_poset(&poset)?) } else { None };
    let decomposition = if decompose { Some(decompose_poset(&poset)?) } else { None };
    if dot {
        return Ok((to_dot(&poset, matching.as_ref(), decomposition.as_ref()), true));
    }
    if json {
        let mut s = to_json(&poset, matching.as_ref(), decomposition.as_ref());
        s.push('\n');
        return Ok((s, true));
    }
    let mut out = String::new();
    writeln!(out, "{}: {} elements, rank {}", poset.kind(), poset.len(), poset.max_rank())?;
    writeln!(out, "rank generating function: {}", poset.rank_genfn::<BigInt>())?;
    for (r, layer) in poset.rank_layers().iter().enumerate() {
        let labels: Vec<String> = layer.iter().map(|&h| poset.payload(h).to_string()).collect();
        writeln!(out, "rank {r}: {}", labels.join(" "))?;
    }
    let mut ok = true;
    if let Some(m) = &matching {
        writeln!(out, "matched pairs: {}", m.pairs().len())?;
        for &(lo, hi) in m.pairs() {
            writeln!(out, "  {} -> {}", poset.payload(lo), poset.payload(hi))?;
        }
        let unmatched: Vec<String> = m.unmatched().iter().map(|&h| poset.payload(h).to_string()).collect();
        writeln!(out, "unmatched: {}", unmatched.join(" "))?;
        writeln!(out, "unmatched generating function: {}", unmatched_genfn::<BigInt>(&poset, m))?;
        let acyclic = check_acyclic(&poset, m);
        ok &= acyclic.acyclic;
        writeln!(out, "acyclic: {}", acyclic.acyclic)?;
    }
    if let Some(d) = &decomposition {
        writeln!(out, "Boolean intervals: {}", d.intervals.len())?;
        for iv in &d.intervals {
            writeln!(out, "  [{}, {}] B_{}", poset.payload(iv.base), poset.payload(iv.top), iv.dim)?;
        }
        writeln!(out, "decomposition weight: {}", d.weight::<BigInt>(&poset))?;
    }
    Ok((out, ok))
}

fn cmd_homology(which: Which, a: usize, b: usize, json: bool, matrices: bool) -> CmdResult {
    let poset = build(which, a, b)?;
    let complex = build_complex::<BigInt>(&poset)?;
    let result = homology(&poset, &complex)?;
    let ok = result.basis_are_cycles && result.basis_independent;
    let text = if json {
        let mut s = homology_json(&poset, &complex, &result, matrices);
        s.push('\n');
        s
    } else {
        homology_text(&poset, &complex, &result)
    };
    Ok((text, ok))
}

fn cmd_verify(suite: Suite, n_max: Option<usize>, json: bool) -> CmdResult {
    let report = run_suite(suite, n_max.unwrap_or(suite.default_n_max()));
    let text = if json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    Ok((text, report.all_passed()))
}
