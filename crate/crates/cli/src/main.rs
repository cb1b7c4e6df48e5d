use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use derifun::curtis::{curtis_e1, Cell, E1Page};
use derifun::derived::{derham_homology, evaluate, DeRham, DerivedRequest, DerivedResult, Method};
use derifun::parse::{parse_functor, parse_group};
use derifun::suites::{run_suite, Suite, SuiteReport, DEFAULT_SEED};
use derifun::{Budget, Error};

const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "derifun", version, about = "Derived functors of non-additive functors of abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Generic,
    Koszul,
    Decalage,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Generic => Method::Generic,
            MethodArg::Koszul => Method::Koszul,
            MethodArg::Decalage => Method::Decalage,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    C,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    PaperTables,
    Properties,
}

#[derive(Subcommand)]
enum Command {
    /// L_i F(A, n) for 0 <= i <= max-degree
    Derive {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        shift: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Column cap; defaults to DERIFUN_BUDGET_COLS or 5000000
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Homology of the de Rham complex D^n or its dual C^n on Z^rank
    Derham {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, default_value = "c")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// E1 page of the lower central series spectral sequence of M(A, n)
    CurtisE1 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        moore_dim: usize,
        #[arg(long)]
        r_max: usize,
        #[arg(long)]
        q_max: usize,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a built-in check suite
    Check {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ParseError { .. }
        | Error::UnknownName(_)
        | Error::UnsupportedDegree(_)
        | Error::UnsupportedWeight(_)
        | Error::InvalidArgument(_)
        | Error::NotReducible => EXIT_PARSE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Mismatch(_) => EXIT_MISMATCH,
        _ => 1,
    }
}

fn budget(cap: Option<usize>) -> Budget {
    cap.map_or_else(Budget::from_env, Budget::new)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Derive {
            functor,
            group,
            shift,
            max_degree,
            method,
            format,
            budget: cap,
        } => derive(&functor, &group, shift, max_degree, method.into(), format, &budget(cap)),
        Command::Derham {
            n,
            rank,
            variant,
            format,
        } => derham(n, rank, variant, format),
        Command::CurtisE1 {
            group,
            moore_dim,
            r_max,
            q_max,
            budget: cap,
            format,
        } => curtis(&group, moore_dim, r_max, q_max, format, &budget(cap)),
        Command::Check { suite, seed, format } => {
            let suite = match suite {
                SuiteArg::PaperTables => Suite::PaperTables,
                SuiteArg::Properties => Suite::Properties,
            };
            check(suite, seed, format)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn degree_string(r: &DerivedResult, i: usize) -> String {
    r.value(i).map_or_else(|| "unknown".to_string(), ToString::to_string)
}

fn derive(
    functor: &str,
    group: &str,
    shift: usize,
    max_degree: usize,
    method: Method,
    format: Format,
    budget: &Budget,
) -> Result<u8, Error> {
    let f = parse_functor(functor)?;
    let a = parse_group(group)?;
    let start = Instant::now();
    let req = DerivedRequest::new(f.clone(), a.clone(), shift, max_degree).with_method(method);
    let res = evaluate(&req, budget)?;
    let wall = start.elapsed().as_millis() as u64;
    match format {
        Format::Text => {
            let name = f.to_string();
            let name = if name.contains(' ') { format!("({name})") } else { name };
            for i in 0..=max_degree {
                println!("L_{i} {name}({a}, {shift}) = {}", degree_string(&res, i));
            }
            if let Some(b) = res.budget_report.breach {
                println!("# level {} needs {} columns, cap {}", b.level, b.needed, budget.cap());
            }
        }
        Format::Csv => {
            println!("i,value");
            for i in 0..=max_degree {
                println!("{i},{}", degree_string(&res, i));
            }
        }
        Format::Json => {
            let mut degrees = Map::new();
            for i in 0..=max_degree {
                degrees.insert(i.to_string(), Value::String(degree_string(&res, i)));
            }
            let breach = res
                .budget_report
                .breach
                .map_or(Value::Null, |b| json!({"level": b.level, "needed": b.needed}));
            let doc = json!({
                "functor": f.to_string(),
                "group": a.to_string(),
                "shift": shift,
                "method": method.to_string(),
                "degrees": degrees,
                "budget": {
                    "cap": budget.cap(),
                    "max_dimension": res.budget_report.max_dimension,
                    "breach": breach,
                },
                "wall_time_ms": wall,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(if res.is_complete() { 0 } else { EXIT_BUDGET })
}

fn derham(n: usize, rank: usize, variant: Variant, format: Format) -> Result<u8, Error> {
    let (v, name) = match variant {
        Variant::C => (DeRham::C, "C"),
        Variant::D => (DeRham::D, "D"),
    };
    let h = derham_homology(n, rank, v);
    match format {
        Format::Text => {
            for (i, g) in &h {
                println!("H_{i} {name}^{n}(Z^{rank}) = {g}");
            }
        }
        Format::Csv => {
            println!("i,value");
            for (i, g) in &h {
                println!("{i},{g}");
            }
        }
        Format::Json => {
            let homology: Map<String, Value> =
                h.iter().map(|(i, g)| (i.to_string(), Value::String(g.to_string()))).collect();
            let doc = json!({"complex": name, "n": n, "rank": rank, "homology": homology});
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(0)
}

fn cell_json(c: &Cell) -> Value {
    match c {
        Cell::Exact(g) => json!({"kind": "exact", "value": g.to_string()}),
        Cell::GradedPieces(ps) => {
            let pieces: Vec<Value> =
                ps.iter().map(|(d, g)| json!({"piece": d, "value": g.to_string()})).collect();
            json!({"kind": "graded_pieces", "pieces": pieces})
        }
        Cell::Unknown { cap } => json!({"kind": "unknown", "cap": cap}),
    }
}

fn render_grid(page: &E1Page) -> String {
    let mut rows = vec![];
    let mut header = vec!["q".to_string()];
    header.extend((1..=page.r_max).map(|r| format!("r={r}")));
    rows.push(header);
    for q in (0..=page.q_max).rev() {
        let mut row = vec![q.to_string()];
        row.extend((1..=page.r_max).map(|r| page.cell(r, q).render()));
        rows.push(row);
    }
    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> =
            row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).expect("writing to a string");
    }
    out
}

fn curtis(
    group: &str,
    moore_dim: usize,
    r_max: usize,
    q_max: usize,
    format: Format,
    budget: &Budget,
) -> Result<u8, Error> {
    let a = parse_group(group)?;
    let page = curtis_e1(&a, moore_dim, r_max, q_max, budget)?;
    match format {
        Format::Text => {
            println!("E1 page of M({a}, {moore_dim}), entries L_q Lie^r({a}, {})", moore_dim - 1);
            print!("{}", render_grid(&page));
        }
        Format::Csv => {
            println!("r,q,value");
            for ((r, q), c) in &page.grid {
                println!("{r},{q},\"{}\"", c.render());
            }
        }
        Format::Json => {
            let cells: Vec<Value> = page
                .grid
                .iter()
                .map(|((r, q), c)| {
                    let mut v = cell_json(c);
                    v["r"] = json!(r);
                    v["q"] = json!(q);
                    v
                })
                .collect();
            let doc = json!({
                "group": a.to_string(),
                "moore_dim": moore_dim,
                "r_max": r_max,
                "q_max": q_max,
                "budget": budget.cap(),
                "cells": cells,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    let unknown = page.grid.values().any(|c| matches!(c, Cell::Unknown { .. }));
    Ok(if unknown { EXIT_BUDGET } else { 0 })
}

fn check(suite: Suite, seed: u64, format: Format) -> Result<u8, Error> {
    let report: SuiteReport = run_suite(suite, seed, &Budget::from_env());
    match format {
        Format::Text | Format::Csv => {
            for c in &report.checks {
                println!("{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            }
            println!(
                "{} suite, seed {}: {}",
                report.suite,
                report.seed,
                if report.passed() { "all checks passed" } else { "failures" }
            );
        }
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            let doc = json!({
                "suite": report.suite.to_string(),
                "seed": report.seed,
                "passed": report.passed(),
                "checks": checks,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
}
