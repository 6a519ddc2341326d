//! Command-line front end: insertion, growth diagrams, slides,
//! rectification, rewriting classes, rendering, and the verification
//! suites.
//!
//! Exit codes: 0 on success, 1 for invalid input (parse errors, violated
//! preconditions, exceeded bounds), 2 for broken invariants (malformed
//! grids, failed cross-checks, verification failures).

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bpd_growth::{
    growth_by_insertion, growth_by_rules, insert, jdt_step, knuth_connected, rect, reversed_jdt,
    run_case, run_suite, Biword, Error, Grid, GrowthDiagram, InsertionPath, Permutation, Result,
    VerifyOptions,
};

#[derive(Parser)]
#[command(
    name = "bpd-growth",
    version,
    about = "Row insertion on plactic biwords via bumpless pipe dreams"
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized verification cases
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest column subscript for enumerated universes
    #[arg(long, global = true, default_value_t = 3)]
    max_k: usize,

    /// Largest biword length for enumerated universes
    #[arg(long, global = true, default_value_t = 4)]
    max_len: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Rules,
    Insertion,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Insert the biletters of a biword into a grid, left to right
    Insert {
        /// Biword "a1,a2,.../k1,k2,..."
        #[arg(long)]
        biword: String,
        /// Starting grid file (text rows or JSON); identity if omitted
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Print the insertion path of every biletter
        #[arg(long)]
        trace: bool,
    },
    /// Growth diagram of a biword
    Growth {
        /// Biword "a1,a2,.../k1,k2,..."
        #[arg(long)]
        biword: String,
        /// How to fill the diagram; "both" cross-checks the two ways
        #[arg(long, value_enum, default_value = "rules")]
        method: Method,
    },
    /// Forward slides on the first blank row of a grid
    Jdt {
        /// Grid file (text rows or JSON), "-" for stdin
        #[arg(long)]
        grid: PathBuf,
        /// Number of slides to perform
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Strip the first blank row of a grid by repeated slides
    Rect {
        /// Biword whose image is rectified
        #[arg(long)]
        biword: Option<String>,
        /// Grid file to rectify instead
        #[arg(long)]
        grid: Option<PathBuf>,
    },
    /// Reverse slide pushing the value `a` until it passes row `r`
    Rjdt {
        /// Grid file (text rows or JSON), "-" for stdin
        #[arg(long)]
        grid: PathBuf,
        /// Target row
        #[arg(long)]
        r: usize,
        /// Value whose pipes are crossed
        #[arg(long)]
        a: usize,
    },
    /// Rewriting classes and connectivity of biwords
    Knuth {
        /// Print the rewriting class of this biword
        #[arg(long, conflicts_with = "pair")]
        class: Option<String>,
        /// Decide whether two biwords are connected
        #[arg(long, num_args = 2, value_names = ["Q1", "Q2"])]
        pair: Option<Vec<String>>,
        /// Bound on explored states before giving up
        #[arg(long, default_value_t = 100_000)]
        max: usize,
    },
    /// Run verification suites
    Verify {
        /// Suite name (golden, growth-equivalence, rect-strip, knuth,
        /// commute, roundtrip, structural, paths) or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// Number of extra randomized growth-equivalence cases
        #[arg(long, default_value_t = 200)]
        random_cases: usize,
        /// Re-run the case strings listed in this file, one per line
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Render a grid, or the image of a biword, with its permutation
    Render {
        /// Grid file (text rows or JSON), "-" for stdin
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Biword whose image is rendered
        #[arg(long)]
        biword: Option<String>,
    },
}

fn read_grid(path: &PathBuf) -> Result<Grid> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("bad grid JSON: {e}")))
    } else {
        Grid::parse(trimmed)
    }
}

fn grid_json(g: &Grid) -> serde_json::Value {
    let rows: Vec<String> = g.render().lines().map(str::to_string).collect();
    json!({
        "n": g.size(),
        "rows": rows,
        "perm": g.permutation().map(|p| p.to_string()).unwrap_or_default(),
    })
}

fn path_json(path: &InsertionPath) -> serde_json::Value {
    json!({
        "cells": path.cells.iter().map(|&(r, c)| vec![r, c]).collect::<Vec<_>>(),
        "pipes": path.goes_through().into_iter().collect::<Vec<_>>(),
        "crossed": vec![path.crossed_pair.0, path.crossed_pair.1],
        "terminal": vec![path.terminal_cell.0, path.terminal_cell.1],
    })
}

fn print_grid(g: &Grid, as_json: bool) -> Result<()> {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&grid_json(g)).unwrap());
    } else {
        println!("{}", g.render());
        println!("perm: {}", g.permutation()?);
    }
    Ok(())
}

fn starting_grid(q: &Biword, file: &Option<PathBuf>) -> Result<Grid> {
    match file {
        Some(path) => read_grid(path),
        None => Grid::rothe(
            &Permutation::identity(),
            (q.max_k() + q.len() + 1).max(1),
        ),
    }
}

fn run_insert(q: &Biword, file: &Option<PathBuf>, trace: bool, as_json: bool) -> Result<()> {
    let mut g = starting_grid(q, file)?;
    let mut steps = Vec::new();
    for (a, k) in q.letters() {
        let out = insert(&g, a, k)?;
        if trace && !as_json {
            println!(
                "insert ({a},{k}): path {:?} pipes {:?} crossed {:?}",
                out.path.cells,
                out.path.goes_through(),
                out.path.crossed_pair
            );
        }
        if as_json {
            steps.push(json!({ "a": a, "k": k, "path": path_json(&out.path) }));
        }
        g = out.grid;
    }
    if as_json {
        let mut v = grid_json(&g);
        if trace {
            v["steps"] = json!(steps);
        }
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
        return Ok(());
    }
    print_grid(&g, false)
}

fn diagram_for(q: &Biword, method: Method) -> Result<(GrowthDiagram, bool)> {
    match method {
        Method::Rules => Ok((growth_by_rules(q)?, false)),
        Method::Insertion => Ok((growth_by_insertion(q)?, false)),
        Method::Both => {
            let by_rules = growth_by_rules(q)?;
            let by_insertion = growth_by_insertion(q)?;
            if by_rules != by_insertion {
                return Err(Error::InvariantBreach(
                    "the two growth constructions disagree".into(),
                ));
            }
            Ok((by_rules, true))
        }
    }
}

fn run_growth(q: &Biword, method: Method, as_json: bool) -> Result<()> {
    let (diagram, checked) = diagram_for(q, method)?;
    if as_json {
        let mut v = diagram.to_json()?;
        if checked {
            v["methods_agree"] = json!(true);
        }
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
        return Ok(());
    }
    println!("{}", diagram.render_ascii());
    if checked {
        println!("METHODS AGREE");
    }
    Ok(())
}

fn run_verify(cli: &Cli, suite: &str, random_cases: usize, replay: &Option<PathBuf>) -> Result<()> {
    if let Some(path) = replay {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mut failures = 0usize;
        let mut total = 0usize;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            total += 1;
            match run_case(line) {
                Ok(()) => println!("ok {line}"),
                Err(e) => {
                    failures += 1;
                    println!("FAIL {line} :: {e}");
                }
            }
        }
        println!("replayed {total} cases, {failures} failures");
        if failures > 0 {
            return Err(Error::InvariantBreach(format!(
                "{failures} replayed cases failed"
            )));
        }
        return Ok(());
    }
    let opts = VerifyOptions {
        max_k: cli.max_k,
        max_len: cli.max_len,
        seed: cli.seed,
        random_cases,
    };
    let t0 = std::time::Instant::now();
    let report = run_suite(suite, &opts)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{}", report.render());
    }
    eprintln!("wall: {}ms", t0.elapsed().as_millis());
    if !report.passed() {
        return Err(Error::InvariantBreach(format!(
            "{} verification failures",
            report.failures.len()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Insert {
            biword,
            grid,
            trace,
        } => run_insert(&Biword::parse(biword)?, grid, *trace, cli.json),
        Command::Growth { biword, method } => {
            run_growth(&Biword::parse(biword)?, *method, cli.json)
        }
        Command::Jdt { grid, steps } => {
            let mut g = read_grid(grid)?;
            let mut pops = Vec::new();
            let mut paths = Vec::new();
            for _ in 0..*steps {
                let out = jdt_step(&g)?;
                pops.push(out.pop);
                paths.push(out.path);
                g = out.grid;
            }
            if cli.json {
                let mut v = grid_json(&g);
                v["pops"] = json!(pops.iter().map(|&(i, c)| vec![i, c]).collect::<Vec<_>>());
                v["paths"] = json!(paths
                    .iter()
                    .map(|p| p.iter().map(|&(r, c)| vec![r, c]).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("{}", g.render());
                for (i, (pop, path)) in pops.iter().zip(&paths).enumerate() {
                    println!("step {}: pop {:?} path {:?}", i + 1, pop, path);
                }
                println!("perm: {}", g.permutation()?);
            }
            Ok(())
        }
        Command::Rect { biword, grid } => {
            let g = match (biword, grid) {
                (Some(q), None) => Biword::parse(q)?.phi()?,
                (None, Some(path)) => read_grid(path)?,
                _ => {
                    return Err(Error::Parse(
                        "rect needs exactly one of --biword or --grid".into(),
                    ))
                }
            };
            let out = rect(&g)?;
            if cli.json {
                let mut v = grid_json(&out.grid);
                v["word"] = json!(out.i_set);
                v["pops"] = json!(out.pops.iter().map(|&(i, c)| vec![i, c]).collect::<Vec<_>>());
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("{}", out.grid.render());
                println!("word: {:?}", out.i_set);
                println!("pops: {:?}", out.pops);
                println!("perm: {}", out.grid.permutation()?);
            }
            Ok(())
        }
        Command::Rjdt { grid, r, a } => {
            let g = read_grid(grid)?;
            let out = reversed_jdt(&g, *r, *a)?;
            if cli.json {
                let mut v = grid_json(&out.grid);
                v["path"] = json!(out.path.iter().map(|&(x, y)| vec![x, y]).collect::<Vec<_>>());
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                println!("{}", out.grid.render());
                println!("path: {:?}", out.path);
                println!("perm: {}", out.grid.permutation()?);
            }
            Ok(())
        }
        Command::Knuth { class, pair, max } => match (class, pair) {
            (Some(q), None) => {
                let q = Biword::parse(q)?;
                let cap = cli.max_k.max(q.max_k() + 1);
                let members = q.knuth_class(cap, *max)?;
                if cli.json {
                    let v = json!({
                        "size": members.len(),
                        "cap": cap,
                        "members": members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                } else {
                    println!("size: {} (letters capped at {cap})", members.len());
                    for m in &members {
                        println!("{m}");
                    }
                }
                Ok(())
            }
            (None, Some(pair)) => {
                let q1 = Biword::parse(&pair[0])?;
                let q2 = Biword::parse(&pair[1])?;
                let connected = knuth_connected(&q1, &q2, *max)?;
                if cli.json {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "connected": connected })).unwrap()
                    );
                } else if connected {
                    println!("CONNECTED");
                } else {
                    println!("NOT CONNECTED");
                }
                Ok(())
            }
            _ => Err(Error::Parse(
                "knuth needs exactly one of --class or --pair".into(),
            )),
        },
        Command::Verify {
            suite,
            random_cases,
            replay,
        } => run_verify(cli, suite, *random_cases, replay),
        Command::Render { grid, biword } => {
            let g = match (grid, biword) {
                (Some(path), None) => read_grid(path)?,
                (None, Some(q)) => Biword::parse(q)?.phi()?,
                _ => {
                    return Err(Error::Parse(
                        "render needs exactly one of --grid or --biword".into(),
                    ))
                }
            };
            print_grid(&g, cli.json)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
