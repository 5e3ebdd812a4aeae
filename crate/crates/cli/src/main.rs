use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use parafermion::cases::DEFAULT_LEVELS;
use parafermion::{
    classify, parse_vector_literal, render, CaseResult, GenElem, Group, HalfInt, ModuleId,
    Registry, SimpleQuotient, StateName, Status, Symbol, TwistedModule,
};

#[derive(Parser)]
#[command(
    name = "parafermion",
    version,
    about = "Exact checks for parafermion algebras and their twisted modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute registered cases and compare with their golden values.
    Verify {
        /// Case id (repeatable). Defaults to every claim case.
        #[arg(long = "case", conflicts_with = "all")]
        cases: Vec<String>,
        /// Every claim case.
        #[arg(long)]
        all: bool,
        /// Also run the display cases (individual mode identities).
        #[arg(long)]
        displays: bool,
        /// Levels, comma separated or repeated.
        #[arg(long = "k", value_delimiter = ',', default_values_t = DEFAULT_LEVELS)]
        levels: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// List case ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Build the table of irreducible orbifold modules at level k.
    Classify {
        #[arg(long)]
        k: u32,
        /// Write the table as JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Parse a vector literal and optionally act on it with a mode.
    Eval {
        /// e.g. "e(-1)h(-1)|0,0>"
        #[arg(long)]
        expr: String,
        /// "k,i"
        #[arg(long)]
        context: String,
        /// "name,index": a generator (h e f h' e' f') or a named state
        /// (omega, W3, omega_aff, ...) and its mode index.
        #[arg(long)]
        mode: Option<String>,
        /// Use the twisted action; the index may then be a half-integer.
        #[arg(long)]
        twisted: bool,
        /// Reduce modulo the maximal submodule.
        #[arg(long)]
        simple: bool,
    },
    /// Gram matrix of the contravariant form on a degree block.
    Gram {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            cases,
            all: _,
            displays,
            levels,
            format,
            list,
        } => verify(cases, displays, levels, format, list),
        Command::Classify { k, out, format } => {
            let table = classify(k)?;
            if let Some(path) = out {
                std::fs::write(&path, serde_json::to_string_pretty(&table)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
            }
            Ok(
                table.rows.len() == parafermion::ClassificationTable::expected_count(k)
                    && table.weights_match(),
            )
        }
        Command::Eval {
            expr,
            context,
            mode,
            twisted,
            simple,
        } => {
            println!(
                "{}",
                eval(&expr, &context, mode.as_deref(), twisted, simple)?
            );
            Ok(true)
        }
        Command::Gram {
            k,
            i,
            degree,
            format,
        } => {
            let mut q = SimpleQuotient::new(ModuleId::new(k, i)?);
            let block = q.gram_block(degree)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&block.to_json())?),
                Format::Text => {
                    let json = block.to_json();
                    println!(
                        "V({k},{i}) degree {degree}: dimension {}, rank {}",
                        block.basis.len(),
                        block.rank()
                    );
                    let rows = json["matrix"].as_array().cloned().unwrap_or_default();
                    for (b, row) in json["basis"]
                        .as_array()
                        .cloned()
                        .unwrap_or_default()
                        .iter()
                        .zip(rows)
                    {
                        let cells: Vec<&str> = row
                            .as_array()
                            .into_iter()
                            .flatten()
                            .filter_map(|c| c.as_str())
                            .collect();
                        println!("{:<24} {}", b.as_str().unwrap_or_default(), cells.join(" "));
                    }
                }
            }
            Ok(true)
        }
    }
}

fn verify(
    ids: Vec<String>,
    displays: bool,
    levels: Vec<u32>,
    format: Format,
    list: bool,
) -> Result<bool> {
    let registry = Registry::builtin();
    if list {
        for c in registry.cases() {
            let group = if c.group == Group::Claim {
                "claim"
            } else {
                "display"
            };
            println!("{:<48} {group:<8} {}", c.id, c.about);
        }
        return Ok(true);
    }
    let ids: Vec<String> = if ids.is_empty() {
        registry
            .cases()
            .iter()
            .filter(|c| displays || c.group == Group::Claim)
            .map(|c| c.id.clone())
            .collect()
    } else {
        for id in &ids {
            registry.get(id)?;
        }
        ids
    };
    let jobs: Vec<(String, u32)> = ids
        .iter()
        .flat_map(|id| levels.iter().map(move |&k| (id.clone(), k)))
        .collect();
    let mut results: Vec<CaseResult> = Vec::new();
    for r in registry.verify_many(&jobs) {
        results.extend(r?);
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    let (pass, fail, unverified) = (
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Unverified),
    );
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&results)?),
        Format::Text => {
            for r in &results {
                println!("{}", r.to_text());
            }
            println!("{pass} passed, {fail} failed, {unverified} unverified");
        }
    }
    Ok(fail == 0)
}

fn parse_pair(s: &str) -> Result<(&str, &str)> {
    s.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .context("expected two comma-separated values")
}

fn eval(
    expr: &str,
    context: &str,
    mode: Option<&str>,
    twisted: bool,
    simple: bool,
) -> Result<String> {
    let (k, i) = parse_pair(context).context("--context")?;
    let ctx = ModuleId::new(k.parse()?, i.parse()?)?;
    let v = parse_vector_literal(expr, ctx)?;
    let Some(mode) = mode else {
        return Ok(render(&v));
    };
    let (name, index) = parse_pair(mode).context("--mode")?;
    let gen = Symbol::parse(name).map(GenElem::symbol);
    let mut m = if simple {
        TwistedModule::new(ctx)
    } else {
        TwistedModule::verma(ctx)
    };
    let out = if twisted {
        let n: HalfInt = index.parse().map_err(anyhow::Error::msg)?;
        match gen {
            Some(g) => m.twisted_gen_mode(&g, n, &v)?,
            None => {
                let u = m.state(name.parse::<StateName>()?)?;
                m.twisted_mode(&u, n, &v)?
            }
        }
    } else {
        let n: i32 = index
            .parse()
            .context("untwisted mode index must be an integer")?;
        let w = match gen {
            Some(g) => m.space().apply_mode(&g, n, &v)?,
            None => {
                let u = m.state(name.parse::<StateName>()?)?;
                m.space().composite_mode(&u, n, &v)?
            }
        };
        m.reduce(&w)?
    };
    if out.ctx() != ctx {
        bail!("result left the module");
    }
    Ok(render(&out))
}
