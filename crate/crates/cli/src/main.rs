mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qca_core::decider::{normalize, simplify, DEFAULT_SPAN_LIMIT};
use qca_core::format::{parse_lqca, parse_plqca, render_lqca, render_scales};
use qca_core::oracle::{
    column_inner_product, column_inner_product_direct, column_sq_norm, step, window_check,
    OracleConfig, WindowSuperposition, WindowViolation, DEFAULT_RESOURCE_BOUND,
};
use qca_core::plqca::check_theorem_equivalence;
use qca_core::{decide_with, Configuration, DecideOptions, Execution, Interval, Lqca};

use report::{ket, Report};

const RESOURCE_ENV: &str = "QCA_RESOURCE_BOUND";

#[derive(Parser)]
#[command(
    name = "qca",
    version,
    about = "Well-formedness checking for linear quantum cellular automata"
)]
struct Cli {
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide well-formedness of a .lqca file, or of every .lqca file in a directory.
    Check(CheckArgs),
    /// Renormalize every rule to unit norm.
    Normalize {
        file: PathBuf,
        /// Output document; squared scales go to OUTPUT.scales.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fill a sparse neighborhood to an interval.
    Simplify {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SPAN_LIMIT)]
        span_limit: usize,
    },
    /// Brute-force evaluation of the evolution operator.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Partitioned automata.
    #[command(subcommand)]
    Plqca(PlqcaCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CheckArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include witness configurations in the report.
    #[arg(long)]
    emit_witness: bool,
    /// Run the orthogonality check even after a norm failure.
    #[arg(long)]
    full: bool,
    #[arg(long, default_value_t = DEFAULT_SPAN_LIMIT)]
    span_limit: usize,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Squared norm of the column of CONFIG.
    Norm {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
    },
    /// Inner product of the columns of CONFIG and CONFIG2.
    Inner {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        #[arg(long, allow_hyphen_values = true)]
        config2: String,
        /// Sum over every configuration of the interval instead of the product formula.
        #[arg(long)]
        direct: bool,
        /// Summation interval LO:HI for --direct; defaults to the smallest admissible one.
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
    },
    /// One step of evolution from a basis configuration.
    Step {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        /// Input window LO:HI; defaults to the support of CONFIG.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Exhaustive norm and orthogonality check on a window.
    Window {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: u32,
    },
}

#[derive(Subcommand)]
enum PlqcaCommand {
    /// Write the composed automaton as a .lqca document.
    Compose {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare unitarity of Q with the verdict on the composed automaton.
    Check { file: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<Lqca> {
    parse_lqca(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_interval(text: &str) -> Result<Interval> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("interval must look like LO:HI, got `{text}`"))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .with_context(|| format!("bad interval bound `{lo}`"))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .with_context(|| format!("bad interval bound `{hi}`"))?;
    if lo > hi {
        bail!("empty interval `{text}`");
    }
    Ok(Interval::new(lo, hi))
}

fn oracle_config(exec: Execution) -> Result<OracleConfig> {
    let bound = match std::env::var(RESOURCE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{RESOURCE_ENV} must be a non-negative integer"))?,
        Err(_) => DEFAULT_RESOURCE_BOUND,
    };
    Ok(OracleConfig {
        bound,
        execution: exec,
    })
}

fn config(a: &Lqca, spec: &str) -> Result<Configuration> {
    Ok(Configuration::parse(spec, a.alphabet())?)
}

enum Outcome {
    Success,
    Rejected,
}

fn check_one(path: &Path, args: &CheckArgs, opts: &DecideOptions) -> Result<Report> {
    let a = load(path)?;
    let start = Instant::now();
    let verdict = decide_with(&a, opts)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    Ok(Report::new(&a, &verdict, args.emit_witness, elapsed))
}

fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "lqca") && p.is_file());
    files.sort();
    Ok(files)
}

#[cfg(feature = "parallel")]
fn map_files<T: Send>(
    exec: Execution,
    files: &[PathBuf],
    f: impl Fn(&Path) -> T + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    if exec.is_parallel() {
        files.par_iter().map(|p| f(p)).collect()
    } else {
        files.iter().map(|p| f(p)).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn map_files<T: Send>(
    _: Execution,
    files: &[PathBuf],
    f: impl Fn(&Path) -> T + Sync + Send,
) -> Vec<T> {
    files.iter().map(|p| f(p)).collect()
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

fn run_check(args: &CheckArgs, exec: Execution) -> Result<Outcome> {
    let opts = DecideOptions {
        full_report: args.full,
        span_limit: args.span_limit,
        execution: exec,
    };
    if !args.path.is_dir() {
        let report = check_one(&args.path, args, &opts)?;
        match args.format {
            Format::Text => print!("{}", report.render_text(&file_name(&args.path))),
            Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        }
        return Ok(if report.well_formed {
            Outcome::Success
        } else {
            Outcome::Rejected
        });
    }

    let files = batch_files(&args.path)?;
    let inner = DecideOptions {
        execution: Execution::Sequential,
        ..opts
    };
    let results = map_files(exec, &files, |p| check_one(p, args, &inner));
    let (mut ok, mut rejected, mut failed) = (0, 0, 0);
    let mut entries = Vec::new();
    for (path, res) in files.iter().zip(&results) {
        let name = file_name(path);
        match res {
            Ok(r) if r.well_formed => ok += 1,
            Ok(_) => rejected += 1,
            Err(_) => failed += 1,
        }
        match args.format {
            Format::Text => match res {
                Ok(r) => print!("{}", r.render_text(&name)),
                Err(e) => println!("{name}: error: {e:#}"),
            },
            Format::Json => entries.push(match res {
                Ok(r) => serde_json::json!({ "file": name, "report": r }),
                Err(e) => serde_json::json!({ "file": name, "error": format!("{e:#}") }),
            }),
        }
    }
    match args.format {
        Format::Text => println!(
            "{} files: {ok} well-formed, {rejected} not well-formed, {failed} errors",
            files.len()
        ),
        Format::Json => println!("{}", serde_json::to_string_pretty(&entries)?),
    }
    if failed > 0 {
        bail!("{failed} of {} files could not be checked", files.len());
    }
    Ok(if rejected > 0 {
        Outcome::Rejected
    } else {
        Outcome::Success
    })
}

fn run_oracle(cmd: &OracleCommand, exec: Execution) -> Result<Outcome> {
    let cfg = oracle_config(exec)?;
    match cmd {
        OracleCommand::Norm { file, config: c } => {
            let a = load(file)?;
            println!("{}", column_sq_norm(&a, &config(&a, c)?));
        }
        OracleCommand::Inner {
            file,
            config: c1,
            config2,
            direct,
            interval,
        } => {
            let a = load(file)?;
            let (c1, c2) = (config(&a, c1)?, config(&a, config2)?);
            let z = if *direct {
                let nb = a.neighborhood();
                let cover = match interval {
                    Some(t) => parse_interval(t)?,
                    None => qca_core::config::ext(c1.idom(), nb)
                        .hull(&qca_core::config::ext(c2.idom(), nb)),
                };
                column_inner_product_direct(&a, &c1, &c2, cover, &cfg)?
            } else {
                column_inner_product(&a, &c1, &c2)
            };
            println!("{z}");
        }
        OracleCommand::Step {
            file,
            config: c,
            window,
        } => {
            let a = load(file)?;
            let c = config(&a, c)?;
            let window = match window {
                Some(t) => parse_interval(t)?,
                None => c.idom().hull(&Interval::new(0, 0)),
            };
            let out = step(&a, &WindowSuperposition::basis(window, c)?, &cfg)?;
            for (d, z) in out.amps() {
                println!("{z} {}", ket(d, a.alphabet()));
            }
        }
        OracleCommand::Window { file, radius } => {
            let a = load(file)?;
            let ab = a.alphabet();
            match window_check(&a, *radius, &cfg)? {
                None => println!("no violation with support in [-{radius},{radius}]"),
                Some(WindowViolation::Norm { config, sq_norm }) => {
                    println!(
                        "norm violation: column of {:?} has squared norm {sq_norm}",
                        config.render(ab)
                    );
                    return Ok(Outcome::Rejected);
                }
                Some(WindowViolation::Orthogonality {
                    first,
                    second,
                    inner_product,
                }) => {
                    println!(
                        "orthogonality violation: columns of {:?} and {:?} have inner product {inner_product}",
                        first.render(ab),
                        second.render(ab)
                    );
                    return Ok(Outcome::Rejected);
                }
            }
        }
    }
    Ok(Outcome::Success)
}

fn run(cli: Cli) -> Result<Outcome> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match &cli.command {
        Command::Check(args) => run_check(args, exec),
        Command::Normalize { file, output } => {
            let a = load(file)?;
            let n = normalize(&a)?;
            let scales = render_scales(n.base(), n.sq_scales());
            match output {
                Some(out) => {
                    write_or_print(Some(out), &render_lqca(n.base()))?;
                    let mut sidecar = out.clone().into_os_string();
                    sidecar.push(".scales");
                    write_or_print(Some(Path::new(&sidecar)), &scales)?;
                }
                None => {
                    print!("{}", render_lqca(n.base()));
                    if !n.is_exact() {
                        for line in scales.lines().filter(|l| !l.starts_with('#')) {
                            println!("# scale {line}");
                        }
                    }
                }
            }
            Ok(Outcome::Success)
        }
        Command::Simplify {
            file,
            output,
            span_limit,
        } => {
            let a = load(file)?;
            let (s, rep) = simplify(&a, *span_limit)?;
            eprintln!(
                "span {}, expansion factor {}, size {} -> {}",
                rep.span, rep.expansion_factor, rep.original_size, rep.new_size
            );
            write_or_print(output.as_deref(), &render_lqca(&s))?;
            Ok(Outcome::Success)
        }
        Command::Oracle(cmd) => run_oracle(cmd, exec),
        Command::Plqca(PlqcaCommand::Compose { file, output }) => {
            let p = parse_plqca(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            write_or_print(output.as_deref(), &render_lqca(&p.compose()?))?;
            Ok(Outcome::Success)
        }
        Command::Plqca(PlqcaCommand::Check { file }) => {
            let p = parse_plqca(&read(file)?).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let rep = check_theorem_equivalence(
                &p,
                &DecideOptions {
                    execution: exec,
                    ..Default::default()
                },
            )?;
            println!(
                "unitary: {}\nwell-formed: {}\nagree: {}",
                rep.unitary,
                rep.well_formed,
                rep.agree()
            );
            Ok(if rep.unitary {
                Outcome::Success
            } else {
                Outcome::Rejected
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Rejected) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
