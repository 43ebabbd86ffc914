//! `cwb`: verify and solve Lie conformal algebras given as `.lca` files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cwb_core::driver::{run, DriverError, Report, Request, Task};
use cwb_core::dsl::{parse, AlgebraDoc, Job};
use cwb_core::poly::{parse_rat, Assignment};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "cwb", version, about = "Exact workbench for finite Lie conformal algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input `.lca` file (ignored inside `job` lines).
    file: Option<PathBuf>,
    /// Parameter values, e.g. `a=3/2,b=0`.
    #[arg(long, value_parser = parse_assignment)]
    at: Option<Assignment>,
    /// Also write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Skew-symmetry and Jacobi identity.
    Check(#[command(flatten)] Common),
    /// Second cohomology with trivial coefficients.
    H2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = cwb_core::cohom::DEFAULT_DEGREE)]
        deg: u32,
        /// Skip re-solving at special parameter points.
        #[arg(long)]
        no_explore: bool,
    },
    /// Conformal derivations and the outer quotient.
    Cder {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = cwb_core::cder::DEFAULT_BOUNDS.0)]
        deg_l: u32,
        #[arg(long, default_value_t = cwb_core::cder::DEFAULT_BOUNDS.1)]
        deg_d: u32,
        #[arg(long)]
        no_explore: bool,
    },
    /// Window of the coefficient Lie algebra.
    Coeff {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        window: i64,
        /// Include every bracket in the report.
        #[arg(long)]
        dump: bool,
    },
    /// Rank-1 free modules.
    Modules {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rank1: bool,
        #[arg(long, default_value_t = 4)]
        deg: u32,
    },
    /// Gel'fand–Dorfman bialgebra axioms and the quadratic correspondence.
    Gd(#[command(flatten)] Common),
    /// Solve the axioms for some parameters.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        unknowns: Vec<String>,
    },
    /// Run the document's jobs (or everything) and write one report.
    Report {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Run every command with default options instead of the jobs.
        #[arg(long)]
        all: bool,
    },
}

fn parse_assignment(s: &str) -> Result<Assignment, String> {
    let mut at = Assignment::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("`{part}` is not name=value"))?;
        let v = parse_rat(v.trim()).ok_or_else(|| format!("`{v}` is not a rational number"))?;
        at.insert(k.trim().to_string(), v);
    }
    Ok(at)
}

impl Command {
    /// The typed request and the options that only matter on the command line.
    fn request(&self) -> Option<(Request, &Common)> {
        let (task, common) = match self {
            Command::Check(c) => (Task::Check, c),
            Command::H2 { common, deg, no_explore } => (Task::H2 { deg: *deg, explore: !no_explore }, common),
            Command::Cder { common, deg_l, deg_d, no_explore } => {
                (Task::Cder { deg_l: *deg_l, deg_d: *deg_d, explore: !no_explore }, common)
            }
            Command::Coeff { common, window, dump } => (Task::Coeff { window: *window, dump: *dump }, common),
            Command::Modules { common, deg, .. } => (Task::Modules { deg: *deg }, common),
            Command::Gd(c) => (Task::Gd, c),
            Command::Solve { common, unknowns } => (Task::Solve { unknowns: unknowns.clone() }, common),
            Command::Report { .. } => return None,
        };
        Some((Request { task, at: common.at.clone().unwrap_or_default() }, common))
    }
}

/// Failure that ends the run with a given exit code.
struct Exit(u8, String);

fn load(path: &Path) -> Result<AlgebraDoc, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| Exit(USAGE, format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Exit(USAGE, format!("{}:{e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Exit> {
    std::fs::write(path, text).map_err(|e| Exit(USAGE, format!("cannot write {}: {e}", path.display())))
}

fn job_request(job: &Job) -> Result<Request, Exit> {
    let words = ["job".to_string(), job.command.clone()].into_iter().chain(job.args.iter().cloned());
    let cli = Cli::try_parse_from(words).map_err(|e| Exit(USAGE, format!("job `{}`: {e}", job.command)))?;
    cli.command.request().map(|(r, _)| r).ok_or_else(|| Exit(USAGE, "`report` cannot be a job".into()))
}

fn every_task() -> Vec<Request> {
    let (deg_l, deg_d) = cwb_core::cder::DEFAULT_BOUNDS;
    [
        Task::Check,
        Task::H2 { deg: cwb_core::cohom::DEFAULT_DEGREE, explore: true },
        Task::Cder { deg_l, deg_d, explore: true },
        Task::Coeff { window: 6, dump: false },
        Task::Modules { deg: 4 },
        Task::Gd,
    ]
    .into_iter()
    .map(|task| Request { task, at: Assignment::new() })
    .collect()
}

fn execute(cli: Cli) -> Result<u8, Exit> {
    let (doc, requests, json) = match &cli.command {
        Command::Report { file, output, all } => {
            let doc = load(file)?;
            let requests =
                if *all { every_task() } else { doc.jobs.iter().map(job_request).collect::<Result<_, _>>()? };
            (doc, requests, Some(output.clone()))
        }
        cmd => {
            let (req, common) = cmd.request().expect("not a report");
            let file = common.file.as_ref().ok_or_else(|| Exit(USAGE, "missing input file".into()))?;
            (load(file)?, vec![req], common.json.clone())
        }
    };
    let all = matches!(cli.command, Command::Report { all: true, .. });
    let mut report = Report::new(&doc);
    for req in &requests {
        match run(&doc, req) {
            Ok(job) => report.jobs.push(job),
            // with --all, commands that do not apply to this algebra are skipped
            Err(DriverError::Usage(why)) if all => eprintln!("skipping {}: {why}", req.task.name()),
            Err(e) => return Err(Exit(USAGE, e.to_string())),
        }
    }
    print!("{}", report.summary());
    if let Some(path) = json {
        write(&path, &report.to_json())?;
    }
    Ok(if report.passed() { PASS } else { FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("cwb: {msg}");
            ExitCode::from(code)
        }
    }
}
