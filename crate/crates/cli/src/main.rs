//! `lrh`: command-line front end for the cohomology engine.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lrh_core::ah::{ah_hh_dims, Window};
use lrh_core::hochschild::Koszul;
use lrh_core::par::Exec;
use lrh_core::pbw::{Algebra, ArrangementSpec};
use lrh_core::poly::UPoly;
use lrh_core::ratmat::{parse_rational, Rational};
use lrh_core::slices::Truncation;
use lrh_core::spectral::{lines, three_lines};
use lrh_core::{selftest, Error};

use render::{CohomologyOutput, Render};

const EXIT_MISMATCH: u8 = 1;
const EXIT_NOT_STABLE: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// The E₂ page of the reference three-line arrangement, rows `q`, columns `p`.
const THREE_LINES_E2: [[usize; 3]; 3] = [[1, 3, 2], [0, 3, 3], [1, 1, 0]];
const THREE_LINES_SERIES: [usize; 4] = [1, 3, 6, 4];

#[derive(Parser, Debug)]
#[command(name = "lrh", version, about = "Hochschild and Lie–Rinehart cohomology of differential operators on line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long = "json", value_name = "PATH", global = true)]
    json_path: Option<PathBuf>,
    /// Worker threads; 1 runs everything sequentially, 0 lets rayon decide.
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// E-degree bound N₀ of the first truncated evaluation.
    #[arg(long = "e-max", env = "LRH_E_MAX", default_value_t = 6, global = true)]
    e_max: u32,
    /// Extra E-degree allowed for boundary sources.
    #[arg(long, default_value_t = 3, global = true)]
    slack: u32,
    /// How many increments of N the stabilization sweep may take.
    #[arg(long, default_value_t = 12, global = true)]
    sweep: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The arrangement x·y·(y + t x): E₂ table, HH³ bound, Hilbert series, outer derivations.
    ThreeLines {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Any central arrangement: E₂ table and series under the degeneration hypothesis.
    Lines(LinesArgs),
    /// The subalgebra A_h of the Weyl algebra in a bidegree window.
    Ah {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 8)]
        xmax: u32,
        #[arg(long, default_value_t = 6)]
        ymax: u32,
    },
    /// Invariant suite and reference numbers.
    Selftest,
    /// A single Hochschild cohomology slice H^q(S,U)_i.
    Cohomology {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[command(flatten)]
        lines: LinesArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct LinesArgs {
    /// Number of lines; the slopes default to 0, 1, …, ℓ−2.
    #[arg(long)]
    l: Option<u32>,
    /// Three lines x·y·(y + t x).
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Comma-separated slopes of the lines y + t x = 0, starting with 0; x = 0 is always present.
    #[arg(long, allow_hyphen_values = true)]
    slopes: Option<String>,
}

impl LinesArgs {
    fn spec(&self) -> Result<ArrangementSpec, Error> {
        match (&self.l, &self.t, &self.slopes) {
            (Some(l), _, _) => ArrangementSpec::generic(*l),
            (None, Some(t), _) => ArrangementSpec::three_lines(parse_rational(t)?),
            (None, None, Some(s)) => {
                let slopes = s
                    .split(',')
                    .map(|p| parse_rational(p.trim()))
                    .collect::<Result<Vec<Rational>, _>>()?;
                ArrangementSpec::new(slopes)
            }
            (None, None, None) => Err(Error::InvalidSpec("give --l, --t or --slopes".into())),
        }
    }
}

impl Common {
    fn truncation(&self) -> Truncation {
        Truncation {
            e_start: self.e_max,
            slack: self.slack,
            e_max: self.e_max + self.sweep,
        }
    }

    fn exec(&self) -> Exec {
        if self.jobs == 1 {
            return Exec::Sequential;
        }
        if self.jobs > 1 {
            // A second initialisation only happens in-process (tests); the first pool wins.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build_global();
        }
        Exec::Parallel
    }

    fn emit<T: Serialize + Render>(&self, report: &T) -> Result<(), Error> {
        let json = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
        match self.format {
            Format::Text => print!("{}", report.text()),
            Format::Json => println!("{json}"),
            Format::Csv => print!("{}", report.csv()),
        }
        if let Some(path) = &self.json_path {
            std::fs::write(path, json + "\n")
                .map_err(|e| Error::InvalidSpec(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let c = &cli.common;
    let (trunc, exec) = (c.truncation(), c.exec());
    match &cli.command {
        Command::ThreeLines { t } => {
            let spec = ArrangementSpec::three_lines(parse_rational(t)?)?;
            let run = three_lines(&spec, trunc, exec)?;
            c.emit(&run.report)?;
            let reproduced = run.report.e2 == THREE_LINES_E2
                && run.report.hilbert == THREE_LINES_SERIES
                && run.report.degenerate
                && run.outer.count == 3
                && run.outer.abelian;
            Ok(if reproduced { 0 } else { EXIT_MISMATCH })
        }
        Command::Lines(args) => {
            let (_, report) = lines(&args.spec()?, trunc, exec)?;
            c.emit(&report)?;
            Ok(0)
        }
        Command::Ah { h, xmax, ymax } => {
            let h = UPoly::parse(h)?;
            let report = ah_hh_dims(&h, Window::new(&h, *xmax, *ymax), exec)?;
            c.emit(&report)?;
            Ok(if report.matches { 0 } else { EXIT_MISMATCH })
        }
        Command::Selftest => {
            let report = selftest::run(trunc, exec);
            c.emit(&report)?;
            Ok(if report.passed { 0 } else { EXIT_MISMATCH })
        }
        Command::Cohomology { q, i, lines } => {
            let spec = lines.spec()?;
            if *q > 2 {
                return Err(Error::InvalidSpec(format!("q = {q}: the Koszul complex has length 2")));
            }
            let slopes = spec.slopes().iter().map(lrh_core::ratmat::format_rational).collect();
            let l = spec.line_count();
            let report = Koszul::new(Algebra::lines(spec)).cohomology(*q, *i, trunc, exec)?;
            c.emit(&CohomologyOutput {
                l,
                slopes,
                cohomology: report.doc(),
                truncation: trunc,
            })?;
            Ok(0)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotStable { .. } => EXIT_NOT_STABLE,
        Error::InvalidSpec(_) | Error::Parse(_) | Error::WindowTooSmall(_) => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lrh: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
