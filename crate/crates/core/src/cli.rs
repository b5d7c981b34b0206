//! The `klein` command line.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage or parse error.

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    admissible_pairs, family_c_count, orbit_generator, pair_density, pairs_to_csv, search_degree,
    ClassificationReport, ClassifyError, SearchConfig, DEFAULT_SEARCH_CAP, MAX_SEARCH_DEGREE,
};
use crate::equivariance::phi;
use crate::ideal::{GradedIdeal, IdealError, RepType};
use crate::poly::HomogPoly;
use crate::selftest::{self, DEFAULT_CASES, DEFAULT_SEED};
use crate::{DEFAULT_DEGREE_CAP, MAX_DEGREE_CAP};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "klein", version, about = "Steenrod-closed C3-invariant parameter ideals in F2[a,b]")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized suites.
    #[arg(long, global = true, env = "KLEIN_SEED")]
    pub seed: Option<u64>,
    /// Largest accepted degree: parsed generators default to 64, searches to 20.
    #[arg(long, global = true, env = "KLEIN_DEGREE_CAP")]
    pub degree_cap: Option<u32>,
    /// Worker threads for `search`.
    #[arg(long, global = true, env = "KLEIN_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Flags and certificates for the ideal generated by the given forms.
    CheckIdeal {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Orbits whose ideal is a Steenrod-closed parameter ideal, per degree.
    Search {
        /// `N` or an inclusive range `A..B`.
        #[arg(long)]
        degrees: DegreeRange,
        /// Scan every `v` with `p(v) = (1, 0)` instead of the orbit-sum kernel slice.
        #[arg(long)]
        no_kernel_prefilter: bool,
    },
    /// Admissible degree pairs with both entries at most the bound.
    Admissible {
        #[arg(long)]
        bound: u64,
    },
    /// Share of the grid `[0, r]^2` covered by admissible pairs.
    Density {
        #[arg(long = "r", value_delimiter = ',', default_values_t = [64u64, 256, 1024])]
        r: Vec<u64>,
    },
    /// Seeded property suites.
    Selftest {
        /// Run only these suites.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub start: u32,
    pub end: u32,
}

impl DegreeRange {
    pub fn iter(&self) -> RangeInclusive<u32> {
        self.start..=self.end
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("expected a degree, got {t:?}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if start == 0 || start > end {
            return Err(format!("empty or zero-based degree range {s:?}"));
        }
        Ok(DegreeRange { start, end })
    }
}

/// Resolved settings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub degree_cap: Option<u32>,
    pub worker_count: usize,
    pub output_format: Format,
    pub seed: u64,
}

impl Config {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, CliError> {
        let worker_count = match args.workers {
            Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if let Some(cap) = args.degree_cap {
            if cap == 0 || cap > MAX_DEGREE_CAP {
                return Err(CliError::Usage(format!(
                    "--degree-cap must be in 1..={MAX_DEGREE_CAP}"
                )));
            }
        }
        Ok(Config {
            degree_cap: args.degree_cap,
            worker_count,
            output_format: args.format,
            seed: args.seed.unwrap_or(DEFAULT_SEED),
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Whether every checked property held. Only `selftest` reports `false`.
pub type Outcome = bool;

#[derive(Debug, Serialize)]
pub struct GeneratorCertificate {
    pub generator: HomogPoly,
    /// Coefficients `c_i` with `Sq(g) = sum c_i g_i`.
    pub sq: Option<Vec<String>>,
    /// Coefficients `c_i` with `phi(g) = sum c_i g_i`.
    pub phi: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct CheckIdealReport {
    pub generators: Vec<HomogPoly>,
    pub minimal_generators: Vec<HomogPoly>,
    pub parameter: bool,
    pub c3_invariant: bool,
    pub steenrod_closed: bool,
    /// Present for invariant parameter ideals.
    pub rep_type: Option<RepType>,
    pub orbit_generated: bool,
    pub orbit_generator: Option<HomogPoly>,
    pub certificates: Vec<GeneratorCertificate>,
}

pub fn check_ideal(generators: &[String], cap: u32) -> Result<CheckIdealReport, CliError> {
    let ideal = GradedIdeal::parse_with_cap(generators, cap)?;
    let parameter = match ideal.is_parameter_ideal() {
        Ok(p) => p,
        Err(IdealError::GeneratorCount { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    let c3_invariant = ideal.is_c3_invariant();
    let closure = ideal.steenrod_closure();
    let rep_type = if parameter && c3_invariant {
        Some(ideal.rep_type()?)
    } else {
        None
    };
    let orbit_generator = orbit_generator(&ideal);
    let certificates = ideal
        .generators()
        .iter()
        .zip(&closure.certificates)
        .map(|(g, sq)| GeneratorCertificate {
            generator: g.clone(),
            sq: sq.as_ref().map(|c| c.to_strings()),
            phi: ideal.contains(&phi(g).to_bipoly()).map(|c| c.to_strings()),
        })
        .collect();
    Ok(CheckIdealReport {
        generators: ideal.generators().to_vec(),
        minimal_generators: ideal.minimal_generators(),
        parameter,
        c3_invariant,
        steenrod_closed: closure.closed,
        rep_type,
        orbit_generated: orbit_generator.is_some(),
        orbit_generator,
        certificates,
    })
}

#[derive(Debug, Serialize)]
pub struct DensityRow {
    pub r: u64,
    pub ordered_pairs: u64,
    pub grid: u64,
    pub density: String,
    pub density_f64: f64,
    pub family_c: u64,
}

pub fn density_row(r: u64) -> DensityRow {
    let d: Ratio<u64> = pair_density(r);
    let grid = (r + 1) * (r + 1);
    DensityRow {
        r,
        ordered_pairs: d.numer() * (grid / d.denom()),
        grid,
        density: format!("{}/{}", d.numer(), d.denom()),
        density_f64: *d.numer() as f64 / *d.denom() as f64,
        family_c: family_c_count(r),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_check_ideal(out: &mut dyn Write, report: &CheckIdealReport, format: Format) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(report)?)?,
        Format::Csv => {
            writeln!(out, "generators,parameter,c3_invariant,steenrod_closed,rep_type,orbit_generated")?;
            let gens: Vec<String> = report.generators.iter().map(ToString::to_string).collect();
            let rep = report.rep_type.map_or("", |r| match r {
                RepType::Trivial => "trivial",
                RepType::Nontrivial => "nontrivial",
            });
            writeln!(
                out,
                "\"{}\",{},{},{},{},{}",
                gens.join(";"),
                report.parameter,
                report.c3_invariant,
                report.steenrod_closed,
                rep,
                report.orbit_generated
            )?;
        }
        Format::Text => {
            let gens: Vec<String> = report.generators.iter().map(ToString::to_string).collect();
            writeln!(out, "ideal <{}>", gens.join(", "))?;
            writeln!(out, "  parameter        {}", yes_no(report.parameter))?;
            writeln!(out, "  c3-invariant     {}", yes_no(report.c3_invariant))?;
            writeln!(out, "  steenrod-closed  {}", yes_no(report.steenrod_closed))?;
            let rep = match report.rep_type {
                Some(RepType::Trivial) => "trivial",
                Some(RepType::Nontrivial) => "nontrivial",
                None => "-",
            };
            writeln!(out, "  rep-type         {rep}")?;
            match &report.orbit_generator {
                Some(z) => writeln!(out, "  orbit-generated  yes (z = {z})")?,
                None => writeln!(out, "  orbit-generated  no")?,
            }
            writeln!(out, "certificates")?;
            for c in &report.certificates {
                let combo = |coeffs: &Option<Vec<String>>| match coeffs {
                    Some(cs) => cs
                        .iter()
                        .zip(&gens)
                        .map(|(c, g)| format!("({c})*({g})"))
                        .collect::<Vec<_>>()
                        .join(" + "),
                    None => "not in J".to_string(),
                };
                writeln!(out, "  Sq({}) = {}", c.generator, combo(&c.sq))?;
                writeln!(out, "  phi({}) = {}", c.generator, combo(&c.phi))?;
            }
        }
    }
    Ok(())
}

fn write_search(out: &mut dyn Write, reports: &[ClassificationReport], format: Format) -> Result<(), CliError> {
    let forms = |r: &ClassificationReport| {
        r.survivor_forms()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?,
        Format::Csv => {
            writeln!(out, "degree,candidates,after_kernel,after_coprime,survivor_count,survivors")?;
            for r in reports {
                writeln!(
                    out,
                    "{},{},{},{},{},\"{}\"",
                    r.degree,
                    r.candidates,
                    r.after_kernel,
                    r.after_coprime,
                    r.survivors.len(),
                    forms(r).join(";")
                )?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:>6} {:>12} {:>12} {:>13}  survivors",
                "degree", "candidates", "after_kernel", "after_coprime"
            )?;
            for r in reports {
                let s = forms(r);
                writeln!(
                    out,
                    "{:>6} {:>12} {:>12} {:>13}  {}",
                    r.degree,
                    r.candidates,
                    r.after_kernel,
                    r.after_coprime,
                    if s.is_empty() { "-".to_string() } else { s.join(", ") }
                )?;
            }
        }
    }
    Ok(())
}

/// Run a parsed command, writing its report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let config = Config::from_args(&cli.global)?;
    let format = config.output_format;
    match &cli.command {
        Command::CheckIdeal { generators } => {
            let cap = config.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
            let report = check_ideal(generators, cap)?;
            write_check_ideal(out, &report, format)?;
        }
        Command::Search {
            degrees,
            no_kernel_prefilter,
        } => {
            let search_config = SearchConfig {
                degree_cap: config.degree_cap.unwrap_or(DEFAULT_SEARCH_CAP).min(MAX_SEARCH_DEGREE),
                workers: config.worker_count,
                kernel_prefilter: !no_kernel_prefilter,
            };
            let mut reports = Vec::new();
            for n in degrees.iter() {
                let report = search_degree(n, &search_config)?;
                log::info!(
                    "degree {n}: {} survivors in {} ms",
                    report.survivors.len(),
                    report.elapsed_ms
                );
                reports.push(report);
            }
            write_search(out, &reports, format)?;
        }
        Command::Admissible { bound } => {
            let pairs = admissible_pairs(*bound);
            match format {
                Format::Csv => write!(out, "{}", pairs_to_csv(&pairs))?,
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&pairs)?)?,
                Format::Text => {
                    writeln!(out, "{:>8} {:>8}  families", "m+1", "n+1")?;
                    for p in &pairs {
                        let fam: Vec<String> = p.families.iter().map(ToString::to_string).collect();
                        writeln!(out, "{:>8} {:>8}  {}", p.low, p.high, fam.join("|"))?;
                    }
                }
            }
        }
        Command::Density { r } => {
            let rows: Vec<DensityRow> = r.iter().map(|&r| density_row(r)).collect();
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => {
                    writeln!(out, "r,ordered_pairs,grid,density,family_c")?;
                    for row in &rows {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            row.r, row.ordered_pairs, row.grid, row.density, row.family_c
                        )?;
                    }
                }
                Format::Text => {
                    writeln!(
                        out,
                        "{:>6} {:>8} {:>10} {:>12}  family_c",
                        "r", "pairs", "grid", "density"
                    )?;
                    for row in &rows {
                        writeln!(
                            out,
                            "{:>6} {:>8} {:>10} {:>12.6}  {}",
                            row.r, row.ordered_pairs, row.grid, row.density_f64, row.family_c
                        )?;
                    }
                }
            }
        }
        Command::Selftest { suite, cases, list } => {
            if *list {
                for s in selftest::SUITES {
                    writeln!(out, "{:<20} {}", s.name, s.about)?;
                }
                return Ok(true);
            }
            let names = selftest::suite_names();
            if let Some(bad) = suite.iter().find(|s| !names.contains(&s.as_str())) {
                return Err(CliError::Usage(format!(
                    "unknown suite {bad:?}; known suites: {}",
                    names.join(", ")
                )));
            }
            let report = selftest::run_with(config.seed, *cases, suite, &crate::steenrod::total_sq);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
                Format::Csv => {
                    writeln!(out, "suite,checks,failures")?;
                    for s in &report.suites {
                        writeln!(out, "{},{},{}", s.name, s.checks, s.failures)?;
                    }
                }
                Format::Text => {
                    writeln!(out, "seed {}", report.seed)?;
                    for s in &report.suites {
                        let status = if s.passed() { "PASS" } else { "FAIL" };
                        writeln!(out, "{status} {:<20} {:>6} checks", s.name, s.checks)?;
                        if let Some(f) = &s.first_failure {
                            writeln!(out, "     {} failures, first: {f}", s.failures)?;
                        }
                    }
                }
            }
            if format != Format::Text {
                eprintln!("seed {}", report.seed);
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

/// Parse `std::env::args`, run, and map the result to an exit code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_PROPERTY_FAILURE),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
