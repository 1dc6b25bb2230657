use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;

use rho_cert::corollary::CorollaryReport;
use rho_cert::oracle::ROSSER_SCHOENFELD;
use rho_cert::report::{render_corollary, render_crossover, render_table};
use rho_cert::verify::default_sieve_limit;
use rho_cert::{
    build_ledger_with, certify_corollary, check_certificate, find_crossover, parse_rational, run_verify,
    Certificate, CertificateWriter, Error, OutputFormat, PrimeOracle, RunConfig, Strategy, Verdict,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "rhocert",
    version,
    about = "Certify rho(n) <= K n and the derived constant for arbitrary finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Largest n to tabulate (raised to n0 - 1 when the crossover needs it).
    #[arg(long, default_value_t = 265)]
    n_max: u64,
    /// Target constant K; accepts integers, fractions (17/3) and decimals.
    #[arg(long = "K", visible_alias = "k", default_value = "5", value_parser = parse_k)]
    k: BigRational,
    /// Sieve limit for exact pi(x). Defaults to $RHOCERT_SIEVE_LIMIT or 1000000.
    #[arg(long)]
    sieve_limit: Option<u64>,
    /// Lower-bound slope used in the analytic tail (3 is conditional).
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    slope: u32,
    /// text | tsv | records
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,
    /// derived-series | counting-only
    #[arg(long, default_value = "derived-series", value_parser = parse_strategy)]
    strategy: Strategy,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification and write a certificate.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Certificate output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print ledger rows (n, lower, upper, C(n), provenance).
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: Option<u64>,
    },
    /// Solve for the analytic-tail crossover n0.
    Crossover {
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the constant for arbitrary finite groups.
    Corollary {
        #[command(flatten)]
        common: Common,
        /// Use C(n) = this value for every n instead of the ledger.
        #[arg(long, value_parser = parse_k)]
        uniform_c: Option<BigRational>,
    },
    /// Independently re-check a certificate file.
    CheckCert { path: PathBuf },
    /// Dump (m, p_m) pairs, tab-separated.
    Primes {
        #[arg(long)]
        sieve_limit: Option<u64>,
    },
}

fn parse_k(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "derived-series" => Ok(Strategy::DerivedSeries),
        "counting-only" => Ok(Strategy::CountingOnly),
        other => Err(format!("unknown strategy {other:?}")),
    }
}

fn sieve_limit(explicit: Option<u64>) -> rho_cert::Result<u64> {
    explicit.map_or_else(default_sieve_limit, Ok)
}

fn config(common: &Common, out: Option<PathBuf>) -> rho_cert::Result<RunConfig> {
    Ok(RunConfig {
        n_max: common.n_max,
        k: common.k.clone(),
        sieve_limit: sieve_limit(common.sieve_limit)?,
        slope: common.slope,
        strategy: common.strategy,
        output_format: common.format,
        certificate_path: out,
    })
}

fn verify(config: &RunConfig) -> rho_cert::Result<bool> {
    let outcome = match &config.certificate_path {
        Some(path) => {
            let mut writer = CertificateWriter::new(BufWriter::new(File::create(path)?));
            run_verify(config, &mut writer)?
        }
        None => run_verify(config, &mut CertificateWriter::new(io::sink()))?,
    };

    let mut stdout = io::stdout().lock();
    let linear = &outcome.linear;
    writeln!(
        stdout,
        "linear: upper(n) <= {} n for 1 <= n <= {}: {}",
        config.k,
        outcome.ledger.n_max(),
        if linear.all_pass() { "pass" } else { "FAIL" }
    )?;
    writeln!(stdout, "  max C(n) = {} at n = {}", linear.max_ratio, linear.max_ratio_at)?;
    writeln!(stdout, "  equality at n in {:?}", linear.equality_set)?;
    match &outcome.crossover {
        Some(r) => write!(stdout, "{}", render_crossover(r, config.output_format))?,
        None => writeln!(stdout, "crossover: none")?,
    }
    if let Some(c) = &outcome.corollary {
        let constant =
            c.certified_constant().map(|c| c.to_string()).unwrap_or_else(|| "not certified".into());
        writeln!(stdout, "corollary: sup = {} at n = {}; constant {constant}", c.sup_value, c.sup_at)?;
    }
    for check in &outcome.failed_checks {
        writeln!(stdout, "failed: {check}")?;
    }
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    if config.slope != 2 {
        writeln!(stdout, "verdict: {verdict} (conditional on rho(n) >= 3n)")?;
    } else {
        writeln!(stdout, "verdict: {verdict}")?;
    }
    if let Some(path) = &config.certificate_path {
        writeln!(stdout, "certificate: {}", path.display())?;
    }
    Ok(outcome.passed())
}

fn run(cli: Cli) -> rho_cert::Result<bool> {
    match cli.command {
        Command::Verify { common, out } => verify(&config(&common, out)?),
        Command::Table { common, from, to } => {
            let to = to.unwrap_or(common.n_max);
            let oracle = PrimeOracle::new(sieve_limit(common.sieve_limit)?)?;
            let ledger = build_ledger_with(to.max(4), &oracle, common.strategy)?;
            print!("{}", render_table(&ledger, from, to, common.format)?);
            Ok(true)
        }
        Command::Crossover { common } => {
            let r = find_crossover(&common.k, ROSSER_SCHOENFELD.c, common.slope)?;
            print!("{}", render_crossover(&r, common.format));
            Ok(r.verdict == Verdict::Holds)
        }
        Command::Corollary { common, uniform_c } => {
            let crossover = find_crossover(&common.k, ROSSER_SCHOENFELD.c, common.slope)?;
            let report = match uniform_c {
                Some(c) => CorollaryReport::from_ratios(
                    (1..crossover.n0).map(|n| (n, c.clone())),
                    Some((crossover.n0, c.clone().max(common.k.clone()))),
                )?,
                None => {
                    let oracle = PrimeOracle::new(sieve_limit(common.sieve_limit)?)?;
                    let n_max = common.n_max.max(crossover.n0.saturating_sub(1)).max(4);
                    let ledger = build_ledger_with(n_max, &oracle, common.strategy)?;
                    certify_corollary(&ledger, &crossover)?
                }
            };
            print!("{}", render_corollary(&report, common.format));
            Ok(report.certified_constant().is_some())
        }
        Command::CheckCert { path } => {
            let cert = Certificate::parse(BufReader::new(File::open(&path)?))?;
            let report = check_certificate(&cert);
            for failure in &report.failures {
                println!("{failure}");
            }
            println!(
                "{} lines checked, {} failures, footer verdict {:?}",
                report.lines,
                report.failures.len(),
                report.verdict
            );
            println!("{}", if report.passed() { "certificate OK" } else { "certificate REJECTED" });
            Ok(report.passed())
        }
        Command::Primes { sieve_limit: limit } => {
            let oracle = PrimeOracle::new(sieve_limit(limit)?)?;
            oracle.dump_primes(BufWriter::new(io::stdout().lock()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e @ Error::Inconsistency(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INCONSISTENT)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
