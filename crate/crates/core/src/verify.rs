//! End-to-end run: crossover, ledger, linear check, corollary, certificate.

use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::certificate::{
    CertificateWriter, CorollarySummary, CrossoverRecord, Footer, Header, Record, RunVerdict,
};
use crate::corollary::{certify_corollary, CorollaryReport, RHO_G_ONE};
use crate::decimal::{rational_sig12, sig12};
use crate::elimination::Strategy;
use crate::error::{Error, Result};
use crate::ledger::{build_ledger_with, verify_linear, Ledger, LinearReport, Rule};
use crate::oracle::{PrimeOracle, DEFAULT_SIEVE_LIMIT, ROSSER_SCHOENFELD};
use crate::report::OutputFormat;
use crate::tail::{find_crossover, tail_monotone_check, CrossoverResult, Verdict};

/// Environment variable overriding the default sieve limit.
pub const SIEVE_LIMIT_ENV: &str = "RHOCERT_SIEVE_LIMIT";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_max: u64,
    pub k: BigRational,
    pub sieve_limit: u64,
    pub slope: u32,
    pub strategy: Strategy,
    pub output_format: OutputFormat,
    pub certificate_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_max: 265,
            k: BigRational::from_integer(5.into()),
            sieve_limit: DEFAULT_SIEVE_LIMIT,
            slope: 2,
            strategy: Strategy::DerivedSeries,
            output_format: OutputFormat::Text,
            certificate_path: None,
        }
    }
}

/// Default sieve limit, honouring [`SIEVE_LIMIT_ENV`].
pub fn default_sieve_limit() -> Result<u64> {
    match std::env::var(SIEVE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SIEVE_LIMIT_ENV}={v} is not an integer"))),
        Err(_) => Ok(DEFAULT_SIEVE_LIMIT),
    }
}

/// Parses `5`, `17/3` or `4.1` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    let r: BigRational = s.parse().map_err(|_| bad())?;
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub ledger: Ledger,
    pub linear: LinearReport,
    pub crossover: Option<CrossoverResult>,
    pub corollary: Option<CorollaryReport>,
    pub failed_checks: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failed_checks.is_empty()
    }

    pub fn constant(&self) -> Option<BigInt> {
        self.corollary.as_ref().and_then(|c| c.certified_constant())
    }
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Runs the whole verification and streams the certificate into `out`.
///
/// Check failures are reported in [`VerifyOutcome::failed_checks`]; `Err` is
/// reserved for configuration problems and internal inconsistencies.
pub fn run_verify<W: Write>(config: &RunConfig, out: &mut CertificateWriter<W>) -> Result<VerifyOutcome> {
    if config.slope != 2 && config.slope != 3 {
        return Err(Error::InvalidArgument(format!("slope must be 2 or 3, got {}", config.slope)));
    }
    let c = ROSSER_SCHOENFELD.c;
    let oracle = PrimeOracle::new(config.sieve_limit)?;
    let mut failed_checks = Vec::new();

    let crossover = match find_crossover(&config.k, c, config.slope) {
        Ok(r) => Some(r),
        Err(Error::InvalidArgument(msg)) => {
            failed_checks.push(format!("crossover: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let n_max = match &crossover {
        Some(r) => config.n_max.max(r.n0.saturating_sub(1)),
        None => config.n_max,
    };

    out.push(Record::Header(Header {
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: now(),
        sieve_limit: config.sieve_limit,
        n_max,
        k: config.k.to_string(),
        c: c.to_string(),
        slope: config.slope,
        strategy: config.strategy,
    }))?;

    let ledger = build_ledger_with(n_max, &oracle, config.strategy)?;
    let linear = verify_linear(&ledger, &config.k);

    let mut prev_upper = None;
    for (entry, row) in ledger.entries().iter().zip(&linear.rows) {
        let n = entry.n;
        for app in &entry.provenance {
            match app.rule {
                Rule::Base => out.push(Record::BaseValue { n, value: app.value })?,
                Rule::Quadratic => {
                    out.push(Record::RuleApplication { n, rule: app.rule, from: None, value: app.value })?
                }
                Rule::Recursion => out.push(Record::RuleApplication {
                    n,
                    rule: app.rule,
                    from: prev_upper,
                    value: app.value,
                })?,
                Rule::Elimination | Rule::QuadraticImproved => {}
            }
        }
        for w in &entry.witnesses {
            out.push(Record::EliminationWitness(w.clone()))?;
        }
        out.push(Record::BoundEntry { n, lower: entry.lower, seed: entry.seed, upper: entry.upper })?;
        for app in entry.provenance.iter().filter(|a| a.rule == Rule::QuadraticImproved) {
            out.push(Record::RuleApplication { n, rule: app.rule, from: None, value: app.value })?;
        }
        out.push(Record::LinearCheck {
            n,
            upper: row.upper,
            k: config.k.to_string(),
            holds: row.holds,
            equality: row.equality,
        })?;
        prev_upper = Some(entry.upper);
    }

    let failing: Vec<u64> = linear.failures().collect();
    if let Some(first) = failing.first() {
        failed_checks.push(format!(
            "linear: upper(n) > {} n at {} values of n, first n = {first} (upper = {})",
            config.k,
            failing.len(),
            ledger.upper(*first).unwrap_or_default()
        ));
    }

    let mut corollary = None;
    if let Some(r) = &crossover {
        let probe = r.n0.saturating_mul(1000).max(1_000_000);
        let monotone = tail_monotone_check(r.n0, probe, c, r.slope)?;
        out.push(Record::CrossoverResult(CrossoverRecord {
            k: r.k.to_string(),
            c: c.to_string(),
            slope: r.slope,
            n0: r.n0,
            value_at_n0: sig12(r.value_at_n0),
            value_before: r.value_before.map(sig12),
            margin: sig12(r.margin()),
            monotone,
            verdict: r.verdict,
            conditional: r.conditional(),
        }))?;
        if r.verdict != Verdict::Holds {
            failed_checks.push(format!("crossover: value at n0 = {} is {:?}", r.n0, r.verdict));
        }
        if !monotone {
            failed_checks.push("crossover: tail value not decreasing".into());
        }

        if r.verdict == Verdict::Holds {
            let report = certify_corollary(&ledger, r)?;
            for row in &report.rows {
                out.push(Record::CorollaryRow {
                    n: row.n,
                    ratio: row.ratio.to_string(),
                    f: row.f.to_string(),
                    f_decimal: rational_sig12(&row.f),
                })?;
            }
            let (tail_n0, tail_k) = report.tail.clone().expect("ledger report carries a tail");
            let tail_bound = report.tail_bound.clone().expect("ledger report carries a tail");
            let constant = report.certified_constant();
            out.push(Record::CorollaryReport(CorollarySummary {
                sup_value: report.sup_value.to_string(),
                sup_decimal: rational_sig12(&report.sup_value),
                sup_at: report.sup_at,
                tail_n0,
                tail_k: tail_k.to_string(),
                tail_decimal: rational_sig12(&tail_bound),
                tail_bound: tail_bound.to_string(),
                constant: constant.as_ref().map(|c| c.to_string()),
                rho_g_one: RHO_G_ONE,
            }))?;
            if constant.is_none() {
                failed_checks.push("corollary: tail not dominated by computed range".into());
            }
            corollary = Some(report);
        }
    }

    let records = out.body_len();
    out.push(Record::Footer(Footer {
        verdict: if failed_checks.is_empty() { RunVerdict::Pass } else { RunVerdict::Fail },
        failed_checks: failed_checks.clone(),
        equality_set: linear.equality_set.iter().copied().collect(),
        max_ratio: linear.max_ratio.to_string(),
        constant: corollary.as_ref().and_then(|c| c.certified_constant()).map(|c| c.to_string()),
        conditional: config.slope != 2,
        records,
    }))?;

    Ok(VerifyOutcome { ledger, linear, crossover, corollary, failed_checks })
}
