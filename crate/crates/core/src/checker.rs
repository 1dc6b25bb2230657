//! Independent re-check of a certificate.
//!
//! Nothing here calls into the elimination engine, the ledger builder, the
//! tail solver or the corollary evaluator. Each record's arithmetic is redone
//! from its own fields against a freshly sieved prime table, and the footer is
//! recomputed from the records that precede it.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::certificate::{Certificate, CorollarySummary, CrossoverRecord, Header, Record, RunVerdict};
use crate::elimination::{EliminationWitness, Strategy};
use crate::ledger::Rule;
use crate::oracle::PrimeOracle;
use crate::tail::Verdict;

/// Refuse to sieve past this when replaying a certificate.
pub const MAX_REPLAY_SIEVE: u64 = 200_000_000;

const BASE: [u64; 4] = [2, 5, 8, 12];
const TOLERANCE: f64 = 1e-9;
/// Larger `n` or `k` would overflow the replayed arithmetic.
const MAX_INDEX: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    /// 1-based line number in the certificate.
    pub line: usize,
    pub kind: String,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} ({}): {}", self.line, self.kind, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub failures: Vec<CheckFailure>,
    pub verdict: Option<RunVerdict>,
    pub lines: usize,
}

impl CheckReport {
    /// Every record checks and the footer claims a pass.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.verdict == Some(RunVerdict::Pass)
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn padella(n: u64, c: &BigRational) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(n));
    c * BigRational::from_integer(BigInt::from(28)) + c * c / (&n * &n) + c / (&n * &n * &n)
}

fn tail_at(n: u64, c: f64, slope: u32) -> Option<f64> {
    let x = slope as f64 * n as f64;
    if x < 2.0 {
        return None;
    }
    let d = 1.0 - c / x.ln();
    (d > 0.0).then(|| 4.0 / d)
}

fn close(recorded: &str, actual: f64) -> bool {
    recorded.parse::<f64>().map(|r| (r - actual).abs() <= TOLERANCE * actual.abs().max(1.0)).unwrap_or(false)
}

struct Checker<'a> {
    header: &'a Header,
    k: BigRational,
    c: f64,
    oracle: Option<PrimeOracle>,
    failures: Vec<CheckFailure>,
    line: usize,
    kind: &'static str,

    uppers: Vec<u64>,
    base: Option<u64>,
    quadratic: Option<u64>,
    recursion: Option<u64>,
    witnesses: Vec<&'a EliminationWitness>,

    linear_checked: BTreeSet<u64>,
    linear_all_hold: bool,
    equality_set: Vec<u64>,
    max_ratio: Option<BigRational>,

    crossover: Option<&'a CrossoverRecord>,
    crossover_ok: bool,
    corollary_rows: Vec<(u64, BigRational)>,
    corollary: Option<&'a CorollarySummary>,
    constant: Option<String>,
}

impl<'a> Checker<'a> {
    fn fail(&mut self, message: impl Into<String>) {
        self.failures.push(CheckFailure {
            line: self.line,
            kind: self.kind.to_string(),
            message: message.into(),
        });
    }

    fn expect(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }

    fn pi(&mut self, x: i64) -> Option<u64> {
        let result = match &self.oracle {
            Some(o) => o.pi(x).map_err(|e| e.to_string()),
            None => Err("no prime table available".to_string()),
        };
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(format!("cannot evaluate pi({x}): {e}"));
                None
            }
        }
    }

    fn next_n(&self) -> u64 {
        self.uppers.len() as u64 + 1
    }

    fn expect_current(&mut self, n: u64) {
        let next = self.next_n();
        self.expect(n == next, || format!("record for n = {n} out of order, expected n = {next}"));
    }

    fn record(&mut self, record: &'a Record) {
        let oversized = match record {
            Record::EliminationWitness(w) => w.n > MAX_INDEX || w.k > MAX_INDEX,
            other => other.n().is_some_and(|n| n > MAX_INDEX),
        };
        if oversized {
            self.fail(format!("index out of replayable range (max {MAX_INDEX})"));
            return;
        }
        match record {
            Record::Header(_) => self.fail("header is only allowed on the first line"),
            Record::Footer(_) => self.fail("footer is only allowed on the last line"),
            Record::BaseValue { n, value } => {
                self.expect_current(*n);
                match BASE.get((*n as usize).wrapping_sub(1)) {
                    Some(&known) => {
                        self.expect(*value == known, || format!("rho({n}) = {known}, recorded {value}"))
                    }
                    None => self.fail(format!("no exact value is known for n = {n}")),
                }
                self.base = Some(*value);
            }
            Record::RuleApplication { n, rule, from, value } => self.rule(*n, *rule, *from, *value),
            Record::EliminationWitness(w) => {
                self.expect_current(w.n);
                self.witness(w);
                self.witnesses.push(w);
            }
            Record::BoundEntry { n, lower, seed, upper } => self.bound(*n, *lower, *seed, *upper),
            Record::LinearCheck { n, upper, k, holds, equality } => {
                let last = self.uppers.len() as u64;
                self.expect(*n == last, || format!("linear check for n = {n} must follow its bound entry"));
                self.expect(*k == self.header.k, || {
                    format!("K = {k} differs from header K = {}", self.header.k)
                });
                let Some(&recorded_upper) = self.uppers.get((*n as usize).wrapping_sub(1)) else {
                    return;
                };
                self.expect(*upper == recorded_upper, || {
                    format!("upper {upper} differs from bound entry {recorded_upper}")
                });
                let r = ratio(recorded_upper, *n);
                let (h, e) = (r <= self.k, r == self.k);
                self.expect(*holds == h, || format!("holds recorded {holds}, recomputed {h}"));
                self.expect(*equality == e, || format!("equality recorded {equality}, recomputed {e}"));
                self.linear_all_hold &= h;
                if e {
                    self.equality_set.push(*n);
                }
                if self.max_ratio.as_ref().is_none_or(|m| r > *m) {
                    self.max_ratio = Some(r);
                }
                self.linear_checked.insert(*n);
            }
            Record::CrossoverResult(x) => self.crossover(x),
            Record::CorollaryRow { n, ratio: r, f, f_decimal } => {
                let expected_n = self.corollary_rows.last().map_or(2, |(m, _)| m + 1);
                self.expect(*n == expected_n, || format!("corollary row n = {n}, expected {expected_n}"));
                let Some(&upper) = self.uppers.get((*n as usize).wrapping_sub(1)) else {
                    self.fail(format!("no bound entry for n = {n}"));
                    return;
                };
                let c = ratio(upper, *n);
                self.expect(*r == c.to_string(), || format!("C({n}) recorded {r}, recomputed {c}"));
                let value = padella(*n, &c);
                self.expect(*f == value.to_string(), || format!("f({n}) recorded {f}, recomputed {value}"));
                let approx = value.to_f64().unwrap_or(f64::NAN);
                self.expect(close(f_decimal, approx), || {
                    format!("decimal {f_decimal} does not match {approx}")
                });
                self.corollary_rows.push((*n, value));
            }
            Record::CorollaryReport(s) => self.corollary(s),
        }
    }

    fn rule(&mut self, n: u64, rule: Rule, from: Option<u64>, value: u64) {
        match rule {
            Rule::Quadratic => {
                self.expect_current(n);
                if n < 4 {
                    self.fail(format!("quadratic rule not valid at n = {n}"));
                } else {
                    let q = n * (n + 3) / 2 - 2;
                    self.expect(value == q, || format!("n(n+3)/2 - 2 = {q}, recorded {value}"));
                }
                self.quadratic = Some(value);
            }
            Rule::Recursion => {
                self.expect_current(n);
                let prev = self.uppers.last().copied();
                self.expect(from == prev, || {
                    format!(
                        "recursion source {from:?} differs from upper({}) = {prev:?}",
                        n.saturating_sub(1)
                    )
                });
                if let Some(p) = prev {
                    self.expect(value == p + n + 1, || {
                        format!("{p} + {n} + 1 = {}, recorded {value}", p + n + 1)
                    });
                }
                self.recursion = Some(value);
            }
            Rule::QuadraticImproved => {
                let last = self.uppers.len() as u64;
                self.expect(n == last, || {
                    format!("improved quadratic check for n = {n} must follow its bound entry")
                });
                if n < 9 {
                    self.fail(format!("improved quadratic bound not valid at n = {n}"));
                    return;
                }
                let q = n * (n + 3) / 2 - 9;
                self.expect(value == q, || format!("n(n+3)/2 - 9 = {q}, recorded {value}"));
                if let Some(&u) = self.uppers.last() {
                    self.expect(u <= q, || format!("upper {u} exceeds n(n+3)/2 - 9 = {q}"));
                }
            }
            Rule::Base | Rule::Elimination => {
                self.fail(format!("rule {} is not recorded as a rule application", rule.name()))
            }
        }
    }

    fn witness(&mut self, w: &EliminationWitness) {
        let (n, k) = (w.n as i64, w.k as i64);
        self.expect(w.n >= 5, || format!("elimination needs n >= 5, got {}", w.n));
        self.expect(k > 2 * n, || format!("candidate {k} not above 2n = {}", 2 * n));
        self.expect(w.strategy == self.header.strategy, || {
            format!("strategy {} differs from header", w.strategy)
        });
        let m = k - 4 * n - 1;
        self.expect(w.m_plum == m, || format!("k - 4n - 1 = {m}, recorded {}", w.m_plum));
        let base = k - 3 * n;
        let l = w.threshold;

        let search = w.strategy == Strategy::DerivedSeries && m >= 0;
        if !search {
            self.expect(l == -1, || format!("threshold must be -1 without a search, recorded {l}"));
            self.expect(w.pi_at_threshold.is_none() && w.pi_past_threshold.is_none(), || {
                "no pi probes expected without a search".into()
            });
        } else {
            self.expect(l >= -1, || format!("threshold {l} below -1"));
            if l >= 0 {
                let actual = self.pi(base + l);
                self.expect(w.pi_at_threshold == actual, || {
                    format!("pi({}) = {actual:?}, recorded {:?}", base + l, w.pi_at_threshold)
                });
                if let Some(p) = actual {
                    self.expect(p as i64 <= m, || {
                        format!("pi({}) = {p} > {m}: lambda = {l} is not admissible", base + l)
                    });
                }
            } else {
                self.expect(w.pi_at_threshold.is_none(), || "unexpected probe at threshold -1".into());
            }
            let actual = self.pi(base + l + 1);
            self.expect(w.pi_past_threshold == actual, || {
                format!("pi({}) = {actual:?}, recorded {:?}", base + l + 1, w.pi_past_threshold)
            });
            if let Some(p) = actual {
                self.expect(p as i64 > m, || {
                    format!("pi({}) = {p} <= {m}: threshold {l} is not maximal", base + l + 1)
                });
            }
        }

        let pi_k = self.pi(k);
        self.expect(Some(w.pi_k) == pi_k, || format!("pi({k}) = {pi_k:?}, recorded {}", w.pi_k));
        if let Some(pk) = pi_k {
            let holds = 4 * n - l <= k - pk as i64;
            self.expect(w.mustard_holds == holds, || {
                format!("{} <= {} is {holds}, recorded {}", 4 * n - l, k - pk as i64, w.mustard_holds)
            });
        }
        self.expect(w.eliminated == w.mustard_holds, || {
            "eliminated must equal the counting comparison".into()
        });
    }

    fn bound(&mut self, n: u64, lower: u64, seed: Option<u64>, upper: u64) {
        self.expect_current(n);
        self.expect(lower <= upper, || format!("lower {lower} exceeds upper {upper}"));
        self.expect(lower >= 2 * n, || format!("lower {lower} below 2n"));
        let witnesses = std::mem::take(&mut self.witnesses);
        if n <= 4 {
            let base = self.base.take();
            self.expect(base == Some(upper) && lower == upper, || {
                format!("base entry must have lower = upper = recorded base {base:?}")
            });
            self.expect(seed.is_none() && witnesses.is_empty(), || {
                "base entry takes no seed or witnesses".into()
            });
        } else {
            self.expect(lower == 2 * n, || {
                format!("certified lower bound is 2n = {}, recorded {lower}", 2 * n)
            });
            match (self.quadratic.take(), self.recursion.take()) {
                (Some(q), Some(r)) => {
                    let s = q.min(r);
                    self.expect(seed == Some(s), || {
                        format!("seed must be min({q}, {r}) = {s}, recorded {seed:?}")
                    });
                }
                _ => self.fail("seed rules missing"),
            }
            let seed = seed.unwrap_or(upper);
            let expected: Vec<u64> = (upper..=seed).rev().filter(|&k| k > lower).collect();
            let ks: Vec<u64> = witnesses.iter().map(|w| w.k).collect();
            self.expect(ks == expected, || format!("witnesses cover {ks:?}, expected {expected:?}"));
            if let Some((last, rest)) = witnesses.split_last() {
                self.expect(rest.iter().all(|w| w.eliminated), || {
                    "a candidate above the bound was not eliminated".into()
                });
                self.expect(!last.eliminated && last.k == upper, || {
                    format!("bound {upper} must be the first surviving candidate")
                });
            } else {
                self.expect(upper == lower, || {
                    "no witnesses recorded for a bound above the lower bound".into()
                });
            }
        }
        self.uppers.push(upper);
    }

    fn crossover(&mut self, x: &'a CrossoverRecord) {
        self.expect(self.crossover.is_none(), || "duplicate crossover record".into());
        self.crossover = Some(x);
        self.expect(x.k == self.header.k && x.c == self.header.c && x.slope == self.header.slope, || {
            "crossover parameters differ from header".into()
        });
        self.expect(x.conditional == (x.slope != 2), || "slope 3 must be marked conditional".into());
        let kf = self.k.to_f64().unwrap_or(f64::NAN);

        let mut ok = x.verdict == Verdict::Holds && x.monotone;
        if x.n0 > MAX_INDEX {
            self.fail("crossover index out of replayable range");
            return;
        }
        match tail_at(x.n0, self.c, x.slope) {
            Some(v) => {
                self.expect(close(&x.value_at_n0, v), || {
                    format!("value at n0 recorded {}, recomputed {v}", x.value_at_n0)
                });
                self.expect(close(&x.margin, kf - v), || {
                    format!("margin recorded {}, recomputed {}", x.margin, kf - v)
                });
                ok &= v <= kf - TOLERANCE;
                // log(slope n) increases, so a defined value at n0 keeps decreasing
                self.expect(x.monotone, || "tail must be recorded as decreasing".into());
            }
            None => {
                self.fail(format!("tail undefined at n0 = {}", x.n0));
                ok = false;
            }
        }
        let before = if x.n0 > 1 { tail_at(x.n0 - 1, self.c, x.slope) } else { None };
        match (&x.value_before, before) {
            (Some(rec), Some(v)) => {
                self.expect(close(rec, v), || format!("value at n0 - 1 recorded {rec}, recomputed {v}"));
                ok &= v >= kf + TOLERANCE;
            }
            (None, None) => {}
            (rec, v) => {
                self.fail(format!("value at n0 - 1 recorded {rec:?}, recomputed {v:?}"));
                ok = false;
            }
        }
        if x.verdict == Verdict::Holds && !ok {
            self.fail("crossover claimed but the two-sided check fails");
        }
        self.crossover_ok = ok;
    }

    fn corollary(&mut self, s: &'a CorollarySummary) {
        self.corollary = Some(s);
        let Some(x) = self.crossover else {
            self.fail("corollary without a crossover");
            return;
        };
        self.expect(s.tail_n0 == x.n0 && s.tail_k == self.header.k, || {
            "tail parameters differ from crossover".into()
        });
        let last = self.corollary_rows.last().map(|(n, _)| *n);
        self.expect(last == Some(x.n0.saturating_sub(1)), || {
            format!("corollary rows end at {last:?}, need n0 - 1 = {}", x.n0.saturating_sub(1))
        });
        self.expect(s.rho_g_one == 4, || "rho_g(1) <= 4".into());

        let mut sup = BigRational::zero();
        let mut sup_at = 0;
        for (n, f) in &self.corollary_rows {
            if sup_at == 0 || *f > sup {
                sup = f.clone();
                sup_at = *n;
            }
        }
        self.expect(s.sup_value == sup.to_string() && s.sup_at == sup_at, || {
            format!("sup recorded {} at {}, recomputed {sup} at {sup_at}", s.sup_value, s.sup_at)
        });
        let sup_f = sup.to_f64().unwrap_or(f64::NAN);
        self.expect(close(&s.sup_decimal, sup_f), || {
            format!("decimal {} does not match {sup_f}", s.sup_decimal)
        });
        let tail = padella(x.n0, &self.k);
        self.expect(s.tail_bound == tail.to_string(), || {
            format!("tail bound recorded {}, recomputed {tail}", s.tail_bound)
        });
        let tail_f = tail.to_f64().unwrap_or(f64::NAN);
        self.expect(close(&s.tail_decimal, tail_f), || {
            format!("decimal {} does not match {tail_f}", s.tail_decimal)
        });
        let constant = (tail <= sup).then(|| sup.ceil().to_integer().to_string());
        self.expect(s.constant == constant, || {
            format!("constant recorded {:?}, recomputed {constant:?}", s.constant)
        });
        self.constant = constant;
    }

    fn footer(&mut self, footer: &crate::certificate::Footer, body: usize) {
        self.expect(footer.records == body, || {
            format!("footer counts {} records, found {body}", footer.records)
        });
        let n_max = self.uppers.len() as u64;
        let mut reasons = Vec::new();
        if n_max < 4 {
            reasons.push("ledger does not cover the base values".to_string());
        }
        if self.linear_checked.len() as u64 != n_max {
            reasons.push("not every bound entry has a linear check".into());
        }
        if !self.linear_all_hold {
            reasons.push("a linear check fails".into());
        }
        match self.crossover {
            None => reasons.push("no crossover".into()),
            Some(x) => {
                if !self.crossover_ok {
                    reasons.push("crossover not certified".into());
                }
                if n_max + 1 < x.n0 {
                    reasons
                        .push(format!("ledger ends at {n_max}, crossover needs {}", x.n0.saturating_sub(1)));
                }
            }
        }
        if self.corollary.is_none() || self.constant.is_none() {
            reasons.push("corollary constant not certified".into());
        }
        let verdict = if reasons.is_empty() { RunVerdict::Pass } else { RunVerdict::Fail };
        self.expect(footer.verdict == verdict, || {
            format!("footer claims {:?}, records support {verdict:?}: {}", footer.verdict, reasons.join("; "))
        });
        let equality_set = self.equality_set.clone();
        self.expect(footer.equality_set == equality_set, || {
            format!("equality set recorded {:?}, recomputed {equality_set:?}", footer.equality_set)
        });
        let max_ratio = self.max_ratio.as_ref().map(|r| r.to_string()).unwrap_or_else(|| "0".into());
        self.expect(footer.max_ratio == max_ratio, || {
            format!("max ratio recorded {}, recomputed {max_ratio}", footer.max_ratio)
        });
        self.expect(footer.constant == self.constant, || {
            "footer constant differs from corollary report".into()
        });
        self.expect(footer.conditional == (self.header.slope != 2), || {
            "slope 3 runs must be marked conditional".into()
        });
    }
}

/// Re-checks every record of `cert`.
pub fn check_certificate(cert: &Certificate) -> CheckReport {
    let lines = cert.lines.len();
    let single = |line: usize, kind: &str, message: &str| CheckReport {
        failures: vec![CheckFailure { line, kind: kind.into(), message: message.into() }],
        verdict: None,
        lines,
    };
    let Some(header) = cert.header() else {
        return single(1, "header", "certificate must start with a header");
    };
    let Some(footer) = cert.footer() else {
        return single(lines.max(1), "footer", "certificate must end with a footer");
    };
    if lines < 2 {
        return single(1, "header", "certificate needs both a header and a footer");
    }

    let mut checker = Checker {
        header,
        k: BigRational::zero(),
        c: 0.0,
        oracle: None,
        failures: Vec::new(),
        line: 1,
        kind: "header",
        uppers: Vec::new(),
        base: None,
        quadratic: None,
        recursion: None,
        witnesses: Vec::new(),
        linear_checked: BTreeSet::new(),
        linear_all_hold: true,
        equality_set: Vec::new(),
        max_ratio: None,
        crossover: None,
        crossover_ok: false,
        corollary_rows: Vec::new(),
        corollary: None,
        constant: None,
    };
    match header.k.parse::<BigRational>() {
        Ok(k) => checker.k = k,
        Err(_) => checker.fail(format!("K = {:?} is not a rational", header.k)),
    }
    match header.c.parse::<f64>() {
        Ok(c) if c > 0.0 => checker.c = c,
        _ => checker.fail(format!("c = {:?} is not a positive number", header.c)),
    }
    if header.slope != 2 && header.slope != 3 {
        checker.fail(format!("slope {} not in {{2, 3}}", header.slope));
    }
    if header.sieve_limit > MAX_REPLAY_SIEVE {
        checker.fail(format!("sieve limit {} exceeds replay cap {MAX_REPLAY_SIEVE}", header.sieve_limit));
    } else {
        match PrimeOracle::new(header.sieve_limit) {
            Ok(o) => checker.oracle = Some(o),
            Err(e) => checker.fail(e.to_string()),
        }
    }

    for (i, record) in cert.lines[1..lines - 1].iter().enumerate() {
        checker.line = i + 2;
        checker.kind = record.kind();
        checker.record(record);
    }
    checker.line = lines;
    checker.kind = "footer";
    if !checker.witnesses.is_empty() || checker.quadratic.is_some() || checker.base.is_some() {
        checker.fail("records after the last bound entry are not attached to any bound");
    }
    checker.footer(footer, lines - 2);
    if checker.uppers.len() as u64 != header.n_max {
        checker.fail(format!(
            "header n_max = {} but ledger has {} entries",
            header.n_max,
            checker.uppers.len()
        ));
    }

    CheckReport { failures: checker.failures, verdict: Some(footer.verdict), lines }
}
