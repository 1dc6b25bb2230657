//! Line-delimited certificate records.
//!
//! One JSON object per line, tagged by `type`, fields in a fixed order. The
//! first line is the header and the last is the footer. Serialization is
//! canonical: parsing a certificate and emitting it again reproduces the
//! input byte for byte.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::elimination::{EliminationWitness, Strategy};
use crate::error::{Error, Result};
use crate::ledger::Rule;
use crate::tail::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub version: String,
    /// Seconds since the Unix epoch. Ignored when comparing runs.
    pub timestamp: u64,
    pub sieve_limit: u64,
    pub n_max: u64,
    pub k: String,
    pub c: String,
    pub slope: u32,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverRecord {
    pub k: String,
    pub c: String,
    pub slope: u32,
    pub n0: u64,
    pub value_at_n0: String,
    pub value_before: Option<String>,
    pub margin: String,
    pub monotone: bool,
    pub verdict: Verdict,
    /// Slope 3 assumes `rho(n) >= 3n`.
    pub conditional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollarySummary {
    pub sup_value: String,
    pub sup_decimal: String,
    pub sup_at: u64,
    pub tail_n0: u64,
    pub tail_k: String,
    pub tail_bound: String,
    pub tail_decimal: String,
    pub constant: Option<String>,
    /// Separately known bound at `n = 1`.
    pub rho_g_one: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Footer {
    pub verdict: RunVerdict,
    pub failed_checks: Vec<String>,
    pub equality_set: Vec<u64>,
    pub max_ratio: String,
    pub constant: Option<String>,
    pub conditional: bool,
    /// Number of records between header and footer.
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Header(Header),
    BaseValue {
        n: u64,
        value: u64,
    },
    /// `from` is the previous upper bound for the recursion rule.
    RuleApplication {
        n: u64,
        rule: Rule,
        from: Option<u64>,
        value: u64,
    },
    EliminationWitness(EliminationWitness),
    BoundEntry {
        n: u64,
        lower: u64,
        seed: Option<u64>,
        upper: u64,
    },
    LinearCheck {
        n: u64,
        upper: u64,
        k: String,
        holds: bool,
        equality: bool,
    },
    CrossoverResult(CrossoverRecord),
    CorollaryRow {
        n: u64,
        ratio: String,
        f: String,
        f_decimal: String,
    },
    CorollaryReport(CorollarySummary),
    Footer(Footer),
}

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::Header(_) => "header",
            Record::BaseValue { .. } => "base_value",
            Record::RuleApplication { .. } => "rule_application",
            Record::EliminationWitness(_) => "elimination_witness",
            Record::BoundEntry { .. } => "bound_entry",
            Record::LinearCheck { .. } => "linear_check",
            Record::CrossoverResult(_) => "crossover_result",
            Record::CorollaryRow { .. } => "corollary_row",
            Record::CorollaryReport(_) => "corollary_report",
            Record::Footer(_) => "footer",
        }
    }

    /// The `n` a per-`n` record belongs to.
    pub fn n(&self) -> Option<u64> {
        match self {
            Record::BaseValue { n, .. }
            | Record::RuleApplication { n, .. }
            | Record::BoundEntry { n, .. }
            | Record::LinearCheck { n, .. } => Some(*n),
            Record::EliminationWitness(w) => Some(w.n),
            _ => None,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

/// A parsed certificate: every line in order, header and footer included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lines: Vec<Record>,
}

impl Certificate {
    pub fn parse<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let record = serde_json::from_str(&line)
                .map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
            lines.push(record);
        }
        Ok(Self { lines })
    }

    pub fn parse_str(input: &str) -> Result<Self> {
        Self::parse(input.as_bytes())
    }

    pub fn emit<W: Write>(&self, mut out: W) -> Result<()> {
        for record in &self.lines {
            writeln!(out, "{}", record.to_line())?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.emit(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn header(&self) -> Option<&Header> {
        match self.lines.first() {
            Some(Record::Header(h)) => Some(h),
            _ => None,
        }
    }

    pub fn footer(&self) -> Option<&Footer> {
        match self.lines.last() {
            Some(Record::Footer(f)) => Some(f),
            _ => None,
        }
    }

    /// Copy with the header timestamp zeroed, for run-to-run comparison.
    pub fn without_timestamp(&self) -> Self {
        let mut copy = self.clone();
        if let Some(Record::Header(h)) = copy.lines.first_mut() {
            h.timestamp = 0;
        }
        copy
    }
}

/// Streams records to `out`, flushing after each line, and keeps a copy.
pub struct CertificateWriter<W: Write> {
    out: W,
    lines: Vec<Record>,
}

impl<W: Write> CertificateWriter<W> {
    pub fn new(out: W) -> Self {
        Self { out, lines: Vec::new() }
    }

    pub fn push(&mut self, record: Record) -> Result<()> {
        writeln!(self.out, "{}", record.to_line())?;
        self.out.flush()?;
        self.lines.push(record);
        Ok(())
    }

    /// Records pushed so far, excluding the header.
    pub fn body_len(&self) -> usize {
        self.lines.iter().filter(|r| !matches!(r, Record::Header(_))).count()
    }

    pub fn finish(self) -> Certificate {
        Certificate { lines: self.lines }
    }
}
