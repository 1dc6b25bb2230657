//! Plain-text renderings of ledger rows, crossovers and corollary reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::corollary::CorollaryReport;
use crate::decimal::{rational_sig12, sig12};
use crate::error::{Error, Result};
use crate::ledger::Ledger;
use crate::tail::CrossoverResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Aligned columns for reading.
    #[default]
    Text,
    Tsv,
    /// One JSON object per line.
    Records,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "tsv" => Ok(Self::Tsv),
            "records" | "json" | "jsonl" => Ok(Self::Records),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct TableRow<'a> {
    n: u64,
    lower: u64,
    upper: u64,
    ratio: String,
    ratio_decimal: String,
    provenance: &'a str,
}

/// Rows `from..=to` of the ledger: `n, lower, upper, C(n), provenance`.
pub fn render_table(ledger: &Ledger, from: u64, to: u64, format: OutputFormat) -> Result<String> {
    if from < 1 || from > to || to > ledger.n_max() {
        return Err(Error::InvalidArgument(format!(
            "table range {from}..={to} outside 1..={}",
            ledger.n_max()
        )));
    }
    let mut out = String::new();
    if format == OutputFormat::Text {
        writeln!(out, "{:>5} {:>7} {:>7} {:>10}  provenance", "n", "lower", "upper", "C(n)").unwrap();
    } else if format == OutputFormat::Tsv {
        writeln!(out, "n\tlower\tupper\tC(n)\tprovenance").unwrap();
    }
    for n in from..=to {
        let e = ledger.get(n).expect("range checked");
        let ratio = e.ratio();
        let summary = e.provenance_summary();
        match format {
            OutputFormat::Text => writeln!(
                out,
                "{:>5} {:>7} {:>7} {:>10}  {}",
                n,
                e.lower,
                e.upper,
                format!("{:.4}", e.upper as f64 / n as f64),
                summary
            ),
            OutputFormat::Tsv => {
                writeln!(out, "{n}\t{}\t{}\t{}\t{summary}", e.lower, e.upper, ratio)
            }
            OutputFormat::Records => {
                let row = TableRow {
                    n,
                    lower: e.lower,
                    upper: e.upper,
                    ratio: ratio.to_string(),
                    ratio_decimal: rational_sig12(&ratio),
                    provenance: &summary,
                };
                writeln!(out, "{}", serde_json::to_string(&row).expect("row serializes"))
            }
        }
        .unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct CrossoverRow {
    k: String,
    c: f64,
    slope: u32,
    n0: u64,
    value_at_n0: String,
    margin: String,
    verdict: String,
    conditional: bool,
}

pub fn render_crossover(r: &CrossoverResult, format: OutputFormat) -> String {
    let verdict = format!("{:?}", r.verdict).to_lowercase();
    let note = if r.conditional() { "conditional on rho(n) >= 3n" } else { "" };
    match format {
        OutputFormat::Text => {
            let mut s = format!(
                "K = {}  c = {}  slope = {}\nn0 = {}  value at n0 = {}  margin = {}  verdict = {}\n",
                r.k,
                r.c,
                r.slope,
                r.n0,
                sig12(r.value_at_n0),
                sig12(r.margin()),
                verdict
            );
            if let Some(v) = r.value_before {
                writeln!(s, "value at n0 - 1 = {}", sig12(v)).unwrap();
            }
            if !note.is_empty() {
                writeln!(s, "({note})").unwrap();
            }
            s
        }
        OutputFormat::Tsv => format!(
            "K\tc\tslope\tn0\tvalue_at_n0\tmargin\tverdict\tconditional\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.k,
            r.c,
            r.slope,
            r.n0,
            sig12(r.value_at_n0),
            sig12(r.margin()),
            verdict,
            r.conditional()
        ),
        OutputFormat::Records => {
            let row = CrossoverRow {
                k: r.k.to_string(),
                c: r.c,
                slope: r.slope,
                n0: r.n0,
                value_at_n0: sig12(r.value_at_n0),
                margin: sig12(r.margin()),
                verdict,
                conditional: r.conditional(),
            };
            format!("{}\n", serde_json::to_string(&row).expect("row serializes"))
        }
    }
}

#[derive(Serialize)]
struct CorollaryLine {
    n: u64,
    ratio: String,
    f: String,
    f_decimal: String,
}

/// Per-`n` table of `(n, C(n), f(n))` followed by the sup and the constant.
pub fn render_corollary(report: &CorollaryReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            writeln!(out, "{:>5} {:>10} {:>16}", "n", "C(n)", "f(n)").unwrap();
        }
        OutputFormat::Tsv => writeln!(out, "n\tC(n)\tf(n)").unwrap(),
        OutputFormat::Records => {}
    }
    for row in &report.rows {
        match format {
            OutputFormat::Text => writeln!(
                out,
                "{:>5} {:>10} {:>16}",
                row.n,
                rational_sig12(&row.ratio),
                rational_sig12(&row.f)
            ),
            OutputFormat::Tsv => writeln!(out, "{}\t{}\t{}", row.n, row.ratio, row.f),
            OutputFormat::Records => {
                let line = CorollaryLine {
                    n: row.n,
                    ratio: row.ratio.to_string(),
                    f: row.f.to_string(),
                    f_decimal: rational_sig12(&row.f),
                };
                writeln!(out, "{}", serde_json::to_string(&line).expect("row serializes"))
            }
        }
        .unwrap();
    }
    let constant =
        report.certified_constant().map(|c| c.to_string()).unwrap_or_else(|| "not certified".into());
    let tail = match (&report.tail, &report.tail_bound) {
        (Some((n0, k)), Some(b)) => format!("f({n0}, {k}) = {}", rational_sig12(b)),
        _ => "none".into(),
    };
    match format {
        OutputFormat::Records => writeln!(
            out,
            "{}",
            serde_json::json!({
                "sup_value": report.sup_value.to_string(),
                "sup_decimal": rational_sig12(&report.sup_value),
                "sup_at": report.sup_at,
                "tail": tail,
                "constant": constant,
            })
        )
        .unwrap(),
        _ => writeln!(
            out,
            "sup = {} ({}) at n = {}\ntail bound: {}\nconstant: {}",
            rational_sig12(&report.sup_value),
            report.sup_value,
            report.sup_at,
            tail,
            constant
        )
        .unwrap(),
    }
    out
}
