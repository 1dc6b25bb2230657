use num_rational::BigRational;

use rho_cert::certificate::RunVerdict;
use rho_cert::{check_certificate, run_verify, Certificate, CertificateWriter, Record, RunConfig, Strategy};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn small_config() -> RunConfig {
    RunConfig { sieve_limit: 20_000, ..RunConfig::default() }
}

fn emit(config: &RunConfig) -> Certificate {
    let mut w = CertificateWriter::new(Vec::new());
    run_verify(config, &mut w).unwrap();
    w.finish()
}

fn mutate(
    cert: &Certificate,
    pick: impl Fn(&Record) -> bool,
    change: impl FnOnce(&mut Record),
) -> (Certificate, usize) {
    let mut c = cert.clone();
    let index = c.lines.iter().position(pick).expect("record to mutate");
    change(&mut c.lines[index]);
    (c, index + 1)
}

fn assert_rejected_at(cert: &Certificate, line: usize) {
    let report = check_certificate(cert);
    assert!(!report.passed());
    assert!(
        report.failures.iter().any(|f| f.line == line),
        "expected a failure on line {line}, got {:?}",
        report.failures
    );
}

#[test]
fn default_run_checks() {
    let cert = emit(&small_config());
    let footer = cert.footer().unwrap();
    assert_eq!(footer.verdict, RunVerdict::Pass);
    assert_eq!(footer.equality_set, vec![8, 9]);
    assert_eq!(footer.constant.as_deref(), Some("141"));
    assert_eq!(footer.max_ratio, "5");
    assert!(!footer.conditional);
    let report = check_certificate(&cert);
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn round_trip_is_byte_identical() {
    let text = emit(&small_config()).to_text();
    let reparsed = Certificate::parse_str(&text).unwrap();
    assert_eq!(reparsed.to_text(), text);
}

#[test]
fn runs_are_deterministic_up_to_timestamp() {
    let a = emit(&small_config()).without_timestamp();
    let b = emit(&small_config()).without_timestamp();
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn records_come_in_pipeline_order() {
    let cert = emit(&small_config());
    let ns: Vec<u64> = cert.lines.iter().filter_map(Record::n).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(*ns.last().unwrap(), 265);
}

#[test]
fn witness_pi_mutation_is_caught() {
    let cert = emit(&small_config());
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::EliminationWitness(w) if w.pi_past_threshold.is_some() && w.n == 20),
        |r| {
            if let Record::EliminationWitness(w) = r {
                *w.pi_past_threshold.as_mut().unwrap() += 1;
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn threshold_mutation_is_caught() {
    let cert = emit(&small_config());
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::EliminationWitness(w) if w.threshold > 0),
        |r| {
            if let Record::EliminationWitness(w) = r {
                w.threshold += 1;
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn raised_bound_without_witness_is_caught() {
    let cert = emit(&small_config());
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::BoundEntry { n: 9, .. }),
        |r| {
            if let Record::BoundEntry { upper, .. } = r {
                *upper -= 1;
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn corollary_mutation_is_caught() {
    let cert = emit(&small_config());
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::CorollaryRow { n: 8, .. }),
        |r| {
            if let Record::CorollaryRow { f, .. } = r {
                *f = "140".into();
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn crossover_value_mutation_is_caught() {
    let cert = emit(&small_config());
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::CrossoverResult(_)),
        |r| {
            if let Record::CrossoverResult(x) = r {
                x.n0 -= 1;
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn empty_body_cannot_pass() {
    let cert = emit(&small_config());
    let hollow = Certificate { lines: vec![cert.lines[0].clone(), cert.lines.last().unwrap().clone()] };
    assert_rejected_at(&hollow, 2);
}

#[test]
fn missing_header_or_footer() {
    let cert = emit(&small_config());
    let no_header = Certificate { lines: cert.lines[1..].to_vec() };
    assert!(!check_certificate(&no_header).passed());
    let no_footer = Certificate { lines: cert.lines[..cert.lines.len() - 1].to_vec() };
    assert!(!check_certificate(&no_footer).passed());
    assert!(!check_certificate(&Certificate { lines: vec![] }).passed());
}

#[test]
fn dropped_record_is_caught() {
    let cert = emit(&small_config());
    let mut c = cert.clone();
    let i = c.lines.iter().position(|r| matches!(r, Record::EliminationWitness(w) if w.n == 30)).unwrap();
    c.lines.remove(i);
    assert!(!check_certificate(&c).passed());
}

#[test]
fn counting_only_reproduces_older_constant() {
    let config = RunConfig { k: rat(17, 3), strategy: Strategy::CountingOnly, ..small_config() };
    let mut w = CertificateWriter::new(Vec::new());
    let outcome = run_verify(&config, &mut w).unwrap();
    assert!(outcome.passed(), "{:?}", outcome.failed_checks);
    assert_eq!(outcome.ledger.upper(9), Some(51));
    assert_eq!(outcome.linear.equality_set.iter().copied().collect::<Vec<_>>(), [9]);
    let cert = w.finish();
    assert!(check_certificate(&cert).passed());
    assert!(cert.lines.iter().all(|r| !matches!(r, Record::EliminationWitness(w) if w.threshold != -1)));
}

#[test]
fn failing_run_is_consistent_but_not_accepted() {
    let config = RunConfig { k: rat(4, 1), ..small_config() };
    let mut w = CertificateWriter::new(Vec::new());
    let outcome = run_verify(&config, &mut w).unwrap();
    assert!(!outcome.passed());
    assert!(outcome.linear.failures().any(|n| n == 8));
    let cert = w.finish();
    assert_eq!(cert.footer().unwrap().verdict, RunVerdict::Fail);
    let report = check_certificate(&cert);
    assert!(report.failures.is_empty(), "{:?}", report.failures);
    assert!(!report.passed());
}

#[test]
fn flipping_a_failing_footer_is_caught() {
    let config = RunConfig { k: rat(4, 1), ..small_config() };
    let cert = emit(&config);
    let (bad, line) = mutate(
        &cert,
        |r| matches!(r, Record::Footer(_)),
        |r| {
            if let Record::Footer(f) = r {
                f.verdict = RunVerdict::Pass;
                f.failed_checks.clear();
            }
        },
    );
    assert_rejected_at(&bad, line);
}

#[test]
fn slope_three_is_marked_conditional() {
    let config = RunConfig { slope: 3, ..small_config() };
    let cert = emit(&config);
    let footer = cert.footer().unwrap();
    assert!(footer.conditional);
    let crossover = cert
        .lines
        .iter()
        .find_map(|r| match r {
            Record::CrossoverResult(x) => Some(x),
            _ => None,
        })
        .unwrap();
    assert!(crossover.conditional);
    assert!(crossover.n0 < 266);
    assert!(check_certificate(&cert).passed());
}

#[test]
fn streamed_output_matches_finished_certificate() {
    let mut buf = Vec::new();
    let cert = {
        let mut w = CertificateWriter::new(&mut buf);
        run_verify(&small_config(), &mut w).unwrap();
        w.finish()
    };
    assert_eq!(String::from_utf8(buf).unwrap(), cert.to_text());
}
