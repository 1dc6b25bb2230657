//! Emits a certificate, re-checks it independently, then tampers with one
//! prime count and shows the checker naming the bad line.
//!
//! cargo run -p rho-cert --example certificate_audit

use std::fs::File;
use std::io::{BufReader, BufWriter};

use rho_cert::{check_certificate, run_verify, Certificate, CertificateWriter, Record, RunConfig};

fn main() -> rho_cert::Result<()> {
    let path = std::env::temp_dir().join("rho-cert-example.jsonl");
    let config = RunConfig::default();
    let outcome = {
        let mut writer = CertificateWriter::new(BufWriter::new(File::create(&path)?));
        run_verify(&config, &mut writer)?
    };
    println!("verify passed: {}; certificate at {}", outcome.passed(), path.display());

    let cert = Certificate::parse(BufReader::new(File::open(&path)?))?;
    let report = check_certificate(&cert);
    println!("{} lines, {} failures, accepted: {}", report.lines, report.failures.len(), report.passed());

    let mut tampered = cert.clone();
    if let Some(Record::EliminationWitness(w)) =
        tampered.lines.iter_mut().find(|r| matches!(r, Record::EliminationWitness(w) if w.n == 9))
    {
        w.pi_k += 1;
    }
    let report = check_certificate(&tampered);
    println!("after tampering, accepted: {}", report.passed());
    for failure in report.failures.iter().take(3) {
        println!("  {failure}");
    }
    Ok(())
}
