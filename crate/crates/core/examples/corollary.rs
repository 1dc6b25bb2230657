//! Constant for arbitrary finite groups from the certified C(n), against the
//! uniform C(n) = 7 input.
//!
//! cargo run -p rho-cert --example corollary

use num_rational::BigRational;
use rho_cert::oracle::ROSSER_SCHOENFELD;
use rho_cert::{build_ledger, certify_corollary, find_crossover, CorollaryReport, PrimeOracle};

fn main() -> rho_cert::Result<()> {
    let five = BigRational::from_integer(5.into());
    let crossover = find_crossover(&five, ROSSER_SCHOENFELD.c, 2)?;
    let oracle = PrimeOracle::new(1_000_000)?;
    let ledger = build_ledger(crossover.n0 - 1, &oracle)?;

    let report = certify_corollary(&ledger, &crossover)?;
    for row in report.rows.iter().take(10) {
        println!("n = {:>2}  C(n) = {:>6}  f(n) = {}", row.n, row.ratio.to_string(), row.f);
    }
    println!(
        "sup f = {} at n = {}, tail bound {}, constant {:?}",
        report.sup_value,
        report.sup_at,
        report.tail_bound.as_ref().unwrap(),
        report.certified_constant()
    );

    let seven = BigRational::from_integer(7.into());
    let uniform =
        CorollaryReport::from_ratios((2..266).map(|n| (n, seven.clone())), Some((266, seven.clone())))?;
    println!(
        "with C(n) = 7: sup f = {} at n = {}, constant {:?}",
        uniform.sup_value,
        uniform.sup_at,
        uniform.certified_constant()
    );
    Ok(())
}
