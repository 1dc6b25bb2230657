//! Walks the elimination of candidate values for rho(9) from 51 down to 45.
//!
//! cargo run -p rho-cert --example eliminate_candidates

use rho_cert::{eliminable, refine_upper, PrimeOracle, Strategy};

fn main() -> rho_cert::Result<()> {
    let oracle = PrimeOracle::new(10_000)?;
    let n = 9;

    println!("{:>4} {:>4} {:>6} {:>8} {:>8}  eliminated", "k", "L", "pi(k)", "4n - L", "k - pi(k)");
    for k in (45..=51).rev() {
        let w = eliminable(n, k, &oracle, Strategy::DerivedSeries)?;
        println!(
            "{:>4} {:>4} {:>6} {:>8} {:>8}  {}",
            k,
            w.threshold,
            w.pi_k,
            w.mustard_lhs(),
            w.mustard_rhs(),
            w.eliminated
        );
    }

    let (upper, witnesses) = refine_upper(n, 51, 2 * n, &oracle, Strategy::DerivedSeries)?;
    println!("rho({n}) <= {upper} after {} candidates", witnesses.len());

    // eliminability is not monotone: at n = 13, 64 falls but 63 survives
    for k in [64, 63] {
        let w = eliminable(13, k, &oracle, Strategy::DerivedSeries)?;
        println!("n = 13, k = {k}: L = {}, eliminated = {}", w.threshold, w.eliminated);
    }
    Ok(())
}
