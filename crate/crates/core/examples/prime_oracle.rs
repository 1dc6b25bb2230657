//! Exact prime counting and the analytic bound it is compared against.
//!
//! cargo run -p rho-cert --example prime_oracle

use rho_cert::{rs_upper, PrimeOracle};

fn main() -> rho_cert::Result<()> {
    let oracle = PrimeOracle::new(100_000)?;

    for x in [1, 24, 52, 1000, 100_000] {
        println!("pi({x}) = {}", oracle.pi(x)?);
    }
    println!("p_9 = {}, p_15 = {}", oracle.nth_prime(9)?, oracle.nth_prime(15)?);

    // inverse: the largest x with pi(x) <= m
    for m in [0, 8, 14] {
        println!("largest x with pi(x) <= {m}: {:?}", oracle.max_x_with_pi_at_most(m)?);
    }

    let worst = (2..=oracle.limit())
        .map(|x| (x, oracle.pi(x as i64).unwrap() as f64 / rs_upper(x as f64).unwrap()))
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    println!(
        "max pi(x) / (1.25506 x / log x) on [2, {}] = {:.6} at x = {}",
        oracle.limit(),
        worst.1,
        worst.0
    );
    Ok(())
}
