//! Asymptotics of T_{r,N}(n) - T_{N-r,N}(n): the two-term estimate, the
//! truncated series and the ratio against the exact difference.

use residue_parts::arith::ceil_sqrt;
use residue_parts::exact::{build_divisor_sieve, build_partition_table, part_diff_exact};
use residue_parts::numerics::Precision;
use residue_parts::rademacher::{q_ratio, theorem1_main, theorem1_series};

fn main() -> residue_parts::Result<()> {
    let (r, modulus) = (1, 3);
    let ns = [10u64, 100, 1000, 10_000];
    let max_n = *ns.last().unwrap();
    let table = build_partition_table(max_n)?;
    let sieve = build_divisor_sieve(modulus, max_n)?;
    let prec = Precision::for_indices(&ns);

    println!("{:>6} {:>14} {:>14} {:>12}", "n", "exact", "estimate", "ratio");
    for n in ns {
        let exact = part_diff_exact(n, r, modulus, &table, &sieve)?;
        let est = theorem1_main(n, r, modulus, prec)?;
        let q = q_ratio(n, r, modulus, prec, &table, &sieve)?;
        println!(
            "{n:>6} {:>14.6e} {:>14.6e} {:>12.8}",
            exact.to_f64(),
            est.estimate.to_f64(),
            q.to_f64()
        );
    }

    let n = 50;
    let series = theorem1_series(n, 2, 5, ceil_sqrt(n), prec)?;
    let exact = part_diff_exact(n, 2, 5, &build_partition_table(n)?, &build_divisor_sieve(5, n)?)?;
    println!(
        "N = 5, r = 2, n = {n}: T1 = {:.6}, T2 = {:.6}, T1 + T2 = {:.6}, exact = {exact}",
        series.t1.unwrap().to_f64(),
        series.t2.unwrap().to_f64(),
        series.estimate.to_f64()
    );
    Ok(())
}
