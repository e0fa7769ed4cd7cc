//! Exact counts of parts in each residue class.
//!
//! cargo run --example exact_counts -- 40 5

use residue_parts::exact::{
    build_divisor_sieve, build_partition_table, enumerate_oracle, part_count_exact, zero_class_exact, PartCountQuery,
};

fn main() -> residue_parts::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(40);
    let modulus = args.next().unwrap_or(5);

    let table = build_partition_table(n)?;
    let sieve = build_divisor_sieve(modulus, n.max(1))?;
    println!("p({n}) = {}", table.get(n).unwrap());
    for r in 0..modulus {
        let t = part_count_exact(&PartCountQuery::new(n, modulus, r)?, &table, &sieve)?;
        let line = format!("r = {r:>2}  parts = {t}");
        if n <= 30 {
            println!("{line}  (enumerated {})", enumerate_oracle(n, r, modulus)?);
        } else {
            println!("{line}");
        }
    }
    println!("zero class via sigma_0: {}", zero_class_exact(n, modulus, &table)?);
    Ok(())
}
