//! Parts divisible by N: the log-corrected main term, the same term built by
//! the generic major-arc engine, and the ratio against the exact count.

use residue_parts::exact::build_partition_table;
use residue_parts::numerics::Precision;
use residue_parts::wright::{partition_profile, qn_ratio, theorem2_engine, theorem2_main, wright_poly_expand};

fn main() -> residue_parts::Result<()> {
    let ns = [10u64, 100, 1000, 10_000];
    let table = build_partition_table(*ns.last().unwrap())?;
    let prec = Precision::for_indices(&ns);

    for modulus in [1u64, 3, 6] {
        for n in ns {
            let main = theorem2_main(n, modulus, prec)?;
            let engine = theorem2_engine(n, modulus, prec)?;
            let q = qn_ratio(n, modulus, prec, &table)?;
            println!(
                "N = {modulus}  n = {n:>5}  main = {:.6e}  engine = {:.6e}  Q = {:.5}",
                main.value.to_f64(),
                engine.to_f64(),
                q.to_f64()
            );
        }
    }

    let profile = partition_profile(4, prec);
    for terms in 1..=4 {
        let approx = wright_poly_expand(&profile, 1000, terms, prec)?;
        let exact = table.get(1000).unwrap();
        let dev = (rug::Float::with_val(prec.work(), exact) / approx - 1u32).to_f64();
        println!("p(1000) with {terms} term(s): relative error {dev:.3e}");
    }
    Ok(())
}
