//! p(n) from the truncated Rademacher series, compared with the exact value.

use residue_parts::arith::ceil_sqrt;
use residue_parts::exact::build_partition_table;
use residue_parts::numerics::Precision;
use residue_parts::rademacher::p_rademacher;

fn main() -> residue_parts::Result<()> {
    let ns = [1u64, 10, 100, 500, 2000];
    let table = build_partition_table(*ns.last().unwrap())?;
    let prec = Precision::for_indices(&ns);
    for n in ns {
        let mut ks = vec![1, 3, ceil_sqrt(n)];
        ks.sort();
        ks.dedup();
        for k in ks {
            let v = p_rademacher(n, k, prec)?;
            let rounded = v.clone().round().to_integer().unwrap();
            let exact = table.get(n).unwrap();
            let ok = if &rounded == exact { "exact" } else { "off" };
            println!("n = {n:>4}  K = {k:>2}  series = {:.6e}  rounds {ok}", v.to_f64());
        }
    }
    Ok(())
}
