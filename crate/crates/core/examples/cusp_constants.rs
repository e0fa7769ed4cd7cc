//! Dedekind sums, cusp data and the coefficients a_0, a_m and B_k.

use residue_parts::numerics::Precision;
use residue_parts::rademacher::{dedekind_sum, kloosterman_a, CuspData, CuspEvaluator};

fn main() -> residue_parts::Result<()> {
    let (r, modulus) = (2, 5);
    let prec = Precision::new(128)?;
    let eval = CuspEvaluator::new(r, modulus, prec)?;
    println!("c_(r,N) = {:.10}", eval.c_constant()?.to_f64());

    for k in 1..=6 {
        for cusp in CuspData::all_with_denominator(k) {
            let s = dedekind_sum(cusp.h() as i64, k)?;
            let a0 = eval.a0(&cusp)?;
            let a1 = eval.an_coeff(1, &cusp)?;
            println!(
                "h/k = {}/{k}  H = {}  s = {s}  a_0 = {:.6}{:+.6}i  a_1 = {:.6}{:+.6}i",
                cusp.h(),
                cusp.big_h(),
                a0.real().to_f64(),
                a0.imag().to_f64(),
                a1.real().to_f64(),
                a1.imag().to_f64()
            );
        }
    }

    for k in 1..=8 {
        let b = eval.b_k(k, 100)?;
        let a = kloosterman_a(k, 100, prec);
        println!(
            "k = {k}: B_k(100) = {:.6}{:+.6}i  A_k(100) = {:.6}",
            b.real().to_f64(),
            b.imag().to_f64(),
            a.real().to_f64()
        );
    }
    Ok(())
}
