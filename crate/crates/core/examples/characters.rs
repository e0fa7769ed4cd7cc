//! Odd characters, the residue-class indicator and the constant c_{r,N}.

use residue_parts::dirichlet::{c_constant, eisenstein_coeffs, l_zero, odd_characters};
use residue_parts::numerics::Precision;

fn main() -> residue_parts::Result<()> {
    let modulus = std::env::args().nth(1).map_or(7, |a| a.parse().expect("integer modulus"));
    let prec = Precision::new(64)?;
    let chars = odd_characters(modulus)?;
    let group = chars.group();
    println!("N = {modulus}: unit group of order {} with generators {:?}", group.order(), group.generators());

    for (i, psi) in chars.iter().enumerate() {
        let values: Vec<String> = (1..modulus as i64)
            .map(|a| {
                let z = psi.value_complex(a, prec);
                format!("{:.3}{:+.3}i", z.real().to_f64(), z.imag().to_f64())
            })
            .collect();
        let l0 = l_zero(psi, prec)?;
        println!("psi_{i}: L(0) = {:.6}{:+.6}i", l0.real().to_f64(), l0.imag().to_f64());
        println!("  values on 1..N-1: {}", values.join(" "));
        let e = eisenstein_coeffs(psi, 6, prec)?;
        let head: Vec<String> = e.iter().map(|z| format!("{:.3}", z.real().to_f64())).collect();
        println!("  Eisenstein coefficients 0..6 (real parts): {}", head.join(" "));
    }

    for r in (1..modulus).filter(|&r| residue_parts::arith::gcd(r, modulus) == 1) {
        let hits: Vec<i64> = (0..2 * modulus as i64).map(|n| chars.indicator(r, n).unwrap()).collect();
        let c = c_constant(r, modulus, prec)?;
        println!("r = {r}: c = {:.6}, indicator over 0..2N = {hits:?}", c.real().to_f64());
    }
    Ok(())
}
