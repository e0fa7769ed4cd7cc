//! Module-level invariants beyond the numbered criteria.

use rug::{Complex, Float, Integer, Rational};

use crate::oracle;
use residue_parts::dirichlet::{all_characters, odd_characters, ChiValue};
use residue_parts::exact::{
    build_divisor_sieve, build_partition_table, check_pentagonal, part_count_exact, PartCountQuery,
};
use residue_parts::numerics::{bernoulli, bessel_i_half, bessel_i_three_half, gamma_fn, Precision};
use residue_parts::rademacher::{
    a0, b_k, kloosterman_a, t1_series, t2_series, theorem1_main, CuspData, CuspEvaluator,
};
use residue_parts::wright::{partition_profile, qn_ratio, wright_poly_expand};

fn prec(bits: u32) -> Precision {
    Precision::new(bits).unwrap()
}

fn rel(a: &Float, b: &Float) -> f64 {
    Float::with_val(64, Float::with_val(a.prec().max(b.prec()), a - b) / b).abs().to_f64()
}

fn abs(z: &Complex) -> f64 {
    Float::with_val(64, z.abs_ref()).to_f64()
}

/// `sum_m (z/2)^{nu+2m} / (m! Gamma(nu+m+1))` for `nu = 1/2, 3/2`.
fn bessel_series(twice_nu: u32, z: &Float, bits: u32) -> Float {
    let w = bits + 64;
    let nu = Float::with_val(w, twice_nu) / 2u32;
    let half = Float::with_val(w, z) / 2u32;
    let quarter_sq = Float::with_val(w, half.square_ref());
    let mut term = Float::with_val(w, rug::ops::Pow::pow(&half, &nu)) / Float::with_val(w, &nu + 1u32).gamma();
    let mut acc = Float::new(w);
    for m in 0..10_000u32 {
        acc += &term;
        term *= &quarter_sq;
        term /= Float::with_val(w, &nu + (m + 1)) * (m + 1);
        if term.is_zero() || term.get_exp().unwrap_or(0) < acc.get_exp().unwrap_or(0) - w as i32 - 8 {
            break;
        }
    }
    acc
}

#[test]
fn bessel_matches_power_series() {
    for bits in [64u32, 128, 256] {
        let p = prec(bits);
        let tol = 2f64.powi(16 - bits as i32);
        for z in ["0.1", "1", "5", "20"] {
            let zf = Float::with_val(bits + 64, Float::parse(z).unwrap());
            let i1 = bessel_i_half(&zf, p).unwrap();
            let i3 = bessel_i_three_half(&zf, p).unwrap();
            assert!(rel(&i1, &bessel_series(1, &zf, bits)) <= tol, "I_1/2({z}) at {bits}");
            assert!(rel(&i3, &bessel_series(3, &zf, bits)) <= tol, "I_3/2({z}) at {bits}");
        }
    }
}

#[test]
fn precision_monotonicity() {
    for bits in [64u32, 128, 256] {
        let lo = prec(bits);
        let hi = prec(2 * bits);
        let tol = 2f64.powi(8 - bits as i32);
        let x = Float::with_val(2 * bits, 7.25);
        assert!(rel(&bessel_i_three_half(&x, lo).unwrap(), &bessel_i_three_half(&x, hi).unwrap()) <= tol);
        assert!(rel(&gamma_fn(&x, lo).unwrap(), &gamma_fn(&x, hi).unwrap()) <= tol);
        let (a, b) = (
            a0(&CuspData::new(2, 7).unwrap(), 1, 5, lo).unwrap(),
            a0(&CuspData::new(2, 7).unwrap(), 1, 5, hi).unwrap(),
        );
        assert!(abs(&Complex::with_val(2 * bits, &a - &b)) <= tol * abs(&b).max(1.0));
        let e_lo = theorem1_main(500, 1, 3, lo).unwrap().estimate;
        let e_hi = theorem1_main(500, 1, 3, hi).unwrap().estimate;
        assert!(rel(&e_lo, &e_hi) <= tol);
        let s_lo = t2_series(200, 2, 5, 5, lo).unwrap();
        let s_hi = t2_series(200, 2, 5, 5, hi).unwrap();
        assert!(rel(&s_lo, &s_hi) <= tol);
    }
}

#[test]
fn bernoulli_matches_generating_function() {
    // t/(e^t - 1) = sum B_m t^m / m!; invert e^t - 1 = t sum t^j/(j+1)!.
    let max = 30usize;
    let e: Vec<Rational> = (0..=max)
        .map(|j| {
            let mut f = Integer::from(1);
            for i in 2..=(j as u32 + 1) {
                f *= i;
            }
            Rational::from((Integer::from(1), f))
        })
        .collect();
    let mut inv = vec![Rational::new(); max + 1];
    inv[0] = Rational::from(1);
    for m in 1..=max {
        let mut acc = Rational::new();
        for j in 1..=m {
            acc += Rational::from(&e[j] * &inv[m - j]);
        }
        inv[m] = -acc;
    }
    for m in (2..=max).step_by(2) {
        let mut f = Integer::from(1);
        for i in 2..=m as u32 {
            f *= i;
        }
        assert_eq!(bernoulli(m as u32).unwrap(), Rational::from(&inv[m] * f), "B_{m}");
    }
}

#[test]
fn class_partition_identity() {
    let table = build_partition_table(40).unwrap();
    for n in 0..=40u64 {
        let total: u64 = oracle::part_histogram(n as usize).iter().sum();
        for modulus in 1..=8u64 {
            let sieve = build_divisor_sieve(modulus, 40).unwrap();
            let sum: Integer = (0..modulus)
                .map(|r| part_count_exact(&PartCountQuery::new(n, modulus, r).unwrap(), &table, &sieve).unwrap())
                .sum();
            assert_eq!(sum, total, "n = {n}, N = {modulus}");
        }
    }
}

#[test]
fn pentagonal_invariant_large_table() {
    let table = build_partition_table(5000).unwrap();
    assert_eq!(check_pentagonal(&table), Ok(()));
    let p = oracle::partitions(5000);
    assert_eq!(table.values(), &p[..]);
}

#[test]
fn parity_and_multiplicativity() {
    for modulus in 1..=30u64 {
        let all = all_characters(modulus).unwrap();
        assert_eq!(all.len() as u64, oracle::phi(modulus));
        let odd = all.iter().filter(|c| c.is_odd()).count() as u64;
        if modulus >= 3 {
            assert_eq!(odd, oracle::phi(modulus) / 2);
            assert_eq!(odd_characters(modulus).unwrap().len() as u64, odd);
        }
        for chi in all.iter() {
            assert_eq!(chi.value(0).is_zero(), modulus > 1);
            for a in 0..modulus as i64 {
                for b in 0..modulus as i64 {
                    let lhs = chi.value(a * b);
                    let rhs = match (chi.value(a), chi.value(b)) {
                        (ChiValue::Root(x), ChiValue::Root(y)) => ChiValue::Root(x.mul(y)),
                        _ => ChiValue::Zero,
                    };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn kloosterman_bounds() {
    let p = prec(128);
    for n in 0..=50u64 {
        assert_eq!(*kloosterman_a(1, n, p).real(), 1);
        for k in 1..=50u64 {
            assert!(abs(&kloosterman_a(k, n, p)) <= oracle::phi(k) as f64 + 1e-20);
        }
    }
}

#[test]
fn antisymmetry_transfer() {
    let p = Precision::default();
    let lo = CuspEvaluator::new(1, 5, p).unwrap().theorem1_terms(100).unwrap();
    let hi = CuspEvaluator::new(4, 5, p).unwrap().theorem1_terms(100).unwrap();
    let a = Float::with_val(300, &lo.0 + &lo.1);
    let b = Float::with_val(300, &hi.0 + &hi.1);
    assert!(rel(&Float::with_val(300, -b), &a) <= 1e-20);
    let lo2 = CuspEvaluator::new(2, 5, p).unwrap().theorem1_terms(100).unwrap();
    let hi2 = CuspEvaluator::new(3, 5, p).unwrap().theorem1_terms(100).unwrap();
    assert!(rel(&Float::with_val(300, -&hi2.0), &lo2.0) <= 1e-20);
    assert!(rel(&Float::with_val(300, -&hi2.1), &lo2.1) <= 1e-20);
}

#[test]
fn t1_truncation_and_sign() {
    let p = Precision::default();
    let table = oracle::partitions(10);
    let want = Float::with_val(256, &table[10]) * Float::with_val(256, &oracle::c_over_phi(1, 3));
    let k1 = t1_series(10, 1, 3, 1, p).unwrap();
    let k5 = t1_series(10, 1, 3, 5, p).unwrap();
    assert!(k5 < 0);
    assert!(Float::with_val(64, &k5 - &want).abs() < Float::with_val(64, &k1 - &want).abs());
}

#[test]
fn t2_leading_behaviour_and_dominance() {
    let p = Precision::default();
    let n = 10_000u64;
    let m = Float::with_val(300, n) - Float::with_val(300, 24u32).recip();
    let pi = Float::with_val(300, rug::float::Constant::Pi);
    let growth = Float::with_val(300, (Float::with_val(300, &m * 2u32) / 3u32).sqrt() * &pi).exp();
    let scaled = t2_series(n, 1, 3, 1, p).unwrap() * m.sqrt() / growth;
    let target = 1.0 / (6.0 * 6f64.sqrt());
    assert!((scaled.to_f64() - target).abs() < 1e-3);

    let mut last = f64::INFINITY;
    for n in [100u64, 1000, 10_000] {
        let k = oracle::ceil_sqrt(n);
        let ratio = (t1_series(n, 1, 3, k, p).unwrap() / t2_series(n, 1, 3, k, p).unwrap()).abs().to_f64();
        assert!(ratio < last, "n = {n}");
        last = ratio;
    }
}

#[test]
fn a0_and_b_k_bounds() {
    let p = prec(128);
    let modulus = 5u64;
    let mut c0 = 0.0f64;
    let mut base = 0.0f64;
    for r in [1u64, 2, 3, 4] {
        base = base.max(abs(&a0(&CuspData::new(0, 1).unwrap(), r, modulus, p).unwrap()));
        for k in 1..=12 {
            for cusp in CuspData::all_with_denominator(k) {
                c0 = c0.max(abs(&a0(&cusp, r, modulus, p).unwrap()));
            }
        }
    }
    assert!(c0 <= 10.0 * base);
    for r in [1u64, 2] {
        for k in 1..=10u64 {
            for n in [1u64, 7, 50] {
                assert!(abs(&b_k(k, n, r, modulus, p).unwrap()) <= c0 * k as f64 + 1e-20);
            }
        }
    }
    // -2 pi i B_1 > 0 at N = 3, r = 1
    let b1 = b_k(1, 5, 1, 3, p).unwrap();
    assert!(b1.real().to_f64().abs() < 1e-30 && *b1.imag() > 0);
}

#[test]
fn an_coeff_sign_under_mirror() {
    let p = prec(128);
    for (h, k) in [(1u64, 2u64), (0, 1), (2, 5)] {
        let cusp = CuspData::new(h, k).unwrap();
        let lo = CuspEvaluator::new(1, 3, p).unwrap().an_coeff(6, &cusp).unwrap();
        let hi = CuspEvaluator::new(2, 3, p).unwrap().an_coeff(6, &cusp).unwrap();
        assert!(abs(&Complex::with_val(128, &lo + &hi)) < 1e-30);
    }
}

#[test]
fn zero_class_monotone_convergence() {
    let table = build_partition_table(100_000).unwrap();
    let prec = Precision::for_index(100_000);
    for modulus in [1u64, 3, 6] {
        let mut last = f64::INFINITY;
        for n in [100u64, 1000, 10_000, 100_000] {
            let gap = (qn_ratio(n, modulus, prec, &table).unwrap().to_f64() - 1.0).abs();
            assert!(gap < last, "N = {modulus}, n = {n}");
            last = gap;
        }
    }
}

#[test]
fn hardy_ramanujan_trend() {
    let table = build_partition_table(100_000).unwrap();
    let p = Precision::for_index(100_000);
    let profile = partition_profile(2, p);
    for terms in [1u32, 3] {
        let mut last = f64::INFINITY;
        for n in [1000u64, 10_000, 100_000] {
            let approx = wright_poly_expand(&profile, n, terms, p).unwrap();
            let dev = (Float::with_val(p.work(), table.get(n).unwrap()) / approx - 1u32).abs().to_f64();
            assert!(dev < last, "M = {terms}, n = {n}");
            last = dev;
        }
    }
}
