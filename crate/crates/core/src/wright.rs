//! Wright's saddle-point expansion and the zero-class asymptotic.
//!
//! A generating function `F(q) = xi(q) L(q)` with `xi` carrying the
//! exponential growth `e^{c^2/sigma}` and `L` of polynomial or logarithmic type
//! near `q = 1` has coefficients described by a [`MajorArcProfile`].

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::{zero_class_exact, PartitionTable};
use crate::numerics::{bernoulli_table, euler_gamma, gamma_fn, log_main_term, pi, pow_rational, reciprocal_gamma, Precision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// `L(e^{-sigma}) ~ sigma^B sum alpha_l sigma^l`.
    Polynomial,
    /// `L(e^{-sigma}) ~ log(sigma) sigma^B sum alpha_l sigma^l`.
    Logarithmic,
}

#[derive(Clone, Debug)]
pub struct MajorArcProfile {
    pub kind: ProfileKind,
    pub b: Rational,
    pub beta: Rational,
    pub alphas: Vec<Float>,
    pub c: Float,
    pub gamma_bound: Float,
}

impl MajorArcProfile {
    pub fn new(
        kind: ProfileKind,
        b: Rational,
        beta: Rational,
        alphas: Vec<Float>,
        c: Float,
        gamma_bound: Float,
    ) -> Result<Self> {
        if beta < 0 {
            return Err(Error::Domain(format!("beta must be nonnegative, got {beta}")));
        }
        if c <= 0 {
            return Err(Error::Domain("c must be positive".into()));
        }
        if gamma_bound <= Float::with_val(c.prec(), c.square_ref()) {
            return Err(Error::Domain("gamma bound must exceed c^2".into()));
        }
        Ok(Self {
            kind,
            b,
            beta,
            alphas,
            c,
            gamma_bound,
        })
    }

    /// Same profile with every `alpha_l` multiplied by `factor`.
    pub fn scaled(&self, factor: &Float) -> Self {
        let mut out = self.clone();
        for a in &mut out.alphas {
            *a *= factor;
        }
        out
    }
}

/// `w_{s,r} = c^{s+beta-B+1/2} / ((-4c)^r 2 sqrt(pi)) Gamma(s+beta-B+r+3/2)
/// / (r! Gamma(s+beta-B-r+3/2))`, with `1/Gamma = 0` at the poles.
pub fn w_coeff(s: u32, r: u32, profile: &MajorArcProfile, prec: Precision) -> Result<Float> {
    let wp = prec.widened(16);
    let w = wp.work();
    let a = Rational::from(s) + &profile.beta - &profile.b + Rational::from((3, 2));
    let upper = Float::with_val(w, Rational::from(&a + r));
    let lower = Float::with_val(w, Rational::from(&a - r));
    let num = gamma_fn(&upper, wp)?;
    let inv_den = reciprocal_gamma(&lower, wp);
    if inv_den.is_zero() {
        return Ok(prec.zero());
    }
    let c = Float::with_val(w, &profile.c);
    let c_pow = pow_rational(&c, &Rational::from(&a - 1u32), wp);
    let minus_4c = Float::with_val(w, &c * -4i32);
    let denom_pow = Float::with_val(w, rug::ops::Pow::pow(&minus_4c, r));
    let mut factorial = Float::with_val(w, 1u32);
    for j in 2..=r {
        factorial *= j;
    }
    let root_pi = Float::with_val(w, pi(wp).sqrt() * 2u32);
    let value = c_pow * num * inv_den / (denom_pow * factorial * root_pi);
    Ok(prec.round(value))
}

/// `p_r = sum_{s=0}^{r} alpha_s w_{s,r-s}`.
pub fn p_coeff(r: u32, profile: &MajorArcProfile, prec: Precision) -> Result<Float> {
    if profile.alphas.len() <= r as usize {
        return Err(Error::Index(format!(
            "p_{r} needs alpha_0..alpha_{r}, profile has {} coefficients",
            profile.alphas.len()
        )));
    }
    let wp = prec.widened(8);
    let mut acc = Float::new(wp.work());
    for s in 0..=r {
        acc += Float::with_val(wp.work(), &profile.alphas[s as usize] * w_coeff(s, r - s, profile, wp)?);
    }
    Ok(prec.round(acc))
}

/// `e^{2c sqrt(n)} n^{(2B-2beta-3)/4} sum_{r<M} p_r n^{-r/2}`.
pub fn wright_poly_expand(profile: &MajorArcProfile, n: u64, terms: u32, prec: Precision) -> Result<Float> {
    if profile.kind != ProfileKind::Polynomial {
        return Err(Error::Kind { expected: "polynomial" });
    }
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let wp = prec.widened(16);
    let w = wp.work();
    let root_n = Float::with_val(w, n).sqrt();
    let mut sum = Float::new(w);
    let mut power = Float::with_val(w, 1u32);
    for r in 0..terms {
        sum += Float::with_val(w, p_coeff(r, profile, wp)? * &power);
        power /= &root_n;
    }
    let exponent = Rational::from(&profile.b * 2u32) - Rational::from(&profile.beta * 2u32) - 3u32;
    let ln_n = Float::with_val(w, n).ln();
    let log_prefactor = Float::with_val(w, ln_n * (exponent / 4u32));
    let exp_arg = Float::with_val(w, &profile.c * &root_n) * 2u32;
    Ok(prec.round(log_main_term(&exp_arg, &log_prefactor, wp) * sum))
}

/// `-e^{2c sqrt(n)} n^{-1/2} alpha_0 / (4 sqrt(pi)) (log n - 2 log c)`.
pub fn wright_log_leading(profile: &MajorArcProfile, n: u64, prec: Precision) -> Result<Float> {
    if profile.kind != ProfileKind::Logarithmic {
        return Err(Error::Kind { expected: "logarithmic" });
    }
    if Rational::from(&profile.b - &profile.beta) != Rational::from((1, 2)) {
        return Err(Error::Shape(format!(
            "the leading logarithmic term needs B - beta = 1/2, got B = {}, beta = {}",
            profile.b, profile.beta
        )));
    }
    let alpha0 = profile
        .alphas
        .first()
        .ok_or_else(|| Error::Index("profile has no alpha_0".into()))?;
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let wp = prec.widened(16);
    let w = wp.work();
    let root_n = Float::with_val(w, n).sqrt();
    let ln_n = Float::with_val(w, n).ln();
    let ln_c = Float::with_val(w, &profile.c).ln();
    let bracket = Float::with_val(w, &ln_n - ln_c * 2u32);
    let exp_arg = Float::with_val(w, &profile.c * &root_n) * 2u32;
    let main = log_main_term(&exp_arg, &Float::with_val(w, -ln_n / 2u32), wp);
    let coef = -Float::with_val(w, alpha0) / (pi(wp).sqrt() * 4u32);
    Ok(prec.round(main * coef * bracket))
}

/// `sum_j a_j x^j` times `e^{-x/24}`, coefficients `0..len`.
fn times_shift_series(base: &[Float], len: usize, w: u32) -> Vec<Float> {
    let mut shift = Vec::with_capacity(len);
    let mut term = Float::with_val(w, 1u32);
    for j in 0..len {
        shift.push(term.clone());
        term = term / -24i32 / (j as u32 + 1);
    }
    (0..len)
        .map(|l| {
            let mut acc = Float::new(w);
            for j in 0..=l {
                if let Some(a) = base.get(j) {
                    acc += Float::with_val(w, a * &shift[l - j]);
                }
            }
            acc
        })
        .collect()
}

/// `beta = 1/2`, `c = pi/sqrt(6)`, `gamma = 4 pi^2`.
fn eta_parameters(wp: Precision) -> (Rational, Float, Float) {
    let w = wp.work();
    let pi_w = pi(wp);
    let c = Float::with_val(w, &pi_w / Float::with_val(w, 6u32).sqrt());
    let gamma = Float::with_val(w, pi_w.square_ref()) * 4u32;
    (Rational::from((1, 2)), c, gamma)
}

/// The two major-arc profiles of `q^{1/24} S_0(q^N) / eta`: the logarithmic
/// part `L1` and the polynomial part `L2`, with `alpha_0..=alpha_M`.
pub fn s0_profile(modulus: u64, order: u32, prec: Precision) -> Result<(MajorArcProfile, MajorArcProfile)> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let wp = prec.widened(16);
    let w = wp.work();
    let len = order as usize + 1;
    let (beta, c, gamma) = eta_parameters(wp);
    let norm = Float::with_val(w, Float::with_val(w, pi(wp) * 2u32).sqrt() * modulus).recip();

    let log_base = vec![-Float::with_val(w, &norm)];
    let l1 = times_shift_series(&log_base, len, w);

    let nf = Float::with_val(w, modulus);
    let mut poly_base = vec![Float::with_val(w, euler_gamma(wp) - Float::with_val(w, nf.ln_ref()))];
    if len > 1 {
        poly_base.push(Float::with_val(w, &nf / 4u32));
    }
    let bern = bernoulli_table(if len > 2 { order } else { 0 });
    for j in 2..len {
        if j % 2 == 1 {
            poly_base.push(Float::new(w));
            continue;
        }
        // B_{2m}^2 N^{2m} / ((2m)! 2m)
        let mut factorial = rug::Integer::from(1);
        for i in 2..=j as u32 {
            factorial *= i;
        }
        let b2 = Rational::from(bern[j].square_ref());
        let coeff = b2 / (factorial * j as u32);
        let npow = Float::with_val(w, rug::ops::Pow::pow(&nf, j as u32));
        poly_base.push(Float::with_val(w, &coeff) * npow);
    }
    let l2: Vec<Float> = times_shift_series(&poly_base, len, w)
        .into_iter()
        .map(|a| a * &norm)
        .collect();

    let round = |v: Vec<Float>| v.into_iter().map(|a| prec.round(a)).collect::<Vec<_>>();
    let one = Rational::from(1);
    let log_part = MajorArcProfile::new(
        ProfileKind::Logarithmic,
        one.clone(),
        beta.clone(),
        round(l1),
        prec.round(c.clone()),
        prec.round(gamma.clone()),
    )?;
    let poly_part = MajorArcProfile::new(
        ProfileKind::Polynomial,
        one,
        beta,
        round(l2),
        prec.round(c),
        prec.round(gamma),
    )?;
    Ok((log_part, poly_part))
}

/// Profile of `q^{1/24} / eta`, whose coefficients are `p(n)`.
pub fn partition_profile(order: u32, prec: Precision) -> MajorArcProfile {
    let wp = prec.widened(16);
    let w = wp.work();
    let (beta, c, gamma) = eta_parameters(wp);
    let base = vec![Float::with_val(w, Float::with_val(w, pi(wp) * 2u32).sqrt().recip())];
    let alphas = times_shift_series(&base, order as usize + 1, w)
        .into_iter()
        .map(|a| prec.round(a))
        .collect();
    MajorArcProfile::new(
        ProfileKind::Polynomial,
        Rational::new(),
        beta,
        alphas,
        prec.round(c),
        prec.round(gamma),
    )
    .expect("fixed parameters are valid")
}

#[derive(Clone, Debug)]
pub struct ZeroClassAsymptotic {
    pub n: u64,
    pub modulus: u64,
    /// `log n - log(pi^2/6) + 2 gamma_E - 2 log N`.
    pub log_factor: Float,
    /// `e^{2 pi sqrt(n/6)} n^{-1/2} / (4 pi N sqrt 2)`.
    pub prefactor: Float,
    pub value: Float,
}

/// Main term for `T_{0,N}(n)`.
pub fn theorem2_main(n: u64, modulus: u64, prec: Precision) -> Result<ZeroClassAsymptotic> {
    if n == 0 || modulus == 0 {
        return Err(Error::Domain(format!("need n >= 1 and N >= 1, got n = {n}, N = {modulus}")));
    }
    let wp = prec.widened(16);
    let w = wp.work();
    let pi_w = pi(wp);
    let ln_n = Float::with_val(w, n).ln();
    let ln_zeta2 = Float::with_val(w, Float::with_val(w, pi_w.square_ref()) / 6u32).ln();
    let ln_mod = Float::with_val(w, modulus).ln();
    let log_factor = ln_n.clone() - ln_zeta2 + euler_gamma(wp) * 2u32 - ln_mod.clone() * 2u32;

    let exp_arg = Float::with_val(w, Float::with_val(w, Rational::from((n, 6))).sqrt() * &pi_w) * 2u32;
    // log(4 pi N sqrt 2)
    let ln_denom = Float::with_val(w, Float::with_val(w, &pi_w * 4u32).ln() + &ln_mod)
        + Float::with_val(w, 2u32).ln() / 2u32;
    let prefactor_log = -ln_n / 2u32 - ln_denom;
    let prefactor = log_main_term(&exp_arg, &prefactor_log, wp);
    let value = Float::with_val(w, &prefactor * &log_factor);
    Ok(ZeroClassAsymptotic {
        n,
        modulus,
        log_factor: prec.round(log_factor),
        prefactor: prec.round(prefactor),
        value: prec.round(value),
    })
}

/// The same main term assembled by the generic engine:
/// `wright_log_leading(L1) + wright_poly_expand(L2, 1)`.
pub fn theorem2_engine(n: u64, modulus: u64, prec: Precision) -> Result<Float> {
    let wp = prec.widened(16);
    let (l1, l2) = s0_profile(modulus, 1, wp)?;
    let log_part = wright_log_leading(&l1, n, wp)?;
    let poly_part = wright_poly_expand(&l2, n, 1, wp)?;
    Ok(prec.round(log_part + poly_part))
}

/// `T_{0,N}(n)` divided by the main term.
pub fn qn_ratio(n: u64, modulus: u64, prec: Precision, table: &PartitionTable) -> Result<Float> {
    let exact = zero_class_exact(n, modulus, table)?;
    let main = theorem2_main(n, modulus, prec)?;
    Ok(prec.round(Float::with_val(prec.work(), &exact) / main.value))
}
