//! Circle-method machinery for `T_{r,N}(n) - T_{N-r,N}(n)`.
//!
//! Dedekind sums, the Kloosterman-type sums `A_k(n)`, Rademacher's series for
//! `p(n)`, the cusp constants of the Eisenstein combination, and the series
//! `T1 + T2` together with its two-term truncation.

use rayon::prelude::*;
use rug::{Complex, Float, Integer, Rational};

use crate::arith::{ceil_sqrt, euler_phi, gcd, inverse_mod, residue};
use crate::dirichlet::{c_constant_with, l_zero, odd_characters, CharacterSet, DirichletCharacter, RootOfUnity};
use crate::error::{Error, Result};
use crate::exact::{part_diff_exact, DivisorClassSieve, PartitionTable};
use crate::numerics::{
    bessel_i_half, bessel_i_three_half, log_main_term, pi, real_part_checked, unit_scale, Precision,
};

/// A cusp `h/k` together with `H`, `hH = -1 (mod k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuspData {
    h: u64,
    k: u64,
    big_h: u64,
}

impl CuspData {
    pub fn new(h: u64, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("cusp denominator must be positive".into()));
        }
        if k == 1 {
            if h != 0 {
                return Err(Error::Domain(format!("the cusp with k = 1 is h = 0, got h = {h}")));
            }
            return Ok(Self { h: 0, k: 1, big_h: 1 });
        }
        if h == 0 || h >= k || gcd(h, k) != 1 {
            return Err(Error::Domain(format!(
                "cusp needs 0 < h < k with gcd(h, k) = 1, got h = {h}, k = {k}"
            )));
        }
        let big_h = k - inverse_mod(h, k).expect("h is a unit");
        Ok(Self { h, k, big_h })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `H` with `1 <= H <= k` and `hH = -1 (mod k)`.
    pub fn big_h(&self) -> u64 {
        self.big_h
    }

    /// `(hH + 1) / k`.
    pub fn a(&self) -> u64 {
        (self.h * self.big_h + 1) / self.k
    }

    /// The cusps with denominator `k`: `h = 0` for `k = 1`, otherwise the
    /// units `0 < h < k`.
    pub fn all_with_denominator(k: u64) -> Vec<Self> {
        if k == 1 {
            return vec![Self { h: 0, k: 1, big_h: 1 }];
        }
        (1..k)
            .filter(|&h| gcd(h, k) == 1)
            .map(|h| Self::new(h, k).expect("unit"))
            .collect()
    }
}

/// `2 k^2 s(h, k) = sum_{r=1}^{k-1} r (2 (hr mod k) - k)`.
fn dedekind_numerator(h: u64, k: u64) -> i128 {
    let (h, k) = (h as i128, k as i128);
    (1..k).map(|r| r * (2 * ((h * r) % k) - k)).sum()
}

/// `s(h, k) = sum_{r=1}^{k-1} (r/k) ((hr/k)) ` with the sawtooth `((x))`.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("Dedekind sum needs k >= 1".into()));
    }
    let hr = residue(h, k);
    if gcd(hr, k) != 1 {
        return Err(Error::Domain(format!("Dedekind sum needs gcd(h, k) = 1, got h = {h}, k = {k}")));
    }
    let den = Integer::from(2u64) * Integer::from(k) * Integer::from(k);
    Ok(Rational::from((Integer::from(dedekind_numerator(hr, k)), den)))
}

/// `e^{pi i s(h,k) - 2 pi i n h / k}` as an exact root of unity of order
/// dividing `4k^2`.
fn eta_phase(h: u64, k: u64, n: u64) -> RootOfUnity {
    let den = 4 * (k as i128) * (k as i128);
    let num = dedekind_numerator(h, k) - 4 * (k as i128) * ((n as i128 * h as i128) % k as i128);
    RootOfUnity::new(num.rem_euclid(den) as u64, den as u64)
}

fn reduced_residues(k: u64) -> Vec<u64> {
    if k == 1 {
        vec![0]
    } else {
        (1..k).filter(|&h| gcd(h, k) == 1).collect()
    }
}

/// `A_k(n) = sum_{h mod k, gcd(h,k)=1} e^{pi i s(h,k) - 2 pi i n h / k}`.
pub fn kloosterman_a(k: u64, n: u64, prec: Precision) -> Complex {
    assert!(k >= 1, "k must be positive");
    let wp = prec.widened(16);
    let mut acc = Complex::new(wp.work());
    for h in reduced_residues(k) {
        acc += eta_phase(h, k, n).to_complex(wp);
    }
    prec.round_complex(acc)
}

/// Real part of `A_k(n)` summed from cosines only.
fn kloosterman_a_real(k: u64, n: u64, wp: Precision) -> Float {
    let mut acc = Float::new(wp.work());
    for h in reduced_residues(k) {
        let z = eta_phase(h, k, n);
        let t = Float::with_val(wp.work(), &z.exponent()) * 2u32;
        acc += t.cos_pi();
    }
    acc
}

/// `n - 1/24`.
fn shifted(n: u64) -> Rational {
    Rational::from(n) - Rational::from((1, 24))
}

/// `pi sqrt(2m/3)` with `m = n - 1/24`.
fn saddle(m: &Rational, wp: u32) -> Float {
    let two_thirds = Float::with_val(wp, m * Rational::from((2, 3)));
    Float::with_val(wp, two_thirds.sqrt() * pi(Precision::new(wp).expect("wide")))
}

fn require_series_args(n: u64, truncation: u64) -> Result<()> {
    if n == 0 || truncation == 0 {
        return Err(Error::Domain(format!(
            "series needs n >= 1 and K >= 1, got n = {n}, K = {truncation}"
        )));
    }
    Ok(())
}

/// `sum_{k <= K} A_k(n)/k I_{3/2}(pi sqrt(2m/3) / k)`, summed in increasing `k`.
fn rademacher_sum(n: u64, truncation: u64, wp: Precision) -> Result<Float> {
    let m = shifted(n);
    let z = saddle(&m, wp.work());
    let terms: Vec<Float> = (1..=truncation)
        .into_par_iter()
        .map(|k| -> Result<Float> {
            let a = kloosterman_a_real(k, n, wp);
            if a.is_zero() {
                return Ok(Float::new(wp.work()));
            }
            let arg = Float::with_val(wp.work(), &z / k);
            let bessel = bessel_i_three_half(&arg, wp)?;
            Ok(Float::with_val(wp.work(), a * bessel) / k)
        })
        .collect::<Result<_>>()?;
    let mut acc = Float::new(wp.work());
    for t in terms {
        acc += t;
    }
    Ok(acc)
}

/// `2 pi / (24 m)^{3/4}`.
fn rademacher_prefactor(m: &Rational, wp: Precision) -> Float {
    let w = wp.work();
    let base = Float::with_val(w, Rational::from(m * 24u32));
    let quarter = Float::with_val(w, base.sqrt()).sqrt();
    let three_quarter = Float::with_val(w, &quarter * &quarter) * &quarter;
    Float::with_val(w, pi(wp) * 2u32) / three_quarter
}

/// Partial sum `k <= K` of Rademacher's series for `p(n)`.
pub fn p_rademacher(n: u64, truncation: u64, prec: Precision) -> Result<Float> {
    require_series_args(n, truncation)?;
    let wp = prec.widened(16);
    let sum = rademacher_sum(n, truncation, wp)?;
    Ok(prec.round(rademacher_prefactor(&shifted(n), wp) * sum))
}

/// `zeta^d(1) = pi i / N + (pi / N) cot(pi d / N)`.
pub fn zeta_special(d: i64, modulus: u64, prec: Precision) -> Result<Complex> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let d = residue(d, modulus);
    if d == 0 {
        return Err(Error::Singularity(format!("zeta^d(1) with d = 0 (mod {modulus})")));
    }
    let w = prec.work();
    let pi_n = Float::with_val(w, pi(prec.widened(GUARD)) / modulus);
    let re = Float::with_val(w, &pi_n * cot_pi(&Rational::from((d, modulus)), w));
    Ok(prec.round_complex(Complex::with_val(w, (re, pi_n))))
}

const GUARD: u32 = crate::numerics::GUARD_BITS;

/// `cot(pi t)`.
fn cot_pi(t: &Rational, w: u32) -> Float {
    let t = Float::with_val(w, t);
    let sin = Float::with_val(w, t.sin_pi_ref());
    Float::with_val(w, t.cos_pi_ref()) / sin
}

fn require_odd(psi: &DirichletCharacter) -> Result<()> {
    if !psi.is_odd() {
        return Err(Error::Domain("cusp constants are defined for odd characters".into()));
    }
    Ok(())
}

/// `-(1/N) sum_{e mod N} (xbar/N - 1/2)` with `x = -hc - ke (mod N)`.
fn correction_sum(cusp: &CuspData, c: u64, modulus: u64) -> Rational {
    let n = modulus as i128;
    let mut acc = Rational::new();
    for e in 0..modulus {
        let x = (-(cusp.h as i128) * c as i128 - cusp.k as i128 * e as i128).rem_euclid(n);
        acc += Rational::from((x as i64, modulus)) - Rational::from((1, 2));
    }
    -acc / modulus
}

/// `A c + H e (mod N)` for every `e` with `-hc - ke = 0 (mod N)`.
fn zeta_indices(cusp: &CuspData, c: u64, modulus: u64) -> impl Iterator<Item = i64> + '_ {
    let n = modulus as i128;
    let (h, k, a, big_h) = (cusp.h as i128, cusp.k as i128, cusp.a() as i128, cusp.big_h as i128);
    (0..modulus as i128)
        .filter(move |&e| (-h * c as i128 - k * e).rem_euclid(n) == 0)
        .map(move |e| (a * c as i128 + big_h * e).rem_euclid(n) as i64)
}

/// `c_psi(h,k) = -(1/2 pi i) sum_{c,e mod N} psi(c) (delta(-hc-ke) zeta^{Ac+He}(1)
/// + (2 pi i / N)(xbar/N - 1/2))`.
pub fn c_psi_cusp(psi: &DirichletCharacter, cusp: &CuspData, prec: Precision) -> Result<Complex> {
    require_odd(psi)?;
    let modulus = psi.modulus();
    let wp = prec.widened(16);
    let w = wp.work();
    let two_pi = Float::with_val(w, pi(wp) * 2u32);
    let mut acc = Complex::new(w);
    for c in 1..modulus {
        let chi = psi.value(c as i64);
        if chi.is_zero() {
            continue;
        }
        let mut inner = Complex::with_val(w, (Float::with_val(w, &correction_sum(cusp, c, modulus)), 0));
        for d in zeta_indices(cusp, c, modulus) {
            let z = zeta_special(d, modulus, wp)?;
            // -(1/(2 pi i)) z = i z / (2 pi)
            let rotated = Complex::with_val(w, (-Float::with_val(w, z.imag()), z.real().clone()));
            inner += rotated / &two_pi;
        }
        acc += inner * chi.to_complex(wp);
    }
    Ok(prec.round_complex(acc))
}

fn require_unit_residue(r: u64, modulus: u64) -> Result<u64> {
    if modulus < 3 {
        return Err(Error::Domain(format!("modulus must be at least 3, got {modulus}")));
    }
    if r == 0 || r >= modulus {
        return Err(Error::Domain(format!("residue must satisfy 1 <= r < N, got r = {r}, N = {modulus}")));
    }
    inverse_mod(r, modulus)
        .ok_or_else(|| Error::Domain(format!("gcd(r, N) = 1 is required, got r = {r}, N = {modulus}")))
}

/// Character data for one `(r, N)`, realised once at a fixed precision.
pub struct CuspEvaluator {
    modulus: u64,
    residue: u64,
    prec: Precision,
    chars: CharacterSet,
    r_inv: u64,
    // weights[c] = sum_{psi odd} psi(r') psi(c)
    weights: Vec<Option<Complex>>,
    // zeta[d] = zeta^d(1) for d = 1..N-1
    zeta: Vec<Option<Complex>>,
    roots: Vec<Complex>,
    two_pi: Float,
}

impl CuspEvaluator {
    pub fn new(r: u64, modulus: u64, prec: Precision) -> Result<Self> {
        let r_inv = require_unit_residue(r, modulus)?;
        let chars = odd_characters(modulus)?;
        let wp = prec.widened(16);
        let w = wp.work();
        let weights = (0..modulus)
            .map(|c| {
                let mut acc = Complex::new(w);
                let mut any = false;
                for psi in &chars {
                    if let (crate::dirichlet::ChiValue::Root(a), crate::dirichlet::ChiValue::Root(b)) =
                        (psi.value(r_inv as i64), psi.value(c as i64))
                    {
                        acc += a.mul(b).to_complex(wp);
                        any = true;
                    }
                }
                any.then_some(acc)
            })
            .collect();
        let zeta = (0..modulus)
            .map(|d| if d == 0 { Ok(None) } else { zeta_special(d as i64, modulus, wp).map(Some) })
            .collect::<Result<_>>()?;
        let roots = (0..modulus).map(|j| RootOfUnity::new(j, modulus).to_complex(wp)).collect();
        Ok(Self {
            modulus,
            residue: r,
            prec,
            chars,
            r_inv,
            weights,
            zeta,
            roots,
            two_pi: Float::with_val(w, pi(wp) * 2u32),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn characters(&self) -> &CharacterSet {
        &self.chars
    }

    fn wp(&self) -> Precision {
        self.prec.widened(16)
    }

    fn a0_work(&self, cusp: &CuspData) -> Result<Complex> {
        let w = self.wp().work();
        let mut acc = Complex::new(w);
        for c in 1..self.modulus {
            let Some(weight) = &self.weights[c as usize] else { continue };
            let mut inner = Complex::with_val(w, (Float::with_val(w, &correction_sum(cusp, c, self.modulus)), 0));
            for d in zeta_indices(cusp, c, self.modulus) {
                let z = self.zeta[d as usize].as_ref().ok_or_else(|| {
                    Error::Singularity(format!(
                        "zeta^0(1) required at h = {}, k = {}, c = {c}, N = {}",
                        cusp.h, cusp.k, self.modulus
                    ))
                })?;
                let rotated = Complex::with_val(w, (-Float::with_val(w, z.imag()), z.real().clone()));
                inner += rotated / &self.two_pi;
            }
            acc += inner * weight;
        }
        Ok(acc)
    }

    /// `a_0(h,k) = sum_{psi odd} c_psi(h,k) psi(r')`.
    pub fn a0(&self, cusp: &CuspData) -> Result<Complex> {
        Ok(self.prec.round_complex(self.a0_work(cusp)?))
    }

    /// `a_m(h,k)`: the `m`-th coefficient of the Eisenstein combination at the
    /// cusp, `(1/N) sum_{c,e} w_c sum_{d | m, m/d = -hc-ke (mod N)} sgn(d)
    /// e^{2 pi i d (Ac + He) / N}`, with `d` over positive and negative divisors.
    pub fn an_coeff(&self, m: u64, cusp: &CuspData) -> Result<Complex> {
        if m == 0 {
            return Err(Error::Domain("an_coeff needs m >= 1; the constant term is a0".into()));
        }
        let n = self.modulus as i128;
        let w = self.wp().work();
        let divisors: Vec<i128> = crate::arith::divisors(m)
            .into_iter()
            .flat_map(|d| [d as i128, -(d as i128)])
            .collect();
        let (h, k, a, big_h) = (cusp.h as i128, cusp.k as i128, cusp.a() as i128, cusp.big_h as i128);
        let mut acc = Complex::new(w);
        for c in 1..self.modulus {
            let Some(weight) = &self.weights[c as usize] else { continue };
            let mut inner = Complex::new(w);
            for e in 0..self.modulus as i128 {
                let x = (-h * c as i128 - k * e).rem_euclid(n);
                let shift = a * c as i128 + big_h * e;
                for &d in &divisors {
                    if (m as i128 / d).rem_euclid(n) != x {
                        continue;
                    }
                    let root = &self.roots[(d * shift).rem_euclid(n) as usize];
                    if d > 0 {
                        inner += root;
                    } else {
                        inner -= root;
                    }
                }
            }
            acc += inner * weight;
        }
        acc /= self.modulus;
        Ok(self.prec.round_complex(acc))
    }

    fn b_k_work(&self, k: u64, n: u64) -> Result<Complex> {
        let wp = self.wp();
        let mut acc = Complex::new(wp.work());
        for cusp in CuspData::all_with_denominator(k) {
            let a0 = self.a0_work(&cusp)?;
            if a0.is_zero() {
                continue;
            }
            acc += a0 * eta_phase(cusp.h, k, n).to_complex(wp);
        }
        Ok(acc)
    }

    /// `B_k(n) = sum_h a_0(h,k) e^{pi i s(h,k) - 2 pi i n h / k}`.
    pub fn b_k(&self, k: u64, n: u64) -> Result<Complex> {
        if k == 0 {
            return Err(Error::Domain("B_k needs k >= 1".into()));
        }
        Ok(self.prec.round_complex(self.b_k_work(k, n)?))
    }

    /// `c_{r,N}`, real.
    pub fn c_constant(&self) -> Result<Float> {
        let wp = self.wp();
        let c = c_constant_with(&self.chars, self.r_inv, wp)?;
        real_part_checked(&c, &unit_scale(&c), wp, "c_{r,N}")
    }

    pub fn t1_series(&self, n: u64, truncation: u64) -> Result<Float> {
        require_series_args(n, truncation)?;
        let wp = self.wp();
        let phi = euler_phi(self.modulus);
        let sum = rademacher_sum(n, truncation, wp)?;
        let value = rademacher_prefactor(&shifted(n), wp) * sum * self.c_constant()? / phi;
        Ok(self.prec.round(value))
    }

    pub fn t2_series(&self, n: u64, truncation: u64) -> Result<Float> {
        require_series_args(n, truncation)?;
        let wp = self.wp();
        let w = wp.work();
        let m = shifted(n);
        let z = saddle(&m, w);
        let terms: Vec<Complex> = (1..=truncation)
            .into_par_iter()
            .map(|k| -> Result<Complex> {
                let b = self.b_k_work(k, n)?;
                let arg = Float::with_val(w, &z / k);
                let bessel = bessel_i_half(&arg, wp)?;
                Ok(Complex::with_val(w, b * bessel) / k)
            })
            .collect::<Result<_>>()?;
        let mut sum = Complex::new(w);
        for t in terms {
            sum += t;
        }
        let pi_w = pi(wp);
        // (pi/12)^{1/2} (pi^2 m / 6)^{-1/4}
        let root = Float::with_val(w, &pi_w / 12u32).sqrt();
        let quartic = Float::with_val(w, Float::with_val(w, &pi_w * &pi_w) * Float::with_val(w, &m) / 6u32);
        let quartic = quartic.sqrt().sqrt();
        let scale = Float::with_val(w, &pi_w * 2u32) * root / quartic / euler_phi(self.modulus);
        // -2 pi i sum = 2 pi (Im sum - i Re sum)
        let value = Complex::with_val(w, (Float::with_val(w, sum.imag()), -Float::with_val(w, sum.real()))) * &scale;
        real_part_checked(&value, &unit_scale(&value), self.prec, "T2 series")
    }

    /// Cotangent and `L(0, psi)` terms without the `r < N/2` restriction.
    pub fn theorem1_terms(&self, n: u64) -> Result<(Float, Float)> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        let wp = self.wp();
        let w = wp.work();
        let modulus = self.modulus;
        let phi = euler_phi(modulus);
        // sum_psi psi(r') sum_c psi(c) cot(pi c / N)
        let mut cot_sum = Complex::new(w);
        let mut l_sum = Complex::new(w);
        for c in 1..modulus {
            let Some(weight) = &self.weights[c as usize] else { continue };
            cot_sum += Complex::with_val(w, weight * cot_pi(&Rational::from((c, modulus)), w));
        }
        for psi in &self.chars {
            l_sum += psi.value_complex(self.r_inv as i64, wp) * l_zero(psi, wp)?;
        }
        let cot_sum = real_part_checked(&cot_sum, &unit_scale(&cot_sum), wp, "cotangent sum")?;
        let l_sum = real_part_checked(&l_sum, &unit_scale(&l_sum), wp, "L(0, psi) sum")?;

        let m = shifted(n);
        let exp_arg = saddle(&m, w);
        let ln_m = Float::with_val(w, &m).ln();

        let sqrt2 = Float::with_val(w, 2u32).sqrt();
        let coef1 = cot_sum / (Float::with_val(w, sqrt2 * 2u32) * phi * modulus);
        let sqrt3 = Float::with_val(w, 3u32).sqrt();
        let coef2 = -l_sum / (Float::with_val(w, sqrt3 * 4u32) * phi);

        let half_ln_m = Float::with_val(w, &ln_m / 2u32);
        let main1 = coef1 * log_main_term(&exp_arg, &(-half_ln_m), wp);
        let main2 = coef2 * log_main_term(&exp_arg, &(-ln_m), wp);
        Ok((self.prec.round(main1), self.prec.round(main2)))
    }
}

/// `c_psi` summed against `psi(r')`.
pub fn a0(cusp: &CuspData, r: u64, modulus: u64, prec: Precision) -> Result<Complex> {
    CuspEvaluator::new(r, modulus, prec)?.a0(cusp)
}

pub fn an_coeff(m: u64, cusp: &CuspData, r: u64, modulus: u64, prec: Precision) -> Result<Complex> {
    CuspEvaluator::new(r, modulus, prec)?.an_coeff(m, cusp)
}

pub fn b_k(k: u64, n: u64, r: u64, modulus: u64, prec: Precision) -> Result<Complex> {
    CuspEvaluator::new(r, modulus, prec)?.b_k(k, n)
}

pub fn t1_series(n: u64, r: u64, modulus: u64, truncation: u64, prec: Precision) -> Result<Float> {
    CuspEvaluator::new(r, modulus, prec)?.t1_series(n, truncation)
}

pub fn t2_series(n: u64, r: u64, modulus: u64, truncation: u64, prec: Precision) -> Result<Float> {
    CuspEvaluator::new(r, modulus, prec)?.t2_series(n, truncation)
}

/// Default truncation `K = ceil(sqrt(n))`.
pub fn default_truncation(n: u64) -> u64 {
    ceil_sqrt(n).max(1)
}

/// Estimate for `T_{r,N}(n) - T_{N-r,N}(n)`.
#[derive(Clone, Debug)]
pub struct AsymptoticDiffResult {
    pub n: u64,
    pub r: u64,
    pub modulus: u64,
    /// Cotangent term.
    pub main1: Float,
    /// `L(0, psi)` term.
    pub main2: Float,
    pub t1: Option<Float>,
    pub t2: Option<Float>,
    pub estimate: Float,
    pub truncation: Option<u64>,
}

fn require_theorem1(r: u64, modulus: u64) -> Result<()> {
    if modulus < 3 || r == 0 || 2 * r >= modulus || gcd(r, modulus) != 1 {
        return Err(Error::Domain(format!(
            "the two-term estimate needs N >= 3, 1 <= r < N/2 and gcd(r, N) = 1, got r = {r}, N = {modulus}"
        )));
    }
    Ok(())
}

/// Two-term estimate `main1 + main2`.
pub fn theorem1_main(n: u64, r: u64, modulus: u64, prec: Precision) -> Result<AsymptoticDiffResult> {
    require_theorem1(r, modulus)?;
    let eval = CuspEvaluator::new(r, modulus, prec)?;
    let (main1, main2) = eval.theorem1_terms(n)?;
    let estimate = prec.round(Float::with_val(prec.work(), &main1 + &main2));
    Ok(AsymptoticDiffResult {
        n,
        r,
        modulus,
        main1,
        main2,
        t1: None,
        t2: None,
        estimate,
        truncation: None,
    })
}

/// Series estimate `T1 + T2` truncated at `k <= K`, with the two-term
/// breakdown alongside.
pub fn theorem1_series(
    n: u64,
    r: u64,
    modulus: u64,
    truncation: u64,
    prec: Precision,
) -> Result<AsymptoticDiffResult> {
    require_theorem1(r, modulus)?;
    let eval = CuspEvaluator::new(r, modulus, prec)?;
    let (main1, main2) = eval.theorem1_terms(n)?;
    let t1 = eval.t1_series(n, truncation)?;
    let t2 = eval.t2_series(n, truncation)?;
    let estimate = prec.round(Float::with_val(prec.work(), &t1 + &t2));
    Ok(AsymptoticDiffResult {
        n,
        r,
        modulus,
        main1,
        main2,
        t1: Some(t1),
        t2: Some(t2),
        estimate,
        truncation: Some(truncation),
    })
}

/// Exact difference divided by the two-term estimate.
pub fn q_ratio(
    n: u64,
    r: u64,
    modulus: u64,
    prec: Precision,
    table: &PartitionTable,
    sieve: &DivisorClassSieve,
) -> Result<Float> {
    let est = theorem1_main(n, r, modulus, prec)?;
    let exact = part_diff_exact(n, r, modulus, table, sieve)?;
    let w = prec.work();
    Ok(prec.round(Float::with_val(w, &exact) / est.estimate))
}
