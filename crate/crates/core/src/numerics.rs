//! Arbitrary-precision real and complex arithmetic.
//!
//! Every function takes an explicit [`Precision`]. Internally the work is
//! carried out with [`GUARD_BITS`] extra bits and rounded once at the end, so
//! a result carries a relative error of at most `2^(4 - bits)`.

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Assign, Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Real number with a binary mantissa and an exponent range wide enough for
/// `exp(811)` and far beyond.
pub type HpReal = Float;

/// Complex number with [`HpReal`] components.
pub type HpComplex = Complex;

/// Extra bits carried through intermediate computations.
pub const GUARD_BITS: u32 = 32;

/// Binary working precision shared by a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT_BITS: u32 = 256;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Domain(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Self { bits })
    }

    /// Automatic precision for a computation that targets index `n`:
    /// `max(256, ceil(pi * sqrt(2n/3) / ln 2) + 64)`.
    ///
    /// The leading terms have about `pi sqrt(2n/3) / ln 2` bits of magnitude;
    /// the 64 extra bits protect ratios of two such quantities.
    pub fn for_index(n: u64) -> Self {
        let magnitude_bits = (std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt()
            / std::f64::consts::LN_2)
            .ceil() as u32;
        Self {
            bits: Self::DEFAULT_BITS.max(magnitude_bits + 64),
        }
    }

    /// Largest automatic precision over a list of target indices.
    pub fn for_indices(ns: &[u64]) -> Self {
        ns.iter()
            .map(|&n| Self::for_index(n))
            .max_by_key(|p| p.bits)
            .unwrap_or_default()
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Precision used for intermediates.
    pub fn work(self) -> u32 {
        self.bits + GUARD_BITS
    }

    /// Same context with `extra` more bits.
    pub fn widened(self, extra: u32) -> Self {
        Self {
            bits: self.bits + extra,
        }
    }

    pub fn zero(self) -> Float {
        Float::new(self.bits)
    }

    pub fn float<T>(self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    /// Tolerance `2^(16 - bits)` used when asserting that an assembled
    /// quantity is real.
    pub fn residue_tolerance(self) -> Float {
        Float::with_val(64, Float::i_exp(1, 16 - self.bits as i32))
    }

    /// Round a value computed at working precision back to this precision.
    pub fn round(self, mut value: Float) -> Float {
        value.set_prec_round(self.bits, Round::Nearest);
        value
    }

    pub fn round_complex(self, mut value: Complex) -> Complex {
        value.set_prec((self.bits, self.bits));
        value
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            bits: Self::DEFAULT_BITS,
        }
    }
}

pub fn pi(prec: Precision) -> Float {
    Float::with_val(prec.bits(), Constant::Pi)
}

/// Euler–Mascheroni constant.
pub fn euler_gamma(prec: Precision) -> Float {
    Float::with_val(prec.bits(), Constant::Euler)
}

fn is_nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

/// The gamma function. Fails with [`Error::Pole`] at `0, -1, -2, ...`.
pub fn gamma_fn(x: &Float, prec: Precision) -> Result<Float> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x.to_string_radix(10, Some(20))));
    }
    let w = Float::with_val(prec.work(), x).gamma();
    Ok(prec.round(w))
}

/// `1 / Gamma(x)`, continued by zero at the poles of `Gamma`.
pub fn reciprocal_gamma(x: &Float, prec: Precision) -> Float {
    if is_nonpositive_integer(x) {
        return prec.zero();
    }
    let w = Float::with_val(prec.work(), x).gamma().recip();
    prec.round(w)
}

/// Exact Bernoulli number `B_m` for even `m >= 2`.
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::Domain(format!(
            "Bernoulli numbers are provided for even m >= 2, got {m}"
        )));
    }
    Ok(bernoulli_table(m).pop().expect("table holds B_0..B_m"))
}

/// `B_0, ..., B_m` from `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
pub(crate) fn bernoulli_table(m: u32) -> Vec<Rational> {
    let m = m as usize;
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::from(1));
    for k in 1..=m {
        if k > 1 && k % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // C(k+1, j)
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from(&binom * bj.numer()) / bj.denom();
            binom *= (k + 1 - j) as u32;
            binom /= (j + 1) as u32;
        }
        b.push(-acc / (k as u32 + 1));
    }
    b
}

fn check_positive(z: &Float, what: &str) -> Result<()> {
    if z.is_nan() || *z <= 0 {
        return Err(Error::Domain(format!(
            "{what} requires z > 0, got {}",
            z.to_string_radix(10, Some(12))
        )));
    }
    Ok(())
}

/// Extra bits needed to absorb cancellation near zero: about `2 log2(1/z)`.
fn small_argument_bits(z: &Float) -> u32 {
    match z.get_exp() {
        Some(e) if e < 0 => (-2 * e) as u32 + 8,
        _ => 0,
    }
}

/// `I_{1/2}(z) = sqrt(2 / (pi z)) sinh z`.
pub fn bessel_i_half(z: &Float, prec: Precision) -> Result<Float> {
    check_positive(z, "I_{1/2}")?;
    let wp = prec.work();
    let z = Float::with_val(wp, z);
    let sinh = z.clone().sinh();
    let scale = half_integer_scale(&z, wp);
    Ok(prec.round(sinh * scale))
}

/// `I_{3/2}(z) = sqrt(2 / (pi z)) (cosh z - sinh z / z)`.
pub fn bessel_i_three_half(z: &Float, prec: Precision) -> Result<Float> {
    check_positive(z, "I_{3/2}")?;
    let wp = prec.work() + small_argument_bits(z);
    let z = Float::with_val(wp, z);
    let (sinh, cosh) = z.clone().sinh_cosh(Float::new(wp));
    let bracket = cosh - sinh / &z;
    let scale = half_integer_scale(&z, wp);
    Ok(prec.round(bracket * scale))
}

/// `sqrt(2 / (pi z))`.
fn half_integer_scale(z: &Float, wp: u32) -> Float {
    let pi_z = Float::with_val(wp, Constant::Pi) * z;
    (Float::with_val(wp, 2) / pi_z).sqrt()
}

/// `exp(exp_arg + prefactor_log)`, assembled in the log domain so that huge
/// main terms never pass through a bounded intermediate.
pub fn log_main_term(exp_arg: &Float, prefactor_log: &Float, prec: Precision) -> Float {
    let wp = prec.work();
    let sum = Float::with_val(wp, exp_arg + prefactor_log);
    prec.round(sum.exp())
}

/// `exp(2 pi i t)` for an exact rational `t`.
pub fn unit_phase(t: &Rational, prec: Precision) -> Complex {
    let reduced = frac(t);
    let wp = prec.work();
    let twice = Float::with_val(wp, &reduced) * 2u32;
    let cos = twice.clone().cos_pi();
    let sin = twice.sin_pi();
    prec.round_complex(Complex::with_val(wp, (cos, sin)))
}

/// Fractional part in `[0, 1)`.
pub fn frac(t: &Rational) -> Rational {
    let floor = Integer::from(t.floor_ref());
    Rational::from(t - floor)
}

/// Rational `x` realised as a float.
pub fn rational_to_float(x: &Rational, prec: Precision) -> Float {
    Float::with_val(prec.bits(), x)
}

/// Real part of `z`, after checking that `|Im z| <= 2^(16-bits) * scale`.
pub fn real_part_checked(
    z: &Complex,
    scale: &Float,
    prec: Precision,
    context: &'static str,
) -> Result<Float> {
    let tol = Float::with_val(64, prec.residue_tolerance() * scale);
    let residue = Float::with_val(64, z.imag().abs_ref());
    if residue > tol {
        return Err(Error::ImaginaryResidue {
            context,
            residue: residue.to_f64(),
            tolerance: tol.to_f64(),
        });
    }
    Ok(prec.round(z.real().clone()))
}

/// `max(|z|, 1)`, the scale used when checking dimensionless sums for reality.
pub fn unit_scale(z: &Complex) -> Float {
    let m = Float::with_val(64, z.abs_ref());
    if m > 1 {
        m
    } else {
        Float::with_val(64, 1)
    }
}

/// `x^e` for a rational exponent.
pub(crate) fn pow_rational(x: &Float, e: &Rational, prec: Precision) -> Float {
    let wp = prec.work();
    let e = Float::with_val(wp, e);
    Float::with_val(wp, x).pow(e)
}
