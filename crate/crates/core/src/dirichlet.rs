//! Dirichlet characters modulo `N`.
//!
//! `(Z/NZ)^*` is decomposed into cyclic factors (CRT over prime powers,
//! primitive roots for odd prime powers, `<-1> x <5>` for `2^k`, `k >= 3`).
//! A character is an exponent vector over the generators; its values are
//! kept as exact roots of unity and only realised as complex numbers at the
//! numerics boundary.

use std::sync::Arc;

use rug::{Complex, Float, Rational};

use crate::arith::{self, gcd, inverse_mod, lcm, pow_mod, residue};
use crate::error::{Error, Result};
use crate::exact::PartitionTable;
use crate::numerics::{unit_phase, Precision};

/// Exact root of unity `exp(2 pi i num / den)` with `0 <= num < den`, reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: Self = Self { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Exponent `t` in `[0, 1)` with value `exp(2 pi i t)`.
    pub fn exponent(self) -> Rational {
        Rational::from((self.num, self.den))
    }

    pub fn mul(self, other: Self) -> Self {
        let den = lcm(self.den, other.den);
        Self::new(
            self.num * (den / self.den) + other.num * (den / other.den),
            den,
        )
    }

    pub fn conj(self) -> Self {
        Self::new(self.den - self.num, self.den)
    }

    pub fn to_complex(self, prec: Precision) -> Complex {
        match (self.num, self.den) {
            (0, _) => Complex::with_val(prec.bits(), (1, 0)),
            (1, 2) => Complex::with_val(prec.bits(), (-1, 0)),
            _ => unit_phase(&self.exponent(), prec),
        }
    }
}

/// A character value: zero off the units, an exact root of unity on them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiValue {
    Zero,
    Root(RootOfUnity),
}

impl ChiValue {
    pub fn is_zero(self) -> bool {
        matches!(self, ChiValue::Zero)
    }

    pub fn to_complex(self, prec: Precision) -> Complex {
        match self {
            ChiValue::Zero => Complex::new(prec.bits()),
            ChiValue::Root(z) => z.to_complex(prec),
        }
    }
}

/// Cyclic decomposition of `(Z/NZ)^*` with a discrete-log table.
#[derive(Debug)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    exponent: u64,
    // logs[a * rank + i] = exponent of generator i in a; unit[a] marks units.
    logs: Vec<u64>,
    unit: Vec<bool>,
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Group order `phi(N)`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn is_unit(&self, a: i64) -> bool {
        self.unit[residue(a, self.modulus) as usize]
    }

    /// Exponent vector of a unit over the generators.
    pub fn log(&self, a: i64) -> Option<&[u64]> {
        let a = residue(a, self.modulus) as usize;
        let rank = self.rank();
        self.unit[a].then(|| &self.logs[a * rank..(a + 1) * rank])
    }
}

/// Smallest primitive root modulo an odd prime power `p^e`.
fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let pe = p.pow(e);
    let factors: Vec<u64> = arith::factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    let g = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1);
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        (g + p) % pe
    } else {
        g % pe
    }
}

/// `x` with `x = g (mod pe)` and `x = 1 (mod rest)`.
fn crt_lift(g: u64, pe: u64, rest: u64) -> u64 {
    if rest == 1 {
        return g % pe;
    }
    let inv = inverse_mod(rest % pe, pe).expect("coprime CRT moduli");
    let k = arith::mul_mod((g + pe - 1) % pe, inv, pe);
    (1 + rest * k) % (pe * rest)
}

pub fn unit_group(modulus: u64) -> Result<UnitGroupStructure> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (p, e) in arith::factorize(modulus) {
        let pe = p.pow(e);
        let rest = modulus / pe;
        if p == 2 {
            match e {
                1 => {}
                2 => {
                    generators.push(crt_lift(3, 4, rest));
                    orders.push(2);
                }
                _ => {
                    generators.push(crt_lift(pe - 1, pe, rest));
                    orders.push(2);
                    generators.push(crt_lift(5, pe, rest));
                    orders.push(pe / 4);
                }
            }
        } else {
            generators.push(crt_lift(primitive_root_prime_power(p, e), pe, rest));
            orders.push((p - 1) * p.pow(e - 1));
        }
    }
    let rank = generators.len();
    let n = modulus as usize;
    let mut logs = vec![0u64; n * rank];
    let mut unit = vec![false; n];
    // Walk the product of cyclic groups, one generator at a time.
    let mut elements: Vec<(u64, Vec<u64>)> = vec![(1 % modulus, vec![0; rank])];
    for (i, (&g, &ord)) in generators.iter().zip(&orders).enumerate() {
        let mut next = Vec::with_capacity(elements.len() * ord as usize);
        for (x, exps) in &elements {
            let mut y = *x;
            for j in 0..ord {
                let mut v = exps.clone();
                v[i] = j;
                next.push((y, v));
                y = arith::mul_mod(y, g, modulus);
            }
        }
        elements = next;
    }
    for (x, exps) in elements {
        let x = x as usize;
        debug_assert!(!unit[x], "generators do not decompose the unit group");
        unit[x] = true;
        logs[x * rank..(x + 1) * rank].copy_from_slice(&exps);
    }
    let exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));
    Ok(UnitGroupStructure {
        modulus,
        generators,
        orders,
        exponent,
        logs,
        unit,
    })
}

/// A Dirichlet character modulo `N`, given by its exponents on the generators.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    parity: i8,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    pub fn new(group: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.rank()
            || exponents.iter().zip(group.orders()).any(|(a, o)| a >= o)
        {
            return Err(Error::Domain(format!(
                "exponent vector {exponents:?} does not fit orders {:?}",
                group.orders()
            )));
        }
        let mut chi = Self {
            group,
            exponents,
            parity: 1,
        };
        chi.parity = match chi.value(-1) {
            ChiValue::Root(z) if z == RootOfUnity::ONE => 1,
            _ => -1,
        };
        Ok(chi)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `psi(-1)`, either `1` or `-1`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_odd(&self) -> bool {
        self.parity == -1
    }

    pub fn value(&self, a: i64) -> ChiValue {
        let Some(logs) = self.group.log(a) else {
            return ChiValue::Zero;
        };
        let den = self.group.exponent();
        let num = self
            .exponents
            .iter()
            .zip(logs)
            .zip(self.group.orders())
            .fold(0u64, |acc, ((&k, &l), &o)| {
                (acc + arith::mul_mod(k * (den / o), l, den)) % den
            });
        ChiValue::Root(RootOfUnity::new(num, den))
    }

    pub fn value_complex(&self, a: i64, prec: Precision) -> Complex {
        self.value(a).to_complex(prec)
    }

    /// Complex conjugate character.
    pub fn conj(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(self.group.orders())
            .map(|(&k, &o)| (o - k) % o)
            .collect();
        Self {
            group: Arc::clone(&self.group),
            exponents,
            parity: self.parity,
        }
    }
}

/// `psi(a)`; zero when `gcd(a, N) > 1`.
pub fn chi_value(psi: &DirichletCharacter, a: i64) -> ChiValue {
    psi.value(a)
}

/// A set of characters sharing one modulus.
#[derive(Clone, Debug)]
pub struct CharacterSet {
    group: Arc<UnitGroupStructure>,
    members: Vec<DirichletCharacter>,
}

impl CharacterSet {
    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn group(&self) -> &UnitGroupStructure {
        &self.group
    }

    pub fn members(&self) -> &[DirichletCharacter] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DirichletCharacter> {
        self.members.iter()
    }

    /// `sum_psi psi(a)` as an exact element of `Z[zeta]`, reduced to an integer
    /// when it is one.
    pub fn exact_sum(&self, a: i64) -> Option<i64> {
        let mut acc = CyclotomicSum::new(self.group.exponent());
        for psi in &self.members {
            if let ChiValue::Root(z) = psi.value(a) {
                acc.add(z, 1);
            }
        }
        acc.as_integer()
    }

    /// `(2/phi(N)) sum_{psi odd} psi(n r')`, for a set of odd characters.
    pub fn indicator(&self, r: u64, n: i64) -> Result<i64> {
        let modulus = self.modulus();
        let r_inv = inverse_mod(r % modulus, modulus).ok_or_else(|| {
            Error::Domain(format!("indicator needs gcd(r, N) = 1, got r = {r}, N = {modulus}"))
        })?;
        let arg = arith::mul_mod(residue(n, modulus), r_inv, modulus) as i64;
        let total = self
            .exact_sum(arg)
            .ok_or_else(|| Error::Domain("odd character sum is not an integer".into()))?;
        let phi = self.group.order() as i64;
        if (2 * total) % phi != 0 {
            return Err(Error::Domain(format!(
                "2 * {total} is not divisible by phi(N) = {phi}"
            )));
        }
        Ok(2 * total / phi)
    }
}

impl<'a> IntoIterator for &'a CharacterSet {
    type Item = &'a DirichletCharacter;
    type IntoIter = std::slice::Iter<'a, DirichletCharacter>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

pub fn all_characters(modulus: u64) -> Result<CharacterSet> {
    let group = Arc::new(unit_group(modulus)?);
    let mut members = Vec::with_capacity(group.order() as usize);
    let mut exps = vec![0u64; group.rank()];
    loop {
        members.push(DirichletCharacter::new(Arc::clone(&group), exps.clone())?);
        // odometer over the exponent vectors
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(CharacterSet { group, members });
            }
            exps[i] += 1;
            if exps[i] < group.orders()[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// All characters with `psi(-1) = -1`; there are `phi(N)/2` of them for `N >= 3`.
pub fn odd_characters(modulus: u64) -> Result<CharacterSet> {
    if modulus < 3 {
        return Err(Error::Domain(format!(
            "no odd characters exist modulo {modulus}; N >= 3 is required"
        )));
    }
    let all = all_characters(modulus)?;
    Ok(CharacterSet {
        members: all.members.into_iter().filter(|c| c.is_odd()).collect(),
        group: all.group,
    })
}

/// `phi_{r,N}(n)`: `1` if `n = r`, `-1` if `n = -r (mod N)`, else `0`,
/// evaluated through the odd-character sum.
pub fn indicator(r: u64, modulus: u64, n: i64) -> Result<i64> {
    if gcd(r, modulus) != 1 {
        return Err(Error::Domain(format!(
            "indicator needs gcd(r, N) = 1, got r = {r}, N = {modulus}"
        )));
    }
    odd_characters(modulus)?.indicator(r, n)
}

fn require_odd(psi: &DirichletCharacter, what: &str) -> Result<()> {
    if !psi.is_odd() {
        return Err(Error::Domain(format!("{what} is only provided for odd characters")));
    }
    Ok(())
}

/// `L(0, psi) = -(1/N) sum_{a=1}^{N-1} psi(a) a` for odd `psi`.
pub fn l_zero(psi: &DirichletCharacter, prec: Precision) -> Result<Complex> {
    require_odd(psi, "L(0, psi)")?;
    let wp = prec.widened(16);
    let n = psi.modulus();
    let mut acc = Complex::new(wp.work());
    for a in 1..n {
        if let ChiValue::Root(z) = psi.value(a as i64) {
            acc += z.to_complex(wp) * a;
        }
    }
    acc /= n;
    acc = -acc;
    Ok(prec.round_complex(acc))
}

fn require_unit(r: u64, modulus: u64) -> Result<u64> {
    if modulus < 3 {
        return Err(Error::Domain(format!("modulus must be at least 3, got {modulus}")));
    }
    inverse_mod(r % modulus, modulus).ok_or_else(|| {
        Error::Domain(format!("gcd(r, N) = 1 is required, got r = {r}, N = {modulus}"))
    })
}

/// `c_{r,N} = -sum_{psi odd} psi(r') L(0, psi)`.
pub fn c_constant(r: u64, modulus: u64, prec: Precision) -> Result<Complex> {
    let r_inv = require_unit(r, modulus)?;
    let chars = odd_characters(modulus)?;
    c_constant_with(&chars, r_inv, prec)
}

pub(crate) fn c_constant_with(chars: &CharacterSet, r_inv: u64, prec: Precision) -> Result<Complex> {
    let wp = prec.widened(16);
    let mut acc = Complex::new(wp.work());
    for psi in chars {
        acc += psi.value_complex(r_inv as i64, wp) * l_zero(psi, wp)?;
    }
    Ok(prec.round_complex(-acc))
}

/// Fourier coefficients of the weight-one Eisenstein series attached to odd
/// `psi`: index 0 holds `L(0, psi)`, index `n >= 1` holds `2 sum_{d | n} psi(d)`.
pub fn eisenstein_coeffs(psi: &DirichletCharacter, max_index: u64, prec: Precision) -> Result<Vec<Complex>> {
    require_odd(psi, "the Eisenstein series")?;
    let m = max_index as usize;
    let mut out: Vec<Complex> = (0..=m).map(|_| Complex::new(prec.bits())).collect();
    out[0] = l_zero(psi, prec)?;
    let modulus = psi.modulus();
    // psi(d) depends only on d mod N; realise each class once.
    let classes: Vec<Option<Complex>> = (0..modulus)
        .map(|a| {
            let v = psi.value(a as i64);
            (!v.is_zero()).then(|| v.to_complex(prec))
        })
        .collect();
    for d in 1..=m {
        if let Some(v) = &classes[d % modulus as usize] {
            for n in (d..=m).step_by(d) {
                out[n] += v;
            }
        }
    }
    for c in out.iter_mut().skip(1) {
        *c *= 2;
    }
    Ok(out)
}

/// Coefficients `0..=max_index` of
/// `(1/phi(N)) (sum_j p(j) q^j) (c_{r,N} + sum_{psi odd} psi(r') E_psi)`,
/// which generate `T_{r,N}(n) - T_{N-r,N}(n)`.
pub fn g_series_coeffs(
    r: u64,
    modulus: u64,
    max_index: u64,
    table: &PartitionTable,
    prec: Precision,
) -> Result<Vec<Complex>> {
    let r_inv = require_unit(r, modulus)?;
    if table.max_n() < max_index {
        return Err(Error::Coverage(format!(
            "partition table covers n <= {}, coefficients up to {max_index} requested",
            table.max_n()
        )));
    }
    let chars = odd_characters(modulus)?;
    let wp = prec.widened(16);
    let m = max_index as usize;
    let mut eis: Vec<Complex> = (0..=m).map(|_| Complex::new(wp.work())).collect();
    eis[0] = c_constant_with(&chars, r_inv, wp)?;
    for psi in &chars {
        let weight = psi.value_complex(r_inv as i64, wp);
        for (acc, e) in eis.iter_mut().zip(eisenstein_coeffs(psi, max_index, wp)?) {
            *acc += Complex::with_val(wp.work(), &weight * e);
        }
    }
    let parts: Vec<Float> = table.values()[..=m]
        .iter()
        .map(|p| Float::with_val(wp.work(), p))
        .collect();
    let phi = chars.group().order();
    let mut out = Vec::with_capacity(m + 1);
    for n in 0..=m {
        let mut acc = Complex::new(wp.work());
        for j in 0..=n {
            acc += Complex::with_val(wp.work(), &eis[j] * &parts[n - j]);
        }
        acc /= phi;
        out.push(prec.round_complex(acc));
    }
    Ok(out)
}

/// Exact sums of roots of unity of order dividing `D`, as elements of
/// `Z[x] / Phi_D(x)`.
#[derive(Clone, Debug)]
pub struct CyclotomicSum {
    order: u64,
    counts: Vec<i64>,
}

impl CyclotomicSum {
    pub fn new(order: u64) -> Self {
        Self {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn add(&mut self, z: RootOfUnity, multiplicity: i64) {
        assert!(self.order.is_multiple_of(z.den()), "root of order {} outside Z[zeta_{}]", z.den(), self.order);
        let j = z.num() * (self.order / z.den());
        self.counts[j as usize] += multiplicity;
    }

    /// The sum as an integer, or `None` if it is not rational.
    pub fn as_integer(&self) -> Option<i64> {
        let phi = cyclotomic_polynomial(self.order);
        let mut rem = self.counts.clone();
        let deg = phi.len() - 1;
        for top in (deg..rem.len()).rev() {
            let lead = rem[top];
            if lead != 0 {
                for (i, &c) in phi.iter().enumerate() {
                    rem[top - deg + i] -= lead * c;
                }
            }
        }
        rem.truncate(deg.max(1));
        rem[1..].iter().all(|&c| c == 0).then_some(rem[0])
    }
}

/// Integer coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in arith::divisors(n) {
        if d == n {
            continue;
        }
        poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd]; // den is monic
        q[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}
