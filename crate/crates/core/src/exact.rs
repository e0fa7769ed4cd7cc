//! Exact part counts.
//!
//! `T_{r,N}(n)` is the total number of parts congruent to `r (mod N)` taken
//! over all partitions of `n`. Its generating function is
//! `prod (1 - q^n)^-1 * sum_m d_{r,N}(m) q^m`, where `d_{r,N}(m)` counts the
//! divisors of `m` in the class `r (mod N)`. Each queried index is evaluated
//! by a single convolution against the partition table.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rug::Integer;

use crate::error::{Error, Result};

/// Largest table index accepted by [`build_partition_table`].
pub const MAX_TABLE_INDEX: u64 = 2_000_000;

/// Largest number of sieve cells accepted by [`build_divisor_sieve`].
pub const MAX_SIEVE_CELLS: u64 = 1 << 28;

/// Largest `n` accepted by the brute-force enumeration oracle.
pub const ENUMERATION_CAP: u64 = 60;

const PTABLE_MAGIC: &str = "PTABLE v1 max=";

/// `p(0), ..., p(max_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<Integer>,
}

impl PartitionTable {
    pub fn max_n(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn get(&self, n: u64) -> Option<&Integer> {
        self.values.get(n as usize)
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    fn require(&self, n: u64) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::Coverage(format!(
                "partition table covers n <= {}, index {n} requested",
                self.max_n()
            )));
        }
        Ok(())
    }

    /// Serialise in the `PTABLE v1` cache format: a header line followed by one
    /// decimal value per line, each terminated by `\n`.
    pub fn to_ptable_string(&self) -> String {
        let mut out = format!("{PTABLE_MAGIC}{}\n", self.max_n());
        for v in &self.values {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_ptable_str(text: &str) -> Result<Self> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or_default();
        let max_n: usize = header
            .strip_prefix(PTABLE_MAGIC)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Cache(format!("bad header {header:?}")))?;
        let mut values = Vec::with_capacity(max_n + 1);
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let v = Integer::from_str_radix(line, 10)
                .map_err(|_| Error::Cache(format!("bad value line {line:?}")))?;
            values.push(v);
        }
        if values.len() != max_n + 1 {
            return Err(Error::Cache(format!(
                "header announces {} values, found {}",
                max_n + 1,
                values.len()
            )));
        }
        Ok(Self { values })
    }

    /// Write atomically: temp file in the same directory, then rename.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
        let file_name = path
            .file_name()
            .ok_or_else(|| Error::Cache(format!("cache path {path:?} has no file name")))?;
        let tmp_name = format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id());
        let tmp = match dir {
            Some(d) => d.join(tmp_name),
            None => Path::new(&tmp_name).to_path_buf(),
        };
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_ptable_string().as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read_cache(path: &Path) -> Result<Self> {
        Self::from_ptable_str(&fs::read_to_string(path)?)
    }

    /// Load the table from `path` if it covers `max_n`; otherwise build one and
    /// (re)write the cache.
    pub fn load_or_build(path: &Path, max_n: u64) -> Result<Self> {
        if let Ok(table) = Self::read_cache(path) {
            if table.max_n() >= max_n {
                return Ok(table);
            }
        }
        let table = build_partition_table(max_n)?;
        table.write_cache(path)?;
        Ok(table)
    }
}

/// Generalised pentagonal numbers `j(3j-1)/2`, `j(3j+1)/2` up to `limit`, with
/// the sign `(-1)^(j+1)`.
fn pentagonal_terms(limit: u64) -> Vec<(u64, bool)> {
    let mut out = Vec::new();
    for j in 1u64.. {
        let g1 = j * (3 * j - 1) / 2;
        if g1 > limit {
            break;
        }
        let positive = j % 2 == 1;
        out.push((g1, positive));
        let g2 = j * (3 * j + 1) / 2;
        if g2 <= limit {
            out.push((g2, positive));
        }
    }
    out
}

/// Build `p(0..=max_n)` with Euler's pentagonal recurrence.
pub fn build_partition_table(max_n: u64) -> Result<PartitionTable> {
    if max_n > MAX_TABLE_INDEX {
        return Err(Error::Resource(format!(
            "partition table up to {max_n} exceeds the limit {MAX_TABLE_INDEX}"
        )));
    }
    let terms = pentagonal_terms(max_n);
    let mut values: Vec<Integer> = Vec::with_capacity(max_n as usize + 1);
    values.push(Integer::from(1));
    for n in 1..=max_n {
        let mut acc = Integer::new();
        for &(g, positive) in terms.iter().take_while(|(g, _)| *g <= n) {
            let prev = &values[(n - g) as usize];
            if positive {
                acc += prev;
            } else {
                acc -= prev;
            }
        }
        values.push(acc);
    }
    Ok(PartitionTable { values })
}

/// Check `p(n) = sum_j (-1)^(j+1) [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)]` at
/// every index, returning the first index that fails.
pub fn check_pentagonal(table: &PartitionTable) -> std::result::Result<(), u64> {
    let terms = pentagonal_terms(table.max_n());
    for n in 1..=table.max_n() {
        let mut acc = Integer::new();
        for &(g, positive) in terms.iter().take_while(|(g, _)| *g <= n) {
            let prev = &table.values[(n - g) as usize];
            if positive {
                acc += prev;
            } else {
                acc -= prev;
            }
        }
        if acc != table.values[n as usize] {
            return Err(n);
        }
    }
    Ok(())
}

/// `d_{r,N}(m)` for `0 <= r < N`, `1 <= m <= max_m`.
#[derive(Clone, Debug)]
pub struct DivisorClassSieve {
    modulus: u64,
    max_m: u64,
    counts: Vec<u32>,
}

impl DivisorClassSieve {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn max_m(&self) -> u64 {
        self.max_m
    }

    /// Number of divisors of `m` congruent to `r (mod N)`.
    pub fn count(&self, r: u64, m: u64) -> u32 {
        assert!(m >= 1 && m <= self.max_m, "m = {m} outside the sieve");
        self.counts[(m as usize) * self.modulus as usize + (r % self.modulus) as usize]
    }

    /// Total number of divisors `sigma_0(m)`.
    pub fn total(&self, m: u64) -> u32 {
        (0..self.modulus).map(|r| self.count(r, m)).sum()
    }

    fn require(&self, modulus: u64, n: u64) -> Result<()> {
        if self.modulus != modulus {
            return Err(Error::Coverage(format!(
                "sieve is for modulus {}, modulus {modulus} requested",
                self.modulus
            )));
        }
        if n > self.max_m {
            return Err(Error::Coverage(format!(
                "sieve covers m <= {}, index {n} requested",
                self.max_m
            )));
        }
        Ok(())
    }
}

pub fn build_divisor_sieve(modulus: u64, max_m: u64) -> Result<DivisorClassSieve> {
    if modulus == 0 || max_m == 0 {
        return Err(Error::Domain(format!(
            "divisor sieve needs N >= 1 and max_m >= 1, got N = {modulus}, max_m = {max_m}"
        )));
    }
    let cells = modulus.saturating_mul(max_m + 1);
    if cells > MAX_SIEVE_CELLS {
        return Err(Error::Resource(format!(
            "divisor sieve with {cells} cells exceeds the limit {MAX_SIEVE_CELLS}"
        )));
    }
    let width = modulus as usize;
    let mut counts = vec![0u32; cells as usize];
    for d in 1..=max_m {
        let class = (d % modulus) as usize;
        let mut m = d;
        while m <= max_m {
            counts[m as usize * width + class] += 1;
            m += d;
        }
    }
    Ok(DivisorClassSieve {
        modulus,
        max_m,
        counts,
    })
}

/// `sigma_0(1..=max_m)`, index 0 unused.
pub fn divisor_counts(max_m: u64) -> Vec<u32> {
    let mut sigma = vec![0u32; max_m as usize + 1];
    for d in 1..=max_m as usize {
        for m in (d..=max_m as usize).step_by(d) {
            sigma[m] += 1;
        }
    }
    sigma
}

/// A request for `T_{r,N}(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartCountQuery {
    pub n: u64,
    pub modulus: u64,
    pub residue: u64,
}

impl PartCountQuery {
    pub fn new(n: u64, modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::Domain(format!(
                "residue must satisfy 0 <= r < N, got r = {residue}, N = {modulus}"
            )));
        }
        Ok(Self {
            n,
            modulus,
            residue,
        })
    }
}

/// `T_{r,N}(n) = sum_{m=1}^{n} d_{r,N}(m) p(n - m)`. Zero at `n = 0`.
pub fn part_count_exact(
    query: &PartCountQuery,
    table: &PartitionTable,
    sieve: &DivisorClassSieve,
) -> Result<Integer> {
    let PartCountQuery {
        n,
        modulus,
        residue,
    } = *query;
    if n == 0 {
        return Ok(Integer::new());
    }
    table.require(n)?;
    sieve.require(modulus, n)?;
    let mut acc = Integer::new();
    for m in 1..=n {
        let d = sieve.count(residue, m);
        if d != 0 {
            acc += &table.values[(n - m) as usize] * d;
        }
    }
    Ok(acc)
}

/// `T_{r,N}(n) - T_{N-r,N}(n)` for `1 <= r < N`.
pub fn part_diff_exact(
    n: u64,
    residue: u64,
    modulus: u64,
    table: &PartitionTable,
    sieve: &DivisorClassSieve,
) -> Result<Integer> {
    if residue == 0 || residue >= modulus {
        return Err(Error::Domain(format!(
            "difference needs 1 <= r < N, got r = {residue}, N = {modulus}"
        )));
    }
    if n == 0 {
        return Ok(Integer::new());
    }
    table.require(n)?;
    sieve.require(modulus, n)?;
    let mirror = modulus - residue;
    let mut acc = Integer::new();
    for m in 1..=n {
        let d = i64::from(sieve.count(residue, m)) - i64::from(sieve.count(mirror, m));
        if d != 0 {
            acc += &table.values[(n - m) as usize] * d;
        }
    }
    Ok(acc)
}

/// `T_{0,N}(n) = sum_{Nm <= n} sigma_0(m) p(n - Nm)`.
pub fn zero_class_exact(n: u64, modulus: u64, table: &PartitionTable) -> Result<Integer> {
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if n == 0 {
        return Ok(Integer::new());
    }
    table.require(n)?;
    let top = n / modulus;
    let sigma = divisor_counts(top);
    let mut acc = Integer::new();
    for m in 1..=top {
        acc += &table.values[(n - modulus * m) as usize] * sigma[m as usize];
    }
    Ok(acc)
}

/// Total occurrences of each part size over all partitions of `n`, found by
/// listing every partition as a non-increasing sequence. Index 0 unused.
pub fn part_size_histogram(n: u64) -> Result<Vec<u64>> {
    if n > ENUMERATION_CAP {
        return Err(Error::Guard {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let n = n as usize;
    let mut hist = vec![0u64; n + 1];
    let mut parts: Vec<usize> = Vec::with_capacity(n);
    fn walk(remaining: usize, max_part: usize, parts: &mut Vec<usize>, hist: &mut [u64]) {
        if remaining == 0 {
            for &p in parts.iter() {
                hist[p] += 1;
            }
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            parts.push(part);
            walk(remaining - part, part, parts, hist);
            parts.pop();
        }
    }
    if n > 0 {
        walk(n, n, &mut parts, &mut hist);
    }
    Ok(hist)
}

/// `T_{r,N}(n)` by explicit enumeration of all partitions of `n <= 60`.
pub fn enumerate_oracle(n: u64, residue: u64, modulus: u64) -> Result<u64> {
    let hist = part_size_histogram(n)?;
    if modulus == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    Ok(hist
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(size, _)| *size as u64 % modulus == residue % modulus)
        .map(|(_, &count)| count)
        .sum())
}
