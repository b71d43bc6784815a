//! Exact irreducible character values of the symmetric group.
//!
//! Character values are computed by the rim-hook (Murnaghan-Nakayama)
//! recursion. Rim hooks are enumerated on the first-column hook lengths
//! (beta numbers) of the shape: removing an `r`-rim hook subtracts `r` from
//! one beta number whenever the result is a fresh nonnegative value, and the
//! leg length is the number of beta numbers strictly between the old and new
//! value. That makes enumeration linear in the number of rows and gives the
//! sign without walking the diagram border.

use std::collections::HashMap;

use num::bigint::{BigInt, BigUint};
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partitions::{class_descriptor, enumerate_partitions, Partition};
use crate::util::factorial;

/// Hook length of the box `(i, j)` (1-based row and column) in `lambda`;
/// 0 when the box lies outside the diagram.
pub fn hook_length(lambda: &Partition, i: usize, j: usize) -> u32 {
    if i == 0 || j == 0 || i > lambda.len() {
        return 0;
    }
    let row = lambda.part(i - 1);
    if j as u32 > row {
        return 0;
    }
    let col_height = lambda
        .parts()
        .iter()
        .take_while(|&&p| p >= j as u32)
        .count();
    let arm = row - j as u32;
    let leg = col_height as u32 - i as u32;
    arm + leg + 1
}

/// Dimension of the irreducible character labelled by `lambda`, by the hook
/// formula `n! / prod of hook lengths`.
pub fn dimension(lambda: &Partition) -> BigUint {
    let mut denom = BigUint::one();
    for i in 1..=lambda.len() {
        for j in 1..=lambda.part(i - 1) as usize {
            denom *= BigUint::from(hook_length(lambda, i, j));
        }
    }
    let numer = factorial(lambda.n());
    debug_assert!((&numer % &denom).is_zero());
    numer / denom
}

/// One way of removing an `r`-rim hook from a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RimHookRemoval {
    /// The shape left after removal.
    pub result: Partition,
    /// Rows spanned by the hook, minus one.
    pub leg_length: u32,
    /// Number of boxes removed.
    pub size: u32,
}

fn beta_set(lambda: &Partition) -> Vec<u32> {
    let rows = lambda.len() as u32;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + rows - 1 - i as u32)
        .collect()
}

fn partition_from_betas(mut betas: Vec<u32>) -> Partition {
    betas.sort_unstable_by(|a, b| b.cmp(a));
    let rows = betas.len() as u32;
    let parts: Vec<u32> = betas
        .iter()
        .enumerate()
        .map(|(i, &b)| b + 1 + i as u32 - rows)
        .take_while(|&p| p > 0)
        .collect();
    Partition::from_sorted_unchecked(parts)
}

/// All distinct `r`-rim hooks of `lambda`, in row order of the removed hook's
/// starting row; empty when none exist.
pub fn rim_hooks(lambda: &Partition, r: u32) -> Vec<RimHookRemoval> {
    let mut out = Vec::new();
    if r == 0 || r > lambda.n() {
        return out;
    }
    let betas = beta_set(lambda);
    for (i, &b) in betas.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if betas.contains(&target) {
            continue;
        }
        let leg_length = betas
            .iter()
            .filter(|&&other| target < other && other < b)
            .count() as u32;
        let mut next = betas.clone();
        next[i] = target;
        out.push(RimHookRemoval {
            result: partition_from_betas(next),
            leg_length,
            size: r,
        });
    }
    out
}

type MnCache = HashMap<(Vec<u32>, Vec<u32>), BigInt>;

fn mn_recurse(shape: &Partition, cycles: &[u32], cache: &mut MnCache) -> BigInt {
    if cycles.is_empty() {
        debug_assert!(shape.is_empty());
        return BigInt::one();
    }
    let key = (shape.parts().to_vec(), cycles.to_vec());
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let q = cycles[0];
    let mut acc = BigInt::zero();
    for removal in rim_hooks(shape, q) {
        let term = mn_recurse(&removal.result, &cycles[1..], cache);
        if removal.leg_length % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    cache.insert(key, acc.clone());
    acc
}

/// The character value `chi^lambda(mu)`: the rim-hook recursion removes the
/// cycles of `mu` longest first, with `chi^()(()); = 1` as the base case.
///
/// Both arguments must partition the same `n`. Single values need no table
/// and work well past the full-table limit.
pub fn character_value(lambda: &Partition, mu: &Partition) -> BigInt {
    assert_eq!(
        lambda.n(),
        mu.n(),
        "character label and class must partition the same integer"
    );
    let mut cache = MnCache::new();
    mn_recurse(lambda, mu.parts(), &mut cache)
}

/// Whether `chi^lambda` is nonzero on the class `mu`.
pub fn has_nonzero_on(lambda: &Partition, mu: &Partition) -> bool {
    !character_value(lambda, mu).is_zero()
}

/// The complete exact character table of the symmetric group of degree `n`.
///
/// Rows are characters, columns are classes, both indexed by partitions in
/// the canonical order. Built cell-by-cell through the rim-hook recursion
/// with a cache shared across the build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    n: u32,
    labels: Vec<Partition>,
    index: HashMap<Vec<u32>, usize>,
    values: Vec<BigInt>,
    class_sizes: Vec<BigUint>,
}

/// Full tables refuse to build above this degree by default; the cost grows
/// with `P(n)^2` cells. Single character values have no such limit.
pub const DEFAULT_TABLE_LIMIT: u32 = 20;

const CACHE_MAGIC: &[u8; 4] = b"SKCT";
const CACHE_VERSION: u32 = 1;

impl CharacterTable {
    pub fn build(n: u32) -> Result<Self> {
        Self::build_with_limit(n, DEFAULT_TABLE_LIMIT)
    }

    pub fn build_with_limit(n: u32, limit: u32) -> Result<Self> {
        if n == 0 || n > limit {
            return Err(Error::TableLimit { n, limit });
        }
        let labels = enumerate_partitions(n);
        let count = labels.len();
        let index: HashMap<Vec<u32>, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, p)| (p.parts().to_vec(), i))
            .collect();
        let mut values = Vec::with_capacity(count * count);
        let mut cache = MnCache::new();
        for lambda in &labels {
            for mu in &labels {
                values.push(mn_recurse(lambda, mu.parts(), &mut cache));
            }
        }
        let class_sizes = labels
            .iter()
            .map(|mu| class_descriptor(mu).size().clone())
            .collect();
        Ok(CharacterTable {
            n,
            labels,
            index,
            values,
            class_sizes,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of characters = number of classes = `P(n)`.
    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Partition] {
        &self.labels
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p.parts()).copied()
    }

    pub fn value_at(&self, row: usize, col: usize) -> &BigInt {
        &self.values[row * self.labels.len() + col]
    }

    /// `chi^lambda(mu)`; panics if either partition is not a label.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> &BigInt {
        let r = self.index_of(lambda).expect("row label");
        let c = self.index_of(mu).expect("column label");
        self.value_at(r, c)
    }

    /// Class sizes aligned with the column labels.
    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    /// Dimension column, i.e. the values on the identity class `(1^n)`.
    pub fn dimension_of(&self, row: usize) -> &BigInt {
        self.value_at(row, self.labels.len() - 1)
    }

    pub fn group_order(&self) -> BigUint {
        factorial(self.n)
    }

    /// JSON with values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.labels.len())
            .map(|r| {
                (0..self.labels.len())
                    .map(|c| self.value_at(r, c).to_string())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "row_labels": self.labels,
            "col_labels": self.labels,
            "values": rows,
        })
    }

    /// CSV with quoted partition labels on both axes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("\"lambda\\mu\"");
        for mu in &self.labels {
            out.push_str(",\"");
            out.push_str(&mu.label());
            out.push('"');
        }
        out.push('\n');
        for (r, lambda) in self.labels.iter().enumerate() {
            out.push('"');
            out.push_str(&lambda.label());
            out.push('"');
            for c in 0..self.labels.len() {
                out.push(',');
                out.push_str(&self.value_at(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Compact binary form: magic, format version, `n`, then each value as a
    /// length-prefixed two's-complement little-endian integer. Labels are
    /// not stored; they are recomputed from `n` on load.
    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(CACHE_MAGIC);
        out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&(self.labels.len() as u32).to_le_bytes());
        for v in &self.values {
            let bytes = v.to_signed_bytes_le();
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }

    pub fn from_binary(data: &[u8]) -> Result<Self> {
        fn corrupt(msg: &str) -> Error {
            Error::CorruptCache(msg.to_string())
        }
        struct Cursor<'a> {
            data: &'a [u8],
            pos: usize,
        }
        impl<'a> Cursor<'a> {
            fn take(&mut self, len: usize) -> Result<&'a [u8]> {
                let end = self
                    .pos
                    .checked_add(len)
                    .ok_or_else(|| corrupt("length overflow"))?;
                if end > self.data.len() {
                    return Err(corrupt("truncated"));
                }
                let slice = &self.data[self.pos..end];
                self.pos = end;
                Ok(slice)
            }
            fn read_u32(&mut self) -> Result<u32> {
                let b = self.take(4)?;
                Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
            }
        }
        let mut cur = Cursor { data, pos: 0 };
        if cur.take(4)? != CACHE_MAGIC {
            return Err(corrupt("bad magic"));
        }
        if cur.read_u32()? != CACHE_VERSION {
            return Err(corrupt("unsupported format version"));
        }
        let n = cur.read_u32()?;
        // Bound the degree before enumerating anything; a table this large
        // could never have been written by us.
        if n == 0 || n > 40 {
            return Err(corrupt("degree out of range"));
        }
        let count = cur.read_u32()? as usize;
        let labels = enumerate_partitions(n);
        if labels.len() != count {
            return Err(corrupt("class count does not match the degree"));
        }
        // Each cell needs at least its 4-byte length prefix.
        if data.len() - cur.pos < count * count * 4 {
            return Err(corrupt("truncated"));
        }
        let mut values = Vec::with_capacity(count * count);
        for _ in 0..count * count {
            let len = cur.read_u32()? as usize;
            let bytes = cur.take(len)?;
            values.push(BigInt::from_signed_bytes_le(bytes));
        }
        if cur.pos != data.len() {
            return Err(corrupt("trailing bytes"));
        }
        let index: HashMap<Vec<u32>, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, p)| (p.parts().to_vec(), i))
            .collect();
        let class_sizes = labels
            .iter()
            .map(|mu| class_descriptor(mu).size().clone())
            .collect();
        Ok(CharacterTable {
            n,
            labels,
            index,
            values,
            class_sizes,
        })
    }
}

/// One row of the character-bound diagnostic: for a character `lambda` and a
/// class `mu` with `k` fixed points, compares `|chi^lambda(mu)|` against
/// `dim(lambda)^(1 - log(n/k) / (32 log n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterBoundRow {
    pub lambda: Partition,
    pub mu: Partition,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the fixed-point character bound on every pair `(lambda, mu)`
/// with `1 <= f(mu) < n`. Classes without fixed points are out of the
/// bound's domain and skipped.
///
/// This is a diagnostic report, not an assertion: the bound is asymptotic
/// and may fail at small degrees.
pub fn character_bound_report(n: u32) -> Result<Vec<CharacterBoundRow>> {
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "character bound report needs n >= 2, got {n}"
        )));
    }
    let table = CharacterTable::build(n)?;
    let nf = n as f64;
    let mut rows = Vec::new();
    for (c, mu) in table.labels().iter().enumerate() {
        let fixed = mu.multiplicity_of(1);
        if fixed == 0 || fixed == n {
            continue;
        }
        let k = fixed as f64;
        let exponent = 1.0 - (nf / k).ln() / (32.0 * nf.ln());
        for (r, lambda) in table.labels().iter().enumerate() {
            let lhs = table
                .value_at(r, c)
                .magnitude()
                .to_f64()
                .expect("character value fits in f64 at report scale");
            let dim = table
                .dimension_of(r)
                .to_f64()
                .expect("dimension fits in f64");
            let rhs = dim.powf(exponent);
            rows.push(CharacterBoundRow {
                lambda: lambda.clone(),
                mu: mu.clone(),
                lhs,
                rhs,
                holds: lhs <= rhs,
            });
        }
    }
    Ok(rows)
}
