//! Integer partitions and the conjugacy-class combinatorics of the symmetric
//! group: enumeration in a canonical order, exact counting, class sizes,
//! class products across a set split, and the even/odd-parts counting
//! identity.
//!
//! The canonical order used everywhere (and by the character tables) is
//! reverse-lexicographic, starting at `(n)` and ending at `(1^n)`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::{BigInt, BigUint};
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::util::factorial;

/// A partition of a nonnegative integer: weakly decreasing positive parts.
///
/// Partitions double as cycle types, i.e. conjugacy-class labels of the
/// symmetric group, and as labels of its irreducible characters. The empty
/// partition is the unique partition of 0.
///
/// ```
/// use symkit::Partition;
/// let p = Partition::new(vec![5, 2, 2]).unwrap();
/// assert_eq!(p.n(), 9);
/// assert_eq!(p.to_string(), "(5,2,2)");
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    n: u32,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition);
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Sorts the given positive parts into weakly decreasing order first.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        let n = parts.iter().sum();
        debug_assert!(parts.iter().all(|&p| p > 0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition { parts, n }
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            n: 0,
        }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn single_row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n], n }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn single_column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
            n,
        }
    }

    /// The hook `(row, 1^{n-row})` with first row `row >= 1`.
    pub fn hook(n: u32, row: u32) -> Result<Self> {
        if row == 0 || row > n {
            return Err(Error::InvalidPartition);
        }
        let mut parts = vec![1; (n - row + 1) as usize];
        parts[0] = row;
        Ok(Partition { parts, n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::new();
        if let Some(&first) = self.parts.first() {
            parts.reserve(first as usize);
            for j in 1..=first {
                parts.push(self.parts.iter().take_while(|&&p| p >= j).count() as u32);
            }
        }
        Partition::from_sorted_unchecked(parts)
    }

    /// Map from part length `l` to its multiplicity `m_l`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut map = BTreeMap::new();
        for &p in &self.parts {
            *map.entry(p).or_insert(0) += 1;
        }
        map
    }

    pub fn multiplicity_of(&self, l: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == l).count() as u32
    }

    /// Comma-joined form without parentheses, e.g. `5,2,2`. Used for CSV
    /// labels and CLI arguments.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the comma-joined form, e.g. `5,2,2`. Parts may be unsorted.
    pub fn parse_label(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::Parse {
                    what: "partition",
                    detail: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::from_unsorted(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.parts.len()))?;
        for p in &self.parts {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Calls `visit` once per partition of `n`, in reverse-lexicographic order
/// starting with `(n)` and ending with `(1^n)`. The slice is reused between
/// calls, so nothing is allocated per partition.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut parts: Vec<u32> = vec![n];
    loop {
        visit(&parts);
        // Decrement the last part greater than 1 and redistribute the tail.
        let Some(i) = parts.iter().rposition(|&p| p > 1) else {
            break;
        };
        let val = parts[i] - 1;
        let mut rest = parts[i] + (parts.len() - i - 1) as u32;
        parts.truncate(i);
        while rest > 0 {
            let chunk = val.min(rest);
            parts.push(chunk);
            rest -= chunk;
        }
    }
}

/// All partitions of `n` in the canonical order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |parts| {
        out.push(Partition::from_sorted_unchecked(parts.to_vec()));
    });
    out
}

/// `P(0), P(1), ..., P(n)` by Euler's pentagonal-number recurrence.
pub fn partition_counts_up_to(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::one());
    for i in 1..=n {
        let mut sum = BigInt::zero();
        let mut k: usize = 1;
        loop {
            // Generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2 for k = 1, 2, ...
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let negate = k.is_multiple_of(2);
            let mut term = table[i - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                term += &table[i - g2];
            }
            if negate {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        table.push(sum);
    }
    table
        .into_iter()
        .map(|v| {
            debug_assert!(!v.is_negative());
            v.to_biguint().expect("partition counts are nonnegative")
        })
        .collect()
}

/// `P(n)`, the number of partitions of `n`.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts_up_to(n).pop().expect("nonempty table")
}

/// The Hardy-Ramanujan main term `exp(2*pi*sqrt(n/6)) / (4 n sqrt(3))`.
///
/// This is an asymptotic approximation of `P(n)`; the relative error is
/// sizable for small `n` and decays slowly (around 2% at n = 1000).
pub fn hardy_ramanujan_estimate(n: u32) -> f64 {
    let nf = n as f64;
    (2.0 * std::f64::consts::PI * (nf / 6.0).sqrt()).exp() / (4.0 * nf * 3.0f64.sqrt())
}

/// Main term of the lower bound for the number of T2-systems of the
/// alternating group of degree `n`: half the Hardy-Ramanujan estimate.
///
/// Asymptotic only: the suppressed `1 + o(1)` factor means the value carries
/// no guarantee at any fixed `n`.
pub fn tsystem_lower_bound_estimate(n: u32) -> f64 {
    0.5 * hardy_ramanujan_estimate(n)
}

/// A conjugacy class of the symmetric group together with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDescriptor {
    cycle_type: Partition,
    size: BigUint,
    fixed_points: u32,
    is_even: bool,
    splits_in_alternating: bool,
}

impl ClassDescriptor {
    /// Derives all class data from the cycle type:
    /// size `n! / prod_l l^{m_l} m_l!`, fixed points `m_1`, parity of
    /// `sum_l (l-1) m_l`, and the splitting criterion (all parts odd and
    /// distinct) for classes inside the alternating group.
    pub fn new(cycle_type: Partition) -> Self {
        let n = cycle_type.n();
        let mults = cycle_type.multiplicities();
        let mut denom = BigUint::one();
        for (&l, &m) in &mults {
            denom *= BigUint::from(l).pow(m);
            denom *= factorial(m);
        }
        let numer = factorial(n);
        debug_assert!((&numer % &denom).is_zero());
        let size = numer / denom;
        let fixed_points = cycle_type.multiplicity_of(1);
        let is_even = (n as usize - cycle_type.len()).is_multiple_of(2);
        let all_odd = cycle_type.parts().iter().all(|&p| p % 2 == 1);
        let all_distinct = cycle_type.parts().windows(2).all(|w| w[0] > w[1]);
        ClassDescriptor {
            cycle_type,
            size,
            fixed_points,
            is_even,
            splits_in_alternating: is_even && all_odd && all_distinct,
        }
    }

    pub fn cycle_type(&self) -> &Partition {
        &self.cycle_type
    }

    pub fn n(&self) -> u32 {
        self.cycle_type.n()
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn fixed_points(&self) -> u32 {
        self.fixed_points
    }

    pub fn is_even(&self) -> bool {
        self.is_even
    }

    pub fn splits_in_alternating(&self) -> bool {
        self.splits_in_alternating
    }

    pub fn multiplicity_of(&self, l: u32) -> u32 {
        self.cycle_type.multiplicity_of(l)
    }

    /// JSON object with the class size as a decimal string.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "cycle_type": self.cycle_type,
            "size": self.size.to_string(),
            "fixed_points": self.fixed_points,
            "is_even": self.is_even,
            "splits_in_alternating": self.splits_in_alternating,
        })
    }
}

/// Builds the class descriptor of the class labelled by `lambda`.
pub fn class_descriptor(lambda: &Partition) -> ClassDescriptor {
    ClassDescriptor::new(lambda.clone())
}

/// All ways to write the class `c` (on `n` points) as a product `C1 C2` of a
/// class `C1` on `k` points and a class `C2` on `n - k` points, in the sense
/// that every part multiplicity of `c` splits additively: `m_l = s_l + t_l`.
///
/// Empty whenever no split exists, e.g. when `c` contains a cycle longer
/// than both `k` and `n - k`.
pub fn class_products(c: &ClassDescriptor, k: u32) -> Vec<(ClassDescriptor, ClassDescriptor)> {
    let n = c.n();
    assert!(k >= 1 && k < n, "need 1 <= k <= n-1, got k={k} for n={n}");
    // Distinct part lengths, largest first, so the emitted parts come out
    // already sorted.
    let entries: Vec<(u32, u32)> = c.cycle_type().multiplicities().into_iter().rev().collect();
    let mut out = Vec::new();
    let mut choice: Vec<u32> = Vec::with_capacity(entries.len());

    fn recurse(
        entries: &[(u32, u32)],
        idx: usize,
        remaining: u32,
        choice: &mut Vec<u32>,
        out: &mut Vec<(ClassDescriptor, ClassDescriptor)>,
    ) {
        if idx == entries.len() {
            if remaining == 0 {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (&(l, m), &s) in entries.iter().zip(choice.iter()) {
                    left.extend(std::iter::repeat_n(l, s as usize));
                    right.extend(std::iter::repeat_n(l, (m - s) as usize));
                }
                out.push((
                    ClassDescriptor::new(Partition::from_sorted_unchecked(left)),
                    ClassDescriptor::new(Partition::from_sorted_unchecked(right)),
                ));
            }
            return;
        }
        let (l, m) = entries[idx];
        let max_s = m.min(remaining / l);
        for s in 0..=max_s {
            choice.push(s);
            recurse(entries, idx + 1, remaining - l * s, choice, out);
            choice.pop();
        }
    }

    recurse(&entries, 0, k, &mut choice, &mut out);
    out
}

/// `sum |C1| |C2|` over all class products of `c` across a `k | n-k` split.
///
/// Equals the number of elements of `c` that preserve a fixed `k`-point
/// subset setwise, which is how the tests cross-check it.
pub fn class_product_mass(c: &ClassDescriptor, k: u32) -> BigUint {
    class_products(c, k)
        .iter()
        .map(|(c1, c2)| c1.size() * c2.size())
        .sum()
}

/// Counts from the even/odd-parts identity on the partitions of `n`.
///
/// `odd_even_parts` counts partitions with an odd number of even parts,
/// `even_even_parts` those with an even number, and `distinct_odd` those
/// whose parts are distinct and all odd. The identity states
/// `odd_even_parts = even_even_parts - distinct_odd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartsParityCounts {
    pub odd_even_parts: u64,
    pub even_even_parts: u64,
    pub distinct_odd: u64,
    pub holds: bool,
}

pub fn even_parts_identity_check(n: u32) -> PartsParityCounts {
    let mut a = 0u64;
    let mut b = 0u64;
    let mut c = 0u64;
    for_each_partition(n, |parts| {
        let evens = parts.iter().filter(|&&p| p % 2 == 0).count();
        if evens % 2 == 1 {
            a += 1;
        } else {
            b += 1;
        }
        let distinct = parts.windows(2).all(|w| w[0] > w[1]);
        if distinct && parts.iter().all(|&p| p % 2 == 1) {
            c += 1;
        }
    });
    PartsParityCounts {
        odd_even_parts: a,
        even_even_parts: b,
        distinct_odd: c,
        holds: b >= c && a == b - c,
    }
}

/// Number of conjugacy classes of the symmetric group of degree `n` that lie
/// inside the alternating group (cycle types of even permutations).
pub fn alternating_class_count(n: u32) -> u64 {
    let mut count = 0u64;
    for_each_partition(n, |parts| {
        if (n as usize - parts.len()).is_multiple_of(2) {
            count += 1;
        }
    });
    count
}
