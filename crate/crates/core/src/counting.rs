//! Class-algebra counting: the Frobenius triple count, commutator counts
//! over symmetric and alternating groups, the exact intransitive correction
//! with its split-sum upper bound, and the class-product mass bounds.
//!
//! All character sums are accumulated as exact rationals; every count must
//! clear its denominator, and a non-integral result is reported as a hard
//! error rather than rounded.

use std::collections::{BTreeMap, HashMap};

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};

use crate::characters::{CharacterTable, DEFAULT_TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::partitions::{
    class_descriptor, class_product_mass, class_products, ClassDescriptor, Partition,
};
use crate::perm::{group_order, long_prime_cycle, pair_orbit_mask, Permutation, Permutations};
use crate::util::{factorial, is_prime, run_chunked};

/// Default ceiling on the group size handled by the brute-force sweeps
/// (covers the alternating group of degree 9).
pub const DEFAULT_SWEEP_CEILING: u64 = 200_000;

/// The prime window an anchor prime is picked from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeWindow {
    /// `n/2 < p <= 3n/5`
    ThreeFifths,
    /// `n/2 < p <= 5n/8`
    FiveEighths,
}

impl PrimeWindow {
    fn numer_denom(self) -> (u32, u32) {
        match self {
            PrimeWindow::ThreeFifths => (3, 5),
            PrimeWindow::FiveEighths => (5, 8),
        }
    }
}

/// The largest prime `p` with `n/2 < p <= upper * n`, if the window contains
/// one. Small degrees may well have none; existence is only guaranteed
/// asymptotically.
pub fn pick_prime(n: u32, window: PrimeWindow) -> Option<u32> {
    let (num, den) = window.numer_denom();
    let hi = num * n / den; // floor
    let mut p = hi;
    while 2 * p > n {
        if is_prime(p) {
            return Some(p);
        }
        p = p.checked_sub(1)?;
    }
    None
}

/// The anchor cycle type `(p, n-p-2, 1, 1)` for even `n`, `(p, n-p-2, 2)`
/// for odd `n`. Always the type of an even permutation.
pub fn witness_cycle_type(n: u32, p: u32) -> Result<Partition> {
    if !is_prime(p) || 2 * p <= n || 5 * p > 3 * n {
        return Err(Error::Unsupported(format!(
            "prime {p} outside the window (n/2, 3n/5] for n = {n}"
        )));
    }
    if n < p + 3 {
        return Err(Error::Unsupported(format!(
            "need n - p - 2 >= 1, got n = {n}, p = {p}"
        )));
    }
    let q = n - p - 2;
    let parts = if n.is_multiple_of(2) {
        vec![p, q, 1, 1]
    } else {
        vec![p, q, 2]
    };
    Partition::from_unsorted(parts)
}

/// Result of a counting operation: the character-sum value, the size of the
/// target class, their exact ratio, and the brute-force count when an oracle
/// sweep was run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub exact: BigUint,
    pub class_size: BigUint,
    pub ratio: BigRational,
    pub brute_force: Option<BigUint>,
}

impl CountReport {
    fn new(exact: BigUint, class_size: BigUint, brute_force: Option<BigUint>) -> Self {
        let ratio = BigRational::new(
            BigInt::from(exact.clone()),
            BigInt::from(class_size.clone()),
        );
        CountReport {
            exact,
            class_size,
            ratio,
            brute_force,
        }
    }

    /// True unless an oracle ran and disagreed.
    pub fn consistent(&self) -> bool {
        self.brute_force.as_ref().is_none_or(|b| *b == self.exact)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "exact": self.exact.to_string(),
            "class_size": self.class_size.to_string(),
            "ratio": self.ratio.to_string(),
            "brute_force": self.brute_force.as_ref().map(|b| b.to_string()),
        })
    }
}

fn require_integer(total: &BigRational, context: &str) -> Result<BigUint> {
    if !total.is_integer() || total.is_negative() {
        return Err(Error::NonIntegralSum(format!("{context}: got {total}")));
    }
    Ok(total
        .to_integer()
        .to_biguint()
        .expect("nonnegative integer"))
}

/// `sum over irreducible characters of chi(pi)^2 chi(C) / chi(1)`.
fn commutator_character_sum(
    pi_type: &Partition,
    c: &ClassDescriptor,
    table: &CharacterTable,
) -> Result<BigRational> {
    let pcol = table
        .index_of(pi_type)
        .ok_or_else(|| Error::Unsupported(format!("{pi_type} is not a class of the table")))?;
    let ccol = table.index_of(c.cycle_type()).ok_or_else(|| {
        Error::Unsupported(format!("{} is not a class of the table", c.cycle_type()))
    })?;
    let mut sum = BigRational::zero();
    for r in 0..table.num_classes() {
        let chi_pi = table.value_at(r, pcol);
        let chi_c = table.value_at(r, ccol);
        if chi_pi.is_zero() || chi_c.is_zero() {
            continue;
        }
        sum += BigRational::new(chi_pi * chi_pi * chi_c, table.dimension_of(r).clone());
    }
    Ok(sum)
}

/// Number of pairs `(x, y)` in `C1 x C2` with `x y = tau`, by the class
/// algebra formula `(|C1||C2|/n!) sum chi(C1) chi(C2) chi(tau) / chi(1)`.
///
/// Characters of the symmetric group are real, so `chi(tau^-1) = chi(tau)`
/// and the inverse never needs to be formed. The rational sum must clear its
/// denominator; a remainder is a hard error.
pub fn triple_count(
    c1: &ClassDescriptor,
    c2: &ClassDescriptor,
    tau: &Permutation,
    table: &CharacterTable,
) -> Result<BigUint> {
    let n = table.n();
    assert_eq!(c1.n(), n, "C1 lives on the wrong degree");
    assert_eq!(c2.n(), n, "C2 lives on the wrong degree");
    assert_eq!(tau.degree() as u32, n, "tau has the wrong degree");
    let tau_type = tau.cycle_type();
    let i1 = table.index_of(c1.cycle_type()).expect("class label");
    let i2 = table.index_of(c2.cycle_type()).expect("class label");
    let it = table.index_of(&tau_type).expect("class label");
    let mut sum = BigRational::zero();
    for r in 0..table.num_classes() {
        let a = table.value_at(r, i1);
        let b = table.value_at(r, i2);
        let t = table.value_at(r, it);
        if a.is_zero() || b.is_zero() || t.is_zero() {
            continue;
        }
        sum += BigRational::new(a * b * t, table.dimension_of(r).clone());
    }
    let scale = BigRational::new(
        BigInt::from(c1.size() * c2.size()),
        BigInt::from(factorial(n)),
    );
    require_integer(&(sum * scale), "triple count")
}

/// `#{sigma in S_m : [pi, sigma] in C} = |C| sum chi(pi)^2 chi(C) / chi(1)`.
pub fn commutator_count_sym(
    pi: &Permutation,
    c: &ClassDescriptor,
    table: &CharacterTable,
) -> Result<CountReport> {
    assert_eq!(pi.degree() as u32, table.n(), "pi has the wrong degree");
    assert_eq!(c.n(), table.n(), "class lives on the wrong degree");
    let sum = commutator_character_sum(&pi.cycle_type(), c, table)?;
    let total = sum * BigRational::from(BigInt::from(c.size().clone()));
    let exact = require_integer(&total, "symmetric commutator count")?;
    Ok(CountReport::new(exact, c.size().clone(), None))
}

/// `#{sigma in A_n : [pi, sigma] in C} = (|C|/2) sum chi(pi)^2 chi(C) / chi(1)`,
/// for an even `pi` whose class does not split in the alternating group and a
/// class `C` inside the alternating group.
///
/// A splitting class of `pi` is rejected outright (the halving step would be
/// wrong), as is a target class of odd permutations (the count is zero by
/// parity, but asking for it is a domain error by contract).
pub fn commutator_count_alt(
    pi: &Permutation,
    c: &ClassDescriptor,
    table: &CharacterTable,
) -> Result<CountReport> {
    assert_eq!(pi.degree() as u32, table.n(), "pi has the wrong degree");
    assert_eq!(c.n(), table.n(), "class lives on the wrong degree");
    if !pi.is_even() {
        return Err(Error::OddPermutation);
    }
    let pi_class = class_descriptor(&pi.cycle_type());
    if pi_class.splits_in_alternating() {
        return Err(Error::SplittingClass(pi_class.cycle_type().to_string()));
    }
    if !c.is_even() {
        return Err(Error::NotInAlternating(c.cycle_type().to_string()));
    }
    let sum = commutator_character_sum(pi_class.cycle_type(), c, table)?;
    let total = sum * BigRational::new(BigInt::from(c.size().clone()), BigInt::from(2));
    let exact = require_integer(&total, "alternating commutator count")?;
    Ok(CountReport::new(exact, c.size().clone(), None))
}

/// Lazily built character tables for a range of degrees; the split-sum bound
/// needs tables of every part size.
#[derive(Debug, Default)]
pub struct TableProvider {
    limit: u32,
    cache: HashMap<u32, CharacterTable>,
}

impl TableProvider {
    pub fn new() -> Self {
        Self::with_limit(DEFAULT_TABLE_LIMIT)
    }

    pub fn with_limit(limit: u32) -> Self {
        TableProvider {
            limit,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, n: u32) -> Result<&CharacterTable> {
        if !self.cache.contains_key(&n) {
            let table = CharacterTable::build_with_limit(n, self.limit)?;
            self.cache.insert(n, table);
        }
        Ok(&self.cache[&n])
    }

    /// Seeds the provider, e.g. from an on-disk cache.
    pub fn insert(&mut self, table: CharacterTable) {
        self.cache.insert(table.n(), table);
    }
}

/// Per-class tallies from one brute-force pass over the alternating group:
/// how many `sigma` put `[pi, sigma]` in the class, how many of those leave
/// `<pi, sigma>` intransitive, and how many generate the full alternating
/// group.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub total: u64,
    pub intransitive: u64,
    pub generating: u64,
}

/// One exhaustive pass over `sigma` in the alternating group for a fixed
/// `pi`, tallying commutator classes together with transitivity and
/// generation of `<pi, sigma>`.
#[derive(Debug, Clone)]
pub struct CommutatorSweep {
    pi: Permutation,
    by_class: BTreeMap<Partition, SweepCounts>,
}

impl CommutatorSweep {
    /// Runs the sweep. `ceiling` bounds the group size; `threads` splits the
    /// rank range, and the merged tallies are identical for any thread count.
    pub fn run(pi: &Permutation, ceiling: u64, threads: usize) -> Result<Self> {
        let n = pi.degree();
        let n_fact = factorial(n as u32);
        let half = &n_fact / BigUint::from(2u32);
        if half > BigUint::from(ceiling) {
            return Err(Error::CeilingExceeded {
                needed: half.to_u64().unwrap_or(u64::MAX),
                ceiling,
            });
        }
        if !pi.is_even() {
            return Err(Error::OddPermutation);
        }
        let total_ranks = n_fact
            .to_u64()
            .expect("factorial fits u64 under the ceiling");
        let fast_path = long_prime_cycle(pi).is_some();
        let pi_images = pi.images().to_vec();
        let pi_inv = pi.inverse().images().to_vec();
        let full_mask: u64 = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
        let order_target = &n_fact / BigUint::from(2u32);

        let chunks = run_chunked(total_ranks, threads, |range| {
            let mut local: HashMap<Vec<u32>, SweepCounts> = HashMap::new();
            let mut sig_inv = vec![0usize; n];
            let mut comm = vec![0usize; n];
            let mut seen = vec![false; n];
            let mut type_buf: Vec<u32> = Vec::with_capacity(n);
            let mut iter = Permutations::from_rank(n, range.start);
            for _ in range {
                let sigma = iter.next().expect("rank in range");
                let sig = sigma.images();
                // Parity and inverse in one cycle walk.
                seen.fill(false);
                let mut cycles = 0usize;
                for start in 0..n {
                    if !seen[start] {
                        cycles += 1;
                        let mut x = start;
                        while !seen[x] {
                            seen[x] = true;
                            sig_inv[sig[x]] = x;
                            x = sig[x];
                        }
                    }
                }
                if !(n - cycles).is_multiple_of(2) {
                    continue; // odd permutation
                }
                for x in 0..n {
                    comm[x] = pi_inv[sig_inv[pi_images[sig[x]]]];
                }
                // Cycle type of the commutator.
                seen.fill(false);
                type_buf.clear();
                for start in 0..n {
                    if !seen[start] {
                        let mut len = 0u32;
                        let mut x = start;
                        while !seen[x] {
                            seen[x] = true;
                            len += 1;
                            x = comm[x];
                        }
                        type_buf.push(len);
                    }
                }
                type_buf.sort_unstable_by(|a, b| b.cmp(a));
                let transitive = pair_orbit_mask(&pi_images, sig) == full_mask;
                let generating = transitive
                    && (fast_path || group_order(&[pi.clone(), sigma.clone()]) == order_target);
                let entry = local.entry(type_buf.clone()).or_default();
                entry.total += 1;
                if transitive {
                    if generating {
                        entry.generating += 1;
                    }
                } else {
                    entry.intransitive += 1;
                }
            }
            local
        });

        let mut by_class: BTreeMap<Partition, SweepCounts> = BTreeMap::new();
        for chunk in chunks {
            for (parts, counts) in chunk {
                let key = Partition::from_sorted_unchecked(parts);
                let entry = by_class.entry(key).or_default();
                entry.total += counts.total;
                entry.intransitive += counts.intransitive;
                entry.generating += counts.generating;
            }
        }
        Ok(CommutatorSweep {
            pi: pi.clone(),
            by_class,
        })
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn counts(&self, class: &Partition) -> SweepCounts {
        self.by_class.get(class).copied().unwrap_or_default()
    }

    pub fn by_class(&self) -> &BTreeMap<Partition, SweepCounts> {
        &self.by_class
    }
}

/// `#{sigma in S_m : [pi, sigma] in class}` for every class, by brute force.
pub fn symmetric_commutator_class_counts(
    pi: &Permutation,
    ceiling: u64,
    threads: usize,
) -> Result<BTreeMap<Partition, u64>> {
    let m = pi.degree();
    let m_fact = factorial(m as u32);
    if m_fact > BigUint::from(ceiling) {
        return Err(Error::CeilingExceeded {
            needed: m_fact.to_u64().unwrap_or(u64::MAX),
            ceiling,
        });
    }
    let total_ranks = m_fact.to_u64().expect("checked above");
    let pi_images = pi.images().to_vec();
    let pi_inv = pi.inverse().images().to_vec();
    let chunks = run_chunked(total_ranks, threads, |range| {
        let mut local: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut sig_inv = vec![0usize; m];
        let mut comm = vec![0usize; m];
        let mut seen = vec![false; m];
        let mut type_buf: Vec<u32> = Vec::with_capacity(m);
        let mut iter = Permutations::from_rank(m, range.start);
        for _ in range {
            let sigma = iter.next().expect("rank in range");
            let sig = sigma.images();
            for x in 0..m {
                sig_inv[sig[x]] = x;
            }
            for x in 0..m {
                comm[x] = pi_inv[sig_inv[pi_images[sig[x]]]];
            }
            seen.fill(false);
            type_buf.clear();
            for start in 0..m {
                if !seen[start] {
                    let mut len = 0u32;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        len += 1;
                        x = comm[x];
                    }
                    type_buf.push(len);
                }
            }
            type_buf.sort_unstable_by(|a, b| b.cmp(a));
            *local.entry(type_buf.clone()).or_default() += 1;
        }
        local
    });
    let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
    for chunk in chunks {
        for (parts, count) in chunk {
            *out.entry(Partition::from_sorted_unchecked(parts))
                .or_default() += count;
        }
    }
    Ok(out)
}

/// The exact intransitive commutator count and the split-sum upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntransitiveCount {
    /// `#{sigma in A_n : [pi, sigma] in C and <pi, sigma> intransitive}`,
    /// from the exhaustive sweep.
    pub exact: BigUint,
    /// Sum over unordered splits of `pi`'s cycles and over class products
    /// `C = C1 C2` of the product of per-factor symmetric commutator counts.
    /// Overcounts `sigma` admitting several splits, so it dominates `exact`.
    pub split_upper_bound: BigUint,
}

/// Restriction of `pi` to the points of the selected cycles, relabelled
/// order-preservingly onto `0..points.len()`.
fn restrict_to_points(pi: &Permutation, points: &[usize]) -> Permutation {
    let mut position = HashMap::with_capacity(points.len());
    for (i, &x) in points.iter().enumerate() {
        position.insert(x, i);
    }
    let images = points.iter().map(|&x| position[&pi.apply(x)]).collect();
    Permutation::from_images_unchecked(images)
}

/// Exact count of `sigma` in the alternating group with `[pi, sigma]` in `c`
/// and `<pi, sigma>` intransitive, plus the class-product upper bound on the
/// same quantity assembled from commutator counts over the split factors.
pub fn intransitive_commutator_count(
    sweep: &CommutatorSweep,
    c: &ClassDescriptor,
    tables: &mut TableProvider,
) -> Result<IntransitiveCount> {
    let pi = sweep.pi();
    let n = pi.degree() as u32;
    assert_eq!(c.n(), n, "class lives on the wrong degree");
    let exact = BigUint::from(sweep.counts(c.cycle_type()).intransitive);

    let dec = pi.cycles();
    let k_cycles = dec.len();
    let mut bound = BigUint::zero();
    if k_cycles > 1 {
        let full: u32 = (1 << k_cycles) - 1;
        for mask in 1u32..full {
            // Fix cycle 0 on the left side so each unordered split appears once.
            if mask & 1 == 0 {
                continue;
            }
            let left_idx: Vec<usize> = (0..k_cycles).filter(|i| mask >> i & 1 == 1).collect();
            let right_idx: Vec<usize> = (0..k_cycles).filter(|i| mask >> i & 1 == 0).collect();
            let left_points = dec.support_of(&left_idx);
            let right_points = dec.support_of(&right_idx);
            let k = left_points.len() as u32;
            let pi_left = restrict_to_points(pi, &left_points);
            let pi_right = restrict_to_points(pi, &right_points);
            for (c1, c2) in class_products(c, k) {
                let f1 = {
                    let table = tables.get(k)?;
                    commutator_count_sym(&pi_left, &c1, table)?.exact
                };
                let f2 = {
                    let table = tables.get(n - k)?;
                    commutator_count_sym(&pi_right, &c2, table)?.exact
                };
                bound += f1 * f2;
            }
        }
    }
    Ok(IntransitiveCount {
        exact,
        split_upper_bound: bound,
    })
}

/// `#{sigma in A_n : [pi, sigma] in C and <pi, sigma> = A_n}` for the anchor
/// permutation `pi`: the alternating-group character sum minus the exact
/// intransitive correction. Subtracting is justified because `pi` carries a
/// cycle of prime length in `(n/2, n-3]`, so a transitive `<pi, sigma>` with
/// both generators even is the whole alternating group.
///
/// The brute-force generation count from the sweep rides along in
/// `brute_force` as the independent route.
pub fn generating_commutator_count(
    sweep: &CommutatorSweep,
    c: &ClassDescriptor,
    tables: &mut TableProvider,
) -> Result<CountReport> {
    let pi = sweep.pi();
    let n = pi.degree() as u32;
    let p = pick_prime(n, PrimeWindow::ThreeFifths)
        .ok_or_else(|| Error::Unsupported(format!("no prime in (n/2, 3n/5] for n = {n}")))?;
    let expected = witness_cycle_type(n, p)?;
    if pi.cycle_type() != expected {
        return Err(Error::Unsupported(format!(
            "pi must have the anchor cycle type {expected}, got {}",
            pi.cycle_type()
        )));
    }
    let alt = {
        let table = tables.get(n)?;
        commutator_count_alt(pi, c, table)?
    };
    let counts = sweep.counts(c.cycle_type());
    let intransitive = BigUint::from(counts.intransitive);
    if alt.exact < intransitive {
        return Err(Error::SelfCheck(format!(
            "character sum {} below the intransitive count {} on class {}",
            alt.exact,
            intransitive,
            c.cycle_type()
        )));
    }
    let exact = alt.exact - intransitive;
    Ok(CountReport::new(
        exact,
        c.size().clone(),
        Some(BigUint::from(counts.generating)),
    ))
}

/// Which bound a mass report row is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassBoundKind {
    /// `exp(-3n/50) |C|` on the window `n/2 < k <= 5n/8`.
    ExpWindow,
    /// `delta |C|` at `k = n - 1`.
    Delta,
    /// `2 delta^2 |C|` at `k = n - 2`.
    DeltaSquared,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MassBoundRow {
    pub k: u32,
    pub mass: BigUint,
    pub bound: f64,
    pub kind: MassBoundKind,
    pub holds: bool,
}

/// Evaluates the class-product masses of `c` against the three reference
/// bounds: the exponential bound over the window `n/2 < k <= 5n/8`, and the
/// `delta`-bounds at `k = n-1` and `k = n-2`. Requires `f(C) <= delta n`
/// with `delta <= 1/4` (given as `delta_num / delta_den`).
///
/// The `holds` flags are reported, not asserted; the exponential bound in
/// particular only takes hold asymptotically. The delta rows are decided in
/// exact arithmetic, the exponential row in floating point.
pub fn class_product_mass_report(
    c: &ClassDescriptor,
    delta_num: u32,
    delta_den: u32,
) -> Result<Vec<MassBoundRow>> {
    let n = c.n();
    if delta_den == 0 || 4 * delta_num > delta_den {
        return Err(Error::Unsupported(format!(
            "delta must satisfy 0 < delta <= 1/4, got {delta_num}/{delta_den}"
        )));
    }
    if u64::from(c.fixed_points()) * u64::from(delta_den) > u64::from(delta_num) * u64::from(n) {
        return Err(Error::Unsupported(format!(
            "class has {} fixed points, above delta * n = {delta_num}/{delta_den} * {n}",
            c.fixed_points()
        )));
    }
    if n < 3 {
        return Err(Error::Unsupported("mass report needs n >= 3".into()));
    }
    let size_f = c.size().to_f64().unwrap_or(f64::INFINITY);
    let mut rows = Vec::new();
    for k in 1..n {
        if 2 * k > n && 8 * k <= 5 * n {
            let mass = class_product_mass(c, k);
            let bound = (-3.0 * n as f64 / 50.0).exp() * size_f;
            let holds = mass.to_f64().unwrap_or(f64::INFINITY) <= bound;
            rows.push(MassBoundRow {
                k,
                mass,
                bound,
                kind: MassBoundKind::ExpWindow,
                holds,
            });
        }
    }
    // k = n - 1 against delta |C|.
    {
        let mass = class_product_mass(c, n - 1);
        let holds = &mass * BigUint::from(delta_den) <= c.size() * BigUint::from(delta_num);
        let bound = delta_num as f64 / delta_den as f64 * size_f;
        rows.push(MassBoundRow {
            k: n - 1,
            mass,
            bound,
            kind: MassBoundKind::Delta,
            holds,
        });
    }
    // k = n - 2 against 2 delta^2 |C|.
    {
        let mass = class_product_mass(c, n - 2);
        let holds = &mass * BigUint::from(u64::from(delta_den) * u64::from(delta_den))
            <= c.size() * BigUint::from(2 * u64::from(delta_num) * u64::from(delta_num));
        let d = delta_num as f64 / delta_den as f64;
        let bound = 2.0 * d * d * size_f;
        rows.push(MassBoundRow {
            k: n - 2,
            mass,
            bound,
            kind: MassBoundKind::DeltaSquared,
            holds,
        });
    }
    Ok(rows)
}

/// `#{tau in C : tau({1..k}) = {1..k}}` by enumeration: the brute-force twin
/// of `class_product_mass`.
pub fn setwise_stabilizer_class_count(
    c: &ClassDescriptor,
    k: u32,
    ceiling: u64,
    threads: usize,
) -> Result<BigUint> {
    let n = c.n();
    let n_fact = factorial(n);
    if n_fact > BigUint::from(ceiling) {
        return Err(Error::CeilingExceeded {
            needed: n_fact.to_u64().unwrap_or(u64::MAX),
            ceiling,
        });
    }
    let total_ranks = n_fact.to_u64().expect("checked above");
    let k = k as usize;
    let target = c.cycle_type().parts().to_vec();
    let counts = run_chunked(total_ranks, threads, |range| {
        let n = n as usize;
        let mut count = 0u64;
        let mut seen = vec![false; n];
        let mut type_buf: Vec<u32> = Vec::with_capacity(n);
        let mut iter = Permutations::from_rank(n, range.start);
        for _ in range {
            let tau = iter.next().expect("rank in range");
            let images = tau.images();
            if (0..k).any(|x| images[x] >= k) {
                continue;
            }
            seen.fill(false);
            type_buf.clear();
            for start in 0..n {
                if !seen[start] {
                    let mut len = 0u32;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        len += 1;
                        x = images[x];
                    }
                    type_buf.push(len);
                }
            }
            type_buf.sort_unstable_by(|a, b| b.cmp(a));
            if type_buf == target {
                count += 1;
            }
        }
        count
    });
    Ok(BigUint::from(counts.into_iter().sum::<u64>()))
}
