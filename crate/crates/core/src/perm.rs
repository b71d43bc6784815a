//! Concrete permutations of `{1, ..., n}` and the group machinery built on
//! them: cycle decompositions, orbits, a deterministic base-and-strong-
//! generating-set order computation, and the generation criteria used by the
//! counting and tuple-graph modules.
//!
//! Conventions, fixed repo-wide:
//! - composition acts on the left: `(s t)(x) = s(t(x))`, so the product
//!   `s * t` applies `t` first;
//! - the commutator is `[p, s] = p^-1 s^-1 p s`.
//!
//! Points are stored 0-based internally; serialization and cycle notation
//! are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigUint;
use num::One;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::util::{factorial, is_prime};

/// A bijection of `{1, ..., n}`, stored as the image array of `0..n`.
///
/// ```
/// use symkit::Permutation;
/// let p = Permutation::from_cycle_str("(1 2 3)", 4).unwrap();
/// let q = Permutation::from_cycle_str("(3 4)", 4).unwrap();
/// // q acts first: 3 -> 4, then p fixes 4.
/// assert_eq!(p.compose(&q).to_cycle_string(), "(1 2 3 4)");
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from a 1-based image array, the serialized form.
    pub fn from_one_based(images: Vec<usize>) -> Result<Self> {
        let shifted = images
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or(Error::InvalidPermutation))
            .collect::<Result<Vec<usize>>>()?;
        Permutation::new(shifted)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// The product `self * other`, i.e. `other` first: `(self*other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Even iff `n - (number of cycles)` is even.
    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut cycles = 0usize;
        for start in 0..self.degree() {
            if !seen[start] {
                cycles += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.images[x];
                }
            }
        }
        (self.degree() - cycles).is_multiple_of(2)
    }

    /// The commutator `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let pi_inv = self.inverse();
        let sigma_inv = other.inverse();
        let images = (0..self.degree())
            .map(|x| pi_inv.images[sigma_inv.images[self.images[other.images[x]]]])
            .collect();
        Ok(Permutation { images })
    }

    /// Conjugation `t * self * t^-1`.
    pub fn conjugate_by(&self, t: &Permutation) -> Permutation {
        assert_eq!(self.degree(), t.degree(), "degree mismatch in conjugation");
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[t.images[x]] = t.images[self.images[x]];
        }
        Permutation { images }
    }

    /// Disjoint cycles including fixed points, each rotated to start at its
    /// smallest point and ordered by that point.
    pub fn cycles(&self) -> CycleDecomposition {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    pub fn cycle_type(&self) -> Partition {
        let mut lengths: Vec<u32> = self
            .cycles()
            .cycles
            .iter()
            .map(|c| c.len() as u32)
            .collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lengths)
    }

    /// The canonical representative of a cycle type: cycles laid out over
    /// consecutive points, longest first. For `(5,2,2)` on 9 points this is
    /// `(1 2 3 4 5)(6 7)(8 9)`.
    pub fn with_cycle_type(t: &Partition) -> Permutation {
        let n = t.n() as usize;
        let mut images: Vec<usize> = (0..n).collect();
        let mut next = 0usize;
        for &len in t.parts() {
            let len = len as usize;
            for i in 0..len {
                images[next + i] = next + (i + 1) % len;
            }
            next += len;
        }
        Permutation { images }
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; unmentioned points up to
    /// `degree` are fixed. The empty string and `()` denote the identity.
    pub fn from_cycle_str(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut mentioned = vec![false; degree];
        let body = s.trim();
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::Parse {
                what: "cycle notation",
                detail: format!("expected '(' in {rest:?}"),
            })?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse {
                    what: "cycle notation",
                    detail: format!("stray text {:?}", &rest[..open]),
                });
            }
            let close = rest[open..].find(')').ok_or_else(|| Error::Parse {
                what: "cycle notation",
                detail: "unbalanced parenthesis".into(),
            })? + open;
            let inner = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let points = inner
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>().map_err(|e| Error::Parse {
                        what: "cycle notation",
                        detail: format!("{t:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            if points.is_empty() {
                continue;
            }
            for &p in &points {
                if p == 0 || p > degree || mentioned[p - 1] {
                    return Err(Error::Parse {
                        what: "cycle notation",
                        detail: format!("point {p} out of range or repeated"),
                    });
                }
                mentioned[p - 1] = true;
            }
            for w in points.windows(2) {
                images[w[0] - 1] = w[1] - 1;
            }
            images[points[points.len() - 1] - 1] = points[0] - 1;
        }
        Ok(Permutation { images })
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        for cycle in &self.cycles().cycles {
            if cycle.len() < 2 {
                continue;
            }
            out.push('(');
            for (i, &p) in cycle.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.degree()))?;
        for x in self.to_one_based() {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_based(images).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The disjoint cycles of a permutation, fixed points included as 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycle_type(&self) -> Partition {
        let mut lengths: Vec<u32> = self.cycles.iter().map(|c| c.len() as u32).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(lengths)
    }

    /// The union of the supports of the cycles selected by `indices`.
    pub fn support_of(&self, indices: &[usize]) -> Vec<usize> {
        let mut points: Vec<usize> = indices
            .iter()
            .flat_map(|&i| self.cycles[i].iter().copied())
            .collect();
        points.sort_unstable();
        points
    }
}

/// Iterator over all permutations of degree `n` in lexicographic order of
/// their image arrays, starting at the identity.
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            current: Some((0..n).collect()),
        }
    }

    /// Starts at the permutation of lexicographic rank `rank` (factorial
    /// number system unranking).
    pub fn from_rank(n: usize, rank: u64) -> Self {
        let mut avail: Vec<usize> = (0..n).collect();
        let mut images = Vec::with_capacity(n);
        let mut r = rank;
        let mut base: u64 = (1..=n as u64).product();
        for i in 0..n {
            base /= (n - i) as u64;
            let d = (r / base) as usize;
            r %= base;
            images.push(avail.remove(d));
        }
        Permutations {
            current: Some(images),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let images = self.current.as_mut()?;
        let out = Permutation {
            images: images.clone(),
        };
        // Standard next-permutation step.
        let n = images.len();
        let mut i = n.wrapping_sub(1);
        while i > 0 && images[i - 1] >= images[i] {
            i -= 1;
        }
        if n < 2 || i == 0 {
            self.current = None;
        } else {
            let mut j = n - 1;
            while images[j] <= images[i - 1] {
                j -= 1;
            }
            images.swap(i - 1, j);
            images[i..].reverse();
        }
        Some(out)
    }
}

pub fn all_permutations(n: usize) -> Permutations {
    Permutations::new(n)
}

/// Orbit of `start` under the group generated by `gens`, sorted.
pub fn orbit(gens: &[Permutation], start: usize) -> Vec<usize> {
    let n = gens.first().map_or(start + 1, |g| g.degree());
    let mut in_orbit = vec![false; n];
    in_orbit[start] = true;
    let mut stack = vec![start];
    let mut points = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.images[x];
            if !in_orbit[y] {
                in_orbit[y] = true;
                stack.push(y);
                points.push(y);
            }
        }
    }
    points.sort_unstable();
    points
}

/// True iff the orbit of point 1 under the generated group is everything.
pub fn is_transitive(gens: &[Permutation]) -> bool {
    assert!(
        !gens.is_empty(),
        "transitivity needs at least one generator"
    );
    let n = gens[0].degree();
    n <= 1 || orbit(gens, 0).len() == n
}

/// Transitivity of the group generated by a pair, without any allocation.
/// Degrees above 64 are not supported (nothing here enumerates them anyway).
pub fn pair_is_transitive(a: &Permutation, b: &Permutation) -> bool {
    assert_eq!(a.degree(), b.degree(), "degree mismatch");
    let n = a.degree();
    assert!(n <= 64, "bitmask orbit supports degree <= 64");
    if n <= 1 {
        return true;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    pair_orbit_mask(a.images(), b.images()) == full
}

/// Orbit of point 0 under two permutations as a bitmask; degree must be <= 64.
/// Hot path for the pair sweeps.
pub(crate) fn pair_orbit_mask(a: &[usize], b: &[usize]) -> u64 {
    let mut mask: u64 = 1;
    let mut stack = [0usize; 64];
    let mut top = 1usize;
    while top > 0 {
        top -= 1;
        let x = stack[top];
        for y in [a[x], b[x]] {
            if mask & (1 << y) == 0 {
                mask |= 1 << y;
                stack[top] = y;
                top += 1;
            }
        }
    }
    mask
}

// Deterministic Schreier-Sims stabilizer chain. Generators stored at level
// `l` fix the bases of all earlier levels, so the generator set effective at
// level `i` is everything stored at levels `i..`. The construction iterates
// to a fixpoint at which every Schreier generator sifts to the identity,
// which makes the product of orbit lengths exactly the group order.
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    // transversal[p] = element mapping base to p, for p in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>, // discovery order
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            transversal: vec![None; degree],
            orbit: Vec::new(),
        }
    }
}

struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn build(gens: &[Permutation]) -> StabChain {
        let degree = gens.first().map_or(0, |g| g.degree());
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree, "mixed degrees in generating set");
            chain.insert(g.clone(), 0);
        }
        chain.close();
        chain
    }

    /// Generators fixing the bases of every level before `i`: everything
    /// stored at `i` or deeper.
    fn effective_gens(&self, i: usize) -> Vec<Permutation> {
        self.levels[i..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, i: usize) {
        let gens = self.effective_gens(i);
        let degree = self.degree;
        let lvl = &mut self.levels[i];
        lvl.transversal = vec![None; degree];
        lvl.orbit.clear();
        lvl.transversal[lvl.base] = Some(Permutation::identity(degree));
        lvl.orbit.push(lvl.base);
        let mut head = 0;
        while head < lvl.orbit.len() {
            let x = lvl.orbit[head];
            head += 1;
            for g in &gens {
                let y = g.images[x];
                if lvl.transversal[y].is_none() {
                    let u = g.compose(lvl.transversal[x].as_ref().unwrap());
                    lvl.transversal[y] = Some(u);
                    lvl.orbit.push(y);
                }
            }
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it ran off the end).
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for i in from..self.levels.len() {
            let lvl = &self.levels[i];
            let x = g.images[lvl.base];
            match &lvl.transversal[x] {
                Some(u) => g = u.inverse().compose(&g),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    /// Stores `g` (known to fix the bases of all levels before `level`) at
    /// the first level whose base it moves, extending the chain if needed,
    /// and refreshes the orbits it can affect.
    fn insert(&mut self, g: Permutation, level: usize) {
        if g.is_identity() {
            return;
        }
        let mut level = level;
        loop {
            if level == self.levels.len() {
                let base = (0..self.degree)
                    .find(|&x| g.images[x] != x)
                    .expect("non-identity moves something");
                self.levels.push(Level::new(base, self.degree));
            }
            if g.images[self.levels[level].base] != self.levels[level].base {
                break;
            }
            level += 1;
        }
        self.levels[level].gens.push(g);
        // The new generator participates in every orbit up to its level.
        for i in 0..=level {
            self.recompute_orbit(i);
        }
    }

    /// Runs Schreier generators at every level until none leaves a residue.
    fn close(&mut self) {
        'restart: loop {
            for i in 0..self.levels.len() {
                let gens = self.effective_gens(i);
                for oi in 0..self.levels[i].orbit.len() {
                    for h in &gens {
                        let lvl = &self.levels[i];
                        let x = lvl.orbit[oi];
                        let u_x = lvl.transversal[x].as_ref().unwrap();
                        let u_hx = lvl.transversal[h.images[x]].as_ref().unwrap();
                        let s = u_hx.inverse().compose(&h.compose(u_x));
                        let (residue, stuck) = self.sift(s, i + 1);
                        if !residue.is_identity() {
                            self.insert(residue, stuck);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for lvl in &self.levels {
            order *= BigUint::from(lvl.orbit.len() as u64);
        }
        order
    }
}

/// Order of the group generated by `gens`, via a deterministic stabilizer
/// chain. The empty set and identity-only sets give order 1.
pub fn group_order(gens: &[Permutation]) -> BigUint {
    StabChain::build(gens).order()
}

/// Largest-degree check used by the generation fast path: a cycle of prime
/// length `p` with `n/2 < p <= n - 3`, if the permutation has one.
pub fn long_prime_cycle(p: &Permutation) -> Option<u32> {
    let n = p.degree() as u32;
    p.cycle_type()
        .parts()
        .iter()
        .copied()
        .find(|&l| is_prime(l) && 2 * l > n && l + 3 <= n)
}

/// Order of the alternating group of degree `n`.
pub fn alternating_order(n: u32) -> BigUint {
    if n < 2 {
        BigUint::one()
    } else {
        factorial(n) / BigUint::from(2u32)
    }
}

/// Decides whether two even permutations generate the full alternating group.
///
/// Fast path: a transitive subgroup containing an element with a cycle of
/// prime length `p`, `n/2 < p <= n-3`, is the symmetric or alternating group;
/// two even generators rule out the former. Without such a cycle in `pi` the
/// order is computed outright.
pub fn generates_alternating(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    let n = pi.degree();
    if n != sigma.degree() {
        return Err(Error::DegreeMismatch {
            left: n,
            right: sigma.degree(),
        });
    }
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "alternating generation test needs degree >= 3, got {n}"
        )));
    }
    if !pi.is_even() || !sigma.is_even() {
        return Err(Error::OddPermutation);
    }
    let gens = [pi.clone(), sigma.clone()];
    if !is_transitive(&gens) {
        return Ok(false);
    }
    if long_prime_cycle(pi).is_some() {
        return Ok(true);
    }
    Ok(group_order(&gens) == alternating_order(n as u32))
}

/// Witness that a two-generated subgroup is intransitive: a proper nonempty
/// subset `H` of the cycle indices of `pi` such that `sigma` factors as
/// `left * right` with supports inside the points of `H` and its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntransitivitySplit {
    pub cycle_indices: Vec<usize>,
    pub complement_indices: Vec<usize>,
    pub left: Permutation,
    pub right: Permutation,
}

/// If `<pi, sigma>` is intransitive, extracts the split along the orbit of
/// point 1; returns `None` for transitive pairs. The orbit is a union of
/// `pi`-cycles, so the witness comes out of the orbit partition directly,
/// with the lexicographically least index set.
pub fn intransitivity_split(pi: &Permutation, sigma: &Permutation) -> Option<IntransitivitySplit> {
    assert_eq!(pi.degree(), sigma.degree(), "degree mismatch");
    let n = pi.degree();
    let gens = [pi.clone(), sigma.clone()];
    let orb = orbit(&gens, 0);
    if orb.len() == n {
        return None;
    }
    let mut in_orbit = vec![false; n];
    for &x in &orb {
        in_orbit[x] = true;
    }
    let dec = pi.cycles();
    let mut cycle_indices = Vec::new();
    let mut complement_indices = Vec::new();
    for (i, cycle) in dec.cycles().iter().enumerate() {
        debug_assert!(cycle.iter().all(|&x| in_orbit[x] == in_orbit[cycle[0]]));
        if in_orbit[cycle[0]] {
            cycle_indices.push(i);
        } else {
            complement_indices.push(i);
        }
    }
    let mut left = vec![0usize; n];
    let mut right = vec![0usize; n];
    for x in 0..n {
        if in_orbit[x] {
            left[x] = sigma.images[x];
            right[x] = x;
        } else {
            left[x] = x;
            right[x] = sigma.images[x];
        }
    }
    Some(IntransitivitySplit {
        cycle_indices,
        complement_indices,
        left: Permutation { images: left },
        right: Permutation { images: right },
    })
}

/// Groups the elements of the symmetric group of degree `n` by cycle type.
/// Brute-force helper for oracles and small sweeps; `n` must stay small.
pub fn classes_by_enumeration(n: usize) -> BTreeMap<Partition, Vec<Permutation>> {
    let mut map: BTreeMap<Partition, Vec<Permutation>> = BTreeMap::new();
    for p in all_permutations(n) {
        map.entry(p.cycle_type()).or_default().push(p);
    }
    map
}
