//! Exhaustive enumeration of generating tuples of alternating and symmetric
//! groups, and the orbit counts of the two graphs on them: the product
//! replacement graph (edges `R+-`, `L+-`) and the Nielsen graph with
//! automorphism edges, whose components are the T-systems.
//!
//! Degree 6 is rejected for T-system counts: its exceptional outer
//! automorphisms are not realized by conjugation, and approximating them is
//! out of scope. Automorphisms at every other degree act as conjugation by
//! the full symmetric group, and for the union-find it suffices to add edges
//! for two conjugating generators.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::perm::{
    all_permutations, alternating_order, generates_alternating, group_order, is_transitive,
    Permutation,
};
use crate::util::{factorial, run_chunked};

/// Default ceiling on the number of tuples (`|G|^k`) the enumeration will
/// hold in memory; covers pairs of the alternating group of degree 7.
pub const DEFAULT_TUPLE_CEILING: u64 = 7_000_000;

/// Which group the tuples are required to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupTag {
    Alternating,
    Symmetric,
}

impl GroupTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "alt" | "alternating" => Ok(GroupTag::Alternating),
            "sym" | "symmetric" => Ok(GroupTag::Symmetric),
            other => Err(Error::Parse {
                what: "group tag",
                detail: format!("{other:?} (expected alt or sym)"),
            }),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GroupTag::Alternating => "alt",
            GroupTag::Symmetric => "sym",
        }
    }

    fn order(self, n: usize) -> num::BigUint {
        match self {
            GroupTag::Alternating => alternating_order(n as u32),
            GroupTag::Symmetric => factorial(n as u32),
        }
    }
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn tuple_generates(entries: &[Permutation], tag: GroupTag) -> bool {
    let n = entries[0].degree();
    let target = tag.order(n);
    if target == num::BigUint::from(1u32) {
        return true;
    }
    if !is_transitive(entries) {
        return false;
    }
    if tag == GroupTag::Alternating && entries.len() == 2 {
        return generates_alternating(&entries[0], &entries[1])
            .expect("even entries of equal degree >= 3");
    }
    group_order(entries) == target
}

/// A `k`-tuple of permutations verified to generate the tagged group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingTuple {
    entries: Vec<Permutation>,
    group: GroupTag,
}

impl GeneratingTuple {
    pub fn new(entries: Vec<Permutation>, group: GroupTag) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::Unsupported(
                "tuples must have at least one entry".into(),
            ));
        };
        let n = first.degree();
        for e in &entries {
            if e.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: e.degree(),
                });
            }
        }
        if group == GroupTag::Alternating && entries.iter().any(|e| !e.is_even()) {
            return Err(Error::OddPermutation);
        }
        if !tuple_generates(&entries, group) {
            return Err(Error::Unsupported(
                "the entries do not generate the tagged group".into(),
            ));
        }
        Ok(GeneratingTuple { entries, group })
    }

    fn new_unchecked(entries: Vec<Permutation>, group: GroupTag) -> Self {
        debug_assert!(tuple_generates(&entries, group));
        GeneratingTuple { entries, group }
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    pub fn group(&self) -> GroupTag {
        self.group
    }

    pub fn degree(&self) -> usize {
        self.entries[0].degree()
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    /// Entries rendered in cycle notation, for export.
    pub fn to_cycle_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.to_cycle_string()).collect()
    }
}

fn push_unique(
    seen: &mut HashSet<Vec<Vec<usize>>>,
    out: &mut Vec<GeneratingTuple>,
    entries: Vec<Permutation>,
    group: GroupTag,
) {
    let key: Vec<Vec<usize>> = entries.iter().map(|e| e.images().to_vec()).collect();
    if seen.insert(key) {
        out.push(GeneratingTuple::new_unchecked(entries, group));
    }
}

/// Images of `t` under the four Nielsen move families `R_{i,j}`, `L_{i,j}`,
/// `P_{i,j}`, `I_i`, deduplicated. Inverse multiply moves are not separate
/// edges: connectivity is undirected and each listed move is invertible by a
/// composition of listed moves. Every image still generates.
pub fn nielsen_neighbors(t: &GeneratingTuple) -> Vec<GeneratingTuple> {
    let k = t.arity();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut right = t.entries.clone();
            right[i] = t.entries[i].compose(&t.entries[j]);
            push_unique(&mut seen, &mut out, right, t.group);
            let mut left = t.entries.clone();
            left[i] = t.entries[j].compose(&t.entries[i]);
            push_unique(&mut seen, &mut out, left, t.group);
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut swapped = t.entries.clone();
            swapped.swap(i, j);
            push_unique(&mut seen, &mut out, swapped, t.group);
        }
    }
    for i in 0..k {
        let mut inverted = t.entries.clone();
        inverted[i] = t.entries[i].inverse();
        push_unique(&mut seen, &mut out, inverted, t.group);
    }
    out
}

/// Images of `t` under the product replacement moves `R+-_{i,j}`, `L+-_{i,j}`
/// only: no swaps and no inversions, deduplicated.
pub fn pra_neighbors(t: &GeneratingTuple) -> Vec<GeneratingTuple> {
    let k = t.arity();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let ej_inv = t.entries[j].inverse();
            for factor in [&t.entries[j], &ej_inv] {
                let mut right = t.entries.clone();
                right[i] = t.entries[i].compose(factor);
                push_unique(&mut seen, &mut out, right, t.group);
                let mut left = t.entries.clone();
                left[i] = factor.compose(&t.entries[i]);
                push_unique(&mut seen, &mut out, left, t.group);
            }
        }
    }
    out
}

/// Orbit structure of a graph on the generating tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub orbit_count: u64,
    /// Orbit sizes as a multiset, largest first.
    pub orbit_sizes: Vec<u64>,
    /// Number of generating tuples; always the sum of the orbit sizes.
    pub total: u64,
}

impl OrbitSummary {
    pub fn orbit_sizes_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for &s in &self.orbit_sizes {
            *hist.entry(s).or_insert(0) += 1;
        }
        hist
    }
}

/// The class-pair invariant of a generating pair: the cycle types of the
/// commutator and of its inverse, canonically ordered. Under conjugation by
/// the full symmetric group the two coincide; the pair form is kept anyway.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HigmanInvariant {
    pub first: Partition,
    pub second: Partition,
}

impl HigmanInvariant {
    fn of_commutator(c: &Permutation) -> Self {
        let a = c.cycle_type();
        let b = c.inverse().cycle_type();
        if a <= b {
            HigmanInvariant {
                first: a,
                second: b,
            }
        } else {
            HigmanInvariant {
                first: b,
                second: a,
            }
        }
    }
}

/// The invariant `{type([g1,g2]), type([g1,g2]^-1)}` of a generating pair.
/// Constant on each T2-system.
pub fn higman_invariant(t: &GeneratingTuple) -> Result<HigmanInvariant> {
    if t.arity() != 2 {
        return Err(Error::ArityNotTwo { k: t.arity() });
    }
    let c = t.entries[0].commutator(&t.entries[1])?;
    Ok(HigmanInvariant::of_commutator(&c))
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MoveSet {
    /// `R+-`, `L+-`: the product replacement graph.
    Pra,
    /// Nielsen moves plus conjugation edges realizing the automorphisms.
    NielsenWithAut,
}

/// The full tuple space `G^k` with its generating subset marked, plus the
/// lookup structures the move graphs need. Tuples are addressed by mixed
/// radix ranks over the element list, which is sorted lexicographically.
pub struct TupleSpace {
    n: usize,
    tag: GroupTag,
    k: usize,
    elements: Vec<Permutation>,
    index: HashMap<Vec<usize>, u32>,
    inverse_map: Vec<u32>,
    /// Product table `el[a] * el[b]`, built when it fits comfortably.
    products: Option<Vec<u32>>,
    pows: Vec<u64>,
    generating: Vec<bool>,
    gen_count: u64,
}

const PRODUCT_TABLE_MAX: u64 = 16_000_000;

impl TupleSpace {
    pub fn build(n: usize, tag: GroupTag, k: usize, ceiling: u64, threads: usize) -> Result<Self> {
        assert!(k >= 1, "tuples need at least one entry");
        if n == 0 {
            return Err(Error::Unsupported("tuple spaces need degree >= 1".into()));
        }
        // Respect the ceiling before enumerating a single element.
        let order = tag.order(n);
        let total_big = order.pow(k as u32);
        if total_big > num::BigUint::from(ceiling) {
            return Err(Error::CeilingExceeded {
                needed: total_big.to_u64().unwrap_or(u64::MAX),
                ceiling,
            });
        }
        let total = total_big.to_u64().expect("under the ceiling");
        let elements: Vec<Permutation> = all_permutations(n)
            .filter(|p| tag == GroupTag::Symmetric || p.is_even())
            .collect();
        let g = elements.len() as u64;
        let index: HashMap<Vec<usize>, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i as u32))
            .collect();
        let inverse_map: Vec<u32> = elements
            .iter()
            .map(|p| index[p.inverse().images()])
            .collect();
        let products = if g.saturating_mul(g) <= PRODUCT_TABLE_MAX {
            let gu = g as usize;
            let mut table = vec![0u32; gu * gu];
            for (a, pa) in elements.iter().enumerate() {
                for (b, pb) in elements.iter().enumerate() {
                    table[a * gu + b] = index[pa.compose(pb).images()];
                }
            }
            Some(table)
        } else {
            None
        };
        let mut pows = vec![1u64; k];
        for m in (0..k.saturating_sub(1)).rev() {
            pows[m] = pows[m + 1] * g;
        }

        // Generation is invariant under conjugation, so it is decided once
        // per (cycle type of the first entry, conjugated rest) and filled in
        // by canonicalizing the first entry to its class representative.
        let rest_total = total / g;
        let mut table_by_type: BTreeMap<Vec<u32>, Vec<bool>> = BTreeMap::new();
        let types: BTreeSet<Vec<u32>> = elements
            .iter()
            .map(|p| p.cycle_type().parts().to_vec())
            .collect();
        for t in types {
            let rep = Permutation::with_cycle_type(&Partition::from_sorted_unchecked(t.clone()));
            let rest_pows = &pows[1..];
            let chunks = run_chunked(rest_total, threads, |range| {
                let mut bits = Vec::with_capacity((range.end - range.start) as usize);
                let mut entries: Vec<Permutation> = Vec::with_capacity(k);
                for rank in range {
                    entries.clear();
                    entries.push(rep.clone());
                    let mut rem = rank;
                    for &p in rest_pows {
                        let idx = (rem / p) as usize;
                        rem %= p;
                        entries.push(elements[idx].clone());
                    }
                    bits.push(tuple_generates(&entries, tag));
                }
                bits
            });
            table_by_type.insert(t, chunks.concat());
        }

        let chunks = run_chunked(g, threads, |range| {
            let mut bits = Vec::with_capacity(((range.end - range.start) * rest_total) as usize);
            let mut rest_idx: Vec<u32> = Vec::with_capacity(k.saturating_sub(1));
            for i0 in range {
                let e0 = &elements[i0 as usize];
                let conj = canonical_conjugator(e0);
                // Index map of conjugation by `conj` over the whole element list.
                let conj_inv = conj.inverse();
                let conj_map: Vec<u32> = elements
                    .iter()
                    .map(|p| index[conj.compose(p).compose(&conj_inv).images()])
                    .collect();
                let bits_for_type = &table_by_type[e0.cycle_type().parts()];
                let rest_pows = &pows[1..];
                for rank in 0..rest_total {
                    rest_idx.clear();
                    let mut rem = rank;
                    for &p in rest_pows {
                        rest_idx.push(conj_map[(rem / p) as usize]);
                        rem %= p;
                    }
                    let mapped_rank: u64 = rest_idx
                        .iter()
                        .zip(rest_pows)
                        .map(|(&i, &p)| u64::from(i) * p)
                        .sum();
                    bits.push(bits_for_type[mapped_rank as usize]);
                }
            }
            bits
        });
        let generating = chunks.concat();
        let gen_count = generating.iter().filter(|&&b| b).count() as u64;
        Ok(TupleSpace {
            n,
            tag,
            k,
            elements,
            index,
            inverse_map,
            products,
            pows,
            generating,
            gen_count,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> GroupTag {
        self.tag
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    /// Number of generating tuples `|N_k|`.
    pub fn generating_count(&self) -> u64 {
        self.gen_count
    }

    fn product(&self, a: u32, b: u32) -> u32 {
        match &self.products {
            Some(table) => table[a as usize * self.elements.len() + b as usize],
            None => {
                let p = self.elements[a as usize].compose(&self.elements[b as usize]);
                self.index[p.images()]
            }
        }
    }

    fn decode(&self, id: u64, buf: &mut Vec<u32>) {
        buf.clear();
        let mut rem = id;
        for &p in &self.pows {
            buf.push((rem / p) as u32);
            rem %= p;
        }
    }

    fn encode(&self, idxs: &[u32]) -> u64 {
        idxs.iter()
            .zip(&self.pows)
            .map(|(&i, &p)| u64::from(i) * p)
            .sum()
    }

    fn tuple_at(&self, id: u64) -> GeneratingTuple {
        let mut buf = Vec::with_capacity(self.k);
        self.decode(id, &mut buf);
        let entries = buf
            .iter()
            .map(|&i| self.elements[i as usize].clone())
            .collect();
        GeneratingTuple::new_unchecked(entries, self.tag)
    }

    /// Generating tuples in rank order.
    pub fn iter_generating(&self) -> impl Iterator<Item = GeneratingTuple> + '_ {
        self.generating
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(id, _)| self.tuple_at(id as u64))
    }

    /// Applies every move of the set to the index tuple in `buf`, calling
    /// `edge` with the neighbor id.
    fn for_each_neighbor<F: FnMut(u64)>(
        &self,
        buf: &[u32],
        moves: MoveSet,
        conj_maps: &[Vec<u32>],
        mut edge: F,
    ) {
        let k = self.k;
        let mut scratch: Vec<u32> = buf.to_vec();
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let gi = buf[i];
                let gj = buf[j];
                match moves {
                    MoveSet::Pra => {
                        for x in [
                            self.product(gi, gj),
                            self.product(gi, self.inverse_map[gj as usize]),
                            self.product(gj, gi),
                            self.product(self.inverse_map[gj as usize], gi),
                        ] {
                            scratch[i] = x;
                            edge(self.encode(&scratch));
                        }
                        scratch[i] = gi;
                    }
                    MoveSet::NielsenWithAut => {
                        for x in [self.product(gi, gj), self.product(gj, gi)] {
                            scratch[i] = x;
                            edge(self.encode(&scratch));
                        }
                        scratch[i] = gi;
                    }
                }
            }
        }
        if moves == MoveSet::NielsenWithAut {
            for i in 0..k {
                for j in i + 1..k {
                    scratch.swap(i, j);
                    edge(self.encode(&scratch));
                    scratch.swap(i, j);
                }
            }
            for i in 0..k {
                let gi = buf[i];
                scratch[i] = self.inverse_map[gi as usize];
                edge(self.encode(&scratch));
                scratch[i] = gi;
            }
            for map in conj_maps {
                for (i, &gi) in buf.iter().enumerate() {
                    scratch[i] = map[gi as usize];
                }
                edge(self.encode(&scratch));
                scratch.copy_from_slice(buf);
            }
        }
    }

    /// Conjugation index maps for the two generators of the symmetric group,
    /// which realize the automorphism edges.
    fn aut_conj_maps(&self) -> Vec<Vec<u32>> {
        if self.n < 2 {
            return Vec::new();
        }
        let mut conjugators = Vec::new();
        let mut swap_img: Vec<usize> = (0..self.n).collect();
        swap_img.swap(0, 1);
        conjugators.push(Permutation::new(swap_img).unwrap());
        if self.n > 2 {
            let cycle: Vec<usize> = (1..self.n).chain(std::iter::once(0)).collect();
            conjugators.push(Permutation::new(cycle).unwrap());
        }
        conjugators
            .iter()
            .map(|t| {
                let t_inv = t.inverse();
                self.elements
                    .iter()
                    .map(|p| self.index[t.compose(p).compose(&t_inv).images()])
                    .collect()
            })
            .collect()
    }

    /// Union-find roots of the generating tuples under the move set,
    /// as (root id -> orbit size), plus the per-tuple root assignment.
    fn components(&self, moves: MoveSet) -> (BTreeMap<u64, u64>, UnionFind) {
        let conj_maps = match moves {
            MoveSet::NielsenWithAut => self.aut_conj_maps(),
            MoveSet::Pra => Vec::new(),
        };
        let mut uf = UnionFind::new(self.generating.len());
        let mut buf: Vec<u32> = Vec::with_capacity(self.k);
        for id in 0..self.generating.len() as u64 {
            if !self.generating[id as usize] {
                continue;
            }
            self.decode(id, &mut buf);
            self.for_each_neighbor(&buf, moves, &conj_maps, |other| {
                debug_assert!(
                    self.generating[other as usize],
                    "moves must preserve generation"
                );
                uf.union(id as u32, other as u32);
            });
        }
        let mut sizes: BTreeMap<u64, u64> = BTreeMap::new();
        for id in 0..self.generating.len() as u64 {
            if self.generating[id as usize] {
                let root = uf.find(id as u32) as u64;
                *sizes.entry(root).or_insert(0) += 1;
            }
        }
        (sizes, uf)
    }

    fn summary(sizes: &BTreeMap<u64, u64>, total: u64) -> OrbitSummary {
        let mut orbit_sizes: Vec<u64> = sizes.values().copied().collect();
        orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(orbit_sizes.iter().sum::<u64>(), total);
        OrbitSummary {
            orbit_count: orbit_sizes.len() as u64,
            orbit_sizes,
            total,
        }
    }
}

fn canonical_conjugator(p: &Permutation) -> Permutation {
    // Conjugating by the map "i-th point of the sorted cycle sequence -> i"
    // sends p to the canonical representative of its cycle type.
    let mut cycles = p.cycles().cycles().to_vec();
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut images = vec![0usize; p.degree()];
    let mut next = 0usize;
    for cycle in &cycles {
        for &x in cycle {
            images[x] = next;
            next += 1;
        }
    }
    Permutation::new(images).expect("relabelling is a bijection")
}

/// All generating pairs of the tagged group of degree `n`, in rank order.
pub fn enumerate_generating_pairs(
    n: usize,
    tag: GroupTag,
    ceiling: u64,
    threads: usize,
) -> Result<Vec<GeneratingTuple>> {
    let space = TupleSpace::build(n, tag, 2, ceiling, threads)?;
    Ok(space.iter_generating().collect())
}

/// Number of connected components of the product replacement graph on
/// generating `k`-tuples, with the orbit size multiset.
pub fn pra_component_count(
    n: usize,
    tag: GroupTag,
    k: usize,
    ceiling: u64,
    threads: usize,
) -> Result<OrbitSummary> {
    let space = TupleSpace::build(n, tag, k, ceiling, threads)?;
    let (sizes, _) = space.components(MoveSet::Pra);
    Ok(TupleSpace::summary(&sizes, space.generating_count()))
}

/// T-system orbits with representatives and, for pairs, the per-orbit
/// invariant check.
#[derive(Debug, Clone)]
pub struct TSystemOrbits {
    pub summary: OrbitSummary,
    /// The least tuple of each orbit, ordered by rank.
    pub representatives: Vec<GeneratingTuple>,
    /// Invariant of each representative (pairs only).
    pub invariants: Vec<HigmanInvariant>,
    /// Whether the invariant was constant on every orbit (pairs only;
    /// trivially true otherwise).
    pub invariant_constant: bool,
}

/// Counts T-systems: orbits of the generating `k`-tuples under Nielsen moves
/// plus automorphism (conjugation) edges. Degree 6 is rejected.
pub fn t_system_count(
    n: usize,
    tag: GroupTag,
    k: usize,
    ceiling: u64,
    threads: usize,
) -> Result<OrbitSummary> {
    Ok(t_system_orbits(n, tag, k, ceiling, threads)?.summary)
}

/// Like [`t_system_count`], also extracting orbit representatives and
/// checking the constancy of the class-pair invariant on every orbit.
pub fn t_system_orbits(
    n: usize,
    tag: GroupTag,
    k: usize,
    ceiling: u64,
    threads: usize,
) -> Result<TSystemOrbits> {
    if n == 6 {
        return Err(Error::ExcludedDegree);
    }
    let space = TupleSpace::build(n, tag, k, ceiling, threads)?;
    let (sizes, mut uf) = space.components(MoveSet::NielsenWithAut);
    let summary = TupleSpace::summary(&sizes, space.generating_count());

    let mut rep_of_root: BTreeMap<u64, u64> = BTreeMap::new();
    let mut invariant_of_root: HashMap<u64, HigmanInvariant> = HashMap::new();
    let mut invariant_constant = true;
    let mut buf: Vec<u32> = Vec::with_capacity(k);
    for id in 0..space.generating.len() as u64 {
        if !space.generating[id as usize] {
            continue;
        }
        let root = uf.find(id as u32) as u64;
        rep_of_root.entry(root).or_insert(id);
        if k == 2 {
            space.decode(id, &mut buf);
            let c = space.elements[buf[0] as usize]
                .commutator(&space.elements[buf[1] as usize])
                .expect("equal degrees");
            let inv = HigmanInvariant::of_commutator(&c);
            match invariant_of_root.get(&root) {
                None => {
                    invariant_of_root.insert(root, inv);
                }
                Some(existing) => {
                    if *existing != inv {
                        invariant_constant = false;
                    }
                }
            }
        }
    }
    let mut reps: Vec<(u64, u64)> = rep_of_root.into_iter().collect();
    reps.sort_by_key(|&(_, id)| id);
    let representatives: Vec<GeneratingTuple> =
        reps.iter().map(|&(_, id)| space.tuple_at(id)).collect();
    let invariants = if k == 2 {
        reps.iter()
            .map(|&(root, _)| invariant_of_root[&root].clone())
            .collect()
    } else {
        Vec::new()
    };
    Ok(TSystemOrbits {
        summary,
        representatives,
        invariants,
        invariant_constant,
    })
}

/// Number of distinct symmetric-group classes met by the commutators of the
/// generating pairs of the alternating group of degree `n`. A lower bound
/// for the number of T2-systems.
pub fn higman_lower_bound(n: usize, ceiling: u64, threads: usize) -> Result<u64> {
    let space = TupleSpace::build(n, GroupTag::Alternating, 2, ceiling, threads)?;
    let mut types: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut buf: Vec<u32> = Vec::with_capacity(2);
    for id in 0..space.generating.len() as u64 {
        if !space.generating[id as usize] {
            continue;
        }
        space.decode(id, &mut buf);
        let c = space.elements[buf[0] as usize]
            .commutator(&space.elements[buf[1] as usize])
            .expect("equal degrees");
        types.insert(c.cycle_type().parts().to_vec());
    }
    Ok(types.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    fn pair(a: &str, b: &str, n: usize, tag: GroupTag) -> GeneratingTuple {
        GeneratingTuple::new(
            vec![
                Permutation::from_cycle_str(a, n).unwrap(),
                Permutation::from_cycle_str(b, n).unwrap(),
            ],
            tag,
        )
        .unwrap()
    }

    #[test]
    fn tuple_construction_checks() {
        assert!(pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating).arity() == 2);
        // Does not generate.
        assert!(GeneratingTuple::new(
            vec![Permutation::identity(5), Permutation::identity(5)],
            GroupTag::Alternating
        )
        .is_err());
        // Odd entry under the alternating tag.
        assert!(GeneratingTuple::new(
            vec![
                Permutation::from_cycle_str("(1 2)", 5).unwrap(),
                Permutation::from_cycle_str("(1 2 3 4 5)", 5).unwrap(),
            ],
            GroupTag::Alternating
        )
        .is_err());
        // Same pair generates the symmetric group.
        assert!(pair("(1 2)", "(1 2 3 4 5)", 5, GroupTag::Symmetric).arity() == 2);
    }

    #[test]
    fn nielsen_move_census_for_pairs() {
        let t = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        let neighbors = nielsen_neighbors(&t);
        // 2 R + 2 L + 1 P + 2 I = at most 7 distinct images.
        assert!(neighbors.len() <= 7);
        assert!(neighbors.len() >= 5);
        for nb in &neighbors {
            assert!(GeneratingTuple::new(nb.entries().to_vec(), nb.group()).is_ok());
        }
    }

    #[test]
    fn right_multiply_move_is_direct_composition() {
        let t = pair("(1 2 3)", "(1 2)(3 4)", 4, GroupTag::Alternating);
        // R_{1,2} replaces the first entry by g1 * g2, with g2 applied first.
        let expected = Permutation::from_cycle_str("(1 3 4)", 4).unwrap();
        assert_eq!(t.entries()[0].compose(&t.entries()[1]), expected);
        let images = nielsen_neighbors(&t);
        assert!(images
            .iter()
            .any(|nb| nb.entries()[0] == expected && nb.entries()[1] == t.entries()[1]));
    }

    #[test]
    fn triples_reconcile() {
        // Arity 3 exercises the generic encode/decode and move paths.
        let tau = t_system_count(4, GroupTag::Alternating, 3, 1_000_000, 2).unwrap();
        let kappa = pra_component_count(4, GroupTag::Alternating, 3, 1_000_000, 2).unwrap();
        assert_eq!(tau.total, kappa.total);
        assert!(tau.orbit_count <= kappa.orbit_count);
        assert_eq!(tau.orbit_sizes.iter().sum::<u64>(), tau.total);
        // Every pair extends to a triple by appending the identity, so there
        // are strictly more generating triples than pairs.
        let pairs = t_system_count(4, GroupTag::Alternating, 2, 1_000_000, 2).unwrap();
        assert!(tau.total > pairs.total);
    }

    #[test]
    fn inversion_move_is_an_involution() {
        let t = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        let mut once = t.entries().to_vec();
        once[0] = once[0].inverse();
        let mut twice = once.clone();
        twice[0] = twice[0].inverse();
        assert_eq!(twice, t.entries());
    }

    #[test]
    fn pra_move_census_for_pairs() {
        let t = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        // 4 operations x 2 ordered index pairs = 8 moves before dedup.
        let neighbors = pra_neighbors(&t);
        assert!(neighbors.len() <= 8);
        // R+ then R- with the same indices returns the original tuple.
        let mut stepped = t.entries().to_vec();
        stepped[0] = stepped[0].compose(&stepped[1]);
        let mut back = stepped.clone();
        back[0] = back[0].compose(&stepped[1].inverse());
        assert_eq!(back, t.entries());
        // Every image still generates.
        for nb in &neighbors {
            assert!(GeneratingTuple::new(nb.entries().to_vec(), nb.group()).is_ok());
        }
    }

    #[test]
    fn pra_neighbors_lie_in_nielsen_closure() {
        // R- equals I then R then I on the second index.
        let t = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        let mut direct = t.entries().to_vec();
        direct[0] = direct[0].compose(&direct[1].inverse());
        let mut via = t.entries().to_vec();
        via[1] = via[1].inverse();
        via[0] = via[0].compose(&via[1]);
        via[1] = via[1].inverse();
        assert_eq!(direct, via);
    }

    #[test]
    fn degree_three_census() {
        // The alternating group of degree 3 is cyclic of order 3; a pair
        // generates unless both entries are trivial.
        let pairs = enumerate_generating_pairs(3, GroupTag::Alternating, 1000, 1).unwrap();
        assert_eq!(pairs.len(), 8);
        let tau = t_system_count(3, GroupTag::Alternating, 2, 1000, 1).unwrap();
        assert_eq!(tau.orbit_count, 1);
        assert_eq!(tau.total, 8);
        let kappa = pra_component_count(3, GroupTag::Alternating, 2, 1000, 1).unwrap();
        assert!(tau.orbit_count <= kappa.orbit_count);
        assert_eq!(kappa.total, 8);
    }

    #[test]
    fn degree_two_symmetric_census() {
        let pairs = enumerate_generating_pairs(2, GroupTag::Symmetric, 1000, 1).unwrap();
        assert_eq!(pairs.len(), 3);
    }

    #[test]
    fn excluded_degree() {
        assert!(matches!(
            t_system_count(6, GroupTag::Alternating, 2, 10_000_000, 1),
            Err(Error::ExcludedDegree)
        ));
        assert!(matches!(
            t_system_count(6, GroupTag::Symmetric, 2, 10_000_000, 1),
            Err(Error::ExcludedDegree)
        ));
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            enumerate_generating_pairs(5, GroupTag::Alternating, 100, 1),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn higman_invariant_basics() {
        let t = pair("(1 2 3)", "(1 3 2)", 3, GroupTag::Alternating);
        let inv = higman_invariant(&t).unwrap();
        assert_eq!(inv.first, Partition::single_column(3));
        assert_eq!(inv.first, inv.second);

        // Conjugating the pair entrywise leaves the invariant unchanged.
        let t2 = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        let c = Permutation::from_cycle_str("(1 5 2)", 5).unwrap();
        let conj = GeneratingTuple::new(
            t2.entries().iter().map(|e| e.conjugate_by(&c)).collect(),
            GroupTag::Alternating,
        )
        .unwrap();
        assert_eq!(
            higman_invariant(&t2).unwrap(),
            higman_invariant(&conj).unwrap()
        );

        let triple = GeneratingTuple::new(
            vec![
                Permutation::from_cycle_str("(1 2 3)", 5).unwrap(),
                Permutation::from_cycle_str("(3 4 5)", 5).unwrap(),
                Permutation::identity(5),
            ],
            GroupTag::Alternating,
        )
        .unwrap();
        assert!(matches!(
            higman_invariant(&triple),
            Err(Error::ArityNotTwo { k: 3 })
        ));
    }

    #[test]
    fn higman_bound_for_degree_three() {
        // All commutators of the abelian group are trivial: one class.
        assert_eq!(higman_lower_bound(3, 1000, 1).unwrap(), 1);
    }

    #[test]
    fn nielsen_moves_stay_in_orbit_invariant() {
        let t = pair("(1 2 3)", "(3 4 5)", 5, GroupTag::Alternating);
        let inv = higman_invariant(&t).unwrap();
        for nb in nielsen_neighbors(&t) {
            assert_eq!(higman_invariant(&nb).unwrap(), inv);
        }
    }

    #[test]
    fn summaries_reconcile_and_are_thread_independent() {
        for threads in [1usize, 3] {
            let tau = t_system_orbits(4, GroupTag::Alternating, 2, 100_000, threads).unwrap();
            let total: u64 = tau.summary.orbit_sizes.iter().sum();
            assert_eq!(total, tau.summary.total);
            assert!(tau.invariant_constant);
            assert_eq!(tau.representatives.len() as u64, tau.summary.orbit_count);
            let kappa = pra_component_count(4, GroupTag::Alternating, 2, 100_000, threads).unwrap();
            assert_eq!(kappa.total, tau.summary.total);
            assert!(tau.summary.orbit_count <= kappa.orbit_count);
        }
        let a = t_system_count(4, GroupTag::Alternating, 2, 100_000, 1).unwrap();
        let b = t_system_count(4, GroupTag::Alternating, 2, 100_000, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn symmetric_chain_small() {
        for n in [2usize, 3, 4] {
            let tau = t_system_count(n, GroupTag::Symmetric, 2, 1_000_000, 1).unwrap();
            let kappa = pra_component_count(n, GroupTag::Symmetric, 2, 1_000_000, 1).unwrap();
            assert!(tau.orbit_count <= kappa.orbit_count, "n={n}");
            assert_eq!(tau.total, kappa.total);
        }
    }

    #[test]
    fn histogram_matches_sizes() {
        let tau = t_system_count(4, GroupTag::Alternating, 2, 100_000, 1).unwrap();
        let hist = tau.orbit_sizes_histogram();
        let total: u64 = hist.iter().map(|(size, mult)| size * mult).sum();
        assert_eq!(total, tau.total);
    }
}
