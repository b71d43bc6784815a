//! The named verification suites behind `symkit verify`. Each check prints
//! one JSON line; a suite fails (nonzero exit) only if an assertable check
//! fails. Report-only checks carry `"status": "report"` and never fail.

use std::collections::HashMap;
use std::path::PathBuf;

use num::bigint::{BigInt, BigUint};
use num::{ToPrimitive, Zero};
use serde_json::json;

use symkit::characters::{dimension, CharacterTable};
use symkit::counting::{
    class_product_mass_report, commutator_count_alt, commutator_count_sym,
    generating_commutator_count, pick_prime, setwise_stabilizer_class_count,
    symmetric_commutator_class_counts, triple_count, witness_cycle_type, CommutatorSweep,
    PrimeWindow, TableProvider,
};
use symkit::partitions::{
    alternating_class_count, class_descriptor, class_product_mass, enumerate_partitions,
    even_parts_identity_check, hardy_ramanujan_estimate, partition_counts_up_to, Partition,
};
use symkit::perm::{all_permutations, Permutation};
use symkit::tsystems::{higman_lower_bound, pra_component_count, t_system_orbits, GroupTag};
use symkit::util::{factorial, SplitMix64};
use symkit::Error;

struct Reporter {
    suite: &'static str,
    failures: u64,
}

impl Reporter {
    fn new(suite: &'static str) -> Self {
        Reporter { suite, failures: 0 }
    }

    fn check(&mut self, name: &str, pass: bool, details: serde_json::Value) {
        if !pass {
            self.failures += 1;
        }
        self.emit(name, if pass { "pass" } else { "fail" }, details);
    }

    fn report(&mut self, name: &str, details: serde_json::Value) {
        self.emit(name, "report", details);
    }

    fn emit(&self, name: &str, status: &str, details: serde_json::Value) {
        println!(
            "{}",
            json!({
                "suite": self.suite,
                "check": name,
                "status": status,
                "details": details,
            })
        );
    }

    fn finish(self) -> Result<(), Error> {
        eprintln!(
            "suite {}: {}",
            self.suite,
            if self.failures == 0 {
                "all assertable checks passed".to_string()
            } else {
                format!("{} checks FAILED", self.failures)
            }
        );
        if self.failures == 0 {
            Ok(())
        } else {
            Err(Error::SelfCheck(format!(
                "{} assertable checks failed in suite {}",
                self.failures, self.suite
            )))
        }
    }
}

pub fn run_suite(
    suite: &str,
    ceiling: u64,
    threads: usize,
    cache: &Option<PathBuf>,
) -> Result<(), Error> {
    match suite {
        "orthogonality" => orthogonality(cache),
        "frobenius" => frobenius(),
        "commutator" => commutator(ceiling, threads),
        "tsystem-chain" => tsystem_chain(threads),
        "partition-identity" => partition_identity(),
        "hardy-ramanujan" => hardy_ramanujan(),
        "lemma256" => lemma256(ceiling, threads),
        other => Err(Error::Parse {
            what: "suite name",
            detail: format!(
                "{other:?}; known suites: orthogonality frobenius commutator \
                 tsystem-chain partition-identity hardy-ramanujan lemma256"
            ),
        }),
    }
}

fn orthogonality(cache: &Option<PathBuf>) -> Result<(), Error> {
    let mut rep = Reporter::new("orthogonality");
    for n in 1..=9u32 {
        let table = match cache {
            Some(dir) => {
                let path = dir.join(format!("chartab-v1-n{n}.bin"));
                std::fs::read(&path)
                    .ok()
                    .and_then(|bytes| CharacterTable::from_binary(&bytes).ok())
                    .filter(|t| t.n() == n)
                    .map_or_else(|| CharacterTable::build(n), Ok)?
            }
            None => CharacterTable::build(n)?,
        };
        let count = table.num_classes();
        let sizes = table.class_sizes();
        let order = BigInt::from(factorial(n));
        let mut rows_ok = true;
        for r1 in 0..count {
            for r2 in 0..count {
                let mut acc = BigInt::zero();
                for (c, size) in sizes.iter().enumerate() {
                    acc +=
                        BigInt::from(size.clone()) * table.value_at(r1, c) * table.value_at(r2, c);
                }
                let expected = if r1 == r2 {
                    order.clone()
                } else {
                    BigInt::zero()
                };
                rows_ok &= acc == expected;
            }
        }
        rep.check("row-orthogonality", rows_ok, json!({ "n": n }));
        let mut cols_ok = true;
        for (c1, size1) in sizes.iter().enumerate() {
            for c2 in 0..count {
                let mut acc = BigInt::zero();
                for r in 0..count {
                    acc += table.value_at(r, c1) * table.value_at(r, c2);
                }
                let expected = if c1 == c2 {
                    &order / BigInt::from(size1.clone())
                } else {
                    BigInt::zero()
                };
                cols_ok &= acc == expected;
            }
        }
        rep.check("column-orthogonality", cols_ok, json!({ "n": n }));
        let mut squares = BigUint::zero();
        let mut dims_ok = true;
        for (r, lambda) in table.labels().iter().enumerate() {
            let dim = dimension(lambda);
            dims_ok &= table.dimension_of(r).magnitude() == &dim;
            squares += &dim * &dim;
        }
        rep.check("hook-dimensions", dims_ok, json!({ "n": n }));
        rep.check(
            "dimension-squares",
            squares == factorial(n),
            json!({ "n": n }),
        );
    }
    rep.finish()
}

fn pair_product_histogram(n: usize) -> (Vec<Partition>, Vec<Vec<Vec<u64>>>) {
    let labels = enumerate_partitions(n as u32);
    let index: HashMap<Vec<u32>, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, p)| (p.parts().to_vec(), i))
        .collect();
    let elements: Vec<Permutation> = all_permutations(n).collect();
    let class_of: Vec<usize> = elements
        .iter()
        .map(|p| index[p.cycle_type().parts()])
        .collect();
    let k = labels.len();
    let mut hist = vec![vec![vec![0u64; k]; k]; k];
    for (xi, x) in elements.iter().enumerate() {
        for (yi, y) in elements.iter().enumerate() {
            let prod = x.compose(y);
            hist[class_of[xi]][class_of[yi]][index[prod.cycle_type().parts()]] += 1;
        }
    }
    (labels, hist)
}

fn frobenius() -> Result<(), Error> {
    let mut rep = Reporter::new("frobenius");
    for n in 2..=5usize {
        let table = CharacterTable::build(n as u32)?;
        let (labels, hist) = pair_product_histogram(n);
        let mut ok = true;
        let mut checked = 0u64;
        for (i1, l1) in labels.iter().enumerate() {
            let c1 = class_descriptor(l1);
            for (i2, l2) in labels.iter().enumerate() {
                let c2 = class_descriptor(l2);
                for (it, lt) in labels.iter().enumerate() {
                    let tau = Permutation::with_cycle_type(lt);
                    let tau_class = class_descriptor(lt).size().clone();
                    let pairs = BigUint::from(hist[i1][i2][it]);
                    ok &= (&pairs % &tau_class).is_zero()
                        && triple_count(&c1, &c2, &tau, &table)? == pairs / tau_class;
                    checked += 1;
                }
            }
        }
        rep.check(
            "exhaustive-triples",
            ok,
            json!({ "n": n, "triples": checked }),
        );
    }
    let table = CharacterTable::build(6)?;
    let (labels, hist) = pair_product_histogram(6);
    let mut rng = SplitMix64::new(0x5ec5_eed5_0f0f_0001);
    let k = labels.len() as u64;
    let mut ok = true;
    for _ in 0..200 {
        let i1 = rng.below(k) as usize;
        let i2 = rng.below(k) as usize;
        let it = rng.below(k) as usize;
        let c1 = class_descriptor(&labels[i1]);
        let c2 = class_descriptor(&labels[i2]);
        let tau = Permutation::with_cycle_type(&labels[it]);
        let tau_class = class_descriptor(&labels[it]).size().clone();
        let pairs = BigUint::from(hist[i1][i2][it]);
        ok &= (&pairs % &tau_class).is_zero()
            && triple_count(&c1, &c2, &tau, &table)? == pairs / tau_class;
    }
    rep.check("sampled-triples", ok, json!({ "n": 6, "triples": 200 }));
    rep.finish()
}

fn commutator(ceiling: u64, threads: usize) -> Result<(), Error> {
    let mut rep = Reporter::new("commutator");
    for m in 1..=6u32 {
        let table = CharacterTable::build(m)?;
        let mut ok = true;
        for pi_type in enumerate_partitions(m) {
            let pi = Permutation::with_cycle_type(&pi_type);
            let brute = symmetric_commutator_class_counts(&pi, ceiling, threads)?;
            for mu in enumerate_partitions(m) {
                let c = class_descriptor(&mu);
                let formula = commutator_count_sym(&pi, &c, &table)?.exact;
                ok &= formula == BigUint::from(brute.get(&mu).copied().unwrap_or(0));
            }
        }
        rep.check("symmetric-vs-brute", ok, json!({ "m": m }));
    }
    for n in 3..=7u32 {
        let table = CharacterTable::build(n)?;
        let mut ok = true;
        for pi_type in enumerate_partitions(n) {
            let pi_class = class_descriptor(&pi_type);
            if !pi_class.is_even() || pi_class.splits_in_alternating() {
                continue;
            }
            let pi = Permutation::with_cycle_type(&pi_type);
            let sweep = CommutatorSweep::run(&pi, ceiling, threads)?;
            for mu in enumerate_partitions(n) {
                let c = class_descriptor(&mu);
                if !c.is_even() {
                    continue;
                }
                let formula = commutator_count_alt(&pi, &c, &table)?.exact;
                ok &= formula == BigUint::from(sweep.counts(&mu).total);
            }
        }
        rep.check("alternating-vs-brute", ok, json!({ "n": n }));
    }
    // Degree-9 anchor: two-route generating counts, one line per class.
    let n = 9u32;
    let p = pick_prime(n, PrimeWindow::ThreeFifths).expect("prime window at 9");
    let witness = witness_cycle_type(n, p)?;
    let pi = Permutation::with_cycle_type(&witness);
    let sweep = CommutatorSweep::run(&pi, ceiling, threads)?;
    let mut tables = TableProvider::new();
    for mu in enumerate_partitions(n) {
        let c = class_descriptor(&mu);
        if !c.is_even() {
            continue;
        }
        let report = generating_commutator_count(&sweep, &c, &mut tables)?;
        let brute = report
            .brute_force
            .clone()
            .expect("sweep attaches the oracle");
        let positive_needed = c.fixed_points() == 0;
        let pass = report.exact == brute && (!positive_needed || !report.exact.is_zero());
        rep.check(
            "generating-two-routes",
            pass,
            json!({
                "n": n,
                "pi": witness,
                "class": mu,
                "exact": report.exact.to_string(),
                "brute_force": brute.to_string(),
                "ratio": report.ratio.to_string(),
                "fixed_points": c.fixed_points(),
            }),
        );
    }
    rep.finish()
}

fn tsystem_chain(threads: usize) -> Result<(), Error> {
    let mut rep = Reporter::new("tsystem-chain");
    for n in [3usize, 4, 5] {
        let ceiling = 7_000_000;
        let orbits = t_system_orbits(n, GroupTag::Alternating, 2, ceiling, threads)?;
        let kappa = pra_component_count(n, GroupTag::Alternating, 2, ceiling, threads)?;
        let bound = higman_lower_bound(n, ceiling, threads)?;
        let chain_ok = bound <= orbits.summary.orbit_count
            && orbits.summary.orbit_count <= kappa.orbit_count
            && orbits.invariant_constant
            && orbits.summary.total == kappa.total;
        rep.check(
            "higman-tau-kappa",
            chain_ok,
            json!({
                "n": n,
                "pairs": orbits.summary.total,
                "higman_bound": bound,
                "tau": orbits.summary.orbit_count,
                "kappa": kappa.orbit_count,
                "invariant_constant": orbits.invariant_constant,
            }),
        );
    }
    rep.finish()
}

fn partition_identity() -> Result<(), Error> {
    let mut rep = Reporter::new("partition-identity");
    let counts = partition_counts_up_to(60);
    for n in 1..=60u32 {
        let check = even_parts_identity_check(n);
        let mut details = json!({
            "n": n,
            "odd_even_parts": check.odd_even_parts,
            "even_even_parts": check.even_even_parts,
            "distinct_odd": check.distinct_odd,
        });
        let mut pass = check.holds;
        if n <= 40 {
            let even_classes = alternating_class_count(n);
            let at_least_half = BigUint::from(2 * even_classes) >= counts[n as usize];
            details["alternating_classes"] = json!(even_classes);
            details["partition_count"] = json!(counts[n as usize].to_string());
            pass &= at_least_half;
        }
        rep.check("identity-and-class-count", pass, details);
    }
    rep.finish()
}

fn hardy_ramanujan() -> Result<(), Error> {
    let mut rep = Reporter::new("hardy-ramanujan");
    let table = partition_counts_up_to(1000);
    let mut consistent = true;
    for n in 0..=30u32 {
        consistent &= table[n as usize].to_u64() == Some(enumerate_partitions(n).len() as u64);
    }
    rep.report(
        "recurrence-vs-enumeration",
        json!({ "max_n": 30, "consistent": consistent }),
    );
    let mut last: Option<f64> = None;
    for n in [100u32, 200, 500, 1000] {
        let exact = table[n as usize].to_f64().unwrap();
        let estimate = hardy_ramanujan_estimate(n);
        let error = (exact / estimate - 1.0).abs();
        rep.report(
            "relative-error",
            json!({
                "n": n,
                "partition_count": table[n as usize].to_string(),
                "estimate": estimate,
                "abs_relative_error": error,
                "decreased": last.map(|prev| error < prev),
            }),
        );
        last = Some(error);
    }
    rep.finish()
}

fn lemma256(ceiling: u64, threads: usize) -> Result<(), Error> {
    let mut rep = Reporter::new("lemma256");
    for n in 2..=7u32 {
        let mut ok = true;
        let mut checked = 0u64;
        for mu in enumerate_partitions(n) {
            let c = class_descriptor(&mu);
            for k in 1..n {
                ok &= class_product_mass(&c, k)
                    == setwise_stabilizer_class_count(&c, k, ceiling, threads)?;
                checked += 1;
            }
        }
        rep.check(
            "mass-vs-stabilizer",
            ok,
            json!({ "n": n, "pairs": checked }),
        );
    }
    for n in [16u32, 24, 32] {
        let reps: Vec<Partition> = vec![
            Partition::new(vec![n]).unwrap(),
            Partition::new(vec![n - 2, 2]).unwrap(),
            Partition::new(vec![n / 2, n / 2]).unwrap(),
            Partition::new(vec![2; (n / 2) as usize]).unwrap(),
            Partition::new(vec![4; (n / 4) as usize]).unwrap(),
        ];
        for class in reps {
            let c = class_descriptor(&class);
            let rows = class_product_mass_report(&c, 1, 4)?;
            for row in rows {
                rep.report(
                    "mass-bound",
                    json!({
                        "n": n,
                        "class": class,
                        "k": row.k,
                        "mass": row.mass.to_string(),
                        "bound": row.bound,
                        "kind": format!("{:?}", row.kind),
                        "holds": row.holds,
                    }),
                );
            }
        }
    }
    rep.finish()
}
