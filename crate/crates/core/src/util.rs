//! Small shared helpers: big factorials, primality, deterministic sampling,
//! and a chunked worker pool for the brute-force sweeps.

use num::bigint::BigUint;
use num::One;
use std::ops::Range;

pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

/// Trial division; inputs here are tiny.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Deterministic 64-bit generator (splitmix64). Used wherever the toolkit
/// needs "random" samples that must reproduce bit-for-bit across runs.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` via rejection; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Splits `0..total` into at most `threads` contiguous chunks, runs `work` on
/// each chunk (in parallel when `threads > 1`), and returns the per-chunk
/// results in chunk order. Callers merge the results; with an order-aware
/// merge the outcome is identical for any thread count.
pub fn run_chunked<R, F>(total: u64, threads: usize, work: F) -> Vec<R>
where
    R: Send,
    F: Fn(Range<u64>) -> R + Sync,
{
    let threads = threads.max(1).min(total.max(1) as usize);
    if threads == 1 {
        return vec![work(0..total)];
    }
    let chunk = total.div_ceil(threads as u64);
    let ranges: Vec<Range<u64>> = (0..threads as u64)
        .map(|i| (i * chunk).min(total)..((i + 1) * chunk).min(total))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| work(r)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5).to_u64(), Some(120));
        assert_eq!(factorial(12).to_u64(), Some(479_001_600));
    }

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn chunked_sum_is_thread_independent() {
        let total = 10_000u64;
        let sum = |r: Range<u64>| r.sum::<u64>();
        for threads in [1, 2, 3, 8] {
            let parts = run_chunked(total, threads, sum);
            assert_eq!(parts.into_iter().sum::<u64>(), total * (total - 1) / 2);
        }
    }

    #[test]
    fn splitmix_reproduces() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(c.below(13) < 13);
        }
    }
}
