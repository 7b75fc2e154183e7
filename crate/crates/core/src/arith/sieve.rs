use serde::Serialize;

const SEGMENT: u64 = 1 << 18;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Membership by binary search; only meaningful for `n <= limit`.
    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }

    /// Primes `p` with `lo <= p <= hi`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        &self.primes[a..b.max(a)]
    }
}

/// Segmented sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> PrimeTable {
    if limit < 2 {
        return PrimeTable { limit, primes: Vec::new() };
    }
    let root = integer_sqrt(limit);
    let base = simple_sieve(root);
    let mut primes = base.clone();
    primes.reserve(estimate_count(limit).saturating_sub(base.len()));

    let mut seg = vec![true; SEGMENT as usize];
    let mut low = root + 1;
    while low <= limit {
        let high = (low + SEGMENT - 1).min(limit);
        let span = (high - low + 1) as usize;
        seg[..span].fill(true);
        for &p in &base {
            let mut m = (low.div_ceil(p) * p).max(p * p);
            while m <= high {
                seg[(m - low) as usize] = false;
                m += p;
            }
        }
        primes.extend(
            seg[..span]
                .iter()
                .enumerate()
                .filter(|(_, &keep)| keep)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    PrimeTable { limit, primes }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut mark = vec![true; n + 1];
    mark[0] = false;
    mark[1] = false;
    let mut i = 2;
    while i * i <= n {
        if mark[i] {
            for j in (i * i..=n).step_by(i) {
                mark[j] = false;
            }
        }
        i += 1;
    }
    mark.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i as u64)
        .collect()
}

fn estimate_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.3 * x / x.ln().max(1.0)) as usize + 16
}

/// Floor of the square root.
pub fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
