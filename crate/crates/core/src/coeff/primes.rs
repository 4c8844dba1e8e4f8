/// Default first candidate for working primes.
pub const DEFAULT_PRIME_START: u64 = 1 << 31;

/// Deterministic primality test for 64-bit integers (Miller-Rabin with a
/// base set that is exact below 2⁶⁴).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes strictly below a starting point, scanned downward.
#[derive(Clone, Debug)]
pub struct PrimePool {
    next_candidate: u64,
    remaining: Option<usize>,
}

impl PrimePool {
    /// Primes below `start`, at most `count` of them when given.
    pub fn descending(start: u64, count: Option<usize>) -> Self {
        PrimePool {
            next_candidate: start.saturating_sub(1),
            remaining: count,
        }
    }

    /// An explicit prime sequence, e.g. to force small (possibly bad) primes
    /// into a run.
    pub fn from_list(primes: Vec<u64>) -> ListPool {
        ListPool { primes, pos: 0 }
    }
}

impl Default for PrimePool {
    fn default() -> Self {
        PrimePool::descending(DEFAULT_PRIME_START, None)
    }
}

impl Iterator for PrimePool {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == Some(0) {
            return None;
        }
        while self.next_candidate >= 2 {
            let c = self.next_candidate;
            self.next_candidate -= 1;
            if is_prime(c) {
                if let Some(r) = self.remaining.as_mut() {
                    *r -= 1;
                }
                return Some(c);
            }
        }
        None
    }
}

/// An explicit prime sequence.
#[derive(Clone, Debug)]
pub struct ListPool {
    primes: Vec<u64>,
    pos: usize,
}

impl Iterator for ListPool {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let p = self.primes.get(self.pos).copied();
        self.pos += 1;
        p
    }
}
