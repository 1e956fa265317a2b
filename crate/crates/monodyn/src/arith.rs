//! Integer number theory support: prime sieve, deterministic Miller-Rabin,
//! Pollard rho (Brent variant) with a time budget, and squarefree tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::LazyLock;
use std::time::{Duration, Instant};

/// Primes below 10^6, used for trial division and candidate enumeration.
static SMALL_PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| sieve(1_000_000));

pub fn small_primes() -> &'static [u64] {
    &SMALL_PRIMES
}

/// Simple sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return vec![];
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit <= 1_000_000 {
        let idx = SMALL_PRIMES.partition_point(|&p| p <= limit);
        SMALL_PRIMES[..idx].to_vec()
    } else {
        sieve(limit)
    }
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^64 keeps a*b within u128
    (a * b) % m
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, b, mm);
        }
        b = mulmod_u128(b, b, mm);
        exp >>= 1;
        base = 0;
    }
    let _ = base;
    acc as u64
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x as u128, x as u128, n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the fixed witness set {2,...,41}; deterministic for
/// n < 3.3 * 10^24, an extremely strong probable-prime test beyond that.
pub fn is_prime(n: &BigInt) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_negative() {
        return false;
    }
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return false;
    }
    let witnesses: Vec<BigInt> = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
        .iter()
        .map(|&w| BigInt::from(w))
        .collect();
    let n_minus_1: BigInt = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d: BigInt = &n_minus_1 >> s;
    'witness: for a in &witnesses {
        if a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic stream used wherever reproducible pseudo-randomness is needed.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, bound), bound > 0.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Budget for integer factorizations: trial division bound plus a wall-clock
/// allowance for the rho stage.
#[derive(Debug, Clone)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub timeout: Duration,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            timeout: Duration::from_millis(2000),
        }
    }
}

/// Outcome of a budgeted factorization. `unfactored` is a composite cofactor
/// the budget could not split; verdicts depending on it must degrade to
/// "conditional" rather than pretend completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
    pub unfactored: Option<BigInt>,
}

impl IntFactorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

fn brent_rho_u64(n: u64, c: u64, deadline: Instant) -> Option<u64> {
    let nn = n as u128;
    let cc = (c % n) as u128;
    let f = |x: u128| (mulmod_u128(x, x, nn) + cc) % nn;
    let mut y: u128 = 2;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let m: u64 = 128;
    let mut g: u64 = 1;
    let mut x: u128 = 0;
    let mut ys: u128 = 0;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(y);
                let diff = if x > y { x - y } else { y - x };
                q = mulmod_u128(q, diff, nn);
            }
            g = (q as u64).gcd(&n);
            k += m;
            if Instant::now() > deadline {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            let diff = if x > ys { x - ys } else { ys - x };
            g = (diff as u64).gcd(&n);
            if g > 1 {
                break;
            }
            if Instant::now() > deadline {
                return None;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

fn brent_rho_big(n: &BigInt, c: u64, deadline: Instant) -> Option<BigInt> {
    let cc = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &cc) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let m: u64 = 128;
    let mut g = BigInt::one();
    let mut x = BigInt::zero();
    let mut ys = BigInt::zero();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                let diff = (&x - &y).abs();
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            if Instant::now() > deadline {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
            if Instant::now() > deadline {
                return None;
            }
        }
    }
    if !g.is_one() && &g != n {
        Some(g)
    } else {
        None
    }
}

fn find_factor(n: &BigInt, deadline: Instant) -> Option<BigInt> {
    if let Some(v) = n.to_u64() {
        for c in 1..64 {
            if Instant::now() > deadline {
                return None;
            }
            if let Some(d) = brent_rho_u64(v, c, deadline) {
                return Some(BigInt::from(d));
            }
        }
        None
    } else {
        for c in 1..64 {
            if Instant::now() > deadline {
                return None;
            }
            if let Some(d) = brent_rho_big(n, c, deadline) {
                return Some(d);
            }
        }
        None
    }
}

/// Detect m = r^k with k >= 2; returns (r, k) with k maximal prime exponent step.
fn as_perfect_power(m: &BigInt) -> Option<(BigInt, u32)> {
    let bits = m.bits();
    for k in (2..=bits.max(2)).rev() {
        let k = k as u32;
        let r = m.nth_root(k);
        if r.pow(k) == *m {
            return Some((r, k));
        }
    }
    None
}

/// Factor |n| > 0. Trial division up to the budget bound (with early prime
/// cofactor cutoff), then perfect-power splitting and Brent rho under the
/// wall-clock budget. Never wrong, possibly incomplete.
pub fn factor_with_budget(n: &BigInt, budget: &FactorBudget) -> IntFactorization {
    assert!(!n.is_zero(), "cannot factor zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut factors: BTreeMap<BigInt, u32> = BTreeMap::new();
    if m.is_one() {
        return IntFactorization {
            sign,
            factors: vec![],
            unfactored: None,
        };
    }
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            break;
        }
        while (&m % &pb).is_zero() {
            m /= &pb;
            *factors.entry(pb.clone()).or_insert(0) += 1;
        }
        if m.is_one() {
            break;
        }
    }
    let mut unfactored = BigInt::one();
    if !m.is_one() {
        let deadline = Instant::now() + budget.timeout;
        let mut stack = vec![m];
        while let Some(top) = stack.pop() {
            if top.is_one() {
                continue;
            }
            if is_prime(&top) {
                *factors.entry(top).or_insert(0) += 1;
            } else if let Some((r, k)) = as_perfect_power(&top) {
                for _ in 0..k {
                    stack.push(r.clone());
                }
            } else if let Some(d) = find_factor(&top, deadline) {
                stack.push(&top / &d);
                stack.push(d);
            } else {
                unfactored *= &top;
            }
        }
    }
    IntFactorization {
        sign,
        factors: factors.into_iter().collect(),
        unfactored: if unfactored.is_one() {
            None
        } else {
            Some(unfactored)
        },
    }
}

/// Squarefree test with budget. `None` means the budget ran out before the
/// question was settled. Zero is not squarefree.
pub fn is_squarefree(n: &BigInt, budget: &FactorBudget) -> Option<bool> {
    if n.is_zero() {
        return Some(false);
    }
    let mut m = n.abs();
    if m.is_one() {
        return Some(true);
    }
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        let pb = BigInt::from(p);
        if (&pb * &pb) > m {
            return Some(true);
        }
        if (&m % &pb).is_zero() {
            m /= &pb;
            if (&m % &pb).is_zero() {
                return Some(false);
            }
        }
        if m.is_one() {
            return Some(true);
        }
    }
    if m.is_one() || is_prime(&m) {
        return Some(true);
    }
    if as_perfect_power(&m).is_some() {
        return Some(false);
    }
    let fac = factor_with_budget(&m, budget);
    if fac.is_complete() {
        Some(fac.factors.iter().all(|(_, e)| *e == 1))
    } else if fac.factors.iter().any(|(_, e)| *e >= 2) {
        Some(false)
    } else {
        None
    }
}

/// Squarefree after dividing out all powers of the given primes.
pub fn is_squarefree_away_from(n: &BigInt, excluded: &[BigInt], budget: &FactorBudget) -> Option<bool> {
    if n.is_zero() {
        return Some(false);
    }
    let mut m = n.abs();
    for p in excluded {
        while !m.is_one() && (&m % p).is_zero() {
            m /= p;
        }
    }
    is_squarefree(&m, budget)
}

/// p-adic valuation of n != 0.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut v = 0;
    while (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    v
}

/// Inverse of a modulo m, when gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let ext = a.extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(&BigInt::from(n))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn primality_big() {
        // 2^89 - 1 is a Mersenne prime
        let m89 = (BigInt::one() << 89) - 1;
        assert!(is_prime(&m89));
        assert!(!is_prime(&(&m89 + 2)));
    }

    #[test]
    fn factor_complete() {
        let n = BigInt::from(-2012);
        let f = factor_with_budget(&n, &FactorBudget::default());
        assert_eq!(f.sign, -1);
        assert_eq!(
            f.factors,
            vec![(BigInt::from(2), 2), (BigInt::from(503), 1)]
        );
        assert!(f.is_complete());
    }

    #[test]
    fn factor_semiprime() {
        // two 11-digit primes
        let p = BigInt::from(10000000019u64);
        let q = BigInt::from(10000000033u64);
        let f = factor_with_budget(&(&p * &q), &FactorBudget::default());
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn squarefree_cases() {
        let b = FactorBudget::default();
        assert_eq!(is_squarefree(&BigInt::from(0), &b), Some(false));
        assert_eq!(is_squarefree(&BigInt::from(1), &b), Some(true));
        assert_eq!(is_squarefree(&BigInt::from(-1), &b), Some(true));
        assert_eq!(is_squarefree(&BigInt::from(12), &b), Some(false));
        assert_eq!(is_squarefree(&BigInt::from(-30), &b), Some(true));
        assert_eq!(is_squarefree(&BigInt::from(49), &b), Some(false));
        // away-from variant: -2 is squarefree away from 2, 12 = 2^2*3 as well
        assert_eq!(
            is_squarefree_away_from(&BigInt::from(12), &[BigInt::from(2)], &b),
            Some(true)
        );
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(
            as_perfect_power(&BigInt::from(729)),
            Some((BigInt::from(3), 6))
        );
        assert_eq!(as_perfect_power(&BigInt::from(10)), None);
    }

    #[test]
    fn inverse_mod() {
        let inv = mod_inverse(&BigInt::from(3), &BigInt::from(4)).unwrap();
        assert_eq!(inv, BigInt::from(3));
        assert!(mod_inverse(&BigInt::from(2), &BigInt::from(4)).is_none());
    }
}
