//! Rational-integer primitives: sieving, primality, factorization and
//! square roots modulo a prime.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Trial division runs over all primes below this bound.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

const MR_BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_ROUNDS_BIG: usize = 64;

/// Sieve of Eratosthenes; all primes `<= n` in ascending order.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let n = count.max(6) as f64;
    let bound = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 10;
    let mut primes = primes_up_to(bound);
    primes.truncate(count);
    primes
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        primes_up_to(TRIAL_DIVISION_BOUND as u64)
            .into_iter()
            .map(|p| p as u32)
            .collect()
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the twelve prime bases up to 37 are exact
/// for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES_U64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES_U64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary size: exact up to 2^64, 64 Miller-Rabin rounds
/// with pseudo-random bases above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let two = &one + &one;
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Seeded from the input so repeated calls agree.
    let seed = n
        .iter_u64_digits()
        .fold(0x9e37_79b9_7f4a_7c15u64, |acc, w| acc.rotate_left(7) ^ w);
    let mut rng = StdRng::seed_from_u64(seed);
    'rounds: for _ in 0..MR_ROUNDS_BIG {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        // Brent's cycle detection with batched gcds.
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut g = BigUint::one();
        while g.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            g = diff.gcd(n);
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// `n = root^k` with the largest such `k >= 2`, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    (2..=bits).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n && r > BigUint::one()).then_some((r, k))
    })
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        let mut parts = Vec::new();
        split_u64(small, &mut parts);
        out.extend(parts.into_iter().map(BigUint::from));
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some((root, k)) = perfect_power(&n) {
        for _ in 0..k {
            split_big(root.clone(), out);
        }
        return;
    }
    let d = rho_big(&n);
    let rest = &n / &d;
    split_big(d, out);
    split_big(rest, out);
}

fn collect(mut primes: Vec<BigUint>) -> Vec<(BigUint, u32)> {
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Prime factorization of a positive integer as ascending `(prime, exponent)`
/// pairs. `factor_biguint(1)` is empty.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut m = n.clone();
    let mut found = Vec::new();
    let mut checked_prime = false;
    for &p in small_primes() {
        let p = BigUint::from(p);
        if &p * &p > m {
            break;
        }
        let mut divided = false;
        loop {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            m = q;
            found.push(p.clone());
            divided = true;
        }
        if divided || !checked_prime {
            if m.is_one() || is_prime(&m) {
                break;
            }
            checked_prime = true;
        }
    }
    split_big(m, &mut found);
    collect(found)
}

/// Prime factorization of a nonzero `u64`.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n != 0, "cannot factor zero");
    let mut m = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
            if m > 1 && is_prime_u64(m) {
                break;
            }
        }
    }
    if m > 1 {
        let mut rest = Vec::new();
        split_u64(m, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out.sort_unstable();
    }
    out
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks). `None` if `a`
/// is a non-residue.
pub fn sqrt_mod_prime(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(a);
    }
    let one = BigUint::one();
    let p_minus_1 = p - &one;
    let half = &p_minus_1 >> 1;
    if a.modpow(&half, p) != one {
        return None;
    }
    let s = p_minus_1.trailing_zeros().unwrap_or(0);
    let q = &p_minus_1 >> s;
    if s == 1 {
        return Some(a.modpow(&((p + &one) >> 2), p));
    }
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) == one {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = t * &c % p;
        r = r * b % p;
    }
    Some(r)
}

/// Kronecker-style residue symbol of `a` modulo an odd prime `p`: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from_biguint(Sign::Plus, p.clone());
    let r = a.mod_floor(&pi).to_biguint().expect("nonnegative residue");
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `ord_p(n)` for a prime `p` and nonzero `n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// Natural logarithm of a big integer without overflow to infinity.
pub fn ln_big(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log of zero");
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            return f.ln();
        }
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |n|` for a nonzero signed big integer.
pub fn ln_abs(n: &BigInt) -> f64 {
    ln_big(n.magnitude())
}
