//! Integer helpers: gcd/lcm, sieving, primality and factorization of 128-bit integers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Primes `≤ n` in increasing order.
pub fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `(p, f)` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q as u128) as u64;
    let mut f = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u128) -> Vec<u128> {
    let mut fs = factorize(n);
    fs.sort_unstable();
    fs.dedup();
    fs
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u128, p: u128) -> u128 {
    let mut r = 1;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        r *= p;
    }
    r
}

pub fn is_prime_power_of(n: u128, p: u128) -> bool {
    n >= 1 && p_part(n, p) == n
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Shift-and-add; `m < 2^127` keeps every intermediate below 2^128.
    debug_assert!(m < 1u128 << 127);
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc += a;
            if acc >= m {
                acc -= m;
            }
        }
        a <<= 1;
        if a >= m {
            a -= m;
        }
        b >>= 1;
    }
    acc
}

pub fn powmod(base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        exp >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller–Rabin over the first twenty prime bases.
///
/// Deterministic below 3.3·10²⁴ (the first thirteen bases already suffice there); above
/// that no composite passing all twenty bases is known.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    assert!(n < 1u128 << 127, "primality test limited to 127-bit inputs");
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &SMALL_PRIMES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Brent's variant of Pollard rho).
fn rho_factor(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
        let mut q = 1u128;
        let mut ys = 2u128;
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
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd128(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = f(ys);
                g = gcd128(x.abs_diff(ys), n);
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factors of `n` with multiplicity, unordered.
pub fn factorize(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut m = n;
    for p in 2u128..1000 {
        if p * p > m {
            break;
        }
        while m.is_multiple_of(p) {
            out.push(p);
            m /= p;
        }
    }
    let mut stack = vec![m];
    while let Some(k) = stack.pop() {
        if k == 1 {
            continue;
        }
        if is_prime(k) {
            out.push(k);
            continue;
        }
        let d = rho_factor(k);
        stack.push(d);
        stack.push(k / d);
    }
    out
}

pub fn smallest_prime_factor(n: u128) -> u128 {
    factorize(n).into_iter().min().unwrap_or(n)
}
