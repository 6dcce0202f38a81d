use crate::numtheory::{factorize, powmod, prime_divisors};

/// Least primitive prime divisor of `a^n − 1`: a prime dividing it but no `a^k − 1`
/// for `1 ≤ k < n`. `None` exactly for `(a, n) = (2, 6)` and for `n = 2` with `a + 1`
/// a power of two.
///
/// Panics unless `a ≥ 2`, `n ≥ 2` and `a^n < 2^127`.
pub fn zsigmondy(a: u64, n: u32) -> Option<u128> {
    assert!(a >= 2 && n >= 2, "zsigmondy needs a >= 2 and n >= 2");
    let a = a as u128;
    let cyclo = cyclotomic_value(a, n);
    let n_primes = prime_divisors(n as u128);
    let mut candidates: Vec<u128> = factorize(cyclo)
        .into_iter()
        .filter(|&r| {
            n_primes
                .iter()
                .all(|&l| powmod(a, (n as u128) / l, r) != 1)
        })
        .collect();
    candidates.sort_unstable();
    candidates.first().copied()
}

/// Product of all primitive prime divisors of `a^n − 1` with multiplicity: `Φ_n(a)`
/// stripped of the primes dividing `n`. Equal to 1 exactly when no primitive divisor
/// exists. Needs no factorization, so it works for any `a^n < 2^127`.
pub fn primitive_part(a: u64, n: u32) -> u128 {
    assert!(a >= 2 && n >= 2, "primitive_part needs a >= 2 and n >= 2");
    let mut v = cyclotomic_value(a as u128, n);
    for r in prime_divisors(n as u128) {
        while v.is_multiple_of(r) {
            v /= r;
        }
    }
    v
}

/// `Φ_n(a)`, from `a^n − 1 = ∏_{d | n} Φ_d(a)`. Dividing `a^n − 1` by the smaller
/// factors one at a time keeps every intermediate below `a^n`.
fn cyclotomic_value(a: u128, n: u32) -> u128 {
    assert!(
        a.checked_pow(n).is_some_and(|v| v < 1u128 << 127),
        "a^n must stay below 2^127"
    );
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut values: Vec<u128> = Vec::with_capacity(divisors.len());
    for (i, &d) in divisors.iter().enumerate() {
        let mut v = a.pow(d) - 1;
        for (j, &e) in divisors[..i].iter().enumerate() {
            if d % e == 0 {
                v /= values[j];
            }
        }
        values.push(v);
    }
    *values.last().expect("n is a divisor of itself")
}
