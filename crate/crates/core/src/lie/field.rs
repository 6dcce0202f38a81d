use crate::error::{Error, Result};
use crate::numtheory::prime_power;

/// The field of order `q = p^f`, elements encoded as integers `0..q` whose base-`p` digits
/// are coefficients modulo the lexicographically first primitive polynomial. The encoding
/// of `x` (the primitive element) is `p` when `f > 1`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    f: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, f) = prime_power(q as u64).ok_or_else(|| {
            Error::Unsupported(format!("field order {q} is not a prime power"))
        })?;
        if q > 4096 {
            return Err(Error::Unsupported(format!("field order {q} too large")));
        }
        let p = p as u32;
        // Monic x^f + c_{f-1} x^{f-1} + ... + c_0, lower coefficients encoded base p.
        for code in 0..q {
            let coeffs: Vec<u32> = (0..f).map(|i| (code / p.pow(i)) % p).collect();
            if let Some(exp) = Self::powers_of_x(p, f, &coeffs) {
                let mut log = vec![0u32; q as usize];
                for (k, &e) in exp.iter().enumerate() {
                    log[e as usize] = k as u32;
                }
                return Ok(Self { p, f, q, exp, log });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Powers `x^0..x^(q-2)` if `x` has multiplicative order `q - 1`.
    fn powers_of_x(p: u32, f: u32, coeffs: &[u32]) -> Option<Vec<u32>> {
        let q = p.pow(f);
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let mut digits = vec![0u32; f as usize];
        digits[0] = 1;
        let mut seen = vec![false; q as usize];
        let mut out = Vec::with_capacity(q as usize - 1);
        for _ in 0..q - 1 {
            let e = encode(&digits);
            if e == 0 || seen[e as usize] {
                return None;
            }
            seen[e as usize] = true;
            out.push(e);
            // multiply by x
            let top = digits[f as usize - 1];
            for i in (1..f as usize).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for (i, d) in digits.iter_mut().enumerate() {
                *d = (*d + (p - coeffs[i]) * top) % p;
            }
        }
        (encode(&digits) == 1).then_some(out)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let mut r = 0;
        let mut scale = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.f {
            r += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        r
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut r = 0;
        let mut scale = 1;
        let mut a = a;
        for _ in 0..self.f {
            r += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        r
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// `1, x, …, x^(f-1)`: a basis over the prime field.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.f).map(|i| self.pow(self.primitive(), i as u64)).collect()
    }
}
