//! Dense univariate polynomials over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `x^i`; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("nonzero divisor");
        let lb = divisor.lead().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().clone();
            let shift = dr - db;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lb).collect();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = Self::new(next).primitive();
        }
        r
    }

    /// Primitive greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r;
        }
        if a.degree() == Some(0) {
            Self::from_i64(&[1])
        } else {
            a
        }
    }

    /// Number of distinct complex roots.
    #[cfg(test)]
    pub fn distinct_roots(&self) -> usize {
        let Some(n) = self.degree() else { return 0 };
        n - self.gcd(&self.derivative()).degree().unwrap_or(0)
    }

    /// Tries a few primes first: a reduction of the same degree that is
    /// squarefree mod `q` proves squarefreeness over the integers.
    pub fn is_squarefree(&self) -> bool {
        if SQUAREFREE_PRIMES.iter().any(|&q| self.squarefree_mod(q)) {
            return true;
        }
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    fn squarefree_mod(&self, q: u64) -> bool {
        let modulus = BigInt::from(q);
        let reduce = |c: &BigInt| -> u64 {
            let r = c.mod_floor(&modulus);
            r.try_into().expect("residue fits")
        };
        let p: Vec<u64> = self.coeffs.iter().map(reduce).collect();
        if p.last().is_none_or(|&c| c == 0) {
            return false;
        }
        let dp: Vec<u64> = p.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % q, q)).collect();
        gcd_mod(p, dp, q).len() == 1
    }

    /// The polynomial taking the value `ys[k]` at `x = k`, scaled to a
    /// primitive integer polynomial.
    ///
    /// Uses the forward-difference form `sum_k Δ^k y_0 * C(x, k)`, multiplied
    /// through by `n!` so every step stays in the integers.
    pub fn interpolate(ys: &[BigInt]) -> Self {
        let n = ys.len();
        if n == 0 {
            return Self::new(Vec::new());
        }
        let mut diffs = ys.to_vec();
        let mut leading = Vec::with_capacity(n);
        for level in 0..n {
            leading.push(diffs[0].clone());
            for i in 0..n - level - 1 {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
        }
        let top = n - 1;
        // falling[k] = x (x - 1) ... (x - k + 1); scale[k] = top! / k!
        let mut falling = vec![BigInt::one()];
        let mut scale: Vec<BigInt> = vec![BigInt::one(); n];
        for k in (0..top).rev() {
            scale[k] = &scale[k + 1] * BigInt::from(k + 1);
        }
        let mut acc = vec![BigInt::zero(); n];
        for (k, d) in leading.iter().enumerate() {
            if k > 0 {
                let shift = BigInt::from(k - 1);
                let mut next = vec![BigInt::zero(); falling.len() + 1];
                for (i, c) in falling.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * &shift;
                }
                falling = next;
            }
            if d.is_zero() {
                continue;
            }
            let factor = d * &scale[k];
            for (i, c) in falling.iter().enumerate() {
                acc[i] += c * &factor;
            }
        }
        Self::new(acc).primitive()
    }
}

const SQUAREFREE_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, q);
        }
        a = mul_mod(a, a, q);
        e >>= 1;
    }
    r
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Monic-free Euclid over `F_q`; the result is empty for two zero inputs.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> Vec<u64> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().expect("nonzero"), q - 2, q);
        while a.len() >= b.len() {
            let factor = mul_mod(*a.last().expect("nonzero"), inv, q);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + q - mul_mod(factor, c, q)) % q;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}
