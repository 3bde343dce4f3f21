use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

/// Contact profile with a fixed curve: entry `k - 1` counts points of
/// contact order `k`. Trailing zeros are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TangencyProfile(Vec<u32>);

impl TangencyProfile {
    pub fn new(mut counts: Vec<u32>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Self(counts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `n` points of simple contact.
    pub fn simple(n: u32) -> Self {
        Self::new(vec![n])
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Number of contact points of order `k` (1-based).
    pub fn get(&self, k: usize) -> u32 {
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of contact points.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Total intersection number with the fixed curve.
    pub fn intersection(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, c)| (i as u32 + 1) * c).sum()
    }

    pub fn max_order(&self) -> usize {
        self.0.len()
    }

    pub fn with_added(&self, k: usize, delta: i64) -> Self {
        let mut v = self.0.clone();
        if v.len() < k {
            v.resize(k, 0);
        }
        v[k - 1] = (v[k - 1] as i64 + delta).try_into().expect("profile entries stay nonnegative");
        Self::new(v)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((1..=n).map(|k| self.get(k) + other.get(k)).collect())
    }

    /// `prod_k binom(self_k, sub_k)`.
    pub fn binomial(&self, sub: &Self) -> BigInt {
        (1..=self.0.len()).map(|k| binomial(BigInt::from(self.get(k)), BigInt::from(sub.get(k)))).product()
    }

    /// `prod_k k^(self_k)`.
    pub fn order_power(&self) -> BigInt {
        self.0.iter().enumerate().map(|(i, &c)| num_traits::pow(BigInt::from(i + 1), c as usize)).product()
    }

    /// Every profile `γ <= self` componentwise.
    pub fn sub_profiles(&self) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=c).map(move |i| {
                        let mut p = prefix.clone();
                        p.push(i);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Self::new).collect()
    }

    /// Every profile with intersection number exactly `total`.
    pub fn with_intersection(total: u32) -> Vec<Self> {
        fn go(total: u32, max_part: u32, counts: &mut Vec<u32>, out: &mut Vec<TangencyProfile>) {
            if total == 0 {
                out.push(TangencyProfile::new(counts.clone()));
                return;
            }
            for k in (1..=max_part.min(total)).rev() {
                if counts.len() < k as usize {
                    counts.resize(k as usize, 0);
                }
                counts[k as usize - 1] += 1;
                go(total - k, k, counts, out);
                counts[k as usize - 1] -= 1;
            }
        }
        let mut out = Vec::new();
        go(total, total, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for TangencyProfile {
    /// Comma-separated counts; the empty profile prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TangencyProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad profile entry '{p}' in '{s}'")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_text() {
        let p = TangencyProfile::new(vec![2, 0, 1, 0, 0]);
        assert_eq!(p.counts(), &[2, 0, 1]);
        assert_eq!(p.to_string(), "2,0,1");
        assert_eq!("2,0,1,0".parse::<TangencyProfile>().unwrap(), p);
        assert_eq!(TangencyProfile::empty().to_string(), "0");
        assert_eq!("0".parse::<TangencyProfile>().unwrap(), TangencyProfile::empty());
        assert!("1,a".parse::<TangencyProfile>().is_err());
    }

    #[test]
    fn sizes() {
        let p = TangencyProfile::new(vec![2, 0, 1]);
        assert_eq!((p.size(), p.intersection()), (3, 5));
        assert_eq!(p.order_power(), BigInt::from(3));
        assert_eq!(p.with_added(3, -1), TangencyProfile::simple(2));
        assert_eq!(p.with_added(2, 1).counts(), &[2, 1, 1]);
    }

    #[test]
    fn enumeration() {
        // partitions of 5
        assert_eq!(TangencyProfile::with_intersection(5).len(), 7);
        assert_eq!(TangencyProfile::with_intersection(0), vec![TangencyProfile::empty()]);
        for p in TangencyProfile::with_intersection(6) {
            assert_eq!(p.intersection(), 6);
        }
        assert_eq!(TangencyProfile::new(vec![2, 1]).sub_profiles().len(), 6);
    }

    #[test]
    fn binomials() {
        let big = TangencyProfile::new(vec![3, 2]);
        let small = TangencyProfile::new(vec![1, 1]);
        assert_eq!(big.binomial(&small), BigInt::from(6));
        assert_eq!(big.binomial(&TangencyProfile::empty()), BigInt::from(1));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn text_roundtrip(counts in proptest::collection::vec(0u32..4, 0..5)) {
                let p = TangencyProfile::new(counts);
                prop_assert_eq!(p.to_string().parse::<TangencyProfile>().unwrap(), p);
            }

            #[test]
            fn profiles_with_intersection(total in 0u32..7) {
                for p in TangencyProfile::with_intersection(total) {
                    prop_assert_eq!(p.intersection(), total);
                }
            }
        }
    }
}
