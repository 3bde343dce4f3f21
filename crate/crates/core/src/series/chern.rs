//! Polynomials in the four Chern coordinates `(x, y, z, t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SeriesError;

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 't'];

/// `(L^2, L.K, c1^2, c2)` of a surface with a line bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernVector {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub t: i64,
}

impl ChernVector {
    pub const fn new(x: i64, y: i64, z: i64, t: i64) -> Self {
        Self { x, y, z, t }
    }

    /// `O(d)` on the projective plane.
    pub const fn plane(d: i64) -> Self {
        Self::new(d * d, -3 * d, 9, 3)
    }

    /// `O(a, b)` on `P1 x P1`.
    pub const fn quadric(a: i64, b: i64) -> Self {
        Self::new(2 * a * b, -2 * a - 2 * b, 8, 4)
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.x, self.y, self.z, self.t]
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x, self.y, self.z, self.t)
    }
}

impl FromStr for ChernVector {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match parsed.as_deref() {
            Ok(&[x, y, z, t]) => Ok(Self::new(x, y, z, t)),
            _ => Err(SeriesError::Parse(format!("expected four comma-separated integers, got '{s}'"))),
        }
    }
}

pub type ChernExponent = [u32; 4];

/// Sparse polynomial with exact rational coefficients; zero coefficients
/// are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChernPolynomial {
    terms: BTreeMap<ChernExponent, BigRational>,
}

fn total(e: &ChernExponent) -> u32 {
    e.iter().sum()
}

impl ChernPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([([0; 4], c)])
    }

    /// `c0 + c[0] x + c[1] y + c[2] z + c[3] t`.
    pub fn linear(constant: BigRational, coefficients: [BigRational; 4]) -> Self {
        let mut terms = vec![([0; 4], constant)];
        for (i, c) in coefficients.into_iter().enumerate() {
            let mut e = [0; 4];
            e[i] = 1;
            terms.push((e, c));
        }
        Self::from_terms(terms)
    }

    pub fn variable(index: usize) -> Self {
        let mut e = [0; 4];
        e[index] = 1;
        Self::from_terms([(e, BigRational::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (ChernExponent, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: ChernExponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChernExponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: ChernExponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient([0; 4])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total).max()
    }

    pub fn is_linear(&self) -> bool {
        self.degree().is_none_or(|d| d <= 1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    pub fn eval(&self, v: &ChernVector) -> BigRational {
        let point = v.as_array();
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigInt::one();
            for (base, &exp) in point.iter().zip(e) {
                m *= num_traits::pow(BigInt::from(*base), exp as usize);
            }
            sum += c * BigRational::from_integer(m);
        }
        sum
    }
}

impl Add for &ChernPolynomial {
    type Output = ChernPolynomial;
    fn add(self, rhs: &ChernPolynomial) -> ChernPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ChernPolynomial {
    type Output = ChernPolynomial;
    fn sub(self, rhs: &ChernPolynomial) -> ChernPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &ChernPolynomial {
    type Output = ChernPolynomial;
    fn neg(self) -> ChernPolynomial {
        ChernPolynomial { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &ChernPolynomial {
    type Output = ChernPolynomial;
    fn mul(self, rhs: &ChernPolynomial) -> ChernPolynomial {
        let mut out = ChernPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ChernPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first, x before y before z before t
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| total(b).cmp(&total(a)).then(b.cmp(a)));
        for (n, (e, c)) in order.into_iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let monomial: Vec<String> = e
                .iter()
                .zip(VARIABLES)
                .filter(|(p, _)| **p > 0)
                .map(|(p, v)| if *p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&monomial.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for ChernPolynomial {
    type Err = SeriesError;

    /// Accepts sums of terms such as `3x + 2*y - 1/2*x^2*t + 4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: String| SeriesError::Parse(format!("{m} in polynomial '{s}'"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut poly = Self::zero();
        let chars: Vec<char> = compact.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigRational::one();
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let coefficient: BigRational = if start == i {
                BigRational::one()
            } else {
                let text: String = chars[start..i].iter().collect();
                text.parse().map_err(|_| err(format!("bad coefficient '{text}'")))?
            };
            let mut e = [0u32; 4];
            let mut seen_factor = start != i;
            loop {
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
                let Some(v) = chars.get(i).and_then(|c| VARIABLES.iter().position(|v| v == c)) else {
                    break;
                };
                i += 1;
                let mut power = 1u32;
                if chars.get(i) == Some(&'^') {
                    i += 1;
                    let from = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[from..i].iter().collect();
                    power = text.parse().map_err(|_| err(format!("bad exponent '{text}'")))?;
                }
                e[v] += power;
                seen_factor = true;
            }
            if !seen_factor {
                return Err(err(format!("unexpected character at position {i}")));
            }
            if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                return Err(err(format!("unexpected '{}'", chars[i])));
            }
            poly.add_term(e, sign * coefficient);
        }
        Ok(poly)
    }
}

impl Serialize for ChernPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ChernPolynomial {
    /// Either the array form `[[[1,0,0,0],"3"], ...]` or a string such as `"3x+2y+t"`.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Terms(Vec<(ChernExponent, String)>),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Terms(terms) => {
                let mut out = Vec::with_capacity(terms.len());
                for (e, c) in terms {
                    let c: BigRational =
                        c.parse().map_err(|_| serde::de::Error::custom(format!("bad rational '{c}'")))?;
                    out.push((e, c));
                }
                Ok(Self::from_terms(out))
            }
        }
    }
}
