use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GermError;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// A polynomial representative of a plane curve germ at the origin.
///
/// Terms are kept with nonzero coefficients only, and the constant term is
/// always zero: every germ lies in the maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GermPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl GermPoly {
    /// Builds a germ, dropping zero coefficients and merging duplicates.
    pub fn from_terms<I>(terms: I) -> Result<Self, GermError>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let poly = Self::collect(terms);
        if poly.terms.contains_key(&(0, 0)) {
            return Err(GermError::ConstantTerm);
        }
        Ok(poly)
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_int_terms(terms: &[((u32, u32), i64)]) -> Result<Self, GermError> {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))))
    }

    // Internal: may carry a constant term (partial derivatives, unit multiples).
    fn collect<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut map: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree of a term, `m(f)`. `None` for the zero germ.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn partial_x(&self) -> GermPoly {
        Self::collect(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * BigRational::from_integer(i.into()))),
        )
    }

    pub fn partial_y(&self) -> GermPoly {
        Self::collect(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * BigRational::from_integer(j.into()))),
        )
    }

    /// `x^a y^b * self`.
    pub fn shift(&self, a: u32, b: u32) -> GermPoly {
        Self { terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> GermPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    pub fn add(&self, other: &GermPoly) -> GermPoly {
        Self::collect(self.terms.iter().chain(other.terms.iter()).map(|(&e, c)| (e, c.clone())))
    }

    pub fn mul(&self, other: &GermPoly) -> GermPoly {
        Self::collect(
            self.terms
                .iter()
                .flat_map(|(&(i, j), c)| other.terms.iter().map(move |(&(k, l), d)| ((i + k, j + l), c * d))),
        )
    }

    fn pow(&self, n: u32) -> GermPoly {
        let mut acc = Self::collect([((0, 0), BigRational::one())]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The germ after the linear substitution `x -> a x + b y`, `y -> c x + d y`.
    pub fn linear_substitute(&self, a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> GermPoly {
        let new_x = Self::collect([((1, 0), a.clone()), ((0, 1), b.clone())]);
        let new_y = Self::collect([((1, 0), c.clone()), ((0, 1), d.clone())]);
        let mut out = Self::zero();
        for (&(i, j), coeff) in &self.terms {
            out = out.add(&new_x.pow(i).mul(&new_y.pow(j)).scale(coeff));
        }
        out
    }
}

fn write_coeff_monomial(f: &mut fmt::Formatter<'_>, c: &BigRational, (i, j): Exponent) -> fmt::Result {
    let mut vars = Vec::new();
    for (name, e) in [("x", i), ("y", j)] {
        match e {
            0 => {}
            1 => vars.push(name.to_string()),
            _ => vars.push(format!("{name}^{e}")),
        }
    }
    let mono = vars.join("*");
    if mono.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{c}*{mono}")
    }
}

impl fmt::Display for GermPoly {
    /// Terms in increasing total degree, then decreasing power of `x`; the
    /// output parses back to the same germ.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|((i, j), _)| (i + j, *j));
        for (n, (&e, c)) in ordered.into_iter().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_monomial(f, &c.abs(), e)?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> GermError {
        GermError::Syntax { position: self.pos, message: msg.into() }
    }

    fn integer(&mut self) -> Result<BigInt, GermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn exponent(&mut self) -> Result<u32, GermError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.error("exponent out of range"))
    }

    /// One signed term: a product of rational numbers and powers of x, y.
    fn term(&mut self, sign: BigRational) -> Result<(Exponent, BigRational), GermError> {
        let mut coeff = sign;
        let (mut i, mut j) = (0u32, 0u32);
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let num = self.integer()?;
                    let mut value = BigRational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(self.error("zero denominator"));
                        }
                        value /= BigRational::from_integer(den);
                    }
                    coeff *= value;
                }
                Some(b'x') => {
                    self.pos += 1;
                    i += self.exponent()?;
                }
                Some(b'y') => {
                    self.pos += 1;
                    j += self.exponent()?;
                }
                Some(c) if factors == 0 => {
                    return Err(self.error(format!("unexpected character '{}'", c as char)));
                }
                None if factors == 0 => return Err(self.error("expected a term")),
                _ => break,
            }
            factors += 1;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if !matches!(self.peek(), Some(b'0'..=b'9' | b'x' | b'y')) {
                    return Err(self.error("expected a factor after '*'"));
                }
            }
        }
        Ok(((i, j), coeff))
    }
}

impl FromStr for GermPoly {
    type Err = GermError;

    /// Parses expressions such as `y^2 - x^3`, `3/2*x*y^4 + x^5`, `2xy`.
    fn from_str(s: &str) -> Result<Self, GermError> {
        let mut lx = Lexer { src: s.as_bytes(), pos: 0 };
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match lx.peek() {
                None if first => return Err(lx.error("empty expression")),
                None => break,
                Some(b'+') => {
                    lx.pos += 1;
                    BigRational::one()
                }
                Some(b'-') => {
                    lx.pos += 1;
                    -BigRational::one()
                }
                Some(_) if first => BigRational::one(),
                Some(c) => return Err(lx.error(format!("expected '+' or '-', found '{}'", c as char))),
            };
            terms.push(lx.term(sign)?);
            first = false;
        }
        GermPoly::from_terms(terms)
    }
}
