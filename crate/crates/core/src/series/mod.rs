//! Truncated generating series over singularity-type variables.
//!
//! A series is a finite sum of terms `c_α x_α`, where `α` is a multiset of
//! labels and `c_α` a [`ChernPolynomial`]. Each label carries a positive
//! weight (its codimension) and terms whose total weight exceeds the
//! truncation are dropped.

mod chern;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chern::{ChernExponent, ChernPolynomial, ChernVector, VARIABLES};

pub const DEFAULT_TRUNCATION: u32 = 10;
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series have different variables or truncation")]
    Mismatch,
    #[error("unknown variable '{0}'")]
    UnknownLabel(String),
    #[error("variable '{0}' must have positive weight")]
    ZeroWeight(String),
    #[error("{parts} has weight {weight} beyond truncation {truncation}")]
    OutOfTruncation { parts: String, weight: u32, truncation: u32 },
    #[error("exp needs a zero constant term, got {0}")]
    NonzeroConstant(String),
    #[error("log needs constant term 1, got {0}")]
    ConstantNotOne(String),
    #[error("entry {parts} is not linear: {poly}")]
    NonLinear { parts: String, poly: String },
    #[error("missing entry {0}")]
    MissingEntry(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A multiset of labels, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Parts(Vec<String>);

impl Parts {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Self {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        v.sort();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `count` copies of one label.
    pub fn repeated(label: &str, count: usize) -> Self {
        Self(vec![label.to_string(); count])
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Parts) -> Parts {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Parts(v)
    }

    pub fn multiplicities(&self) -> BTreeMap<&str, usize> {
        let mut m = BTreeMap::new();
        for l in &self.0 {
            *m.entry(l.as_str()).or_insert(0) += 1;
        }
        m
    }

    /// Product of factorials of the label multiplicities.
    pub fn aut(&self) -> BigInt {
        self.multiplicities().values().map(|&m| factorial(m)).product()
    }

    /// All distinct nonempty sub-multisets.
    pub fn sub_multisets(&self) -> Vec<Parts> {
        let m: Vec<(&str, usize)> = self.multiplicities().into_iter().collect();
        let mut out = vec![Parts::empty()];
        for (label, count) in m {
            let mut next = Vec::new();
            for base in &out {
                for c in 0..=count {
                    let mut v = base.0.clone();
                    v.extend(std::iter::repeat_n(label.to_string(), c));
                    next.push(Parts::new(v));
                }
            }
            out = next;
        }
        out.retain(|p| !p.is_empty());
        out.sort();
        out
    }
}

impl From<Vec<String>> for Parts {
    fn from(v: Vec<String>) -> Self {
        Parts::new(v)
    }
}

impl From<Parts> for Vec<String> {
    fn from(p: Parts) -> Self {
        p.0
    }
}

impl fmt::Display for Parts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("{}")
        } else {
            f.write_str(&self.0.join(","))
        }
    }
}

impl std::str::FromStr for Parts {
    type Err = SeriesError;

    /// Comma-separated labels; `A1x3` is shorthand for `A1,A1,A1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut labels = Vec::new();
        for raw in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match raw.rsplit_once('x').and_then(|(l, n)| n.parse::<usize>().ok().map(|n| (l, n))) {
                Some((label, n)) if !label.is_empty() => labels.extend(std::iter::repeat_n(label.to_string(), n)),
                _ => labels.push(raw.to_string()),
            }
        }
        Ok(Parts::new(labels))
    }
}

/// Serializes any displayable value as a JSON string, e.g. rationals as `"p/q"`.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// A truncated series with exact polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    weights: BTreeMap<String, u32>,
    truncation: u32,
    terms: BTreeMap<Parts, ChernPolynomial>,
}

impl TruncatedSeries {
    pub fn zero(weights: BTreeMap<String, u32>, truncation: u32) -> Result<Self, SeriesError> {
        if let Some((label, _)) = weights.iter().find(|(_, w)| **w == 0) {
            return Err(SeriesError::ZeroWeight(label.clone()));
        }
        Ok(Self { weights, truncation, terms: BTreeMap::new() })
    }

    pub fn one(weights: BTreeMap<String, u32>, truncation: u32) -> Result<Self, SeriesError> {
        let mut s = Self::zero(weights, truncation)?;
        s.terms.insert(Parts::empty(), ChernPolynomial::one());
        Ok(s)
    }

    /// Series in a single variable of weight 1, i.e. a power series in `q`.
    pub fn univariate(label: &str, truncation: u32) -> Self {
        Self::zero(BTreeMap::from([(label.to_string(), 1)]), truncation).expect("weight 1 is positive")
    }

    pub fn weights(&self) -> &BTreeMap<String, u32> {
        &self.weights
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Parts, &ChernPolynomial)> {
        self.terms.iter()
    }

    pub fn weight(&self, parts: &Parts) -> Result<u32, SeriesError> {
        parts
            .labels()
            .iter()
            .map(|l| self.weights.get(l).copied().ok_or_else(|| SeriesError::UnknownLabel(l.clone())))
            .sum()
    }

    fn check_in_range(&self, parts: &Parts) -> Result<(), SeriesError> {
        let weight = self.weight(parts)?;
        if weight > self.truncation {
            return Err(SeriesError::OutOfTruncation { parts: parts.to_string(), weight, truncation: self.truncation });
        }
        Ok(())
    }

    pub fn set(&mut self, parts: Parts, value: ChernPolynomial) -> Result<(), SeriesError> {
        self.check_in_range(&parts)?;
        if value.is_zero() {
            self.terms.remove(&parts);
        } else {
            self.terms.insert(parts, value);
        }
        Ok(())
    }

    /// Coefficient of `x_parts`; zero when absent but within truncation.
    pub fn coefficient(&self, parts: &Parts) -> Result<ChernPolynomial, SeriesError> {
        self.check_in_range(parts)?;
        Ok(self.terms.get(parts).cloned().unwrap_or_default())
    }

    pub fn constant_term(&self) -> ChernPolynomial {
        self.terms.get(&Parts::empty()).cloned().unwrap_or_default()
    }

    fn compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.weights == other.weights && self.truncation == other.truncation {
            Ok(())
        } else {
            Err(SeriesError::Mismatch)
        }
    }

    fn empty_like(&self) -> Self {
        Self { weights: self.weights.clone(), truncation: self.truncation, terms: BTreeMap::new() }
    }

    fn accumulate(&mut self, parts: Parts, value: &ChernPolynomial) {
        let sum = match self.terms.get(&parts) {
            Some(old) => old + value,
            None => value.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&parts);
        } else {
            self.terms.insert(parts, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.accumulate(p.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.empty_like();
        for (p, v) in &self.terms {
            out.accumulate(p.clone(), &v.scale(c));
        }
        out
    }

    fn weighted_terms(&self) -> Vec<(u32, &Parts, &ChernPolynomial)> {
        self.terms.iter().map(|(p, c)| (self.weight(p).expect("stored labels are known"), p, c)).collect()
    }

    /// Product with multiset-union of indices, truncated by weight.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.compatible(other)?;
        let (left, right) = (self.weighted_terms(), other.weighted_terms());
        let mut out = self.empty_like();
        for (wa, pa, ca) in &left {
            for (wb, pb, cb) in &right {
                if wa + wb <= self.truncation {
                    out.accumulate(pa.union(pb), &(*ca * *cb));
                }
            }
        }
        Ok(out)
    }

    /// `sum_m S^m / m!`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(SeriesError::NonzeroConstant(c.to_string()));
        }
        let mut result = Self::one(self.weights.clone(), self.truncation)?;
        let mut power = result.clone();
        for m in 1..=self.truncation {
            power = power.mul(self)?.scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
            if power.terms.is_empty() {
                break;
            }
            result = result.add(&power)?;
        }
        Ok(result)
    }

    /// `sum_m (-1)^(m+1) (T - 1)^m / m`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let c = self.constant_term();
        if c != ChernPolynomial::one() {
            return Err(SeriesError::ConstantNotOne(c.to_string()));
        }
        let mut u = self.clone();
        u.terms.remove(&Parts::empty());
        let mut result = self.empty_like();
        let mut power = Self::one(self.weights.clone(), self.truncation)?;
        for m in 1..=self.truncation {
            power = power.mul(&u)?;
            if power.terms.is_empty() {
                break;
            }
            let sign = if m % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&BigRational::new(BigInt::from(sign), BigInt::from(m))))?;
        }
        Ok(result)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            format: "curvecount-series".into(),
            version: FORMAT_VERSION,
            truncation: self.truncation,
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(p, c)| Entry { parts: p.clone(), poly: c.clone() }).collect(),
        }
    }

    pub fn from_json(json: SeriesJson) -> Result<Self, SeriesError> {
        let mut s = Self::zero(json.weights, json.truncation)?;
        for e in json.terms {
            s.set(e.parts, e.poly)?;
        }
        Ok(s)
    }
}

/// One `(multiset, polynomial)` record of the JSON text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub parts: Parts,
    pub poly: ChernPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub format: String,
    pub version: u32,
    pub truncation: u32,
    pub weights: BTreeMap<String, u32>,
    pub terms: Vec<Entry>,
}

/// Table of `a_α` values: `#Aut(α)` times the coefficient of `x_α` in `log T`.
///
/// The JSON form is an object with an `a_table` array; other keys are
/// ignored, so a serialized fit result can be read back as a table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATable {
    pub a_table: Vec<Entry>,
}

impl ATable {
    pub fn from_map(map: &BTreeMap<Parts, ChernPolynomial>) -> Self {
        Self { a_table: map.iter().map(|(p, c)| Entry { parts: p.clone(), poly: c.clone() }).collect() }
    }

    pub fn to_map(&self) -> BTreeMap<Parts, ChernPolynomial> {
        self.a_table.iter().map(|e| (e.parts.clone(), e.poly.clone())).collect()
    }
}

/// `exp(sum_α a_α x_α / #Aut(α))`, truncated.
pub fn assemble_t(
    a_table: &BTreeMap<Parts, ChernPolynomial>,
    weights: &BTreeMap<String, u32>,
    truncation: u32,
) -> Result<TruncatedSeries, SeriesError> {
    let mut log = TruncatedSeries::zero(weights.clone(), truncation)?;
    for (parts, a) in a_table {
        if !a.is_linear() {
            return Err(SeriesError::NonLinear { parts: parts.to_string(), poly: a.to_string() });
        }
        if parts.is_empty() && !a.is_zero() {
            return Err(SeriesError::NonzeroConstant(a.to_string()));
        }
        if log.weight(parts)? > truncation {
            continue;
        }
        let scaled = a.scale(&BigRational::new(BigInt::one(), parts.aut()));
        log.set(parts.clone(), scaled)?;
    }
    log.exp()
}

/// The universal polynomial `T_α`: the coefficient of `x_α` in `T`.
pub fn extract_universal(t: &TruncatedSeries, parts: &Parts) -> Result<ChernPolynomial, SeriesError> {
    t.coefficient(parts)
}

/// Predicted count for `parts` at a Chern vector from a table of `a` values.
///
/// Every nonempty sub-multiset of `parts` must have a table entry, since each
/// one contributes to the exponential expansion.
pub fn assemble_from_table(
    a_table: &BTreeMap<Parts, ChernPolynomial>,
    chern: &ChernVector,
    parts: &Parts,
) -> Result<BigRational, SeriesError> {
    for sub in parts.sub_multisets() {
        if !a_table.contains_key(&sub) {
            return Err(SeriesError::MissingEntry(sub.to_string()));
        }
    }
    let weights: BTreeMap<String, u32> = parts.labels().iter().map(|l| (l.clone(), 1)).collect();
    let relevant: BTreeMap<Parts, ChernPolynomial> =
        parts.sub_multisets().into_iter().map(|p| (p.clone(), a_table[&p].clone())).collect();
    let t = assemble_t(&relevant, &weights, parts.len() as u32)?;
    Ok(extract_universal(&t, parts)?.eval(chern))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ChernPolynomial {
        s.parse().unwrap()
    }

    fn parts(s: &str) -> Parts {
        s.parse().unwrap()
    }

    fn weights(pairs: &[(&str, u32)]) -> BTreeMap<String, u32> {
        pairs.iter().map(|(l, w)| (l.to_string(), *w)).collect()
    }

    fn series(w: &[(&str, u32)], c: u32, terms: &[(&str, &str)]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(weights(w), c).unwrap();
        for (k, v) in terms {
            s.set(parts(k), p(v)).unwrap();
        }
        s
    }

    #[test]
    fn binomial_square() {
        let a = series(&[("A1", 1)], 4, &[("", "1"), ("A1", "1")]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, series(&[("A1", 1)], 4, &[("", "1"), ("A1", "2"), ("A1,A1", "1")]));
        let one = TruncatedSeries::one(weights(&[("A1", 1)]), 4).unwrap();
        assert_eq!(sq.mul(&one).unwrap(), sq);
    }

    #[test]
    fn distinct_variables() {
        let w = [("A1", 1), ("A2", 2)];
        let a = series(&w, 5, &[("", "1"), ("A1", "x")]);
        let b = series(&w, 5, &[("", "1"), ("A2", "y")]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.coefficient(&parts("A1,A2")).unwrap(), p("x*y"));
        assert_eq!(ab.coefficient(&parts("A2")).unwrap(), p("y"));
        assert_eq!(ab.terms().count(), 4);
    }

    #[test]
    fn truncation_drops_heavy_terms() {
        let a = series(&[("A1", 1), ("A2", 2)], 2, &[("A1", "1"), ("A2", "1")]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.terms().count(), 1);
        assert!(matches!(sq.coefficient(&parts("A1,A2")), Err(SeriesError::OutOfTruncation { weight: 3, .. })));
        assert!(matches!(a.coefficient(&parts("E6")), Err(SeriesError::UnknownLabel(_))));
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = series(&[("A1", 1)], 2, &[]);
        let b = series(&[("A1", 1)], 3, &[]);
        assert_eq!(a.mul(&b), Err(SeriesError::Mismatch));
        let c = series(&[("A2", 1)], 2, &[]);
        assert_eq!(a.add(&c), Err(SeriesError::Mismatch));
    }

    #[test]
    fn exp_log_guards() {
        let one = TruncatedSeries::one(weights(&[("A1", 1)]), 3).unwrap();
        assert!(one.log().unwrap().terms().next().is_none());
        assert!(matches!(one.exp(), Err(SeriesError::NonzeroConstant(_))));
        let zero = TruncatedSeries::zero(weights(&[("A1", 1)]), 3).unwrap();
        assert!(matches!(zero.log(), Err(SeriesError::ConstantNotOne(_))));
        assert_eq!(zero.exp().unwrap(), one);
        assert!(matches!(TruncatedSeries::zero(weights(&[("A1", 0)]), 3), Err(SeriesError::ZeroWeight(_))));
    }

    #[test]
    fn log_second_coefficient() {
        // log(1 + d1 q + d2 q^2) = d1 q + (d2 - d1^2/2) q^2 + ...
        let t = series(&[("A1", 1)], 3, &[("", "1"), ("A1", "3x + 2y + t"), ("A1,A1", "x*z - 7")]);
        let l = t.log().unwrap();
        let d1 = p("3x + 2y + t");
        let expected = &p("x*z - 7") - &(&d1 * &d1).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(l.coefficient(&parts("A1,A1")).unwrap(), expected);
        assert_eq!(l.exp().unwrap(), t);
    }

    #[test]
    fn assemble_single_node_entry() {
        let table = BTreeMap::from([(parts("A1"), p("3x + 2y + t"))]);
        let t = assemble_t(&table, &weights(&[("A1", 1)]), 2).unwrap();
        let a = p("3x + 2y + t");
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(extract_universal(&t, &parts("A1,A1")).unwrap(), (&a * &a).scale(&half));
        assert_eq!(extract_universal(&t, &parts("A1")).unwrap(), a);
        assert_eq!(extract_universal(&t, &Parts::empty()).unwrap(), ChernPolynomial::one());
        let t2 = extract_universal(&t, &parts("A1,A1")).unwrap();
        assert_eq!(t2.degree(), Some(2));
        assert_eq!(t2.coefficient([2, 0, 0, 0]), BigRational::new(9.into(), 2.into()));
    }

    #[test]
    fn assemble_empty_and_cross_term() {
        let w = weights(&[("A1", 1), ("A2", 2)]);
        let t = assemble_t(&BTreeMap::new(), &w, 4).unwrap();
        assert_eq!(t, TruncatedSeries::one(w.clone(), 4).unwrap());
        let table = BTreeMap::from([(parts("A1"), p("x + 1")), (parts("A2"), p("y - 2"))]);
        let t = assemble_t(&table, &w, 4).unwrap();
        assert_eq!(t.coefficient(&parts("A1,A2")).unwrap(), &p("x + 1") * &p("y - 2"));
    }

    #[test]
    fn assemble_divides_by_automorphisms() {
        // a_{A1,A1} enters log T with weight 1/2.
        let table = BTreeMap::from([(parts("A1"), p("x")), (parts("A1,A1"), p("y"))]);
        let t = assemble_t(&table, &weights(&[("A1", 1)]), 2).unwrap();
        let log = t.log().unwrap();
        assert_eq!(log.coefficient(&parts("A1,A1")).unwrap(), p("1/2*y"));
        assert_eq!(t.coefficient(&parts("A1,A1")).unwrap(), p("1/2*x^2 + 1/2*y"));
    }

    #[test]
    fn assemble_rejects_nonlinear() {
        let table = BTreeMap::from([(parts("A1"), p("x^2"))]);
        assert!(matches!(assemble_t(&table, &weights(&[("A1", 1)]), 2), Err(SeriesError::NonLinear { .. })));
    }

    #[test]
    fn table_evaluation() {
        let table = BTreeMap::from([(parts("A1"), p("3x + 2y + t"))]);
        let err = assemble_from_table(&table, &ChernVector::plane(4), &parts("A1,A1")).unwrap_err();
        assert_eq!(err.to_string(), "missing entry A1,A1");
        let v = assemble_from_table(&table, &ChernVector::plane(4), &parts("A1")).unwrap();
        assert_eq!(v, BigRational::from_integer(27.into()));
    }

    #[test]
    fn parts_helpers() {
        assert_eq!(parts("A2, A1,A1"), Parts::new(["A1", "A1", "A2"]));
        assert_eq!(parts("A1x3"), Parts::repeated("A1", 3));
        assert_eq!(parts("A1,A1,A2").aut(), BigInt::from(2));
        assert_eq!(parts("A1x3").aut(), BigInt::from(6));
        let subs: Vec<String> = parts("A1,A1,A2").sub_multisets().iter().map(|p| p.to_string()).collect();
        assert_eq!(subs, ["A1", "A1,A1", "A1,A1,A2", "A1,A2", "A2"]);
        assert_eq!(Parts::empty().to_string(), "{}");
    }

    #[test]
    fn json_roundtrip() {
        let t = series(&[("A1", 1), ("A2", 2)], 3, &[("", "1"), ("A1,A2", "1/3*x - t")]);
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert!(text.contains(r#""parts":["A1","A2"]"#));
        assert!(text.contains(r#""1/3""#));
        let back = TruncatedSeries::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn a_table_ignores_extra_keys() {
        let text = r#"{"format":"x","a_table":[{"parts":["A1"],"poly":"3x+2y+t"}]}"#;
        let table: ATable = serde_json::from_str(text).unwrap();
        assert_eq!(table.to_map()[&parts("A1")], p("3x+2y+t"));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_series() -> impl Strategy<Value = TruncatedSeries> {
            proptest::collection::vec((0usize..3, 1usize..3, -5i64..=5), 0..5).prop_map(|terms| {
                let mut s = TruncatedSeries::zero(weights(&[("A1", 1), ("A2", 2)]), 5).unwrap();
                for (shape, count, c) in terms {
                    let labels: Vec<&str> = match shape {
                        0 => vec!["A1"; count],
                        1 => vec!["A2"; count],
                        _ => vec!["A1", "A2"],
                    };
                    let value = ChernPolynomial::variable(count % 4).scale(&BigRational::from_integer(c.into()));
                    s.set(Parts::new(labels), value).unwrap();
                }
                s
            })
        }

        proptest! {
            #[test]
            fn log_turns_products_into_sums(a in small_series(), b in small_series()) {
                let one = TruncatedSeries::one(a.weights().clone(), 5).unwrap();
                let (a, b) = (a.add(&one).unwrap(), b.add(&one).unwrap());
                let lhs = a.mul(&b).unwrap().log().unwrap();
                let rhs = a.log().unwrap().add(&b.log().unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn json_roundtrip(s in small_series()) {
                let text = serde_json::to_string(&s.to_json()).unwrap();
                let back = TruncatedSeries::from_json(serde_json::from_str(&text).unwrap()).unwrap();
                prop_assert_eq!(back, s);
            }

            #[test]
            fn sub_multiset_count(n1 in 0usize..4, n2 in 0usize..4) {
                let mut labels = vec!["A1"; n1];
                labels.extend(vec!["A2"; n2]);
                // nonempty sub-multisets: (n1 + 1)(n2 + 1) - 1
                prop_assert_eq!(Parts::new(labels).sub_multisets().len(), (n1 + 1) * (n2 + 1) - 1);
            }
        }
    }
}
