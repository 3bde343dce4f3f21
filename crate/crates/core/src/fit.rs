//! Fitting universal node polynomials to Severi degrees.
//!
//! For each order `r`, the coefficient of `q^r` in `log sum_δ N(L, δ) q^δ`
//! is assumed linear in the Chern vector `(L^2, L.K, c1^2, c2)`. Plane
//! rows only see `(c1^2, c2) = (9, 3)` and quadric rows `(8, 4)`, so both
//! surfaces are needed to pin down all four coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::solve_exact;
use crate::series::{
    assemble_t, extract_universal, factorial, serialize_display, ChernPolynomial, ChernVector, Entry, Parts,
    SeriesError, TruncatedSeries, FORMAT_VERSION,
};
use crate::severi::{Degree, SeveriEngine, SeveriError};

/// Label of the node variable `q`.
pub const NODE: &str = "A1";
pub const DEFAULT_MAX_R: u32 = 4;
pub const MAX_R_LIMIT: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error(transparent)]
    Severi(#[from] SeveriError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("order {r}: rank {rank} from {equations} rows; need 4 independent rows")]
    RankDeficient { r: u32, rank: usize, equations: usize },
    #[error("order {r}: {equations} rows admit no common linear solution")]
    Inconsistent { r: u32, equations: usize },
    #[error("max r {r} exceeds the limit {limit}")]
    OrderTooHigh { r: u32, limit: u32 },
    #[error("order {r} was not fitted (max r is {r_max})")]
    NotFitted { r: u32, r_max: u32 },
    #[error("order {r}: no degree in range agrees with the fitted polynomial")]
    NoAgreement { r: u32 },
}

/// Which data rows take part at order `r`: plane degrees `d >= r + plane_offset`
/// and bidegrees with `a, b >= r + quadric_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RowFilter {
    pub plane_offset: u32,
    pub quadric_offset: u32,
}

impl Default for RowFilter {
    fn default() -> Self {
        Self { plane_offset: 2, quadric_offset: 1 }
    }
}

impl RowFilter {
    pub fn admits(&self, degree: Degree, r: u32) -> bool {
        match degree {
            Degree::Plane(d) => d >= r + self.plane_offset,
            Degree::Quadric(a, b) => a.min(b) >= r + self.quadric_offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitProblem {
    pub r_max: u32,
    pub plane_degrees: Vec<u32>,
    pub quadric_bidegrees: Vec<(u32, u32)>,
    pub filter: RowFilter,
}

impl FitProblem {
    pub fn new(r_max: u32, plane_degrees: Vec<u32>, quadric_bidegrees: Vec<(u32, u32)>) -> Self {
        Self { r_max, plane_degrees, quadric_bidegrees, filter: RowFilter::default() }
    }

    pub fn with_filter(mut self, filter: RowFilter) -> Self {
        self.filter = filter;
        self
    }

    fn classes(&self) -> Vec<Degree> {
        let plane = self.plane_degrees.iter().map(|&d| Degree::Plane(d));
        plane.chain(self.quadric_bidegrees.iter().map(|&(a, b)| Degree::Quadric(a, b))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub r: u32,
    pub rows: Vec<String>,
    pub equations: usize,
    pub rank: usize,
    pub overdetermined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitResult {
    pub r_max: u32,
    /// Coefficient of `q^r` in `log T`, for `r >= 1`.
    pub a: BTreeMap<u32, ChernPolynomial>,
    /// Coefficient of `q^r` in `T`, for `r >= 0`.
    pub t: BTreeMap<u32, ChernPolynomial>,
    pub residual_consistent: bool,
    pub orders: Vec<OrderReport>,
    pub filter: RowFilter,
}

/// Node counts `N(L, δ)` for `δ = 0..=r_max`, with inadmissible node numbers as 0.
pub fn node_counts(engine: &SeveriEngine, degree: Degree, r_max: u32) -> Result<Vec<BigInt>, SeveriError> {
    (0..=r_max)
        .map(|delta| match engine.severi(degree, delta) {
            Err(SeveriError::Inadmissible { .. }) => Ok(BigInt::zero()),
            other => other,
        })
        .collect()
}

/// Coefficients of `log sum_δ counts[δ] q^δ` up to `q^(len - 1)`.
pub fn log_coefficients(counts: &[BigInt]) -> Result<Vec<BigRational>, SeriesError> {
    let r_max = counts.len().saturating_sub(1) as u32;
    let mut s = TruncatedSeries::univariate(NODE, r_max);
    for (r, c) in counts.iter().enumerate() {
        s.set(Parts::repeated(NODE, r), ChernPolynomial::constant(BigRational::from_integer(c.clone())))?;
    }
    let log = s.log()?;
    (0..=r_max as usize).map(|r| Ok(log.coefficient(&Parts::repeated(NODE, r))?.constant_term())).collect()
}

fn chern_row(v: &ChernVector) -> Vec<BigRational> {
    v.as_array().iter().map(|&c| BigRational::from_integer(c.into())).collect()
}

/// Fits `a_1..a_{r_max}` order by order and assembles `T_0..T_{r_max}`.
pub fn fit_nodes(engine: &SeveriEngine, problem: &FitProblem) -> Result<FitResult, FitError> {
    if problem.r_max > MAX_R_LIMIT {
        return Err(FitError::OrderTooHigh { r: problem.r_max, limit: MAX_R_LIMIT });
    }
    let r_max = problem.r_max;
    let classes = problem.classes();
    let admitted: Vec<Degree> = classes.into_iter().filter(|c| problem.filter.admits(*c, 1.min(r_max))).collect();
    let logs: Vec<(Degree, Vec<BigRational>)> = map_classes(&admitted, |c| -> Result<_, FitError> {
        Ok((c, log_coefficients(&node_counts(engine, c, r_max)?)?))
    })
    .into_iter()
    .collect::<Result<_, _>>()?;

    let mut a = BTreeMap::new();
    let mut orders = Vec::new();
    let mut residual_consistent = true;
    for r in 1..=r_max {
        let rows: Vec<&(Degree, Vec<BigRational>)> =
            logs.iter().filter(|(c, _)| problem.filter.admits(*c, r)).collect();
        let matrix: Vec<Vec<BigRational>> = rows.iter().map(|(c, _)| chern_row(&c.chern())).collect();
        let rhs: Vec<BigRational> = rows.iter().map(|(_, l)| l[r as usize].clone()).collect();
        let solve = solve_exact(&matrix, &rhs);
        let equations = rows.len();
        if !solve.full_rank() {
            return Err(FitError::RankDeficient { r, rank: solve.rank, equations });
        }
        let Some(b) = solve.solution.clone().filter(|_| solve.consistent()) else {
            return Err(FitError::Inconsistent { r, equations });
        };
        let overdetermined = equations > 4;
        residual_consistent &= overdetermined;
        let [b1, b2, b3, b4]: [BigRational; 4] = b.try_into().expect("four unknowns");
        a.insert(r, ChernPolynomial::linear(BigRational::zero(), [b1, b2, b3, b4]));
        orders.push(OrderReport {
            r,
            rows: rows.iter().map(|(c, _)| format!("{} {c}", c.surface_name())).collect(),
            equations,
            rank: solve.rank,
            overdetermined,
        });
    }
    let t = universal_polynomials(&a, r_max)?;
    Ok(FitResult { r_max, a, t, residual_consistent, orders, filter: problem.filter })
}

/// `a_table` entries for the node variable: `r! a_r` at the multiset of `r` nodes.
pub fn node_a_table(a: &BTreeMap<u32, ChernPolynomial>) -> BTreeMap<Parts, ChernPolynomial> {
    a.iter()
        .map(|(&r, p)| (Parts::repeated(NODE, r as usize), p.scale(&BigRational::from_integer(factorial(r as usize)))))
        .collect()
}

fn universal_polynomials(
    a: &BTreeMap<u32, ChernPolynomial>,
    r_max: u32,
) -> Result<BTreeMap<u32, ChernPolynomial>, SeriesError> {
    let weights = BTreeMap::from([(NODE.to_string(), 1)]);
    let series = assemble_t(&node_a_table(a), &weights, r_max)?;
    (0..=r_max).map(|r| Ok((r, extract_universal(&series, &Parts::repeated(NODE, r as usize))?))).collect()
}

impl FitResult {
    pub fn a_table(&self) -> BTreeMap<Parts, ChernPolynomial> {
        node_a_table(&self.a)
    }

    /// `T_r` at a Chern vector.
    pub fn evaluate_counts(&self, chern: &ChernVector, r: u32) -> Result<BigRational, FitError> {
        self.t.get(&r).map(|p| p.eval(chern)).ok_or(FitError::NotFitted { r, r_max: self.r_max })
    }

    pub fn to_json(&self) -> FitJson {
        FitJson {
            format: "curvecount-fit".into(),
            version: FORMAT_VERSION,
            r_max: self.r_max,
            residual_consistent: self.residual_consistent,
            filter: self.filter,
            orders: self.orders.clone(),
            a: self.a.iter().map(|(&r, p)| OrderPoly { r, text: p.to_string(), poly: p.clone() }).collect(),
            t: self.t.iter().map(|(&r, p)| OrderPoly { r, text: p.to_string(), poly: p.clone() }).collect(),
            a_table: self.a_table().into_iter().map(|(parts, poly)| Entry { parts, poly }).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderPoly {
    pub r: u32,
    pub text: String,
    pub poly: ChernPolynomial,
}

/// Serialized fit; its `a_table` field can be read back as a
/// [`crate::series::ATable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitJson {
    pub format: String,
    pub version: u32,
    pub r_max: u32,
    pub residual_consistent: bool,
    pub filter: RowFilter,
    pub orders: Vec<OrderReport>,
    pub a: Vec<OrderPoly>,
    #[serde(rename = "T")]
    pub t: Vec<OrderPoly>,
    pub a_table: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub degree: Degree,
    #[serde(serialize_with = "serialize_display")]
    pub severi: BigInt,
    #[serde(serialize_with = "serialize_display")]
    pub predicted: BigRational,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub r: u32,
    /// Smallest degree from which every scanned class agrees.
    pub threshold: u32,
    pub rows: Vec<ScanRow>,
}

fn scan_rows(engine: &SeveriEngine, fit: &FitResult, r: u32, classes: &[Degree]) -> Result<Vec<ScanRow>, FitError> {
    let t_r = fit.t.get(&r).ok_or(FitError::NotFitted { r, r_max: fit.r_max })?;
    map_classes(classes, |degree| {
        let severi = match engine.severi(degree, r) {
            Err(SeveriError::Inadmissible { .. }) => BigInt::zero(),
            other => other?,
        };
        let predicted = t_r.eval(&degree.chern());
        let agrees = predicted == BigRational::from_integer(severi.clone());
        Ok(ScanRow { degree, severi, predicted, agrees })
    })
    .into_iter()
    .collect()
}

/// Applies `f` to every class, in parallel when the `parallel` feature is on.
/// Results keep the input order.
#[cfg(feature = "parallel")]
fn map_classes<R: Send>(classes: &[Degree], f: impl Fn(Degree) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    classes.par_iter().map(|&c| f(c)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_classes<R>(classes: &[Degree], f: impl Fn(Degree) -> R) -> Vec<R> {
    classes.iter().map(|&c| f(c)).collect()
}

fn smallest_side(c: Degree) -> u32 {
    match c {
        Degree::Plane(d) => d,
        Degree::Quadric(a, b) => a.min(b),
    }
}

fn threshold_of(rows: &[ScanRow], size: impl Fn(Degree) -> u32, r: u32) -> Result<u32, FitError> {
    let mut sizes: Vec<u32> = rows.iter().map(|row| size(row.degree)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .find(|&m| rows.iter().filter(|row| size(row.degree) >= m).all(|row| row.agrees))
        .ok_or(FitError::NoAgreement { r })
}

/// Smallest `d` in range with `N(d', r) = T_r(d')` for every `d' >= d` in range.
pub fn threshold_scan(
    engine: &SeveriEngine,
    fit: &FitResult,
    r: u32,
    degrees: impl IntoIterator<Item = u32>,
) -> Result<ScanReport, FitError> {
    let classes: Vec<Degree> = degrees.into_iter().map(Degree::Plane).collect();
    let rows = scan_rows(engine, fit, r, &classes)?;
    let threshold = threshold_of(&rows, smallest_side, r)?;
    Ok(ScanReport { r, threshold, rows })
}

/// Quadric version: the threshold bounds `min(a, b)` over the square `range x range`.
pub fn threshold_scan_quadric(
    engine: &SeveriEngine,
    fit: &FitResult,
    r: u32,
    range: std::ops::RangeInclusive<u32>,
) -> Result<ScanReport, FitError> {
    let classes: Vec<Degree> = range.clone().flat_map(|a| range.clone().map(move |b| Degree::Quadric(a, b))).collect();
    let rows = scan_rows(engine, fit, r, &classes)?;
    let threshold = threshold_of(&rows, smallest_side, r)?;
    Ok(ScanReport { r, threshold, rows })
}

/// Coefficient of `x^r`.
pub fn leading_x_coefficient(p: &ChernPolynomial, r: u32) -> BigRational {
    p.coefficient([r, 0, 0, 0])
}

/// `3^r / r!`, the top coefficient forced by `a_1 = 3x + ...`.
pub fn expected_leading(r: u32) -> BigRational {
    BigRational::new(num_traits::pow(BigInt::from(3), r as usize), factorial(r as usize))
}
