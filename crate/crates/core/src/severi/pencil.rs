//! Counting singular members of a random pencil `F + λG` by elimination.
//!
//! A point is singular on some member exactly when the vectors
//! `(F, F_x, F_y)` and `(G, G_x, G_y)` are proportional there, so the
//! singular points are the common zeros of the three 2x2 minors. Their
//! x-coordinates are the roots of the gcd of two resultants in `y`; the
//! count is cross-checked against the y-projection and over several samples.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::upoly::UPoly;
use super::{Degree, SeveriError};
use crate::linalg::determinant;

pub const PENCIL_SAMPLES: usize = 3;
const MAX_ATTEMPTS: u32 = 12;
const COEFFICIENT_RANGE: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub degree: Degree,
    pub seed: u64,
    /// Number of singular members found by every accepted sample.
    pub count: usize,
    pub samples: Vec<usize>,
    /// Samples drawn, including rejected degenerate ones.
    pub attempts: u32,
}

/// Dense bivariate integer polynomial, `c[i][j]` the coefficient of `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BiPoly {
    c: Vec<Vec<BigInt>>,
}

impl BiPoly {
    fn zeros(dx: usize, dy: usize) -> Self {
        Self { c: vec![vec![BigInt::zero(); dy + 1]; dx + 1] }
    }

    fn dims(&self) -> (usize, usize) {
        (self.c.len() - 1, self.c[0].len() - 1)
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.c.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| (i, j, v)))
    }

    fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.terms().filter(|(_, _, v)| !v.is_zero())
    }

    fn degree_x(&self) -> usize {
        self.nonzero().map(|(i, _, _)| i).max().unwrap_or(0)
    }

    fn degree_y(&self) -> usize {
        self.nonzero().map(|(_, j, _)| j).max().unwrap_or(0)
    }

    fn total_degree(&self) -> usize {
        self.nonzero().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    fn mul(&self, other: &Self) -> Self {
        let (ax, ay) = self.dims();
        let (bx, by) = other.dims();
        let mut out = Self::zeros(ax + bx, ay + by);
        for (i, j, u) in self.nonzero() {
            for (k, l, v) in other.nonzero() {
                out.c[i + k][j + l] += u * v;
            }
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        let (ax, ay) = self.dims();
        let (bx, by) = other.dims();
        let mut out = Self::zeros(ax.max(bx), ay.max(by));
        for (i, j, v) in self.nonzero() {
            out.c[i][j] += v;
        }
        for (i, j, v) in other.nonzero() {
            out.c[i][j] -= v;
        }
        out
    }

    fn dx(&self) -> Self {
        let (ax, ay) = self.dims();
        let mut out = Self::zeros(ax.saturating_sub(1), ay);
        for (i, j, v) in self.nonzero().filter(|(i, _, _)| *i > 0) {
            out.c[i - 1][j] = v * BigInt::from(i);
        }
        out
    }

    fn swap(&self) -> Self {
        let (ax, ay) = self.dims();
        let mut out = Self::zeros(ay, ax);
        for (i, j, v) in self.nonzero() {
            out.c[j][i] = v.clone();
        }
        out
    }

    fn dy(&self) -> Self {
        self.swap().dx().swap()
    }

    /// Coefficients in `y` after substituting `x = x0`, padded to `len`.
    fn at_x(&self, x0: &BigInt, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        let mut power = BigInt::from(1);
        for row in &self.c {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out[j] += v * &power;
                }
            }
            power *= x0;
        }
        out
    }
}

fn sylvester(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, v) in a.iter().rev().enumerate() {
            row[shift + k] = v.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, v) in b.iter().rev().enumerate() {
            row[shift + k] = v.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_y(A, B)` as a polynomial in `x`, by evaluation and interpolation.
fn resultant_y(a: &BiPoly, b: &BiPoly) -> UPoly {
    let (ma, mb) = (a.degree_y(), b.degree_y());
    let bound = (a.total_degree() * b.total_degree()).min(ma * b.degree_x() + mb * a.degree_x());
    let xs: Vec<BigInt> = (0..=bound as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x0| {
            let (ca, cb) = (a.at_x(x0, ma + 1), b.at_x(x0, mb + 1));
            if ma + mb == 0 {
                BigInt::from(1)
            } else {
                determinant(sylvester(&ca, &cb))
            }
        })
        .collect();
    UPoly::interpolate(&ys)
}

fn random_poly(rng: &mut ChaCha8Rng, degree: Degree) -> BiPoly {
    // plane polynomials are bounded in total degree, bihomogeneous ones in each variable
    let (dx, dy, total) = match degree {
        Degree::Plane(d) => (d as usize, d as usize, Some(d as usize)),
        Degree::Quadric(a, b) => (a as usize, b as usize, None),
    };
    let mut p = BiPoly::zeros(dx, dy);
    for i in 0..=dx {
        for j in 0..=dy {
            if total.is_none_or(|t| i + j <= t) {
                p.c[i][j] = BigInt::from(rng.gen_range(-COEFFICIENT_RANGE..=COEFFICIENT_RANGE));
            }
        }
    }
    p
}

/// x-coordinates of the singular points, or `None` for a degenerate projection.
fn projected(f: &BiPoly, g: &BiPoly) -> Option<UPoly> {
    let (fx, fy, gx, gy) = (f.dx(), f.dy(), g.dx(), g.dy());
    let m1 = f.mul(&gx).sub(&g.mul(&fx));
    let m2 = f.mul(&gy).sub(&g.mul(&fy));
    let m3 = fx.mul(&gy).sub(&fy.mul(&gx));
    let r1 = resultant_y(&m1, &m3);
    let r2 = resultant_y(&m2, &m3);
    if r1.is_zero() || r2.is_zero() {
        return None;
    }
    let p = r1.gcd(&r2);
    p.is_squarefree().then_some(p)
}

fn sample_count(f: &BiPoly, g: &BiPoly) -> Option<usize> {
    let px = projected(f, g)?;
    let py = projected(&f.swap(), &g.swap())?;
    let (nx, ny) = (px.degree().unwrap_or(0), py.degree().unwrap_or(0));
    (nx == ny).then_some(nx)
}

/// Number of singular members of a general pencil in the class, i.e. the
/// one-nodal Severi degree, found independently of any recursion.
pub fn pencil_discriminant_oracle(degree: Degree, seed: u64) -> Result<PencilReport, SeveriError> {
    let ok = match degree {
        Degree::Plane(d) => (1..=5).contains(&d),
        Degree::Quadric(a, b) => (1..=3).contains(&a) && (1..=3).contains(&b),
    };
    if !ok {
        return Err(SeveriError::OracleRange {
            supported: "plane degree 1..=5 or bidegree in 1..=3 x 1..=3".into(),
            requested: format!("{} {degree}", degree.surface_name()),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut attempts = 0;
    while samples.len() < PENCIL_SAMPLES {
        if attempts == MAX_ATTEMPTS {
            return Err(SeveriError::OracleRetries { attempts });
        }
        attempts += 1;
        let f = random_poly(&mut rng, degree);
        let g = random_poly(&mut rng, degree);
        if let Some(n) = sample_count(&f, &g) {
            samples.push(n);
        }
    }
    if samples.iter().any(|&n| n != samples[0]) {
        return Err(SeveriError::OracleDisagreement { counts: samples });
    }
    Ok(PencilReport { degree, seed, count: samples[0], samples, attempts })
}
