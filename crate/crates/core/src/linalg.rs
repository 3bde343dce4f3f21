//! Exact linear algebra over the rationals.
//!
//! Two tools live here: an incremental sparse echelon form used by the jet
//! computations, and a fraction-free dense solver used to fit universal
//! polynomials.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse vector: strictly increasing column indices, all entries nonzero.
pub type SparseRow = Vec<(usize, BigRational)>;

/// `row - factor * other`, both sparse and sorted.
fn sub_scaled(row: &[(usize, BigRational)], other: &[(usize, BigRational)], factor: &BigRational) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_row = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_other = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_other {
            out.push((other[j].0, -(factor * &other[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &other[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one row at a time.
///
/// Every stored row has a leading 1 in its pivot column (its first nonzero
/// column), and no two rows share a pivot. Rows are not back-reduced until
/// [`Echelon::into_reduced`] is called.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, unordered.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `row` against the stored pivots. Returns the remainder, which
    /// is empty exactly when `row` lies in the span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, lead)) = row.first().cloned() {
            match self.pivot_row.get(&col) {
                Some(&r) => row = sub_scaled(&row, &self.rows[r], &lead),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Whether `row` is in the span.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Reduced row echelon basis, rows sorted by pivot column.
    pub fn into_reduced(self) -> Vec<SparseRow> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.first().map(|e| e.0));
        let pivot_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        for i in (0..rows.len()).rev() {
            loop {
                let hit = rows[i].iter().skip(1).find_map(|(c, v)| pivot_of.get(c).map(|&r| (r, v.clone())));
                match hit {
                    Some((r, v)) => {
                        debug_assert!(r > i);
                        let reduced = sub_scaled(&rows[i], &rows[r], &v);
                        rows[i] = reduced;
                    }
                    None => break,
                }
            }
        }
        rows
    }
}

/// Outcome of an exact solve of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolve {
    pub rank: usize,
    pub augmented_rank: usize,
    pub unknowns: usize,
    pub equations: usize,
    /// Present when the system is consistent and `A` has full column rank.
    pub solution: Option<Vec<BigRational>>,
}

impl ExactSolve {
    pub fn consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }

    pub fn full_rank(&self) -> bool {
        self.rank == self.unknowns
    }
}

fn lcm_of_denominators(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Solves `A x = b` over the rationals by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers, then eliminated so every intermediate
/// entry stays an integer minor of the augmented matrix. Nothing is rounded:
/// an overdetermined system is reported consistent only if it is exactly so.
pub fn solve_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> ExactSolve {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let equations = a.len();
    let unknowns = a.first().map_or(0, Vec::len);
    let width = unknowns + 1;

    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), unknowns);
            let mut full: Vec<BigRational> = row.clone();
            full.push(rhs.clone());
            let scale = BigRational::from_integer(lcm_of_denominators(&full));
            full.iter().map(|q| (q * &scale).to_integer()).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == equations {
            break;
        }
        let Some(p) = (r..equations).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..equations {
            for j in col + 1..width {
                let num = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }

    let augmented_rank = pivot_cols.len();
    let rank = pivot_cols.iter().filter(|&&c| c < unknowns).count();
    let solution = if rank == augmented_rank && rank == unknowns {
        let mut x = vec![BigRational::zero(); unknowns];
        for (row, &col) in pivot_cols.iter().enumerate().rev() {
            let mut acc = BigRational::from_integer(m[row][unknowns].clone());
            for (j, xj) in x.iter().enumerate().skip(col + 1) {
                acc -= BigRational::from_integer(m[row][j].clone()) * xj;
            }
            x[col] = acc / BigRational::from_integer(m[row][col].clone());
        }
        Some(x)
    } else {
        None
    };

    ExactSolve { rank, augmented_rank, unknowns, equations, solution }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

/// `true` when `q` is an integer (denominator one).
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}
