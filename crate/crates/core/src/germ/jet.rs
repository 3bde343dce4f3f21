//! Finite jet spaces `C{x,y}/m^K` and ideals inside them.
//!
//! Monomials `x^i y^j` with `i + j < K` are indexed in graded order: lower
//! total degree first, and within a degree `x^n, x^(n-1) y, ..., y^n`. With
//! this ordering the first nonzero column of a row is its lowest-degree
//! term, which is what the local ring cares about.

use num_rational::BigRational;
use num_traits::One;

use super::poly::{Exponent, GermPoly};
use crate::linalg::{Echelon, SparseRow};

/// Number of monomials of total degree `< order`, i.e. `dim C{x,y}/m^order`.
pub fn monomial_count(order: u32) -> usize {
    let k = order as usize;
    k * (k + 1) / 2
}

pub fn monomial_index((i, j): Exponent) -> usize {
    let n = (i + j) as usize;
    n * (n + 1) / 2 + j as usize
}

pub fn monomial_at(index: usize) -> Exponent {
    let mut n = 0usize;
    while (n + 1) * (n + 2) / 2 <= index {
        n += 1;
    }
    let j = index - n * (n + 1) / 2;
    ((n - j) as u32, j as u32)
}

fn degree_of_index(index: usize) -> u32 {
    let (i, j) = monomial_at(index);
    i + j
}

/// `x^a y^b * g` truncated below total degree `order`, as a sparse row.
fn shifted_row(g: &GermPoly, a: u32, b: u32, order: u32) -> SparseRow {
    let mut row: SparseRow = g
        .terms()
        .filter(|((i, j), _)| i + j + a + b < order)
        .map(|(&(i, j), c)| (monomial_index((i + a, j + b)), c.clone()))
        .collect();
    row.sort_by_key(|e| e.0);
    row
}

/// Echelon form of `(<generators> + m^power + m^order) / m^order`.
pub(crate) fn ideal_echelon(generators: &[GermPoly], power: Option<u32>, order: u32) -> Echelon {
    let mut echelon = Echelon::new();
    if let Some(p) = power {
        for n in p..order {
            for j in 0..=n {
                echelon.insert(vec![(monomial_index((n - j, j)), BigRational::one())]);
            }
        }
    }
    for g in generators {
        let Some(m) = g.multiplicity() else { continue };
        if m >= order {
            continue;
        }
        for s in 0..order - m {
            for b in 0..=s {
                echelon.insert(shifted_row(g, s - b, b, order));
            }
        }
    }
    echelon
}

/// Whether every monomial of degree `order - 1` lies in the echelon span.
///
/// Rows are normalized with their lowest-degree term as pivot, so the
/// subspace of vectors living purely in the top degree is spanned by the
/// rows whose pivot has that degree.
pub(crate) fn top_slab_contained(echelon: &Echelon, order: u32) -> bool {
    if order == 0 {
        return true;
    }
    let top = order - 1;
    let count = echelon.pivots().filter(|&c| degree_of_index(c) == top).count();
    count == order as usize
}

/// A linear subspace of `C{x,y}/m^K` held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct JetSubspace {
    order: u32,
    basis: Vec<SparseRow>,
}

impl JetSubspace {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim C{x,y}/(V + m^K)` for this subspace `V`.
    pub fn codim(&self) -> usize {
        monomial_count(self.order) - self.basis.len()
    }

    pub fn basis(&self) -> &[SparseRow] {
        &self.basis
    }

    /// Basis rows rendered as polynomials.
    pub fn basis_polys(&self) -> Vec<GermPoly> {
        self.basis
            .iter()
            .map(|row| {
                GermPoly::from_terms(row.iter().map(|(c, v)| (monomial_at(*c), v.clone())))
                    .unwrap_or_else(|_| GermPoly::zero())
            })
            .collect()
    }

    /// Monomials not occurring as pivots: they form a basis of the quotient.
    pub fn quotient_monomials(&self) -> Vec<Exponent> {
        let pivots: std::collections::HashSet<usize> = self.basis.iter().map(|r| r[0].0).collect();
        (0..monomial_count(self.order)).filter(|c| !pivots.contains(c)).map(monomial_at).collect()
    }

    pub fn contains(&self, g: &GermPoly) -> bool {
        let mut e = Echelon::new();
        for row in &self.basis {
            e.insert(row.clone());
        }
        e.contains(shifted_row(g, 0, 0, self.order))
    }
}

/// The span in `C{x,y}/m^K` of all monomial multiples of the generators,
/// together with every monomial of degree at least `include_power` when given.
pub fn ideal_in_jets(generators: &[GermPoly], include_power: Option<u32>, order: u32) -> JetSubspace {
    assert!(order >= 1, "truncation order must be at least 1");
    let echelon = ideal_echelon(generators, include_power, order);
    JetSubspace { order, basis: echelon.into_reduced() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn germ(s: &str) -> GermPoly {
        s.parse().unwrap()
    }

    #[test]
    fn indexing_roundtrip() {
        for idx in 0..monomial_count(12) {
            assert_eq!(monomial_index(monomial_at(idx)), idx);
        }
        assert_eq!(monomial_at(0), (0, 0));
        assert_eq!(monomial_at(1), (1, 0));
        assert_eq!(monomial_at(2), (0, 1));
        assert_eq!(monomial_at(3), (2, 0));
    }

    #[test]
    fn node_with_cube_of_maximal_ideal() {
        let v = ideal_in_jets(&[germ("x*y")], Some(3), 3);
        assert_eq!(v.dim(), 1);
        assert_eq!(v.codim(), 5);
    }

    #[test]
    fn maximal_ideal_mod_fourth_power() {
        let v = ideal_in_jets(&[], Some(1), 4);
        assert_eq!(v.dim(), 9);
        assert_eq!(v.quotient_monomials(), vec![(0, 0)]);
    }

    #[test]
    fn cusp_with_fourth_power() {
        let v = ideal_in_jets(&[germ("y^2 - x^3")], Some(4), 4);
        assert_eq!(v.dim(), 3);
        assert_eq!(v.codim(), 7);
        assert!(v.contains(&germ("x*y^2 - x^4")));
        assert!(v.contains(&germ("y^3")));
        assert!(!v.contains(&germ("x^3")));
    }

    #[test]
    fn reduced_basis_is_rref() {
        let v = ideal_in_jets(&[germ("x^2 + x*y"), germ("x*y + y^2")], None, 4);
        let pivots: Vec<usize> = v.basis().iter().map(|r| r[0].0).collect();
        for (k, row) in v.basis().iter().enumerate() {
            assert!(row[0].1.is_one());
            for (c, _) in row.iter().skip(1) {
                assert!(!pivots.contains(c), "row {k} has a pivot column entry");
            }
        }
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn top_slab_detection() {
        // J(y^2 - x^3) = <x^2, y>: degree-2 slab is inside J + m^3.
        let j = [germ("-3*x^2"), germ("2*y")];
        assert!(!top_slab_contained(&ideal_echelon(&j, None, 2), 2));
        assert!(top_slab_contained(&ideal_echelon(&j, None, 3), 3));
    }
}
