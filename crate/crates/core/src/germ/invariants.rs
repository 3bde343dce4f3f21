use std::collections::BTreeMap;

use serde::Serialize;

use super::jet::{ideal_echelon, ideal_in_jets, monomial_count, top_slab_contained};
use super::poly::GermPoly;
use super::GermError;

pub const DEFAULT_CEILING: u32 = 64;

/// Invariants of one germ, as reported by [`Analyzer::analyze`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub germ: String,
    pub milnor: u32,
    pub tjurina: u32,
    pub multiplicity: u32,
    /// `(k_low, k_high)`: not `(k_low - 1)`-determined, certified `k_high`-determined.
    pub determinacy_window: (u32, u32),
    pub k_used: u32,
    pub scheme_length_at: BTreeMap<u32, u32>,
    pub orbit_tangent_dim: u32,
    pub dim_s0: u32,
    /// `dim_s0 == scheme_length(k_used) - tjurina`
    pub dim_s0_identity_holds: bool,
    /// Jet orders at which the Jacobian and Tjurina ideals were seen to contain a power of `m`.
    pub milnor_stabilization: u32,
    pub tjurina_stabilization: u32,
}

/// Jet-space computations on germs with a configurable search ceiling.
///
/// Ideal membership in the local ring is decided by the jet criterion
/// `m^(K-1) ⊆ I + m^K  ⟹  m^(K-1) ⊆ I` (Nakayama). The search for such a `K`
/// stops at `ceiling`; failing to find one there is reported as a
/// non-isolated singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analyzer {
    pub ceiling: u32,
}

impl Default for Analyzer {
    fn default() -> Self {
        Self { ceiling: DEFAULT_CEILING }
    }
}

fn jacobian(f: &GermPoly) -> [GermPoly; 2] {
    [f.partial_x(), f.partial_y()]
}

/// Generators of `m J(f) + <f>`.
fn tangent_generators(f: &GermPoly) -> Vec<GermPoly> {
    let [fx, fy] = jacobian(f);
    vec![fx.shift(1, 0), fx.shift(0, 1), fy.shift(1, 0), fy.shift(0, 1), f.clone()]
}

impl Analyzer {
    pub fn with_ceiling(ceiling: u32) -> Self {
        Self { ceiling }
    }

    fn criterion(generators: &[GermPoly], order: u32) -> bool {
        top_slab_contained(&ideal_echelon(generators, None, order), order)
    }

    /// Smallest jet order `K >= 1` with `m^(K-1) ⊆ I + m^K`, where `I` is
    /// generated by `generators`.
    ///
    /// The criterion is monotone in `K`, so the search doubles up to the
    /// ceiling and then bisects.
    pub fn stabilization_order(&self, generators: &[GermPoly]) -> Result<u32, GermError> {
        let ceiling = self.ceiling.max(1);
        let mut lo = 0u32; // criterion known false at lo (or lo == 0)
        let mut hi = 1u32;
        loop {
            if Self::criterion(generators, hi) {
                break;
            }
            if hi >= ceiling {
                return Err(GermError::NotIsolated { ceiling });
            }
            lo = hi;
            hi = (hi * 2).min(ceiling);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if Self::criterion(generators, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// `dim C{x,y}/I` together with the stabilization order used.
    fn local_quotient_dim(&self, generators: &[GermPoly]) -> Result<(u32, u32), GermError> {
        let order = self.stabilization_order(generators)?;
        let dim = ideal_in_jets(generators, None, order).codim();
        Ok((dim as u32, order))
    }

    /// Milnor number `dim C{x,y}/J(f)`.
    pub fn milnor_number(&self, f: &GermPoly) -> Result<u32, GermError> {
        Ok(self.local_quotient_dim(&jacobian(f))?.0)
    }

    /// Tjurina number `dim C{x,y}/(<f> + J(f))`.
    pub fn tjurina_number(&self, f: &GermPoly) -> Result<u32, GermError> {
        let [fx, fy] = jacobian(f);
        Ok(self.local_quotient_dim(&[f.clone(), fx, fy])?.0)
    }

    /// `(k_low, k_high)` bracketing the determinacy degree of `f`.
    ///
    /// `k_high` is the least `k` with `m^k ⊆ mJ(f) + <f>`, so `f` is
    /// `k_high`-determined. `k_low` is the least `k` with
    /// `m^(k+1) ⊆ mJ(f) + <f>`; below it the necessary condition fails.
    pub fn determinacy_window(&self, f: &GermPoly) -> Result<(u32, u32), GermError> {
        let order = self.stabilization_order(&tangent_generators(f))?;
        let k_high = order - 1;
        Ok((k_high.saturating_sub(1), k_high))
    }

    /// `N = dim C{x,y}/<f, m^(k+1)>`.
    pub fn scheme_length(&self, f: &GermPoly, k: u32) -> u32 {
        assert!(k >= 1, "scheme length needs k >= 1");
        ideal_in_jets(std::slice::from_ref(f), None, k + 1).codim() as u32
    }

    /// `dim (mJ(f) + <f> + m^(k+1)) / m^(k+1)`, the tangent space to the
    /// contact orbit of `f` in the `k`-jets.
    pub fn orbit_tangent_dim(&self, f: &GermPoly, k: u32) -> u32 {
        assert!(k >= 1, "orbit tangent dimension needs k >= 1");
        ideal_in_jets(&tangent_generators(f), Some(k + 1), k + 1).dim() as u32
    }

    /// `2 + orbit_tangent_dim(f, k) - dim C{x,y}/m^(k+1-m(f))`.
    pub fn dim_s0(&self, f: &GermPoly, k: u32) -> Result<u32, GermError> {
        let m = f.multiplicity().ok_or(GermError::Degenerate { k, multiplicity: 0 })?;
        if k < m {
            return Err(GermError::Degenerate { k, multiplicity: m });
        }
        let units = monomial_count(k + 1 - m) as i64;
        let value = 2 + self.orbit_tangent_dim(f, k) as i64 - units;
        u32::try_from(value).map_err(|_| GermError::Degenerate { k, multiplicity: m })
    }

    /// Every invariant at once. `k` defaults to the certified `k_high`.
    pub fn analyze(&self, f: &GermPoly, k: Option<u32>) -> Result<InvariantReport, GermError> {
        let multiplicity = f.multiplicity().ok_or(GermError::NotIsolated { ceiling: self.ceiling })?;
        let (milnor, milnor_stabilization) = self.local_quotient_dim(&jacobian(f))?;
        let [fx, fy] = jacobian(f);
        let (tjurina, tjurina_stabilization) = self.local_quotient_dim(&[f.clone(), fx, fy])?;
        let window = self.determinacy_window(f)?;
        let k_used = k.unwrap_or(window.1).max(1);
        let mut scheme_length_at = BTreeMap::new();
        for kk in [window.0.max(1), window.1, k_used] {
            scheme_length_at.insert(kk, self.scheme_length(f, kk));
        }
        let orbit_tangent_dim = self.orbit_tangent_dim(f, k_used);
        let dim_s0 = self.dim_s0(f, k_used)?;
        let dim_s0_identity_holds = i64::from(dim_s0) == i64::from(scheme_length_at[&k_used]) - i64::from(tjurina);
        Ok(InvariantReport {
            germ: f.to_string(),
            milnor,
            tjurina,
            multiplicity,
            determinacy_window: window,
            k_used,
            scheme_length_at,
            orbit_tangent_dim,
            dim_s0,
            dim_s0_identity_holds,
            milnor_stabilization,
            tjurina_stabilization,
        })
    }
}
