use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Degree, EvalStats, MemoStore, SeveriError, SeveriKey, TangencyProfile};

pub const DEFAULT_DEGREE_CEILING: u32 = 12;

/// Memoized evaluator of the tangency-profile recursion.
///
/// A relative count either moves one free contact of order `k` to an
/// assigned point (weight `k`), or splits off the fixed curve, leaving a
/// residual curve whose new contacts `γ` with the fixed curve absorb part
/// of the node budget.
#[derive(Debug)]
pub struct SeveriEngine {
    store: MemoStore,
    ceiling: u32,
}

impl Default for SeveriEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl SeveriEngine {
    pub fn new() -> Self {
        Self::with_ceiling(DEFAULT_DEGREE_CEILING)
    }

    pub fn with_ceiling(ceiling: u32) -> Self {
        Self { store: MemoStore::new(), ceiling }
    }

    pub fn ceiling(&self) -> u32 {
        self.ceiling
    }

    pub fn store(&self) -> &MemoStore {
        &self.store
    }

    pub fn stats(&self) -> EvalStats {
        self.store.stats()
    }

    /// Checks degree positivity, the degree ceiling and the node cap.
    pub fn check(&self, degree: Degree, delta: u32) -> Result<(), SeveriError> {
        let largest = match degree {
            Degree::Plane(0) | Degree::Quadric(0, _) | Degree::Quadric(_, 0) => return Err(SeveriError::ZeroDegree),
            Degree::Plane(d) => d,
            Degree::Quadric(a, b) => a.max(b),
        };
        if largest > self.ceiling {
            return Err(SeveriError::CeilingExceeded { degree, ceiling: self.ceiling });
        }
        if delta > degree.max_delta() {
            return Err(SeveriError::Inadmissible { degree, delta, max: degree.max_delta() });
        }
        Ok(())
    }

    pub fn severi(&self, degree: Degree, delta: u32) -> Result<BigInt, SeveriError> {
        self.check(degree, delta)?;
        Ok(self.relative(&SeveriKey::absolute(degree, delta)))
    }

    /// Number of `delta`-nodal plane curves of degree `d` through `d(d+3)/2 - delta` general points.
    pub fn severi_p2(&self, d: u32, delta: u32) -> Result<BigInt, SeveriError> {
        self.severi(Degree::Plane(d), delta)
    }

    /// Number of `delta`-nodal curves of bidegree `(a, b)` on `P1 x P1` through
    /// `(a+1)(b+1) - 1 - delta` general points.
    pub fn severi_quadric(&self, a: u32, b: u32, delta: u32) -> Result<BigInt, SeveriError> {
        self.severi(Degree::Quadric(a, b), delta)
    }

    /// Relative count for an arbitrary key, without ceiling checks.
    pub fn relative(&self, key: &SeveriKey) -> BigInt {
        if let Some(v) = self.store.get(key) {
            return v;
        }
        let value = self.evaluate(key);
        self.store.insert_computed(key.clone(), value)
    }

    fn evaluate(&self, key: &SeveriKey) -> BigInt {
        let contact = key.degree.contact_number();
        if key.delta > key.degree.max_delta()
            || key.point_count() < 0
            || key.fixed.intersection() + key.free.intersection() != contact
        {
            return BigInt::zero();
        }
        let Some(residual) = key.degree.residual() else {
            return base_value(key);
        };
        let mut total = BigInt::zero();
        for k in 1..=key.free.max_order() {
            if key.free.get(k) == 0 {
                continue;
            }
            let next = SeveriKey {
                degree: key.degree,
                delta: key.delta,
                fixed: key.fixed.with_added(k, 1),
                free: key.free.with_added(k, -1),
            };
            total += BigInt::from(k) * self.relative(&next);
        }
        let residual_contact = residual.contact_number();
        for fixed in key.fixed.sub_profiles() {
            let used = fixed.intersection() + key.free.intersection();
            let Some(remaining) = residual_contact.checked_sub(used) else {
                continue;
            };
            for gamma in TangencyProfile::with_intersection(remaining) {
                let Some(delta) = (key.delta + gamma.size()).checked_sub(residual_contact) else {
                    continue;
                };
                if delta > residual.max_delta() {
                    continue;
                }
                let free = key.free.plus(&gamma);
                let weight = gamma.order_power() * key.fixed.binomial(&fixed) * free.binomial(&key.free);
                let sub = SeveriKey { degree: residual, delta, fixed: fixed.clone(), free };
                total += weight * self.relative(&sub);
            }
        }
        total
    }
}

/// Classes meeting the fixed curve without a residual: the empty plane
/// curve, or a union of lines of the other ruling on the quadric.
fn base_value(key: &SeveriKey) -> BigInt {
    let simple = key.fixed.max_order() <= 1 && key.free.max_order() <= 1;
    if key.delta == 0 && simple {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}
