//! Severi degrees of the projective plane and of `P1 x P1`.
//!
//! Values come from the tangency-profile recursion relative to a fixed line
//! (plane) or a fixed ruling line (quadric), memoized over all relative keys.
//! Two independent oracles check it: floor-diagram enumeration and root
//! counting for the discriminant of a random pencil.

mod floor;
mod memo;
mod pencil;
mod profile;
mod recursion;
pub(crate) mod upoly;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use floor::{floor_diagram_oracle, FLOOR_MAX_DEGREE, FLOOR_MAX_DELTA};
pub use memo::{EvalStats, MemoStore, Origin};
pub use pencil::{pencil_discriminant_oracle, PencilReport, PENCIL_SAMPLES};
pub use profile::TangencyProfile;
pub use recursion::{SeveriEngine, DEFAULT_DEGREE_CEILING};

use crate::series::ChernVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeveriError {
    #[error("{degree} exceeds the degree ceiling {ceiling}")]
    CeilingExceeded { degree: Degree, ceiling: u32 },
    #[error("{delta} nodes is inadmissible for {degree} (at most {max})")]
    Inadmissible { degree: Degree, delta: u32, max: u32 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("oracle supports {supported}; got {requested}")]
    OracleRange { supported: String, requested: String },
    #[error("pencil oracle found no nondegenerate sample after {attempts} attempts")]
    OracleRetries { attempts: u32 },
    #[error("pencil oracle samples disagree: {counts:?}")]
    OracleDisagreement { counts: Vec<usize> },
    #[error("cache line {line}: {message}")]
    Cache { line: usize, message: String },
    #[error("cache record for {key} is {loaded}, but {stored} is already known")]
    CacheConflict { key: String, stored: BigInt, loaded: BigInt },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Class of the curves being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Degree {
    /// Plane curves of degree `d`.
    Plane(u32),
    /// Curves of bidegree `(a, b)` on `P1 x P1`; the fixed curve is a line
    /// meeting them `b` times.
    Quadric(u32, u32),
}

impl Degree {
    pub fn surface_name(&self) -> &'static str {
        match self {
            Degree::Plane(_) => "P2",
            Degree::Quadric(..) => "P1xP1",
        }
    }

    /// Intersection number with the fixed curve.
    pub fn contact_number(&self) -> u32 {
        match *self {
            Degree::Plane(d) => d,
            Degree::Quadric(_, b) => b,
        }
    }

    /// Class left after splitting off the fixed curve, if any.
    pub fn residual(&self) -> Option<Degree> {
        match *self {
            Degree::Plane(0) | Degree::Quadric(0, _) => None,
            Degree::Plane(d) => Some(Degree::Plane(d - 1)),
            Degree::Quadric(a, b) => Some(Degree::Quadric(a - 1, b)),
        }
    }

    /// Dimension of the complete linear system.
    pub fn system_dim(&self) -> u32 {
        match *self {
            Degree::Plane(d) => d * (d + 3) / 2,
            Degree::Quadric(a, b) => (a + 1) * (b + 1) - 1,
        }
    }

    /// Largest number of nodes of a reduced curve in the class (a union of lines).
    pub fn max_delta(&self) -> u32 {
        match *self {
            Degree::Plane(d) => d * d.saturating_sub(1) / 2,
            Degree::Quadric(a, b) => a * b,
        }
    }

    pub fn chern(&self) -> ChernVector {
        match *self {
            Degree::Plane(d) => ChernVector::plane(d.into()),
            Degree::Quadric(a, b) => ChernVector::quadric(a.into(), b.into()),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Plane(d) => write!(f, "{d}"),
            Degree::Quadric(a, b) => write!(f, "{a},{b}"),
        }
    }
}

/// A relative count: curves in the class with `delta` nodes, `fixed`
/// contacts at assigned points of the fixed curve and `free` contacts at
/// unassigned points, through the matching number of general points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SeveriKey {
    pub degree: Degree,
    pub delta: u32,
    pub fixed: TangencyProfile,
    pub free: TangencyProfile,
}

impl SeveriKey {
    /// The absolute count: every contact simple and unassigned.
    pub fn absolute(degree: Degree, delta: u32) -> Self {
        Self { degree, delta, fixed: TangencyProfile::empty(), free: TangencyProfile::simple(degree.contact_number()) }
    }

    /// Number of general points imposed; negative for impossible keys.
    pub fn point_count(&self) -> i64 {
        self.degree.system_dim() as i64
            - self.delta as i64
            - self.fixed.intersection() as i64
            - self.free.intersection() as i64
            + self.free.size() as i64
    }
}

impl fmt::Display for SeveriKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {}", self.degree.surface_name(), self.degree, self.delta, self.fixed, self.free)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(SeveriKey::absolute(Degree::Plane(4), 3).point_count(), 11);
        assert_eq!(SeveriKey::absolute(Degree::Quadric(2, 2), 1).point_count(), 7);
        assert_eq!(SeveriKey::absolute(Degree::Plane(1), 0).point_count(), 2);
    }

    #[test]
    fn key_text() {
        assert_eq!(SeveriKey::absolute(Degree::Quadric(2, 3), 1).to_string(), "P1xP1 2,3 1 0 3");
    }

    #[test]
    fn cache_text_roundtrip() {
        let store = MemoStore::new();
        let n = store.load_text("P2 2 1 0 2 3\n# comment\nP1xP1 1,1 1 1 0 2\n").unwrap();
        assert_eq!(n, 2);
        assert_eq!(store.get(&SeveriKey::absolute(Degree::Plane(2), 1)), Some(BigInt::from(3)));
        let text = store.to_text();
        assert_eq!(text, "P2 2 1 0 2 3\nP1xP1 1,1 1 1 0 2\n");
        assert_eq!(store.origin(&SeveriKey::absolute(Degree::Plane(2), 1)), Some(Origin::LoadedFromCache));
    }

    #[test]
    fn bad_cache_records() {
        let store = MemoStore::new();
        assert!(matches!(store.load_text("P3 2 1 0 2 3"), Err(SeveriError::Cache { line: 1, .. })));
        assert!(matches!(store.load_text("P2 2 1 0 3 3"), Err(SeveriError::Cache { .. })));
        assert!(matches!(store.load_text("P2 2 1 0 2"), Err(SeveriError::Cache { .. })));
        assert!(matches!(store.load_text("P2 2 1 0 2 -1"), Err(SeveriError::Cache { .. })));
        store.load_text("P2 2 1 0 2 3").unwrap();
        assert!(matches!(store.load_text("P2 2 1 0 2 4"), Err(SeveriError::CacheConflict { .. })));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]
            #[test]
            fn quadric_counts_are_symmetric(a in 1u32..5, b in 1u32..5, delta in 0u32..5) {
                let engine = SeveriEngine::new();
                prop_assume!(delta <= a * b);
                prop_assert_eq!(
                    engine.severi_quadric(a, b, delta).unwrap(),
                    engine.severi_quadric(b, a, delta).unwrap()
                );
            }
        }
    }
}
