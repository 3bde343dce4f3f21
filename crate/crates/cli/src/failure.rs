use curvecount::catalog::CatalogError;
use curvecount::fit::FitError;
use curvecount::germ::GermError;
use curvecount::series::SeriesError;
use curvecount::severi::SeveriError;

pub const INPUT: u8 = 2;
pub const LIMIT: u8 = 3;
pub const INCONSISTENT: u8 = 4;

/// An error message with its process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: INPUT, message: message.into() }
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        Self { code: INCONSISTENT, message: message.into() }
    }

    fn with(code: u8, e: impl ToString) -> Self {
        Self { code, message: e.to_string() }
    }
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        let code = match e {
            GermError::NotIsolated { .. } => LIMIT,
            GermError::Syntax { .. } | GermError::ConstantTerm | GermError::Degenerate { .. } => INPUT,
        };
        Self::with(code, e)
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Self::with(INPUT, e)
    }
}

impl From<SeveriError> for Failure {
    fn from(e: SeveriError) -> Self {
        let code = match e {
            SeveriError::CeilingExceeded { .. }
            | SeveriError::Inadmissible { .. }
            | SeveriError::OracleRange { .. } => LIMIT,
            SeveriError::OracleRetries { .. }
            | SeveriError::OracleDisagreement { .. }
            | SeveriError::CacheConflict { .. } => INCONSISTENT,
            SeveriError::ZeroDegree | SeveriError::Cache { .. } | SeveriError::Io(_) => INPUT,
        };
        Self::with(code, e)
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        let code = match e {
            SeriesError::OutOfTruncation { .. } => LIMIT,
            _ => INPUT,
        };
        Self::with(code, e)
    }
}

impl From<FitError> for Failure {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Severi(inner) => inner.into(),
            FitError::Series(inner) => inner.into(),
            FitError::OrderTooHigh { .. } => Self::with(LIMIT, e),
            FitError::Inconsistent { .. } | FitError::NoAgreement { .. } => Self::with(INCONSISTENT, e),
            FitError::RankDeficient { .. } | FitError::NotFitted { .. } => Self::with(INPUT, e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use curvecount::severi::Degree;

    #[test]
    fn codes() {
        assert_eq!(Failure::from(GermError::ConstantTerm).code, INPUT);
        assert_eq!(Failure::from(GermError::NotIsolated { ceiling: 8 }).code, LIMIT);
        let ceiling = SeveriError::CeilingExceeded { degree: Degree::Plane(20), ceiling: 12 };
        assert_eq!(Failure::from(ceiling).code, LIMIT);
        assert_eq!(Failure::from(SeveriError::OracleDisagreement { counts: vec![1, 2] }).code, INCONSISTENT);
        assert_eq!(Failure::from(FitError::Inconsistent { r: 2, equations: 9 }).code, INCONSISTENT);
    }
}
