//! Check rows shared by the obstruction reports, sweeps and the battery.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "EXACT-PASS")]
    ExactPass,
    #[serde(rename = "EXACT-FAIL")]
    ExactFail,
    #[serde(rename = "REPORT-MATCH")]
    ReportMatch,
    #[serde(rename = "REPORT-MISMATCH")]
    ReportMismatch,
}

impl Status {
    /// Hard assertion outcome.
    pub fn exact(ok: bool) -> Self {
        if ok {
            Status::ExactPass
        } else {
            Status::ExactFail
        }
    }

    /// Comparison that is printed but never fails a run.
    pub fn report(ok: bool) -> Self {
        if ok {
            Status::ReportMatch
        } else {
            Status::ReportMismatch
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::ExactFail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::ExactPass => "EXACT-PASS",
            Status::ExactFail => "EXACT-FAIL",
            Status::ReportMatch => "REPORT-MATCH",
            Status::ReportMismatch => "REPORT-MISMATCH",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub check: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
}

impl ReportRow {
    pub fn exact(
        check: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
        ok: bool,
    ) -> Self {
        ReportRow {
            check: check.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            status: Status::exact(ok),
        }
    }

    /// Exact equality of two displayable values of the same type.
    pub fn exact_eq<T: PartialEq + fmt::Display>(
        check: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        Self::exact(check, lhs, rhs, lhs == rhs)
    }

    pub fn report<T: PartialEq + fmt::Display>(check: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        ReportRow {
            check: check.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            status: Status::report(lhs == rhs),
        }
    }
}

/// True when no row is an exact failure.
pub fn all_exact_pass(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| !r.status.is_failure())
}
