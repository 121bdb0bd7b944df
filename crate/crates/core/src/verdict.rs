//! Tri-state outcomes shared by checks and reports.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The truncation does not reach the degrees the check needs.
    NotCertified,
    /// The check's hypotheses do not hold for this input.
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotCertified => "not-certified",
            Status::NotApplicable => "not-applicable",
        }
    }

    /// Fail dominates, then not-certified; an empty set is not certified.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        let mut any_pass = false;
        let mut not_certified = false;
        for s in statuses {
            match s {
                Status::Fail => return Status::Fail,
                Status::NotCertified => not_certified = true,
                Status::Pass => any_pass = true,
                Status::NotApplicable => {}
            }
        }
        if not_certified || !any_pass {
            Status::NotCertified
        } else {
            Status::Pass
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
