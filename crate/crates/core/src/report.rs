//! Plain-text verification reports with one named check per line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub claimed: String,
    pub computed: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), ..Default::default() }
    }

    fn push(&mut self, name: &str, status: Status, claimed: String, computed: String) {
        self.checks.push(Check { name: name.to_string(), status, claimed, computed });
    }

    /// Hard check: PASS when `ok`, FAIL otherwise.
    pub fn check(&mut self, name: &str, ok: bool, claimed: impl fmt::Display, computed: impl fmt::Display) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(name, status, claimed.to_string(), computed.to_string());
    }

    /// Hard check comparing two displayable values for equality.
    pub fn check_eq<T: PartialEq + fmt::Display>(&mut self, name: &str, claimed: T, computed: T) {
        let ok = claimed == computed;
        self.check(name, ok, claimed, computed);
    }

    /// Soft check: PASS when `ok`, WARN otherwise.
    pub fn soft(&mut self, name: &str, ok: bool, claimed: impl fmt::Display, computed: impl fmt::Display) {
        let status = if ok { Status::Pass } else { Status::Warn };
        self.push(name, status, claimed.to_string(), computed.to_string());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for c in &self.checks {
            writeln!(f, "{} {}: claimed {}; computed {}", c.status, c.name, c.claimed, c.computed)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_rendering() {
        let mut r = Report::new("demo");
        r.check_eq("equal", 3, 3);
        r.soft("soft", false, "Z^5", "Z^40");
        assert!(r.passed());
        r.check("hard", false, "x", "y");
        assert!(!r.passed());
        assert_eq!(r.count(Status::Warn), 1);
        let s = r.to_string();
        assert!(s.starts_with("== demo\nPASS equal: claimed 3; computed 3\n"));
        assert!(s.contains("WARN soft: claimed Z^5; computed Z^40"));
    }
}
