use std::fmt;

/// Outcome of one audit. `pass` holds exactly when every checked error is
/// within `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub name: String,
    pub grid: String,
    pub n_checked: usize,
    pub n_skipped: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// First point whose error exceeded the tolerance.
    pub offending: Option<String>,
    /// Points left out, with the reason.
    pub skipped: Vec<String>,
}

impl AuditReport {
    pub(crate) fn new(name: impl Into<String>, grid: impl Into<String>, tolerance: f64) -> Self {
        AuditReport {
            name: name.into(),
            grid: grid.into(),
            n_checked: 0,
            n_skipped: 0,
            max_abs_error: 0.0,
            max_rel_error: 0.0,
            tolerance,
            pass: true,
            offending: None,
            skipped: Vec::new(),
        }
    }

    /// Records one comparison; `rel` is the error compared to the tolerance.
    pub(crate) fn record(&mut self, abs: f64, rel: f64, point: impl FnOnce() -> String) {
        self.n_checked += 1;
        self.max_abs_error = self.max_abs_error.max(abs);
        self.max_rel_error = self.max_rel_error.max(rel);
        if !(rel <= self.tolerance) {
            self.fail(point());
        }
    }

    pub(crate) fn fail(&mut self, point: String) {
        self.pass = false;
        if self.offending.is_none() {
            self.offending = Some(point);
        }
    }

    pub(crate) fn skip(&mut self, why: String) {
        self.n_skipped += 1;
        self.skipped.push(why);
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} checked {:>6}  skipped {:>4}  max rel {:.3e} (tol {:.1e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.n_checked,
            self.n_skipped,
            self.max_rel_error,
            self.tolerance,
        )?;
        if let Some(p) = &self.offending {
            write!(f, "  at {p}")?;
        }
        Ok(())
    }
}
