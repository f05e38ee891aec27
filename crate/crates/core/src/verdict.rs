use serde::Serialize;

/// Outcome of a witness evaluation.
///
/// `detected` is always `expectation < -tolerance`; constructing through
/// [`Verdict::new`] is the only way to get one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    detected: bool,
    expectation: f64,
    tolerance: f64,
    annotations: Vec<String>,
}

impl Verdict {
    pub fn new(expectation: f64, tolerance: f64, annotations: Vec<String>) -> Self {
        Self {
            detected: expectation < -tolerance,
            expectation,
            tolerance,
            annotations,
        }
    }

    pub fn detected(&self) -> bool {
        self.detected
    }

    pub fn expectation(&self) -> f64 {
        self.expectation
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn annotations(&self) -> &[String] {
        &self.annotations
    }

    pub fn annotate(&mut self, note: impl Into<String>) {
        self.annotations.push(note.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_strict() {
        assert!(Verdict::new(-0.5, 1e-9, vec![]).detected());
        assert!(!Verdict::new(-1e-9, 1e-9, vec![]).detected());
        assert!(!Verdict::new(0.0, 1e-9, vec![]).detected());
    }
}
