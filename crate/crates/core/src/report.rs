//! Pass/fail bookkeeping shared by all axiom checkers.

use std::fmt;

/// One failed instance of a named identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: String,
    pub witness: String,
}

/// The outcome of running a family of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: Vec<String>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Registers `axiom` as checked; nothing is recorded if it was seen before.
    pub fn check(&mut self, axiom: &str) {
        if !self.checked.iter().any(|a| a == axiom) {
            self.checked.push(axiom.to_string());
        }
    }

    pub fn fail(&mut self, axiom: &str, witness: impl Into<String>) {
        self.check(axiom);
        self.failures.push(Failure {
            axiom: axiom.to_string(),
            witness: witness.into(),
        });
    }

    /// Records a check of `axiom`, failing with `witness` unless `ok`.
    pub fn expect(&mut self, axiom: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.check(axiom);
        } else {
            self.fail(axiom, witness());
        }
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        let mut v: Vec<&str> = Vec::new();
        for f in &self.failures {
            if !v.contains(&f.axiom.as_str()) {
                v.push(&f.axiom);
            }
        }
        v
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checked {
            self.check(&c);
        }
        self.failures.extend(other.failures);
    }

    /// Merges `other` with every axiom name prefixed by `prefix`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for c in other.checked {
            self.check(&format!("{prefix}{c}"));
        }
        for f in other.failures {
            self.failures.push(Failure {
                axiom: format!("{prefix}{}", f.axiom),
                witness: f.witness,
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checked {
            let bad: Vec<&Failure> = self.failures.iter().filter(|x| &x.axiom == c).collect();
            if bad.is_empty() {
                writeln!(f, "  pass  {c}")?;
            } else {
                writeln!(
                    f,
                    "  FAIL  {c} ({} failures, first at {})",
                    bad.len(),
                    bad[0].witness
                )?;
            }
        }
        Ok(())
    }
}
