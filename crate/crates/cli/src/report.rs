//! The report printed by every command, as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::failure::Failure;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Caps {
    pub max_dim_u: usize,
    pub max_bar_degree: usize,
    pub max_ambient: usize,
}

/// One named identity and its verdict, with the first failing instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A cochain in flattened normalized coordinates, as `(index, value)` pairs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Cochain {
    pub label: String,
    pub degree: usize,
    pub entries: Vec<(usize, String)>,
}

/// `left op right` expressed in the basis of its degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Product {
    pub op: String,
    pub left: String,
    pub right: String,
    pub degree: usize,
    pub coordinates: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub spec: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bialgebroid: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub caps: Caps,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<Product>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cochains: Vec<Cochain>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: String, spec: String, caps: Caps) -> Self {
        Report {
            command,
            spec,
            field: String::new(),
            bialgebroid: None,
            coefficients: None,
            seed: None,
            caps,
            dims: None,
            checks: Vec::new(),
            products: Vec::new(),
            cochains: Vec::new(),
            notes: Vec::new(),
            error: None,
            elapsed_ms: None,
            ok: true,
        }
    }

    /// Appends the checks of a core report, prefixing every name.
    pub fn absorb(&mut self, prefix: &str, r: &gerst_core::report::Report) {
        for name in &r.checked {
            let bad: Vec<_> = r.failures.iter().filter(|f| &f.axiom == name).collect();
            self.checks.push(Check {
                name: format!("{prefix}{name}"),
                passed: bad.is_empty(),
                failures: bad.len(),
                witness: bad.first().map(|f| f.witness.clone()),
            });
        }
        for f in &r.failures {
            if !r.checked.contains(&f.axiom) {
                self.checks.push(Check {
                    name: format!("{prefix}{}", f.axiom),
                    passed: false,
                    failures: 1,
                    witness: Some(f.witness.clone()),
                });
            }
        }
    }

    pub fn fail_with(&mut self, f: &Failure) {
        self.error = Some(ErrorInfo {
            kind: f.kind().to_string(),
            message: f.to_string(),
        });
    }

    /// Sets `ok` and returns the process exit code.
    pub fn finish(&mut self, failure: Option<&Failure>) -> u8 {
        if let Some(f) = failure {
            self.fail_with(f);
        }
        let checks_ok = self.checks.iter().all(|c| c.passed);
        self.ok = checks_ok && self.error.is_none();
        match failure {
            Some(f) => f.exit_code(),
            None if checks_ok => 0,
            None => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "gerst {}", self.command);
        let _ = writeln!(s, "spec: {}", self.spec);
        if !self.field.is_empty() {
            let _ = writeln!(s, "field: {}", self.field);
        }
        if let Some(b) = &self.bialgebroid {
            let _ = writeln!(s, "bialgebroid: {b}");
        }
        if let Some(c) = &self.coefficients {
            let _ = writeln!(s, "coefficients: {c}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let c = &self.caps;
        let _ = writeln!(
            s,
            "caps: dim U <= {}, bar degree <= {}, ambient <= {}",
            c.max_dim_u, c.max_bar_degree, c.max_ambient
        );
        if let Some(dims) = &self.dims {
            let _ = writeln!(s, "\ndegree  dim Ext");
            for (n, d) in dims.iter().enumerate() {
                let _ = writeln!(s, "{n:>6}  {d:>7}");
            }
        }
        if !self.products.is_empty() {
            let _ = writeln!(s);
            for p in &self.products {
                let op = if p.op == "cup" {
                    format!("{} ∪ {}", p.left, p.right)
                } else {
                    format!("{{{}, {}}}", p.left, p.right)
                };
                let _ = writeln!(
                    s,
                    "{op} = ({}) in degree {}",
                    p.coordinates.join(", "),
                    p.degree
                );
            }
        }
        if !self.cochains.is_empty() {
            let _ = writeln!(s);
            for c in &self.cochains {
                let entries: Vec<String> =
                    c.entries.iter().map(|(i, v)| format!("{i}:{v}")).collect();
                let _ = writeln!(
                    s,
                    "{} (degree {}): {}",
                    c.label,
                    c.degree,
                    entries.join(" ")
                );
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s);
            for c in &self.checks {
                match &c.witness {
                    None => {
                        let _ = writeln!(s, "  pass  {}", c.name);
                    }
                    Some(w) => {
                        let _ = writeln!(
                            s,
                            "  FAIL  {} ({} failures, first at {w})",
                            c.name, c.failures
                        );
                    }
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "\nerror ({}): {}", e.kind, e.message);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "elapsed: {ms} ms");
        }
        let _ = writeln!(s, "\nresult: {}", if self.ok { "PASS" } else { "FAIL" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps {
            max_dim_u: 8,
            max_bar_degree: 5,
            max_ambient: 20_000,
        }
    }

    #[test]
    fn exit_codes_follow_the_verdict() {
        let mut r = Report::new("ext".into(), "a.spec".into(), caps());
        assert_eq!(r.finish(None), 0);
        assert!(r.ok);
        r.checks.push(Check {
            name: "x".into(),
            passed: false,
            failures: 1,
            witness: Some("e0".into()),
        });
        assert_eq!(r.finish(None), 1);
        assert!(!r.ok);
        let mut r = Report::new("ext".into(), "a.spec".into(), caps());
        assert_eq!(r.finish(Some(&Failure::Resource("too big".into()))), 2);
        assert_eq!(r.error.as_ref().unwrap().kind, "resource");
    }

    #[test]
    fn absorbs_core_reports_with_witnesses() {
        let mut core = gerst_core::report::Report::new();
        core.check("a");
        core.fail("b", "e1");
        core.fail("b", "e2");
        let mut r = Report::new("c".into(), "s".into(), caps());
        r.absorb("X: ", &core);
        assert_eq!(r.checks.len(), 2);
        assert!(r.checks[0].passed);
        assert_eq!(
            r.checks[1],
            Check {
                name: "X: b".into(),
                passed: false,
                failures: 2,
                witness: Some("e1".into())
            }
        );
        let text = r.to_text();
        assert!(
            text.contains("FAIL  X: b (2 failures, first at e1)"),
            "{text}"
        );
    }

    #[test]
    fn json_omits_empty_sections() {
        let mut r = Report::new("ext".into(), "s".into(), caps());
        r.finish(None);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v.get("checks").is_none());
        assert_eq!(v["ok"], true);
        assert_eq!(v["caps"]["max_ambient"], 20_000);
    }
}
