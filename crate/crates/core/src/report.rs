//! Verdicts of executable checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Witnesses kept per report; further failures are only counted.
const MAX_WITNESSES: usize = 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every case inside the enumeration bounds passed.
    BoundedPass,
    /// Some case found no certificate inside the bounds; not a disproof.
    BoundedFail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::BoundedPass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::BoundedPass => "bounded-pass",
            Verdict::BoundedFail => "BOUNDED-FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    /// Number of cases examined.
    pub cases: usize,
    /// Number of failing cases (witnesses are truncated, this is not).
    pub failures: usize,
    /// Inputs violating the checked statement.
    pub witnesses: Vec<String>,
    /// Sample inputs together with the certificate that made them pass.
    pub certificates: Vec<String>,
    pub bounds: BTreeMap<String, usize>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Pass,
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
            certificates: Vec::new(),
            bounds: BTreeMap::new(),
        }
    }

    pub fn bound(mut self, key: &str, value: usize) -> Self {
        self.bounds.insert(key.to_string(), value);
        self
    }

    pub fn is_bounded(&self) -> bool {
        !self.bounds.is_empty()
    }

    /// Records one case; `Err` carries the violation witness.
    pub fn record(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        if let Err(w) = outcome {
            self.fail(w);
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    pub fn certify(&mut self, certificate: String) {
        if self.certificates.len() < MAX_WITNESSES {
            self.certificates.push(certificate);
        }
    }

    /// Sets the verdict from the recorded cases. `exact_failures` says
    /// whether a failure disproves the statement or only means that no
    /// certificate was found inside the bounds.
    pub fn finish(mut self, exact_failures: bool) -> Self {
        self.verdict = match (self.failures == 0, self.is_bounded(), exact_failures) {
            (true, false, _) => Verdict::Pass,
            (true, true, _) => Verdict::BoundedPass,
            (false, _, true) => Verdict::Fail,
            (false, _, false) => Verdict::BoundedFail,
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    /// Merges sub-reports into one; the result passes iff all parts pass.
    pub fn combine(name: impl Into<String>, parts: Vec<CheckReport>) -> Self {
        let mut out = CheckReport::new(name);
        let mut any_bounded_fail = false;
        let mut any_fail = false;
        for p in parts {
            out.cases += p.cases;
            out.failures += p.failures;
            any_fail |= p.verdict == Verdict::Fail;
            any_bounded_fail |= p.verdict == Verdict::BoundedFail;
            for w in p.witnesses {
                if out.witnesses.len() < MAX_WITNESSES {
                    out.witnesses.push(format!("{}: {w}", p.name));
                }
            }
            for c in p.certificates {
                if out.certificates.len() < MAX_WITNESSES {
                    out.certificates.push(format!("{}: {c}", p.name));
                }
            }
            out.bounds.extend(p.bounds);
        }
        out.verdict = if any_fail {
            Verdict::Fail
        } else if any_bounded_fail {
            Verdict::BoundedFail
        } else if out.is_bounded() {
            Verdict::BoundedPass
        } else {
            Verdict::Pass
        };
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({} cases", self.name, self.verdict, self.cases)?;
        if self.failures > 0 {
            write!(f, ", {} failing", self.failures)?;
        }
        if !self.bounds.is_empty() {
            let b: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, ", bounds {}", b.join(" "))?;
        }
        write!(f, ")")?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}
