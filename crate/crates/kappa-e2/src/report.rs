//! Verification report data model and the suite runner behind `verify`.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn pass(id: &str, paper_ref: &str, detail: &str) -> Check {
        Check {
            id: id.to_string(),
            paper_ref: paper_ref.to_string(),
            status: Status::Pass,
            detail: detail.to_string(),
        }
    }

    pub fn fail(id: &str, paper_ref: &str, detail: &str) -> Check {
        Check {
            id: id.to_string(),
            paper_ref: paper_ref.to_string(),
            status: Status::Fail,
            detail: detail.to_string(),
        }
    }

    /// Pass when `fail` is `None`, fail with the message otherwise.
    pub fn from_option(id: &str, paper_ref: &str, fail: Option<String>) -> Check {
        match fail {
            None => Check::pass(id, paper_ref, ""),
            Some(msg) => Check::fail(id, paper_ref, &msg),
        }
    }
}

/// The outcome of one verification suite.
#[derive(Clone, Debug, Default)]
pub struct ReportFragment {
    checks: Vec<Check>,
}

impl ReportFragment {
    pub fn new() -> Self {
        ReportFragment { checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: ReportFragment) {
        self.checks.extend(other.checks);
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Parameters {
    pub degree: i64,
    pub seed: u64,
    pub slack: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Structured verification outcome mapping check ids to the conventional
/// relation numbering "(1)"–"(33)" and pass/fail status.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub suite: String,
    pub parameters: Parameters,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            };
            out.push_str(&format!("{}  {}  {}\n", c.id, status, c.paper_ref));
        }
        out.push_str(&format!(
            "summary: total={} passed={} failed={}\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    All,
    Hopf,
    Ideal,
    Calculus,
    Exterior,
    Lie,
    Plane,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "hopf" => Suite::Hopf,
            "ideal" => Suite::Ideal,
            "calculus" => Suite::Calculus,
            "exterior" => Suite::Exterior,
            "lie" => Suite::Lie,
            "plane" => Suite::Plane,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Hopf => "hopf",
            Suite::Ideal => "ideal",
            Suite::Calculus => "calculus",
            Suite::Exterior => "exterior",
            Suite::Lie => "lie",
            Suite::Plane => "plane",
        }
    }

    /// Functional suites default to degree 3, the rest to 2.
    pub fn default_degree(&self) -> i64 {
        match self {
            Suite::Lie => 3,
            _ => 2,
        }
    }
}

fn run_one(suite: Suite, degree: Option<i64>, seed: u64) -> ReportFragment {
    let d = degree.unwrap_or_else(|| suite.default_degree());
    match suite {
        Suite::Hopf => crate::algebra::verify_hopf_axioms(d.max(1)),
        Suite::Ideal => crate::ideal::verify_ideal_suite(d),
        Suite::Calculus => crate::calculus::verify_first_order(d.max(2), seed),
        Suite::Exterior => crate::exterior::verify_exterior(d.max(2), seed),
        Suite::Lie => crate::functional::verify_lie_suite(d.max(3), seed),
        Suite::Plane => crate::plane::verify_plane(d.max(2), seed),
        Suite::All => unreachable!(),
    }
}

/// Dispatches to the verification suites. With `degree = None`, each suite
/// runs at its own default and the document records degree `0`.
pub fn run_report(suite: Suite, degree: Option<i64>, seed: u64) -> ReportDocument {
    let mut checks = Vec::new();
    let subsuites = match suite {
        Suite::All => vec![
            Suite::Hopf,
            Suite::Ideal,
            Suite::Calculus,
            Suite::Exterior,
            Suite::Lie,
            Suite::Plane,
        ],
        s => vec![s],
    };
    for s in subsuites {
        let mut frag = run_one(s, degree, seed);
        frag.checks.sort_by(|a, b| a.id.cmp(&b.id));
        checks.extend(frag.checks);
    }
    let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
    let failed = checks.len() - passed;
    ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        suite: suite.name().to_string(),
        parameters: Parameters {
            degree: degree.unwrap_or(0),
            seed,
            slack: crate::ideal::DEFAULT_SLACK,
        },
        checks: checks.clone(),
        summary: Summary {
            total: checks.len(),
            passed,
            failed,
        },
    }
}
