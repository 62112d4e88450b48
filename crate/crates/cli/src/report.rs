//! JSON report documents. Field order follows declaration order; maps are sorted.
//!
//! Everything that varies between runs of the same input lives in [`Header`];
//! the body is canonical.

use std::collections::BTreeMap;

use hyperring_core::harness::{Failure, Replay, TheoremReport};
use hyperring_core::{ClassificationReport, ValidationReport};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Document<B> {
    pub header: Header,
    pub body: B,
}

#[derive(Debug, Clone, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub spec: Option<String>,
    pub flags: FlagsEcho,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagsEcho {
    pub scan_cap: u64,
    pub size_cap: usize,
    pub localization_mode: &'static str,
    pub ideal_product: &'static str,
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomEntry {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateBody {
    pub size: usize,
    pub ok: bool,
    pub distributivity: Option<&'static str>,
    pub failures: Vec<AxiomEntry>,
}

impl ValidateBody {
    pub fn new(size: usize, report: &ValidationReport) -> Self {
        ValidateBody {
            size,
            ok: report.ok(),
            distributivity: report.distributivity.map(|d| d.name()),
            failures: report
                .failures
                .iter()
                .map(|f| AxiomEntry { axiom: f.axiom.name(), witness: f.witness.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealEntry {
    pub index: usize,
    pub elements: Vec<usize>,
    /// Names from the spec's `[ideals]` section that denote this ideal.
    pub names: Vec<String>,
    pub prime: bool,
    pub maximal: bool,
    pub radical: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealsBody {
    pub size: usize,
    pub hyperfield: bool,
    pub ideals: Vec<IdealEntry>,
    pub primes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub verdict: bool,
    pub witness: Option<Vec<usize>>,
    pub scanned: u64,
}

impl From<&ClassificationReport> for Verdict {
    fn from(r: &ClassificationReport) -> Self {
        Verdict { verdict: r.verdict, witness: r.witness.clone(), scanned: r.scanned }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QueryEntry {
    pub line: usize,
    pub predicate: &'static str,
    pub p: Vec<usize>,
    pub i: Option<Vec<usize>>,
    pub n: Option<usize>,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Present when the query supplied a tuple: whether that tuple violates the predicate.
    pub supplied_witness_violates: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyBody {
    pub queries: Vec<QueryEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    pub p: usize,
    pub predicate: &'static str,
    pub i: Option<usize>,
    pub n: Option<usize>,
    pub verdict: Option<bool>,
    pub witness: Option<Vec<usize>>,
    /// Set when the scan could not be completed.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumBody {
    pub size: usize,
    pub ideals: Vec<Vec<usize>>,
    pub grid: Vec<SpectrumEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureEntry {
    pub instance: String,
    pub fingerprint: String,
    pub case: Vec<usize>,
    pub detail: String,
}

impl From<&Failure> for FailureEntry {
    fn from(f: &Failure) -> Self {
        FailureEntry {
            instance: f.instance.clone(),
            fingerprint: format!("{:016x}", f.fingerprint),
            case: f.case.clone(),
            detail: f.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub suite: &'static str,
    pub statement: &'static str,
    pub family: String,
    pub examined: u64,
    pub instances: u64,
    pub cases: u64,
    pub passed: u64,
    pub vacuous: u64,
    pub skipped: u64,
    pub failure_count: usize,
    /// The first `failure_count.min(listing cap)` failures in report order.
    pub failures: Vec<FailureEntry>,
    pub notes: BTreeMap<String, u64>,
    pub observations: Vec<String>,
}

impl SuiteEntry {
    pub fn new(r: &TheoremReport, listed: usize) -> Self {
        let t = &r.tally;
        SuiteEntry {
            suite: r.suite.name(),
            statement: r.suite.statement(),
            family: r.family.clone(),
            examined: r.examined,
            instances: t.instances,
            cases: t.cases,
            passed: t.passed,
            vacuous: t.vacuous,
            skipped: t.skipped,
            failure_count: t.failures.len(),
            failures: t.failures.iter().take(listed).map(FailureEntry::from).collect(),
            notes: t.notes.clone(),
            observations: t.observations.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayEntry {
    pub suite: &'static str,
    pub index: usize,
    pub failure: FailureEntry,
    pub reproduced: bool,
    pub outcome: String,
    pub trace: Vec<String>,
}

impl ReplayEntry {
    pub fn new(report: &TheoremReport, index: usize, replay: &Replay) -> Self {
        ReplayEntry {
            suite: report.suite.name(),
            index,
            failure: FailureEntry::from(&replay.failure),
            reproduced: replay.reproduced(),
            outcome: format!("{:?}", replay.outcome),
            trace: replay.trace.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremsBody {
    pub reports: Vec<SuiteEntry>,
    pub replay: Option<ReplayEntry>,
}
