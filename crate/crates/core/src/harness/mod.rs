//! Theorem suites: each suite enumerates cases per ring instance and checks
//! one implication per case, collecting replayable failures.

mod context;
mod family;
mod suites;

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use context::{Arrow, ArrowEnd, RingContext};
pub use family::{ra_specs, BuiltRing, Family, Instance, RingRecipe};

use crate::classify::DEFAULT_SCAN_CAP;
use crate::construct::{LocalizeOptions, DEFAULT_PRODUCT_CAP};
use crate::error::{Error, Result};
use crate::ideal::DEFAULT_LATTICE_CAP;

/// Upper bound on recorded observations per report.
pub const OBSERVATION_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    T1,
    T2,
    T3a,
    T3b,
    T4,
    T4a,
    T4b,
    T5,
    T6,
    T7,
    T8,
    T9a,
    T9b,
    T10,
    T11,
    T12,
    T13,
    T14,
    T15,
    T16,
    T17,
    /// Predicate hierarchy: prime, I-prime, monotone in I, n-absorbing ladder.
    Hierarchy,
}

impl Suite {
    pub const ALL: [Suite; 22] = [
        Suite::T1,
        Suite::T2,
        Suite::T3a,
        Suite::T3b,
        Suite::T4,
        Suite::T4a,
        Suite::T4b,
        Suite::T5,
        Suite::T6,
        Suite::T7,
        Suite::T8,
        Suite::T9a,
        Suite::T9b,
        Suite::T10,
        Suite::T11,
        Suite::T12,
        Suite::T13,
        Suite::T14,
        Suite::T15,
        Suite::T16,
        Suite::T17,
        Suite::Hierarchy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::T1 => "T1",
            Suite::T2 => "T2",
            Suite::T3a => "T3a",
            Suite::T3b => "T3b",
            Suite::T4 => "T4",
            Suite::T4a => "T4a",
            Suite::T4b => "T4b",
            Suite::T5 => "T5",
            Suite::T6 => "T6",
            Suite::T7 => "T7",
            Suite::T8 => "T8",
            Suite::T9a => "T9a",
            Suite::T9b => "T9b",
            Suite::T10 => "T10",
            Suite::T11 => "T11",
            Suite::T12 => "T12",
            Suite::T13 => "T13",
            Suite::T14 => "T14",
            Suite::T15 => "T15",
            Suite::T16 => "T16",
            Suite::T17 => "T17",
            Suite::Hierarchy => "H",
        }
    }

    /// Case-insensitive inverse of [`Suite::name`].
    pub fn parse(s: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|x| x.name().eq_ignore_ascii_case(s.trim()))
    }

    /// What the suite checks, in one line.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::T1 => "P is I-prime iff P/IP is weakly prime in R/IP",
            Suite::T2 => "P I-prime implies P[x] is I[x]-prime on monomials",
            Suite::T3a => "surjective good f with ker f in P maps I-prime P to an f(I)-prime f(P)",
            Suite::T3b => "good f pulls an I-prime Q back to an f^-1(I)-prime f^-1(Q)",
            Suite::T4 => "I-prime and not prime implies P^2 in IP",
            Suite::T4a => "I-prime and not prime implies rad P = rad IP",
            Suite::T4b => "I-prime with IP in P^3 implies P is (limit of P^k)-prime",
            Suite::T5 => "I-primary implies rad P is rad I-prime",
            Suite::T6 => "four equivalent characterisations of I-prime agree",
            Suite::T7 => "I-prime P and J in P give an I-prime P/J in R/J",
            Suite::T8 => "I-prime ideals of a product of two rings have exactly one of three types",
            Suite::T9a => "I-prime P, aK in P, aK not in IP, a not in P imply K in P",
            Suite::T9b => "I-prime P, AB in P, AB not in IP imply A in P or B in P",
            Suite::T10 => "2-absorbing primary ideals with radical P meet in P, a 2-absorbing I-prime ideal",
            Suite::T11 => "bijective good h pulls 2-absorbing I-prime Q back to a 2-absorbing h^-1(I)-prime",
            Suite::T12 => "n-absorbing I-prime P has an n-absorbing rad I-prime radical with a^n in P",
            Suite::T13 => "intersection of n_i-absorbing I-primes with equal IP_i is (sum n_i)-absorbing I-prime",
            Suite::T14 => "absorbing I-prime ideals of a product of n+1 rings decompose componentwise",
            Suite::T15 => "n-absorbing I-prime P has at most n minimal primes",
            Suite::T16 => "localization at S disjoint from P preserves I-primeness",
            Suite::T17 => "in a product of n+1 hyperfields every proper ideal is n-absorbing I-prime",
            Suite::Hierarchy => "prime => I-prime, I in J => J-prime, I-prime => 2-absorbing, n => n+1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How `IP` is formed where a suite offers a choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductConvention {
    /// The hyperideal generated by all `i∘p`.
    #[default]
    Generated,
    /// The bare union of all `i∘p`.
    RawUnion,
}

impl ProductConvention {
    pub fn name(self) -> &'static str {
        match self {
            ProductConvention::Generated => "generated",
            ProductConvention::RawUnion => "raw-union",
        }
    }
}

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub scan_cap: u64,
    pub product_cap: usize,
    pub lattice_cap: usize,
    pub localization: LocalizeOptions,
    /// `RawUnion` turns on the convention-sensitivity rerun of T8.
    pub ideal_product: ProductConvention,
    /// Fault injection: T4 checks `P²` against `{0}` instead of `IP`.
    pub corrupt_product: bool,
    /// Highest degree tracked by the monomial suite.
    pub dmax: usize,
    /// Largest carrier on which the hierarchy climbs past 2-absorbing.
    pub hierarchy_carrier: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            scan_cap: DEFAULT_SCAN_CAP,
            product_cap: DEFAULT_PRODUCT_CAP,
            lattice_cap: DEFAULT_LATTICE_CAP,
            localization: LocalizeOptions::default(),
            ideal_product: ProductConvention::Generated,
            corrupt_product: false,
            dmax: 2,
            hierarchy_carrier: 16,
        }
    }
}

/// Step log of a single case; closures run only when enabled.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    enabled: bool,
    lines: Vec<String>,
}

impl Trace {
    pub fn enabled() -> Self {
        Trace { enabled: true, lines: Vec::new() }
    }

    pub fn disabled() -> Self {
        Trace::default()
    }

    #[inline]
    pub fn step(&mut self, line: impl FnOnce() -> String) {
        if self.enabled {
            self.lines.push(line());
        }
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }
}

/// Verdict of one case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Hypothesis held and so did the conclusion.
    Pass,
    /// Hypothesis did not hold.
    Vacuous,
    /// The case could not be evaluated; the label is counted in the notes.
    Skip(&'static str),
    Fail(String),
}

/// Side channel of an evaluation: counters and informational entries.
#[derive(Debug, Default)]
pub struct Sink {
    pub trace: Trace,
    pub notes: BTreeMap<String, u64>,
    pub observations: Vec<String>,
}

impl Sink {
    fn traced(trace: Trace) -> Self {
        Sink { trace, ..Sink::default() }
    }

    pub fn note(&mut self, label: &str) {
        *self.notes.entry(label.into()).or_insert(0) += 1;
    }

    pub fn observe(&mut self, entry: impl FnOnce() -> String) {
        if self.observations.len() < OBSERVATION_CAP {
            self.observations.push(entry());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Recipe of the ring, parseable by [`RingRecipe::parse`].
    pub instance: String,
    pub fingerprint: u64,
    /// Suite-specific lattice indices and parameters.
    pub case: Vec<usize>,
    pub detail: String,
}

/// Tallies of one suite over one instance or a whole family.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    /// Instances the suite applies to.
    pub instances: u64,
    pub cases: u64,
    pub passed: u64,
    pub vacuous: u64,
    pub skipped: u64,
    pub failures: Vec<Failure>,
    pub notes: BTreeMap<String, u64>,
    pub observations: Vec<String>,
}

impl Tally {
    /// Appends `other`; failures are re-sorted, observations stay in merge order.
    pub fn absorb(&mut self, other: Tally) {
        self.instances += other.instances;
        self.cases += other.cases;
        self.passed += other.passed;
        self.vacuous += other.vacuous;
        self.skipped += other.skipped;
        self.failures.extend(other.failures);
        self.failures.sort_by(|a, b| {
            (a.fingerprint, &a.instance, &a.case).cmp(&(b.fingerprint, &b.instance, &b.case))
        });
        for (k, v) in other.notes {
            *self.notes.entry(k).or_insert(0) += v;
        }
        let room = OBSERVATION_CAP.saturating_sub(self.observations.len());
        self.observations.extend(other.observations.into_iter().take(room));
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub suite: Suite,
    pub family: String,
    /// Instances generated by the family, applicable or not.
    pub examined: u64,
    pub tally: Tally,
    pub config: HarnessConfig,
}

impl TheoremReport {
    pub fn new(suite: Suite, family: &Family, config: &HarnessConfig) -> Self {
        TheoremReport {
            suite,
            family: family.name(),
            examined: 0,
            tally: Tally::default(),
            config: config.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        self.tally.failures.is_empty()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.tally.failures
    }
}

/// Builds the instance ring and its context.
pub fn instance_context(instance: &Instance, config: &HarnessConfig) -> Result<RingContext> {
    let built = instance.recipe.build(config.product_cap)?;
    RingContext::new(built, config.lattice_cap)
}

fn run_cases(suite: Suite, ctx: &RingContext, config: &HarnessConfig, instance: &Instance) -> Result<Tally> {
    let mut tally = Tally::default();
    if !suites::applies(suite, ctx) {
        return Ok(tally);
    }
    tally.instances = 1;
    let mut sink = Sink::default();
    for case in suites::cases(suite, ctx, config) {
        tally.cases += 1;
        match suites::evaluate(suite, ctx, config, &case, &mut sink)? {
            Outcome::Pass => tally.passed += 1,
            Outcome::Vacuous => tally.vacuous += 1,
            Outcome::Skip(label) => {
                tally.skipped += 1;
                sink.note(label);
            }
            Outcome::Fail(detail) => tally.failures.push(Failure {
                instance: instance.key.clone(),
                fingerprint: ctx.ring.fingerprint(),
                case,
                detail,
            }),
        }
    }
    tally.notes = sink.notes;
    tally.observations = sink.observations.into_iter().map(|o| format!("{}: {o}", instance.key)).collect();
    Ok(tally)
}

/// Evaluates one suite on one instance.
pub fn run_instance(suite: Suite, instance: &Instance, config: &HarnessConfig) -> Result<Tally> {
    let ctx = instance_context(instance, config)?;
    run_cases(suite, &ctx, config, instance)
}

/// Evaluates several suites on one instance, sharing the ring context.
pub fn run_instance_suites(suites: &[Suite], instance: &Instance, config: &HarnessConfig) -> Result<Vec<Tally>> {
    let ctx = instance_context(instance, config)?;
    suites.iter().map(|&s| run_cases(s, &ctx, config, instance)).collect()
}

/// Folds per-instance tallies, given in family order, into a report.
pub fn merge(
    suite: Suite,
    family: &Family,
    config: &HarnessConfig,
    tallies: impl IntoIterator<Item = Tally>,
) -> TheoremReport {
    let mut report = TheoremReport::new(suite, family, config);
    for t in tallies {
        report.examined += 1;
        report.tally.absorb(t);
    }
    report
}

/// Serial reference runner.
pub fn run_suite(suite: Suite, family: &Family, config: &HarnessConfig) -> Result<TheoremReport> {
    let tallies = family
        .instances()
        .iter()
        .map(|inst| run_instance(suite, inst, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(suite, family, config, tallies))
}

/// Step-by-step re-execution of one recorded failure.
#[derive(Debug, Clone)]
pub struct Replay {
    pub failure: Failure,
    pub outcome: Outcome,
    pub trace: Vec<String>,
}

impl Replay {
    /// The re-executed case failed with the recorded detail.
    pub fn reproduced(&self) -> bool {
        matches!(&self.outcome, Outcome::Fail(d) if *d == self.failure.detail)
    }
}

pub fn replay_failure(report: &TheoremReport, index: usize) -> Result<Replay> {
    let failures = report.failures();
    let failure = failures.get(index).ok_or(Error::IndexOutOfRange { index, len: failures.len() })?;
    let ctx = replay_context(report, &failure.instance)?;
    replay_in(report, &ctx, failure)
}

/// Replays every recorded failure, building each instance ring once; `visit` sees them in report order.
pub fn replay_all(report: &TheoremReport, mut visit: impl FnMut(usize, Replay)) -> Result<()> {
    let mut order: Vec<usize> = (0..report.failures().len()).collect();
    order.sort_by(|&a, &b| report.failures()[a].instance.cmp(&report.failures()[b].instance));
    let mut replays: Vec<Option<Replay>> = alloc::vec![None; order.len()];
    let mut current: Option<(&str, RingContext)> = None;
    for k in order {
        let failure = &report.failures()[k];
        if current.as_ref().is_none_or(|(key, _)| *key != failure.instance) {
            current = Some((&failure.instance, replay_context(report, &failure.instance)?));
        }
        let (_, ctx) = current.as_ref().expect("set above");
        replays[k] = Some(replay_in(report, ctx, failure)?);
    }
    for (k, r) in replays.into_iter().enumerate() {
        visit(k, r.expect("every failure replayed"));
    }
    Ok(())
}

fn replay_context(report: &TheoremReport, key: &str) -> Result<RingContext> {
    let recipe = RingRecipe::parse(key).ok_or(Error::MissingParameter("parseable instance key"))?;
    instance_context(&Instance::new(recipe), &report.config)
}

fn replay_in(report: &TheoremReport, ctx: &RingContext, failure: &Failure) -> Result<Replay> {
    let mut sink = Sink::traced(Trace::enabled());
    sink.trace.step(|| format!("instance {} (fingerprint {:016x})", failure.instance, ctx.ring.fingerprint()));
    sink.trace.step(|| format!("{} case {:?}", report.suite, failure.case));
    let outcome = suites::evaluate(report.suite, ctx, &report.config, &failure.case, &mut sink)?;
    sink.trace.step(|| format!("outcome {outcome:?}"));
    Ok(Replay { failure: failure.clone(), outcome, trace: sink.trace.lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse_back() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("t4A"), Some(Suite::T4a));
        assert_eq!(Suite::parse("T18"), None);
    }

    #[test]
    fn empty_family_reports_nothing() {
        let report = run_suite(Suite::T4, &Family::Empty, &HarnessConfig::default()).unwrap();
        assert_eq!(report.examined, 0);
        assert_eq!(report.tally.instances, 0);
        assert!(report.passed());
        assert_eq!(replay_failure(&report, 0).unwrap_err(), Error::IndexOutOfRange { index: 0, len: 0 });
    }
}
