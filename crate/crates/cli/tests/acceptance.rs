//! Acceptance criteria, one PASS/FAIL line each. Run with `--nocapture` to see the table.
//!
//! Every criterion is evaluated even after an earlier one fails; the test
//! asserts at the end.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hyperring_cli::run_requests;
use hyperring_core::construct::{build_ra, RaSpec};
use hyperring_core::harness::{
    ra_specs, replay_all, Family, HarnessConfig, ProductConvention, Suite, TheoremReport,
};
use hyperring_core::{FiniteHyperring, Hyperideal, IdealLattice, Predicate, PredicateQuery, DEFAULT_SCAN_CAP};

const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const LATTICE_BUDGET: Duration = Duration::from_secs(60);
const SUITE_BUDGET: Duration = Duration::from_secs(600);
const MIN_DEFAULT_INSTANCES: u64 = 500;

struct Ledger {
    rows: Vec<(u8, bool, String)>,
}

impl Ledger {
    fn record(&mut self, id: u8, ok: bool, summary: String) {
        println!("{} {id}: {summary}", if ok { "PASS" } else { "FAIL" });
        self.rows.push((id, ok, summary));
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn ra(n: usize, a: &[usize]) -> Arc<FiniteHyperring> {
    Arc::new(build_ra(&RaSpec::new(n, a.iter().copied())).unwrap())
}

fn ideal(ring: &Arc<FiniteHyperring>, gens: &[usize]) -> Hyperideal {
    Hyperideal::from_generators(ring, gens).unwrap()
}

/// `a∘b` in `RA(n; A)` computed from the definition, not from the tables.
fn ra_product(n: usize, a_set: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut out: Vec<usize> = a_set.iter().map(|&x| a * x % n * b % n).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn query(pred: Predicate, p: &Hyperideal, i: Option<&Hyperideal>, n: Option<usize>) -> PredicateQuery {
    PredicateQuery::new(pred, p.clone(), i.cloned(), n).unwrap()
}

fn example_prime_vs_iprime(ledger: &mut Ledger) {
    let start = Instant::now();
    let ring = ra(16, &[0, 1]);
    let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
    let (p, i) = (ideal(&ring, &[4]), ideal(&ring, &[2]));
    let prime = query(Predicate::Prime, &p, None, None).evaluate(&lattice, DEFAULT_SCAN_CAP).unwrap();
    let iprime = query(Predicate::IPrime, &p, Some(&i), None).evaluate(&lattice, DEFAULT_SCAN_CAP).unwrap();
    let elapsed = start.elapsed();
    let square = ra_product(16, &[0, 1], 2, 2);
    let ok = !prime.verdict
        && prime.witness.as_deref() == Some(&[2, 2][..])
        && square == [0, 4]
        && ring.hmul(2, 2).to_vec() == square
        && iprime.verdict
        && elapsed < EXAMPLE_BUDGET;
    ledger.record(
        1,
        ok,
        format!(
            "Z16 A={{0,1}} P=<4>: prime={} witness={:?} 2∘2={square:?}; <2>-prime={} ({elapsed:?}, budget {EXAMPLE_BUDGET:?})",
            prime.verdict, prime.witness, iprime.verdict
        ),
    );
}

fn example_intersection(ledger: &mut Ledger) {
    let ring = ra(36, &[2, 3]);
    let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
    let i = ideal(&ring, &[3]);
    let verdict = |gens: &[usize]| {
        query(Predicate::IPrime, &ideal(&ring, gens), Some(&i), None).evaluate(&lattice, DEFAULT_SCAN_CAP).unwrap()
    };
    let (p2, p3, p6) = (verdict(&[2]), verdict(&[3]), verdict(&[6]));
    let product = ra_product(36, &[2, 3], 2, 3);
    let ip6 = i.product(&ideal(&ring, &[6])).unwrap();
    let ok = p2.verdict
        && p3.verdict
        && !p6.verdict
        && p6.witness.as_deref() == Some(&[2, 3][..])
        && product == [12, 18];
    ledger.record(
        2,
        ok,
        format!(
            "Z36 A={{2,3}} I=<3>: <2>-> {}, <3>-> {}, <6>-> {} witness={:?}; 2∘3={product:?}; I<6>={:?}",
            p2.verdict,
            p3.verdict,
            p6.verdict,
            p6.witness,
            ip6.set().to_vec()
        ),
    );
}

/// Every subset of Z_n that is an additive subgroup absorbing `r∘s`, by exhaustion over bitmasks.
fn brute_force_ideals(n: usize, a_set: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(0) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| has(x)).collect();
        let subgroup = members.iter().all(|&a| members.iter().all(|&b| has((a + n - b) % n)));
        let absorbing = subgroup
            && members.iter().all(|&s| (0..n).all(|r| a_set.iter().all(|&x| has(s * x % n * r % n))));
        if absorbing {
            out.push(members);
        }
    }
    out.sort();
    out
}

fn lattice_oracle(ledger: &mut Ledger) {
    let start = Instant::now();
    let specs = ra_specs(10, 2);
    let mut discrepancies = Vec::new();
    let mut ideals = 0usize;
    for spec in &specs {
        let ring = Arc::new(build_ra(spec).unwrap());
        let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
        let mut engine: Vec<Vec<usize>> = lattice.ideals().iter().map(|i| i.set().to_vec()).collect();
        engine.sort();
        let oracle = brute_force_ideals(spec.n, &spec.a);
        ideals += oracle.len();
        if engine != oracle {
            discrepancies.push(format!("{spec:?}"));
        }
    }
    let elapsed = start.elapsed();
    ledger.record(
        3,
        discrepancies.is_empty() && elapsed < LATTICE_BUDGET,
        format!(
            "{} rings n≤10 |A|≤2, {ideals} ideals, {} discrepancies {:?} ({elapsed:?}, budget {LATTICE_BUDGET:?})",
            specs.len(),
            discrepancies.len(),
            discrepancies.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn summary(reports: &[TheoremReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{}={}/{}", r.suite, r.failures().len(), r.tally.cases))
        .collect::<Vec<_>>()
        .join(" ")
}

fn default_family_suites(ledger: &mut Ledger, config: &HarnessConfig) -> Vec<TheoremReport> {
    const SUITES: [Suite; 12] = [
        Suite::T1,
        Suite::T4,
        Suite::T4a,
        Suite::T5,
        Suite::T6,
        Suite::T7,
        Suite::T9a,
        Suite::T9b,
        Suite::T12,
        Suite::T15,
        Suite::T16,
        Suite::Hierarchy,
    ];
    let requests: Vec<(Suite, Family)> = SUITES.iter().map(|&s| (s, Family::Default)).collect();
    let start = Instant::now();
    let reports = run_requests(&requests, config, jobs()).unwrap();
    let elapsed = start.elapsed();
    let (main, hierarchy): (Vec<_>, Vec<_>) = reports.iter().cloned().partition(|r| r.suite != Suite::Hierarchy);
    let instances = main[0].examined;
    let failures: usize = main.iter().map(|r| r.failures().len()).sum();
    ledger.record(
        4,
        failures == 0 && instances >= MIN_DEFAULT_INSTANCES && elapsed < SUITE_BUDGET,
        format!(
            "default family {instances} instances (min {MIN_DEFAULT_INSTANCES}), failures/cases {} ({elapsed:?}, budget {SUITE_BUDGET:?})",
            summary(&main)
        ),
    );
    let h = &hierarchy[0];
    ledger.record(
        6,
        h.passed() && h.tally.instances == instances,
        format!("hierarchy over {} instances: {} cases, {} violations", h.tally.instances, h.tally.cases, h.failures().len()),
    );
    reports
}

fn product_suites(ledger: &mut Ledger, config: &HarnessConfig) -> Vec<TheoremReport> {
    let config = HarnessConfig { ideal_product: ProductConvention::RawUnion, ..config.clone() };
    let pairs = Family::ProductSweep { arity: 2, max_carrier: 36, nmax: 18, amax: 2 };
    let triples = Family::ProductSweep { arity: 3, max_carrier: 36, nmax: 9, amax: 2 };
    let requests = [
        (Suite::T8, pairs.clone()),
        (Suite::T14, pairs),
        (Suite::T14, triples),
    ];
    let reports = run_requests(&requests, &config, jobs()).unwrap();
    let failures: usize = reports.iter().map(|r| r.failures().len()).sum();
    let rerun: BTreeMap<&str, u64> = reports[0]
        .tally
        .notes
        .iter()
        .filter(|(k, _)| k.starts_with("raw-union"))
        .map(|(k, v)| (k.as_str(), *v))
        .collect();
    ledger.record(
        5,
        failures == 0,
        format!(
            "pairs {} / triples {} instances, carrier ≤36; failures/cases {}; raw-union rerun (informational) {rerun:?}",
            reports[0].tally.instances,
            reports[2].tally.instances,
            summary(&reports)
        ),
    );
    reports
}

fn determinism(ledger: &mut Ledger) {
    let body = |args: &[&str], jobs: &str| -> String {
        let out = Command::new(env!("CARGO_BIN_EXE_hyperring"))
            .args(args)
            .args(["--jobs", jobs])
            .env_remove(hyperring_cli::FLAGS_VAR)
            .output()
            .unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        serde_json::to_string(&doc["body"]).unwrap()
    };
    let runs: [&[&str]; 3] = [
        &["theorems", "--suite", "all", "--family", "fixtures"],
        &["theorems", "--suite", "T4,T16,H", "--family", "ra-sweep nmax=8 amax=2"],
        &["--ideal-product", "raw-union", "theorems", "--suite", "T8,T14", "--family", "product-sweep max-carrier=16"],
    ];
    let mismatched: Vec<String> = runs.iter().filter(|a| body(a, "1") != body(a, "8")).map(|a| a.join(" ")).collect();
    ledger.record(7, mismatched.is_empty(), format!("{} runs compared at --jobs 1 and 8, mismatched {mismatched:?}", runs.len()));
}

fn replay(ledger: &mut Ledger, reports: &[TheoremReport]) {
    let (mut replayed, mut diverged) = (0u64, Vec::new());
    for report in reports {
        replay_all(report, |k, r| {
            replayed += 1;
            if !r.reproduced() && diverged.len() < 3 {
                diverged.push(format!("{} #{k}", report.suite));
            }
        })
        .unwrap();
    }
    let (mut false_verdicts, mut unconfirmed) = (0u64, 0u64);
    for spec in ra_specs(8, 2) {
        let ring = Arc::new(build_ra(&spec).unwrap());
        let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
        for p in lattice.proper() {
            for pred in Predicate::ALL {
                let n = pred.needs_n().then_some(2);
                let is: Vec<Option<&Hyperideal>> =
                    if pred.needs_i() { lattice.ideals().iter().map(Some).collect() } else { vec![None] };
                for i in is {
                    let q = query(pred, p, i, n);
                    let r = q.evaluate(&lattice, DEFAULT_SCAN_CAP).unwrap();
                    if !r.verdict {
                        false_verdicts += 1;
                        let w = r.witness.expect("false verdicts carry a witness");
                        if !q.violated_at(&lattice, &w).unwrap() {
                            unconfirmed += 1;
                        }
                    }
                }
            }
        }
    }
    ledger.record(
        8,
        diverged.is_empty() && unconfirmed == 0,
        format!(
            "suite failures replayed {replayed}, diverged {diverged:?}; classify false verdicts on RA n≤8: {false_verdicts}, unconfirmed {unconfirmed}"
        ),
    );
}

fn localization(ledger: &mut Ledger, reports: &[TheoremReport]) {
    let t16 = reports.iter().find(|r| r.suite == Suite::T16).expect("T16 ran");
    let refused: BTreeMap<&str, u64> = t16
        .tally
        .notes
        .iter()
        .filter(|(k, _)| k.starts_with("localization"))
        .map(|(k, v)| (k.as_str(), *v))
        .collect();
    ledger.record(
        9,
        t16.passed(),
        format!(
            "T16 {} cases, {} passed, {} vacuous, {} failures; refused localizations (informational) {refused:?}; e.g. {:?}",
            t16.tally.cases,
            t16.tally.passed,
            t16.tally.vacuous,
            t16.failures().len(),
            t16.tally.observations.first()
        ),
    );
}

#[test]
fn acceptance() {
    let mut ledger = Ledger { rows: Vec::new() };
    let config = HarnessConfig::default();
    example_prime_vs_iprime(&mut ledger);
    example_intersection(&mut ledger);
    lattice_oracle(&mut ledger);
    let mut reports = default_family_suites(&mut ledger, &config);
    reports.extend(product_suites(&mut ledger, &config));
    determinism(&mut ledger);
    replay(&mut ledger, &reports);
    localization(&mut ledger, &reports);

    ledger.rows.sort_by_key(|r| r.0);
    println!("\nacceptance summary");
    for (id, ok, _) in &ledger.rows {
        println!("  {id}: {}", if *ok { "PASS" } else { "FAIL" });
    }
    let failed: Vec<u8> = ledger.rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
