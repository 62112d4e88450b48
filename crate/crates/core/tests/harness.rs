use std::sync::Arc;

use hyperring_core::construct::{build_ra, RaSpec};
use hyperring_core::harness::{
    merge, replay_all, replay_failure, run_instance, run_suite, Family, HarnessConfig, Instance, Outcome, RingRecipe,
    Suite,
};
use hyperring_core::{Hyperideal, IdealLattice};

fn z16() -> Family {
    Family::List(vec![RingRecipe::Ra(RaSpec::new(16, [0, 1]))])
}

/// `2∘x = {0, 2x}` meets both `IP` and `P − IP`, so (1) holds vacuously while (2)–(4) fail.
#[test]
fn mixed_products_split_the_characterisations_on_z16() {
    let ring = Arc::new(build_ra(&RaSpec::new(16, [0, 1])).unwrap());
    let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
    let at = |g: usize| lattice.index_of(Hyperideal::from_generators(&ring, &[g]).unwrap().set()).unwrap();
    let (p, i) = (at(4), at(2));

    let report = run_suite(Suite::T6, &z16(), &HarnessConfig::default()).unwrap();
    assert_eq!(report.tally.instances, 1);
    // Z16 has 5 ideals, 4 of them proper: 4 × 5 pairs.
    assert_eq!(report.tally.cases, 20);
    let failure = report.failures().iter().find(|f| f.case == [p, i]).expect("P = <4>, I = <2> fails");
    assert!(failure.detail.starts_with("(1)=true (2)=false (3)=false (4)=false"), "{}", failure.detail);
    assert!(failure.detail.contains("r=2: (P:r)={0,2,4,6,8,10,12,14} vs P u (IP:r)={0,4,8,12}"), "{}", failure.detail);
    // Only <8> and <4> are affected; <2> is prime.
    assert!(report.failures().iter().all(|f| f.case[0] == p || f.case[0] == at(8)));
    assert_eq!(report.tally.notes.get("pattern-TFFF").copied(), Some(report.failures().len() as u64));
}

#[test]
fn injected_fault_is_reported_and_traced_to_the_inclusion() {
    let config = HarnessConfig { corrupt_product: true, ..HarnessConfig::default() };
    let report = run_suite(Suite::T4, &Family::Fixtures, &config).unwrap();
    assert!(!report.passed());
    let clean = run_suite(Suite::T4, &Family::Fixtures, &HarnessConfig::default()).unwrap();
    assert!(report.failures().len() > clean.failures().len());

    let replay = replay_failure(&report, 0).unwrap();
    assert!(replay.reproduced());
    let last_check = &replay.trace[replay.trace.len() - 2];
    assert!(last_check.starts_with("check P^2 in IP: "), "{:#?}", replay.trace);
    assert!(matches!(replay.outcome, Outcome::Fail(_)));
}

#[test]
fn replays_are_deterministic_and_complete() {
    let report = run_suite(Suite::T8, &Family::Fixtures, &HarnessConfig::default()).unwrap();
    assert!(!report.failures().is_empty());
    let mut batch = Vec::new();
    replay_all(&report, |k, r| batch.push((k, r))).unwrap();
    assert_eq!(batch.len(), report.failures().len());
    for (k, r) in batch {
        assert!(r.reproduced(), "{:?}", r.failure);
        let single = replay_failure(&report, k).unwrap();
        assert_eq!(single.trace, r.trace);
    }
}

#[test]
fn serial_runner_is_a_fold_of_instances() {
    let config = HarnessConfig::default();
    let family = Family::QuotientSweep { nmax: 6, amax: 2 };
    let tallies = family.instances().iter().map(|i| run_instance(Suite::T7, i, &config).unwrap()).collect::<Vec<_>>();
    let folded = merge(Suite::T7, &family, &config, tallies);
    let direct = run_suite(Suite::T7, &family, &config).unwrap();
    assert_eq!(folded.tally, direct.tally);
    assert_eq!(folded.examined, family.instances().len() as u64);
}

#[test]
fn product_suites_skip_rings_that_are_not_products() {
    let report = run_suite(Suite::T8, &z16(), &HarnessConfig::default()).unwrap();
    assert_eq!(report.examined, 1);
    assert_eq!(report.tally.instances, 0);
    assert_eq!(report.tally.cases, 0);
}

#[test]
fn instance_keys_rebuild_their_rings() {
    let inst = Instance::new(RingRecipe::Product(vec![RaSpec::new(2, [1]), RaSpec::new(3, [0, 2])]));
    assert_eq!(RingRecipe::parse(&inst.key), Some(inst.recipe.clone()));
    assert_eq!(inst.recipe.build(64).unwrap().ring.size(), 6);
}
