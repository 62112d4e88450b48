//! Lattice, radical and primality cross-checked against exhaustive filters written
//! directly from the definitions over the multiplication tables.

use std::sync::Arc;

use hyperring_core::construct::{build_ra, product_hyperring, quotient_hyperring, RaSpec};
use hyperring_core::harness::ra_specs;
use hyperring_core::{ElementSet, FiniteHyperring, Hyperideal, IdealLattice};

fn members(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|&x| mask >> x & 1 == 1).collect()
}

/// Subsets containing zero, closed under `a - b`, absorbing every `r∘s`.
fn oracle_ideals(ring: &FiniteHyperring) -> Vec<Vec<usize>> {
    let m = ring.size();
    assert!(m <= 16, "oracle is exponential");
    let mut out = Vec::new();
    for mask in 0u64..(1 << m) {
        let s = members(mask, m);
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(ring.zero()) {
            continue;
        }
        let subgroup = s.iter().all(|&a| s.iter().all(|&b| has(ring.add(a, ring.neg(b)))));
        if subgroup && s.iter().all(|&a| (0..m).all(|r| ring.hmul(r, a).iter().all(has))) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// `a∘b ⊆ P ⇒ a ∈ P ∨ b ∈ P`, straight from the tables.
fn oracle_prime(ring: &FiniteHyperring, p: &[usize]) -> bool {
    let m = ring.size();
    let inside = |x: usize| p.contains(&x);
    p.len() < m
        && (0..m).all(|a| (0..m).all(|b| !ring.hmul(a, b).iter().all(inside) || inside(a) || inside(b)))
}

fn engine_ideals(lattice: &IdealLattice) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = lattice.ideals().iter().map(|i| i.set().to_vec()).collect();
    out.sort();
    out
}

fn check_ring(ring: &Arc<FiniteHyperring>, what: &str) {
    let lattice = IdealLattice::enumerate(ring, usize::MAX).unwrap();
    let oracle = oracle_ideals(ring);
    assert_eq!(engine_ideals(&lattice), oracle, "{what}");
    let primes: Vec<&Vec<usize>> = oracle.iter().filter(|p| oracle_prime(ring, p)).collect();
    for ideal in lattice.ideals() {
        let set = ideal.set().to_vec();
        assert_eq!(lattice.is_prime(ideal), primes.contains(&&set), "{what}: primality of {set:?}");
        if ideal.is_proper() {
            let mut radical = ring.full_set();
            for p in primes.iter().filter(|p| set.iter().all(|x| p.contains(x))) {
                radical.intersect_with(&ElementSet::from_indices(ring.size(), p.iter().copied()));
            }
            assert_eq!(lattice.radical(ideal).unwrap().set(), &radical, "{what}: radical of {set:?}");
        }
    }
}

#[test]
fn ra_lattices_match_subset_filter() {
    for spec in ra_specs(12, 2) {
        check_ring(&Arc::new(build_ra(&spec).unwrap()), &format!("{spec:?}"));
    }
}

#[test]
fn product_lattices_match_subset_filter() {
    let small = ra_specs(4, 2);
    for a in &small {
        for b in &small {
            let factors = [Arc::new(build_ra(a).unwrap()), Arc::new(build_ra(b).unwrap())];
            if factors[0].size() * factors[1].size() > 16 {
                continue;
            }
            let product = product_hyperring(&factors, 16).unwrap();
            check_ring(&product.ring, &format!("{a:?} x {b:?}"));
        }
    }
}

#[test]
fn quotient_lattices_match_subset_filter() {
    for spec in ra_specs(12, 2) {
        let ring = Arc::new(build_ra(&spec).unwrap());
        let lattice = IdealLattice::enumerate(&ring, usize::MAX).unwrap();
        for j in lattice.ideals().iter().filter(|j| j.is_proper() && !j.is_zero()) {
            let q = quotient_hyperring(j).unwrap();
            check_ring(&q.ring, &format!("{spec:?} / {:?}", j.set().to_vec()));
        }
    }
}

#[test]
fn generated_ideal_is_least_containing_ideal() {
    let spec = RaSpec::new(12, [2, 3]);
    let ring = Arc::new(build_ra(&spec).unwrap());
    let ideals = oracle_ideals(&ring);
    for gens in [vec![0], vec![4], vec![6, 4], vec![1], vec![9]] {
        let least = ideals
            .iter()
            .filter(|i| gens.iter().all(|g| i.contains(g)))
            .min_by_key(|i| i.len())
            .unwrap();
        assert_eq!(&Hyperideal::from_generators(&ring, &gens).unwrap().set().to_vec(), least, "{gens:?}");
    }
}
