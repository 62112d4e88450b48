//! Hyperideal calculus: membership, generation, products, colons, radicals and
//! the full lattice of hyperideals of a finite hyperring.

use core::fmt;

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::classify;
use crate::error::{Error, Result};
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// Default carrier-size cap for lattice enumeration.
pub const DEFAULT_LATTICE_CAP: usize = 64;

/// The first clause a candidate set fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    WrongCarrier,
    MissingZero,
    NotAddClosed { a: usize, b: usize },
    NotNegClosed { a: usize },
    /// `r∘i ⊄ S` for `i ∈ S`.
    NotAbsorbing { r: usize, i: usize },
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealViolation::WrongCarrier => write!(f, "set belongs to a different carrier"),
            IdealViolation::MissingZero => write!(f, "zero is missing"),
            IdealViolation::NotAddClosed { a, b } => write!(f, "{a}+{b} escapes the set"),
            IdealViolation::NotNegClosed { a } => write!(f, "-{a} escapes the set"),
            IdealViolation::NotAbsorbing { r, i } => write!(f, "{r}∘{i} escapes the set"),
        }
    }
}

/// Checks the subgroup and absorption clauses, returning the first violation.
pub fn is_hyperideal(ring: &FiniteHyperring, s: &ElementSet) -> core::result::Result<(), IdealViolation> {
    if s.universe() != ring.size() {
        return Err(IdealViolation::WrongCarrier);
    }
    if !s.contains(ring.zero()) {
        return Err(IdealViolation::MissingZero);
    }
    for a in s {
        if !s.contains(ring.neg(a)) {
            return Err(IdealViolation::NotNegClosed { a });
        }
        for b in s {
            if !s.contains(ring.add(a, b)) {
                return Err(IdealViolation::NotAddClosed { a, b });
            }
        }
    }
    for r in 0..ring.size() {
        for i in s {
            if !ring.hmul(r, i).is_subset(s) {
                return Err(IdealViolation::NotAbsorbing { r, i });
            }
        }
    }
    Ok(())
}

/// A hyperideal together with the hyperring it lives in.
#[derive(Clone)]
pub struct Hyperideal {
    ring: Arc<FiniteHyperring>,
    set: ElementSet,
}

impl PartialEq for Hyperideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.fingerprint() == other.ring.fingerprint() && self.set == other.set
    }
}

impl Eq for Hyperideal {}

impl fmt::Debug for Hyperideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperideal{}", self.set)
    }
}

impl fmt::Display for Hyperideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_set(&self.set))
    }
}

/// Smallest subset containing `seed ∪ {0}` closed under addition, negation and,
/// when `absorb` is set, hypermultiplication by ring elements.
fn close(ring: &FiniteHyperring, seed: &ElementSet, absorb: bool) -> ElementSet {
    let mut set = ring.empty_set();
    let mut queue: Vec<usize> = Vec::new();
    let push = |set: &mut ElementSet, queue: &mut Vec<usize>, x: usize| {
        if set.insert(x) {
            queue.push(x);
        }
    };
    push(&mut set, &mut queue, ring.zero());
    for x in seed {
        push(&mut set, &mut queue, x);
    }
    let mut members: Vec<usize> = Vec::new();
    while let Some(e) = queue.pop() {
        members.push(e);
        push(&mut set, &mut queue, ring.neg(e));
        for k in 0..members.len() {
            let s = ring.add(e, members[k]);
            push(&mut set, &mut queue, s);
        }
        if absorb {
            for r in 0..ring.size() {
                for c in ring.hmul(r, e) {
                    push(&mut set, &mut queue, c);
                }
            }
        }
    }
    set
}

impl Hyperideal {
    /// Wraps a set after checking the hyperideal clauses.
    pub fn new(ring: Arc<FiniteHyperring>, set: ElementSet) -> Result<Self> {
        is_hyperideal(&ring, &set).map_err(Error::NotAnIdeal)?;
        Ok(Hyperideal { ring, set })
    }

    pub fn zero(ring: &Arc<FiniteHyperring>) -> Self {
        Hyperideal { set: ring.singleton(ring.zero()), ring: ring.clone() }
    }

    pub fn whole(ring: &Arc<FiniteHyperring>) -> Self {
        Hyperideal { set: ring.full_set(), ring: ring.clone() }
    }

    /// Least hyperideal containing `s`.
    pub fn generated(ring: &Arc<FiniteHyperring>, s: &ElementSet) -> Result<Self> {
        if s.universe() != ring.size() {
            return Err(Error::RingMismatch);
        }
        Ok(Hyperideal { set: close(ring, s, true), ring: ring.clone() })
    }

    /// Least hyperideal containing the listed generators.
    pub fn from_generators(ring: &Arc<FiniteHyperring>, generators: &[usize]) -> Result<Self> {
        for &g in generators {
            ring.check_element(g)?;
        }
        let seed = ElementSet::from_indices(ring.size(), generators.iter().copied());
        Self::generated(ring, &seed)
    }

    pub fn ring(&self) -> &Arc<FiniteHyperring> {
        &self.ring
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }

    pub fn contains(&self, element: usize) -> bool {
        self.set.contains(element)
    }

    pub fn is_proper(&self) -> bool {
        !self.set.is_full()
    }

    pub fn is_zero(&self) -> bool {
        self.set.len() == 1
    }

    pub fn is_subset(&self, other: &Hyperideal) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn same_ring(&self, other: &Hyperideal) -> Result<()> {
        if self.ring.fingerprint() == other.ring.fingerprint() && self.ring.size() == other.ring.size() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The raw union `⋃ p∘q` over `p ∈ self`, `q ∈ other` (not closed in general).
    pub fn raw_product(&self, other: &Hyperideal) -> Result<ElementSet> {
        self.same_ring(other)?;
        Ok(self.ring.product_unchecked(&self.set, &other.set))
    }

    /// The hyperideal generated by every `p∘q`.
    pub fn product(&self, other: &Hyperideal) -> Result<Hyperideal> {
        let raw = self.raw_product(other)?;
        Ok(Hyperideal { set: close(&self.ring, &raw, true), ring: self.ring.clone() })
    }

    /// `Pᵏ` as an iterated product; `k = 0` is rejected.
    pub fn power(&self, k: usize) -> Result<Hyperideal> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &Hyperideal) -> Result<Hyperideal> {
        self.same_ring(other)?;
        let seed = self.set.union(&other.set);
        Ok(Hyperideal { set: close(&self.ring, &seed, true), ring: self.ring.clone() })
    }

    pub fn intersect(&self, other: &Hyperideal) -> Result<Hyperideal> {
        self.same_ring(other)?;
        Ok(Hyperideal { set: self.set.intersection(&other.set), ring: self.ring.clone() })
    }

    /// `(P : r) = {s : r∘s ⊆ P}`.
    pub fn colon(&self, r: usize) -> Result<Hyperideal> {
        self.ring.check_element(r)?;
        let set = colon_set(&self.ring, &self.set, r);
        is_hyperideal(&self.ring, &set).map_err(Error::NotAnIdeal)?;
        Ok(Hyperideal { set, ring: self.ring.clone() })
    }

    /// Limit of the descending chain `P ⊇ P² ⊇ P³ ⊇ …`, with the step at which it stabilised.
    pub fn power_limit(&self) -> Result<(Hyperideal, usize)> {
        let mut current = self.clone();
        for step in 1..=self.ring.size() + 1 {
            let next = current.product(self)?;
            if next == current {
                return Ok((current, step));
            }
            current = next;
        }
        unreachable!("descending chain in a finite carrier must stabilise")
    }
}

/// `{s : r∘s ⊆ target}` for any target set.
pub fn colon_set(ring: &FiniteHyperring, target: &ElementSet, r: usize) -> ElementSet {
    let mut out = ring.empty_set();
    for s in 0..ring.size() {
        if ring.hmul(r, s).is_subset(target) {
            out.insert(s);
        }
    }
    out
}

/// Every hyperideal of a ring, in canonical order (cardinality, then mask).
#[derive(Clone, Debug)]
pub struct IdealLattice {
    ring: Arc<FiniteHyperring>,
    ideals: Vec<Hyperideal>,
    primes: Vec<usize>,
}

impl IdealLattice {
    /// Enumerates additive subgroups, then keeps those closed under absorption.
    pub fn enumerate(ring: &Arc<FiniteHyperring>, cap: usize) -> Result<Self> {
        let m = ring.size();
        if m > cap {
            return Err(Error::TooLarge { size: m, cap });
        }
        let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
        let mut stack = alloc::vec![close(ring, &ring.empty_set(), false)];
        seen.insert(stack[0].clone());
        while let Some(h) = stack.pop() {
            for g in 0..m {
                if h.contains(g) {
                    continue;
                }
                let mut seed = h.clone();
                seed.insert(g);
                let next = close(ring, &seed, false);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        let absorb: Vec<ElementSet> = (0..m)
            .map(|i| {
                let mut s = ring.empty_set();
                for r in 0..m {
                    s.union_with(ring.hmul(r, i));
                }
                s
            })
            .collect();
        let ideals: Vec<Hyperideal> = seen
            .into_iter()
            .filter(|h| h.iter().all(|i| absorb[i].is_subset(h)))
            .map(|set| Hyperideal { ring: ring.clone(), set })
            .collect();
        let primes = ideals
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_proper() && classify::prime_witness(p).is_none())
            .map(|(k, _)| k)
            .collect();
        Ok(IdealLattice { ring: ring.clone(), ideals, primes })
    }

    pub fn ring(&self) -> &Arc<FiniteHyperring> {
        &self.ring
    }

    pub fn ideals(&self) -> &[Hyperideal] {
        &self.ideals
    }

    pub fn proper(&self) -> impl Iterator<Item = &Hyperideal> {
        self.ideals.iter().filter(|p| p.is_proper())
    }

    pub fn primes(&self) -> impl Iterator<Item = &Hyperideal> {
        self.primes.iter().map(|&k| &self.ideals[k])
    }

    pub fn prime_indices(&self) -> &[usize] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn index_of(&self, set: &ElementSet) -> Option<usize> {
        self.ideals.binary_search_by(|p| p.set.cmp(set)).ok()
    }

    pub fn is_prime(&self, p: &Hyperideal) -> bool {
        self.index_of(p.set()).is_some_and(|k| self.primes.binary_search(&k).is_ok())
    }

    /// Intersection of all primes containing `p`; the whole ring when there are none.
    pub fn radical(&self, p: &Hyperideal) -> Result<Hyperideal> {
        if p.ring.fingerprint() != self.ring.fingerprint() {
            return Err(Error::RingMismatch);
        }
        let mut set = self.ring.full_set();
        for q in self.primes() {
            if p.set.is_subset(&q.set) {
                set.intersect_with(&q.set);
            }
        }
        Ok(Hyperideal { ring: self.ring.clone(), set })
    }

    /// Primes containing `p` that are minimal under inclusion among such primes.
    pub fn minimal_primes(&self, p: &Hyperideal) -> Result<Vec<Hyperideal>> {
        if p.ring.fingerprint() != self.ring.fingerprint() {
            return Err(Error::RingMismatch);
        }
        let over: Vec<&Hyperideal> = self.primes().filter(|q| p.set.is_subset(&q.set)).collect();
        Ok(over
            .iter()
            .filter(|q| !over.iter().any(|o| o.set != q.set && o.set.is_subset(&q.set)))
            .map(|q| (*q).clone())
            .collect())
    }

    /// No hyperideals besides zero and the whole ring, and at least two elements.
    pub fn is_hyperfield(&self) -> bool {
        self.ring.size() >= 2 && self.ideals.len() == 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_ra, RaSpec};
    use alloc::vec;

    fn ra(n: usize, a: &[usize]) -> Arc<FiniteHyperring> {
        Arc::new(build_ra(&RaSpec::new(n, a.iter().copied())).unwrap())
    }

    fn ideal(r: &Arc<FiniteHyperring>, xs: &[usize]) -> Hyperideal {
        Hyperideal::new(r.clone(), ElementSet::from_indices(r.size(), xs.iter().copied())).unwrap()
    }

    fn sets(l: &IdealLattice) -> Vec<Vec<usize>> {
        l.ideals().iter().map(|p| p.set().to_vec()).collect()
    }

    #[test]
    fn membership_examples() {
        let z6 = ra(6, &[0, 1]);
        assert!(is_hyperideal(&z6, &z6.singleton(0)).is_ok());
        assert!(is_hyperideal(&z6, &ElementSet::from_indices(6, [0, 2, 4])).is_ok());
        assert_eq!(
            is_hyperideal(&z6, &ElementSet::from_indices(6, [0, 2])),
            Err(IdealViolation::NotNegClosed { a: 2 })
        );
        assert_eq!(
            is_hyperideal(&z6, &ElementSet::from_indices(6, [0, 2, 4, 5, 1])),
            Err(IdealViolation::NotAddClosed { a: 1, b: 2 })
        );
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(sets(&IdealLattice::enumerate(&ra(7, &[1]), 64).unwrap()), vec![vec![0], (0..7).collect()]);
        assert_eq!(
            sets(&IdealLattice::enumerate(&ra(6, &[0, 1]), 64).unwrap()),
            vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]
        );
        assert_eq!(
            sets(&IdealLattice::enumerate(&ra(8, &[0, 1]), 64).unwrap()),
            vec![vec![0], vec![0, 4], vec![0, 2, 4, 6], (0..8).collect()]
        );
        assert!(matches!(
            IdealLattice::enumerate(&ra(8, &[1]), 4),
            Err(Error::TooLarge { size: 8, cap: 4 })
        ));
    }

    #[test]
    fn generated_examples() {
        let z6 = ra(6, &[0, 1]);
        assert_eq!(Hyperideal::generated(&z6, &z6.empty_set()).unwrap().set().to_vec(), vec![0]);
        assert_eq!(Hyperideal::from_generators(&z6, &[2]).unwrap().set().to_vec(), vec![0, 2, 4]);
        let z8 = ra(8, &[0, 1]);
        assert_eq!(Hyperideal::from_generators(&z8, &[2]).unwrap().set().to_vec(), vec![0, 2, 4, 6]);
        assert!(matches!(Hyperideal::from_generators(&z8, &[9]), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn product_power_sum_intersect() {
        let z16 = ra(16, &[0, 1]);
        let two = ideal(&z16, &[0, 2, 4, 6, 8, 10, 12, 14]);
        let four = ideal(&z16, &[0, 4, 8, 12]);
        assert_eq!(two.product(&four).unwrap().set().to_vec(), vec![0, 8]);
        let z8 = ra(8, &[0, 1]);
        let p = ideal(&z8, &[0, 2, 4, 6]);
        let q = ideal(&z8, &[0, 4]);
        assert_eq!(p.product(&q).unwrap().set().to_vec(), vec![0]);
        assert_eq!(p.product(&Hyperideal::zero(&z8)).unwrap().set().to_vec(), vec![0]);
        assert_eq!(p.power(1).unwrap(), p);
        // 2∘2 = {0,4}
        assert_eq!(p.power(2).unwrap().set().to_vec(), vec![0, 4]);
        assert_eq!(p.power(3).unwrap().set().to_vec(), vec![0]);
        assert_eq!(p.power(0), Err(Error::ZeroExponent));
        assert_eq!(p.sum(&q).unwrap(), p);
        let z6 = ra(6, &[0, 1]);
        let a = ideal(&z6, &[0, 2, 4]);
        let b = ideal(&z6, &[0, 3]);
        assert_eq!(a.intersect(&b).unwrap().set().to_vec(), vec![0]);
        assert_eq!(a.sum(&b).unwrap(), Hyperideal::whole(&z6));
        assert_eq!(a.product(&ideal(&z8, &[0])), Err(Error::RingMismatch));
    }

    #[test]
    fn colon_examples() {
        let z8 = ra(8, &[0, 1]);
        let q = ideal(&z8, &[0, 4]);
        assert_eq!(q.colon(2).unwrap().set().to_vec(), vec![0, 2, 4, 6]);
        assert_eq!(q.colon(0).unwrap(), Hyperideal::whole(&z8));
        let whole = Hyperideal::whole(&z8);
        for r in 0..8 {
            assert_eq!(whole.colon(r).unwrap(), whole);
        }
    }

    #[test]
    fn radical_and_minimal_primes() {
        let z8 = ra(8, &[0, 1]);
        let l8 = IdealLattice::enumerate(&z8, 64).unwrap();
        let q = ideal(&z8, &[0, 4]);
        assert_eq!(l8.radical(&q).unwrap().set().to_vec(), vec![0, 2, 4, 6]);
        assert_eq!(
            l8.minimal_primes(&q).unwrap().iter().map(|p| p.set().to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 2, 4, 6]]
        );
        let z6 = ra(6, &[0, 1]);
        let l6 = IdealLattice::enumerate(&z6, 64).unwrap();
        let zero = Hyperideal::zero(&z6);
        assert_eq!(l6.radical(&zero).unwrap().set().to_vec(), vec![0]);
        assert_eq!(
            l6.minimal_primes(&zero).unwrap().iter().map(|p| p.set().to_vec()).collect::<Vec<_>>(),
            vec![vec![0, 3], vec![0, 2, 4]]
        );
        for p in l6.primes() {
            assert_eq!(&l6.radical(p).unwrap(), p);
            assert_eq!(l6.minimal_primes(p).unwrap(), vec![p.clone()]);
        }
    }

    #[test]
    fn hyperfield_examples() {
        assert!(IdealLattice::enumerate(&ra(5, &[1]), 64).unwrap().is_hyperfield());
        assert!(!IdealLattice::enumerate(&ra(6, &[0, 1]), 64).unwrap().is_hyperfield());
    }
}
