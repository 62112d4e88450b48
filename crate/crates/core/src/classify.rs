//! Exhaustive decision procedures for primeness-type predicates.
//!
//! Every verdict is a certificate: a `false` carries the lexicographically
//! smallest violating tuple, and a `true` reports that the whole tuple space
//! was covered. Nothing is sampled.

use core::fmt;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::{Hyperideal, IdealLattice};
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// Default number of tuples a single query may cover.
pub const DEFAULT_SCAN_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Prime,
    WeaklyPrime,
    IPrime,
    Primary,
    IPrimary,
    TwoAbsorbing,
    NAbsorbing,
    NAbsorbingIPrime,
    TwoAbsorbingPrimary,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::Prime,
        Predicate::WeaklyPrime,
        Predicate::IPrime,
        Predicate::Primary,
        Predicate::IPrimary,
        Predicate::TwoAbsorbing,
        Predicate::NAbsorbing,
        Predicate::NAbsorbingIPrime,
        Predicate::TwoAbsorbingPrimary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Prime => "prime",
            Predicate::WeaklyPrime => "weaklyPrime",
            Predicate::IPrime => "IPrime",
            Predicate::Primary => "primary",
            Predicate::IPrimary => "IPrimary",
            Predicate::TwoAbsorbing => "twoAbsorbing",
            Predicate::NAbsorbing => "nAbsorbing",
            Predicate::NAbsorbingIPrime => "nAbsorbingIPrime",
            Predicate::TwoAbsorbingPrimary => "twoAbsorbingPrimary",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|p| p.name() == name)
    }

    pub fn needs_i(self) -> bool {
        matches!(self, Predicate::IPrime | Predicate::IPrimary | Predicate::NAbsorbingIPrime)
    }

    pub fn needs_n(self) -> bool {
        matches!(self, Predicate::NAbsorbing | Predicate::NAbsorbingIPrime)
    }

    /// Length of the tuples the predicate quantifies over.
    pub fn arity(self, n: Option<usize>) -> usize {
        match self {
            Predicate::TwoAbsorbing | Predicate::TwoAbsorbingPrimary => 3,
            Predicate::NAbsorbing | Predicate::NAbsorbingIPrime => n.unwrap_or(1) + 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub verdict: bool,
    /// Smallest violating tuple when the verdict is false.
    pub witness: Option<Vec<usize>>,
    /// Ordered tuples covered before stopping; the full space on a true verdict.
    pub scanned: u64,
}

impl ClassificationReport {
    fn pass(scanned: u64) -> Self {
        ClassificationReport { verdict: true, witness: None, scanned }
    }

    fn fail(witness: Vec<usize>, scanned: u64) -> Self {
        ClassificationReport { verdict: false, witness: Some(witness), scanned }
    }
}

fn tuple_space(m: usize, k: usize) -> u128 {
    (m as u128).pow(k as u32)
}

fn check_cap(m: usize, k: usize, cap: u64) -> Result<()> {
    let required = tuple_space(m, k);
    if required > u128::from(cap) {
        Err(Error::ScanCapExceeded { required, cap })
    } else {
        Ok(())
    }
}

fn require_proper(p: &Hyperideal) -> Result<()> {
    if p.is_proper() {
        Ok(())
    } else {
        Err(Error::ImproperIdeal)
    }
}

/// Scans ordered pairs: a violation is `a∘b ⊆ hypothesis` with `accept(a, b)` false.
fn pair_scan(
    ring: &FiniteHyperring,
    hypothesis: &ElementSet,
    accept: impl Fn(usize, usize) -> bool,
) -> ClassificationReport {
    let m = ring.size();
    let mut scanned = 0u64;
    for a in 0..m {
        for b in 0..m {
            scanned += 1;
            if ring.hmul(a, b).is_subset(hypothesis) && !accept(a, b) {
                return ClassificationReport::fail(vec![a, b], scanned);
            }
        }
    }
    ClassificationReport::pass(scanned)
}

/// Smallest pair `(a, b)` with `a∘b ⊆ P` and `a, b ∉ P`.
pub fn prime_witness(p: &Hyperideal) -> Option<(usize, usize)> {
    let ring = p.ring();
    let outside = p.set().complement();
    for a in &outside {
        for b in &outside {
            if ring.hmul(a, b).is_subset(p.set()) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_prime(p: &Hyperideal) -> Result<ClassificationReport> {
    require_proper(p)?;
    Ok(pair_scan(p.ring(), p.set(), |a, b| p.contains(a) || p.contains(b)))
}

/// `a∘b ⊆ P ∖ excluded ⇒ a ∈ P ∨ b ∈ P`; the common core of the I-prime family.
pub fn is_prime_against(p: &Hyperideal, excluded: &ElementSet) -> Result<ClassificationReport> {
    require_proper(p)?;
    if excluded.universe() != p.ring().size() {
        return Err(Error::RingMismatch);
    }
    let hypothesis = p.set().difference(excluded);
    Ok(pair_scan(p.ring(), &hypothesis, |a, b| p.contains(a) || p.contains(b)))
}

pub fn is_weakly_prime(p: &Hyperideal) -> Result<ClassificationReport> {
    let zero = p.ring().singleton(p.ring().zero());
    is_prime_against(p, &zero)
}

/// `a∘b ⊆ P − IP ⇒ a ∈ P ∨ b ∈ P`, with `IP` the generated product ideal.
pub fn is_i_prime(p: &Hyperideal, i: &Hyperideal) -> Result<ClassificationReport> {
    p.same_ring(i)?;
    let ip = i.product(p)?;
    is_prime_against(p, ip.set())
}

fn primary_against(
    p: &Hyperideal,
    excluded: &ElementSet,
    radical: &Hyperideal,
) -> Result<ClassificationReport> {
    require_proper(p)?;
    let hypothesis = p.set().difference(excluded);
    Ok(pair_scan(p.ring(), &hypothesis, |a, b| p.contains(a) || radical.contains(b)))
}

pub fn is_primary(p: &Hyperideal, lattice: &IdealLattice) -> Result<ClassificationReport> {
    let radical = lattice.radical(p)?;
    primary_against(p, &p.ring().empty_set(), &radical)
}

pub fn is_i_primary(p: &Hyperideal, i: &Hyperideal, lattice: &IdealLattice) -> Result<ClassificationReport> {
    p.same_ring(i)?;
    let radical = lattice.radical(p)?;
    let ip = i.product(p)?;
    primary_against(p, ip.set(), &radical)
}

/// Elements that force every further product to leave `hypothesis`: the
/// largest `N ⊆ R ∖ hypothesis` with `z∘x ∩ N ≠ ∅` for all `z ∈ N` and all `x`.
fn escaping_core(ring: &FiniteHyperring, hypothesis: &ElementSet) -> ElementSet {
    let m = ring.size();
    let mut core = hypothesis.complement();
    loop {
        let mut changed = false;
        for z in core.clone().iter() {
            if (0..m).any(|x| ring.hmul(z, x).is_disjoint(&core)) {
                core.remove(z);
                changed = true;
            }
        }
        if !changed {
            return core;
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of ordered `k`-tuples over `0..m` whose sorted form begins with the
/// non-decreasing `prefix` and continues with values `≥ prefix.last()`.
fn ordered_completions(prefix: &[usize], k: usize, m: usize) -> u128 {
    let last = *prefix.last().expect("nonempty prefix");
    let rest = k - prefix.len();
    let tail_values = (m - last - 1) as u128;
    let mut denom_fixed = 1u128;
    let mut last_mult = 0usize;
    let mut i = 0;
    while i < prefix.len() {
        let mut j = i;
        while j < prefix.len() && prefix[j] == prefix[i] {
            j += 1;
        }
        if prefix[i] == last {
            last_mult = j - i;
        } else {
            denom_fixed *= factorial(j - i);
        }
        i = j;
    }
    let kf = factorial(k);
    (0..=rest)
        .map(|extra| {
            let free = rest - extra;
            kf / (denom_fixed * factorial(last_mult + extra) * factorial(free))
                * tail_values.pow(free as u32)
        })
        .sum()
}

struct SymmetricScan<'a> {
    ring: &'a FiniteHyperring,
    k: usize,
    hypothesis: &'a ElementSet,
    core: ElementSet,
    target: &'a ElementSet,
    scanned: u128,
    tuple: Vec<usize>,
}

impl SymmetricScan<'_> {
    /// Some product omitting one factor lands in the target.
    fn absorbs(&self) -> bool {
        let t = &self.tuple;
        (0..t.len()).any(|skip| {
            if skip > 0 && t[skip] == t[skip - 1] {
                return false;
            }
            let mut acc: Option<ElementSet> = None;
            for (idx, &x) in t.iter().enumerate() {
                if idx == skip {
                    continue;
                }
                acc = Some(match acc {
                    None => self.ring.singleton(x),
                    Some(s) => self.ring.product_with_element(&s, x),
                });
            }
            acc.is_some_and(|s| s.is_subset(self.target))
        })
    }

    fn descend(&mut self, depth: usize, start: usize, prefix: Option<&ElementSet>) -> bool {
        let m = self.ring.size();
        for x in start..m {
            self.tuple.push(x);
            let product = match prefix {
                None => self.ring.singleton(x),
                Some(s) => self.ring.product_with_element(s, x),
            };
            if depth + 1 == self.k {
                self.scanned += orbit(&self.tuple);
                if product.is_subset(self.hypothesis) && !self.absorbs() {
                    return true;
                }
            } else if product.intersects(&self.core) {
                self.scanned += ordered_completions(&self.tuple, self.k, m);
            } else if self.descend(depth + 1, x, Some(&product)) {
                return true;
            }
            self.tuple.pop();
        }
        false
    }
}

/// Number of distinct orderings of a sorted tuple.
fn orbit(sorted: &[usize]) -> u128 {
    let mut denom = 1u128;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        denom *= factorial(j - i);
        i = j;
    }
    factorial(sorted.len()) / denom
}

/// `x₁⋯x_k ⊆ hypothesis ⇒ ∃i: ∏_{j≠i} x_j ⊆ target`, over all `k`-tuples.
///
/// Both sides are symmetric in the tuple, so only non-decreasing tuples are
/// formed; each stands for its whole orbit of orderings. Prefixes whose product
/// meets the escaping core are skipped, since no completion can satisfy the
/// hypothesis.
pub fn absorbing_scan(
    ring: &FiniteHyperring,
    hypothesis: &ElementSet,
    target: &ElementSet,
    k: usize,
    cap: u64,
) -> Result<ClassificationReport> {
    let m = ring.size();
    if k < 2 {
        return Err(Error::MissingParameter("n >= 1"));
    }
    check_cap(m, k, cap)?;
    let mut scan = SymmetricScan {
        ring,
        k,
        hypothesis,
        core: escaping_core(ring, hypothesis),
        target,
        scanned: 0,
        tuple: Vec::with_capacity(k),
    };
    let found = scan.descend(0, 0, None);
    let scanned = scan.scanned as u64;
    Ok(if found {
        ClassificationReport::fail(scan.tuple, scanned)
    } else {
        debug_assert_eq!(scan.scanned, tuple_space(m, k));
        ClassificationReport::pass(scanned)
    })
}

pub fn is_n_absorbing(p: &Hyperideal, n: usize, cap: u64) -> Result<ClassificationReport> {
    require_proper(p)?;
    match n {
        0 => Err(Error::MissingParameter("n >= 1")),
        1 => is_prime(p),
        _ => absorbing_scan(p.ring(), p.set(), p.set(), n + 1, cap),
    }
}

/// n-absorbing test with hypothesis set `P ∖ excluded`.
pub fn is_n_absorbing_against(
    p: &Hyperideal,
    excluded: &ElementSet,
    n: usize,
    cap: u64,
) -> Result<ClassificationReport> {
    require_proper(p)?;
    match n {
        0 => Err(Error::MissingParameter("n >= 1")),
        1 => is_prime_against(p, excluded),
        _ => {
            let hypothesis = p.set().difference(excluded);
            absorbing_scan(p.ring(), &hypothesis, p.set(), n + 1, cap)
        }
    }
}

pub fn is_n_absorbing_i_prime(
    p: &Hyperideal,
    i: &Hyperideal,
    n: usize,
    cap: u64,
) -> Result<ClassificationReport> {
    p.same_ring(i)?;
    let ip = i.product(p)?;
    is_n_absorbing_against(p, ip.set(), n, cap)
}

/// `xyz ⊆ P ⇒ xy ⊆ P ∨ xz ⊆ √P ∨ yz ⊆ √P` over ordered triples.
pub fn is_two_absorbing_primary(
    p: &Hyperideal,
    lattice: &IdealLattice,
    cap: u64,
) -> Result<ClassificationReport> {
    require_proper(p)?;
    let ring = p.ring();
    let m = ring.size();
    check_cap(m, 3, cap)?;
    let radical = lattice.radical(p)?;
    let mut scanned = 0u64;
    for x in 0..m {
        for y in 0..m {
            let xy = ring.hmul(x, y);
            for z in 0..m {
                scanned += 1;
                if !ring.product_with_element(xy, z).is_subset(p.set()) {
                    continue;
                }
                let ok = xy.is_subset(p.set())
                    || ring.hmul(x, z).is_subset(radical.set())
                    || ring.hmul(y, z).is_subset(radical.set());
                if !ok {
                    return Ok(ClassificationReport::fail(vec![x, y, z], scanned));
                }
            }
        }
    }
    Ok(ClassificationReport::pass(scanned))
}

/// A fully specified predicate question about one hyperideal.
#[derive(Debug, Clone)]
pub struct PredicateQuery {
    pub predicate: Predicate,
    pub p: Hyperideal,
    pub i: Option<Hyperideal>,
    pub n: Option<usize>,
}

impl PredicateQuery {
    pub fn new(
        predicate: Predicate,
        p: Hyperideal,
        i: Option<Hyperideal>,
        n: Option<usize>,
    ) -> Result<Self> {
        require_proper(&p)?;
        match (&i, predicate.needs_i()) {
            (None, true) => return Err(Error::MissingParameter("I")),
            (Some(i), true) => p.same_ring(i)?,
            (Some(_), false) => return Err(Error::MissingParameter("no I for this predicate")),
            (None, false) => {}
        }
        match (n, predicate.needs_n()) {
            (None, true) | (Some(0), true) => return Err(Error::MissingParameter("n >= 1")),
            (Some(_), false) => return Err(Error::MissingParameter("no n for this predicate")),
            _ => {}
        }
        Ok(PredicateQuery { predicate, p, i, n })
    }

    fn i(&self) -> &Hyperideal {
        self.i.as_ref().expect("validated query carries I")
    }

    fn n(&self) -> usize {
        self.n.expect("validated query carries n")
    }

    pub fn arity(&self) -> usize {
        self.predicate.arity(self.n)
    }

    pub fn evaluate(&self, lattice: &IdealLattice, cap: u64) -> Result<ClassificationReport> {
        let p = &self.p;
        match self.predicate {
            Predicate::Prime => is_prime(p),
            Predicate::WeaklyPrime => is_weakly_prime(p),
            Predicate::IPrime => is_i_prime(p, self.i()),
            Predicate::Primary => is_primary(p, lattice),
            Predicate::IPrimary => is_i_primary(p, self.i(), lattice),
            Predicate::TwoAbsorbing => is_n_absorbing(p, 2, cap),
            Predicate::NAbsorbing => is_n_absorbing(p, self.n(), cap),
            Predicate::NAbsorbingIPrime => is_n_absorbing_i_prime(p, self.i(), self.n(), cap),
            Predicate::TwoAbsorbingPrimary => is_two_absorbing_primary(p, lattice, cap),
        }
    }

    /// Re-checks a single tuple from first principles: true when it violates the predicate.
    pub fn violated_at(&self, lattice: &IdealLattice, witness: &[usize]) -> Result<bool> {
        if witness.len() != self.arity() {
            return Ok(false);
        }
        let ring = self.p.ring();
        let p = self.p.set();
        let product = ring.tuple_product(witness)?;
        let excluded = match self.predicate {
            Predicate::WeaklyPrime => ring.singleton(ring.zero()),
            Predicate::IPrime | Predicate::IPrimary | Predicate::NAbsorbingIPrime => {
                self.i().product(&self.p)?.into_set()
            }
            _ => ring.empty_set(),
        };
        let hypothesis = p.difference(&excluded);
        if !product.is_subset(&hypothesis) {
            return Ok(false);
        }
        let omitted = |skip: usize| -> Result<ElementSet> {
            let rest: Vec<usize> =
                witness.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &x)| x).collect();
            ring.tuple_product(&rest)
        };
        let holds = match self.predicate {
            Predicate::Primary | Predicate::IPrimary => {
                let radical = lattice.radical(&self.p)?;
                p.contains(witness[0]) || radical.contains(witness[1])
            }
            Predicate::TwoAbsorbingPrimary => {
                let radical = lattice.radical(&self.p)?;
                ring.tuple_product(&witness[..2])?.is_subset(p)
                    || ring.tuple_product(&[witness[0], witness[2]])?.is_subset(radical.set())
                    || ring.tuple_product(&witness[1..])?.is_subset(radical.set())
            }
            _ => {
                let mut any = false;
                for skip in 0..witness.len() {
                    if omitted(skip)?.is_subset(p) {
                        any = true;
                        break;
                    }
                }
                any
            }
        };
        Ok(!holds)
    }
}
