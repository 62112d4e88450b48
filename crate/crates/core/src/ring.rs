//! Finite multiplicative hyperrings as explicit tables.
//!
//! A [`FiniteHyperring`] has an ordinary abelian group for addition and a
//! hypermultiplication that sends each pair of elements to a nonempty
//! [`ElementSet`]. Tables are validated once at construction; after that every
//! set-extended operation may fold in any order.

use core::fmt;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, MalformedTables, Result};
use crate::set::ElementSet;

/// Raw table candidate, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTables {
    pub labels: Vec<String>,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub hmul: Vec<Vec<Vec<usize>>>,
}

impl RingTables {
    /// Default labels `0..m`.
    pub fn numeric_labels(m: usize) -> Vec<String> {
        (0..m).map(|i| i.to_string()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distributivity {
    /// `a∘(b+c) ⊆ a∘b + a∘c`
    Inclusive,
    /// `a∘(b+c) = a∘b + a∘c`
    Strong,
}

impl Distributivity {
    pub fn name(self) -> &'static str {
        match self {
            Distributivity::Inclusive => "inclusive",
            Distributivity::Strong => "strong",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    /// `a + neg(a) = 0` and every row of the addition table is a permutation.
    AddInverse,
    NonemptyProduct,
    MulCommutative,
    MulAssociative,
    InclusiveDistributivity,
    SignCompatibility,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::AddAssociative,
        Axiom::AddCommutative,
        Axiom::AddIdentity,
        Axiom::AddInverse,
        Axiom::NonemptyProduct,
        Axiom::MulCommutative,
        Axiom::MulAssociative,
        Axiom::InclusiveDistributivity,
        Axiom::SignCompatibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::AddAssociative => "add-associative",
            Axiom::AddCommutative => "add-commutative",
            Axiom::AddIdentity => "add-identity",
            Axiom::AddInverse => "add-inverse",
            Axiom::NonemptyProduct => "nonempty-hyperproduct",
            Axiom::MulCommutative => "mul-commutative",
            Axiom::MulAssociative => "mul-associative",
            Axiom::InclusiveDistributivity => "inclusive-distributivity",
            Axiom::SignCompatibility => "sign-compatibility",
        }
    }

    fn arity(self) -> usize {
        match self {
            Axiom::AddIdentity | Axiom::AddInverse => 1,
            Axiom::AddCommutative
            | Axiom::NonemptyProduct
            | Axiom::MulCommutative
            | Axiom::SignCompatibility => 2,
            Axiom::AddAssociative | Axiom::MulAssociative | Axiom::InclusiveDistributivity => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

/// Outcome of checking the hyperring axioms on a table candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
    /// Set only when every axiom holds.
    pub distributivity: Option<Distributivity>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A validated finite multiplicative hyperring.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteHyperring {
    labels: Vec<String>,
    zero: usize,
    add: Vec<usize>,
    neg: Vec<usize>,
    hmul: Vec<ElementSet>,
    distributivity: Distributivity,
    fingerprint: u64,
}

impl fmt::Debug for FiniteHyperring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteHyperring")
            .field("size", &self.size())
            .field("distributivity", &self.distributivity)
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint))
            .finish()
    }
}

/// Checks a raw candidate against every hyperring axiom.
///
/// Dimension and range problems are errors; axiom violations are data in the
/// returned report, each with the lexicographically smallest witness.
pub fn validate_hyperring(tables: &RingTables) -> Result<ValidationReport> {
    let candidate = FiniteHyperring::prepare(tables)?;
    Ok(candidate.check_axioms())
}

fn fnv1a(state: &mut u64, value: u64) {
    for byte in value.to_le_bytes() {
        *state ^= u64::from(byte);
        *state = state.wrapping_mul(0x0100_0000_01b3);
    }
}

impl FiniteHyperring {
    /// Validates raw tables and builds the hyperring.
    pub fn from_tables(tables: &RingTables) -> Result<Self> {
        let mut ring = Self::prepare(tables)?;
        let report = ring.check_axioms();
        match report.distributivity {
            Some(d) if report.ok() => {
                ring.distributivity = d;
                Ok(ring)
            }
            _ => Err(Error::InvalidHyperring(report)),
        }
    }

    /// Builds from flat tables and validates every axiom.
    pub(crate) fn from_parts(
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        neg: Vec<usize>,
        hmul: Vec<ElementSet>,
    ) -> Result<Self> {
        let mut ring = Self::assemble(labels, zero, add, neg, hmul, Distributivity::Inclusive);
        let report = ring.check_axioms();
        match report.distributivity {
            Some(d) if report.ok() => {
                ring.distributivity = d;
                Ok(ring)
            }
            _ => Err(Error::InvalidHyperring(report)),
        }
    }

    /// Builds from flat tables whose axioms are known to hold by construction.
    pub(crate) fn from_parts_trusted(
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        neg: Vec<usize>,
        hmul: Vec<ElementSet>,
        distributivity: Distributivity,
    ) -> Self {
        Self::assemble(labels, zero, add, neg, hmul, distributivity)
    }

    fn assemble(
        labels: Vec<String>,
        zero: usize,
        add: Vec<usize>,
        neg: Vec<usize>,
        hmul: Vec<ElementSet>,
        distributivity: Distributivity,
    ) -> Self {
        let m = labels.len();
        debug_assert_eq!(add.len(), m * m);
        debug_assert_eq!(neg.len(), m);
        debug_assert_eq!(hmul.len(), m * m);
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        fnv1a(&mut h, m as u64);
        fnv1a(&mut h, zero as u64);
        for &v in add.iter().chain(neg.iter()) {
            fnv1a(&mut h, v as u64);
        }
        for s in &hmul {
            for &w in s.words() {
                fnv1a(&mut h, w);
            }
        }
        FiniteHyperring { labels, zero, add, neg, hmul, distributivity, fingerprint: h }
    }

    fn prepare(tables: &RingTables) -> Result<Self> {
        let m = tables.labels.len();
        let bad = |e| Err(Error::MalformedTables(e));
        if m == 0 {
            return bad(MalformedTables::EmptyCarrier);
        }
        if tables.zero >= m {
            return bad(MalformedTables::OutOfRange { table: "zero", value: tables.zero, size: m });
        }
        if tables.add.len() != m {
            return bad(MalformedTables::Dimension { table: "add", expected: m, found: tables.add.len() });
        }
        if tables.neg.len() != m {
            return bad(MalformedTables::Dimension { table: "neg", expected: m, found: tables.neg.len() });
        }
        if tables.hmul.len() != m {
            return bad(MalformedTables::Dimension { table: "hmul", expected: m, found: tables.hmul.len() });
        }
        let mut add = Vec::with_capacity(m * m);
        for row in &tables.add {
            if row.len() != m {
                return bad(MalformedTables::Dimension { table: "add", expected: m, found: row.len() });
            }
            for &v in row {
                if v >= m {
                    return bad(MalformedTables::OutOfRange { table: "add", value: v, size: m });
                }
                add.push(v);
            }
        }
        for &v in &tables.neg {
            if v >= m {
                return bad(MalformedTables::OutOfRange { table: "neg", value: v, size: m });
            }
        }
        let mut hmul = Vec::with_capacity(m * m);
        for row in &tables.hmul {
            if row.len() != m {
                return bad(MalformedTables::Dimension { table: "hmul", expected: m, found: row.len() });
            }
            for entry in row {
                let mut set = ElementSet::empty(m);
                for &v in entry {
                    if v >= m {
                        return bad(MalformedTables::OutOfRange { table: "hmul", value: v, size: m });
                    }
                    set.insert(v);
                }
                hmul.push(set);
            }
        }
        Ok(Self::assemble(
            tables.labels.clone(),
            tables.zero,
            add,
            tables.neg.clone(),
            hmul,
            Distributivity::Inclusive,
        ))
    }

    /// Whether `axiom` holds at the given witness tuple.
    fn axiom_holds(&self, axiom: Axiom, w: &[usize]) -> bool {
        let m = self.size();
        match axiom {
            Axiom::AddAssociative => {
                self.add(self.add(w[0], w[1]), w[2]) == self.add(w[0], self.add(w[1], w[2]))
            }
            Axiom::AddCommutative => self.add(w[0], w[1]) == self.add(w[1], w[0]),
            Axiom::AddIdentity => {
                self.add(self.zero, w[0]) == w[0] && self.add(w[0], self.zero) == w[0]
            }
            Axiom::AddInverse => {
                if self.add(w[0], self.neg[w[0]]) != self.zero {
                    return false;
                }
                let mut seen = ElementSet::empty(m);
                (0..m).all(|x| seen.insert(self.add(w[0], x)))
            }
            Axiom::NonemptyProduct => !self.hmul(w[0], w[1]).is_empty(),
            Axiom::MulCommutative => self.hmul(w[0], w[1]) == self.hmul(w[1], w[0]),
            Axiom::MulAssociative => {
                let left = self.product_with_element(self.hmul(w[0], w[1]), w[2]);
                let right = self.element_with_product(w[0], self.hmul(w[1], w[2]));
                left == right
            }
            Axiom::InclusiveDistributivity => {
                let lhs = self.hmul(w[0], self.add(w[1], w[2]));
                let rhs = self.sum_unchecked(self.hmul(w[0], w[1]), self.hmul(w[0], w[2]));
                lhs.is_subset(&rhs)
            }
            Axiom::SignCompatibility => {
                let image = self.neg_set(self.hmul(w[0], w[1]));
                *self.hmul(w[0], self.neg[w[1]]) == image && *self.hmul(self.neg[w[0]], w[1]) == image
            }
        }
    }

    fn first_violation(&self, axiom: Axiom) -> Option<Vec<usize>> {
        let m = self.size();
        let k = axiom.arity();
        let mut tuple = alloc::vec![0usize; k];
        loop {
            if !self.axiom_holds(axiom, &tuple) {
                return Some(tuple);
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < m {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    }

    fn is_strongly_distributive(&self) -> bool {
        let m = self.size();
        (0..m).all(|a| {
            (0..m).all(|b| {
                (0..m).all(|c| {
                    *self.hmul(a, self.add(b, c))
                        == self.sum_unchecked(self.hmul(a, b), self.hmul(a, c))
                })
            })
        })
    }

    fn check_axioms(&self) -> ValidationReport {
        let failures: Vec<AxiomFailure> = Axiom::ALL
            .iter()
            .filter_map(|&axiom| {
                self.first_violation(axiom).map(|witness| AxiomFailure { axiom, witness })
            })
            .collect();
        let distributivity = if failures.is_empty() {
            Some(if self.is_strongly_distributive() {
                Distributivity::Strong
            } else {
                Distributivity::Inclusive
            })
        } else {
            None
        };
        ValidationReport { failures, distributivity }
    }

    /// Re-evaluates a reported failure; true when the violation reproduces.
    pub fn replay_failure(tables: &RingTables, failure: &AxiomFailure) -> Result<bool> {
        let candidate = Self::prepare(tables)?;
        if failure.witness.len() != failure.axiom.arity()
            || failure.witness.iter().any(|&x| x >= candidate.size())
        {
            return Ok(false);
        }
        Ok(!candidate.axiom_holds(failure.axiom, &failure.witness))
    }

    pub fn to_tables(&self) -> RingTables {
        let m = self.size();
        RingTables {
            labels: self.labels.clone(),
            zero: self.zero,
            add: (0..m).map(|a| (0..m).map(|b| self.add(a, b)).collect()).collect(),
            neg: self.neg.clone(),
            hmul: (0..m).map(|a| (0..m).map(|b| self.hmul(a, b).to_vec()).collect()).collect(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn distributivity(&self) -> Distributivity {
        self.distributivity
    }

    /// Stable hash of the tables; equal fingerprints identify the same hyperring.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn hmul(&self, a: usize, b: usize) -> &ElementSet {
        &self.hmul[a * self.size() + b]
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.size())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn singleton(&self, a: usize) -> ElementSet {
        ElementSet::singleton(self.size(), a)
    }

    pub fn check_element(&self, element: usize) -> Result<()> {
        if element < self.size() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element, size: self.size() })
        }
    }

    fn check_set(&self, set: &ElementSet) -> Result<()> {
        if set.universe() == self.size() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn sum_unchecked(&self, s: &ElementSet, t: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for a in s {
            for b in t {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    /// Sumset `{s + t : s ∈ S, t ∈ T}`; empty when either input is empty.
    pub fn set_sum(&self, s: &ElementSet, t: &ElementSet) -> Result<ElementSet> {
        self.check_set(s)?;
        self.check_set(t)?;
        Ok(self.sum_unchecked(s, t))
    }

    /// Union of `s∘t` over `s ∈ S`, `t ∈ T`; empty when either input is empty.
    pub fn set_product(&self, s: &ElementSet, t: &ElementSet) -> Result<ElementSet> {
        self.check_set(s)?;
        self.check_set(t)?;
        Ok(self.product_unchecked(s, t))
    }

    pub(crate) fn product_unchecked(&self, s: &ElementSet, t: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for a in s {
            for b in t {
                out.union_with(self.hmul(a, b));
            }
        }
        out
    }

    /// `S ∘ {x}`
    #[inline]
    pub fn product_with_element(&self, s: &ElementSet, x: usize) -> ElementSet {
        let mut out = self.empty_set();
        for a in s {
            out.union_with(self.hmul(a, x));
        }
        out
    }

    #[inline]
    fn element_with_product(&self, x: usize, s: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for b in s {
            out.union_with(self.hmul(x, b));
        }
        out
    }

    /// `{-s : s ∈ S}`
    pub fn neg_set(&self, s: &ElementSet) -> ElementSet {
        s.map(self.size(), |a| self.neg[a])
    }

    /// Left fold of the hyperproduct over the tuple, starting from `{x₁}`.
    pub fn tuple_product(&self, xs: &[usize]) -> Result<ElementSet> {
        let (&first, rest) = xs.split_first().ok_or(Error::EmptyTuple)?;
        for &x in xs {
            self.check_element(x)?;
        }
        let mut acc = self.singleton(first);
        for &x in rest {
            acc = self.product_with_element(&acc, x);
        }
        Ok(acc)
    }

    /// `aⁿ` as a tuple product of `n` copies of `a`.
    pub fn element_power(&self, a: usize, n: usize) -> Result<ElementSet> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        self.check_element(a)?;
        let mut acc = self.singleton(a);
        for _ in 1..n {
            acc = self.product_with_element(&acc, a);
        }
        Ok(acc)
    }

    /// Renders a set using element labels.
    pub fn format_set(&self, s: &ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_ra, RaSpec};
    use alloc::vec;

    fn z2_broken() -> RingTables {
        RingTables {
            labels: RingTables::numeric_labels(2),
            zero: 0,
            add: vec![vec![0, 1], vec![1, 0]],
            neg: vec![0, 1],
            hmul: vec![vec![vec![0], vec![0]], vec![vec![0], vec![]]],
        }
    }

    #[test]
    fn empty_hyperproduct_is_reported_with_witness() {
        let report = validate_hyperring(&z2_broken()).unwrap();
        assert!(!report.ok());
        let f = report.failures.iter().find(|f| f.axiom == Axiom::NonemptyProduct).unwrap();
        assert_eq!(f.witness, vec![1, 1]);
        assert!(FiniteHyperring::replay_failure(&z2_broken(), f).unwrap());
        assert_eq!(report.distributivity, None);
    }

    #[test]
    fn idempotent_addition_breaks_group_axioms() {
        let ring = build_ra(&RaSpec::new(4, [1])).unwrap();
        let mut tables = ring.to_tables();
        tables.add[1][1] = 1;
        let report = validate_hyperring(&tables).unwrap();
        let axioms: Vec<Axiom> = report.failures.iter().map(|f| f.axiom).collect();
        assert!(axioms.contains(&Axiom::AddInverse), "{axioms:?}");
        for f in &report.failures {
            assert!(FiniteHyperring::replay_failure(&tables, f).unwrap(), "{f:?}");
        }
    }

    #[test]
    fn malformed_tables_are_errors_not_failures() {
        let mut t = z2_broken();
        t.add[0] = vec![0];
        assert!(matches!(validate_hyperring(&t), Err(Error::MalformedTables(_))));
        let mut t = z2_broken();
        t.hmul[0][0] = vec![5];
        assert!(matches!(validate_hyperring(&t), Err(Error::MalformedTables(_))));
    }

    #[test]
    fn distributivity_grade_of_ra_builds() {
        let ring = build_ra(&RaSpec::new(6, [1])).unwrap();
        let report = validate_hyperring(&ring.to_tables()).unwrap();
        assert!(report.ok());
        assert_eq!(report.distributivity, Some(Distributivity::Strong));
        // 1∘(1+1) = {0,2} but 1∘1 + 1∘1 = {0,1,2}
        let ring = build_ra(&RaSpec::new(6, [0, 1])).unwrap();
        let report = validate_hyperring(&ring.to_tables()).unwrap();
        assert!(report.ok());
        assert_eq!(report.distributivity, Some(Distributivity::Inclusive));
    }

    #[test]
    fn set_sum_examples() {
        let ring = build_ra(&RaSpec::new(6, [0, 1])).unwrap();
        let all = ring.full_set();
        assert_eq!(ring.set_sum(&ring.singleton(0), &all).unwrap(), all);
        let s = ElementSet::from_indices(6, [2, 4]);
        assert_eq!(ring.set_sum(&s, &ring.singleton(3)).unwrap().to_vec(), vec![1, 5]);
        assert!(ring.set_sum(&ring.empty_set(), &ring.singleton(1)).unwrap().is_empty());
        assert_eq!(ring.set_sum(&ElementSet::empty(4), &all), Err(Error::RingMismatch));
    }

    #[test]
    fn set_product_examples() {
        let z16 = build_ra(&RaSpec::new(16, [0, 1])).unwrap();
        let two = z16.singleton(2);
        assert_eq!(z16.set_product(&two, &two).unwrap().to_vec(), vec![0, 4]);
        let z6 = build_ra(&RaSpec::new(6, [0, 1])).unwrap();
        assert!(z6.set_product(&z6.empty_set(), &z6.full_set()).unwrap().is_empty());
        let s = ElementSet::from_indices(6, [2, 3]);
        assert_eq!(z6.set_product(&s, &z6.singleton(3)).unwrap().to_vec(), vec![0, 3]);
    }

    #[test]
    fn tuple_products_and_powers() {
        let z6 = build_ra(&RaSpec::new(6, [0, 1])).unwrap();
        assert_eq!(z6.tuple_product(&[4]).unwrap().to_vec(), vec![4]);
        assert_eq!(z6.tuple_product(&[2, 2, 3]).unwrap().to_vec(), vec![0]);
        assert_eq!(z6.tuple_product(&[]), Err(Error::EmptyTuple));
        let z8 = build_ra(&RaSpec::new(8, [0, 1])).unwrap();
        assert_eq!(z8.tuple_product(&[2, 2, 2]).unwrap().to_vec(), vec![0]);
        let z16 = build_ra(&RaSpec::new(16, [0, 1])).unwrap();
        assert_eq!(z16.element_power(2, 3).unwrap().to_vec(), vec![0, 8]);
        assert_eq!(z16.element_power(5, 1).unwrap().to_vec(), vec![5]);
        assert_eq!(z16.element_power(2, 0), Err(Error::ZeroExponent));
        let z6b = build_ra(&RaSpec::new(6, [2, 3])).unwrap();
        assert_eq!(z6b.element_power(1, 2).unwrap().to_vec(), vec![2, 3]);
    }
}
