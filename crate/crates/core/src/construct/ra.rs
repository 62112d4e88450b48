use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// `ℤₙ` with `x∘y = {x·a·y : a ∈ A}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaSpec {
    pub n: usize,
    /// Sorted, deduplicated multiplier set.
    pub a: Vec<usize>,
}

impl RaSpec {
    pub fn new(n: usize, a: impl IntoIterator<Item = usize>) -> Self {
        let a: BTreeSet<usize> = a.into_iter().collect();
        RaSpec { n, a: a.into_iter().collect() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidModulus(self.n));
        }
        if self.a.is_empty() {
            return Err(Error::EmptyA);
        }
        if let Some(&bad) = self.a.iter().find(|&&t| t >= self.n) {
            return Err(Error::ElementOutOfRange { element: bad, size: self.n });
        }
        Ok(())
    }
}

pub fn build_ra(spec: &RaSpec) -> Result<FiniteHyperring> {
    spec.validate()?;
    let n = spec.n;
    let labels = (0..n).map(|i| format!("{i}")).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut hmul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            add.push((x + y) % n);
            hmul.push(ElementSet::from_indices(n, spec.a.iter().map(|&t| x * t % n * y % n)));
        }
    }
    let neg = (0..n).map(|x| (n - x) % n).collect();
    FiniteHyperring::from_parts(labels, 0, add, neg, hmul)
}

/// Multiplicative inverse of `u` modulo `n`, if `u` is a unit.
pub fn unit_inverse(u: usize, n: usize) -> Option<usize> {
    (1..n).find(|&v| u * v % n == 1 % n)
}
