use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::hom::GoodHomomorphism;
use crate::error::Result;
use crate::ideal::Hyperideal;
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// `R/J` with its projection.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: Arc<FiniteHyperring>,
    pub projection: GoodHomomorphism,
    /// Smallest representative of each coset, in coset order.
    pub representatives: Vec<usize>,
}

/// Cosets are numbered by their smallest representative;
/// `(a+J)∘(b+J) = {c+J : c ∈ a∘b}`.
pub fn quotient_hyperring(j: &Hyperideal) -> Result<QuotientRing> {
    let base = j.ring();
    let m = base.size();
    let mut coset_of = alloc::vec![usize::MAX; m];
    let mut representatives = Vec::new();
    for r in 0..m {
        if coset_of[r] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(r);
        for x in j.set() {
            coset_of[base.add(r, x)] = idx;
        }
    }
    let q = representatives.len();
    let labels = representatives.iter().map(|&r| format!("[{}]", base.label(r))).collect();
    let mut add = Vec::with_capacity(q * q);
    let mut hmul = Vec::with_capacity(q * q);
    for &a in &representatives {
        for &b in &representatives {
            add.push(coset_of[base.add(a, b)]);
            hmul.push(base.hmul(a, b).map(q, |c| coset_of[c]));
        }
    }
    let neg = representatives.iter().map(|&r| coset_of[base.neg(r)]).collect();
    let ring = Arc::new(FiniteHyperring::from_parts(labels, coset_of[base.zero()], add, neg, hmul)?);
    let projection = GoodHomomorphism::new(base.clone(), ring.clone(), coset_of)?;
    Ok(QuotientRing { ring, projection, representatives })
}

impl QuotientRing {
    pub fn coset_of(&self, r: usize) -> usize {
        self.projection.apply(r)
    }

    pub fn image_set(&self, s: &ElementSet) -> ElementSet {
        self.projection.image_set(s)
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

    #[test]
    fn whole_and_zero() {
        let z6 = ra(6, &[0, 1]);
        let q = quotient_hyperring(&Hyperideal::whole(&z6)).unwrap();
        assert_eq!(q.ring.size(), 1);
        let q = quotient_hyperring(&Hyperideal::zero(&z6)).unwrap();
        assert_eq!(q.projection.map(), &[0, 1, 2, 3, 4, 5]);
        assert!(q.projection.is_bijective());
    }

    #[test]
    fn z8_mod_four() {
        let z8 = ra(8, &[0, 1]);
        let j = Hyperideal::from_generators(&z8, &[4]).unwrap();
        let q = quotient_hyperring(&j).unwrap();
        assert_eq!(q.representatives, vec![0, 1, 2, 3]);
        assert_eq!(q.ring.hmul(2, 2).to_vec(), vec![0]);
        assert_eq!(q.ring.label(3), "[3]");
        let zero = Hyperideal::zero(&q.ring);
        assert_eq!(q.projection.pullback(&zero).unwrap(), j);
    }
}
