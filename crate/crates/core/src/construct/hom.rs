use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::Hyperideal;
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// A map preserving addition exactly and hypermultiplication as set equality.
#[derive(Debug, Clone)]
pub struct GoodHomomorphism {
    source: Arc<FiniteHyperring>,
    target: Arc<FiniteHyperring>,
    map: Vec<usize>,
    injective: bool,
    surjective: bool,
}

impl GoodHomomorphism {
    /// Checks additivity on every pair first, then the good multiplicative condition.
    pub fn new(source: Arc<FiniteHyperring>, target: Arc<FiniteHyperring>, map: Vec<usize>) -> Result<Self> {
        let m = source.size();
        if map.len() != m {
            return Err(Error::LengthMismatch { expected: m, found: map.len() });
        }
        for &y in &map {
            target.check_element(y)?;
        }
        for a in 0..m {
            for b in 0..m {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(Error::NotAdditive { a, b });
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                let image = source.hmul(a, b).map(target.size(), |c| map[c]);
                let expected = target.hmul(map[a], map[b]);
                if !image.is_subset(expected) {
                    return Err(Error::NotMultiplicative { a, b });
                }
                if image != *expected {
                    return Err(Error::NotGoodMultiplicative { a, b });
                }
            }
        }
        let image = ElementSet::from_indices(target.size(), map.iter().copied());
        let injective = image.len() == m;
        let surjective = image.is_full();
        Ok(GoodHomomorphism { source, target, map, injective, surjective })
    }

    pub fn identity(ring: &Arc<FiniteHyperring>) -> Self {
        let m = ring.size();
        GoodHomomorphism {
            source: ring.clone(),
            target: ring.clone(),
            map: (0..m).collect(),
            injective: true,
            surjective: true,
        }
    }

    pub fn source(&self) -> &Arc<FiniteHyperring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteHyperring> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn image_set(&self, s: &ElementSet) -> ElementSet {
        s.map(self.target.size(), |x| self.map[x])
    }

    pub fn preimage_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.source.size(), (0..self.source.size()).filter(|&x| s.contains(self.map[x])))
    }

    /// `f⁻¹(0)`.
    pub fn kernel(&self) -> Hyperideal {
        let zero = self.target.singleton(self.target.zero());
        Hyperideal::new(self.source.clone(), self.preimage_set(&zero)).expect("kernel of a good homomorphism")
    }

    fn check_source(&self, p: &Hyperideal) -> Result<()> {
        if p.ring().fingerprint() == self.source.fingerprint() && p.ring().size() == self.source.size() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_target(&self, q: &Hyperideal) -> Result<()> {
        if q.ring().fingerprint() == self.target.fingerprint() && q.ring().size() == self.target.size() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `f(P)` for a surjective `f` whose kernel lies in `P`.
    pub fn pushforward(&self, p: &Hyperideal) -> Result<Hyperideal> {
        self.check_source(p)?;
        if let Some(element) = self.kernel().set().difference(p.set()).first() {
            if self.surjective {
                return Err(Error::KernelNotContained { element });
            }
        }
        self.image_ideal(p)
    }

    /// `f(I)` for a surjective `f`, without the kernel condition.
    pub fn image_ideal(&self, i: &Hyperideal) -> Result<Hyperideal> {
        self.check_source(i)?;
        if !self.surjective {
            let image = ElementSet::from_indices(self.target.size(), self.map.iter().copied());
            let missing = image.complement().first().expect("non-surjective map misses an element");
            return Err(Error::NotSurjective { missing });
        }
        Hyperideal::new(self.target.clone(), self.image_set(i.set()))
    }

    /// `f⁻¹(Q)`.
    pub fn pullback(&self, q: &Hyperideal) -> Result<Hyperideal> {
        self.check_target(q)?;
        Hyperideal::new(self.source.clone(), self.preimage_set(q.set()))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &GoodHomomorphism) -> Result<GoodHomomorphism> {
        if g.source.fingerprint() != self.target.fingerprint() {
            return Err(Error::RingMismatch);
        }
        let map = self.map.iter().map(|&y| g.map[y]).collect();
        GoodHomomorphism::new(self.source.clone(), g.target.clone(), map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_ra, quotient_hyperring, RaSpec};
    use alloc::vec;

    fn ra(n: usize, a: &[usize]) -> Arc<FiniteHyperring> {
        Arc::new(build_ra(&RaSpec::new(n, a.iter().copied())).unwrap())
    }

    fn ideal(r: &Arc<FiniteHyperring>, xs: &[usize]) -> Hyperideal {
        Hyperideal::new(r.clone(), ElementSet::from_indices(r.size(), xs.iter().copied())).unwrap()
    }

    #[test]
    fn identity_is_bijective() {
        let z6 = ra(6, &[0, 1]);
        let id = GoodHomomorphism::new(z6.clone(), z6.clone(), (0..6).collect()).unwrap();
        assert!(id.is_bijective());
        let p = ideal(&z6, &[0, 2, 4]);
        assert_eq!(id.pushforward(&p).unwrap(), p);
    }

    #[test]
    fn reduction_mod_two() {
        let z4 = ra(4, &[0, 1]);
        let z2 = ra(2, &[0, 1]);
        let f = GoodHomomorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(f.is_surjective() && !f.is_injective());
        assert_eq!(f.pullback(&Hyperideal::zero(&z2)).unwrap().set().to_vec(), vec![0, 2]);
        assert_eq!(f.pullback(&Hyperideal::whole(&z2)).unwrap(), Hyperideal::whole(&z4));
        assert_eq!(
            f.pushforward(&Hyperideal::zero(&z4)).unwrap_err(),
            Error::KernelNotContained { element: 2 }
        );
    }

    #[test]
    fn rejections() {
        let z4 = ra(4, &[1]);
        let z2 = ra(2, &[1]);
        assert_eq!(
            GoodHomomorphism::new(z4.clone(), z2.clone(), vec![0, 1]).unwrap_err(),
            Error::LengthMismatch { expected: 4, found: 2 }
        );
        assert_eq!(
            GoodHomomorphism::new(z2.clone(), z4.clone(), vec![0, 1]).unwrap_err(),
            Error::NotAdditive { a: 1, b: 1 }
        );
        // zero map: 1∘1 = {1} maps to {0} but 0∘0 = {0}; additive and good
        assert!(GoodHomomorphism::new(z4.clone(), z2.clone(), vec![0; 4]).is_ok());
        // x ↦ 2x on ℤ₄ with A={1}: f(1∘1) = {2} but f(1)∘f(1) = {0}
        assert_eq!(
            GoodHomomorphism::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap_err(),
            Error::NotMultiplicative { a: 1, b: 1 }
        );
        // on A={0,1}: 1∘1 = {0,1} ↦ {0,2} but 2∘2 = {0}
        let z4a = ra(4, &[0, 1]);
        assert_eq!(
            GoodHomomorphism::new(z4a.clone(), z4a.clone(), vec![0, 2, 0, 2]).unwrap_err(),
            Error::NotMultiplicative { a: 1, b: 1 }
        );
    }

    #[test]
    fn not_good_when_image_is_strictly_smaller() {
        // ℤ₂ with A={1} into ℤ₂ with A={0,1} by the identity: {1} ⊊ {0,1}
        let src = ra(2, &[1]);
        let tgt = ra(2, &[0, 1]);
        assert_eq!(
            GoodHomomorphism::new(src, tgt, vec![0, 1]).unwrap_err(),
            Error::NotGoodMultiplicative { a: 1, b: 1 }
        );
    }

    #[test]
    fn quotient_projection_pushforward() {
        let z8 = ra(8, &[0, 1]);
        let q = quotient_hyperring(&ideal(&z8, &[0, 4])).unwrap();
        let p = ideal(&z8, &[0, 2, 4, 6]);
        assert_eq!(q.projection.pushforward(&p).unwrap().set().to_vec(), vec![0, 2]);
    }
}
