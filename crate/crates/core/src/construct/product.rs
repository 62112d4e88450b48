use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::hom::GoodHomomorphism;
use crate::error::{Error, Result};
use crate::ideal::Hyperideal;
use crate::ring::{Distributivity, FiniteHyperring};
use crate::set::ElementSet;

/// Default carrier-size cap for products.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// Row-major indexing of tuples; the first factor is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLayout {
    sizes: Vec<usize>,
    strides: Vec<usize>,
}

impl ProductLayout {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        ProductLayout { sizes, strides }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn arity(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.sizes.len());
        tuple.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        self.sizes.iter().zip(&self.strides).map(|(&m, &s)| index / s % m).collect()
    }

    pub fn component(&self, index: usize, factor: usize) -> usize {
        index / self.strides[factor] % self.sizes[factor]
    }
}

/// A product hyperring together with its factors.
#[derive(Debug, Clone)]
pub struct ProductRing {
    pub ring: Arc<FiniteHyperring>,
    pub factors: Vec<Arc<FiniteHyperring>>,
    pub layout: ProductLayout,
}

pub fn product_hyperring(factors: &[Arc<FiniteHyperring>], cap: usize) -> Result<ProductRing> {
    if factors.len() < 2 {
        return Err(Error::TooFewFactors(factors.len()));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let size = sizes.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m)).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let layout = ProductLayout::new(sizes);
    let tuples: Vec<Vec<usize>> = (0..size).map(|i| layout.tuple(i)).collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&x, f)| f.label(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect::<Vec<String>>();
    let zero = layout.index(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
    let neg = tuples
        .iter()
        .map(|t| layout.index(&t.iter().zip(factors).map(|(&x, f)| f.neg(x)).collect::<Vec<_>>()))
        .collect();
    let mut add = Vec::with_capacity(size * size);
    let mut hmul = Vec::with_capacity(size * size);
    let mut sum = vec![0; factors.len()];
    for a in &tuples {
        for b in &tuples {
            for (k, f) in factors.iter().enumerate() {
                sum[k] = f.add(a[k], b[k]);
            }
            add.push(layout.index(&sum));
            let mut set = ElementSet::empty(size);
            let mut partial: Vec<usize> = vec![0];
            for (k, f) in factors.iter().enumerate() {
                let comp = f.hmul(a[k], b[k]);
                let stride = layout.strides[k];
                partial = partial.iter().flat_map(|&base| comp.iter().map(move |c| base + c * stride)).collect();
            }
            for i in partial {
                set.insert(i);
            }
            hmul.push(set);
        }
    }
    let distributivity = if factors.iter().all(|f| f.distributivity() == Distributivity::Strong) {
        Distributivity::Strong
    } else {
        Distributivity::Inclusive
    };
    let ring = FiniteHyperring::from_parts_trusted(labels, zero, add, neg, hmul, distributivity);
    Ok(ProductRing { ring: Arc::new(ring), factors: factors.to_vec(), layout })
}

impl ProductRing {
    /// The ideal `∏ Iₖ`; every component must belong to the matching factor.
    pub fn product_ideal(&self, components: &[Hyperideal]) -> Result<Hyperideal> {
        if components.len() != self.factors.len() {
            return Err(Error::LengthMismatch { expected: self.factors.len(), found: components.len() });
        }
        for (c, f) in components.iter().zip(&self.factors) {
            if c.ring().fingerprint() != f.fingerprint() {
                return Err(Error::RingMismatch);
            }
        }
        let set = ElementSet::from_indices(
            self.ring.size(),
            (0..self.ring.size())
                .filter(|&i| components.iter().enumerate().all(|(k, c)| c.contains(self.layout.component(i, k)))),
        );
        Hyperideal::new(self.ring.clone(), set)
    }

    /// The `k`-th coordinate set `{xₖ : x ∈ S}`.
    pub fn component_set(&self, s: &ElementSet, factor: usize) -> ElementSet {
        s.map(self.factors[factor].size(), |i| self.layout.component(i, factor))
    }

    /// Whether `S` is the product of its coordinate sets.
    pub fn is_box(&self, s: &ElementSet) -> bool {
        let comps: Vec<ElementSet> = (0..self.factors.len()).map(|k| self.component_set(s, k)).collect();
        let total: usize = comps.iter().map(|c| c.len()).product();
        total == s.len()
    }

    pub fn projection(&self, factor: usize) -> Result<GoodHomomorphism> {
        let map = (0..self.ring.size()).map(|i| self.layout.component(i, factor)).collect();
        GoodHomomorphism::new(self.ring.clone(), self.factors[factor].clone(), map)
    }

    /// `x ↦ (0,…,x,…,0)`; good only when the other factors have `0∘0 = {0}`.
    pub fn injection(&self, factor: usize) -> Result<GoodHomomorphism> {
        let mut tuple: Vec<usize> = self.factors.iter().map(|f| f.zero()).collect();
        let map = (0..self.factors[factor].size())
            .map(|x| {
                tuple[factor] = x;
                self.layout.index(&tuple)
            })
            .collect();
        GoodHomomorphism::new(self.factors[factor].clone(), self.ring.clone(), map)
    }
}
