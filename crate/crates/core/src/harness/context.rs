use core::cell::{OnceCell, RefCell};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::family::BuiltRing;

use crate::classify;
use crate::construct::{
    build_ra, localize, product_hyperring, quotient_hyperring, unit_inverse, Closure, GoodHomomorphism,
    LocalizeOptions, LocalizedRing, ProductRing, QuotientRing, RaSpec,
};
use crate::error::Result;
use crate::ideal::{colon_set, Hyperideal, IdealLattice};
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// A ring, its lattice, and memoised per-ideal data, addressed by lattice index.
pub struct RingContext {
    pub ring: Arc<FiniteHyperring>,
    pub lattice: IdealLattice,
    pub product: Option<ProductRing>,
    pub ra: Option<RaSpec>,
    lattice_cap: usize,
    products: OnceCell<Vec<usize>>,
    iprime: OnceCell<Vec<bool>>,
    radicals: OnceCell<Vec<usize>>,
    colons: OnceCell<Vec<ElementSet>>,
    factors: OnceCell<Vec<RingContext>>,
    absorbing: RefCell<BTreeMap<(usize, usize, usize), bool>>,
    quotients: RefCell<BTreeMap<usize, Rc<QuotientRing>>>,
    arrows: OnceCell<Vec<Arrow>>,
    two_absorbing_primary: OnceCell<Result<Vec<bool>>>,
    witnesses: RefCell<BTreeMap<(u8, usize, usize), Option<Vec<usize>>>>,
    localizations: OnceCell<Vec<(ElementSet, Result<LocalizedRing>)>>,
}

/// Where one end of an [`Arrow`] lives.
pub enum ArrowEnd {
    This,
    Factor(usize),
    Other(RingContext),
}

/// A good homomorphism touching this ring, with contexts for both ends.
pub struct Arrow {
    pub label: String,
    pub hom: GoodHomomorphism,
    pub source: ArrowEnd,
    pub target: ArrowEnd,
}

/// Lattice index meaning "no excluded set" in absorbing memo keys.
const NOTHING: usize = usize::MAX;

impl RingContext {
    pub fn new(built: BuiltRing, lattice_cap: usize) -> Result<Self> {
        let lattice = IdealLattice::enumerate(&built.ring, lattice_cap)?;
        Ok(RingContext {
            ring: built.ring,
            lattice,
            product: built.product,
            ra: built.ra,
            lattice_cap,
            products: OnceCell::new(),
            iprime: OnceCell::new(),
            radicals: OnceCell::new(),
            colons: OnceCell::new(),
            factors: OnceCell::new(),
            absorbing: RefCell::new(BTreeMap::new()),
            quotients: RefCell::new(BTreeMap::new()),
            arrows: OnceCell::new(),
            two_absorbing_primary: OnceCell::new(),
            witnesses: RefCell::new(BTreeMap::new()),
            localizations: OnceCell::new(),
        })
    }

    pub fn plain(ring: Arc<FiniteHyperring>, lattice_cap: usize) -> Result<Self> {
        Self::new(BuiltRing { ring, product: None, ra: None }, lattice_cap)
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn ideal(&self, k: usize) -> &Hyperideal {
        &self.lattice.ideals()[k]
    }

    pub fn index(&self, set: &ElementSet) -> usize {
        self.lattice.index_of(set).expect("set is a hyperideal of this ring")
    }

    pub fn proper(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| self.ideal(k).is_proper())
    }

    pub fn whole(&self) -> usize {
        self.len() - 1
    }

    pub fn is_prime(&self, p: usize) -> bool {
        self.lattice.prime_indices().binary_search(&p).is_ok()
    }

    /// Index of the generated product `I·P`.
    pub fn product_idx(&self, i: usize, p: usize) -> usize {
        let l = self.len();
        self.products.get_or_init(|| {
            let mut out = alloc::vec![0; l * l];
            for a in 0..l {
                for b in a..l {
                    let prod = self.ideal(a).product(self.ideal(b)).expect("same ring");
                    let k = self.index(prod.set());
                    out[a * l + b] = k;
                    out[b * l + a] = k;
                }
            }
            out
        })[i * l + p]
    }

    /// `P` is `I`-prime; `P` must be proper.
    pub fn iprime(&self, p: usize, i: usize) -> bool {
        let l = self.len();
        self.iprime.get_or_init(|| {
            let mut out = alloc::vec![false; l * l];
            for q in self.proper() {
                for j in 0..l {
                    let ip = self.ideal(self.product_idx(j, q)).set();
                    out[q * l + j] = classify::is_prime_against(self.ideal(q), ip).expect("proper").verdict;
                }
            }
            out
        })[p * l + i]
    }

    pub fn radical_idx(&self, p: usize) -> usize {
        self.radicals.get_or_init(|| {
            (0..self.len())
                .map(|k| self.index(self.lattice.radical(self.ideal(k)).expect("same ring").set()))
                .collect()
        })[p]
    }

    /// `(P : r)` as a set, memoised for every lattice ideal.
    pub fn colon(&self, p: usize, r: usize) -> &ElementSet {
        let m = self.ring.size();
        &self.colons.get_or_init(|| {
            let mut out = Vec::with_capacity(self.len() * m);
            for k in 0..self.len() {
                for x in 0..m {
                    out.push(colon_set(&self.ring, self.ideal(k).set(), x));
                }
            }
            out
        })[p * m + r]
    }

    /// n-absorbing test of `P` against `P ∖ excluded`; `None` means plain n-absorbing.
    pub fn n_absorbing(&self, p: usize, excluded: Option<usize>, n: usize, cap: u64) -> Result<bool> {
        let key = (p, excluded.unwrap_or(NOTHING), n);
        if let Some(&v) = self.absorbing.borrow().get(&key) {
            return Ok(v);
        }
        let excluded_set = match excluded {
            Some(e) => self.ideal(e).set().clone(),
            None => self.ring.empty_set(),
        };
        let v = classify::is_n_absorbing_against(self.ideal(p), &excluded_set, n, cap)?.verdict;
        self.absorbing.borrow_mut().insert(key, v);
        Ok(v)
    }

    /// n-absorbing `I`-prime, sharing the memo through `IP`.
    pub fn n_absorbing_iprime(&self, p: usize, i: usize, n: usize, cap: u64) -> Result<bool> {
        if n == 1 {
            return Ok(self.iprime(p, i));
        }
        self.n_absorbing(p, Some(self.product_idx(i, p)), n, cap)
    }

    pub fn quotient(&self, j: usize) -> Rc<QuotientRing> {
        if let Some(q) = self.quotients.borrow().get(&j) {
            return q.clone();
        }
        let q = Rc::new(quotient_hyperring(self.ideal(j)).expect("lattice ideals give valid quotients"));
        self.quotients.borrow_mut().insert(j, q.clone());
        q
    }

    /// Contexts of the product factors, in order.
    pub fn factors(&self) -> &[RingContext] {
        self.factors.get_or_init(|| match &self.product {
            Some(p) => p
                .factors
                .iter()
                .map(|f| RingContext::plain(f.clone(), self.lattice_cap).expect("factor smaller than product"))
                .collect(),
            None => Vec::new(),
        })
    }

    /// Lattice indices of the maximal proper ideals.
    pub fn maximal(&self) -> Vec<usize> {
        let proper: Vec<usize> = self.proper().collect();
        proper
            .iter()
            .copied()
            .filter(|&a| !proper.iter().any(|&b| b != a && self.ideal(a).is_subset(self.ideal(b))))
            .collect()
    }

    pub fn end<'a>(&'a self, end: &'a ArrowEnd) -> &'a RingContext {
        match end {
            ArrowEnd::This => self,
            ArrowEnd::Factor(k) => &self.factors()[*k],
            ArrowEnd::Other(ctx) => ctx,
        }
    }

    /// Quotient maps, product projections and good injections, unit scalings
    /// of an `RA` ring, the factor swap of a binary product, and the identity.
    pub fn arrows(&self) -> &[Arrow] {
        self.arrows.get_or_init(|| {
            let mut out = Vec::new();
            out.push(Arrow {
                label: "identity".into(),
                hom: GoodHomomorphism::identity(&self.ring),
                source: ArrowEnd::This,
                target: ArrowEnd::This,
            });
            for j in self.proper() {
                let q = self.quotient(j);
                let target = RingContext::plain(q.ring.clone(), self.lattice_cap).expect("quotient is smaller");
                out.push(Arrow {
                    label: format!("quotient by {}", self.ideal(j).set()),
                    hom: q.projection.clone(),
                    source: ArrowEnd::This,
                    target: ArrowEnd::Other(target),
                });
            }
            if let Some(product) = &self.product {
                for k in 0..product.factors.len() {
                    out.push(Arrow {
                        label: format!("projection {k}"),
                        hom: product.projection(k).expect("projections are good"),
                        source: ArrowEnd::This,
                        target: ArrowEnd::Factor(k),
                    });
                    if let Ok(hom) = product.injection(k) {
                        out.push(Arrow {
                            label: format!("injection {k}"),
                            hom,
                            source: ArrowEnd::Factor(k),
                            target: ArrowEnd::This,
                        });
                    }
                }
                if let [a, b] = &product.factors[..] {
                    let swapped = product_hyperring(&[b.clone(), a.clone()], usize::MAX).expect("same size");
                    let map = (0..self.ring.size())
                        .map(|x| {
                            let t = product.layout.tuple(x);
                            swapped.layout.index(&[t[1], t[0]])
                        })
                        .collect();
                    let hom = GoodHomomorphism::new(self.ring.clone(), swapped.ring.clone(), map)
                        .expect("swap is a good isomorphism");
                    let target = RingContext::new(
                        BuiltRing { ring: swapped.ring.clone(), product: Some(swapped), ra: None },
                        self.lattice_cap,
                    )
                    .expect("same size");
                    out.push(Arrow { label: "swap".into(), hom, source: ArrowEnd::This, target: ArrowEnd::Other(target) });
                }
            }
            if let Some(spec) = &self.ra {
                let n = spec.n;
                for u in 2..n {
                    let Some(inv) = unit_inverse(u, n) else { continue };
                    let scaled = RaSpec::new(n, spec.a.iter().map(|&a| a * inv % n));
                    let ring = Arc::new(build_ra(&scaled).expect("scaled multiplier set is valid"));
                    let map = (0..n).map(|x| x * u % n).collect();
                    let hom = GoodHomomorphism::new(self.ring.clone(), ring.clone(), map)
                        .expect("unit scaling is a good isomorphism");
                    let target = RingContext::new(BuiltRing { ring, product: None, ra: Some(scaled) }, self.lattice_cap)
                        .expect("same size");
                    out.push(Arrow {
                        label: format!("scale by {u}"),
                        hom,
                        source: ArrowEnd::This,
                        target: ArrowEnd::Other(target),
                    });
                }
            }
            out
        })
    }

    /// Memoised witness search keyed by a caller tag and two indices.
    pub fn witness(&self, tag: u8, a: usize, b: usize, search: impl FnOnce() -> Option<Vec<usize>>) -> Option<Vec<usize>> {
        if let Some(w) = self.witnesses.borrow().get(&(tag, a, b)) {
            return w.clone();
        }
        let w = search();
        self.witnesses.borrow_mut().insert((tag, a, b), w.clone());
        w
    }

    /// Whether each lattice ideal is proper and 2-absorbing primary.
    pub fn two_absorbing_primary(&self, cap: u64) -> Result<&[bool]> {
        self.two_absorbing_primary
            .get_or_init(|| {
                (0..self.len())
                    .map(|k| {
                        let p = self.ideal(k);
                        if !p.is_proper() {
                            return Ok(false);
                        }
                        Ok(classify::is_two_absorbing_primary(p, &self.lattice, cap)?.verdict)
                    })
                    .collect()
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Candidate multiplicative sets with their localizations.
    ///
    /// Carriers up to 8 use every weakly closed subset; up to 16, the strict
    /// closure of each singleton; larger carriers none. The options of the
    /// first call are kept.
    pub fn localizations(&self, options: &LocalizeOptions) -> &[(ElementSet, Result<LocalizedRing>)] {
        self.localizations.get_or_init(|| {
            let m = self.ring.size();
            let mut sets: Vec<ElementSet> = Vec::new();
            if m <= 8 {
                for mask in 1u32..(1 << m) {
                    let s = ElementSet::from_indices(m, (0..m).filter(|&x| mask >> x & 1 == 1));
                    let closed = s.iter().all(|a| s.iter().all(|b| self.ring.hmul(a, b).intersects(&s)));
                    if closed {
                        sets.push(s);
                    }
                }
            } else if m <= 16 {
                for x in 0..m {
                    let mut s = self.ring.singleton(x);
                    loop {
                        let grown = s.union(&self.ring.set_product(&s, &s).expect("same ring"));
                        if grown == s {
                            break;
                        }
                        s = grown;
                    }
                    if !sets.contains(&s) {
                        sets.push(s);
                    }
                }
                sets.sort();
            }
            let opts = if m > 8 { LocalizeOptions { closure: Closure::Strict, ..*options } } else { *options };
            sets.into_iter()
                .map(|s| {
                    let loc = localize(&self.ring, &s, &opts);
                    (s, loc)
                })
                .collect()
        })
    }
}
