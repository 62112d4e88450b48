use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Fraction, Result};
use crate::ideal::Hyperideal;
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// How `s∘s₁∘r₂` and `s∘s₂∘r₁` are compared when relating two fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocalizationMode {
    #[default]
    SetEquality,
    Intersect,
}

impl LocalizationMode {
    pub fn name(self) -> &'static str {
        match self {
            LocalizationMode::SetEquality => "set-equality",
            LocalizationMode::Intersect => "intersect",
        }
    }
}

/// Closure demanded of the multiplicative set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    /// `a∘b ∩ S ≠ ∅` for all `a, b ∈ S`.
    #[default]
    Weak,
    /// `a∘b ⊆ S` for all `a, b ∈ S`.
    Strict,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LocalizeOptions {
    pub mode: LocalizationMode,
    pub closure: Closure,
    /// Denominator of the localization map `r ↦ r/s₀`; defaults to the least member of `S`.
    pub anchor: Option<usize>,
}

/// `S⁻¹R` as classes of `R × S`.
#[derive(Debug, Clone)]
pub struct LocalizedRing {
    pub base: Arc<FiniteHyperring>,
    pub s: ElementSet,
    pub ring: Arc<FiniteHyperring>,
    pub anchor: usize,
    /// Members of each class, in pair order.
    pub classes: Vec<Vec<Fraction>>,
    members: Vec<usize>,
    class_of: Vec<usize>,
}

struct Pairs<'a> {
    base: &'a FiniteHyperring,
    members: &'a [usize],
    /// Position of each carrier element inside `members`.
    slot: Vec<usize>,
}

impl Pairs<'_> {
    fn k(&self) -> usize {
        self.members.len()
    }

    fn index(&self, (r, s): Fraction) -> usize {
        r * self.k() + self.slot[s]
    }

    fn fraction(&self, x: usize) -> Fraction {
        (x / self.k(), self.members[x % self.k()])
    }

    fn len(&self) -> usize {
        self.base.size() * self.k()
    }
}

pub fn localize(base: &Arc<FiniteHyperring>, s: &ElementSet, options: &LocalizeOptions) -> Result<LocalizedRing> {
    let m = base.size();
    if s.universe() != m {
        return Err(Error::RingMismatch);
    }
    if s.is_empty() {
        return Err(Error::EmptyMultiplicativeSet);
    }
    let members = s.to_vec();
    for &a in &members {
        for &b in &members {
            let ab = base.hmul(a, b);
            let closed = match options.closure {
                Closure::Weak => ab.intersects(s),
                Closure::Strict => ab.is_subset(s),
            };
            if !closed {
                return Err(Error::NotMultiplicativelyClosed { a, b });
            }
        }
    }
    let anchor = options.anchor.unwrap_or(members[0]);
    if !s.contains(anchor) {
        return Err(Error::MissingParameter("anchor inside the multiplicative set"));
    }
    let mut slot = vec![usize::MAX; m];
    for (k, &x) in members.iter().enumerate() {
        slot[x] = k;
    }
    let pairs = Pairs { base, members: &members, slot };
    let k = members.len();
    let n = pairs.len();

    // triple[(t·k + u)·m + r] = members[t] ∘ members[u] ∘ r
    let mut triple = Vec::with_capacity(k * k * m);
    for &t in &members {
        for &u in &members {
            let tu = base.hmul(t, u);
            for r in 0..m {
                triple.push(base.product_with_element(tu, r));
            }
        }
    }
    let related = |x: usize, y: usize| -> bool {
        let ((r1, s1), (r2, s2)) = (pairs.fraction(x), pairs.fraction(y));
        let (u1, u2) = (pairs.slot[s1], pairs.slot[s2]);
        (0..k).any(|t| {
            let left = &triple[(t * k + u1) * m + r2];
            let right = &triple[(t * k + u2) * m + r1];
            match options.mode {
                LocalizationMode::SetEquality => left == right,
                LocalizationMode::Intersect => left.intersects(right),
            }
        })
    };
    let mut rows = vec![ElementSet::empty(n); n];
    for x in 0..n {
        for y in x..n {
            if related(x, y) {
                rows[x].insert(y);
                rows[y].insert(x);
            }
        }
    }
    for x in 0..n {
        if !rows[x].contains(x) {
            let f = pairs.fraction(x);
            return Err(Error::NotAnEquivalence { x: f, y: f, z: f });
        }
        for y in &rows[x] {
            if let Some(z) = rows[y].difference(&rows[x]).first() {
                return Err(Error::NotAnEquivalence {
                    x: pairs.fraction(x),
                    y: pairs.fraction(y),
                    z: pairs.fraction(z),
                });
            }
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Fraction>> = Vec::new();
    for x in 0..n {
        if class_of[x] == usize::MAX {
            let id = classes.len();
            for y in &rows[x] {
                class_of[y] = id;
            }
            classes.push(rows[x].iter().map(|y| pairs.fraction(y)).collect());
        }
    }
    let c = classes.len();

    let class = |f: Fraction| class_of[pairs.index(f)];
    let denominators = |s1: usize, s2: usize| base.hmul(s1, s2).intersection(s);
    let sum_classes = |(r1, s1): Fraction, (r2, s2): Fraction| -> ElementSet {
        let mut out = ElementSet::empty(c);
        let dens = denominators(s1, s2);
        for a in base.hmul(r1, s2) {
            for b in base.hmul(r2, s1) {
                let num = base.add(a, b);
                for d in &dens {
                    out.insert(class((num, d)));
                }
            }
        }
        out
    };
    let product_classes = |(r1, s1): Fraction, (r2, s2): Fraction| -> ElementSet {
        let mut out = ElementSet::empty(c);
        let dens = denominators(s1, s2);
        for a in base.hmul(r1, r2) {
            for d in &dens {
                out.insert(class((a, d)));
            }
        }
        out
    };

    let reps: Vec<Fraction> = classes.iter().map(|members| members[0]).collect();
    let mut add = Vec::with_capacity(c * c);
    let mut hmul = Vec::with_capacity(c * c);
    for &x in &reps {
        for &y in &reps {
            let sum = sum_classes(x, y);
            if sum.len() != 1 {
                return Err(Error::IllDefinedTables { op: "add", left: x, right: y });
            }
            add.push(sum.first().expect("single class"));
            hmul.push(product_classes(x, y));
        }
    }
    for x in 0..n {
        let fx = pairs.fraction(x);
        let cx = class_of[x];
        for y in 0..n {
            let fy = pairs.fraction(y);
            let cy = class_of[y];
            let sum = sum_classes(fx, fy);
            if sum.len() != 1 || sum.first() != Some(add[cx * c + cy]) {
                return Err(Error::IllDefinedTables { op: "add", left: fx, right: fy });
            }
            if product_classes(fx, fy) != hmul[cx * c + cy] {
                return Err(Error::IllDefinedTables { op: "mul", left: fx, right: fy });
            }
        }
    }
    let mut neg = vec![usize::MAX; c];
    for x in 0..n {
        let (r, d) = pairs.fraction(x);
        let nc = class((base.neg(r), d));
        let cx = class_of[x];
        if neg[cx] == usize::MAX {
            neg[cx] = nc;
        } else if neg[cx] != nc {
            return Err(Error::IllDefinedTables { op: "neg", left: classes[cx][0], right: (r, d) });
        }
    }
    let labels = reps.iter().map(|&(r, d)| format!("{}/{}", base.label(r), base.label(d))).collect();
    let zero = class((base.zero(), anchor));
    let ring = FiniteHyperring::from_parts(labels, zero, add, neg, hmul)?;
    Ok(LocalizedRing {
        base: base.clone(),
        s: s.clone(),
        ring: Arc::new(ring),
        anchor,
        classes,
        members,
        class_of,
    })
}

impl LocalizedRing {
    /// Class of the fraction `r/d`; `d` must lie in `S`.
    pub fn class_of(&self, (r, d): Fraction) -> Option<usize> {
        let slot = self.members.binary_search(&d).ok()?;
        (r < self.base.size()).then(|| self.class_of[r * self.members.len() + slot])
    }

    /// `r ↦ r/s₀`.
    pub fn map(&self, r: usize) -> usize {
        self.class_of((r, self.anchor)).expect("anchor lies in S")
    }

    /// `S⁻¹P = {p/s : p ∈ P, s ∈ S}`.
    pub fn localize_set(&self, p: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.ring.size());
        for r in p {
            for &d in &self.members {
                out.insert(self.class_of((r, d)).expect("member of S"));
            }
        }
        out
    }

    pub fn localize_ideal(&self, p: &Hyperideal) -> Result<Hyperideal> {
        if p.ring().fingerprint() != self.base.fingerprint() {
            return Err(Error::RingMismatch);
        }
        Hyperideal::new(self.ring.clone(), self.localize_set(p.set()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_ra, RaSpec};

    fn ra(n: usize, a: &[usize]) -> Arc<FiniteHyperring> {
        Arc::new(build_ra(&RaSpec::new(n, a.iter().copied())).unwrap())
    }

    fn set(m: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_indices(m, xs.iter().copied())
    }

    #[test]
    fn units_give_an_isomorphic_copy() {
        let z6 = ra(6, &[1]);
        let loc = localize(&z6, &set(6, &[1, 5]), &LocalizeOptions::default()).unwrap();
        assert_eq!(loc.ring.size(), 6);
        let loc = localize(&z6, &set(6, &[1]), &LocalizeOptions::default()).unwrap();
        assert_eq!(loc.ring.size(), 6);
        assert_eq!((0..6).map(|r| loc.map(r)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn classical_localization_collapses() {
        // ℤ₆ at S = {1,3}: 3 is idempotent, S⁻¹ℤ₆ ≅ ℤ₂
        let z6 = ra(6, &[1]);
        let loc = localize(&z6, &set(6, &[1, 3]), &LocalizeOptions::default()).unwrap();
        assert_eq!(loc.ring.size(), 2);
        let p = Hyperideal::from_generators(&z6, &[2]).unwrap();
        assert!(loc.localize_ideal(&p).unwrap().is_zero());
    }

    #[test]
    fn guards() {
        let z6 = ra(6, &[1]);
        assert_eq!(
            localize(&z6, &set(6, &[]), &LocalizeOptions::default()).unwrap_err(),
            Error::EmptyMultiplicativeSet
        );
        assert_eq!(
            localize(&z6, &set(6, &[2, 3]), &LocalizeOptions::default()).unwrap_err(),
            Error::NotMultiplicativelyClosed { a: 2, b: 2 }
        );
        let strict = LocalizeOptions { closure: Closure::Strict, ..Default::default() };
        let z6a = ra(6, &[0, 1]);
        assert_eq!(
            localize(&z6a, &set(6, &[1]), &strict).unwrap_err(),
            Error::NotMultiplicativelyClosed { a: 1, b: 1 }
        );
        // 1/1 + 1/1 has numerators 1∘1 + 1∘1 = {0,1,2}
        assert_eq!(
            localize(&z6a, &set(6, &[1]), &LocalizeOptions::default()).unwrap_err(),
            Error::IllDefinedTables { op: "add", left: (0, 1), right: (1, 1) }
        );
    }
}
