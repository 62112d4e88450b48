use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::ideal::Hyperideal;
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// Monomials `a·xᵈ` over a base hyperring with `d ≤ dmax`, multiplied by
/// `a·xⁿ • b·xᵐ = (a∘b)·xⁿ⁺ᵐ`.
#[derive(Debug, Clone)]
pub struct MonomialRing {
    pub base: Arc<FiniteHyperring>,
    pub dmax: usize,
}

/// A monomial ideal, described by one coefficient ideal per degree `0..=dmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub coefficients: Vec<Hyperideal>,
}

impl MonomialRing {
    pub fn new(base: Arc<FiniteHyperring>, dmax: usize) -> Self {
        MonomialRing { base, dmax }
    }

    pub fn monomial_product(&self, (a, n): (usize, usize), (b, m): (usize, usize)) -> Result<Vec<(usize, usize)>> {
        self.base.check_element(a)?;
        self.base.check_element(b)?;
        for d in [n, m, n + m] {
            if d > self.dmax {
                return Err(Error::DegreeOverflow { degree: d, dmax: self.dmax });
            }
        }
        Ok(self.base.hmul(a, b).iter().map(|c| (c, n + m)).collect())
    }

    /// `P[x]`: the coefficient ideal `P` in every degree.
    pub fn extend(&self, p: &Hyperideal) -> MonomialIdeal {
        MonomialIdeal { coefficients: vec![p.clone(); self.dmax + 1] }
    }

    /// Degree `d` of the product is generated by every `Iᵢ∘Pⱼ` with `i + j = d`.
    pub fn ideal_product(&self, i: &MonomialIdeal, p: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut coefficients = Vec::with_capacity(self.dmax + 1);
        for d in 0..=self.dmax {
            let mut raw = self.base.empty_set();
            for k in 0..=d {
                raw.union_with(&i.coefficients[k].raw_product(&p.coefficients[d - k])?);
            }
            coefficients.push(Hyperideal::generated(&self.base, &raw)?);
        }
        Ok(MonomialIdeal { coefficients })
    }

    /// `P`-prime test over monomials: `(a∘b)xⁿ⁺ᵐ ⊆ P − IP ⇒ axⁿ ∈ P ∨ bxᵐ ∈ P`,
    /// with the difference taken degreewise. Witnesses read `[a, n, b, m]`.
    pub fn is_i_prime(&self, p: &MonomialIdeal, i: &MonomialIdeal) -> Result<ClassificationReport> {
        let ip = self.ideal_product(i, p)?;
        let m = self.base.size();
        let mut scanned = 0u64;
        for n in 0..=self.dmax {
            for d2 in 0..=self.dmax - n {
                let hypothesis: ElementSet =
                    p.coefficients[n + d2].set().difference(ip.coefficients[n + d2].set());
                for a in 0..m {
                    for b in 0..m {
                        scanned += 1;
                        if self.base.hmul(a, b).is_subset(&hypothesis)
                            && !p.coefficients[n].contains(a)
                            && !p.coefficients[d2].contains(b)
                        {
                            return Ok(ClassificationReport {
                                verdict: false,
                                witness: Some(vec![a, n, b, d2]),
                                scanned,
                            });
                        }
                    }
                }
            }
        }
        Ok(ClassificationReport { verdict: true, witness: None, scanned })
    }
}

impl MonomialIdeal {
    pub fn is_proper(&self) -> bool {
        self.coefficients.iter().any(|c| c.is_proper())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_ra, RaSpec};

    fn ra(n: usize, a: &[usize]) -> Arc<FiniteHyperring> {
        Arc::new(build_ra(&RaSpec::new(n, a.iter().copied())).unwrap())
    }

    #[test]
    fn products() {
        let z6 = ra(6, &[0, 1]);
        let r = MonomialRing::new(z6.clone(), 3);
        assert_eq!(r.monomial_product((2, 1), (3, 2)).unwrap(), vec![(0, 3)]);
        assert_eq!(r.monomial_product((2, 0), (2, 0)).unwrap(), vec![(0, 0), (4, 0)]);
        let r2 = MonomialRing::new(z6, 2);
        assert_eq!(r2.monomial_product((1, 1), (1, 2)).unwrap_err(), Error::DegreeOverflow { degree: 3, dmax: 2 });
    }

    #[test]
    fn extension_keeps_i_primeness() {
        let z16 = ra(16, &[0, 1]);
        let r = MonomialRing::new(z16.clone(), 2);
        let p = r.extend(&Hyperideal::from_generators(&z16, &[4]).unwrap());
        let i = r.extend(&Hyperideal::from_generators(&z16, &[2]).unwrap());
        let report = r.is_i_prime(&p, &i).unwrap();
        assert!(report.verdict);
        // degree pairs (n, m) with n + m ≤ 2: six of them
        assert_eq!(report.scanned, 6 * 256);
    }
}
