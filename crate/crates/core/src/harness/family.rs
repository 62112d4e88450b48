use core::fmt;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::construct::{build_ra, product_hyperring, quotient_hyperring, ProductRing, RaSpec};
use crate::error::Result;
use crate::ideal::{Hyperideal, IdealLattice};
use crate::ring::FiniteHyperring;
use crate::set::ElementSet;

/// How to rebuild one ring of a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingRecipe {
    Ra(RaSpec),
    Product(Vec<RaSpec>),
    /// `RA / J` with `J` given by its element list.
    Quotient { base: RaSpec, ideal: Vec<usize> },
}

fn write_ra(f: &mut fmt::Formatter<'_>, spec: &RaSpec) -> fmt::Result {
    write!(f, "RA({};", spec.n)?;
    for (k, a) in spec.a.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for RingRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingRecipe::Ra(spec) => write_ra(f, spec),
            RingRecipe::Product(specs) => {
                for (k, spec) in specs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write_ra(f, spec)?;
                }
                Ok(())
            }
            RingRecipe::Quotient { base, ideal } => {
                write_ra(f, base)?;
                f.write_str("/{")?;
                for (k, x) in ideal.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
        }
    }
}

fn parse_list(s: &str) -> Option<Vec<usize>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn parse_ra(s: &str) -> Option<RaSpec> {
    let inner = s.strip_prefix("RA(")?.strip_suffix(')')?;
    let (n, a) = inner.split_once(';')?;
    Some(RaSpec::new(n.trim().parse().ok()?, parse_list(a)?))
}

impl RingRecipe {
    /// Inverse of the `Display` form, e.g. `RA(4;0,1)*RA(2;1)` or `RA(8;0,1)/{0,4}`.
    pub fn parse(s: &str) -> Option<Self> {
        if let Some((base, ideal)) = s.split_once('/') {
            let ideal = parse_list(ideal.strip_prefix('{')?.strip_suffix('}')?)?;
            return Some(RingRecipe::Quotient { base: parse_ra(base)?, ideal });
        }
        if s.contains('*') {
            return s.split('*').map(parse_ra).collect::<Option<Vec<_>>>().map(RingRecipe::Product);
        }
        parse_ra(s).map(RingRecipe::Ra)
    }

    pub fn build(&self, product_cap: usize) -> Result<BuiltRing> {
        match self {
            RingRecipe::Ra(spec) => {
                Ok(BuiltRing { ring: Arc::new(build_ra(spec)?), product: None, ra: Some(spec.clone()) })
            }
            RingRecipe::Product(specs) => {
                let factors = specs.iter().map(|s| build_ra(s).map(Arc::new)).collect::<Result<Vec<_>>>()?;
                let product = product_hyperring(&factors, product_cap)?;
                Ok(BuiltRing { ring: product.ring.clone(), product: Some(product), ra: None })
            }
            RingRecipe::Quotient { base, ideal } => {
                let ring = Arc::new(build_ra(base)?);
                for &x in ideal {
                    ring.check_element(x)?;
                }
                let j = Hyperideal::new(ring.clone(), ElementSet::from_indices(ring.size(), ideal.iter().copied()))?;
                let q = quotient_hyperring(&j)?;
                Ok(BuiltRing { ring: q.ring, product: None, ra: None })
            }
        }
    }
}

/// A constructed ring with whatever structure its recipe exposes.
#[derive(Debug, Clone)]
pub struct BuiltRing {
    pub ring: Arc<FiniteHyperring>,
    pub product: Option<ProductRing>,
    pub ra: Option<RaSpec>,
}

/// Every `RA(n;A)` with `2 ≤ n ≤ nmax` and `1 ≤ |A| ≤ amax`, by `n`, then `|A|`, then `A`.
pub fn ra_specs(nmax: usize, amax: usize) -> Vec<RaSpec> {
    let mut out = Vec::new();
    for n in 2..=nmax {
        for size in 1..=amax.min(n) {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                out.push(RaSpec::new(n, combo.iter().copied()));
                // next combination in lexicographic order
                let mut i = size;
                while i > 0 && combo[i - 1] == n - size + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                combo[i - 1] += 1;
                for j in i..size {
                    combo[j] = combo[j - 1] + 1;
                }
            }
        }
    }
    out
}

/// Non-decreasing index tuples of length `arity` over `specs` whose carriers multiply to at most `max_carrier`.
fn product_tuples(specs: &[RaSpec], arity: usize, max_carrier: usize) -> Vec<Vec<RaSpec>> {
    fn go(
        specs: &[RaSpec],
        arity: usize,
        max_carrier: usize,
        start: usize,
        size: usize,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<RaSpec>>,
    ) {
        if acc.len() == arity {
            out.push(acc.iter().map(|&k| specs[k].clone()).collect());
            return;
        }
        for k in start..specs.len() {
            let next = size * specs[k].n;
            if next > max_carrier {
                continue;
            }
            acc.push(k);
            go(specs, arity, max_carrier, k, next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(specs, arity, max_carrier, 0, 1, &mut Vec::new(), &mut out);
    out
}

/// A deterministic generator of test rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Empty,
    /// RA sweep, its proper nonzero quotients and its pairwise products with carrier ≤ 36.
    Default,
    RaSweep { nmax: usize, amax: usize },
    ProductSweep { arity: usize, max_carrier: usize, nmax: usize, amax: usize },
    QuotientSweep { nmax: usize, amax: usize },
    /// Products of exactly `arity` hyperfields from the RA sweep.
    HyperfieldProducts { arity: usize, max_carrier: usize, nmax: usize, amax: usize },
    /// Ports of the worked examples.
    Fixtures,
    List(Vec<RingRecipe>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub key: String,
    pub recipe: RingRecipe,
}

impl Instance {
    pub fn new(recipe: RingRecipe) -> Self {
        Instance { key: format!("{recipe}"), recipe }
    }
}

fn quotient_recipes(nmax: usize, amax: usize) -> Vec<RingRecipe> {
    let mut out = Vec::new();
    for spec in ra_specs(nmax, amax) {
        let ring = Arc::new(build_ra(&spec).expect("sweep specs are valid"));
        let lattice = IdealLattice::enumerate(&ring, usize::MAX).expect("no cap");
        for j in lattice.proper().filter(|j| !j.is_zero()) {
            out.push(RingRecipe::Quotient { base: spec.clone(), ideal: j.set().to_vec() });
        }
    }
    out
}

fn is_hyperfield(spec: &RaSpec) -> bool {
    let ring = Arc::new(build_ra(spec).expect("sweep specs are valid"));
    IdealLattice::enumerate(&ring, usize::MAX).expect("no cap").is_hyperfield()
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Empty => "empty".into(),
            Family::Default => "default".into(),
            Family::RaSweep { nmax, amax } => format!("ra-sweep(nmax={nmax},amax={amax})"),
            Family::ProductSweep { arity, max_carrier, nmax, amax } => {
                format!("product-sweep(arity={arity},max-carrier={max_carrier},nmax={nmax},amax={amax})")
            }
            Family::QuotientSweep { nmax, amax } => format!("quotient-sweep(nmax={nmax},amax={amax})"),
            Family::HyperfieldProducts { arity, max_carrier, nmax, amax } => format!(
                "hyperfield-products(arity={arity},max-carrier={max_carrier},nmax={nmax},amax={amax})"
            ),
            Family::Fixtures => "fixtures".into(),
            Family::List(items) => format!("list({})", items.len()),
        }
    }

    pub fn instances(&self) -> Vec<Instance> {
        let recipes: Vec<RingRecipe> = match self {
            Family::Empty => Vec::new(),
            Family::Default => {
                let mut all: Vec<RingRecipe> = ra_specs(8, 2).into_iter().map(RingRecipe::Ra).collect();
                all.extend(quotient_recipes(8, 2));
                all.extend(product_tuples(&ra_specs(8, 2), 2, 36).into_iter().map(RingRecipe::Product));
                all
            }
            Family::RaSweep { nmax, amax } => ra_specs(*nmax, *amax).into_iter().map(RingRecipe::Ra).collect(),
            Family::ProductSweep { arity, max_carrier, nmax, amax } => {
                product_tuples(&ra_specs(*nmax, *amax), *arity, *max_carrier)
                    .into_iter()
                    .map(RingRecipe::Product)
                    .collect()
            }
            Family::QuotientSweep { nmax, amax } => quotient_recipes(*nmax, *amax),
            Family::HyperfieldProducts { arity, max_carrier, nmax, amax } => {
                let fields: Vec<RaSpec> = ra_specs(*nmax, *amax).into_iter().filter(is_hyperfield).collect();
                product_tuples(&fields, *arity, *max_carrier).into_iter().map(RingRecipe::Product).collect()
            }
            Family::Fixtures => fixtures(),
            Family::List(items) => items.clone(),
        };
        recipes.into_iter().map(Instance::new).collect()
    }
}

fn fixtures() -> Vec<RingRecipe> {
    let ra = |n: usize, a: &[usize]| RaSpec::new(n, a.iter().copied());
    alloc::vec![
        RingRecipe::Ra(ra(16, &[0, 1])),
        RingRecipe::Ra(ra(16, &[1])),
        RingRecipe::Ra(ra(36, &[2, 3])),
        RingRecipe::Ra(ra(16, &[4, 8])),
        RingRecipe::Ra(ra(8, &[0, 1])),
        RingRecipe::Ra(ra(6, &[0, 1])),
        RingRecipe::Ra(ra(6, &[1])),
        RingRecipe::Ra(ra(12, &[1])),
        RingRecipe::Product(alloc::vec![ra(2, &[1]), ra(3, &[1])]),
        RingRecipe::Product(alloc::vec![ra(4, &[0, 1]), ra(2, &[1])]),
        RingRecipe::Product(alloc::vec![ra(2, &[1]), ra(2, &[1]), ra(3, &[1])]),
        RingRecipe::Quotient { base: ra(8, &[0, 1]), ideal: alloc::vec![0, 4] },
    ]
}
