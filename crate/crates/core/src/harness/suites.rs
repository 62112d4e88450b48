use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::context::{ArrowEnd, RingContext};
use super::{HarnessConfig, Outcome, ProductConvention, Sink, Suite};
use crate::classify;
use crate::construct::MonomialRing;
use crate::error::{Error, Result};
use crate::ideal::Hyperideal;
use crate::set::ElementSet;

pub(super) fn applies(suite: Suite, ctx: &RingContext) -> bool {
    match suite {
        Suite::T8 => ctx.product.as_ref().is_some_and(|p| p.factors.len() == 2),
        Suite::T14 => ctx.product.is_some(),
        Suite::T17 => {
            ctx.product.is_some()
                && ctx.factors().iter().all(|f| f.lattice.is_hyperfield())
                && ctx.maximal().len() >= ctx.factors().len()
        }
        _ => true,
    }
}

fn pairs(ctx: &RingContext) -> Vec<Vec<usize>> {
    ctx.proper().flat_map(|p| (0..ctx.len()).map(move |i| vec![p, i])).collect()
}

fn with_degree(ctx: &RingContext) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in ctx.proper() {
        for i in 0..ctx.len() {
            for n in 1..=2 {
                out.push(vec![p, i, n]);
            }
        }
    }
    out
}

fn arrow_cases(ctx: &RingContext, keep: impl Fn(&super::Arrow) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (h, arrow) in ctx.arrows().iter().enumerate() {
        if !keep(arrow) {
            continue;
        }
        let t = ctx.end(&arrow.target);
        for q in t.proper() {
            for i in 0..t.len() {
                out.push(vec![h, q, i]);
            }
        }
    }
    out
}

/// Lattice indices of each ideal's members grouped by radical.
fn radical_groups(ctx: &RingContext, cap: u64) -> Result<Vec<(usize, Vec<usize>)>> {
    let flags = ctx.two_absorbing_primary(cap)?;
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in ctx.proper() {
        if !flags[k] {
            continue;
        }
        let r = ctx.radical_idx(k);
        match groups.iter_mut().find(|(g, _)| *g == r) {
            Some((_, members)) => members.push(k),
            None => groups.push((r, vec![k])),
        }
    }
    groups.sort();
    Ok(groups)
}

pub(super) fn cases(suite: Suite, ctx: &RingContext, config: &HarnessConfig) -> Vec<Vec<usize>> {
    match suite {
        Suite::T1
        | Suite::T2
        | Suite::T4
        | Suite::T4a
        | Suite::T4b
        | Suite::T5
        | Suite::T6
        | Suite::T9a
        | Suite::T9b
        | Suite::T17
        | Suite::Hierarchy => pairs(ctx),
        Suite::T3a => {
            let mut out = Vec::new();
            for (h, arrow) in ctx.arrows().iter().enumerate() {
                if matches!(arrow.source, ArrowEnd::This) && arrow.hom.is_surjective() {
                    let kernel = arrow.hom.kernel();
                    for p in ctx.proper().filter(|&p| kernel.is_subset(ctx.ideal(p))) {
                        out.extend((0..ctx.len()).map(|i| vec![h, p, i]));
                    }
                }
            }
            out
        }
        Suite::T3b => arrow_cases(ctx, |_| true),
        Suite::T11 => arrow_cases(ctx, |a| a.hom.is_bijective()),
        Suite::T7 => {
            let mut out = Vec::new();
            for p in ctx.proper() {
                for j in (0..ctx.len()).filter(|&j| ctx.ideal(j).is_subset(ctx.ideal(p))) {
                    out.extend((0..ctx.len()).map(|i| vec![p, i, j]));
                }
            }
            out
        }
        Suite::T8 => {
            let f = ctx.factors();
            let mut out = Vec::new();
            for p in ctx.proper() {
                for i1 in 0..f[0].len() {
                    out.extend((0..f[1].len()).map(|i2| vec![p, i1, i2]));
                }
            }
            out
        }
        Suite::T10 => {
            // An over-cap ring yields a single case that reports the error.
            let Ok(groups) = radical_groups(ctx, config.scan_cap) else { return vec![vec![]] };
            let mut out = Vec::new();
            for (r, members) in groups {
                for (x, &a) in members.iter().enumerate() {
                    out.push(vec![r, a]);
                    for &b in &members[x + 1..] {
                        out.push(vec![r, a, b]);
                    }
                }
                if members.len() > 2 {
                    let mut all = vec![r];
                    all.extend(members);
                    out.push(all);
                }
            }
            out
        }
        Suite::T12 | Suite::T15 => with_degree(ctx),
        Suite::T13 => {
            let proper: Vec<usize> = ctx.proper().collect();
            let mut out = Vec::new();
            for (x, &p1) in proper.iter().enumerate() {
                for &p2 in &proper[x + 1..] {
                    for i in 0..ctx.len() {
                        for n1 in 1..=2 {
                            for n2 in 1..=2 {
                                out.push(vec![p1, p2, i, n1, n2]);
                            }
                        }
                    }
                }
            }
            out
        }
        Suite::T14 => {
            let mut out: Vec<Vec<usize>> =
                ctx.proper().filter(|&p| !ctx.ideal(p).is_zero()).map(|p| vec![0, p]).collect();
            for p in ctx.proper() {
                out.extend((0..ctx.len()).map(|i| vec![1, p, i]));
            }
            out
        }
        Suite::T16 => {
            let locs = ctx.localizations(&config.localization);
            let mut out: Vec<Vec<usize>> = (0..locs.len()).map(|s| vec![s]).collect();
            for (s, (set, loc)) in locs.iter().enumerate() {
                if loc.is_err() {
                    continue;
                }
                for p in ctx.proper().filter(|&p| ctx.ideal(p).set().is_disjoint(set)) {
                    out.extend((0..ctx.len()).map(|i| vec![s, p, i]));
                }
            }
            out
        }
    }
}

fn unpack<const N: usize>(case: &[usize]) -> Result<[usize; N]> {
    case.try_into().map_err(|_| Error::LengthMismatch { expected: N, found: case.len() })
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn index_in(ctx: &RingContext, set: &ElementSet) -> Option<usize> {
    ctx.lattice.index_of(set)
}

/// Witness of `P` failing to be `I`-prime, as text.
fn iprime_witness(ctx: &RingContext, p: usize, i: usize) -> String {
    let ip = ctx.ideal(ctx.product_idx(i, p)).set();
    match classify::is_prime_against(ctx.ideal(p), ip) {
        Ok(r) => format!("{:?}", r.witness),
        Err(e) => format!("{e}"),
    }
}

pub(super) fn evaluate(
    suite: Suite,
    ctx: &RingContext,
    config: &HarnessConfig,
    case: &[usize],
    sink: &mut Sink,
) -> Result<Outcome> {
    match suite {
        Suite::T1 => t1(ctx, case, sink),
        Suite::T2 => t2(ctx, config, case, sink),
        Suite::T3a => t3a(ctx, case, sink),
        Suite::T3b => t3b(ctx, case, sink),
        Suite::T4 => t4(ctx, config, case, sink),
        Suite::T4a => t4a(ctx, case, sink),
        Suite::T4b => t4b(ctx, case, sink),
        Suite::T5 => t5(ctx, case, sink),
        Suite::T6 => t6(ctx, case, sink),
        Suite::T7 => t7(ctx, case, sink),
        Suite::T8 => t8(ctx, config, case, sink),
        Suite::T9a => t9a(ctx, case, sink),
        Suite::T9b => t9b(ctx, case, sink),
        Suite::T10 => t10(ctx, config, case, sink),
        Suite::T11 => t11(ctx, config, case, sink),
        Suite::T12 => t12(ctx, config, case, sink),
        Suite::T13 => t13(ctx, config, case, sink),
        Suite::T14 => t14(ctx, config, case, sink),
        Suite::T15 => t15(ctx, config, case, sink),
        Suite::T16 => t16(ctx, config, case, sink),
        Suite::T17 => t17(ctx, config, case, sink),
        Suite::Hierarchy => hierarchy(ctx, config, case, sink),
    }
}

fn t1(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let ip = ctx.product_idx(i, p);
    let lhs = ctx.iprime(p, i);
    sink.trace.step(|| format!("P = {}, I = {}, IP = {}", ctx.ideal(p).set(), ctx.ideal(i).set(), ctx.ideal(ip).set()));
    sink.trace.step(|| format!("P is I-prime: {lhs}"));
    let q = ctx.quotient(ip);
    let image = Hyperideal::new(q.ring.clone(), q.image_set(ctx.ideal(p).set()))?;
    sink.trace.step(|| format!("P/IP = {} in a quotient of size {}", image.set(), q.ring.size()));
    let rhs = classify::is_weakly_prime(&image)?;
    sink.trace.step(|| format!("P/IP is weakly prime: {} witness {:?}", rhs.verdict, rhs.witness));
    Ok(verdict(lhs == rhs.verdict, || {
        format!(
            "I-prime is {lhs} but P/IP weakly prime is {} (quotient witness {:?}, ring witness {})",
            rhs.verdict,
            rhs.witness,
            iprime_witness(ctx, p, i)
        )
    }))
}

fn t2(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    if !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let poly = MonomialRing::new(ctx.ring.clone(), config.dmax);
    let px = poly.extend(ctx.ideal(p));
    let ix = poly.extend(ctx.ideal(i));
    let r = poly.is_i_prime(&px, &ix)?;
    sink.trace.step(|| format!("P[x] is I[x]-prime up to degree {}: {} witness {:?}", config.dmax, r.verdict, r.witness));
    Ok(verdict(r.verdict, || format!("monomial witness (a, deg, b, deg) = {:?}", r.witness)))
}

fn t3a(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [h, p, i] = unpack(case)?;
    let arrow = ctx.arrows().get(h).ok_or(Error::IndexOutOfRange { index: h, len: ctx.arrows().len() })?;
    let f = &arrow.hom;
    if !matches!(arrow.source, ArrowEnd::This) || !f.is_surjective() || !f.kernel().is_subset(ctx.ideal(p)) {
        return Ok(Outcome::Vacuous);
    }
    if !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let t = ctx.end(&arrow.target);
    let fp = f.image_set(ctx.ideal(p).set());
    let fi = f.image_set(ctx.ideal(i).set());
    sink.trace.step(|| format!("{}: f(P) = {fp}, f(I) = {fi}", arrow.label));
    let (Some(fp_idx), Some(fi_idx)) = (index_in(t, &fp), index_in(t, &fi)) else {
        return Ok(Outcome::Fail(format!("{}: image {fp} or {fi} is not a hyperideal", arrow.label)));
    };
    if !t.ideal(fp_idx).is_proper() {
        return Ok(Outcome::Fail(format!("{}: f(P) is the whole ring", arrow.label)));
    }
    let ok = t.iprime(fp_idx, fi_idx);
    sink.trace.step(|| format!("f(P) is f(I)-prime: {ok}"));
    Ok(verdict(ok, || format!("{}: f(P) = {fp} is not {fi}-prime, witness {}", arrow.label, iprime_witness(t, fp_idx, fi_idx))))
}

fn t3b(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [h, q, i] = unpack(case)?;
    let arrow = ctx.arrows().get(h).ok_or(Error::IndexOutOfRange { index: h, len: ctx.arrows().len() })?;
    let (s, t) = (ctx.end(&arrow.source), ctx.end(&arrow.target));
    if !t.iprime(q, i) {
        return Ok(Outcome::Vacuous);
    }
    let pq = arrow.hom.preimage_set(t.ideal(q).set());
    let pi = arrow.hom.preimage_set(t.ideal(i).set());
    sink.trace.step(|| format!("{}: Q = {}, I = {}, f^-1(Q) = {pq}, f^-1(I) = {pi}", arrow.label, t.ideal(q).set(), t.ideal(i).set()));
    let (Some(pq_idx), Some(pi_idx)) = (index_in(s, &pq), index_in(s, &pi)) else {
        return Ok(Outcome::Fail(format!("{}: preimage {pq} or {pi} is not a hyperideal", arrow.label)));
    };
    if !s.ideal(pq_idx).is_proper() {
        return Ok(Outcome::Skip("preimage-not-proper"));
    }
    let ok = s.iprime(pq_idx, pi_idx);
    sink.trace.step(|| format!("f^-1(Q) is f^-1(I)-prime: {ok}"));
    Ok(verdict(ok, || {
        format!("{}: f^-1(Q) = {pq} is not {pi}-prime, witness {}", arrow.label, iprime_witness(s, pq_idx, pi_idx))
    }))
}

fn t4(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let iprime = ctx.iprime(p, i);
    let prime = ctx.is_prime(p);
    sink.trace.step(|| format!("P = {}, I = {}", ctx.ideal(p).set(), ctx.ideal(i).set()));
    sink.trace.step(|| format!("P is I-prime: {iprime}, P is prime: {prime}"));
    if !iprime || prime {
        return Ok(Outcome::Vacuous);
    }
    let square = ctx.ideal(ctx.product_idx(p, p)).set();
    let ip = if config.corrupt_product {
        ctx.ring.singleton(ctx.ring.zero())
    } else {
        ctx.ideal(ctx.product_idx(i, p)).set().clone()
    };
    sink.trace.step(|| format!("P^2 = {square}"));
    sink.trace.step(|| format!("IP = {ip}"));
    let ok = square.is_subset(&ip);
    sink.trace.step(|| format!("check P^2 in IP: {ok}"));
    Ok(verdict(ok, || format!("P^2 = {square} not inside IP = {ip}, missing {:?}", square.difference(&ip).first())))
}

fn t4a(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    if !ctx.iprime(p, i) || ctx.is_prime(p) {
        return Ok(Outcome::Vacuous);
    }
    let ip = ctx.product_idx(i, p);
    let (rp, rip) = (ctx.radical_idx(p), ctx.radical_idx(ip));
    sink.trace.step(|| format!("rad P = {}, IP = {}, rad IP = {}", ctx.ideal(rp).set(), ctx.ideal(ip).set(), ctx.ideal(rip).set()));
    Ok(verdict(rp == rip, || format!("rad P = {} but rad IP = {}", ctx.ideal(rp).set(), ctx.ideal(rip).set())))
}

fn t4b(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let ip = ctx.product_idx(i, p);
    let cube = ctx.product_idx(ctx.product_idx(p, p), p);
    if !ctx.iprime(p, i) || !ctx.ideal(ip).is_subset(ctx.ideal(cube)) {
        return Ok(Outcome::Vacuous);
    }
    let (limit, steps) = ctx.ideal(p).power_limit()?;
    let l = ctx.index(limit.set());
    sink.trace.step(|| format!("IP = {}, P^3 = {}, limit of P^k = {} after {steps} steps", ctx.ideal(ip).set(), ctx.ideal(cube).set(), limit.set()));
    let ok = ctx.iprime(p, l);
    Ok(verdict(ok, || format!("P is not {}-prime, witness {}", limit.set(), iprime_witness(ctx, p, l))))
}

fn t5(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let primary = classify::is_i_primary(ctx.ideal(p), ctx.ideal(i), &ctx.lattice)?;
    if !primary.verdict {
        return Ok(Outcome::Vacuous);
    }
    let (rp, ri) = (ctx.radical_idx(p), ctx.radical_idx(i));
    sink.trace.step(|| format!("rad P = {}, rad I = {}", ctx.ideal(rp).set(), ctx.ideal(ri).set()));
    if !ctx.ideal(rp).is_proper() {
        return Ok(Outcome::Fail(String::from("rad P is the whole ring: no prime contains P")));
    }
    let ok = ctx.iprime(rp, ri);
    Ok(verdict(ok, || {
        format!("rad P = {} is not {}-prime, witness {}", ctx.ideal(rp).set(), ctx.ideal(ri).set(), iprime_witness(ctx, rp, ri))
    }))
}

fn t6(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let ip = ctx.product_idx(i, p);
    let pset = ctx.ideal(p).set();
    let outside: Vec<usize> = pset.complement().iter().collect();
    let c1 = ctx.iprime(p, i);
    let w2 = outside.iter().copied().find(|&r| *ctx.colon(p, r) != pset.union(ctx.colon(ip, r)));
    let w3 = outside.iter().copied().find(|&r| ctx.colon(p, r) != pset && ctx.colon(p, r) != ctx.colon(ip, r));
    let mut w4 = None;
    'outer: for j in 0..ctx.len() {
        for k in 0..ctx.len() {
            let jk = ctx.ideal(ctx.product_idx(j, k));
            if jk.is_subset(ctx.ideal(p))
                && !jk.is_subset(ctx.ideal(ip))
                && !ctx.ideal(j).is_subset(ctx.ideal(p))
                && !ctx.ideal(k).is_subset(ctx.ideal(p))
            {
                w4 = Some((j, k));
                break 'outer;
            }
        }
    }
    let (c2, c3, c4) = (w2.is_none(), w3.is_none(), w4.is_none());
    sink.trace.step(|| format!("P = {pset}, I = {}, IP = {}", ctx.ideal(i).set(), ctx.ideal(ip).set()));
    sink.trace.step(|| format!("(1) {c1} witness {}", iprime_witness(ctx, p, i)));
    sink.trace.step(|| format!("(2) {c2} at r = {w2:?}"));
    sink.trace.step(|| format!("(3) {c3} at r = {w3:?}"));
    sink.trace.step(|| format!("(4) {c4} at (J, K) = {w4:?}"));
    let agree = c1 == c2 && c2 == c3 && c3 == c4;
    if !agree {
        let pattern: String = [c1, c2, c3, c4].iter().map(|&b| if b { 'T' } else { 'F' }).collect();
        sink.note(&format!("pattern-{pattern}"));
    }
    Ok(verdict(agree, || {
        let r2 = w2.map(|r| format!("; (2) fails at r={r}: (P:r)={} vs P u (IP:r)={}", ctx.colon(p, r), pset.union(ctx.colon(ip, r))));
        let r3 = w3.map(|r| format!("; (3) fails at r={r}: (P:r)={} (IP:r)={}", ctx.colon(p, r), ctx.colon(ip, r)));
        let r4 = w4.map(|(j, k)| format!("; (4) fails at J={} K={}", ctx.ideal(j).set(), ctx.ideal(k).set()));
        format!(
            "(1)={c1} (2)={c2} (3)={c3} (4)={c4}{}{}{}",
            r2.unwrap_or_default(),
            r3.unwrap_or_default(),
            r4.unwrap_or_default()
        )
    }))
}

fn t7(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i, j] = unpack(case)?;
    if !ctx.ideal(j).is_subset(ctx.ideal(p)) || !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let q = ctx.quotient(j);
    let pj = Hyperideal::new(q.ring.clone(), q.image_set(ctx.ideal(p).set()))?;
    let ij = Hyperideal::generated(&q.ring, &q.image_set(ctx.ideal(i).set()))?;
    sink.trace.step(|| format!("J = {}, P/J = {}, image of I = {}", ctx.ideal(j).set(), pj.set(), ij.set()));
    let r = classify::is_i_prime(&pj, &ij)?;
    sink.trace.step(|| format!("P/J is I-prime: {} witness {:?}", r.verdict, r.witness));
    Ok(verdict(r.verdict, || format!("P/J = {} is not {}-prime in R/J, quotient witness {:?}", pj.set(), ij.set(), r.witness)))
}

/// Type flags of a box ideal under one product convention.
fn t8_types(
    ctx: &RingContext,
    comps: Option<[usize; 2]>,
    case: [usize; 2],
    raw: bool,
) -> [bool; 3] {
    let f = ctx.factors();
    let Some(c) = comps else { return [false; 3] };
    let absorbs = |k: usize, target: usize| -> bool {
        let fk = &f[k];
        if raw {
            fk.ideal(case[k]).raw_product(fk.ideal(target)).expect("same ring") == *fk.ideal(target).set()
        } else {
            fk.product_idx(case[k], target) == target
        }
    };
    let iprime = |k: usize| -> bool {
        let fk = &f[k];
        if raw {
            let ip = fk.ideal(case[k]).raw_product(fk.ideal(c[k])).expect("same ring");
            classify::is_prime_against(fk.ideal(c[k]), &ip).expect("proper").verdict
        } else {
            fk.iprime(c[k], case[k])
        }
    };
    let proper = |k: usize| f[k].ideal(c[k]).is_proper();
    let whole = |k: usize| !proper(k);
    [
        proper(0) && proper(1) && absorbs(0, c[0]) && absorbs(1, c[1]),
        proper(0) && whole(1) && iprime(0) && absorbs(1, f[1].whole()),
        whole(0) && proper(1) && iprime(1) && absorbs(0, f[0].whole()),
    ]
}

fn t8(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i1, i2] = unpack(case)?;
    let product = ctx.product.as_ref().ok_or(Error::TooFewFactors(1))?;
    let f = ctx.factors();
    let i = product.product_ideal(&[f[0].ideal(i1).clone(), f[1].ideal(i2).clone()])?;
    let i_idx = ctx.index(i.set());
    let pset = ctx.ideal(p).set();
    let comps = product.is_box(pset).then(|| {
        [f[0].index(&product.component_set(pset, 0)), f[1].index(&product.component_set(pset, 1))]
    });
    let hyp = ctx.iprime(p, i_idx);
    let types = if hyp { t8_types(ctx, comps, [i1, i2], false) } else { [false; 3] };
    sink.trace.step(|| format!("P = {pset}, I = {}, box components {comps:?}", i.set()));
    sink.trace.step(|| format!("P is I-prime: {hyp}, types {types:?}"));
    if config.ideal_product == ProductConvention::RawUnion {
        let raw_ip = i.raw_product(ctx.ideal(p))?;
        let raw_hyp = classify::is_prime_against(ctx.ideal(p), &raw_ip)?.verdict;
        let raw_types = if raw_hyp { t8_types(ctx, comps, [i1, i2], true) } else { [false; 3] };
        sink.trace.step(|| format!("raw union: IP = {raw_ip}, I-prime {raw_hyp}, types {raw_types:?}"));
        if (raw_hyp, raw_types) != (hyp, types) {
            sink.note("raw-union-divergence");
            sink.observe(|| {
                format!(
                    "T8 raw-union divergence at P={pset} I={}: generated ({hyp}, {types:?}) raw ({raw_hyp}, {raw_types:?})",
                    i.set()
                )
            });
        }
        if raw_hyp && raw_types.iter().filter(|&&t| t).count() != 1 {
            sink.note("raw-union-type-mismatch");
        }
    }
    if !hyp {
        return Ok(Outcome::Vacuous);
    }
    let matched = types.iter().filter(|&&t| t).count();
    Ok(verdict(matched == 1, || {
        format!("P = {pset} is {}-prime but matches {matched} types {types:?} (box components {comps:?})", i.set())
    }))
}

fn t9a(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    if !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let ip = ctx.product_idx(i, p);
    let pset = ctx.ideal(p).set();
    let witness = ctx.witness(0, p, ip, || {
        let ipset = ctx.ideal(ip).set();
        for a in &pset.complement() {
            let k = ctx.colon(p, a);
            let outside = k.difference(pset).first();
            let leaking = k.iter().find(|&x| !ctx.ring.hmul(a, x).is_subset(ipset));
            if let (Some(k1), Some(k2)) = (outside, leaking) {
                return Some(vec![a, k1, k2]);
            }
        }
        None
    });
    sink.trace.step(|| format!("P = {pset}, IP = {}, witness (a, k outside P, k with ak not in IP) = {witness:?}", ctx.ideal(ip).set()));
    Ok(match witness {
        None => Outcome::Pass,
        Some(w) => Outcome::Fail(format!(
            "a = {}, K = {{{}, {}}}: aK in P, aK not in IP = {}, K not in P",
            w[0],
            w[1],
            w[2],
            ctx.ideal(ip).set()
        )),
    })
}

fn t9b(ctx: &RingContext, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    if !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let ip = ctx.product_idx(i, p);
    let pset = ctx.ideal(p).set();
    let witness = ctx.witness(1, p, ip, || {
        let ipset = ctx.ideal(ip).set();
        let ring = &ctx.ring;
        let inside = |a: usize, b: usize| ring.hmul(a, b).is_subset(pset);
        let leaks = |a: usize, b: usize| !ring.hmul(a, b).is_subset(ipset);
        let m = ring.size();
        let bad: Vec<(usize, usize)> =
            (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| inside(a, b) && leaks(a, b)).collect();
        let outside = pset.complement();
        for x in &outside {
            for y in &outside {
                if !inside(x, y) {
                    continue;
                }
                if leaks(x, y) {
                    return Some(vec![x, x, y, y]);
                }
                if let Some(a) = (0..m).find(|&a| inside(a, y) && leaks(a, y)) {
                    return Some(vec![x, a, y, y]);
                }
                if let Some(b) = (0..m).find(|&b| inside(x, b) && leaks(x, b)) {
                    return Some(vec![x, x, y, b]);
                }
                if let Some(&(a, b)) = bad.iter().find(|&&(a, b)| inside(a, y) && inside(x, b)) {
                    return Some(vec![x, a, y, b]);
                }
            }
        }
        None
    });
    sink.trace.step(|| format!("P = {pset}, IP = {}, witness [x, a, y, b] = {witness:?}", ctx.ideal(ip).set()));
    Ok(match witness {
        None => Outcome::Pass,
        Some(w) => Outcome::Fail(format!(
            "A = {{{}, {}}}, B = {{{}, {}}}: AB in P, AB not in IP = {}, neither A nor B in P",
            w[0],
            w[1],
            w[2],
            w[3],
            ctx.ideal(ip).set()
        )),
    })
}

fn t10(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let flags = ctx.two_absorbing_primary(config.scan_cap)?;
    let (&r, members) = case.split_first().ok_or(Error::LengthMismatch { expected: 2, found: 0 })?;
    if members.is_empty() || members.iter().any(|&k| !flags[k] || ctx.radical_idx(k) != r) {
        return Ok(Outcome::Vacuous);
    }
    if !ctx.ideal(r).is_proper() {
        return Ok(Outcome::Skip("radical-is-whole-ring"));
    }
    let mut inter = ctx.ideal(members[0]).set().clone();
    for &k in &members[1..] {
        inter.intersect_with(ctx.ideal(k).set());
    }
    let q = ctx.index(&inter);
    sink.trace.step(|| format!("radical {}, members {members:?}, intersection {inter}", ctx.ideal(r).set()));
    let equal = q == r;
    let mut not_absorbing = None;
    for i in 0..ctx.len() {
        if !ctx.n_absorbing_iprime(q, i, 2, config.scan_cap)? {
            not_absorbing = Some(i);
            break;
        }
    }
    sink.trace.step(|| format!("intersection equals radical: {equal}; first I where not 2-absorbing I-prime: {not_absorbing:?}"));
    if !equal {
        sink.note("intersection-differs-from-radical");
    }
    if not_absorbing.is_some() {
        sink.note("intersection-not-2-absorbing-I-prime");
    }
    Ok(verdict(equal && not_absorbing.is_none(), || {
        let mut d = format!("intersection {inter} vs radical {}", ctx.ideal(r).set());
        if let Some(i) = not_absorbing {
            d.push_str(&format!("; not 2-absorbing {}-prime", ctx.ideal(i).set()));
        }
        d
    }))
}

fn t11(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [h, q, i] = unpack(case)?;
    let arrow = ctx.arrows().get(h).ok_or(Error::IndexOutOfRange { index: h, len: ctx.arrows().len() })?;
    if !arrow.hom.is_bijective() {
        return Ok(Outcome::Vacuous);
    }
    let (s, t) = (ctx.end(&arrow.source), ctx.end(&arrow.target));
    if !t.n_absorbing_iprime(q, i, 2, config.scan_cap)? {
        return Ok(Outcome::Vacuous);
    }
    let pq = s.index(&arrow.hom.preimage_set(t.ideal(q).set()));
    let pi = s.index(&arrow.hom.preimage_set(t.ideal(i).set()));
    sink.trace.step(|| format!("{}: h^-1(Q) = {}, h^-1(I) = {}", arrow.label, s.ideal(pq).set(), s.ideal(pi).set()));
    let ok = s.n_absorbing_iprime(pq, pi, 2, config.scan_cap)?;
    Ok(verdict(ok, || format!("{}: h^-1(Q) = {} is not 2-absorbing {}-prime", arrow.label, s.ideal(pq).set(), s.ideal(pi).set())))
}

fn t12(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i, n] = unpack(case)?;
    if !ctx.n_absorbing_iprime(p, i, n, config.scan_cap)? {
        return Ok(Outcome::Vacuous);
    }
    let (rp, ri) = (ctx.radical_idx(p), ctx.radical_idx(i));
    sink.trace.step(|| format!("P = {}, rad P = {}, rad I = {}", ctx.ideal(p).set(), ctx.ideal(rp).set(), ctx.ideal(ri).set()));
    if !ctx.ideal(rp).is_proper() {
        return Ok(Outcome::Fail(String::from("rad P is the whole ring: no prime contains P")));
    }
    let absorbing = ctx.n_absorbing_iprime(rp, ri, n, config.scan_cap)?;
    let mut escape = None;
    for a in ctx.ideal(rp).set() {
        let power = ctx.ring.element_power(a, n)?;
        if !power.is_subset(ctx.ideal(p).set()) {
            escape = Some((a, power));
            break;
        }
    }
    sink.trace.step(|| format!("rad P is {n}-absorbing rad I-prime: {absorbing}; a^{n} outside P: {escape:?}"));
    if !absorbing {
        sink.note("radical-not-absorbing");
    }
    if escape.is_some() {
        sink.note("power-escapes-P");
    }
    Ok(verdict(absorbing && escape.is_none(), || {
        let mut d = format!("P = {}, I = {}, n = {n}: rad P = {}", ctx.ideal(p).set(), ctx.ideal(i).set(), ctx.ideal(rp).set());
        if !absorbing {
            d.push_str(&format!(" is not {n}-absorbing {}-prime", ctx.ideal(ri).set()));
        }
        if let Some((a, power)) = &escape {
            d.push_str(&format!("; a = {a} has a^{n} = {power} outside P"));
        }
        d
    }))
}

fn t13(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p1, p2, i, n1, n2] = unpack(case)?;
    if ctx.product_idx(i, p1) != ctx.product_idx(i, p2)
        || !ctx.n_absorbing_iprime(p1, i, n1, config.scan_cap)?
        || !ctx.n_absorbing_iprime(p2, i, n2, config.scan_cap)?
    {
        return Ok(Outcome::Vacuous);
    }
    let n = n1 + n2;
    let required = (ctx.ring.size() as u128).pow(n as u32 + 1);
    if required > u128::from(config.scan_cap) {
        return Ok(Outcome::Skip("scan-cap"));
    }
    let q = ctx.index(&ctx.ideal(p1).set().intersection(ctx.ideal(p2).set()));
    let ok = ctx.n_absorbing_iprime(q, i, n, config.scan_cap)?;
    sink.trace.step(|| format!("P1 n P2 = {} is {n}-absorbing I-prime: {ok}", ctx.ideal(q).set()));
    Ok(verdict(ok, || {
        format!("P1 n P2 = {} is not {n}-absorbing {}-prime", ctx.ideal(q).set(), ctx.ideal(i).set())
    }))
}

fn t14(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let product = ctx.product.as_ref().ok_or(Error::TooFewFactors(1))?;
    let f = ctx.factors();
    let n = f.len() - 1;
    let (&part, rest) = case.split_first().ok_or(Error::LengthMismatch { expected: 2, found: 0 })?;
    let p = *rest.first().ok_or(Error::LengthMismatch { expected: 2, found: 1 })?;
    let pset = ctx.ideal(p).set();
    let comps: Option<Vec<usize>> =
        product.is_box(pset).then(|| (0..f.len()).map(|k| f[k].index(&product.component_set(pset, k))).collect());
    if part == 0 {
        if pset.len() == 1 || !ctx.n_absorbing_iprime(p, ctx.whole(), n + 1, config.scan_cap)? {
            return Ok(Outcome::Vacuous);
        }
        sink.trace.step(|| format!("P = {pset} is {}-absorbing R-prime; box components {comps:?}", n + 1));
        let Some(c) = comps else {
            return Ok(Outcome::Fail(format!("P = {pset} is not a product of component ideals")));
        };
        for (k, &ck) in c.iter().enumerate() {
            if !f[k].ideal(ck).is_proper() {
                sink.note("component-is-whole-factor");
                return Ok(Outcome::Fail(format!("P = {pset}: component {k} is the whole factor")));
            }
            if !f[k].n_absorbing_iprime(ck, f[k].whole(), n, config.scan_cap)? {
                return Ok(Outcome::Fail(format!(
                    "P = {pset}: component {k} = {} is not {n}-absorbing R-prime",
                    f[k].ideal(ck).set()
                )));
            }
        }
        return Ok(Outcome::Pass);
    }
    let i = *rest.get(1).ok_or(Error::LengthMismatch { expected: 3, found: case.len() })?;
    if !ctx.n_absorbing_iprime(p, i, n, config.scan_cap)? {
        return Ok(Outcome::Vacuous);
    }
    let ip = ctx.product_idx(i, p);
    sink.trace.step(|| format!("P = {pset}, IP = {}, box components {comps:?}", ctx.ideal(ip).set()));
    if ip == p {
        return Ok(Outcome::Pass);
    }
    let Some(c) = comps else {
        return Ok(Outcome::Fail(format!("P = {pset} differs from IP and is not a box")));
    };
    let Some(full) = (0..f.len()).find(|&k| !f[k].ideal(c[k]).is_proper()) else {
        return Ok(Outcome::Fail(format!("P = {pset} differs from IP and has no whole component")));
    };
    for (k, &ck) in c.iter().enumerate() {
        if k != full && f[k].ideal(ck).is_proper() && !f[k].n_absorbing(ck, None, n, config.scan_cap)? {
            return Ok(Outcome::Fail(format!(
                "P = {pset}: component {k} = {} is not {n}-absorbing",
                f[k].ideal(ck).set()
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn t15(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i, n] = unpack(case)?;
    if !ctx.n_absorbing_iprime(p, i, n, config.scan_cap)? {
        return Ok(Outcome::Vacuous);
    }
    let minimal = ctx.lattice.minimal_primes(ctx.ideal(p))?;
    sink.trace.step(|| format!("P = {} has {} minimal primes", ctx.ideal(p).set(), minimal.len()));
    Ok(verdict(minimal.len() <= n, || {
        let list: Vec<String> = minimal.iter().map(|q| format!("{}", q.set())).collect();
        format!(
            "P = {} is {n}-absorbing {}-prime with {} minimal primes {}",
            ctx.ideal(p).set(),
            ctx.ideal(i).set(),
            minimal.len(),
            list.join(" ")
        )
    }))
}

fn t16(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let locs = ctx.localizations(&config.localization);
    let s = *case.first().ok_or(Error::LengthMismatch { expected: 1, found: 0 })?;
    let (set, loc) = locs.get(s).ok_or(Error::IndexOutOfRange { index: s, len: locs.len() })?;
    if case.len() == 1 {
        sink.trace.step(|| format!("S = {set}: {:?}", loc.as_ref().map(|l| l.ring.size())));
        return Ok(match loc {
            Ok(_) => Outcome::Pass,
            Err(e) => {
                let label = match e {
                    Error::NotAnEquivalence { .. } => "localization-not-an-equivalence",
                    Error::IllDefinedTables { .. } => "localization-ill-defined",
                    Error::NotMultiplicativelyClosed { .. } => "localization-not-closed",
                    _ => "localization-other-error",
                };
                sink.observe(|| format!("S = {set}: {e}"));
                Outcome::Skip(label)
            }
        });
    }
    let [_, p, i] = unpack(case)?;
    let Ok(loc) = loc else { return Ok(Outcome::Vacuous) };
    if !ctx.ideal(p).set().is_disjoint(set) || !ctx.iprime(p, i) {
        return Ok(Outcome::Vacuous);
    }
    let lp = match loc.localize_ideal(ctx.ideal(p)) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::Fail(format!("S = {set}: S^-1 P is not a hyperideal: {e}"))),
    };
    let li = match loc.localize_ideal(ctx.ideal(i)) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::Fail(format!("S = {set}: S^-1 I is not a hyperideal: {e}"))),
    };
    sink.trace.step(|| format!("S = {set}: S^-1 P = {}, S^-1 I = {} in a ring of size {}", lp.set(), li.set(), loc.ring.size()));
    if !lp.is_proper() {
        return Ok(Outcome::Fail(format!("S = {set}: S^-1 P is the whole localization")));
    }
    let r = classify::is_i_prime(&lp, &li)?;
    Ok(verdict(r.verdict, || {
        format!("S = {set}: S^-1 P = {} is not {}-prime, witness {:?}", lp.set(), li.set(), r.witness)
    }))
}

fn t17(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let n = ctx.factors().len() - 1;
    let ok = ctx.n_absorbing_iprime(p, i, n, config.scan_cap)?;
    sink.trace.step(|| format!("P = {}, I = {}: {n}-absorbing I-prime {ok}", ctx.ideal(p).set(), ctx.ideal(i).set()));
    Ok(verdict(ok, || format!("P = {} is not {n}-absorbing {}-prime", ctx.ideal(p).set(), ctx.ideal(i).set())))
}

fn hierarchy(ctx: &RingContext, config: &HarnessConfig, case: &[usize], sink: &mut Sink) -> Result<Outcome> {
    let [p, i] = unpack(case)?;
    let iprime = ctx.iprime(p, i);
    if ctx.is_prime(p) && !iprime {
        return Ok(Outcome::Fail(format!("prime P = {} is not I-prime", ctx.ideal(p).set())));
    }
    if iprime {
        for j in (0..ctx.len()).filter(|&j| ctx.ideal(i).is_subset(ctx.ideal(j))) {
            if !ctx.iprime(p, j) {
                return Ok(Outcome::Fail(format!(
                    "P = {} is {}-prime but not {}-prime",
                    ctx.ideal(p).set(),
                    ctx.ideal(i).set(),
                    ctx.ideal(j).set()
                )));
            }
        }
    }
    let m = ctx.ring.size() as u128;
    let mut n = 1;
    let mut holds = iprime;
    while n < 4 && (n == 1 || ctx.ring.size() <= config.hierarchy_carrier) && m.pow(n as u32 + 2) <= u128::from(config.scan_cap)
    {
        let next = ctx.n_absorbing_iprime(p, i, n + 1, config.scan_cap)?;
        sink.trace.step(|| format!("{n}-absorbing I-prime {holds}, {}-absorbing I-prime {next}", n + 1));
        if holds && !next {
            return Ok(Outcome::Fail(format!(
                "P = {} is {n}-absorbing {}-prime but not {}-absorbing",
                ctx.ideal(p).set(),
                ctx.ideal(i).set(),
                n + 1
            )));
        }
        holds = next;
        n += 1;
    }
    Ok(Outcome::Pass)
}
