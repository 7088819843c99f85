use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use super::gen::{self, Profile, Rng8};
use super::{CheckId, Outcome};
use crate::abelian::{extended_compare, is_in_torsionfree_summand, FgGroup, GroupElem, GroupHom};
use crate::closure::{
    components_integral_check, decide_monomial, find_integral_equation, j_pi_embedding,
    lem50_iso, torsion_idempotent, verify_integral_witness, ComponentsVerdict, IntegralSearch,
    LaurentStructure, RingPair, SearchBounds,
};
use crate::element::{
    find_annihilator, homogeneous_unit_test, lemma_p70_check, nzd_test, ratio, Coeff, Element,
    Fraction, NzdVerdict, Ring, UnitVerdict,
};
use crate::error::{Error, Result};
use crate::ringexpr::{AlgebraMode, Base, NormalForm};

pub(super) fn run(
    id: CheckId,
    rng: &mut Rng8,
    trial: usize,
    bounds: SearchBounds,
) -> Result<Outcome> {
    match id {
        CheckId::P70 => p70(rng),
        CheckId::P80 => p80(rng),
        CheckId::P90 => p90(rng),
        CheckId::P100 => p100(rng),
        CheckId::A80 => a80(rng, bounds),
        CheckId::A90 => a90(trial),
        CheckId::A101 => a101(rng, bounds),
        CheckId::A120 => a120(rng, trial, bounds),
        CheckId::A140 => a140(rng, trial),
        CheckId::F20 => f20(rng, trial),
        CheckId::Lem50 => lem50(rng),
        CheckId::T4800 => t4800(rng, bounds),
    }
}

fn fail(detail: String) -> Result<Outcome> {
    Ok(Outcome::Fail(detail))
}

fn with_base(nf: &NormalForm, base: Base) -> Ring {
    Arc::new(NormalForm {
        base,
        ..nf.polynomial_ring()
    })
}

/// `R = Z[E]` inside `S = Q[E]` with the same grading.
fn z_in_q(nf: &NormalForm) -> RingPair {
    RingPair::new(&with_base(nf, Base::Z), &with_base(nf, Base::Q)).expect("compatible")
}

/// A nonzero element of finite order in the kernel, if any.
fn torsion_element(k: &crate::abelian::Subgroup) -> Option<GroupElem> {
    let r = k.group.rank();
    (k.group.dim() > r).then(|| k.inclusion.apply(&k.group.generator(r)))
}

/// `(1/n) Σ_{i<n} e_{f + i t}` for `t` of order `n`.
fn averaged(ring: &Ring, f: &GroupElem, t: &GroupElem) -> Element {
    let e = &ring.e;
    let n = e.element_order(t).expect("finite order");
    let terms = (0..n).map(|i| (e.add(f, &e.scale(i, t)), ratio(1, n)));
    Element::from_terms(ring, terms).expect("valid terms")
}

/// Fine components of `x`, ordered along the canonical extension of the
/// lexicographic order on `ker ψ`.
fn ordered_components(
    x: &Element,
    kernel: &crate::abelian::Subgroup,
) -> Result<Vec<(GroupElem, Element)>> {
    let g = &x.ring().g;
    let mut parts: Vec<(GroupElem, Element)> = x.homogeneous_components().into_iter().collect();
    let mut err = None;
    parts.sort_by(|a, b| match extended_compare(g, kernel, &a.0, &b.0) {
        Ok(Some(o)) => o,
        Ok(None) => {
            err = Some(Error::HypothesisViolated("components lie in different fibers"));
            Ordering::Equal
        }
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(parts),
    }
}

/// Products of coarse-homogeneous factors: the lemma's conclusion from the
/// predicate, and independently the top fine component of `xy` from the
/// ordering used in its proof.
fn p70(rng: &mut Rng8) -> Result<Outcome> {
    let inst = gen::generate_instance(rng, Profile::EntireTorsionfreeKernel);
    let ring = &inst.ring;
    let fine = ring.delta.clone();
    let coarse = inst.psi.compose(&ring.delta)?;
    let grading = if rng.gen_bool(0.5) { &fine } else { &coarse };
    let x = gen::homogeneous(rng, ring, grading, 3, true);
    let y = gen::homogeneous(rng, ring, &coarse, 3, true);

    let kernel = inst.psi.kernel();
    let xs = ordered_components(&x, &kernel)?;
    let ys = ordered_components(&y, &kernel)?;
    let xy = &x * &y;
    let (gx, top_x) = xs.last().expect("nonzero");
    let (gy, top_y) = ys.last().expect("nonzero");
    let top = ring.g.add(gx, gy);
    let top_xy = xy
        .homogeneous_components()
        .remove(&top)
        .unwrap_or_else(|| Element::zero(ring));
    if top_xy.is_zero() || top_xy != top_x * top_y {
        return fail(format!("top component of ({x})*({y}) is not the product of tops"));
    }

    match lemma_p70_check(&inst.psi, &x, &y) {
        Ok(v) if v.pass() => Ok(Outcome::Pass),
        Ok(_) => fail(format!("x = {x}, y = {y}")),
        // xy is not finely homogeneous: consistent with the lemma as long as
        // some factor is not.
        Err(Error::PreconditionViolated(_)) if !(x.is_homogeneous() && y.is_homogeneous()) => {
            Ok(Outcome::Pass)
        }
        Err(e) => Err(e),
    }
}

fn is_unit(v: &UnitVerdict, x: &Element) -> Option<bool> {
    match v {
        UnitVerdict::Unit(inv) => Some((x * &inv.reparent(x.ring()).ok()?).is_one()),
        UnitVerdict::NotUnit => Some(false),
        UnitVerdict::UnknownUpTo(_) => None,
    }
}

/// Units of the coarsened ring are exactly the fine units.
fn p80(rng: &mut Rng8) -> Result<Outcome> {
    let inst = gen::generate_instance(rng, Profile::EntireTorsionfreeKernel);
    let ring = &inst.ring;
    let coarse = inst.psi.compose(&ring.delta)?;
    let x = match rng.gen_range(0..3) {
        0 => {
            let c = if ring.base == Base::Z {
                Coeff::from_integer(if rng.gen_bool(0.5) { 1 } else { -1 }.into())
            } else {
                gen::coefficient(rng, true)
            };
            Element::monomial(ring, c, gen::element(rng, &ring.e, 2))?
        }
        1 => gen::homogeneous(rng, ring, &ring.delta, 3, true),
        _ => gen::homogeneous(rng, ring, &coarse, 3, true),
    };
    let coarse_ring: Ring = Arc::new(ring.coarsen(&inst.psi)?);
    let xc = x.reparent(&coarse_ring)?;
    let Some(in_coarse) = is_unit(&homogeneous_unit_test(&xc, 2)?, &xc) else {
        return Ok(Outcome::Inconclusive);
    };
    let in_fine = if x.is_homogeneous() {
        match is_unit(&homogeneous_unit_test(&x, 2)?, &x) {
            Some(b) => b,
            None => return Ok(Outcome::Inconclusive),
        }
    } else {
        false
    };
    if in_coarse == in_fine {
        Ok(Outcome::Pass)
    } else {
        fail(format!("x = {x}: coarse unit {in_coarse}, fine unit {in_fine}"))
    }
}

/// Coarsening a simple ring `Q[G]` along `ψ` gives an entire ring iff
/// `ker ψ` is torsionfree, and a simple one iff `ψ` is injective; torsion
/// in the kernel comes with an explicit zero-divisor.
fn p90(rng: &mut Rng8) -> Result<Outcome> {
    let g = gen::group(rng, 2, 1);
    let psi = gen::surjection(rng, &g, 2, |_, _, _| true).expect("no constraint");
    let r = NormalForm::group_ring(Base::Q, GroupHom::identity(&g));
    let c: Ring = Arc::new(r.coarsen(&psi)?);
    let k = psi.kernel();
    let tf = k.group.is_torsionfree();
    if c.is_entire() != tf {
        return fail(format!("ψ = {psi}: entire {} but torsionfree kernel {tf}", c.is_entire()));
    }
    if c.is_simple() != psi.is_injective() {
        return fail(format!("ψ = {psi}: simplicity not matched by injectivity"));
    }
    match torsion_element(&k) {
        Some(t) => {
            let x = Element::from_terms(
                &c,
                [(g.zero(), Coeff::one()), (t.clone(), -Coeff::one())],
            )?;
            match nzd_test(&x, 1)? {
                NzdVerdict::ZeroDivisor(w) if !w.is_zero() && (&w * &x).is_zero() => {
                    Ok(Outcome::Pass)
                }
                v => fail(format!("ψ = {psi}: 1 - e{t} gave {v:?}")),
            }
        }
        None => {
            let x = gen::homogeneous(rng, &c, &c.delta, 3, true);
            let y = gen::homogeneous(rng, &c, &c.delta, 3, true);
            if (&x * &y).is_zero() {
                fail(format!("zero product of ({x}) and ({y})"))
            } else {
                Ok(Outcome::Pass)
            }
        }
    }
}

/// Entirety of `R[F]` and `R[F]_[G]`: the stated criterion, the kernel
/// classification, and a bounded annihilator search all agree.
fn p100(rng: &mut Rng8) -> Result<Outcome> {
    let e0 = gen::group(rng, 1, 1);
    let d0 = gen::surjection(rng, &e0, 1, |_, _, _| true).expect("no constraint");
    let base = if rng.gen_bool(0.5) { Base::Z } else { Base::Q };
    let r = NormalForm::group_ring(base, d0);
    let f = gen::group(rng, 1, 1);
    let mode = if rng.gen_bool(0.5) {
        AlgebraMode::Fine
    } else {
        AlgebraMode::Coarse
    };
    let s: Ring = Arc::new(r.group_algebra(&f, mode)?);
    let expected = match mode {
        AlgebraMode::Fine => r.is_entire(),
        AlgebraMode::Coarse => r.is_entire() && f.is_torsionfree(),
    };
    let classified = s.classify().entire;
    if classified != expected {
        return fail(format!("{s}: classify {classified}, criterion {expected}"));
    }
    let k = s.delta.kernel();
    match torsion_element(&k) {
        Some(t) => {
            let x = Element::from_terms(
                &s,
                [(s.e.zero(), Coeff::one()), (t.clone(), -Coeff::one())],
            )?;
            match find_annihilator(&x, 3)? {
                Some(w) if (&w * &x).is_zero() && !classified => Ok(Outcome::Pass),
                w => fail(format!("{s}: 1 - e{t} annihilator {w:?}")),
            }
        }
        None => {
            let x = gen::homogeneous(rng, &s, &s.delta, 4, true);
            if !classified {
                return fail(format!("{s}: torsionfree kernel but not entire"));
            }
            match (find_annihilator(&x, 3)?, nzd_test(&x, 3)?) {
                (None, NzdVerdict::NonZeroDivisor) => Ok(Outcome::Pass),
                (w, v) => fail(format!("{s}: x = {x} annihilator {w:?}, verdict {v:?}")),
            }
        }
    }
}

fn decided(pair: &RingPair, x: &Fraction, search: &IntegralSearch) -> Result<Option<bool>> {
    if search.found() {
        return Ok(Some(true));
    }
    Ok(decide_monomial(pair, x)?.filter(|b| !b))
}

/// `s·e_f` is integral over `R[F]` iff `s` is integral over `R`.
fn a80(rng: &mut Rng8, bounds: SearchBounds) -> Result<Outcome> {
    let profile = if rng.gen_bool(0.5) {
        Profile::TorsionKernel
    } else {
        Profile::EntireTorsionfreeKernel
    };
    let inst = gen::generate_instance(rng, profile);
    let pair = z_in_q(&inst.ring);
    let s_ring = pair.s().clone();
    let kd = s_ring.delta.kernel();
    let s = match torsion_element(&kd) {
        Some(t) if rng.gen_bool(0.5) => averaged(&s_ring, &gen::element(rng, &s_ring.e, 2), &t),
        _ => gen::homogeneous(rng, &s_ring, &s_ring.delta, 2, true),
    };
    let f = gen::group(rng, 1, 1);
    let fe = gen::element(rng, &f, 2);
    let r_f: Ring = Arc::new(pair.r().group_algebra(&f, AlgebraMode::Fine)?);
    let s_f: Ring = Arc::new(s_ring.group_algebra(&f, AlgebraMode::Fine)?);
    let pair_f = RingPair::new(&r_f, &s_f)?;
    let split = s_ring.e.direct_sum(&f);
    let x = s.map_exponents(&split.inj[0], &s_f)?.shift(&split.inj[1].apply(&fe));

    let xs = pair.lift(&s)?;
    let xf = pair_f.lift(&x)?;
    let a = find_integral_equation(&pair, &xs, bounds)?;
    let b = find_integral_equation(&pair_f, &xf, bounds)?;
    match (decided(&pair, &xs, &a)?, decided(&pair_f, &xf, &b)?) {
        (Some(p), Some(q)) if p == q => Ok(Outcome::Pass),
        (Some(p), Some(q)) => fail(format!("s = {s}: over R {p}, s·e{fe} over R[F] {q}")),
        (Some(true), None) | (None, Some(true)) => {
            fail(format!("s = {s}: witness found on one side only"))
        }
        _ => Ok(Outcome::Inconclusive),
    }
}

/// The idempotent of `Q[Z/n]_[0]`, `n` cycling through 2, 3, 4, 6.
fn a90(trial: usize) -> Result<Outcome> {
    let n = [2, 3, 4, 6][trial % 4];
    let t = torsion_idempotent(n)?;
    let f = t.f.num();
    if &(f * f) != f {
        return fail(format!("n = {n}: f² ≠ f"));
    }
    let n_big = num_bigint::BigInt::from(n);
    if !f.terms().values().any(|c| *c.denom() == n_big) {
        return fail(format!("n = {n}: no coefficient with denominator n"));
    }
    if !verify_integral_witness(&t.pair, &t.f, &t.witness)? {
        return fail(format!("n = {n}: paper witness rejected"));
    }
    let b = SearchBounds { max_deg: 2, radius: 0 };
    match find_integral_equation(&t.pair, &t.f, b)? {
        IntegralSearch::Found(w) if verify_integral_witness(&t.pair, &t.f, &w)? => {}
        other => return fail(format!("n = {n}: search gave {other:?}")),
    }
    // The same element over the finely graded ring: components are not
    // integral, the coarse element is.
    let g = FgGroup::cyclic(n)?;
    let fine = NormalForm::group_ring(Base::Q, GroupHom::identity(&g));
    let pair = z_in_q(&fine);
    let x = pair.lift(&f.reparent(&with_base(&fine, Base::Q))?)?;
    let psi = GroupHom::zero(&g, &FgGroup::trivial());
    let report = components_integral_check(&pair, &psi, &x, b)?;
    if report.verdict != ComponentsVerdict::OnlyCoarse
        || !report.components.iter().all(|c| c.proven_not_integral)
    {
        return fail(format!("n = {n}: components verdict {}", report.verdict.as_str()));
    }
    Ok(Outcome::Pass)
}

fn verdict_outcome(report_verdict: ComponentsVerdict, x: &dyn core::fmt::Display) -> Outcome {
    match report_verdict {
        ComponentsVerdict::Both => Outcome::Pass,
        ComponentsVerdict::OnlyCoarse => {
            Outcome::Fail(format!("x = {x}: integral coarsely, some component not"))
        }
        ComponentsVerdict::OnlyFine | ComponentsVerdict::Neither => Outcome::Inconclusive,
    }
}

/// `ψ` with kernel in a torsionfree summand, over `Z[E] ⊆ Q[E]` for a
/// random grading.
fn summand_coarsening(rng: &mut Rng8) -> (NormalForm, GroupHom) {
    loop {
        let e = gen::group(rng, 2, 1);
        let delta = gen::surjection(rng, &e, 1, |_, _, _| true).expect("no constraint");
        let nf = NormalForm::group_ring(Base::Q, delta);
        let accept = |g: &FgGroup, gens: &[GroupElem], p: &GroupHom| {
            gen::torsionfree_kernel(g, gens, p) && gen::in_torsionfree_summand(g, gens, p)
        };
        if let Some(psi) = gen::surjection(rng, &nf.g, 1, accept) {
            return (nf, psi);
        }
    }
}

/// A coarse-homogeneous element of `Q[E]` that is integral over `Z[E]`
/// most of the time: integer part plus possibly an averaged idempotent
/// term or a fractional term.
fn coarse_sample(rng: &mut Rng8, s: &Ring, psi: &GroupHom) -> Result<Element> {
    let coarse = psi.compose(&s.delta)?;
    let base = gen::homogeneous(rng, s, &coarse, 3, false);
    let anchor = base.support().next().expect("nonzero").clone();
    let kd = s.delta.kernel();
    let extra = match rng.gen_range(0..4) {
        0 => match torsion_element(&kd) {
            Some(t) => averaged(s, &anchor, &t),
            None => Element::zero(s),
        },
        1 => {
            let kc = coarse.kernel();
            let off = kc.inclusion.apply(&gen::element(rng, &kc.group, 1));
            Element::monomial(s, ratio(1, 2), s.e.add(&anchor, &off))?
        }
        _ => Element::zero(s),
    };
    let x = base.try_add(&extra)?;
    Ok(if x.is_zero() { base } else { x })
}

/// Coarse integrality never holds without integrality of the components
/// when `ker ψ` lies in a torsionfree summand.
fn a101(rng: &mut Rng8, bounds: SearchBounds) -> Result<Outcome> {
    let (nf, psi) = summand_coarsening(rng);
    let pair = z_in_q(&nf);
    let x = coarse_sample(rng, pair.s(), &psi)?;
    let report = components_integral_check(&pair, &psi, &pair.lift(&x)?, bounds)?;
    Ok(verdict_outcome(report.verdict, &x))
}

/// a) as for A101, with `j^π` checked whenever `ker ψ` has a complement;
/// b) torsion in `ker ψ` yields an element integral only after coarsening.
fn a120(rng: &mut Rng8, trial: usize, bounds: SearchBounds) -> Result<Outcome> {
    if trial % 2 == 0 {
        let (nf, psi) = summand_coarsening(rng);
        let pair = z_in_q(&nf);
        if let Some(pi) = psi.find_section()? {
            let j = j_pi_embedding(pair.r(), &psi, &pi)?;
            let dom = j.domain().clone();
            let samples: Vec<Element> = (0..3)
                .map(|_| gen::homogeneous(rng, &dom, &pair.r().delta, 3, false))
                .collect();
            if !j.check_on(&samples)? {
                return fail(format!("j^π not a graded ring map for ψ = {psi}"));
            }
        }
        let x = coarse_sample(rng, pair.s(), &psi)?;
        let report = components_integral_check(&pair, &psi, &pair.lift(&x)?, bounds)?;
        return Ok(verdict_outcome(report.verdict, &x));
    }
    let inst = gen::generate_instance(rng, Profile::TorsionKernel);
    let g = inst.ring.g.clone();
    let fine = NormalForm::group_ring(Base::Q, GroupHom::identity(&g));
    let pair = z_in_q(&fine);
    let t = torsion_element(&inst.psi.kernel()).expect("torsion kernel profile");
    let x = averaged(pair.s(), &gen::element(rng, &g, 2), &t);
    let report = components_integral_check(&pair, &inst.psi, &pair.lift(&x)?, bounds)?;
    if report.verdict == ComponentsVerdict::OnlyCoarse
        && report.components.iter().all(|c| c.proven_not_integral)
    {
        Ok(Outcome::Pass)
    } else {
        fail(format!("x = {x}, ψ = {}: verdict {}", inst.psi, report.verdict.as_str()))
    }
}

/// `⟨(n, 1)⟩ ≤ Z ⊕ Z/n` is torsionfree but in no torsionfree summand;
/// every subgroup of a free group is.
fn a140(rng: &mut Rng8, trial: usize) -> Result<Outcome> {
    if trial % 2 == 0 {
        let n = [2, 3, 4][(trial / 2) % 3];
        let (g, _) = FgGroup::from_orders(1, &[n])?;
        let f = [g.reduce(&[n, 1])];
        let sub = g.subgroup_generated_by(&f)?;
        let in_summand = is_in_torsionfree_summand(&g, &f)?;
        if sub.group.is_torsionfree() && sub.group.rank() == 1 && !in_summand {
            Ok(Outcome::Pass)
        } else {
            fail(format!("n = {n}: torsionfree {}, in summand {in_summand}", sub.group.is_torsionfree()))
        }
    } else {
        let g = FgGroup::free(rng.gen_range(1..=3));
        let k = rng.gen_range(0..=3);
        let f: Vec<GroupElem> = (0..k).map(|_| gen::element(rng, &g, 3)).collect();
        if is_in_torsionfree_summand(&g, &f)? {
            Ok(Outcome::Pass)
        } else {
            fail(format!("{g}: subgroup {f:?} reported outside every summand"))
        }
    }
}

/// Division in `Q[Z]_[0]` (even trials) or in `K[Z]_[G]` for a simple
/// `K = Q[E]` (odd trials).
fn f20(rng: &mut Rng8, trial: usize) -> Result<Outcome> {
    let k = if trial % 2 == 0 {
        NormalForm::base(Base::Q)
    } else {
        let e = gen::group(rng, 1, 1);
        NormalForm::group_ring(Base::Q, GroupHom::identity(&e))
    };
    let s: Ring = Arc::new(k.group_algebra(&FgGroup::free(1), AlgebraMode::Coarse)?);
    let ls = LaurentStructure::recognize(&s)?;
    let f = gen::homogeneous(rng, &s, &s.delta, 4, true);
    let g = gen::homogeneous(rng, &s, &s.delta, 6, true);
    let d = ls.divide(&g, &f)?;
    let (u, v) = (&d.quotient, &d.remainder);
    if &(u * &f) + v != g {
        return fail(format!("g = {g}, f = {f}: g ≠ uf + v"));
    }
    let df = ls.max_z_degree(&f).expect("nonzero");
    if ls.max_z_degree(v).is_some_and(|dv| dv >= df) {
        return fail(format!("g = {g}, f = {f}: remainder degree too large"));
    }
    if !u.is_homogeneous() || !v.is_homogeneous() {
        return fail(format!("g = {g}, f = {f}: inhomogeneous quotient or remainder"));
    }
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.shuffle(rng);
    let again = ls.divide_termwise(&g, &f, &order)?;
    if again != d {
        return fail(format!("g = {g}, f = {f}: division depends on term order {order:?}"));
    }
    Ok(Outcome::Pass)
}

fn random_element(rng: &mut Rng8, ring: &Ring, terms: usize) -> Result<Element> {
    let mut t = BTreeMap::new();
    for _ in 0..rng.gen_range(1..=terms) {
        t.insert(gen::element(rng, &ring.e, 2), gen::coefficient(rng, true));
    }
    Element::from_terms(ring, t)
}

/// `p` and `q` are inverse, and `p` is a unital, multiplicative, graded
/// map, on random elements.
fn lem50(rng: &mut Rng8) -> Result<Outcome> {
    let inst = gen::generate_instance(rng, Profile::FreeSummand);
    let (f_gens, h_gens) = inst.summand.clone().expect("free-summand profile");
    let l = lem50_iso(&inst.ring, &f_gens, &h_gens)?;
    let x = random_element(rng, l.q.domain(), 5)?;
    let y = random_element(rng, l.p.domain(), 5)?;
    let y2 = random_element(rng, l.p.domain(), 5)?;
    if l.p.apply(&l.q.apply(&x)?)? != x {
        return fail(format!("p(q({x})) ≠ {x}"));
    }
    if l.q.apply(&l.p.apply(&y)?)? != y {
        return fail(format!("q(p({y})) ≠ {y}"));
    }
    let hom = gen::homogeneous(rng, l.p.domain(), &l.p.domain().delta, 3, true);
    if !l.p.check_on(&[y, y2, hom])? {
        return fail("p is not a graded ring map on the sample".into());
    }
    Ok(Outcome::Pass)
}

/// Integral closure in the graded fraction field against coarsening, on
/// elements of `Q(R)_[ψ]`: `G` torsionfree, or `ker ψ` in a torsionfree
/// summand with full support.
fn t4800(rng: &mut Rng8, bounds: SearchBounds) -> Result<Outcome> {
    let (r, psi) = loop {
        let e = gen::group(rng, 2, 1);
        let Some(delta) = gen::surjection(rng, &e, 1, gen::torsionfree_kernel) else {
            continue;
        };
        let base = if rng.gen_bool(0.7) { Base::Z } else { Base::Q };
        let r = NormalForm::group_ring(base, delta);
        let accept = |g: &FgGroup, gens: &[GroupElem], p: &GroupHom| {
            g.is_torsionfree() || gen::in_torsionfree_summand(g, gens, p)
        };
        if let Some(psi) = gen::surjection(rng, &r.g, 1, accept) {
            if r.is_entire() && r.classify().full_support {
                break (r, psi);
            }
        }
    };
    let r: Ring = Arc::new(r);
    let s: Ring = Arc::new(r.fraction_field()?);
    let pair = RingPair::new(&r, &s)?;
    let poly: Ring = Arc::new(s.polynomial_ring());
    let coarse = psi.compose(&poly.delta)?;
    let fractional = rng.gen_bool(0.3);
    let num = gen::homogeneous(rng, &poly, &coarse, 3, fractional);
    let x = match rng.gen_range(0..3) {
        0 => Fraction::from_element(&s, num)?,
        1 => {
            let b = gen::homogeneous(rng, &poly, &poly.delta, 2, false);
            Fraction::new(&s, &num * &b, b)?
        }
        _ => {
            let b = gen::homogeneous(rng, &poly, &poly.delta, 2, false);
            Fraction::new(&s, num, b)?
        }
    };
    if x.is_zero() {
        return Ok(Outcome::Inconclusive);
    }
    let report = components_integral_check(&pair, &psi, &x, bounds)?;
    Ok(verdict_outcome(report.verdict, &x))
}
