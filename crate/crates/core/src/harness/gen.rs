//! Seeded generation of small groups, gradings and elements.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::{is_in_torsionfree_summand, FgGroup, GroupElem, GroupHom, Matrix};
use crate::element::{ratio, Coeff, Element, Ring};
use crate::ringexpr::{Base, NormalForm};

pub type Rng8 = ChaCha8Rng;

const RETRIES: usize = 64;
const ORDERS: [i64; 4] = [2, 3, 4, 6];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `ker δ` and `ker ψ` torsionfree.
    EntireTorsionfreeKernel,
    /// `ker ψ` has torsion.
    TorsionKernel,
    /// `base = Q`, `δ` an isomorphism.
    SimpleFullSupport,
    /// `G = F ⊕ H` with `F` free and `R` simple with `ψ(D) ⊆ D`.
    FreeSummand,
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::EntireTorsionfreeKernel => "entire-torsionfree-kernel",
            Profile::TorsionKernel => "torsion-kernel",
            Profile::SimpleFullSupport => "simple-full-support",
            Profile::FreeSummand => "free-summand",
        }
    }
}

/// A generated ring with its coarsening and sample elements.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Ring,
    pub psi: GroupHom,
    /// `F` and `H` generators in `G` for the free-summand profile.
    pub summand: Option<(Vec<GroupElem>, Vec<GroupElem>)>,
    /// Coarse-homogeneous elements.
    pub samples: Vec<Element>,
}

/// `Z^r ⊕ ⊕ Z/d`, rank at most `max_rank`, at most `max_torsion` factors.
pub fn group(rng: &mut Rng8, max_rank: usize, max_torsion: usize) -> FgGroup {
    let rank = rng.gen_range(0..=max_rank);
    let k = rng.gen_range(0..=max_torsion);
    let orders: Vec<i64> = (0..k).map(|_| *ORDERS.choose(rng).expect("nonempty")).collect();
    FgGroup::from_orders(rank, &orders).expect("valid orders").0
}

pub fn element(rng: &mut Rng8, g: &FgGroup, radius: i64) -> GroupElem {
    let coords: Vec<i64> = (0..g.dim())
        .map(|i| match g.generator_order(i) {
            0 => rng.gen_range(-radius..=radius),
            d => rng.gen_range(0..d),
        })
        .collect();
    g.reduce(&coords)
}

/// A random homomorphism; torsion generators are sent to elements killed by
/// their order.
pub fn hom(rng: &mut Rng8, g: &FgGroup, h: &FgGroup, radius: i64) -> GroupHom {
    let mut m = Matrix::zeros(h.dim(), g.dim());
    for i in 0..g.dim() {
        let o = g.generator_order(i);
        for j in 0..h.dim() {
            let d = h.generator_order(j);
            m[(j, i)] = match (o, d) {
                (0, 0) => rng.gen_range(-radius..=radius),
                (_, 0) => 0,
                (0, d) => rng.gen_range(0..d),
                (o, d) => d / o.gcd(&d) * rng.gen_range(0..o.gcd(&d)),
            };
        }
    }
    GroupHom::new(g.clone(), h.clone(), m).expect("well defined by construction")
}

/// A quotient map `G ↠ G/K` for a random `K` with at most `max_gens`
/// generators satisfying `accept`.
pub fn surjection(
    rng: &mut Rng8,
    g: &FgGroup,
    max_gens: usize,
    accept: impl Fn(&FgGroup, &[GroupElem], &GroupHom) -> bool,
) -> Option<GroupHom> {
    for _ in 0..RETRIES {
        let k = rng.gen_range(0..=max_gens);
        let gens: Vec<GroupElem> = (0..k).map(|_| element(rng, g, 2)).collect();
        let (_, psi) = g.quotient_by(&gens).expect("generators lie in G");
        if accept(g, &gens, &psi) {
            return Some(psi);
        }
    }
    None
}

pub fn torsionfree_kernel(_: &FgGroup, _: &[GroupElem], psi: &GroupHom) -> bool {
    psi.kernel().group.is_torsionfree()
}

pub fn in_torsionfree_summand(g: &FgGroup, gens: &[GroupElem], _: &GroupHom) -> bool {
    is_in_torsionfree_summand(g, gens).unwrap_or(false)
}

pub fn torsion_in_kernel(_: &FgGroup, _: &[GroupElem], psi: &GroupHom) -> bool {
    !psi.kernel().group.is_torsionfree()
}

/// A nonzero random coefficient; rational when `fractional` is set.
pub fn coefficient(rng: &mut Rng8, fractional: bool) -> Coeff {
    let mut n = rng.gen_range(-3..=3);
    if n == 0 {
        n = 1;
    }
    let d = if fractional { rng.gen_range(1..=3) } else { 1 };
    ratio(n, d)
}

/// A nonzero element homogeneous for `grading: E → X`, with at most
/// `max_terms` terms drawn from a box of `ker(grading)` around a random
/// exponent.
pub fn homogeneous(
    rng: &mut Rng8,
    ring: &Ring,
    grading: &GroupHom,
    max_terms: usize,
    fractional: bool,
) -> Element {
    let f0 = element(rng, &ring.e, 2);
    let k = grading.kernel();
    let box_elems = k.group.box_elements(1);
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = BTreeMap::new();
    for _ in 0..n {
        let kk = box_elems.choose(rng).expect("box is nonempty");
        let f = ring.e.add(&f0, &k.inclusion.apply(kk));
        terms.insert(f, coefficient(rng, fractional && ring.base == Base::Q));
    }
    Element::from_terms(ring, terms).expect("valid terms")
}

/// Random coarse-homogeneous samples for `ψ∘δ`.
pub fn samples(rng: &mut Rng8, ring: &Ring, psi: &GroupHom, count: usize) -> Vec<Element> {
    let coarse = psi.compose(&ring.delta).expect("ψ starts at G");
    (0..count)
        .map(|_| homogeneous(rng, ring, &coarse, 4, true))
        .collect()
}

fn base(rng: &mut Rng8) -> Base {
    if rng.gen_bool(0.5) {
        Base::Z
    } else {
        Base::Q
    }
}

fn entire_torsionfree_kernel(rng: &mut Rng8) -> Option<Instance> {
    let e = group(rng, 2, 1);
    let delta = surjection(rng, &e, 1, torsionfree_kernel)?;
    let ring: Ring = Arc::new(NormalForm::group_ring(base(rng), delta));
    let psi = surjection(rng, &ring.g, 1, torsionfree_kernel)?;
    let samples = samples(rng, &ring, &psi, 4);
    Some(Instance {
        ring,
        psi,
        summand: None,
        samples,
    })
}

fn torsion_kernel(rng: &mut Rng8) -> Option<Instance> {
    let n = *ORDERS.choose(rng).expect("nonempty");
    let g = if rng.gen_bool(0.5) {
        FgGroup::cyclic(n).expect("n ≥ 2")
    } else {
        FgGroup::from_orders(rng.gen_range(0..=1), &[n]).expect("valid").0
    };
    let ring: Ring = Arc::new(NormalForm::group_ring(base(rng), GroupHom::identity(&g)));
    let psi = if g.rank() == 0 {
        GroupHom::zero(&g, &FgGroup::trivial())
    } else {
        surjection(rng, &g, 1, torsion_in_kernel)?
    };
    let samples = samples(rng, &ring, &psi, 4);
    Some(Instance {
        ring,
        psi,
        summand: None,
        samples,
    })
}

fn simple_full_support(rng: &mut Rng8) -> Option<Instance> {
    let g = group(rng, 2, 1);
    let ring: Ring = Arc::new(NormalForm::group_ring(Base::Q, GroupHom::identity(&g)));
    let psi = surjection(rng, &g, 1, |_, _, _| true)?;
    let samples = samples(rng, &ring, &psi, 4);
    Some(Instance {
        ring,
        psi,
        summand: None,
        samples,
    })
}

/// `G = F ⊕ H`, `D = D_F ⊕ D_H` so that `ψ(D) = D_H ⊆ D`; `R = Q[D]`
/// graded by the inclusion.
fn free_summand(rng: &mut Rng8) -> Option<Instance> {
    let f = FgGroup::free(rng.gen_range(1..=2));
    let h = group(rng, 1, 1);
    let sum = f.direct_sum(&h);
    let g = sum.group.clone();
    let mut d_gens: Vec<GroupElem> = Vec::new();
    for x in f.generators() {
        let k = rng.gen_range(1..=2);
        d_gens.push(sum.inj[0].apply(&f.scale(k, &x)));
    }
    for (i, x) in h.generators().iter().enumerate() {
        let k = if h.generator_order(i) == 0 {
            rng.gen_range(1..=2)
        } else {
            1
        };
        d_gens.push(sum.inj[1].apply(&h.scale(k, x)));
    }
    let d = g.subgroup_generated_by(&d_gens).ok()?;
    let ring: Ring = Arc::new(NormalForm::group_ring(Base::Q, d.inclusion.clone()));
    let f_gens: Vec<GroupElem> = f.generators().iter().map(|x| sum.inj[0].apply(x)).collect();
    let h_gens: Vec<GroupElem> = h.generators().iter().map(|x| sum.inj[1].apply(x)).collect();
    let psi = sum.proj[1].clone();
    // ψ lands in the abstract H; coarse samples are drawn for it.
    let samples = samples(rng, &ring, &psi, 4);
    Some(Instance {
        ring,
        psi,
        summand: Some((f_gens, h_gens)),
        samples,
    })
}

/// Deterministic instance for `profile`; retries on rejection.
pub fn generate_instance(rng: &mut Rng8, profile: Profile) -> Instance {
    for _ in 0..RETRIES {
        let inst = match profile {
            Profile::EntireTorsionfreeKernel => entire_torsionfree_kernel(rng),
            Profile::TorsionKernel => torsion_kernel(rng),
            Profile::SimpleFullSupport => simple_full_support(rng),
            Profile::FreeSummand => free_summand(rng),
        };
        if let Some(inst) = inst {
            if satisfies(&inst, profile) {
                return inst;
            }
        }
    }
    unreachable!("profile {} has easy instances", profile.name())
}

/// Re-verifies the profile hypotheses with the classification predicates.
pub fn satisfies(inst: &Instance, profile: Profile) -> bool {
    let nf = &inst.ring;
    let kpsi = inst.psi.kernel().group;
    match profile {
        Profile::EntireTorsionfreeKernel => nf.is_entire() && kpsi.is_torsionfree(),
        Profile::TorsionKernel => !kpsi.is_torsionfree(),
        Profile::SimpleFullSupport => nf.is_simple() && nf.classify().full_support,
        Profile::FreeSummand => nf.is_simple(),
    }
}
