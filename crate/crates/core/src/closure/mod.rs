//! Integrality and almost-integrality witnesses, their bounded searches, and
//! the explicit constructions built around them.

mod constructions;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{GroupElem, GroupHom, Subgroup};
use crate::element::{Coeff, Element, Fraction, Ring};
use crate::error::{Error, Result};
use crate::linalg::{solve_integral, solve_rational, IntegerSpan, RationalSpan, Q};
use crate::ringexpr::Base;

pub use constructions::{
    graded_euclidean_division, graded_euclidean_division_termwise, j_pi_embedding, lem50_iso,
    torsion_idempotent, Division, LaurentStructure, Lem50, RingMap, TorsionIdempotent,
};

/// A ring `R` and an `R`-algebra `S` sharing element group and grading,
/// with `R` unlocalized and `base(R) ⊆ base(S)`.
#[derive(Clone, Debug)]
pub struct RingPair {
    r: Ring,
    s: Ring,
}

impl RingPair {
    pub fn new(r: &Ring, s: &Ring) -> Result<RingPair> {
        if r.is_fraction() {
            return Err(Error::IncompatibleRings("the smaller ring must not be localized"));
        }
        if r.e != s.e || r.g != s.g || r.delta != s.delta {
            return Err(Error::IncompatibleRings("element groups or gradings differ"));
        }
        if r.base == Base::Q && s.base == Base::Z {
            return Err(Error::IncompatibleRings("Q is not contained in Z"));
        }
        Ok(RingPair {
            r: r.clone(),
            s: s.clone(),
        })
    }

    pub fn r(&self) -> &Ring {
        &self.r
    }

    pub fn s(&self) -> &Ring {
        &self.s
    }

    /// The pair regraded along `ψ`.
    pub fn coarsen(&self, psi: &GroupHom) -> Result<RingPair> {
        let r = Arc::new(self.r.coarsen(psi)?);
        let s = Arc::new(self.s.coarsen(psi)?);
        RingPair::new(&r, &s)
    }

    /// `x ∈ S` as an element of the pair's `S`, for plain polynomials.
    pub fn lift(&self, x: &Element) -> Result<Fraction> {
        let poly = Arc::new(self.s.polynomial_ring());
        Fraction::from_element(&self.s, x.reparent(&poly)?)
    }

    /// Moves an element of another `S` with the same element group here.
    pub fn transport(&self, x: &Fraction) -> Result<Fraction> {
        let poly = Arc::new(self.s.polynomial_ring());
        Fraction::new(&self.s, x.num().reparent(&poly)?, x.den().reparent(&poly)?)
    }
}

/// `x^n + a_1 x^{n-1} + … + a_n = 0` with `a_i ∈ R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityWitness {
    pub degree: u32,
    pub coefficients: Vec<Element>,
}

impl fmt::Display for IntegralityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "monic {}", self.degree)?;
        for (i, a) in self.coefficients.iter().enumerate() {
            write!(f, "; a{} = {}", i + 1, a)?;
        }
        Ok(())
    }
}

/// `T = R·1 + R·x + … + R·x^k` together with `x^{k+1} = Σ r_i x^i`,
/// which makes `T` an `R[x]`-module of finite type containing `R[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostIntegralWitness {
    pub k: u32,
    pub generators: Vec<Fraction>,
    /// `r_0, …, r_k` expressing `x^{k+1}` in the generators.
    pub membership: Vec<Element>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest degree of a monic equation (integral search); the
    /// almost-integral search uses `k_max = max_deg - 1`.
    pub max_deg: u32,
    /// Extra radius of the coefficient box beyond the spread of `x`.
    pub radius: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_deg: 3,
            radius: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegralSearch {
    Found(IntegralityWitness),
    NoWitnessUpTo(SearchBounds),
}

impl IntegralSearch {
    pub fn found(&self) -> bool {
        matches!(self, IntegralSearch::Found(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlmostSearch {
    Found(AlmostIntegralWitness),
    NoWitnessUpTo { k_max: u32, radius: i64 },
}

impl AlmostSearch {
    pub fn found(&self) -> bool {
        matches!(self, AlmostSearch::Found(_))
    }
}

fn check_member(pair: &RingPair, x: &Fraction) -> Result<()> {
    if **x.ring() != *pair.s {
        return Err(Error::IncompatibleRings("element is not in S"));
    }
    Ok(())
}

/// `a · x^k` in `S`, for `a ∈ R`.
fn lift_r(pair: &RingPair, a: &Element) -> Result<Fraction> {
    if **a.ring() != *pair.r {
        return Err(Error::IncompatibleRings("coefficient is not in R"));
    }
    pair.lift(a)
}

fn power(x: &Fraction, k: u32) -> Fraction {
    let mut acc = Fraction::from_element(x.ring(), Element::one(x.num().ring()))
        .expect("one is a fraction");
    for _ in 0..k {
        acc = acc.try_mul(x).expect("same ring");
    }
    acc
}

/// Exact check of a monic equation, including coefficient membership in `R`
/// and the forced coefficient degrees when `x` is homogeneous.
pub fn verify_integral_witness(
    pair: &RingPair,
    x: &Fraction,
    w: &IntegralityWitness,
) -> Result<bool> {
    check_member(pair, x)?;
    if w.degree == 0 || w.coefficients.len() != w.degree as usize {
        return Ok(false);
    }
    let g = &pair.r.g;
    let deg = if x.is_zero() { None } else { x.degree()? };
    let mut acc = power(x, w.degree);
    for (i, a) in w.coefficients.iter().enumerate() {
        let i = i as u32 + 1;
        if let (Some(d), false) = (&deg, a.is_zero()) {
            if a.degree_of()? != Some(g.scale(i as i64, d)) {
                return Ok(false);
            }
        }
        let term = lift_r(pair, a)?.try_mul(&power(x, w.degree - i))?;
        acc = acc.try_add(&term)?;
    }
    Ok(acc.is_zero())
}

/// Exact check of an almost-integral witness.
pub fn verify_almost_integral_witness(
    pair: &RingPair,
    x: &Fraction,
    w: &AlmostIntegralWitness,
) -> Result<bool> {
    check_member(pair, x)?;
    let k = w.k;
    if w.generators.len() != k as usize + 1 || w.membership.len() != k as usize + 1 {
        return Ok(false);
    }
    for (i, gen) in w.generators.iter().enumerate() {
        if !gen.equals(&power(x, i as u32))? {
            return Ok(false);
        }
    }
    let mut rhs = Fraction::from_element(x.ring(), Element::zero(x.num().ring()))?;
    for (r, gen) in w.membership.iter().zip(&w.generators) {
        rhs = rhs.try_add(&lift_r(pair, r)?.try_mul(gen)?)?;
    }
    power(x, k + 1).equals(&rhs)
}

/// The shared coefficient search space for a homogeneous `x = a / b`.
///
/// The coefficient of `x^{n-i}` ranges over `e_m` with `δ(m) = i·deg x`,
/// `m = i·c + k`, `k ∈ ker δ` with free coordinates within
/// `i·spread + radius` of zero, where `c` is centered on the support of `x`.
struct SearchSpace<'a> {
    pair: &'a RingPair,
    a: Element,
    b: Element,
    kernel: Subgroup,
    center: GroupElem,
    spread: i64,
}

impl<'a> SearchSpace<'a> {
    fn new(pair: &'a RingPair, x: &Fraction) -> Result<Self> {
        check_member(pair, x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if x.degree()?.is_none() {
            return Err(Error::NotHomogeneous);
        }
        let e = &pair.r.e;
        let a = x.num().clone();
        let b = x.den().clone();
        let kernel = pair.r.delta.kernel();
        let a0 = a.support().next().expect("nonzero");
        let b0 = b.support().next().expect("nonzero");
        let c0 = e.sub(a0, b0);
        let rank = kernel.group.rank();
        let mut lo = alloc::vec![i64::MAX; rank];
        let mut hi = alloc::vec![i64::MIN; rank];
        for s in a.support() {
            for t in b.support() {
                let d = e.sub(&e.sub(s, t), &c0);
                let k = kernel.coordinates_of(&d).expect("x is homogeneous");
                for j in 0..rank {
                    lo[j] = lo[j].min(k.0[j]);
                    hi[j] = hi[j].max(k.0[j]);
                }
            }
        }
        let mut mid = kernel.group.zero();
        let mut spread = 0;
        for j in 0..rank {
            mid.0[j] = Integer::div_floor(&(lo[j] + hi[j]), &2);
            spread = spread.max((hi[j] - lo[j] + 1) / 2);
        }
        let center = e.add(&c0, &kernel.inclusion.apply(&mid));
        Ok(SearchSpace {
            pair,
            a,
            b,
            kernel,
            center,
            spread,
        })
    }

    fn candidates(&self, i: u32, radius: i64) -> Vec<GroupElem> {
        let e = &self.pair.r.e;
        let base = e.scale(i as i64, &self.center);
        self.kernel
            .group
            .box_elements(i as i64 * self.spread + radius)
            .iter()
            .map(|k| e.add(&base, &self.kernel.inclusion.apply(k)))
            .collect()
    }

    /// Column vectors `e_m · a^{n-i} · b^i` and target `a^n`, cleared of the
    /// denominator `b^n`, indexed by exponent.
    fn system(&self, n: u32, radius: i64) -> System {
        let a_pows: Vec<Element> = (0..=n).map(|j| self.a.pow(j)).collect();
        let b_pows: Vec<Element> = (0..=n).map(|j| self.b.pow(j)).collect();
        let mut rows: BTreeMap<GroupElem, usize> = BTreeMap::new();
        let index = |f: &GroupElem, rows: &mut BTreeMap<GroupElem, usize>| {
            let n = rows.len();
            *rows.entry(f.clone()).or_insert(n)
        };
        let target = &a_pows[n as usize];
        let target_entries: Vec<(usize, Q)> = target
            .terms()
            .iter()
            .map(|(f, c)| (index(f, &mut rows), c.clone()))
            .collect();
        let mut columns = Vec::new();
        let mut labels = Vec::new();
        for i in 1..=n {
            let base = &a_pows[(n - i) as usize] * &b_pows[i as usize];
            for m in self.candidates(i, radius) {
                let col: Vec<(usize, Q)> = base
                    .shift(&m)
                    .terms()
                    .iter()
                    .map(|(f, c)| (index(f, &mut rows), c.clone()))
                    .collect();
                columns.push(col);
                labels.push((i, m));
            }
        }
        System {
            nrows: rows.len(),
            columns,
            labels,
            target: target_entries,
        }
    }
}

struct System {
    nrows: usize,
    columns: Vec<Vec<(usize, Q)>>,
    labels: Vec<(u32, GroupElem)>,
    target: Vec<(usize, Q)>,
}

impl System {
    fn dense_rows(&self) -> Vec<Vec<Q>> {
        let mut m = alloc::vec![alloc::vec![Q::zero(); self.columns.len()]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, c) in col {
                m[*r][j] = c.clone();
            }
        }
        m
    }

    fn dense_target(&self) -> Vec<Q> {
        let mut t = alloc::vec![Q::zero(); self.nrows];
        for (r, c) in &self.target {
            t[*r] = c.clone();
        }
        t
    }

    /// Generator vectors (one per column) as rows.
    fn generator_rows(&self) -> Vec<Vec<Q>> {
        self.columns
            .iter()
            .map(|col| {
                let mut v = alloc::vec![Q::zero(); self.nrows];
                for (r, c) in col {
                    v[*r] = c.clone();
                }
                v
            })
            .collect()
    }

    /// Groups a solution vector into per-`i` elements of `R`.
    fn coefficients(&self, pair: &RingPair, n: u32, sol: &[Q]) -> Vec<Element> {
        let mut per: Vec<BTreeMap<GroupElem, Coeff>> = alloc::vec![BTreeMap::new(); n as usize];
        for ((i, m), c) in self.labels.iter().zip(sol) {
            if !c.is_zero() {
                per[*i as usize - 1].insert(m.clone(), c.clone());
            }
        }
        per.into_iter()
            .map(|t| Element::from_terms(&pair.r, t).expect("solution respects the base"))
            .collect()
    }
}

/// Searches for a monic equation of degree at most `max_deg`, lowest degree
/// first, with coefficients pinned to the forced degrees and to the box.
///
/// Over base `Z` integer solvability is decided exactly through a Hermite
/// form; over `Q` by rational elimination.
pub fn find_integral_equation(
    pair: &RingPair,
    x: &Fraction,
    bounds: SearchBounds,
) -> Result<IntegralSearch> {
    check_member(pair, x)?;
    if x.is_zero() {
        return Ok(IntegralSearch::Found(IntegralityWitness {
            degree: 1,
            coefficients: alloc::vec![Element::zero(&pair.r)],
        }));
    }
    let space = SearchSpace::new(pair, x)?;
    for n in 1..=bounds.max_deg {
        let sys = space.system(n, bounds.radius);
        let ncols = sys.columns.len();
        let mat = sys.dense_rows();
        let rhs: Vec<Q> = sys.dense_target().into_iter().map(|c| -c).collect();
        let sol = match pair.r.base {
            Base::Q => solve_rational(&mat, ncols, &rhs),
            Base::Z => solve_integral(&mat, ncols, &rhs)
                .map(|v| v.into_iter().map(Q::from_integer).collect()),
        };
        if let Some(sol) = sol {
            let w = IntegralityWitness {
                degree: n,
                coefficients: sys.coefficients(pair, n, &sol),
            };
            debug_assert!(verify_integral_witness(pair, x, &w).unwrap_or(false));
            return Ok(IntegralSearch::Found(w));
        }
    }
    Ok(IntegralSearch::NoWitnessUpTo(bounds))
}

/// Walks the chain `M_k = R·1 + … + R·x^k` and stops at the first `k` with
/// `x^{k+1} ∈ M_k`.
///
/// Each `M_k` (truncated to the coefficient box) is put in echelon form
/// as a lattice (base `Z`) or subspace (base `Q`) of coefficient vectors;
/// membership of `x^{k+1}` is read off the echelon basis.
pub fn find_almost_integral_witness(
    pair: &RingPair,
    x: &Fraction,
    k_max: u32,
    radius: i64,
) -> Result<AlmostSearch> {
    check_member(pair, x)?;
    let generators = |k: u32| -> Vec<Fraction> { (0..=k).map(|i| power(x, i)).collect() };
    if x.is_zero() {
        return Ok(AlmostSearch::Found(AlmostIntegralWitness {
            k: 0,
            generators: generators(0),
            membership: alloc::vec![Element::zero(&pair.r)],
        }));
    }
    let space = SearchSpace::new(pair, x)?;
    for k in 0..=k_max {
        let n = k + 1;
        let sys = space.system(n, radius);
        let gens = sys.generator_rows();
        let target = sys.dense_target();
        let coeffs: Option<Vec<Q>> = match pair.r.base {
            Base::Q => RationalSpan::new(gens, sys.nrows).express(&target),
            Base::Z => IntegerSpan::new(&gens, sys.nrows)
                .express(&target)
                .map(|v| v.into_iter().map(Q::from_integer).collect()),
        };
        if let Some(c) = coeffs {
            // Column (i, m) carries e_m x^{n-i}; collect r_j for x^j.
            let per = sys.coefficients(pair, n, &c);
            let mut membership: Vec<Element> = per.into_iter().rev().collect();
            membership.truncate(n as usize);
            let w = AlmostIntegralWitness {
                k,
                generators: generators(k),
                membership,
            };
            debug_assert!(verify_almost_integral_witness(pair, x, &w).unwrap_or(false));
            return Ok(AlmostSearch::Found(w));
        }
    }
    Ok(AlmostSearch::NoWitnessUpTo { k_max, radius })
}

/// Decides integrality of a monomial `c·e_f` over a ring whose grading is
/// injective: the equation collapses to one for `c` over the base.
/// `None` when the shortcut does not apply.
pub fn decide_monomial(pair: &RingPair, x: &Fraction) -> Result<Option<bool>> {
    check_member(pair, x)?;
    if !pair.r.delta.is_injective() || !x.den().is_one() || x.num().len() != 1 {
        return Ok(None);
    }
    let c = x.num().terms().values().next().expect("one term");
    Ok(Some(pair.r.base == Base::Q || c.is_integer()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentsVerdict {
    Both,
    OnlyCoarse,
    OnlyFine,
    Neither,
}

impl ComponentsVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentsVerdict::Both => "both",
            ComponentsVerdict::OnlyCoarse => "only-coarse",
            ComponentsVerdict::OnlyFine => "only-fine",
            ComponentsVerdict::Neither => "neither",
        }
    }
}

/// Outcome for one component; a proof of non-integrality is recorded when
/// available.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentOutcome {
    pub degree: GroupElem,
    pub component: Fraction,
    pub search: IntegralSearch,
    pub proven_not_integral: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentsReport {
    pub coarse: IntegralSearch,
    pub components: Vec<ComponentOutcome>,
    pub verdict: ComponentsVerdict,
}

/// Compares integrality of a `ψ`-homogeneous `x` over `R_[ψ]` with
/// integrality of each of its components over `R`.
pub fn components_integral_check(
    pair: &RingPair,
    psi: &GroupHom,
    x: &Fraction,
    bounds: SearchBounds,
) -> Result<ComponentsReport> {
    check_member(pair, x)?;
    let coarse_pair = pair.coarsen(psi)?;
    let xc = coarse_pair.transport(x)?;
    let coarse = find_integral_equation(&coarse_pair, &xc, bounds)?;
    let mut components = Vec::new();
    for (degree, part) in x.num().homogeneous_components() {
        let comp = Fraction::new(&pair.s, part, x.den().clone())?;
        let search = find_integral_equation(pair, &comp, bounds)?;
        let proven_not_integral =
            !search.found() && decide_monomial(pair, &comp)? == Some(false);
        components.push(ComponentOutcome {
            degree,
            component: comp,
            search,
            proven_not_integral,
        });
    }
    let fine = components.iter().all(|c| c.search.found());
    let verdict = match (coarse.found(), fine) {
        (true, true) => ComponentsVerdict::Both,
        (true, false) => ComponentsVerdict::OnlyCoarse,
        (false, true) => ComponentsVerdict::OnlyFine,
        (false, false) => ComponentsVerdict::Neither,
    };
    Ok(ComponentsReport {
        coarse,
        components,
        verdict,
    })
}

/// Readable summary of a search for reports.
pub fn describe(s: &IntegralSearch) -> String {
    use alloc::string::ToString;
    match s {
        IntegralSearch::Found(w) => w.to_string(),
        IntegralSearch::NoWitnessUpTo(b) => alloc::format!(
            "no witness up to degree {} radius {}",
            b.max_deg, b.radius
        ),
    }
}

#[cfg(test)]
mod tests;
