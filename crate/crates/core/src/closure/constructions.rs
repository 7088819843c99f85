//! The explicit objects behind the closure results: the torsion idempotent,
//! graded euclidean division, the isomorphism for free summands of the
//! kernel, and the embedding induced by a section.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{verify_integral_witness, IntegralityWitness, RingPair};
use crate::abelian::{solve_integer, FgGroup, GroupElem, GroupHom, Matrix};
use crate::element::{coeff, ratio, Coeff, Element, Fraction, Ring};
use crate::error::{Error, Result};
use crate::ringexpr::{AlgebraMode, Base, NormalForm};

/// A graded ring morphism that sends `e_f` to `e_{h(f)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    domain: Ring,
    codomain: Ring,
    on_exponents: GroupHom,
    on_degrees: GroupHom,
}

impl RingMap {
    /// Checks that the exponent map is compatible with the gradings, which
    /// makes the induced map degree preserving along `on_degrees`.
    pub fn new(
        domain: &Ring,
        codomain: &Ring,
        on_exponents: GroupHom,
        on_degrees: GroupHom,
    ) -> Result<RingMap> {
        if domain.is_fraction() || codomain.is_fraction() {
            return Err(Error::Unsupported("ring maps between localized rings"));
        }
        if on_exponents.domain() != &domain.e
            || on_exponents.codomain() != &codomain.e
            || on_degrees.domain() != &domain.g
            || on_degrees.codomain() != &codomain.g
        {
            return Err(Error::DomainMismatch);
        }
        if codomain.delta.compose(&on_exponents)? != on_degrees.compose(&domain.delta)? {
            return Err(Error::HypothesisViolated("exponent map does not respect degrees"));
        }
        Ok(RingMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            on_exponents,
            on_degrees,
        })
    }

    pub fn domain(&self) -> &Ring {
        &self.domain
    }

    pub fn codomain(&self) -> &Ring {
        &self.codomain
    }

    pub fn on_exponents(&self) -> &GroupHom {
        &self.on_exponents
    }

    pub fn on_degrees(&self) -> &GroupHom {
        &self.on_degrees
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if **x.ring() != *self.domain {
            return Err(Error::ParentMismatch);
        }
        x.map_exponents(&self.on_exponents, &self.codomain)
    }

    /// Multiplicativity on all pairs of `samples`, unitality, and degrees of
    /// the homogeneous samples.
    pub fn check_on(&self, samples: &[Element]) -> Result<bool> {
        if self.apply(&Element::one(&self.domain))? != Element::one(&self.codomain) {
            return Ok(false);
        }
        let images: Vec<Element> = samples.iter().map(|x| self.apply(x)).collect::<Result<_>>()?;
        for (x, px) in samples.iter().zip(&images) {
            if x.is_zero() {
                continue;
            }
            if let Some(d) = x.degree_of()? {
                if px.degree_of()? != Some(self.on_degrees.apply(&d)) {
                    return Ok(false);
                }
            }
        }
        for (i, x) in samples.iter().enumerate() {
            for (j, y) in samples.iter().enumerate().skip(i) {
                if self.apply(&x.try_mul(y)?)? != images[i].try_mul(&images[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The idempotent of `Q[Z/n]_[0]` that is integral but not in `Z[Z/n]_[0]`.
#[derive(Clone, Debug)]
pub struct TorsionIdempotent {
    pub n: i64,
    pub pair: RingPair,
    /// `(1/n) Σ e_{ig}`.
    pub f: Fraction,
    /// `1 + (n-1) e_{(n-1)g}`.
    pub c: Element,
    /// `f c = n f`.
    pub d: Element,
    /// `f² + (c-1) f - d = 0`.
    pub witness: IntegralityWitness,
}

pub fn torsion_idempotent(n: i64) -> Result<TorsionIdempotent> {
    if n < 2 {
        return Err(Error::BadOrder(n));
    }
    let group = FgGroup::cyclic(n)?;
    let r: Ring = Arc::new(NormalForm::base(Base::Z).group_algebra(&group, AlgebraMode::Coarse)?);
    let s: Ring = Arc::new(NormalForm::base(Base::Q).group_algebra(&group, AlgebraMode::Coarse)?);
    let pair = RingPair::new(&r, &s)?;
    let g = |i: i64| group.reduce(&[i]);
    let f_elem = Element::from_terms(&s, (0..n).map(|i| (g(i), ratio(1, n))))?;
    let c = Element::from_terms(&r, [(g(0), coeff(1)), (g(n - 1), coeff(n - 1))])?;
    let d = Element::from_terms(&r, (0..n).map(|i| (g(i), coeff(1))))?;
    let f = Fraction::from_element(&s, f_elem.clone())?;
    let witness = IntegralityWitness {
        degree: 2,
        coefficients: alloc::vec![c.try_sub(&Element::one(&r))?, d.neg()],
    };
    let lifted = |x: &Element| x.reparent(&s);
    let square = f_elem.try_mul(&f_elem)?;
    if square != f_elem
        || f_elem.has_integer_coefficients()
        || f_elem.try_mul(&lifted(&c)?)? != lifted(&d)?
        || !verify_integral_witness(&pair, &f, &witness)?
    {
        return Err(Error::HypothesisViolated("idempotent identities fail"));
    }
    Ok(TorsionIdempotent {
        n,
        pair,
        f,
        c,
        d,
        witness,
    })
}

/// `S = R[Z]_[G]` with `R` simple, recognized from a normal form: the
/// kernel of the grading is infinite cyclic, generated by `t`, and `ρ`
/// retracts onto it. The `Z`-degree of `e_f` is `ρ(f)`.
#[derive(Clone, Debug)]
pub struct LaurentStructure {
    ring: Ring,
    t: GroupElem,
    rho: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: Element,
    pub remainder: Element,
}

impl LaurentStructure {
    pub fn recognize(s: &Ring) -> Result<LaurentStructure> {
        if s.is_fraction() {
            return Err(Error::NotLaurentExtension);
        }
        let k = s.delta.kernel();
        if k.group.rank() != 1 || !k.group.is_torsionfree() {
            return Err(Error::NotLaurentExtension);
        }
        let t = k.inclusion.apply(&k.group.generator(0));
        let free = s.e.rank();
        let mut rho = alloc::vec![0i64; s.e.dim()];
        if let Some(j) = (0..free).find(|&j| t.0[j].abs() == 1) {
            rho[j] = t.0[j];
        } else {
            let row = Matrix::from_rows(alloc::vec![t.0[..free].to_vec()], free);
            let sol = solve_integer(&row, &[1]).ok_or(Error::NotLaurentExtension)?;
            rho[..free].copy_from_slice(&sol);
        }
        if s.base != Base::Q {
            return Err(Error::NotSimpleBase);
        }
        Ok(LaurentStructure {
            ring: s.clone(),
            t,
            rho,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The exponent of the adjoined variable.
    pub fn t(&self) -> &GroupElem {
        &self.t
    }

    pub fn z_degree(&self, f: &GroupElem) -> i64 {
        f.0.iter().zip(&self.rho).map(|(a, b)| a * b).sum()
    }

    /// The term of highest `Z`-degree; unique for homogeneous elements.
    fn leading(&self, x: &Element) -> Option<(GroupElem, Coeff)> {
        x.terms()
            .iter()
            .max_by_key(|(f, _)| self.z_degree(f))
            .map(|(f, c)| (f.clone(), c.clone()))
    }

    pub fn max_z_degree(&self, x: &Element) -> Option<i64> {
        self.leading(x).map(|(f, _)| self.z_degree(&f))
    }

    fn check_operands(&self, g: &Element, f: &Element) -> Result<()> {
        if **g.ring() != *self.ring || **f.ring() != *self.ring {
            return Err(Error::ParentMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if !f.is_homogeneous() || !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(())
    }

    /// `g = u f + v` with `v` of `Z`-degree below that of `f` and every term
    /// of `u` of nonnegative `Z`-degree; these conditions make `(u, v)`
    /// unique.
    pub fn divide(&self, g: &Element, f: &Element) -> Result<Division> {
        self.check_operands(g, f)?;
        Ok(self.divide_unchecked(g, f))
    }

    fn divide_unchecked(&self, g: &Element, f: &Element) -> Division {
        let (lf, cf) = self.leading(f).expect("nonzero divisor");
        let df = self.z_degree(&lf);
        let e = &self.ring.e;
        let mut u = Element::zero(&self.ring);
        let mut v = g.clone();
        while let Some((lv, cv)) = self.leading(&v) {
            if self.z_degree(&lv) < df {
                break;
            }
            let mut term = BTreeMap::new();
            term.insert(e.sub(&lv, &lf), cv / &cf);
            let q = Element::from_map(&self.ring, term);
            v = &v - &(&q * f);
            u = &u + &q;
        }
        Division {
            quotient: u,
            remainder: v,
        }
    }

    /// Divides the terms of `g` one at a time, visiting them in `order`,
    /// and sums the partial results.
    pub fn divide_termwise(&self, g: &Element, f: &Element, order: &[usize]) -> Result<Division> {
        self.check_operands(g, f)?;
        let terms: Vec<(&GroupElem, &Coeff)> = g.terms().iter().collect();
        let mut u = Element::zero(&self.ring);
        let mut v = Element::zero(&self.ring);
        for &i in order {
            let (exp, c) = terms.get(i).ok_or(Error::PreconditionViolated("bad term order"))?;
            let mut t = BTreeMap::new();
            t.insert((*exp).clone(), (*c).clone());
            let part = self.divide_unchecked(&Element::from_map(&self.ring, t), f);
            u = &u + &part.quotient;
            v = &v + &part.remainder;
        }
        Ok(Division {
            quotient: u,
            remainder: v,
        })
    }
}

pub fn graded_euclidean_division(s: &Ring, g: &Element, f: &Element) -> Result<Division> {
    LaurentStructure::recognize(s)?.divide(g, f)
}

pub fn graded_euclidean_division_termwise(
    s: &Ring,
    g: &Element,
    f: &Element,
    order: &[usize],
) -> Result<Division> {
    LaurentStructure::recognize(s)?.divide_termwise(g, f, order)
}

/// The isomorphism `p: R_(H)[D∩F]_[H] → R_[ψ]` and its inverse `q`, for a
/// simple `R`, a free summand `F` with complement `H`, and `ψ` the
/// projection onto `H`.
#[derive(Clone, Debug)]
pub struct Lem50 {
    /// `ψ: G → H`.
    pub psi: GroupHom,
    /// A basis of `D ∩ F`, as elements of `G`.
    pub basis: Vec<GroupElem>,
    pub p: RingMap,
    pub q: RingMap,
}

pub fn lem50_iso(r: &Ring, f_gens: &[GroupElem], h_gens: &[GroupElem]) -> Result<Lem50> {
    if r.is_fraction() {
        return Err(Error::Unsupported("localized rings"));
    }
    if !r.is_simple() {
        return Err(Error::HypothesisViolated("R is not simple"));
    }
    let g = &r.g;
    let fs = g.subgroup_generated_by(f_gens)?;
    let hs = g.subgroup_generated_by(h_gens)?;
    if !fs.group.is_torsionfree() {
        return Err(Error::HypothesisViolated("F is not free"));
    }
    let fh = fs.group.direct_sum(&hs.group);
    let m = fs
        .inclusion
        .compose(&fh.proj[0])?
        .add(&hs.inclusion.compose(&fh.proj[1])?)?;
    if !m.is_injective() || !m.is_surjective() {
        return Err(Error::HypothesisViolated("F and H are not complementary"));
    }
    let m_inv_cols: Vec<GroupElem> = g
        .generators()
        .iter()
        .map(|x| m.preimage(x).expect("surjective"))
        .collect();
    let m_inv = GroupHom::from_columns(g.clone(), fh.group.clone(), &m_inv_cols)?;
    let psi = fh.proj[1].compose(&m_inv)?;

    let support = r.delta.image();
    for d in support.ambient_generators() {
        let back = hs.inclusion.apply(&psi.apply(&d));
        if !support.contains(&back) {
            return Err(Error::HypothesisViolated("ψ(D) is not contained in D"));
        }
    }
    let (_, to_quotient) = g.quotient_by(&support.ambient_generators())?;
    let df = to_quotient.compose(&fs.inclusion)?.kernel();
    let df_in_g = fs.inclusion.compose(&df.inclusion)?;
    let basis: Vec<GroupElem> = df
        .group
        .generators()
        .iter()
        .map(|x| df_in_g.apply(x))
        .collect();

    let (rh, rh_incl) = r.restrict(h_gens)?;
    if rh.g != hs.group {
        return Err(Error::HypothesisViolated("complement presentation mismatch"));
    }
    let rh: Ring = Arc::new(rh);
    let target: Ring = Arc::new(rh.group_algebra(&df.group, AlgebraMode::Coarse)?);
    let r_psi: Ring = Arc::new(r.coarsen(&psi)?);

    // y_f for f in D ∩ F is the canonical monomial of degree f.
    let y_cols: Vec<GroupElem> = basis
        .iter()
        .map(|b| r.delta.preimage(b).expect("b lies in the support"))
        .collect();
    let y = GroupHom::from_columns(df.group.clone(), r.e.clone(), &y_cols)?;
    let split = rh.e.direct_sum(&df.group);
    let p_exp = rh_incl
        .compose(&split.proj[0])?
        .add(&y.compose(&split.proj[1])?)?;
    if p_exp.domain() != &target.e || !p_exp.is_injective() || !p_exp.is_surjective() {
        return Err(Error::HypothesisViolated("p is not bijective on exponents"));
    }
    let q_cols: Vec<GroupElem> = r
        .e
        .generators()
        .iter()
        .map(|x| p_exp.preimage(x).expect("surjective"))
        .collect();
    let q_exp = GroupHom::from_columns(r.e.clone(), target.e.clone(), &q_cols)?;
    if p_exp.compose(&q_exp)? != GroupHom::identity(&r.e)
        || q_exp.compose(&p_exp)? != GroupHom::identity(&target.e)
    {
        return Err(Error::HypothesisViolated("p and q are not inverse"));
    }
    let id_h = GroupHom::identity(&hs.group);
    let p = RingMap::new(&target, &r_psi, p_exp, id_h.clone())?;
    let q = RingMap::new(&r_psi, &target, q_exp, id_h)?;
    Ok(Lem50 { psi, basis, p, q })
}

/// `j^π: R_[ψ] → R_[ψ][ker ψ]_[H]`, `x ↦ x·e_{g - π(ψ(g))}` on a term of
/// fine degree `g`.
pub fn j_pi_embedding(r: &Ring, psi: &GroupHom, pi: &GroupHom) -> Result<RingMap> {
    if r.is_fraction() {
        return Err(Error::Unsupported("localized rings"));
    }
    if psi.domain() != &r.g || pi.domain() != psi.codomain() || pi.codomain() != &r.g {
        return Err(Error::DomainMismatch);
    }
    if psi.compose(pi)? != GroupHom::identity(psi.codomain()) {
        return Err(Error::NotASection);
    }
    let g = &r.g;
    let k = psi.kernel();
    let lambda_cols: Vec<GroupElem> = g
        .generators()
        .iter()
        .map(|x| {
            let off = g.sub(x, &pi.apply(&psi.apply(x)));
            k.coordinates_of(&off).expect("offset lies in the kernel")
        })
        .collect();
    let lambda = GroupHom::from_columns(g.clone(), k.group.clone(), &lambda_cols)?;
    let r_psi: Ring = Arc::new(r.coarsen(psi)?);
    let target: Ring = Arc::new(r_psi.group_algebra(&k.group, AlgebraMode::Coarse)?);
    let split = r.e.direct_sum(&k.group);
    let exp = split.inj[0].add(&split.inj[1].compose(&lambda.compose(&r.delta)?)?)?;
    RingMap::new(&r_psi, &target, exp, GroupHom::identity(psi.codomain()))
}
