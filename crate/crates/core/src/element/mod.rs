//! Elements of normalized rings and of their graded fraction fields.

mod predicates;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{GroupElem, GroupHom};
use crate::error::{Error, Result};
use crate::ringexpr::{Base, NormalForm};

pub use predicates::{
    find_annihilator, homogeneous_unit_test, lemma_p70_check, nzd_test, NzdVerdict, P70Verdict,
    UnitVerdict,
};

/// Exact coefficients. Base-`Z` rings only ever hold integers.
pub type Coeff = BigRational;

/// A shared ring handle; elements compare rings by value.
pub type Ring = Arc<NormalForm>;

pub fn coeff(n: i64) -> Coeff {
    Coeff::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    Coeff::new(n.into(), d.into())
}

/// A finite sum `Σ c_f e_f` in `base[E]`.
#[derive(Clone)]
pub struct Element {
    ring: Ring,
    terms: BTreeMap<GroupElem, Coeff>,
}

/// `G`-degree to element map of a homogeneous decomposition.
pub type HomogeneousDecomposition = BTreeMap<GroupElem, Element>;

fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    fn check_ring(ring: &Ring) -> Result<()> {
        if ring.is_fraction() {
            return Err(Error::Unsupported(
                "elements of a localized ring are fractions",
            ));
        }
        Ok(())
    }

    pub fn zero(ring: &Ring) -> Element {
        Element {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(ring.e.zero(), Coeff::one());
        Element {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Result<Element> {
        Self::from_terms(ring, [(ring.e.zero(), c)])
    }

    pub fn monomial(ring: &Ring, c: Coeff, f: GroupElem) -> Result<Element> {
        Self::from_terms(ring, [(f, c)])
    }

    /// `e_f`.
    pub fn basis(ring: &Ring, f: GroupElem) -> Result<Element> {
        Self::monomial(ring, Coeff::one(), f)
    }

    /// Sums the given terms. Exponents must be reduced elements of `E`.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (GroupElem, Coeff)>,
    ) -> Result<Element> {
        Self::check_ring(ring)?;
        let mut out = BTreeMap::new();
        for (f, c) in terms {
            if !ring.e.contains(&f) {
                return Err(Error::BadExponent);
            }
            if ring.base == Base::Z && !c.is_integer() {
                return Err(Error::NonIntegralCoefficient(c.to_string()));
            }
            accumulate(&mut out, f, c);
        }
        Ok(Element {
            ring: ring.clone(),
            terms: out,
        })
    }

    /// Builds without validation; callers guarantee reduced exponents and
    /// base-compatible coefficients.
    pub(crate) fn from_map(ring: &Ring, terms: BTreeMap<GroupElem, Coeff>) -> Element {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<GroupElem, Coeff> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElem> {
        self.terms.keys()
    }

    pub fn coefficient(&self, f: &GroupElem) -> Coeff {
        self.terms.get(f).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&self.ring.e.zero()).is_one()
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn compatible(&self, other: &Element) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (f, c) in &other.terms {
            accumulate(&mut terms, f.clone(), c.clone());
        }
        Ok(Element::from_map(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.compatible(other)?;
        let e = &self.ring.e;
        let mut terms = BTreeMap::new();
        for (f, a) in &self.terms {
            for (g, b) in &other.terms {
                accumulate(&mut terms, e.add(f, g), a * b);
            }
        }
        Ok(Element::from_map(&self.ring, terms))
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(f, c)| (f.clone(), -c)).collect();
        Element::from_map(&self.ring, terms)
    }

    /// `c · self`; `c` must be an integer over a base-`Z` ring.
    pub fn scale(&self, c: &Coeff) -> Result<Element> {
        if self.ring.base == Base::Z && !c.is_integer() {
            return Err(Error::NonIntegralCoefficient(c.to_string()));
        }
        Ok(self.scale_unchecked(c))
    }

    pub(crate) fn scale_unchecked(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(f, x)| (f.clone(), x * c)).collect();
        Element::from_map(&self.ring, terms)
    }

    /// `self · e_f`.
    pub fn shift(&self, f: &GroupElem) -> Element {
        let e = &self.ring.e;
        let terms = self
            .terms
            .iter()
            .map(|(g, c)| (e.add(g, f), c.clone()))
            .collect();
        Element::from_map(&self.ring, terms)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The degree for an arbitrary grading `h: E → H`, if homogeneous.
    pub fn degree_in(&self, h: &GroupHom) -> Result<Option<GroupElem>> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroElement)?;
        let d = h.apply(first);
        Ok(it.all(|f| h.apply(f) == d).then_some(d))
    }

    pub fn degree_of(&self) -> Result<Option<GroupElem>> {
        self.degree_in(&self.ring.delta)
    }

    pub fn is_homogeneous_in(&self, h: &GroupHom) -> bool {
        self.is_zero() || matches!(self.degree_in(h), Ok(Some(_)))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_in(&self.ring.delta)
    }

    /// Partition of the terms by degree under `h`.
    pub fn components_in(&self, h: &GroupHom) -> HomogeneousDecomposition {
        let mut parts: BTreeMap<GroupElem, BTreeMap<GroupElem, Coeff>> = BTreeMap::new();
        for (f, c) in &self.terms {
            parts
                .entry(h.apply(f))
                .or_default()
                .insert(f.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, t)| (d, Element::from_map(&self.ring, t)))
            .collect()
    }

    pub fn homogeneous_components(&self) -> HomogeneousDecomposition {
        self.components_in(&self.ring.delta)
    }

    /// Image under the ring map induced by `h: E → E'` on exponents.
    pub fn map_exponents(&self, h: &GroupHom, target: &Ring) -> Result<Element> {
        if h.domain() != &self.ring.e || h.codomain() != &target.e {
            return Err(Error::DomainMismatch);
        }
        Element::from_terms(
            target,
            self.terms.iter().map(|(f, c)| (h.apply(f), c.clone())),
        )
    }

    /// The same sum viewed in another ring over the same `E`.
    pub fn reparent(&self, target: &Ring) -> Result<Element> {
        if target.e != self.ring.e {
            return Err(Error::IncompatibleRings("element groups differ"));
        }
        Element::from_terms(target, self.terms.clone())
    }

    /// Canonical text form `c*e(f) + …`, terms in lexicographic order.
    pub fn to_text(&self) -> alloc::string::String {
        self.to_string()
    }
}

fn accumulate(map: &mut BTreeMap<GroupElem, Coeff>, f: GroupElem, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(f) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*e{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add for &'a Element {
    type Output = Element;

    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("adding elements of different rings")
    }
}

impl<'a> Sub for &'a Element {
    type Output = Element;

    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs).expect("subtracting elements of different rings")
    }
}

impl<'a> Mul for &'a Element {
    type Output = Element;

    fn mul(self, rhs: &'a Element) -> Element {
        self.try_mul(rhs).expect("multiplying elements of different rings")
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element::neg(self)
    }
}

/// An element `num / den` of a graded fraction field; `den` is homogeneous
/// for the grading at which the ring was localized.
#[derive(Clone)]
pub struct Fraction {
    ring: Ring,
    num: Element,
    den: Element,
}

impl Fraction {
    /// `ring` is the localized normal form; `num` and `den` live in its
    /// polynomial ring. Unlocalized rings only admit unit denominators.
    pub fn new(ring: &Ring, num: Element, den: Element) -> Result<Fraction> {
        let poly = ring.polynomial_ring();
        if *num.ring != poly || *den.ring != poly {
            return Err(Error::ParentMismatch);
        }
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        match &ring.localization {
            Some(l) => {
                if !den.is_homogeneous_in(&l.grading) {
                    return Err(Error::NotHomogeneous);
                }
            }
            None => {
                if den.len() != 1 || den.degree_of()? != Some(ring.g.zero()) {
                    return Err(Error::PreconditionViolated(
                        "only a localized ring admits denominators",
                    ));
                }
            }
        }
        Ok(Fraction {
            ring: ring.clone(),
            num,
            den,
        }
        .cancel())
    }

    pub fn from_element(ring: &Ring, x: Element) -> Result<Fraction> {
        let one = Element::one(&x.ring);
        Fraction::new(ring, x, one)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num(&self) -> &Element {
        &self.num
    }

    pub fn den(&self) -> &Element {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Folds a monomial denominator into the numerator.
    fn cancel(mut self) -> Fraction {
        if self.den.len() == 1 {
            let (f, c) = self.den.terms.iter().next().expect("nonzero");
            let inv = c.recip();
            let neg = self.ring.e.neg(f);
            self.num = self.num.shift(&neg).scale_unchecked(&inv);
            self.den = Element::one(&self.den.ring);
        }
        if self.num.is_zero() {
            self.den = Element::one(&self.den.ring);
        }
        self
    }

    fn compatible(&self, other: &Fraction) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn try_add(&self, other: &Fraction) -> Result<Fraction> {
        self.compatible(other)?;
        let (num, den) = if self.den == other.den {
            (&self.num + &other.num, self.den.clone())
        } else {
            (
                &(&self.num * &other.den) + &(&other.num * &self.den),
                &self.den * &other.den,
            )
        };
        Ok(Fraction {
            ring: self.ring.clone(),
            num,
            den,
        }
        .cancel())
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            ring: self.ring.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn try_sub(&self, other: &Fraction) -> Result<Fraction> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Fraction) -> Result<Fraction> {
        self.compatible(other)?;
        Ok(Fraction {
            ring: self.ring.clone(),
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .cancel())
    }

    /// Degree in the current grading, if homogeneous.
    pub fn degree(&self) -> Result<Option<GroupElem>> {
        let Some(dn) = self.num.degree_of()? else {
            return Ok(None);
        };
        let dd = self.den.degree_of()?.expect("denominators are homogeneous");
        Ok(Some(self.ring.g.sub(&dn, &dd)))
    }

    /// `a/b = c/d` iff `ad = bc`; exact because the ring is entire.
    pub fn equals(&self, other: &Fraction) -> Result<bool> {
        self.compatible(other)?;
        Ok(&self.num * &other.den == &other.num * &self.den)
    }
}

impl PartialEq for Fraction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience for tests and examples: the ring handle of a normal form.
pub fn ring(nf: NormalForm) -> Ring {
    Arc::new(nf)
}

/// Exponents as a vector, in term order.
pub fn exponents(x: &Element) -> Vec<GroupElem> {
    x.terms.keys().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{FgGroup, Matrix};
    use alloc::vec;

    fn coarse(base: Base, g: FgGroup) -> Ring {
        let triv = FgGroup::trivial();
        ring(NormalForm::group_ring(base, GroupHom::zero(&g, &triv)))
    }

    fn fine(base: Base, g: FgGroup) -> Ring {
        ring(NormalForm::group_ring(base, GroupHom::identity(&g)))
    }

    fn e(r: &Ring, v: &[i64]) -> Element {
        Element::basis(r, r.e.reduce(v)).unwrap()
    }

    fn c(r: &Ring, x: Coeff) -> Element {
        Element::constant(r, x).unwrap()
    }

    #[test]
    fn torsion_telescopes() {
        let r = coarse(Base::Q, FgGroup::cyclic(2).unwrap());
        let one = Element::one(&r);
        let g = e(&r, &[1]);
        assert!((&(&one + &g) * &(&one - &g)).is_zero());
        let r = coarse(Base::Q, FgGroup::cyclic(3).unwrap());
        let one = Element::one(&r);
        let g = e(&r, &[1]);
        let s = &(&one + &g) + &g.pow(2);
        assert!((&s * &(&one - &g)).is_zero());
    }

    #[test]
    fn basis_multiplies() {
        let r = fine(Base::Z, FgGroup::free(2));
        assert_eq!(&e(&r, &[1, 0]) * &e(&r, &[2, -1]), e(&r, &[3, -1]));
    }

    #[test]
    fn base_z_rejects_fractions() {
        let r = fine(Base::Z, FgGroup::free(1));
        assert!(matches!(
            Element::constant(&r, ratio(1, 2)),
            Err(Error::NonIntegralCoefficient(_))
        ));
    }

    #[test]
    fn components_by_fiber() {
        let z2 = FgGroup::free(2);
        let z = FgGroup::free(1);
        let second = GroupHom::new(z2.clone(), z, Matrix::from_rows(vec![vec![0, 1]], 2)).unwrap();
        let r = ring(NormalForm::group_ring(Base::Q, second));
        let x = &e(&r, &[1, 0]).scale(&coeff(2)).unwrap() + &e(&r, &[1, 1]).scale(&coeff(3)).unwrap();
        let parts = x.homogeneous_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&GroupElem(vec![0])], e(&r, &[1, 0]).scale(&coeff(2)).unwrap());
        assert_eq!(parts[&GroupElem(vec![1])], e(&r, &[1, 1]).scale(&coeff(3)).unwrap());
    }

    #[test]
    fn degrees() {
        let r = fine(Base::Q, FgGroup::free(1));
        assert_eq!(e(&r, &[3]).degree_of().unwrap(), Some(GroupElem(vec![3])));
        assert_eq!((&Element::one(&r) + &e(&r, &[1])).degree_of().unwrap(), None);
        assert_eq!(Element::zero(&r).degree_of(), Err(Error::ZeroElement));
        let r = coarse(Base::Q, FgGroup::free(1));
        assert_eq!(
            (&Element::one(&r) + &e(&r, &[1])).degree_of().unwrap(),
            Some(GroupElem(vec![]))
        );
    }

    #[test]
    fn display_is_canonical() {
        let r = coarse(Base::Q, FgGroup::cyclic(3).unwrap());
        let x = &(&e(&r, &[2]) + &c(&r, ratio(1, 3))) + &e(&r, &[1]).scale(&ratio(-1, 2)).unwrap();
        assert_eq!(x.to_string(), "1/3*e(0) + -1/2*e(1) + 1*e(2)");
    }

    #[test]
    fn fractions() {
        let z = FgGroup::free(1);
        let base = NormalForm::group_ring(Base::Q, GroupHom::identity(&z));
        let frac = ring(base.fraction_field().unwrap());
        let poly = ring(frac.polynomial_ring());
        let g = e(&poly, &[1]);
        let one = Element::one(&poly);
        let a = Fraction::new(&frac, g.clone(), one.clone()).unwrap();
        let b = Fraction::new(&frac, one.clone(), g.clone()).unwrap();
        let p = a.try_mul(&b).unwrap();
        assert!(p.num().is_one() && p.den().is_one());

        let zb = ring(NormalForm::base(Base::Z).fraction_field().unwrap());
        let pz = ring(zb.polynomial_ring());
        let half = Fraction::new(&zb, Element::one(&pz), c(&pz, coeff(2))).unwrap();
        let s = half.try_add(&half).unwrap();
        assert!(s.num().is_one() && s.den().is_one());

        // A non-monomial homogeneous denominator in a coarsened fraction field.
        let sum = GroupHom::new(
            FgGroup::free(2),
            z.clone(),
            Matrix::from_rows(vec![vec![1, 1]], 2),
        )
        .unwrap();
        let frac2 = ring(
            NormalForm::group_ring(Base::Q, sum.clone())
                .fraction_field()
                .unwrap(),
        );
        let p2 = ring(frac2.polynomial_ring());
        let den = &e(&p2, &[1, 0]) + &e(&p2, &[0, 1]);
        let x = Fraction::new(&frac2, e(&p2, &[2, 0]), den.clone()).unwrap();
        let y = Fraction::new(&frac2, e(&p2, &[0, 2]), den.clone()).unwrap();
        let s = x.try_add(&y).unwrap();
        assert_eq!(s.den(), &den);
        assert_eq!(s.degree().unwrap(), Some(GroupElem(vec![1])));
        let not_homog = &e(&p2, &[1, 0]) + &Element::one(&p2);
        assert!(matches!(
            Fraction::new(&frac2, Element::one(&p2), not_homog),
            Err(Error::NotHomogeneous)
        ));
    }
}
