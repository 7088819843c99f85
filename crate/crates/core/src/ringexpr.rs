//! Constructor trees for graded rings and their normal forms.
//!
//! Every ring built here is a group algebra `base[E]` whose homogeneous
//! component of degree `g` is spanned by the `e_f` with `δ(f) = g`, possibly
//! localized at the homogeneous elements of some earlier grading.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::{FgGroup, GroupElem, GroupHom, Subgroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Base {
    Z,
    Q,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Z => "Z",
            Base::Q => "Q",
        })
    }
}

/// Where a fraction field was formed: the ring was localized at the elements
/// homogeneous for `grading: E → G0`, and has since been regraded along
/// `to_current: G0 → G`, so that `δ = to_current ∘ grading`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Localization {
    pub grading: GroupHom,
    pub to_current: GroupHom,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    pub base: Base,
    pub e: FgGroup,
    pub g: FgGroup,
    pub delta: GroupHom,
    pub localization: Option<Localization>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingExpr {
    BaseZ,
    BaseQ,
    FineGroupAlgebra(Box<RingExpr>, FgGroup),
    /// Sugar for the fine algebra coarsened along `G ⊕ F → G`.
    CoarseGroupAlgebra(Box<RingExpr>, FgGroup),
    Coarsen(Box<RingExpr>, GroupHom),
    /// Restrict to the subgroup generated by the given elements.
    Restrict(Box<RingExpr>, Vec<GroupElem>),
    /// Extend the grading along an injective homomorphism.
    Extend(Box<RingExpr>, GroupHom),
    FractionField(Box<RingExpr>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraMode {
    Fine,
    Coarse,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub entire: bool,
    pub simple: bool,
    pub noetherian: bool,
    pub support: Subgroup,
    pub full_support: bool,
}

pub fn normalize(expr: &RingExpr) -> Result<NormalForm> {
    Ok(match expr {
        RingExpr::BaseZ => NormalForm::base(Base::Z),
        RingExpr::BaseQ => NormalForm::base(Base::Q),
        RingExpr::FineGroupAlgebra(r, f) => normalize(r)?.group_algebra(f, AlgebraMode::Fine)?,
        RingExpr::CoarseGroupAlgebra(r, f) => {
            normalize(r)?.group_algebra(f, AlgebraMode::Coarse)?
        }
        RingExpr::Coarsen(r, psi) => normalize(r)?.coarsen(psi)?,
        RingExpr::Restrict(r, gens) => normalize(r)?.restrict(gens)?.0,
        RingExpr::Extend(r, iota) => normalize(r)?.extend(iota)?,
        RingExpr::FractionField(r) => normalize(r)?.fraction_field()?,
    })
}

impl NormalForm {
    /// `Z` or `Q`, trivially graded by the zero group.
    pub fn base(base: Base) -> Self {
        let z = FgGroup::trivial();
        NormalForm {
            base,
            delta: GroupHom::identity(&z),
            e: z.clone(),
            g: z,
            localization: None,
        }
    }

    /// `base[E]` graded by `δ`.
    pub fn group_ring(base: Base, delta: GroupHom) -> Self {
        NormalForm {
            base,
            e: delta.domain().clone(),
            g: delta.codomain().clone(),
            delta,
            localization: None,
        }
    }

    pub fn is_fraction(&self) -> bool {
        self.localization.is_some()
    }

    /// The underlying (unlocalized) group algebra with the same grading.
    pub fn polynomial_ring(&self) -> NormalForm {
        NormalForm {
            localization: None,
            ..self.clone()
        }
    }

    /// The grading with respect to which denominators are homogeneous.
    pub fn denominator_grading(&self) -> &GroupHom {
        match &self.localization {
            Some(l) => &l.grading,
            None => &self.delta,
        }
    }

    pub fn group_algebra(&self, f: &FgGroup, mode: AlgebraMode) -> Result<NormalForm> {
        if self.is_fraction() {
            return Err(Error::PreconditionViolated(
                "group algebras are formed before taking fractions",
            ));
        }
        let es = self.e.direct_sum(f);
        let along_e = self.delta.compose(&es.proj[0])?;
        let delta = match mode {
            AlgebraMode::Coarse => along_e,
            AlgebraMode::Fine => {
                let gs = self.g.direct_sum(f);
                let a = gs.inj[0].compose(&along_e)?;
                let b = gs.inj[1].compose(&es.proj[1])?;
                a.add(&b)?
            }
        };
        Ok(NormalForm::group_ring(self.base, delta))
    }

    /// `ψ`-coarsening.
    pub fn coarsen(&self, psi: &GroupHom) -> Result<NormalForm> {
        if psi.domain() != &self.g {
            return Err(Error::DomainMismatch);
        }
        if !psi.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let localization = match &self.localization {
            Some(l) => {
                if !psi.kernel().group.is_torsionfree() {
                    return Err(Error::TorsionKernelOnFractionField);
                }
                Some(Localization {
                    grading: l.grading.clone(),
                    to_current: psi.compose(&l.to_current)?,
                })
            }
            None => None,
        };
        Ok(NormalForm {
            base: self.base,
            e: self.e.clone(),
            g: psi.codomain().clone(),
            delta: psi.compose(&self.delta)?,
            localization,
        })
    }

    /// Restriction to the subgroup `F = ⟨gens⟩` of `G`: the subring spanned by
    /// the components of degree in `F`, graded by `F`.
    ///
    /// Also returns the inclusion of the new element group into `E`.
    pub fn restrict(&self, gens: &[GroupElem]) -> Result<(NormalForm, GroupHom)> {
        if self.is_fraction() {
            return Err(Error::Unsupported("restriction of a localized ring"));
        }
        if gens.iter().any(|g| !self.g.contains(g)) {
            return Err(Error::NotASubgroup);
        }
        let f = self.g.subgroup_generated_by(gens)?;
        let (_, chi) = self.g.quotient_by(gens)?;
        let k = chi.compose(&self.delta)?.kernel();
        let images: Vec<GroupElem> = k
            .ambient_generators()
            .iter()
            .map(|x| {
                let d = self.delta.apply(x);
                f.coordinates_of(&d).expect("degree lies in the subgroup")
            })
            .collect();
        let delta = GroupHom::from_columns(k.group.clone(), f.group.clone(), &images)?;
        Ok((NormalForm::group_ring(self.base, delta), k.inclusion))
    }

    /// Extends the grading along an injective `ι: G → G'`.
    pub fn extend(&self, iota: &GroupHom) -> Result<NormalForm> {
        if iota.domain() != &self.g {
            return Err(Error::DomainMismatch);
        }
        if !iota.is_injective() {
            return Err(Error::NotASubgroup);
        }
        let localization = match &self.localization {
            Some(l) => Some(Localization {
                grading: l.grading.clone(),
                to_current: iota.compose(&l.to_current)?,
            }),
            None => None,
        };
        Ok(NormalForm {
            base: self.base,
            e: self.e.clone(),
            g: iota.codomain().clone(),
            delta: iota.compose(&self.delta)?,
            localization,
        })
    }

    /// Graded field of fractions. The base becomes `Q` since every nonzero
    /// integer is a homogeneous non-zerodivisor.
    pub fn fraction_field(&self) -> Result<NormalForm> {
        if !self.is_entire() {
            return Err(Error::NotEntire);
        }
        Ok(NormalForm {
            base: Base::Q,
            e: self.e.clone(),
            g: self.g.clone(),
            delta: self.delta.clone(),
            localization: Some(Localization {
                grading: self.delta.clone(),
                to_current: GroupHom::identity(&self.g),
            }),
        })
    }

    pub fn is_entire(&self) -> bool {
        self.delta.kernel().group.is_torsionfree()
    }

    pub fn is_simple(&self) -> bool {
        match &self.localization {
            // Simple iff no two degrees of the localized grading merge.
            Some(l) => {
                let im = l.grading.image();
                l.to_current
                    .compose(&im.inclusion)
                    .map(|h| h.is_injective())
                    .unwrap_or(false)
            }
            None => self.base == Base::Q && self.delta.is_injective(),
        }
    }

    pub fn support(&self) -> Subgroup {
        self.delta.image()
    }

    pub fn classify(&self) -> Classification {
        let support = self.support();
        let full_support = self.delta.is_surjective();
        let entire = self.is_entire();
        Classification {
            entire,
            simple: self.is_simple(),
            noetherian: true,
            support,
            full_support,
        }
    }

    /// A constructor tree whose normal form is `self`.
    pub fn to_expr(&self) -> RingExpr {
        match &self.localization {
            None => realize(self.base, &self.delta),
            Some(l) => {
                let inner = RingExpr::FractionField(Box::new(realize(self.base, &l.grading)));
                along(inner, &l.to_current)
            }
        }
    }
}

/// `base[E]` fine, then coarsened onto the image of `δ`, then extended.
fn realize(base: Base, delta: &GroupHom) -> RingExpr {
    let b = match base {
        Base::Z => RingExpr::BaseZ,
        Base::Q => RingExpr::BaseQ,
    };
    let fine = if delta.domain().is_trivial() {
        b
    } else {
        RingExpr::FineGroupAlgebra(Box::new(b), delta.domain().clone())
    };
    along(fine, delta)
}

/// Regrades an expression with grading group `A` along an arbitrary `h: A → B`
/// by coarsening onto the image and then extending.
fn along(expr: RingExpr, h: &GroupHom) -> RingExpr {
    if h.domain() == h.codomain() && *h == GroupHom::identity(h.domain()) {
        return expr;
    }
    let im = h.image();
    let onto: Vec<GroupElem> = h
        .domain()
        .generators()
        .iter()
        .map(|x| im.coordinates_of(&h.apply(x)).expect("image"))
        .collect();
    let onto = GroupHom::from_columns(h.domain().clone(), im.group.clone(), &onto)
        .expect("restriction of a homomorphism to its image");
    let mut out = expr;
    if !(onto.domain() == onto.codomain() && onto == GroupHom::identity(onto.domain())) {
        out = RingExpr::Coarsen(Box::new(out), onto);
    }
    if !(im.inclusion.domain() == im.inclusion.codomain()
        && im.inclusion == GroupHom::identity(im.inclusion.domain()))
    {
        out = RingExpr::Extend(Box::new(out), im.inclusion);
    }
    out
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] graded by {}", self.base, self.e, self.delta)?;
        if let Some(l) = &self.localization {
            write!(f, ", localized at {}", l.grading)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::Matrix;
    use alloc::vec;

    fn q() -> Box<RingExpr> {
        Box::new(RingExpr::BaseQ)
    }

    fn hom(dom: &FgGroup, cod: &FgGroup, rows: &[&[i64]]) -> GroupHom {
        let m = Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), dom.dim());
        GroupHom::new(dom.clone(), cod.clone(), m).unwrap()
    }

    #[test]
    fn coarse_algebra_of_z() {
        let nf = normalize(&RingExpr::CoarseGroupAlgebra(q(), FgGroup::free(1))).unwrap();
        assert_eq!(nf.base, Base::Q);
        assert_eq!(nf.e, FgGroup::free(1));
        assert!(nf.g.is_trivial());
    }

    #[test]
    fn fine_algebra_of_z() {
        let nf = normalize(&RingExpr::FineGroupAlgebra(q(), FgGroup::free(1))).unwrap();
        assert_eq!(nf.g, FgGroup::free(1));
        assert_eq!(nf.delta, GroupHom::identity(&FgGroup::free(1)));
        let c = nf.classify();
        assert!(c.entire && c.simple && c.noetherian && c.full_support);
    }

    #[test]
    fn coarsening_composes() {
        let z2 = FgGroup::free(2);
        let z = FgGroup::free(1);
        let r = RingExpr::FineGroupAlgebra(q(), z2.clone());
        let psi = hom(&z2, &z2, &[&[1, 1], &[0, 1]]);
        let phi = hom(&z2, &z, &[&[2, -1]]);
        let a = normalize(&RingExpr::Coarsen(
            Box::new(RingExpr::Coarsen(Box::new(r.clone()), psi.clone())),
            phi.clone(),
        ))
        .unwrap();
        let b = normalize(&RingExpr::Coarsen(Box::new(r), phi.compose(&psi).unwrap())).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn classification_examples() {
        let z2 = FgGroup::cyclic(2).unwrap();
        let nf = normalize(&RingExpr::CoarseGroupAlgebra(q(), z2)).unwrap();
        assert!(!nf.classify().entire);
        assert_eq!(nf.fraction_field(), Err(Error::NotEntire));

        let nf = normalize(&RingExpr::CoarseGroupAlgebra(
            Box::new(RingExpr::BaseZ),
            FgGroup::free(2),
        ))
        .unwrap();
        let c = nf.classify();
        assert!(c.entire && !c.simple && c.noetherian);
    }

    #[test]
    fn coarsening_torsion_breaks_entirety() {
        let z2 = FgGroup::cyclic(2).unwrap();
        let fine = normalize(&RingExpr::FineGroupAlgebra(q(), z2.clone())).unwrap();
        assert!(fine.classify().entire && fine.classify().simple);
        let c = fine.coarsen(&GroupHom::zero(&z2, &FgGroup::trivial())).unwrap();
        assert!(!c.classify().entire);
        assert_eq!(fine.coarsen(&GroupHom::identity(&z2)).unwrap(), fine);
    }

    #[test]
    fn fraction_of_coarsened_keeps_grading() {
        let z = FgGroup::free(1);
        let fine = normalize(&RingExpr::FineGroupAlgebra(q(), z.clone())).unwrap();
        let frac = fine.fraction_field().unwrap();
        assert!(frac.classify().simple);
        let coarse = frac.coarsen(&GroupHom::zero(&z, &FgGroup::trivial())).unwrap();
        let c = coarse.classify();
        assert!(c.entire && !c.simple);

        let zt = FgGroup::new(1, vec![2]).unwrap();
        let frac_t = NormalForm::group_ring(Base::Q, GroupHom::identity(&zt))
            .fraction_field()
            .unwrap();
        let drop_torsion = hom(&zt, &z, &[&[1, 0]]);
        assert_eq!(frac_t.coarsen(&drop_torsion), Err(Error::TorsionKernelOnFractionField));

        let base = NormalForm::base(Base::Z).fraction_field().unwrap();
        assert_eq!(base.base, Base::Q);
        assert!(base.classify().simple);
    }

    #[test]
    fn regrading() {
        let z = FgGroup::free(1);
        let fine = normalize(&RingExpr::FineGroupAlgebra(q(), z.clone())).unwrap();
        let (even, incl) = fine.restrict(&[GroupElem(vec![2])]).unwrap();
        assert_eq!(even.e, z);
        assert_eq!(incl.apply(&GroupElem(vec![1])), GroupElem(vec![2]));
        let (same, _) = fine.restrict(&[GroupElem(vec![1])]).unwrap();
        assert_eq!(same, fine);

        let s = z.direct_sum(&z);
        let ext = fine.extend(&s.inj[0]).unwrap();
        assert_eq!(ext.classify().entire, fine.classify().entire);
        assert!(!ext.classify().full_support);
    }

    #[test]
    fn group_algebras() {
        let base = NormalForm::base(Base::Q);
        assert_eq!(
            base.group_algebra(&FgGroup::trivial(), AlgebraMode::Fine).unwrap(),
            base
        );
        let z = FgGroup::free(1);
        let twice = base
            .group_algebra(&z, AlgebraMode::Fine)
            .unwrap()
            .group_algebra(&z, AlgebraMode::Fine)
            .unwrap();
        assert_eq!(twice.delta, GroupHom::identity(&FgGroup::free(2)));
    }

    #[test]
    fn to_expr_round_trips() {
        let z2 = FgGroup::free(2);
        let z = FgGroup::free(1);
        let nf = NormalForm::group_ring(Base::Z, hom(&z2, &z2, &[&[2, 0], &[0, 1]]));
        assert_eq!(normalize(&nf.to_expr()).unwrap(), nf);
        let frac = NormalForm::group_ring(Base::Q, GroupHom::identity(&z2))
            .fraction_field()
            .unwrap()
            .coarsen(&hom(&z2, &z, &[&[1, 1]]))
            .unwrap();
        assert_eq!(normalize(&frac.to_expr()).unwrap(), frac);
    }
}
