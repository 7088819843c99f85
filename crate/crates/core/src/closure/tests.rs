use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::abelian::FgGroup;
use crate::element::{coeff, ratio};
use crate::ringexpr::{AlgebraMode, NormalForm};

fn ge(v: &[i64]) -> GroupElem {
    GroupElem(v.to_vec())
}

fn base_pair() -> RingPair {
    let z = Arc::new(NormalForm::base(Base::Z));
    let q = Arc::new(NormalForm::base(Base::Q));
    RingPair::new(&z, &q).unwrap()
}

fn constant(pair: &RingPair, c: Coeff) -> Fraction {
    let poly = Arc::new(pair.s().polynomial_ring());
    Fraction::from_element(pair.s(), Element::constant(&poly, c).unwrap()).unwrap()
}

#[test]
fn half_is_not_integral_over_z() {
    let pair = base_pair();
    let x = constant(&pair, ratio(1, 2));
    let w = IntegralityWitness {
        degree: 1,
        coefficients: vec![Element::constant(pair.s(), ratio(-1, 2)).unwrap()],
    };
    assert!(matches!(
        verify_integral_witness(&pair, &x, &w),
        Err(Error::IncompatibleRings(_))
    ));
    let b = SearchBounds { max_deg: 6, radius: 1 };
    assert_eq!(
        find_integral_equation(&pair, &x, b).unwrap(),
        IntegralSearch::NoWitnessUpTo(b)
    );
    assert!(!find_almost_integral_witness(&pair, &x, 5, 1).unwrap().found());
}

#[test]
fn ring_elements_have_degree_one_witnesses() {
    let g = FgGroup::free(1);
    let fine = |b| Arc::new(NormalForm::base(b).group_algebra(&g, AlgebraMode::Fine).unwrap());
    let (r, s) = (fine(Base::Z), fine(Base::Q));
    let pair = RingPair::new(&r, &s).unwrap();
    let ef = Element::basis(&r, ge(&[3])).unwrap();
    let x = pair.lift(&ef).unwrap();
    let w = IntegralityWitness {
        degree: 1,
        coefficients: vec![ef.neg()],
    };
    assert!(verify_integral_witness(&pair, &x, &w).unwrap());
    match find_integral_equation(&pair, &x, SearchBounds::default()).unwrap() {
        IntegralSearch::Found(found) => {
            assert_eq!(found, w);
            assert_eq!(found.to_string(), "monic 1; a1 = -1*e(3)");
        }
        other => panic!("{other:?}"),
    }
    match find_almost_integral_witness(&pair, &x, 2, 1).unwrap() {
        AlmostSearch::Found(a) => {
            assert_eq!(a.k, 0);
            assert!(verify_almost_integral_witness(&pair, &x, &a).unwrap());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn idempotent_identities() {
    for n in 2..=5 {
        let t = torsion_idempotent(n).unwrap();
        assert!(verify_integral_witness(&t.pair, &t.f, &t.witness).unwrap());
    }
    let t = torsion_idempotent(3).unwrap();
    assert_eq!(t.f.to_string(), "1/3*e(0) + 1/3*e(1) + 1/3*e(2)");
    assert_eq!(t.c.to_string(), "1*e(0) + 2*e(2)");
    assert_eq!(t.d.to_string(), "1*e(0) + 1*e(1) + 1*e(2)");
    let t = torsion_idempotent(2).unwrap();
    assert_eq!(t.f.to_string(), "1/2*e(0) + 1/2*e(1)");
    assert_eq!(t.c, t.d);
    assert!(matches!(torsion_idempotent(1), Err(Error::BadOrder(1))));
}

#[test]
fn idempotent_searches() {
    let t = torsion_idempotent(3).unwrap();
    let b = SearchBounds { max_deg: 2, radius: 0 };
    match find_integral_equation(&t.pair, &t.f, b).unwrap() {
        IntegralSearch::Found(w) => {
            assert_eq!(w.degree, 2);
            assert!(w.coefficients.iter().all(|a| a.has_integer_coefficients()));
        }
        other => panic!("{other:?}"),
    }
    match find_almost_integral_witness(&t.pair, &t.f, 3, 0).unwrap() {
        AlmostSearch::Found(a) => assert_eq!(a.k, 1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn idempotent_is_only_coarse() {
    let n = 3;
    let g = FgGroup::cyclic(n).unwrap();
    let fine = |b| Arc::new(NormalForm::base(b).group_algebra(&g, AlgebraMode::Fine).unwrap());
    let pair = RingPair::new(&fine(Base::Z), &fine(Base::Q)).unwrap();
    let psi = GroupHom::zero(&g, &FgGroup::trivial());
    let poly = pair.s().clone();
    let f = Element::from_terms(&poly, (0..n).map(|i| (ge(&[i]), ratio(1, n)))).unwrap();
    let x = pair.lift(&f).unwrap();
    let report = components_integral_check(&pair, &psi, &x, SearchBounds::default()).unwrap();
    assert_eq!(report.verdict, ComponentsVerdict::OnlyCoarse);
    assert!(report.components.iter().all(|c| c.proven_not_integral));

    let one = pair.lift(&Element::one(pair.s())).unwrap();
    let report = components_integral_check(&pair, &psi, &one, SearchBounds::default()).unwrap();
    assert_eq!(report.verdict, ComponentsVerdict::Both);
}

#[test]
fn fraction_field_elements() {
    // t^2 / (1 + t) over Z[t] in Q(Z[t]) with Z-grading collapsed.
    let g = FgGroup::free(1);
    let r = Arc::new(NormalForm::base(Base::Z).group_algebra(&g, AlgebraMode::Coarse).unwrap());
    let s = Arc::new(r.fraction_field().unwrap());
    let pair = RingPair::new(&r, &s).unwrap();
    let poly = Arc::new(s.polynomial_ring());
    let num = Element::from_terms(&poly, [(ge(&[2]), coeff(1))]).unwrap();
    let den = Element::from_terms(&poly, [(ge(&[0]), coeff(1)), (ge(&[1]), coeff(1))]).unwrap();
    let x = Fraction::new(&s, num, den).unwrap();
    assert!(!find_integral_equation(&pair, &x, SearchBounds::default())
        .unwrap()
        .found());
    // (1 + t) / 1 is in R.
    let y = pair.lift(&Element::from_terms(&r, [(ge(&[0]), coeff(1)), (ge(&[1]), coeff(1))]).unwrap().reparent(&poly).unwrap()).unwrap();
    assert!(find_integral_equation(&pair, &y, SearchBounds::default())
        .unwrap()
        .found());
}

#[test]
fn non_homogeneous_rejected() {
    let g = FgGroup::free(1);
    let fine = |b| Arc::new(NormalForm::base(b).group_algebra(&g, AlgebraMode::Fine).unwrap());
    let pair = RingPair::new(&fine(Base::Z), &fine(Base::Q)).unwrap();
    let x = Element::from_terms(pair.s(), [(ge(&[0]), coeff(1)), (ge(&[1]), coeff(1))]).unwrap();
    let x = pair.lift(&x).unwrap();
    assert_eq!(
        find_integral_equation(&pair, &x, SearchBounds::default()),
        Err(Error::NotHomogeneous)
    );
}

fn laurent_q() -> Ring {
    Arc::new(
        NormalForm::base(Base::Q)
            .group_algebra(&FgGroup::free(1), AlgebraMode::Coarse)
            .unwrap(),
    )
}

fn poly(s: &Ring, terms: &[(i64, i64)]) -> Element {
    Element::from_terms(s, terms.iter().map(|&(e, c)| (ge(&[e]), coeff(c)))).unwrap()
}

#[test]
fn euclidean_division() {
    let s = laurent_q();
    let g = poly(&s, &[(2, 1), (0, 1)]);
    let f = poly(&s, &[(1, 1), (0, -1)]);
    let d = graded_euclidean_division(&s, &g, &f).unwrap();
    assert_eq!(d.quotient, poly(&s, &[(1, 1), (0, 1)]));
    assert_eq!(d.remainder, poly(&s, &[(0, 2)]));
    let d = graded_euclidean_division(&s, &f, &f).unwrap();
    assert!(d.quotient.is_one() && d.remainder.is_zero());
    let small = poly(&s, &[(0, 5)]);
    let d = graded_euclidean_division(&s, &small, &f).unwrap();
    assert!(d.quotient.is_zero());
    assert_eq!(d.remainder, small);
    let t = graded_euclidean_division_termwise(&s, &g, &f, &[1, 0]).unwrap();
    assert_eq!(t, graded_euclidean_division(&s, &g, &f).unwrap());
    assert_eq!(
        graded_euclidean_division(&s, &g, &Element::zero(&s)),
        Err(Error::ZeroDivisor)
    );
}

#[test]
fn division_needs_simple_base() {
    let z = Arc::new(
        NormalForm::base(Base::Z)
            .group_algebra(&FgGroup::free(1), AlgebraMode::Coarse)
            .unwrap(),
    );
    assert!(matches!(LaurentStructure::recognize(&z), Err(Error::NotSimpleBase)));
    let q2 = Arc::new(
        NormalForm::base(Base::Q)
            .group_algebra(&FgGroup::free(2), AlgebraMode::Coarse)
            .unwrap(),
    );
    assert!(matches!(
        LaurentStructure::recognize(&q2),
        Err(Error::NotLaurentExtension)
    ));
}

#[test]
fn lem50_on_fine_plane() {
    let r: Ring = Arc::new(
        NormalForm::base(Base::Q)
            .group_algebra(&FgGroup::free(2), AlgebraMode::Fine)
            .unwrap(),
    );
    let l = lem50_iso(&r, &[ge(&[1, 0])], &[ge(&[0, 1])]).unwrap();
    assert_eq!(l.basis, vec![ge(&[1, 0])]);
    let target = l.p.domain().clone();
    // e_(0,1) in the target is the adjoined variable for the basis vector.
    let y = Element::basis(&target, l.q.on_exponents().apply(&ge(&[1, 0]))).unwrap();
    assert_eq!(l.p.apply(&y).unwrap(), Element::basis(l.p.codomain(), ge(&[1, 0])).unwrap());
    let samples: Vec<Element> = [[1, 0], [0, 1], [-2, 3], [4, -1]]
        .iter()
        .map(|v| Element::basis(l.q.domain(), ge(v)).unwrap())
        .collect();
    assert!(l.q.check_on(&samples).unwrap());
    for x in &samples {
        assert_eq!(&l.p.apply(&l.q.apply(x).unwrap()).unwrap(), x);
    }
}

#[test]
fn lem50_hypotheses() {
    // Support {(a, b) : a + b even}: ψ(1,1) = (0,1) lies outside.
    let g = FgGroup::free(2);
    let delta = GroupHom::from_columns(g.clone(), g.clone(), &[ge(&[1, 1]), ge(&[1, -1])]).unwrap();
    let r: Ring = Arc::new(NormalForm::group_ring(Base::Q, delta));
    assert!(matches!(
        lem50_iso(&r, &[ge(&[1, 0])], &[ge(&[0, 1])]),
        Err(Error::HypothesisViolated(_))
    ));
    let z: Ring = Arc::new(
        NormalForm::base(Base::Z)
            .group_algebra(&g, AlgebraMode::Fine)
            .unwrap(),
    );
    assert!(matches!(
        lem50_iso(&z, &[ge(&[1, 0])], &[ge(&[0, 1])]),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn j_pi_on_plane() {
    let g = FgGroup::free(2);
    let h = FgGroup::free(1);
    let r: Ring = Arc::new(
        NormalForm::base(Base::Q)
            .group_algebra(&g, AlgebraMode::Fine)
            .unwrap(),
    );
    let psi = GroupHom::from_columns(g.clone(), h.clone(), &[ge(&[1]), ge(&[0])]).unwrap();
    let pi = GroupHom::from_columns(h.clone(), g.clone(), &[ge(&[1, 0])]).unwrap();
    let j = j_pi_embedding(&r, &psi, &pi).unwrap();
    let x = Element::basis(j.domain(), ge(&[2, 5])).unwrap();
    let jx = j.apply(&x).unwrap();
    assert_eq!(jx.degree_of().unwrap(), Some(ge(&[2])));
    assert_eq!(exponents_of(&jx), vec![ge(&[2, 5, 5])]);
    let samples: Vec<Element> = [[1, 0], [0, 1], [2, -3]]
        .iter()
        .map(|v| Element::basis(j.domain(), ge(v)).unwrap())
        .collect();
    assert!(j.check_on(&samples).unwrap());

    let bad = GroupHom::from_columns(h.clone(), g.clone(), &[ge(&[2, 0])]).unwrap();
    assert_eq!(j_pi_embedding(&r, &psi, &bad), Err(Error::NotASection));

    let id = GroupHom::identity(&g);
    let j = j_pi_embedding(&r, &id, &id).unwrap();
    assert_eq!(j.on_exponents().codomain(), &g);
}

fn exponents_of(x: &Element) -> Vec<GroupElem> {
    x.support().cloned().collect()
}
