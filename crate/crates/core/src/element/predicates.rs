//! Homogeneous units, zero-divisors, and the fine-homogeneity lemma for
//! products.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{Coeff, Element};
use crate::abelian::{FgGroup, GroupElem, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{is_base_unit_z, nullspace_rational, primitive_integer, solve_integral, solve_rational, Q};
use crate::ringexpr::Base;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitVerdict {
    Unit(Element),
    NotUnit,
    UnknownUpTo(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NzdVerdict {
    NonZeroDivisor,
    ZeroDivisor(Element),
    UnknownUpTo(i64),
}

/// Writes `x` as `e_{f0} · y` with `y` supported on `sub`, returning `y` as
/// a coefficient map over the abstract subgroup.
fn translate_into(
    x: &Element,
    f0: &GroupElem,
    sub: &Subgroup,
) -> BTreeMap<GroupElem, Coeff> {
    let e = &x.ring.e;
    x.terms
        .iter()
        .map(|(f, c)| {
            let d = e.sub(f, f0);
            let k = sub.coordinates_of(&d).expect("support lies in the coset");
            (k, c.clone())
        })
        .collect()
}

/// Solves `y · z = target` for `z` supported on `candidates`, in `base[A]`.
///
/// Coefficients of `z` are integers when `integral` is set.
fn solve_in_group_ring(
    a: &FgGroup,
    y: &BTreeMap<GroupElem, Coeff>,
    candidates: &[GroupElem],
    target: &BTreeMap<GroupElem, Coeff>,
    integral: bool,
) -> Option<Vec<Q>> {
    let mut rows: BTreeMap<GroupElem, usize> = BTreeMap::new();
    for t in target.keys() {
        let n = rows.len();
        rows.entry(t.clone()).or_insert(n);
    }
    let mut cols: Vec<Vec<(usize, Q)>> = Vec::with_capacity(candidates.len());
    for m in candidates {
        let mut col = Vec::with_capacity(y.len());
        for (k, c) in y {
            let s = a.add(k, m);
            let n = rows.len();
            let r = *rows.entry(s).or_insert(n);
            col.push((r, c.clone()));
        }
        cols.push(col);
    }
    let mut mat = alloc::vec![alloc::vec![Q::zero(); candidates.len()]; rows.len()];
    for (j, col) in cols.into_iter().enumerate() {
        for (r, c) in col {
            mat[r][j] += c;
        }
    }
    let mut rhs = alloc::vec![Q::zero(); rows.len()];
    for (t, c) in target {
        rhs[rows[t]] = c.clone();
    }
    if integral {
        solve_integral(&mat, candidates.len(), &rhs)
            .map(|v| v.into_iter().map(Q::from_integer).collect())
    } else {
        solve_rational(&mat, candidates.len(), &rhs)
    }
}

/// Decides whether a nonzero homogeneous `x` is a unit.
///
/// `x = e_{f0} · y` with `y` in `base[N]`, `N = ker δ`. Torsionfree `N`
/// admits only monomial units; finite `N` is decided by linear algebra on
/// `base[N]`; otherwise an inverse is searched for with free coordinates in
/// `[-bound, bound]`.
pub fn homogeneous_unit_test(x: &Element, bound: i64) -> Result<UnitVerdict> {
    let deg = x.degree_of()?;
    if deg.is_none() {
        return Err(Error::NotHomogeneous);
    }
    let ring = x.ring.clone();
    let e = &ring.e;
    let f0 = x.terms.keys().next().expect("nonzero").clone();
    let n = ring.delta.kernel();
    let y = translate_into(x, &f0, &n);

    let integral = ring.base == Base::Z;
    let from_kernel = |z: &[(GroupElem, Q)]| -> Element {
        let neg = e.neg(&f0);
        let terms: BTreeMap<GroupElem, Coeff> = z
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (e.add(&n.inclusion.apply(k), &neg), c.clone()))
            .collect();
        Element::from_map(&ring, terms)
    };

    if n.group.is_torsionfree() {
        if y.len() != 1 {
            return Ok(UnitVerdict::NotUnit);
        }
        let (k, c) = y.iter().next().expect("one term");
        if integral && !is_base_unit_z(c) {
            return Ok(UnitVerdict::NotUnit);
        }
        let k_inv = n.group.neg(k);
        return Ok(UnitVerdict::Unit(from_kernel(&[(k_inv, c.recip())])));
    }

    let mut one = BTreeMap::new();
    one.insert(n.group.zero(), Q::one());
    let finite = n.group.is_finite();
    let candidates = n.group.box_elements(bound);
    match solve_in_group_ring(&n.group, &y, &candidates, &one, integral) {
        Some(z) => {
            let pairs: Vec<(GroupElem, Q)> = candidates.into_iter().zip(z).collect();
            Ok(UnitVerdict::Unit(from_kernel(&pairs)))
        }
        // For finite N the candidate set is all of N, so this is a proof.
        None if finite => Ok(UnitVerdict::NotUnit),
        None => Ok(UnitVerdict::UnknownUpTo(bound)),
    }
}

/// Subgroup of `E` generated by the differences of support points of `x`.
fn difference_subgroup(x: &Element) -> Subgroup {
    let e = &x.ring.e;
    let mut it = x.terms.keys();
    let f0 = it.next().expect("nonzero");
    let diffs: Vec<GroupElem> = it.map(|f| e.sub(f, f0)).collect();
    e.subgroup_generated_by(&diffs).expect("differences lie in E")
}

/// Searches for `w ≠ 0` with `x · w = 0` and `w` supported on
/// `U`-translates in the box of radius `bound`, `U` the difference subgroup.
///
/// Restricting to `base[U]` loses nothing: `base[E]` is a free
/// `base[U]`-module and `x` lies in a single `U`-coset.
pub fn find_annihilator(x: &Element, bound: i64) -> Result<Option<Element>> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = x.ring.clone();
    let e = &ring.e;
    let u = difference_subgroup(x);
    let f0 = x.terms.keys().next().expect("nonzero").clone();
    let y = translate_into(x, &f0, &u);
    let candidates = u.group.box_elements(bound);

    let mut rows: BTreeMap<GroupElem, usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    for (j, m) in candidates.iter().enumerate() {
        for (k, c) in &y {
            let s = u.group.add(k, m);
            let n = rows.len();
            let r = *rows.entry(s).or_insert(n);
            entries.push((r, j, c.clone()));
        }
    }
    let mut mat = alloc::vec![alloc::vec![Q::zero(); candidates.len()]; rows.len()];
    for (r, j, c) in entries {
        mat[r][j] += c;
    }
    let null = nullspace_rational(&mat, candidates.len());
    let Some(v) = null.into_iter().next() else {
        return Ok(None);
    };
    let ints = primitive_integer(&v);
    let terms: BTreeMap<GroupElem, Coeff> = candidates
        .iter()
        .zip(ints)
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (u.inclusion.apply(m), Q::from_integer(c)))
        .collect();
    let w = Element::from_map(&ring, terms);
    debug_assert!((&w * x).is_zero());
    let _ = e;
    Ok(Some(w))
}

/// Decides whether `x` is a non-zerodivisor where that is cheap, and
/// otherwise searches for an annihilator.
///
/// Applies to arbitrary nonzero `x`, not only homogeneous ones.
pub fn nzd_test(x: &Element, bound: i64) -> Result<NzdVerdict> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let u = difference_subgroup(x);
    if u.group.is_torsionfree() {
        return Ok(NzdVerdict::NonZeroDivisor);
    }
    let ring = x.ring.clone();
    let e = &ring.e;
    // c·e_a·(1 - e_g) with g of finite order n is killed by Σ_{i<n} e_{ig}.
    if x.len() == 2 {
        let mut it = x.terms.iter();
        let (a, ca) = it.next().expect("two terms");
        let (b, cb) = it.next().expect("two terms");
        if (ca + cb).is_zero() {
            let g = e.sub(b, a);
            if let Some(n) = e.element_order(&g) {
                let terms: BTreeMap<GroupElem, Coeff> =
                    (0..n).map(|i| (e.scale(i, &g), Q::one())).collect();
                return Ok(NzdVerdict::ZeroDivisor(Element::from_map(&ring, terms)));
            }
        }
    }
    match find_annihilator(x, bound)? {
        Some(w) => Ok(NzdVerdict::ZeroDivisor(w)),
        None if u.group.is_finite() => Ok(NzdVerdict::NonZeroDivisor),
        None => Ok(NzdVerdict::UnknownUpTo(bound)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P70Verdict {
    pub x_homogeneous: bool,
    pub y_homogeneous: bool,
    pub product_nonzero: bool,
}

impl P70Verdict {
    pub fn pass(&self) -> bool {
        self.x_homogeneous && self.y_homogeneous && self.product_nonzero
    }
}

/// For an entire ring, a coarsening `ψ` with torsionfree kernel, and nonzero
/// `ψ`-homogeneous `x, y` whose product is homogeneous in the original
/// grading: reports whether `x`, `y` are themselves homogeneous and `xy ≠ 0`.
pub fn lemma_p70_check(psi: &GroupHom, x: &Element, y: &Element) -> Result<P70Verdict> {
    let ring = x.ring.clone();
    if *y.ring != *ring {
        return Err(Error::ParentMismatch);
    }
    if !ring.is_entire() {
        return Err(Error::PreconditionViolated("ring is not entire"));
    }
    if psi.domain() != &ring.g {
        return Err(Error::DomainMismatch);
    }
    if !psi.kernel().group.is_torsionfree() {
        return Err(Error::PreconditionViolated("coarsening kernel has torsion"));
    }
    if x.is_zero() || y.is_zero() {
        return Err(Error::PreconditionViolated("factors must be nonzero"));
    }
    let coarse = psi.compose(&ring.delta)?;
    if !x.is_homogeneous_in(&coarse) || !y.is_homogeneous_in(&coarse) {
        return Err(Error::PreconditionViolated("factors must be coarsely homogeneous"));
    }
    let xy = x * y;
    if !xy.is_homogeneous() {
        return Err(Error::PreconditionViolated("product is not finely homogeneous"));
    }
    Ok(P70Verdict {
        x_homogeneous: x.is_homogeneous(),
        y_homogeneous: y.is_homogeneous(),
        product_nonzero: !xy.is_zero(),
    })
}
