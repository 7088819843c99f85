//! The lexicographic total order on torsionfree groups and its extension to
//! cosets of an ordered subgroup.

use core::cmp::Ordering;

use super::group::{FgGroup, GroupElem, Subgroup};
use crate::error::{Error, Result};

/// Lexicographic comparison on coordinates of a torsionfree group.
pub fn total_compare(f: &FgGroup, a: &GroupElem, b: &GroupElem) -> Result<Ordering> {
    if !f.is_torsionfree() {
        return Err(Error::NotTorsionfree);
    }
    f.check(a)?;
    f.check(b)?;
    Ok(a.0.cmp(&b.0))
}

/// Compares `g` and `h` through the order on `F`: comparable iff `g - h ∈ F`.
///
/// `F` must be torsionfree; its order is the lexicographic order on its own
/// coordinates.
pub fn extended_compare(
    g_group: &FgGroup,
    f: &Subgroup,
    g: &GroupElem,
    h: &GroupElem,
) -> Result<Option<Ordering>> {
    if f.inclusion.codomain() != g_group {
        return Err(Error::DomainMismatch);
    }
    if !f.group.is_torsionfree() {
        return Err(Error::NotTorsionfree);
    }
    let diff = g_group.sub(g, h);
    let Some(c) = f.coordinates_of(&diff) else {
        return Ok(None);
    };
    // Coordinates are unique because the inclusion is injective and F is free.
    total_compare(&f.group, &c, &f.group.zero()).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(v: &[i64]) -> GroupElem {
        GroupElem(v.to_vec())
    }

    #[test]
    fn lex_examples() {
        let z2 = FgGroup::free(2);
        assert_eq!(total_compare(&z2, &e(&[1, -5]), &e(&[1, 3])).unwrap(), Ordering::Less);
        assert_eq!(total_compare(&z2, &e(&[0, 0]), &e(&[0, 0])).unwrap(), Ordering::Equal);
        assert_eq!(total_compare(&z2, &e(&[2, 0]), &e(&[1, 100])).unwrap(), Ordering::Greater);
        let t = FgGroup::new(1, vec![2]).unwrap();
        assert_eq!(total_compare(&t, &e(&[0, 0]), &e(&[0, 1])), Err(Error::NotTorsionfree));
    }

    #[test]
    fn coset_comparison() {
        let z = FgGroup::free(1);
        let f = z.subgroup_generated_by(&[e(&[2])]).unwrap();
        assert_eq!(extended_compare(&z, &f, &e(&[5]), &e(&[1])).unwrap(), Some(Ordering::Greater));
        assert_eq!(extended_compare(&z, &f, &e(&[1]), &e(&[2])).unwrap(), None);
        let whole = z.subgroup_generated_by(&[e(&[1])]).unwrap();
        assert_eq!(extended_compare(&z, &whole, &e(&[-3]), &e(&[4])).unwrap(), Some(Ordering::Less));
    }
}
