//! Finitely generated abelian groups, their homomorphisms, and integer
//! lattice algorithms.

mod group;
pub mod matrix;
mod order;

pub use group::{is_in_torsionfree_summand, DirectSum, FgGroup, GroupElem, GroupHom, Subgroup};
pub use matrix::{hermite_normal_form, integer_kernel, smith_normal_form, solve_integer, Matrix};
pub use order::{extended_compare, total_compare};

/// Kernel of `psi` as an abstract group with its inclusion.
pub fn hom_kernel(psi: &GroupHom) -> (FgGroup, GroupHom) {
    let k = psi.kernel();
    (k.group, k.inclusion)
}

/// `(rank, torsion invariants, torsionfree?)`.
pub fn torsion_decomposition(g: &FgGroup) -> (usize, alloc::vec::Vec<i64>, bool) {
    g.torsion_decomposition()
}
