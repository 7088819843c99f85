use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use super::matrix::{
    integer_kernel, lattice_basis, smith_normal_form, solve_integer, Matrix,
};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with
/// `d_1 | d_2 | … | d_k` and every `d_i ≥ 2`.
///
/// Elements are integer vectors of length `rank + k`: free coordinates first,
/// then torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FgGroup {
    rank: usize,
    torsion: Vec<i64>,
}

/// Coordinates of an element of some [`FgGroup`].
///
/// The derived ordering is lexicographic on coordinates, which is the
/// canonical iteration order for term maps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElem(pub Vec<i64>);

impl GroupElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<i64>> for GroupElem {
    fn from(v: Vec<i64>) -> Self {
        GroupElem(v)
    }
}

/// A group together with an injective homomorphism into an ambient group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    pub group: FgGroup,
    pub inclusion: GroupHom,
}

/// Outcome of presenting a lattice quotient `L / R` in invariant-factor form.
struct Presentation {
    group: FgGroup,
    /// Maps `L`-coordinates (w.r.t. the chosen basis) to group coordinates.
    to_group: Matrix<i64>,
    /// Columns are lifts of the group generators, in ambient coordinates.
    generators: Matrix<i64>,
}

impl FgGroup {
    /// A group already in invariant-factor form.
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::InvalidGroup("torsion orders must be at least 2"));
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup("torsion orders must form a divisibility chain"));
        }
        Ok(FgGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        match n {
            0 => Ok(Self::free(1)),
            1 => Ok(Self::trivial()),
            n if n < 0 => Err(Error::InvalidGroup("negative cyclic order")),
            n => Self::new(0, vec![n]),
        }
    }

    /// `Z^rank ⊕ Z/o_1 ⊕ …` for arbitrary orders (0 means a free generator),
    /// normalized to invariant factors. The matrix maps the given generators'
    /// coordinates to normalized coordinates.
    pub fn from_orders(rank: usize, orders: &[i64]) -> Result<(Self, Matrix<i64>)> {
        if orders.iter().any(|&o| o < 0) {
            return Err(Error::InvalidGroup("negative order"));
        }
        let n = rank + orders.len();
        let rels: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .filter(|(_, &o)| o != 0)
            .map(|(i, &o)| {
                let mut c = vec![0; n];
                c[rank + i] = o;
                c
            })
            .collect();
        let p = present(&Matrix::identity(n), &rels, n);
        Ok((p.group, p.to_group))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_torsionfree(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<i64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the `i`-th generator (0 for a free generator).
    pub fn generator_order(&self, i: usize) -> i64 {
        if i < self.rank {
            0
        } else {
            self.torsion[i - self.rank]
        }
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.dim()])
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        GroupElem(v)
    }

    pub fn generators(&self) -> Vec<GroupElem> {
        (0..self.dim()).map(|i| self.generator(i)).collect()
    }

    /// Reduces arbitrary integer coordinates to the canonical representative.
    pub fn reduce(&self, coords: &[i64]) -> GroupElem {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut v = coords.to_vec();
        for (j, &d) in self.torsion.iter().enumerate() {
            v[self.rank + j] = v[self.rank + j].mod_floor(&d);
        }
        GroupElem(v)
    }

    /// Validates an element literal, reducing torsion coordinates.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElem> {
        if coords.len() != self.dim() {
            return Err(Error::ElementLength {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(self.reduce(coords))
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        g.len() == self.dim()
            && self
                .torsion
                .iter()
                .enumerate()
                .all(|(j, &d)| (0..d).contains(&g.0[self.rank + j]))
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
        self.reduce(&v)
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&v)
    }

    pub fn scale(&self, k: i64, a: &GroupElem) -> GroupElem {
        let v: Vec<i64> = a.0.iter().map(|x| k * x).collect();
        self.reduce(&v)
    }

    pub fn is_zero(&self, a: &GroupElem) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn element_order(&self, a: &GroupElem) -> Option<i64> {
        if a.0[..self.rank].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .enumerate()
                .map(|(j, &d)| d / a.0[self.rank + j].gcd(&d))
                .fold(1, |acc, o| acc.lcm(&o)),
        )
    }

    /// Relation columns `d_j e_{rank+j}` of the presentation.
    fn relations(&self) -> Vec<Vec<i64>> {
        self.torsion
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let mut c = vec![0; self.dim()];
                c[self.rank + j] = d;
                c
            })
            .collect()
    }

    fn relation_matrix(&self) -> Matrix<i64> {
        Matrix::from_columns(&self.relations(), self.dim())
    }

    /// Enumerates all elements whose free coordinates lie in `[-radius, radius]`.
    /// For a finite group this is every element.
    pub fn box_elements(&self, radius: i64) -> Vec<GroupElem> {
        let mut ranges: Vec<(i64, i64)> = vec![(-radius, radius); self.rank];
        ranges.extend(self.torsion.iter().map(|&d| (0, d - 1)));
        let mut out = vec![Vec::with_capacity(self.dim())];
        for (lo, hi) in ranges {
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for prefix in &out {
                for x in lo..=hi {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(GroupElem).collect()
    }

    /// All elements of a finite group.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        self.is_finite().then(|| self.box_elements(0))
    }

    /// Direct sum `self ⊕ other` in invariant-factor form.
    pub fn direct_sum(&self, other: &FgGroup) -> DirectSum {
        direct_sum(self, other)
    }

    /// The subgroup generated by `gens`, presented abstractly.
    pub fn subgroup_generated_by(&self, gens: &[GroupElem]) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let n = self.dim();
        let mut lattice_gens: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
        lattice_gens.extend(self.relations());
        let basis = lattice_basis(&lattice_gens, n);
        if basis == Matrix::identity(n) {
            return Ok(Subgroup {
                group: self.clone(),
                inclusion: GroupHom::identity(self),
            });
        }
        let b = basis.transpose();
        let p = present(&b, &self.relations(), n);
        let inclusion = GroupHom {
            domain: p.group.clone(),
            codomain: self.clone(),
            matrix: p.generators,
        }
        .canonical();
        Ok(Subgroup {
            group: p.group,
            inclusion,
        })
    }

    /// `self / ⟨gens⟩` with the canonical projection.
    pub fn quotient_by(&self, gens: &[GroupElem]) -> Result<(FgGroup, GroupHom)> {
        for g in gens {
            self.check(g)?;
        }
        if gens.iter().all(|g| self.is_zero(g)) {
            return Ok((self.clone(), GroupHom::identity(self)));
        }
        let n = self.dim();
        let mut rels = self.relations();
        rels.extend(gens.iter().map(|g| g.0.clone()));
        let p = present(&Matrix::identity(n), &rels, n);
        let proj = GroupHom {
            domain: self.clone(),
            codomain: p.group.clone(),
            matrix: p.to_group,
        }
        .canonical();
        Ok((p.group, proj))
    }

    /// Free rank, torsion invariants, and whether the torsion part vanishes.
    pub fn torsion_decomposition(&self) -> (usize, Vec<i64>, bool) {
        (self.rank, self.torsion.clone(), self.is_torsionfree())
    }

    /// The torsion subgroup on the torsion coordinates.
    pub fn torsion_subgroup(&self) -> Subgroup {
        let t = FgGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        };
        let cols: Vec<Vec<i64>> = (0..t.dim())
            .map(|j| self.generator(self.rank + j).0)
            .collect();
        Subgroup {
            inclusion: GroupHom {
                domain: t.clone(),
                codomain: self.clone(),
                matrix: Matrix::from_columns(&cols, self.dim()),
            },
            group: t,
        }
    }

    pub(crate) fn check(&self, g: &GroupElem) -> Result<()> {
        if g.len() != self.dim() {
            return Err(Error::ElementLength {
                expected: self.dim(),
                found: g.len(),
            });
        }
        if !self.contains(g) {
            return Err(Error::InvalidGroup("torsion coordinate not reduced"));
        }
        Ok(())
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.rank > 0 {
            write!(f, "Z^{}", self.rank)?;
            first = false;
        }
        for d in &self.torsion {
            if !first {
                f.write_str(" x ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Invariant-factor presentation of `L / R`, `L` spanned by the columns of
/// `basis` (independent), `R ⊆ L` given by `rels`.
fn present(basis: &Matrix<i64>, rels: &[Vec<i64>], ambient: usize) -> Presentation {
    let m = basis.cols();
    let coords: Vec<Vec<i64>> = rels
        .iter()
        .map(|r| solve_integer(basis, r).expect("relation outside lattice"))
        .collect();
    let c = Matrix::from_columns(&coords, m);
    let smith = smith_normal_form(&c);
    let factors = smith.invariant_factors();
    let s = factors.len();

    let mut free_idx: Vec<usize> = (s..m).collect();
    let tors_idx: Vec<usize> = (0..s).filter(|&i| factors[i] > 1).collect();
    let torsion: Vec<i64> = tors_idx.iter().map(|&i| factors[i]).collect();
    let rank = free_idx.len();
    let mut order = Vec::with_capacity(rank + torsion.len());
    order.append(&mut free_idx);
    order.extend(&tors_idx);

    let to_group = smith.u.select_rows(&order);
    let generators = basis.mul(&smith.u_inv).select_columns(&order);
    debug_assert_eq!(generators.rows(), ambient);
    Presentation {
        group: FgGroup { rank, torsion },
        to_group,
        generators,
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    pub inj: [GroupHom; 2],
    pub proj: [GroupHom; 2],
}

fn direct_sum(a: &FgGroup, b: &FgGroup) -> DirectSum {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    // Ambient coordinates: a's block then b's block.
    let mut torsion = a.torsion.clone();
    torsion.extend(&b.torsion);
    let chain = torsion.windows(2).all(|w| w[1] % w[0] == 0);
    // `perm[i]` is the summed-group coordinate of ambient coordinate `i`.
    let (group, to_group, from_group) = if chain {
        let group = FgGroup {
            rank: a.rank + b.rank,
            torsion,
        };
        let mut perm = vec![0; n];
        for i in 0..a.rank {
            perm[i] = i;
        }
        for i in 0..b.rank {
            perm[na + i] = a.rank + i;
        }
        for j in 0..a.torsion.len() {
            perm[a.rank + j] = a.rank + b.rank + j;
        }
        for j in 0..b.torsion.len() {
            perm[na + b.rank + j] = a.rank + b.rank + a.torsion.len() + j;
        }
        let mut to = Matrix::zeros(n, n);
        let mut from = Matrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            to[(p, i)] = 1;
            from[(i, p)] = 1;
        }
        (group, to, from)
    } else {
        let mut rels = a.relations();
        for r in &mut rels {
            r.extend(core::iter::repeat_n(0, nb));
        }
        for r in b.relations() {
            let mut c = vec![0; na];
            c.extend(r);
            rels.push(c);
        }
        let p = present(&Matrix::identity(n), &rels, n);
        (p.group, p.to_group, p.generators)
    };
    let block = |m: &Matrix<i64>, rows: core::ops::Range<usize>| {
        m.select_rows(&rows.collect::<Vec<_>>())
    };
    let cols = |m: &Matrix<i64>, cs: core::ops::Range<usize>| {
        m.select_columns(&cs.collect::<Vec<_>>())
    };
    let inj_a = GroupHom {
        domain: a.clone(),
        codomain: group.clone(),
        matrix: cols(&to_group, 0..na),
    }
    .canonical();
    let inj_b = GroupHom {
        domain: b.clone(),
        codomain: group.clone(),
        matrix: cols(&to_group, na..n),
    }
    .canonical();
    let proj_a = GroupHom {
        domain: group.clone(),
        codomain: a.clone(),
        matrix: block(&from_group, 0..na),
    }
    .canonical();
    let proj_b = GroupHom {
        domain: group.clone(),
        codomain: b.clone(),
        matrix: block(&from_group, na..n),
    }
    .canonical();
    DirectSum {
        group,
        inj: [inj_a, inj_b],
        proj: [proj_a, proj_b],
    }
}

/// A homomorphism given by its matrix on the standard generators: column `j`
/// is the image of generator `j` of the domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom {
    domain: FgGroup,
    codomain: FgGroup,
    matrix: Matrix<i64>,
}

impl GroupHom {
    /// Checks shape and well-definedness on torsion generators.
    pub fn new(domain: FgGroup, codomain: FgGroup, matrix: Matrix<i64>) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::HomShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: codomain.dim(),
                expected_cols: domain.dim(),
            });
        }
        let hom = GroupHom {
            domain,
            codomain,
            matrix,
        }
        .canonical();
        for j in hom.domain.rank..hom.domain.dim() {
            let d = hom.domain.generator_order(j);
            let col: Vec<i64> = hom.matrix.column(j).iter().map(|x| d * x).collect();
            if !hom.codomain.is_zero(&hom.codomain.reduce(&col)) {
                return Err(Error::NotWellDefined { generator: j });
            }
        }
        Ok(hom)
    }

    pub fn from_columns(domain: FgGroup, codomain: FgGroup, images: &[GroupElem]) -> Result<Self> {
        let cols: Vec<Vec<i64>> = images.iter().map(|g| g.0.clone()).collect();
        let m = Matrix::from_columns(&cols, codomain.dim());
        Self::new(domain, codomain, m)
    }

    pub fn identity(g: &FgGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: Matrix::identity(g.dim()),
        }
    }

    pub fn zero(domain: &FgGroup, codomain: &FgGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    /// Reduces every column to a canonical codomain element.
    fn canonical(mut self) -> Self {
        for j in 0..self.matrix.cols() {
            let col = self.codomain.reduce(&self.matrix.column(j));
            for (i, x) in col.0.into_iter().enumerate() {
                self.matrix[(i, j)] = x;
            }
        }
        self
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<i64> {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElem) -> GroupElem {
        assert_eq!(x.len(), self.domain.dim(), "element not in domain");
        self.codomain.reduce(&self.matrix.mul_vec(&x.0))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.codomain != self.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(GroupHom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
        .canonical())
    }

    /// `self + other` pointwise.
    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DomainMismatch);
        }
        let mut m = self.matrix.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += other.matrix[(i, j)];
            }
        }
        Ok(GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        }
        .canonical())
    }

    /// Relation matrix `[M | -Rel_codomain]` whose integer kernel describes
    /// pairs `(x, y)` with `M x ≡ 0`.
    fn lifted_system(&self) -> Matrix<i64> {
        let rel = self.codomain.relation_matrix();
        let neg = rel.map(|x| -x);
        self.matrix.hcat(&neg)
    }

    pub fn kernel(&self) -> Subgroup {
        let sys = self.lifted_system();
        let n = self.domain.dim();
        let gens: Vec<GroupElem> = integer_kernel(&sys)
            .into_iter()
            .map(|v| self.domain.reduce(&v[..n]))
            .collect();
        self.domain
            .subgroup_generated_by(&gens)
            .expect("kernel generators lie in the domain")
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<GroupElem> = self
            .domain
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect();
        self.codomain
            .subgroup_generated_by(&gens)
            .expect("images lie in the codomain")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        let gens: Vec<GroupElem> = self
            .domain
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect();
        let (q, _) = self
            .codomain
            .quotient_by(&gens)
            .expect("images lie in the codomain");
        q.is_trivial()
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &GroupElem) -> Option<GroupElem> {
        let sys = self.lifted_system();
        let x = solve_integer(&sys, &y.0)?;
        Some(self.domain.reduce(&x[..self.domain.dim()]))
    }

    /// A section `π` with `self ∘ π = id`, if one exists.
    pub fn find_section(&self) -> Result<Option<GroupHom>> {
        if !self.is_surjective() {
            return Err(Error::NotSurjective);
        }
        let (g, h) = (&self.domain, &self.codomain);
        let (ng, nh) = (g.dim(), h.dim());
        let (kg, kh) = (g.torsion.len(), h.torsion.len());
        let rel_g = g.relation_matrix();
        let rel_h = h.relation_matrix();
        let mut images = Vec::with_capacity(nh);
        for j in 0..nh {
            let order = h.generator_order(j);
            // [ M        -Rel_H   0      ] (x)   (e_j)
            // [ order*I   0      -Rel_G  ] (y) = ( 0 )
            //                                (z)
            let mut sys = Matrix::zeros(nh + ng, ng + kh + kg);
            for r in 0..nh {
                for c in 0..ng {
                    sys[(r, c)] = self.matrix[(r, c)];
                }
                for c in 0..kh {
                    sys[(r, ng + c)] = -rel_h[(r, c)];
                }
            }
            for r in 0..ng {
                sys[(nh + r, r)] = order;
                for c in 0..kg {
                    sys[(nh + r, ng + kh + c)] = -rel_g[(r, c)];
                }
            }
            let mut rhs = vec![0; nh + ng];
            rhs[j] = 1;
            match solve_integer(&sys, &rhs) {
                Some(x) => images.push(g.reduce(&x[..ng])),
                None => return Ok(None),
            }
        }
        let pi = GroupHom::from_columns(h.clone(), g.clone(), &images)?;
        debug_assert_eq!(self.compose(&pi)?, GroupHom::identity(h));
        Ok(Some(pi))
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.matrix.rows() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in self.matrix.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        write!(f, "]:{}->{}", self.domain, self.codomain)
    }
}

impl Subgroup {
    pub fn contains(&self, g: &GroupElem) -> bool {
        self.inclusion.preimage(g).is_some()
    }

    /// Coordinates of `g` in the abstract subgroup, if `g` lies in it.
    pub fn coordinates_of(&self, g: &GroupElem) -> Option<GroupElem> {
        self.inclusion.preimage(g)
    }

    /// Images of the abstract generators in the ambient group.
    pub fn ambient_generators(&self) -> Vec<GroupElem> {
        self.group
            .generators()
            .iter()
            .map(|g| self.inclusion.apply(g))
            .collect()
    }

    /// Whether both subgroups of the same ambient group coincide.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.ambient_generators().iter().all(|g| other.contains(g))
            && other.ambient_generators().iter().all(|g| self.contains(g))
    }
}

/// Whether the subgroup generated by `f` is contained in a torsionfree direct
/// summand of `g`.
///
/// Decided by searching for a retraction of `T → G → G/F`, `T` the torsion
/// subgroup. Homomorphisms `G/F → T` are enumerated by generator images.
pub fn is_in_torsionfree_summand(g: &FgGroup, f: &[GroupElem]) -> Result<bool> {
    let t = g.torsion_subgroup();
    if t.group.is_trivial() {
        return Ok(true);
    }
    let (q, chi) = g.quotient_by(f)?;
    let composite = chi.compose(&t.inclusion)?;
    let tg = &t.group;
    let t_elems = tg.elements().expect("torsion subgroup is finite");

    // Admissible images per generator of G/F.
    let choices: Vec<Vec<&GroupElem>> = (0..q.dim())
        .map(|i| {
            let o = q.generator_order(i);
            t_elems
                .iter()
                .filter(|x| o == 0 || tg.is_zero(&tg.scale(o, x)))
                .collect()
        })
        .collect();
    let targets: Vec<GroupElem> = tg.generators();
    let phi_images: Vec<GroupElem> = targets.iter().map(|x| composite.apply(x)).collect();

    // Depth-first over generator images; the check is linear so it is only
    // evaluated on complete assignments.
    let mut idx = vec![0usize; q.dim()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    loop {
        let images: Vec<&GroupElem> = idx.iter().enumerate().map(|(i, &k)| choices[i][k]).collect();
        let ok = phi_images.iter().zip(&targets).all(|(y, want)| {
            let mut acc = vec![0i64; tg.dim()];
            for (i, &c) in y.0.iter().enumerate() {
                for (a, b) in acc.iter_mut().zip(&images[i].0) {
                    *a += c * b;
                }
            }
            tg.reduce(&acc) == *want
        });
        if ok {
            return Ok(true);
        }
        // Odometer increment.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(false);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
