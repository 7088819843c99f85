//! Dense integer matrices and the lattice algorithms built on them.
//!
//! Everything here is generic over [`Int`] so the same code serves small
//! group presentations (`i64`) and coefficient lattices (`BigInt`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::Signed;

/// Exact signed integer arithmetic.
pub trait Int: Integer + Signed + Clone + fmt::Debug {}

impl<T: Integer + Signed + Clone + fmt::Debug> Int for T {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.debug_list()
                .entries(&self.data[i * self.cols..(i + 1) * self.cols])
                .finish()?;
        }
        f.write_str("]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Int> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect(), self.cols)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<Vec<T>> = idx.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(&cols, self.rows)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * k.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * k.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = num / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn map<U: Int>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Result of [`smith_normal_form`]: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: Matrix<T>,
}

impl<T: Int> Smith<T> {
    /// Nonzero diagonal entries, in order; they form a divisibility chain.
    pub fn invariant_factors(&self) -> Vec<T> {
        let k = self.d.rows.min(self.d.cols);
        (0..k)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

fn smallest_nonzero<T: Int>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are the entry of smallest nonzero absolute value in the remaining
/// block, first in row-major order. Diagonal entries come out nonnegative.
pub fn smith_normal_form<T: Int>(a: &Matrix<T>) -> Smith<T> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = Matrix::identity(m);
    let mut u_inv = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return Smith { u, d, v, u_inv };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&p);
                let nq = -q.clone();
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                u_inv.add_col_multiple(t, i, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&p);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one.clone());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    Smith { u, d, v, u_inv }
}

/// Row-style Hermite normal form: `t * a == h`, `t` unimodular.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub h: Matrix<T>,
    pub t: Matrix<T>,
    /// Pivot column of each nonzero row of `h`, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<T: Int> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `c` with `c * h[0..rank] == v`, if `v` lies in the row lattice.
    pub fn row_coefficients(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.h.cols);
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (r, &p) in self.pivots.iter().enumerate() {
            let pivot = &self.h[(r, p)];
            let (q, rem) = rest[p].div_rem(pivot);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in p..self.h.cols {
                    rest[j] = rest[j].clone() - q.clone() * self.h[(r, j)].clone();
                }
            }
            coeffs.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coeffs)
    }
}

/// Hermite normal form of the rows of `a` with the unimodular transform.
///
/// Entries above each pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form<T: Int>(a: &Matrix<T>) -> Echelon<T> {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut t = Matrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &k| h[(i, col)].abs().cmp(&h[(k, col)].abs()));
            let Some(bi) = best else { break };
            h.swap_rows(r, bi);
            t.swap_rows(r, bi);
            let p = h[(r, col)].clone();
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&p);
                h.add_row_multiple(i, r, &q);
                t.add_row_multiple(i, r, &q);
                if !h[(i, col)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                if h[(r, col)].is_negative() {
                    h.negate_row(r);
                    t.negate_row(r);
                }
                let p = h[(r, col)].clone();
                for i in 0..r {
                    let q = -h[(i, col)].div_floor(&p);
                    h.add_row_multiple(i, r, &q);
                    t.add_row_multiple(i, r, &q);
                }
                pivots.push(col);
                r += 1;
                break;
            }
        }
    }
    Echelon { h, t, pivots }
}

/// Basis of the integer kernel `{x : a x = 0}`, one vector per entry.
pub fn integer_kernel<T: Int>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let e = hermite_normal_form(&a.transpose());
    (e.rank()..a.cols).map(|i| e.t.row(i).to_vec()).collect()
}

/// Solves `a x = b` over the integers.
pub fn solve_integer<T: Int>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(a.rows, b.len());
    let e = hermite_normal_form(&a.transpose());
    let c = e.row_coefficients(b)?;
    let mut x = vec![T::zero(); a.cols];
    for (r, cr) in c.iter().enumerate() {
        if cr.is_zero() {
            continue;
        }
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = xj.clone() + cr.clone() * e.t[(r, j)].clone();
        }
    }
    Some(x)
}

/// Basis (as rows, in Hermite form) of the lattice spanned by `generators`.
pub fn lattice_basis<T: Int>(generators: &[Vec<T>], dim: usize) -> Matrix<T> {
    let g = Matrix::from_rows(generators.to_vec(), dim);
    let e = hermite_normal_form(&g);
    let k = e.rank();
    e.h.select_rows(&(0..k).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols)
    }

    fn check_smith(a: &Matrix<i64>) -> Smith<i64> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(a.rows()));
        assert_eq!(s.u.determinant().abs(), 1);
        assert_eq!(s.v.determinant().abs(), 1);
        s
    }

    #[test]
    fn smith_identity() {
        let s = check_smith(&Matrix::identity(2));
        assert_eq!(s.d, Matrix::identity(2));
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
    }

    #[test]
    fn smith_zero() {
        let s = check_smith(&m(&[&[0]]));
        assert_eq!(s.d, m(&[&[0]]));
    }

    #[test]
    fn smith_two_by_two() {
        // gcd of entries is 2, the 2x2 minor is -8.
        let s = check_smith(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, m(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let s = check_smith(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn hermite_and_kernel() {
        let a = m(&[&[1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), vec![0]);
        assert!(k[0] == vec![1, -1] || k[0] == vec![-1, 1]);
    }

    #[test]
    fn solve_with_gcd_constraint() {
        let a = m(&[&[4, 6]]);
        assert!(solve_integer(&a, &[3]).is_none());
        let x = solve_integer(&a, &[2]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![2]);
    }

    #[test]
    fn determinant_bareiss() {
        assert_eq!(m(&[&[2, 4], &[6, 8]]).determinant(), -8);
        assert_eq!(m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant(), -1);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), 0);
    }
}
