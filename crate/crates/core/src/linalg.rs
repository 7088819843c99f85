//! Exact linear algebra over `Q`, and integer solving of rational systems.
//!
//! Matrices are dense row lists; they are small enough at the sizes the
//! searches use.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::abelian::matrix::{hermite_normal_form, solve_integer, Echelon, Matrix};

pub(crate) type Q = BigRational;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let k = rows[i][c].clone();
            let (head, tail) = rows.split_at_mut(r.max(i));
            let (src, dst) = if i < r {
                (&tail[0], &mut head[i])
            } else {
                (&head[r], &mut tail[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d -= &k * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `a x = b` (free variables set to zero).
pub(crate) fn solve_rational(a: &[Vec<Q>], ncols: usize, b: &[Q]) -> Option<Vec<Q>> {
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    Some(x)
}

/// A basis of `{x : a x = 0}`.
pub(crate) fn nullspace_rational(a: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub(crate) fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from(d.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn integer_row(row: &[Q], rhs: &Q) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(row.iter().chain(core::iter::once(rhs)));
    let dq = Q::from(d);
    let r = row.iter().map(|x| (x * &dq).to_integer()).collect();
    (r, (rhs * &dq).to_integer())
}

/// An integer solution of the rational system `a x = b`.
///
/// Rows are first cleared of denominators; rows that are rationally
/// dependent on earlier ones are kept, since integrality can depend on them.
pub(crate) fn solve_integral(a: &[Vec<Q>], ncols: usize, b: &[Q]) -> Option<Vec<BigInt>> {
    // A rational solution is necessary; checking it first is much cheaper.
    solve_rational(a, ncols, b)?;
    let (rows, rhs): (Vec<Vec<BigInt>>, Vec<BigInt>) =
        a.iter().zip(b).map(|(r, bi)| integer_row(r, bi)).unzip();
    let m = Matrix::from_rows(rows, ncols);
    solve_integer(&m, &rhs)
}

/// The `Q`-span of a set of row vectors, kept in reduced echelon form with
/// each basis row's expression in the original generators alongside.
pub(crate) struct RationalSpan {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl RationalSpan {
    pub(crate) fn new(generators: Vec<Vec<Q>>, ncols: usize) -> Self {
        let m = generators.len();
        let mut rows: Vec<Vec<Q>> = generators
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.resize(ncols + m, Q::zero());
                r[ncols + i] = Q::one();
                r
            })
            .collect();
        let pivots = rref(&mut rows, ncols);
        rows.truncate(pivots.len());
        RationalSpan {
            rows,
            pivots,
            ncols,
        }
    }

    /// Coefficients on the generators summing to `v`.
    pub(crate) fn express(&self, v: &[Q]) -> Option<Vec<Q>> {
        debug_assert_eq!(v.len(), self.ncols);
        let m = self.rows.first().map_or(0, |r| r.len() - self.ncols);
        let mut rest = v.to_vec();
        let mut coeffs = vec![Q::zero(); m];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if rest[p].is_zero() {
                continue;
            }
            let k = rest[p].clone();
            for (x, y) in rest.iter_mut().zip(&row[..self.ncols]) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
            for (c, y) in coeffs.iter_mut().zip(&row[self.ncols..]) {
                if !y.is_zero() {
                    *c += &k * y;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, v: &[Q]) -> bool {
        self.express(v).is_some()
    }
}

/// The `Z`-span of rational row vectors, as a Hermite basis after scaling
/// every coordinate by a common denominator.
pub(crate) struct IntegerSpan {
    echelon: Echelon<BigInt>,
    scale: BigInt,
}

impl IntegerSpan {
    pub(crate) fn new(generators: &[Vec<Q>], ncols: usize) -> Self {
        let scale = common_denominator(generators.iter().flatten());
        let sq = Q::from(scale.clone());
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|r| r.iter().map(|x| (x * &sq).to_integer()).collect())
            .collect();
        let echelon = hermite_normal_form(&Matrix::from_rows(rows, ncols));
        IntegerSpan { echelon, scale }
    }

    /// Integer coefficients on the generators summing to `v`.
    pub(crate) fn express(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        let sq = Q::from(self.scale.clone());
        let mut ints = Vec::with_capacity(v.len());
        for x in v {
            let y = x * &sq;
            if !y.is_integer() {
                return None;
            }
            ints.push(y.to_integer());
        }
        let c = self.echelon.row_coefficients(&ints)?;
        let t = &self.echelon.t;
        let mut out = vec![BigInt::zero(); t.cols()];
        for (r, cr) in c.iter().enumerate() {
            if cr.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += cr * &t[(r, j)];
            }
        }
        Some(out)
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, v: &[Q]) -> bool {
        self.express(v).is_some()
    }
}

pub(crate) fn is_base_unit_z(x: &Q) -> bool {
    x.is_integer() && x.abs().is_one()
}
