//! Dense exact linear algebra over num-traits scalars.
//!
//! The kernels here are deliberately small and allocation-happy: every matrix
//! in this workbench has rank at most a few dozen, and exactness matters far
//! more than speed. Ring-level operations (products, transposes) are generic
//! over [`Scalar`]; anything that divides (reduced echelon form, nullspace,
//! signature of a symmetric form) additionally requires the [`FieldScalar`]
//! marker, which is implemented for `BigRational` only.

use std::fmt;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Exact ring scalar: enough structure for matrix products.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Signed + AddAssign + SubAssign + MulAssign
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + Signed + AddAssign + SubAssign + MulAssign
{
}

/// Marker for scalars whose `Div` is exact field division.
///
/// `BigInt` is *not* a `FieldScalar`: its `Div` truncates, which would turn
/// elimination into silent nonsense.
pub trait FieldScalar: Scalar {}

impl FieldScalar for BigRational {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self[(r, c)] != self[(c, r)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - other[(r, c)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a.clone() * other[(k, c)].clone();
                    out[(r, c)] += term;
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        acc += self[(r, c)].clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |r, c| f(&self[(r, c)]))
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Promote an integer matrix to rationals.
pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Basis of the right nullspace `{x : Mx = 0}`, as rational column vectors.
///
/// Gauss–Jordan over the field; the basis vectors correspond to the free
/// columns in reduced echelon form, so the result is deterministic.
pub fn nullspace<T: FieldScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        // find a pivot in column c at or below row r
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = T::one() / a[(r, c)].clone();
        for j in 0..cols {
            let v = a[(r, j)].clone() * inv.clone();
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in 0..cols {
                    let t = f.clone() * a[(r, j)].clone();
                    a[(i, j)] -= t;
                }
            }
        }
        pivot_col_of_row.push(c);
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            let coeff = a[(row, free)].clone();
            if !coeff.is_zero() {
                v[pc] = -coeff;
            }
        }
        basis.push(v);
    }
    basis
}

/// Inertia of a symmetric form: `(positive, negative, zero)` eigenvalue
/// counts, computed exactly by congruence diagonalization.
///
/// Symmetric pivoting on nonzero diagonal entries; when every remaining
/// diagonal entry vanishes but some off-diagonal entry does not, that entry
/// spans a hyperbolic plane contributing `(+1, -1)`. Whatever remains is the
/// zero space.
pub fn inertia<T: FieldScalar>(form: &Matrix<T>) -> (usize, usize, usize) {
    assert!(form.is_symmetric(), "inertia requires a symmetric matrix");
    let mut f = form.clone();
    let mut live: Vec<usize> = (0..f.rows()).collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
    while !live.is_empty() {
        if let Some(&r) = live.iter().find(|&&i| !f[(i, i)].is_zero()) {
            let pivot = f[(r, r)].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            live.retain(|&i| i != r);
            // congruence-eliminate row/column r from the remaining block
            let coeffs: Vec<(usize, T)> =
                live.iter().map(|&s| (s, f[(s, r)].clone() / pivot.clone())).collect();
            for (s, cs) in &coeffs {
                for (t, ct) in &coeffs {
                    let adj = cs.clone() * ct.clone() * pivot.clone();
                    let v = f[(*s, *t)].clone() - adj;
                    f[(*s, *t)] = v;
                }
            }
        } else {
            // all diagonal entries zero: split a hyperbolic pair if any
            // off-diagonal entry survives
            let mut hyper = None;
            'scan: for (a, &i) in live.iter().enumerate() {
                for &j in live.iter().skip(a + 1) {
                    if !f[(i, j)].is_zero() {
                        hyper = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = hyper else {
                zero += live.len();
                break;
            };
            pos += 1;
            neg += 1;
            let a = f[(i, j)].clone();
            live.retain(|&s| s != i && s != j);
            // e_s ← e_s - (f[s][j]/a) e_i - (f[s][i]/a) e_j clears both couplings
            let adj: Vec<(usize, T, T)> = live
                .iter()
                .map(|&s| {
                    let alpha = -(f[(s, j)].clone() / a.clone());
                    let beta = -(f[(s, i)].clone() / a.clone());
                    (s, alpha, beta)
                })
                .collect();
            for (s, als, bes) in &adj {
                for (t, alt, bet) in &adj {
                    let mut v = f[(*s, *t)].clone();
                    v = v + als.clone() * f[(i, *t)].clone();
                    v = v + bes.clone() * f[(j, *t)].clone();
                    v = v + alt.clone() * f[(*s, i)].clone();
                    v = v + bet.clone() * f[(*s, j)].clone();
                    let cross = (als.clone() * bet.clone() + bes.clone() * alt.clone()) * a.clone();
                    f[(*s, *t)] = v + cross;
                }
            }
        }
    }
    (pos, neg, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{FromPrimitive, Zero};

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn rmat(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn identity_product() {
        let m = rmat(&[&[1, 2], &[3, 4]]);
        let id = Matrix::<BigRational>::identity(2);
        assert_eq!(m.mul(&id), m);
        assert_eq!(id.mul(&m), m);
    }

    #[test]
    fn nullspace_of_rank_one() {
        // x + y + z = 0 has a two-dimensional solution space
        let m = rmat(&[&[1, 1, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn nullspace_of_invertible_is_empty() {
        let m = rmat(&[&[2, 1], &[1, 1]]);
        assert!(nullspace(&m).is_empty());
    }

    #[test]
    fn inertia_diagonal() {
        assert_eq!(inertia(&rmat(&[&[2, 0, 0], &[0, -3, 0], &[0, 0, 0]])), (1, 1, 1));
        assert_eq!(inertia(&rmat(&[&[1, 0], &[0, 1]])), (2, 0, 0));
    }

    #[test]
    fn inertia_hyperbolic_block() {
        assert_eq!(inertia(&rmat(&[&[0, 1], &[1, 0]])), (1, 1, 0));
    }

    #[test]
    fn inertia_dense() {
        // congruent to diag(1, -1): det = -1, trace mixed
        let m = rmat(&[&[1, 2], &[2, 1]]);
        assert_eq!(inertia(&m), (1, 1, 0));
    }
}
