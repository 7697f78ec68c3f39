use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};


/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix over arbitrary-precision integers.
pub type IntMatrix = Matrix<BigInt>;
/// Matrix over arbitrary-precision rationals.
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        for c in columns {
            assert_eq!(c.len(), rows);
        }
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_row_vecs(cols: usize, rows: &[Vec<T>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols);
        }
        Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_vec(self.rows + other.rows, self.cols, data)
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

/// Ring operations shared by the integer and rational carriers.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + for<'a> std::ops::Add<&'a Self, Output = Self>
    + for<'a> std::ops::Sub<&'a Self, Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
{
}

impl Scalar for BigInt {}
impl Scalar for BigRational {}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * &rhs[(k, j)];
                    let cell: &mut T = &mut out[(i, j)];
                    *cell = cell.clone() + &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + &rhs[(i, j)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - &rhs[(i, j)])
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c)
    }

    /// `self^t · form · self`
    pub fn congruence(&self, form: &Self) -> Self {
        self.transpose().mul(form).mul(self)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)].clone() + &self[(j, i)] == T::zero())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Block diagonal `[[self, 0], [0, other]]`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                T::zero()
            }
        })
    }

    /// Assembles `[[a, b], [c, d]]` from four blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.hstack(b).vstack(&c.hstack(d))
    }
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Matrix::from_vec(rows.len(), cols, data)
    }

    pub fn diag(entries: &[BigInt]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { BigInt::zero() })
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// gcd of all entries (zero for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl RatMatrix {
    /// Least common multiple of all denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    /// Row-reduces a copy and returns the rank.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let pivot = a[(rank, c)].clone();
            for i in rank + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &pivot;
                for j in c..a.cols {
                    let v = &a[(i, j)] - &(&f * &a[(rank, j)]);
                    a[(i, j)] = v;
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &pivot;
                for j in c..n {
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pivot = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] / &pivot;
                inv[(c, j)] = &inv[(c, j)] / &pivot;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a[(i, j)] = v;
                    let w = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                    inv[(i, j)] = w;
                }
            }
        }
        Some(inv)
    }

    /// Exact positive-definiteness test by symmetric elimination (all pivots
    /// of an LDL^t factorisation strictly positive).
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let pivot = a[(k, k)].clone();
            if !pivot.is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &a[(i, k)] / &pivot;
                for j in k + 1..n {
                    let v = &a[(i, j)] - &(&f * &a[(k, j)]);
                    a[(i, j)] = v;
                }
            }
        }
        true
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_rational_det() {
        let m = IntMatrix::from_rows_i64(&[&[2, -1, 0], &[3, 4, 5], &[1, 0, 7]]);
        assert_eq!(m.det(), BigInt::from(72));
        assert_eq!(m.to_rat().det(), BigRational::from_integer(72.into()));
    }

    #[test]
    fn det_with_zero_pivot() {
        let m = IntMatrix::from_rows_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IntMatrix::from_rows_i64(&[&[2, 1], &[1, 2]]).to_rat();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
    }

    #[test]
    fn positive_definite() {
        let b = IntMatrix::from_rows_i64(&[&[2, 1], &[1, 2]]).to_rat();
        assert!(b.is_positive_definite());
        let c = IntMatrix::from_rows_i64(&[&[1, 2], &[2, 1]]).to_rat();
        assert!(!c.is_positive_definite());
    }
}
