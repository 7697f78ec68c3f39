use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·M·V = D` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `D`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(dst, j)] - q * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, dst)] - q * &m[(i, src)];
        m[(i, dst)] = v;
    }
}

/// Smallest nonzero |entry| in the trailing block starting at `(t, t)`,
/// ties broken by row-major position.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Computes the Smith normal form of an arbitrary rectangular integer matrix.
///
/// Pivots are chosen as the smallest nonzero absolute value of the active
/// block, so the transforms are deterministic. The diagonal is nonnegative
/// with `d_1 | d_2 | ...` and zeros last.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                return SmithForm { u, d: a, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Pivot must divide the rest of the active block.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            for j in 0..cols {
                a[(t, j)] = -a[(t, j)].clone();
            }
            for j in 0..rows {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    SmithForm { u, d: a, v }
}

/// Invariant factors of `m` (nonzero diagonal of its Smith form).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    snf(m).diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}
