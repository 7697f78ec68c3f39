//! Products `E^g` of an elliptic curve with endomorphism order `Z`, `Z[i]`
//! or `Z[ω]`, and the passage from analytic (g×g over the order) to
//! rational (2g×2g over `Z`) representations.
//!
//! The lattice basis is always `(e_1..e_g, ωe_1..ωe_g)`; over `Z` the second
//! block is `τe_1..τe_g` for a symbolic generic modulus `τ`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Endomorphism order of the elliptic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadOrder {
    RationalIntegers,
    Gaussian,
    Eisenstein,
}

impl QuadOrder {
    /// `(u, v)` with `ω² = uω + v`, or `None` for `Z`.
    pub fn relation(self) -> Option<(i64, i64)> {
        match self {
            QuadOrder::RationalIntegers => None,
            QuadOrder::Gaussian => Some((0, -1)),
            QuadOrder::Eisenstein => Some((-1, -1)),
        }
    }

    fn uv(self) -> (i64, i64) {
        self.relation().unwrap_or((0, 0))
    }

    pub fn is_cm(self) -> bool {
        self.relation().is_some()
    }

    /// Real part of the generator under the embedding with positive
    /// imaginary part (`i`, `e^{2πi/3}`). The generic modulus over `Z` is
    /// treated as the formal value `τ = i` for positivity tests only.
    pub fn generator_real_part(self) -> BigRational {
        BigRational::new(self.uv().0.into(), 2.into())
    }

    pub fn elem(self, a: i64, b: i64) -> Result<OrderElem> {
        if !self.is_cm() && b != 0 {
            return Err(Error::OrderMismatch(format!("{a}+{b}ω over Z")));
        }
        Ok(OrderElem { a, b })
    }

    pub fn generator(self) -> Result<OrderElem> {
        self.elem(0, 1)
    }

    pub fn mul(self, x: OrderElem, y: OrderElem) -> OrderElem {
        let (u, v) = self.uv();
        OrderElem {
            a: x.a * y.a + x.b * y.b * v,
            b: x.a * y.b + x.b * y.a + x.b * y.b * u,
        }
    }

    /// The nontrivial automorphism `ω ↦ ω̄ = u − ω` (identity over `Z`).
    pub fn conj(self, x: OrderElem) -> OrderElem {
        let (u, _) = self.uv();
        OrderElem { a: x.a + x.b * u, b: -x.b }
    }

    /// Field norm `x·x̄`.
    pub fn norm(self, x: OrderElem) -> i64 {
        let (u, v) = self.uv();
        x.a * x.a + x.a * x.b * u - x.b * x.b * v
    }

    pub fn units(self) -> Vec<OrderElem> {
        let raw: &[(i64, i64)] = match self {
            QuadOrder::RationalIntegers => &[(1, 0), (-1, 0)],
            QuadOrder::Gaussian => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
            QuadOrder::Eisenstein => &[(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)],
        };
        raw.iter().map(|&(a, b)| OrderElem { a, b }).collect()
    }

    /// Multiplicative order of a unit, if finite.
    pub fn unit_order(self, x: OrderElem) -> Option<u32> {
        let mut p = x;
        for k in 1..=6 {
            if p == OrderElem::ONE {
                return Some(k);
            }
            p = self.mul(p, x);
        }
        None
    }
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadOrder::RationalIntegers => "Z",
            QuadOrder::Gaussian => "Z[i]",
            QuadOrder::Eisenstein => "Z[w]",
        })
    }
}

/// Choice of generator for a cyclic automorphism group of order 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SixthRoot {
    /// `−ω`
    #[default]
    MinusOmega,
    /// `−ω̄ = 1 + ω`
    MinusOmegaBar,
}

/// The order hosting a cyclic automorphism group of order `m` and a
/// generator of that group.
pub fn primitive_unit(m: u32, sixth: SixthRoot) -> Result<(QuadOrder, OrderElem)> {
    let o = |a, b| OrderElem { a, b };
    Ok(match m {
        2 => (QuadOrder::RationalIntegers, o(-1, 0)),
        3 => (QuadOrder::Eisenstein, o(0, 1)),
        4 => (QuadOrder::Gaussian, o(0, 1)),
        6 => match sixth {
            SixthRoot::MinusOmega => (QuadOrder::Eisenstein, o(0, -1)),
            SixthRoot::MinusOmegaBar => (QuadOrder::Eisenstein, o(1, 1)),
        },
        _ => return Err(Error::BadOrder(m)),
    })
}

/// Element `a + bω` of a quadratic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct OrderElem {
    pub a: i64,
    pub b: i64,
}

impl OrderElem {
    pub const ZERO: OrderElem = OrderElem { a: 0, b: 0 };
    pub const ONE: OrderElem = OrderElem { a: 1, b: 0 };

    pub fn int(a: i64) -> Self {
        OrderElem { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }
}

impl Add for OrderElem {
    type Output = OrderElem;
    fn add(self, o: OrderElem) -> OrderElem {
        OrderElem { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for OrderElem {
    type Output = OrderElem;
    fn sub(self, o: OrderElem) -> OrderElem {
        OrderElem { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for OrderElem {
    type Output = OrderElem;
    fn neg(self) -> OrderElem {
        OrderElem { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for OrderElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.b {
            1 => "w".to_string(),
            -1 => "-w".to_string(),
            b => format!("{b}w"),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, _) => write!(f, "{w}"),
            (a, b) if b < 0 => write!(f, "{a}{w}"),
            (a, _) => write!(f, "{a}+{w}"),
        }
    }
}

/// Square matrix over a quadratic order: an analytic representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderMatrix {
    order: QuadOrder,
    g: usize,
    entries: Vec<OrderElem>,
}

impl OrderMatrix {
    pub fn new(order: QuadOrder, g: usize, entries: Vec<OrderElem>) -> Result<Self> {
        if entries.len() != g * g {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {g}x{g} matrix",
                entries.len()
            )));
        }
        if !order.is_cm() {
            if let Some(x) = entries.iter().find(|x| x.b != 0) {
                return Err(Error::OrderMismatch(format!("{x} over Z")));
            }
        }
        Ok(OrderMatrix { order, g, entries })
    }

    /// Builds from `(a, b)` pairs in row-major order.
    pub fn from_pairs(order: QuadOrder, g: usize, pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(order, g, pairs.iter().map(|&(a, b)| OrderElem { a, b }).collect())
    }

    pub fn from_ints(order: QuadOrder, g: usize, ints: &[i64]) -> Result<Self> {
        Self::new(order, g, ints.iter().map(|&a| OrderElem::int(a)).collect())
    }

    pub fn identity(order: QuadOrder, g: usize) -> Self {
        Self::scalar(order, g, OrderElem::ONE)
    }

    pub fn scalar(order: QuadOrder, g: usize, x: OrderElem) -> Self {
        let entries = (0..g * g)
            .map(|k| if k / g == k % g { x } else { OrderElem::ZERO })
            .collect();
        OrderMatrix { order, g, entries }
    }

    /// Diagonal matrix with `x` in slot `i` and 1 elsewhere.
    pub fn coordinate_unit(order: QuadOrder, g: usize, i: usize, x: OrderElem) -> Self {
        let mut m = Self::identity(order, g);
        m.entries[i * g + i] = x;
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(order: QuadOrder, perm: &[usize]) -> Self {
        let g = perm.len();
        let mut entries = vec![OrderElem::ZERO; g * g];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * g + j] = OrderElem::ONE;
        }
        OrderMatrix { order, g, entries }
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.g
    }

    pub fn entries(&self) -> &[OrderElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> OrderElem {
        self.entries[i * self.g + j]
    }

    pub fn mul(&self, rhs: &OrderMatrix) -> Result<OrderMatrix> {
        self.check_compatible(rhs)?;
        let g = self.g;
        let mut entries = vec![OrderElem::ZERO; g * g];
        for i in 0..g {
            for k in 0..g {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..g {
                    entries[i * g + j] = entries[i * g + j] + self.order.mul(a, rhs.get(k, j));
                }
            }
        }
        Ok(OrderMatrix { order: self.order, g, entries })
    }

    fn check_compatible(&self, rhs: &OrderMatrix) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(format!("{} vs {}", self.order, rhs.order)));
        }
        if self.g != rhs.g {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.g, rhs.g)));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.order, self.g)
    }

    /// Entrywise application of the nontrivial order automorphism.
    pub fn conj(&self) -> OrderMatrix {
        OrderMatrix {
            order: self.order,
            g: self.g,
            entries: self.entries.iter().map(|&x| self.order.conj(x)).collect(),
        }
    }

    /// The 2g×2g integer matrix of this endomorphism on the lattice basis
    /// `(e, ωe)`. An entry `a + bω` contributes the block `[[a, bv], [b, a+bu]]`.
    pub fn rational_rep(&self) -> IntMatrix {
        let g = self.g;
        let (u, v) = self.order.uv();
        IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
            let x = self.get(r % g, c % g);
            let val = match (r < g, c < g) {
                (true, true) => x.a,
                (true, false) => x.b * v,
                (false, true) => x.b,
                (false, false) => x.a + x.b * u,
            };
            BigInt::from(val)
        })
    }

    /// Rank of `self − I` over the fraction field of the order, i.e. the
    /// complex codimension of the fixed space of the analytic representation.
    pub fn analytic_rank_minus_id(&self) -> usize {
        let mut m = self.clone();
        for i in 0..self.g {
            m.entries[i * self.g + i] = m.entries[i * self.g + i] - OrderElem::ONE;
        }
        m.rank_over_fraction_field()
    }

    pub fn rank_over_fraction_field(&self) -> usize {
        let g = self.g;
        let mut a: Vec<FieldElem> = self
            .entries
            .iter()
            .map(|x| FieldElem::from_elem(*x))
            .collect();
        let order = self.order;
        let mut rank = 0;
        for c in 0..g {
            let Some(p) = (rank..g).find(|&i| !a[i * g + c].is_zero()) else {
                continue;
            };
            for j in 0..g {
                a.swap(rank * g + j, p * g + j);
            }
            let inv = a[rank * g + c].inverse(order);
            for i in rank + 1..g {
                if a[i * g + c].is_zero() {
                    continue;
                }
                let f = a[i * g + c].mul(&inv, order);
                for j in c..g {
                    let t = f.mul(&a[rank * g + j], order);
                    a[i * g + j] = a[i * g + j].sub(&t);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant over the order (Laplace expansion; g is small).
    pub fn det(&self) -> OrderElem {
        fn rec(m: &OrderMatrix, rows: &[usize], cols: &[usize]) -> OrderElem {
            if rows.is_empty() {
                return OrderElem::ONE;
            }
            let r = rows[0];
            let mut total = OrderElem::ZERO;
            for (k, &c) in cols.iter().enumerate() {
                let x = m.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&y| y != c).collect();
                let t = m.order.mul(x, rec(m, &rows[1..], &rest));
                total = if k % 2 == 0 { total + t } else { total - t };
            }
            total
        }
        let idx: Vec<usize> = (0..self.g).collect();
        rec(self, &idx, &idx)
    }

    /// Invertible over the order iff the determinant is a unit.
    pub fn is_invertible(&self) -> bool {
        let d = self.det();
        match self.order {
            QuadOrder::RationalIntegers => d.a.abs() == 1,
            o => o.norm(d) == 1,
        }
    }

    /// `(a, b)` pairs in row-major order.
    pub fn to_pairs(&self) -> Vec<[i64; 2]> {
        self.entries.iter().map(|x| [x.a, x.b]).collect()
    }
}

impl fmt::Display for OrderMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.g {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.g {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Element `p + qω` of the fraction field.
#[derive(Clone, Debug, PartialEq)]
struct FieldElem {
    p: BigRational,
    q: BigRational,
}

impl FieldElem {
    fn from_elem(x: OrderElem) -> Self {
        FieldElem {
            p: BigRational::from_integer(x.a.into()),
            q: BigRational::from_integer(x.b.into()),
        }
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn sub(&self, o: &FieldElem) -> FieldElem {
        FieldElem { p: &self.p - &o.p, q: &self.q - &o.q }
    }

    fn mul(&self, o: &FieldElem, order: QuadOrder) -> FieldElem {
        let (u, v) = order.uv();
        let (u, v) = (BigRational::from_integer(u.into()), BigRational::from_integer(v.into()));
        let bd = &self.q * &o.q;
        FieldElem {
            p: &self.p * &o.p + &bd * &v,
            q: &self.p * &o.q + &self.q * &o.p + &bd * &u,
        }
    }

    /// `x̄ / N(x)`; over `Z` the `q` part is always zero.
    fn inverse(&self, order: QuadOrder) -> FieldElem {
        let (u, v) = order.uv();
        let (u, v) = (BigRational::from_integer(u.into()), BigRational::from_integer(v.into()));
        let conj = FieldElem { p: &self.p + &self.q * &u, q: -self.q.clone() };
        let norm = &self.p * &self.p + &self.p * &self.q * &u - &self.q * &self.q * &v;
        debug_assert!(!norm.is_zero());
        FieldElem { p: conj.p / &norm, q: conj.q / &norm }
    }
}

/// `E^g` with the given endomorphism order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Torus {
    pub order: QuadOrder,
    pub g: usize,
}

impl Torus {
    pub fn new(order: QuadOrder, g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::DimensionMismatch("torus dimension must be at least 1".into()));
        }
        Ok(Torus { order, g })
    }

    pub fn lattice_rank(&self) -> usize {
        2 * self.g
    }

    /// Lattice matrix of the complex structure used for stability tests:
    /// multiplication by `ω` for CM orders, the formal `τ ↦ i` swap
    /// `[[0, −I], [I, 0]]` over `Z`.
    pub fn complex_structure(&self) -> IntMatrix {
        match self.order {
            QuadOrder::RationalIntegers => {
                let i = IntMatrix::identity(self.g);
                let z = IntMatrix::zeros(self.g, self.g);
                IntMatrix::from_blocks(&z, &i.neg(), &i, &z)
            }
            o => OrderMatrix::scalar(o, self.g, OrderElem { a: 0, b: 1 }).rational_rep(),
        }
    }

    /// Lattice matrix of the antilinear map induced by `ω ↦ ω̄`.
    pub fn conjugation_matrix(&self) -> IntMatrix {
        let (u, _) = self.order.uv();
        let i = IntMatrix::identity(self.g);
        let z = IntMatrix::zeros(self.g, self.g);
        IntMatrix::from_blocks(&i, &i.scale(&BigInt::from(u)), &z, &i.neg())
    }

    /// Embeds a vector of `E^{g}` given as `(e-part, ω-part)` into this
    /// torus at coordinate offset `offset`.
    pub fn embed_vector<T: Clone + Zero>(&self, offset: usize, sub_g: usize, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), 2 * sub_g);
        assert!(offset + sub_g <= self.g);
        let mut out = vec![T::zero(); 2 * self.g];
        for i in 0..sub_g {
            out[offset + i] = v[i].clone();
            out[self.g + offset + i] = v[sub_g + i].clone();
        }
        out
    }
}

/// `true` iff `m` commutes with the complex structure of `torus`.
pub fn is_complex_linear(torus: &Torus, m: &IntMatrix) -> bool {
    let j = torus.complex_structure();
    m.mul(&j) == j.mul(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rep() {
        for o in [QuadOrder::RationalIntegers, QuadOrder::Gaussian, QuadOrder::Eisenstein] {
            assert_eq!(OrderMatrix::identity(o, 3).rational_rep(), IntMatrix::identity(6));
        }
    }

    #[test]
    fn gaussian_i() {
        let m = OrderMatrix::from_pairs(QuadOrder::Gaussian, 1, &[(0, 1)]).unwrap();
        assert_eq!(m.rational_rep(), IntMatrix::from_rows_i64(&[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn eisenstein_omega() {
        // ω·1 = ω, ω·ω = −1 − ω.
        let m = OrderMatrix::from_pairs(QuadOrder::Eisenstein, 1, &[(0, 1)]).unwrap();
        assert_eq!(m.rational_rep(), IntMatrix::from_rows_i64(&[&[0, -1], &[1, -1]]));
        let j = m.rational_rep();
        let (u, v) = QuadOrder::Eisenstein.relation().unwrap();
        let rhs = j.scale(&u.into()).add(&IntMatrix::identity(2).scale(&v.into()));
        assert_eq!(j.mul(&j), rhs);
    }

    #[test]
    fn order_mismatch() {
        let e = OrderMatrix::from_pairs(QuadOrder::RationalIntegers, 1, &[(0, 1)]);
        assert!(matches!(e, Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn rank_minus_identity() {
        let o = QuadOrder::Gaussian;
        assert_eq!(OrderMatrix::identity(o, 2).analytic_rank_minus_id(), 0);
        let swap = OrderMatrix::permutation(QuadOrder::RationalIntegers, &[1, 0]);
        assert_eq!(swap.analytic_rank_minus_id(), 1);
        // det(m − I) = (−i−1)(i−1) = 2, nonzero.
        let m = OrderMatrix::from_pairs(o, 2, &[(0, -1), (-1, 1), (0, 0), (0, 1)]).unwrap();
        assert_eq!(m.analytic_rank_minus_id(), 2);
    }

    #[test]
    fn units_and_orders() {
        for m in [2, 3, 4, 6] {
            let (o, x) = primitive_unit(m, SixthRoot::default()).unwrap();
            assert_eq!(o.unit_order(x), Some(m));
        }
        let (o, x) = primitive_unit(6, SixthRoot::MinusOmegaBar).unwrap();
        assert_eq!(o.unit_order(x), Some(6));
        assert_eq!(primitive_unit(5, SixthRoot::default()), Err(Error::BadOrder(5)));
    }

    #[test]
    fn invertibility() {
        let o = QuadOrder::Gaussian;
        let m = OrderMatrix::from_pairs(o, 2, &[(-1, 0), (1, 1), (0, 0), (1, 0)]).unwrap();
        assert!(m.is_invertible());
        let n = OrderMatrix::from_pairs(o, 1, &[(1, 1)]).unwrap();
        assert!(!n.is_invertible());
    }
}
