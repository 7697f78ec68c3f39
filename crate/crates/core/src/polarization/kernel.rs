use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{snf, IntMatrix};

/// Element of `Q/Z`, stored as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(BigRational);

impl QmodZ {
    pub fn new(x: BigRational) -> Self {
        QmodZ(&x - x.floor())
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        QmodZ::new(BigRational::new(p.into(), q.into()))
    }

    pub fn zero() -> Self {
        QmodZ(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Additive order: the reduced denominator.
    pub fn order(&self) -> BigInt {
        self.0.denom().clone()
    }

    pub fn add(&self, o: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &o.0)
    }

    pub fn neg(&self) -> QmodZ {
        QmodZ::new(-self.0.clone())
    }

    pub fn times(&self, k: &BigInt) -> QmodZ {
        QmodZ::new(&self.0 * BigRational::from_integer(k.clone()))
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reduces a rational vector to its representative in `[0, 1)^n`.
pub fn reduce_mod_one(x: &[BigRational]) -> Vec<BigRational> {
    x.iter().map(|c| c - c.floor()).collect()
}

/// Additive order of a rational vector modulo `Z^n`.
pub fn vector_order(x: &[BigRational]) -> BigInt {
    x.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

/// The finite group `{x ∈ Q^n : M x ∈ Z^n} / Z^n` of a nondegenerate
/// alternating form, with the pairing `(x, y) ↦ x^t M y mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSymplecticGroup {
    form: IntMatrix,
    generators: Vec<Vec<BigRational>>,
    orders: Vec<BigInt>,
}

impl FiniteSymplecticGroup {
    /// From the Smith form `U M V = D`: `M^{-1} Z^n = V D^{-1} Z^n`, so the
    /// columns of `V` divided by the nontrivial `d_i` generate.
    pub fn of_form(form: &IntMatrix) -> Result<Self> {
        if !form.is_antisymmetric() {
            return Err(Error::NotAlternating);
        }
        let s = snf(form);
        let diag = s.diagonal();
        if diag.len() < form.rows() || diag.iter().any(Zero::is_zero) {
            return Err(Error::Degenerate);
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let col: Vec<BigRational> = s
                .v
                .column(i)
                .into_iter()
                .map(|x| BigRational::new(x, d.clone()))
                .collect();
            generators.push(reduce_mod_one(&col));
            orders.push(d.clone());
        }
        Ok(FiniteSymplecticGroup { form: form.clone(), generators, orders })
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rows()
    }

    /// Independent generators; the group is their direct sum.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// Invariant factors of the abelian group (each type divisor twice).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.orders.clone()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.rank()
            && self
                .form
                .to_rat()
                .mul_vec(x)
                .iter()
                .all(|c| c.is_integer())
    }

    /// Weil pairing `x^t M y mod 1`.
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> Result<QmodZ> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::NotMember);
        }
        Ok(raw_pairing(&self.form, x, y))
    }

    /// All elements as canonical representatives, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<BigRational>> {
        let n = self.rank();
        let mut out: BTreeSet<Vec<BigRational>> = BTreeSet::new();
        out.insert(vec![BigRational::zero(); n]);
        for (g, d) in self.generators.iter().zip(&self.orders) {
            let d = d.to_usize().expect("group order fits in memory");
            let current: Vec<_> = out.iter().cloned().collect();
            for x in current {
                let mut y = x;
                for _ in 1..d {
                    y = reduce_mod_one(&add_vec(&y, g));
                    out.insert(y.clone());
                }
            }
        }
        out.into_iter().collect()
    }

    /// Checks nondegeneracy by exhibiting, for every generator, a generator
    /// pairing with it to a value of the same order.
    pub fn is_nondegenerate(&self) -> bool {
        // The pairing matrix on generators mod 1 must be invertible over the
        // group; equivalently each generator's character has full order.
        self.generators.iter().zip(&self.orders).all(|(x, d)| {
            let mut image = BigInt::one();
            for y in &self.generators {
                image = image.lcm(&raw_pairing(&self.form, x, y).order());
            }
            image == *d
        })
    }
}

pub(crate) fn raw_pairing(form: &IntMatrix, x: &[BigRational], y: &[BigRational]) -> QmodZ {
    let my = form.to_rat().mul_vec(y);
    let v = x
        .iter()
        .zip(&my)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
    QmodZ::new(v)
}

pub(crate) fn add_vec(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(crate) fn scale_vec(x: &[BigRational], k: &BigInt) -> Vec<BigRational> {
    let k = BigRational::from_integer(k.clone());
    x.iter().map(|a| a * &k).collect()
}

pub(crate) fn is_integral_vec(x: &[BigRational]) -> bool {
    x.iter().all(|c| c.is_integer())
}

/// `x / den` as a rational vector.
pub fn rat_vec(x: &[i64], den: i64) -> Vec<BigRational> {
    x.iter()
        .map(|&a| BigRational::new(a.into(), den.into()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::{kernel_group, scale, theta_g, xi_g};

    #[test]
    fn qmodz_wraps() {
        let a = QmodZ::from_ratio(3, 4);
        let b = QmodZ::from_ratio(1, 2);
        assert_eq!(a.add(&b), QmodZ::from_ratio(1, 4));
        assert_eq!(QmodZ::from_ratio(-1, 3), QmodZ::from_ratio(2, 3));
        assert_eq!(a.neg(), QmodZ::from_ratio(1, 4));
    }

    #[test]
    fn principal_kernel_is_trivial() {
        let k = kernel_group(&theta_g(2)).unwrap();
        assert!(k.is_trivial());
        assert_eq!(k.elements().len(), 1);
    }

    #[test]
    fn xi_one_pairing() {
        let k = kernel_group(&xi_g(1)).unwrap();
        assert_eq!(k.order(), BigInt::from(4));
        let x = rat_vec(&[1, 0], 2);
        let y = rat_vec(&[0, 1], 2);
        assert_eq!(k.pairing(&x, &x).unwrap(), QmodZ::zero());
        assert_eq!(k.pairing(&x, &y).unwrap(), QmodZ::from_ratio(1, 2));
        let z = rat_vec(&[1, 0], 3);
        assert_eq!(k.pairing(&z, &y), Err(Error::NotMember));
    }

    #[test]
    fn xi_two_pairing_order_three() {
        let k = kernel_group(&xi_g(2)).unwrap();
        assert_eq!(k.orders(), &[BigInt::from(3), BigInt::from(3)]);
        let v = k.pairing(&k.generators()[0], &k.generators()[1]).unwrap();
        assert!(v == QmodZ::from_ratio(1, 3) || v == QmodZ::from_ratio(2, 3));
        assert!(k.is_nondegenerate());
    }

    #[test]
    fn scaled_theta_is_full_torsion() {
        let k = kernel_group(&scale(&theta_g(2), 3).unwrap()).unwrap();
        assert_eq!(k.order(), BigInt::from(81));
        for e in 0..4 {
            let mut x = vec![0i64; 4];
            x[e] = 1;
            assert!(k.contains(&rat_vec(&x, 3)));
        }
    }
}
