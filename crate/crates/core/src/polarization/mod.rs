//! Polarizations as integral alternating forms on the torus lattice.
//!
//! A form `M` is the imaginary part of the first Chern class, written on
//! the basis `(e, ωe)`. It is a polarization when it is nondegenerate,
//! compatible with the complex structure and positive.

pub(crate) mod kernel;
mod sublattice;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::linalg::{pfaffian, snf, IntMatrix, RatMatrix};
use crate::tori::{OrderElem, OrderMatrix, QuadOrder, Torus};

pub use kernel::{rat_vec, reduce_mod_one, vector_order, FiniteSymplecticGroup, QmodZ};
pub use sublattice::{complement, o_basis, prop39_scan, restrict, ScanEntry, ScanReport};

/// A torus together with a polarization form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedTorus {
    torus: Torus,
    form: IntMatrix,
}

impl PolarizedTorus {
    /// Validates alternation, nondegeneracy, compatibility with the complex
    /// structure and positivity.
    pub fn new(torus: Torus, form: IntMatrix) -> Result<Self> {
        let n = torus.lattice_rank();
        if form.rows() != n || form.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "form is {}x{}, lattice rank is {n}",
                form.rows(),
                form.cols()
            )));
        }
        if !form.is_antisymmetric() {
            return Err(Error::NotAlternating);
        }
        if form.det().is_zero() {
            return Err(Error::Degenerate);
        }
        if !is_compatible(&torus, &form) {
            return Err(Error::InvalidPolarization(
                "form is not compatible with the complex structure".into(),
            ));
        }
        let p = PolarizedTorus { torus, form };
        if !p.positivity_matrix().is_positive_definite() {
            return Err(Error::InvalidPolarization("form is not positive".into()));
        }
        Ok(p)
    }

    /// `[[0, B], [−B, 0]]` over the generic order.
    pub fn from_block(b: &IntMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::DimensionMismatch("block must be square".into()));
        }
        let g = b.rows();
        let z = IntMatrix::zeros(g, g);
        let form = IntMatrix::from_blocks(&z, b, &b.transpose().neg(), &z);
        PolarizedTorus::new(Torus::new(QuadOrder::RationalIntegers, g)?, form)
    }

    /// Alternating form `E(x, y) = Im(x* H y) / Im(ω)` of a hermitian
    /// matrix `H` over the order (over `Z`, `H` is real symmetric and `ω`
    /// stands for the modulus `τ`).
    pub fn from_hermitian(h: &OrderMatrix) -> Result<Self> {
        let order = h.order();
        let g = h.dim();
        for i in 0..g {
            for j in 0..g {
                if h.get(j, i) != order.conj(h.get(i, j)) {
                    return Err(Error::InvalidPolarization("matrix is not hermitian".into()));
                }
            }
        }
        // Multiply in Z[i] over the generic order so that τ behaves like i.
        let arith = if order.is_cm() { order } else { QuadOrder::Gaussian };
        let omega = OrderElem { a: 0, b: 1 };
        let pow = |s: usize| if s == 0 { OrderElem::ONE } else { omega };
        let form = IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
            let (s, j) = (r / g, r % g);
            let (t, k) = (c / g, c % g);
            let z = arith.mul(arith.mul(arith.conj(pow(s)), h.get(j, k)), pow(t));
            BigInt::from(z.b)
        });
        PolarizedTorus::new(Torus::new(order, g)?, form)
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn order(&self) -> QuadOrder {
        self.torus.order
    }

    pub fn dim(&self) -> usize {
        self.torus.g
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    /// `M·J − Re(ω)·M`: the symmetric form `x ↦ E(x, ix)` up to the positive
    /// factor `Im ω`.
    pub fn positivity_matrix(&self) -> RatMatrix {
        positivity_matrix(&self.torus, &self.form)
    }

    /// Upper-right block `B` for forms over the generic order.
    pub fn block(&self) -> Option<IntMatrix> {
        let g = self.dim();
        (self.order() == QuadOrder::RationalIntegers).then(|| self.form.submatrix(0, g, g, g))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "g": self.dim(),
            "form": json::int_matrix_numbers(&self.form),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidPolarization(format!("json: {what}"));
        let order: QuadOrder = serde_json::from_value(v["order"].clone()).map_err(|_| bad("order"))?;
        let g = v["g"].as_u64().ok_or_else(|| bad("g"))? as usize;
        let form = json::int_matrix_from(&v["form"]).ok_or_else(|| bad("form"))?;
        PolarizedTorus::new(Torus::new(order, g)?, form)
    }
}

pub(crate) fn positivity_matrix(torus: &Torus, form: &IntMatrix) -> RatMatrix {
    let m = form.to_rat();
    let j = torus.complex_structure().to_rat();
    m.mul(&j).sub(&m.scale(&torus.order.generator_real_part()))
}

/// Compatibility of an alternating form with the complex structure.
///
/// Over `Z[i]`, `Z[ω]`: `J^t M J = N(ω) M`. Over the generic order the form
/// must be `[[0, B], [−B^t, 0]]` with `B` symmetric.
pub fn is_compatible(torus: &Torus, form: &IntMatrix) -> bool {
    let g = torus.g;
    match torus.order.relation() {
        Some((_, v)) => {
            let j = torus.complex_structure();
            j.congruence(form) == form.scale(&BigInt::from(-v))
        }
        None => {
            form.submatrix(0, 0, g, g).is_zero()
                && form.submatrix(g, g, g, g).is_zero()
                && form.submatrix(0, g, g, g).is_symmetric()
        }
    }
}

/// The product polarization `Θ_g = Σ π_i^*[0]` on `E^g`: block `B = I`.
pub fn theta_g(g: usize) -> PolarizedTorus {
    assert!(g >= 1);
    PolarizedTorus::from_block(&IntMatrix::identity(g)).expect("identity block is a polarization")
}

/// `Ξ_g = Θ_g + ker(Σ)`: block `B = I + A` with `A` the all-ones matrix.
pub fn xi_g(g: usize) -> PolarizedTorus {
    assert!(g >= 1);
    let b = IntMatrix::from_fn(g, g, |i, j| if i == j { BigInt::from(2) } else { BigInt::one() });
    PolarizedTorus::from_block(&b).expect("I + A is positive definite")
}

/// Product polarization `Σ π_i^*[0]` on `E^g` for an arbitrary order.
pub fn theta_over(order: QuadOrder, g: usize) -> PolarizedTorus {
    PolarizedTorus::from_hermitian(&OrderMatrix::identity(order, g))
        .expect("identity hermitian form is a polarization")
}

/// Elementary divisors `(d_1 | … | d_g)` of a polarization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolarizationType(Vec<BigInt>);

impl PolarizationType {
    pub fn new(divisors: Vec<BigInt>) -> Self {
        PolarizationType(divisors)
    }

    pub fn from_u64(d: &[u64]) -> Self {
        PolarizationType(d.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_principal(&self) -> bool {
        self.0.iter().all(One::is_one)
    }

    pub fn product(&self) -> BigInt {
        self.0.iter().product()
    }

    /// Divisors different from one.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.0.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn to_u64(&self) -> Vec<u64> {
        self.0.iter().map(|d| u64::try_from(d).expect("divisor fits in u64")).collect()
    }
}

impl PartialEq<[u64]> for PolarizationType {
    fn eq(&self, other: &[u64]) -> bool {
        self.0.len() == other.len() && self.0.iter().zip(other).all(|(a, &b)| *a == BigInt::from(b))
    }
}

impl fmt::Display for PolarizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Type of any nondegenerate alternating integer matrix: its invariant
/// factors come in equal pairs and the type lists one of each pair.
pub fn alternating_type(form: &IntMatrix) -> Result<PolarizationType> {
    if !form.is_antisymmetric() {
        return Err(Error::NotAlternating);
    }
    let diag = snf(form).diagonal();
    if diag.iter().any(Zero::is_zero) || diag.len() % 2 == 1 {
        return Err(Error::Degenerate);
    }
    let mut out = Vec::with_capacity(diag.len() / 2);
    for pair in diag.chunks(2) {
        debug_assert_eq!(pair[0], pair[1]);
        out.push(pair[0].clone());
    }
    Ok(PolarizationType(out))
}

pub fn polarization_type(p: &PolarizedTorus) -> Result<PolarizationType> {
    alternating_type(&p.form)
}

/// The kernel group `K(Ξ)` with its pairing.
pub fn kernel_group(p: &PolarizedTorus) -> Result<FiniteSymplecticGroup> {
    FiniteSymplecticGroup::of_form(&p.form)
}

/// `m·Ξ`.
pub fn scale(p: &PolarizedTorus, m: u64) -> Result<PolarizedTorus> {
    if m == 0 {
        return Err(Error::InvalidPolarization("scale factor must be positive".into()));
    }
    Ok(PolarizedTorus {
        torus: p.torus,
        form: p.form.scale(&BigInt::from(m)),
    })
}

/// Exterior product `Ξ_X ⊠ Ξ_Y` on `X × Y`. Coordinates are interleaved so
/// that the product keeps the `(e, ωe)` basis ordering.
pub fn box_product(p: &PolarizedTorus, q: &PolarizedTorus) -> Result<PolarizedTorus> {
    if p.order() != q.order() {
        return Err(Error::OrderMismatch(format!("{} vs {}", p.order(), q.order())));
    }
    let form = interleaved_sum(&p.form, p.dim(), &q.form, q.dim());
    Ok(PolarizedTorus {
        torus: Torus::new(p.order(), p.dim() + q.dim())?,
        form,
    })
}

/// Block direct sum of two 2g×2g matrices in `(e, ωe)` ordering.
pub(crate) fn interleaved_sum(a: &IntMatrix, ga: usize, b: &IntMatrix, gb: usize) -> IntMatrix {
    let g = ga + gb;
    let locate = |idx: usize| -> (bool, usize) {
        let (block, pos) = (idx / g, idx % g);
        if pos < ga {
            (true, block * ga + pos)
        } else {
            (false, block * gb + pos - ga)
        }
    };
    IntMatrix::from_fn(2 * g, 2 * g, |r, c| {
        let (ra, ri) = locate(r);
        let (ca, ci) = locate(c);
        match (ra, ca) {
            (true, true) => a[(ri, ci)].clone(),
            (false, false) => b[(ri, ci)].clone(),
            _ => BigInt::zero(),
        }
    })
}

/// Top self-intersection `Ξ^g = g!·|Pf(M)|`, cross-checked against
/// `g!·∏ d_i`.
pub fn self_intersection(p: &PolarizedTorus) -> Result<BigInt> {
    let g = p.dim();
    let fact: BigInt = (1..=g).map(BigInt::from).product();
    let pf = pfaffian(&p.form)?;
    if pf.is_zero() {
        return Err(Error::Degenerate);
    }
    let by_pf = &fact * pf.abs();
    let by_type = &fact * polarization_type(p)?.product();
    if by_pf != by_type {
        return Err(Error::TypeMismatch(format!("Pfaffian gives {by_pf}, type gives {by_type}")));
    }
    Ok(by_pf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_two_form() {
        let expect = IntMatrix::from_rows_i64(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
        ]);
        assert_eq!(theta_g(2).form(), &expect);
    }

    #[test]
    fn xi_blocks() {
        assert_eq!(xi_g(2).block().unwrap(), IntMatrix::from_rows_i64(&[&[2, 1], &[1, 2]]));
        assert_eq!(xi_g(1).block().unwrap(), IntMatrix::from_rows_i64(&[&[2]]));
    }

    #[test]
    fn types() {
        assert!(polarization_type(&theta_g(3)).unwrap() == [1u64, 1, 1][..]);
        for g in 1..=6u64 {
            let mut expect = vec![1u64; g as usize - 1];
            expect.push(g + 1);
            assert!(polarization_type(&xi_g(g as usize)).unwrap() == expect[..]);
        }
        let b = IntMatrix::from_rows_i64(&[&[1, 0], &[0, 2]]);
        let p = PolarizedTorus::from_block(&b).unwrap();
        assert!(polarization_type(&p).unwrap() == [1u64, 2][..]);
    }

    #[test]
    fn rejects_bad_forms() {
        let not_pos = IntMatrix::from_rows_i64(&[&[-1]]);
        assert!(matches!(PolarizedTorus::from_block(&not_pos), Err(Error::InvalidPolarization(_))));
        let degenerate = IntMatrix::from_rows_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(PolarizedTorus::from_block(&degenerate), Err(Error::Degenerate));
        let t = Torus::new(QuadOrder::RationalIntegers, 1).unwrap();
        let sym = IntMatrix::from_rows_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(PolarizedTorus::new(t, sym), Err(Error::NotAlternating));
    }

    #[test]
    fn hermitian_matches_block_over_z() {
        let h = OrderMatrix::from_ints(QuadOrder::RationalIntegers, 2, &[2, 1, 1, 2]).unwrap();
        assert_eq!(PolarizedTorus::from_hermitian(&h).unwrap(), xi_g(2));
    }

    #[test]
    fn cm_theta_is_compatible_and_positive() {
        for o in [QuadOrder::Gaussian, QuadOrder::Eisenstein] {
            let p = theta_over(o, 3);
            assert!(polarization_type(&p).unwrap().is_principal());
        }
    }

    #[test]
    fn box_product_of_thetas() {
        let p = box_product(&theta_g(1), &theta_g(2)).unwrap();
        assert_eq!(p, theta_g(3));
        let k = kernel_group(&box_product(&xi_g(1), &xi_g(2)).unwrap()).unwrap();
        assert_eq!(k.order(), BigInt::from(36));
    }

    #[test]
    fn scaled_types() {
        let p = scale(&xi_g(2), 2).unwrap();
        assert!(polarization_type(&p).unwrap() == [2u64, 6][..]);
    }

    #[test]
    fn self_intersections() {
        assert_eq!(self_intersection(&theta_g(3)).unwrap(), BigInt::from(6));
        assert_eq!(self_intersection(&xi_g(2)).unwrap(), BigInt::from(6));
    }

    #[test]
    fn json_roundtrip() {
        let p = xi_g(3);
        let v = p.to_json();
        assert_eq!(v["g"], 3);
        assert_eq!(PolarizedTorus::from_json(&v).unwrap(), p);
    }
}
