//! Gluing `X = ∏ E^{g_i}` (each with `Ξ_{g_i}` and `S_{g_i+1}`) to a
//! matching `Y` along the graph of an antisymplectic isomorphism of kernel
//! groups. The result is principally polarized and carries the `G`-action.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{closure, example_b, fixed_dim, pseudoreflection_generated, MatrixGroup, DEFAULT_CAP};
use crate::json::{int_matrix_strings, int_string};
use crate::linalg::{hnf_basis, invariant_factors, kernel_basis, IntMatrix, RatMatrix};
use crate::polarization::kernel::{add_vec, is_integral_vec, raw_pairing, scale_vec};
use crate::polarization::{
    alternating_type, box_product, interleaved_sum, is_compatible, positivity_matrix,
    reduce_mod_one, vector_order, FiniteSymplecticGroup, PolarizationType, PolarizedTorus, QmodZ,
};
use crate::polarization::xi_g;
use crate::tori::{is_complex_linear, OrderElem, OrderMatrix, QuadOrder, Torus};

/// Elementary divisors of `⊕ Z/m_i`, ones dropped, in divisibility order.
pub fn elementary_divisors(ms: &[u64]) -> Vec<BigInt> {
    let d = IntMatrix::diag(&ms.iter().map(|&m| BigInt::from(m)).collect::<Vec<_>>());
    invariant_factors(&d).into_iter().filter(|x| !x.is_one()).collect()
}

/// Pairs `(x_j, y_j)` with `⟨x_j, y_k⟩ = δ_jk / d_j`, all other pairings
/// zero, and `d_1 | d_2 | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticBasis {
    pub xs: Vec<Vec<BigRational>>,
    pub ys: Vec<Vec<BigRational>>,
    pub orders: Vec<BigInt>,
}

impl SymplecticBasis {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }
}

/// Greedy reduction: take an element `x` of maximal order `e`, a partner
/// `y` with `⟨x, y⟩ = 1/e`, project the generators to the orthogonal
/// complement of `⟨x, y⟩` and repeat.
pub fn symplectic_basis(k: &FiniteSymplecticGroup) -> Result<SymplecticBasis> {
    let form = k.form();
    let mut gens: Vec<Vec<BigRational>> = k.generators().to_vec();
    let (mut xs, mut ys, mut orders) = (Vec::new(), Vec::new(), Vec::new());
    loop {
        gens = gens.iter().map(|v| reduce_mod_one(v)).filter(|v| !v.iter().all(Zero::is_zero)).collect();
        if gens.is_empty() {
            break;
        }
        let x = max_order_element(&gens);
        let e = vector_order(&x);
        let coeffs: Vec<BigInt> = gens
            .iter()
            .map(|z| exact_multiple(&raw_pairing(form, &x, z), &e))
            .collect();
        let t = bezout_mod(&coeffs, &e).ok_or(Error::DegeneratePairing)?;
        let y = reduce_mod_one(
            &gens
                .iter()
                .zip(&t)
                .fold(vec![BigRational::zero(); x.len()], |acc, (z, c)| add_vec(&acc, &scale_vec(z, c))),
        );
        debug_assert_eq!(raw_pairing(form, &x, &y), QmodZ::new(BigRational::new(BigInt::one(), e.clone())));
        gens = gens
            .iter()
            .map(|z| {
                let a = exact_multiple(&raw_pairing(form, &x, z), &e);
                let b = exact_multiple(&raw_pairing(form, &y, z), &e);
                add_vec(&add_vec(z, &scale_vec(&y, &-a)), &scale_vec(&x, &b))
            })
            .collect();
        xs.push(x);
        ys.push(y);
        orders.push(e);
    }
    xs.reverse();
    ys.reverse();
    orders.reverse();
    Ok(SymplecticBasis { xs, ys, orders })
}

/// `e·v` as an integer in `[0, e)`; `v` must lie in `(1/e)Z/Z`.
fn exact_multiple(v: &QmodZ, e: &BigInt) -> BigInt {
    let m = v.value() * BigRational::from_integer(e.clone());
    debug_assert!(m.is_integer());
    m.to_integer()
}

/// Integers `t_i` with `Σ t_i a_i ≡ 1 (mod e)`, if `gcd(a, e) = 1`.
fn bezout_mod(a: &[BigInt], e: &BigInt) -> Option<Vec<BigInt>> {
    let mut g = e.clone();
    let mut t = vec![BigInt::zero(); a.len()];
    // invariant: g ≡ Σ t_i a_i (mod e)
    for (i, ai) in a.iter().enumerate() {
        let ext = g.extended_gcd(ai);
        for tj in t.iter_mut() {
            *tj = &*tj * &ext.x;
        }
        t[i] = &t[i] + &ext.y;
        g = ext.gcd;
    }
    if !g.is_one() {
        return None;
    }
    Some(t.into_iter().map(|x| x.mod_floor(e)).collect())
}

/// An element whose order is the exponent of the group generated by `gens`:
/// for each prime, the generator with the largest power (first by index)
/// contributes its primary part.
fn max_order_element(gens: &[Vec<BigRational>]) -> Vec<BigRational> {
    let orders: Vec<BigInt> = gens.iter().map(|v| vector_order(v)).collect();
    let exponent = orders.iter().fold(BigInt::one(), |l, o| l.lcm(o));
    let mut x = vec![BigRational::zero(); gens[0].len()];
    for p in prime_factors(&exponent) {
        let power = |o: &BigInt| {
            let mut o = o.clone();
            let mut k = 0u32;
            while (&o % &p).is_zero() {
                o /= &p;
                k += 1;
            }
            k
        };
        let (best, _) = orders
            .iter()
            .enumerate()
            .fold((0, 0), |(bi, bk), (i, o)| if power(o) > bk { (i, power(o)) } else { (bi, bk) });
        let pk = num_traits::pow(p.clone(), power(&orders[best]) as usize);
        let cofactor = &orders[best] / &pk;
        x = add_vec(&x, &scale_vec(&gens[best], &cofactor));
    }
    reduce_mod_one(&x)
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// The principally polarized `A = (X × Y)/Γ` with its `G`-action.
///
/// Lattice coordinates are those of `E^N`, `N = g_X + g_Y`, with `X` in the
/// first `g_X` slots; the overlattice has basis the columns of `overlattice`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedPPAV {
    pub factors: Vec<u64>,
    pub y_dim: usize,
    pub divisors: Vec<BigInt>,
    pub x_form: IntMatrix,
    pub y_form: IntMatrix,
    /// `Ξ_X ⊠ Ξ_Y` on `Z^{2N}`.
    pub product_form: IntMatrix,
    pub overlattice: RatMatrix,
    /// Pullback of the product form to the overlattice basis.
    pub form: IntMatrix,
    /// The group on `E^N`, acting on the `X` slots only.
    pub group: MatrixGroup,
    /// Generator actions in overlattice coordinates.
    pub actions: Vec<IntMatrix>,
    /// Lifts to `Q^{2N}` of generators of `Γ`.
    pub graph: Vec<Vec<BigRational>>,
}

impl GluedPPAV {
    pub fn x_dim(&self) -> usize {
        self.factors.iter().sum::<u64>() as usize
    }

    pub fn dim(&self) -> usize {
        self.x_dim() + self.y_dim
    }

    pub fn torus(&self) -> Torus {
        Torus { order: QuadOrder::RationalIntegers, g: self.dim() }
    }

    /// `[overlattice : Z^{2N}]`.
    pub fn index(&self) -> BigInt {
        let det = self.overlattice.det();
        (BigRational::one() / det).abs().to_integer()
    }

    /// The overlattice basis as `numerator / denominator`.
    pub fn overlattice_parts(&self) -> (IntMatrix, BigInt) {
        let den = self.overlattice.denominator_lcm();
        let num = self
            .overlattice
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer());
        (num, den)
    }

    pub fn to_json(&self) -> Value {
        let (num, den) = self.overlattice_parts();
        json!({
            "factors": self.factors,
            "y_dim": self.y_dim,
            "overlattice_num": int_matrix_strings(&num),
            "overlattice_den": int_string(&den),
            "form": int_matrix_strings(&self.form),
            "actions": self.actions.iter().map(int_matrix_strings).collect::<Vec<_>>(),
        })
    }
}

fn embed_block(m: &OrderMatrix, offset: usize, total: usize) -> Result<OrderMatrix> {
    let g = m.dim();
    let entries = (0..total * total)
        .map(|k| {
            let (i, j) = (k / total, k % total);
            if (offset..offset + g).contains(&i) && (offset..offset + g).contains(&j) {
                m.get(i - offset, j - offset)
            } else if i == j {
                OrderElem::ONE
            } else {
                OrderElem::ZERO
            }
        })
        .collect();
    OrderMatrix::new(m.order(), total, entries)
}

/// Builds the standard construction for `X = ∏ E^{g_i}` and a `y_dim`
/// dimensional `Y` with block `diag(1, …, 1, d_1, …, d_s)`.
pub fn build_standard(factors: &[u64], y_dim: usize) -> Result<GluedPPAV> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(Error::DimensionMismatch("factor dimensions must be positive".into()));
    }
    let divisors = elementary_divisors(&factors.iter().map(|g| g + 1).collect::<Vec<_>>());
    if y_dim < divisors.len() || y_dim == 0 {
        return Err(Error::TypeMismatch(format!(
            "Y needs dimension at least {} to carry the divisors, got {y_dim}",
            divisors.len().max(1)
        )));
    }
    let x = factors
        .iter()
        .map(|&g| xi_g(g as usize))
        .reduce(|a, b| box_product(&a, &b).expect("same order"))
        .expect("nonempty");
    let gx = x.dim();
    let n = gx + y_dim;
    let mut y_block = vec![BigInt::one(); y_dim - divisors.len()];
    y_block.extend(divisors.iter().cloned());
    let y = PolarizedTorus::from_block(&IntMatrix::diag(&y_block))?;
    let product_form = interleaved_sum(x.form(), gx, y.form(), y_dim);
    let torus = Torus::new(QuadOrder::RationalIntegers, n)?;

    let kx = FiniteSymplecticGroup::of_form(x.form())?;
    let ky = FiniteSymplecticGroup::of_form(y.form())?;
    let bx = symplectic_basis(&kx)?;
    let by = symplectic_basis(&ky)?;
    if bx.orders != divisors || by.orders != divisors {
        return Err(Error::TypeMismatch(format!(
            "kernel orders {:?} and {:?} differ from {divisors:?}",
            bx.orders, by.orders
        )));
    }
    // f, h send x_j, y_j to the j-th symplectic pair; ε swaps the pair, so
    // h⁻¹∘ε∘f sends x_j ↦ y'_j and y_j ↦ x'_j.
    let lift_x = |v: &[BigRational]| torus.embed_vector(0, gx, v);
    let lift_y = |v: &[BigRational]| torus.embed_vector(gx, y_dim, v);
    let mut graph = Vec::new();
    for j in 0..divisors.len() {
        graph.push(add_vec(&lift_x(&bx.xs[j]), &lift_y(&by.ys[j])));
        graph.push(add_vec(&lift_x(&bx.ys[j]), &lift_y(&by.xs[j])));
    }
    for (a, b) in bx.xs.iter().zip(&bx.ys) {
        let (fa, fb) = (image(&bx, &by, a)?, image(&bx, &by, b)?);
        if raw_pairing(y.form(), &fa, &fb) != raw_pairing(x.form(), a, b).neg() {
            return Err(Error::VerificationFailed("gluing map is not antisymplectic"));
        }
    }

    let mut cols = IntMatrix::identity(2 * n).to_rat().columns();
    cols.extend(graph.iter().cloned());
    let overlattice = hnf_basis(&RatMatrix::from_columns(2 * n, &cols))?;
    let pulled = overlattice.congruence(&product_form.to_rat());
    let form = pulled.to_int().ok_or(Error::IntegralityFailure)?;

    let mut gens = Vec::new();
    let mut offset = 0;
    for &g in factors {
        let (b, _) = example_b(g as usize)?;
        for s in b.generators() {
            gens.push(embed_block(s, offset, n)?);
        }
        offset += g as usize;
    }
    let group = closure(torus, &gens, DEFAULT_CAP)?;
    let inv = overlattice.inverse().ok_or(Error::Degenerate)?;
    let actions = group
        .generator_reps()
        .iter()
        .map(|r| {
            let a = inv.mul(&r.to_rat()).mul(&overlattice);
            a.to_int()
                .ok_or(Error::VerificationFailed("action does not preserve the overlattice"))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(GluedPPAV {
        factors: factors.to_vec(),
        y_dim,
        divisors,
        x_form: x.form().clone(),
        y_form: y.form().clone(),
        product_form,
        overlattice,
        form,
        group,
        actions,
        graph,
    })
}

/// Image under `h⁻¹∘ε∘f` of an element of `K_X` expressed in the basis.
fn image(bx: &SymplecticBasis, by: &SymplecticBasis, v: &[BigRational]) -> Result<Vec<BigRational>> {
    let pos = |list: &[Vec<BigRational>]| list.iter().position(|w| w.as_slice() == v);
    if let Some(j) = pos(&bx.xs) {
        return Ok(by.ys[j].clone());
    }
    if let Some(j) = pos(&bx.ys) {
        return Ok(by.xs[j].clone());
    }
    Err(Error::NotMember)
}

/// Outcome of [`verify_glued`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedReport {
    pub pfaffian_abs: BigInt,
    pub index: BigInt,
    pub group_order: usize,
    pub pseudoreflections: usize,
    pub fixed_dim: usize,
}

/// Re-checks every invariant of a glued variety, failing on the first
/// violated one.
pub fn verify_glued(a: &GluedPPAV) -> Result<GluedReport> {
    let torus = a.torus();
    let n = torus.lattice_rank();
    if a.form.rows() != n || a.overlattice.rows() != n {
        return Err(Error::DimensionMismatch("glued data has inconsistent sizes".into()));
    }
    if !a.form.is_antisymmetric() {
        return Err(Error::NotAlternating);
    }
    let pulled = a.overlattice.congruence(&a.product_form.to_rat());
    if pulled.to_int().as_ref() != Some(&a.form) {
        return Err(Error::IntegralityFailure);
    }
    let pf = crate::linalg::pfaffian(&a.form)?.abs();
    if !pf.is_one() {
        return Err(Error::VerificationFailed("form is not unimodular"));
    }
    let index = a.index();
    let d: BigInt = a.divisors.iter().product();
    if index != &d * &d {
        return Err(Error::VerificationFailed("overlattice index differs from the kernel order"));
    }
    if !graph_is_isotropic(a) {
        return Err(Error::VerificationFailed("graph is not isotropic"));
    }
    if !a.overlattice.congruence(&positivity_matrix(&torus, &a.product_form)).is_positive_definite() {
        return Err(Error::VerificationFailed("form is not positive"));
    }
    if !is_compatible(&torus, &a.product_form) {
        return Err(Error::VerificationFailed("form is not compatible with the complex structure"));
    }
    let reps = a.group.generator_reps();
    if !reps.iter().all(|r| is_complex_linear(&torus, r)) {
        return Err(Error::VerificationFailed("action is not complex linear"));
    }
    let inv = a.overlattice.inverse().ok_or(Error::Degenerate)?;
    for (r, act) in reps.iter().zip(&a.actions) {
        if inv.mul(&r.to_rat()).mul(&a.overlattice) != act.to_rat() {
            return Err(Error::VerificationFailed("action matrix does not match the group"));
        }
        if act.congruence(&a.form) != a.form {
            return Err(Error::NotInvariant);
        }
        let r = r.to_rat();
        for gamma in &a.graph {
            let moved: Vec<BigRational> = r.mul_vec(gamma).iter().zip(gamma).map(|(p, q)| p - q).collect();
            if !is_integral_vec(&moved) {
                return Err(Error::VerificationFailed("group moves the gluing graph"));
            }
        }
    }
    let (generated, count) = pseudoreflection_generated(&a.group)?;
    if !generated {
        return Err(Error::VerificationFailed("group is not generated by pseudoreflections"));
    }
    let fixed = fixed_dim(&a.group);
    if fixed != a.y_dim {
        return Err(Error::VerificationFailed("fixed locus differs from Y"));
    }
    Ok(GluedReport {
        pfaffian_abs: pf,
        index,
        group_order: a.group.order(),
        pseudoreflections: count,
        fixed_dim: fixed,
    })
}

/// Whether the product pairing vanishes on all pairs of graph generators.
pub fn graph_is_isotropic(a: &GluedPPAV) -> bool {
    a.graph.iter().all(|u| a.graph.iter().all(|v| raw_pairing(&a.product_form, u, v).is_zero()))
}

/// The fixed part `Y` and its complement `X` inside the glued lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Columns in overlattice coordinates.
    pub y_lattice: IntMatrix,
    pub x_lattice: IntMatrix,
    pub y_type: PolarizationType,
    pub x_type: PolarizationType,
    /// `[overlattice : X ⊕ Y]`.
    pub quotient_order: BigInt,
}

pub fn decompose_glued(a: &GluedPPAV) -> Result<Decomposition> {
    verify_glued(a)?;
    let n = a.torus().lattice_rank();
    let id = IntMatrix::identity(n);
    let stacked = a.actions.iter().fold(IntMatrix::zeros(0, n), |acc, m| acc.vstack(&m.sub(&id)));
    let y_lattice = kernel_basis(&stacked);
    let x_lattice = kernel_basis(&y_lattice.transpose().mul(&a.form));
    let y_form = y_lattice.congruence(&a.form);
    let x_form = x_lattice.congruence(&a.form);
    let y_type = alternating_type(&y_form)?;
    let x_type = alternating_type(&x_form)?;
    let quotient_order = x_lattice.hstack(&y_lattice).det().abs();
    let kx = x_form.det().abs();
    let ky = y_form.det().abs();
    if &quotient_order * &quotient_order != &kx * &ky {
        return Err(Error::VerificationFailed("quotient is not the graph of an isomorphism"));
    }
    if x_type != alternating_type(&a.x_form)? || y_type != alternating_type(&a.y_form)? {
        return Err(Error::TypeMismatch(format!("recovered types {x_type} and {y_type}")));
    }
    Ok(Decomposition { y_lattice, x_lattice, y_type, x_type, quotient_order })
}

/// Minimal `Y` dimension for the given factors.
pub fn minimal_y_dim(factors: &[u64]) -> usize {
    let s = elementary_divisors(&factors.iter().map(|g| g + 1).collect::<Vec<_>>()).len();
    s.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::{kernel_group, polarization_type};

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn divisors() {
        assert_eq!(elementary_divisors(&[2]), big(&[2]));
        assert_eq!(elementary_divisors(&[2, 3]), big(&[6]));
        assert_eq!(elementary_divisors(&[2, 4]), big(&[2, 4]));
        assert_eq!(elementary_divisors(&[3, 4]), big(&[12]));
        assert!(elementary_divisors(&[1]).is_empty());
    }

    fn assert_symplectic(k: &FiniteSymplecticGroup, b: &SymplecticBasis) {
        let f = k.form();
        for i in 0..b.len() {
            assert_eq!(vector_order(&b.xs[i]), b.orders[i]);
            assert_eq!(vector_order(&b.ys[i]), b.orders[i]);
            if i + 1 < b.len() {
                assert!((&b.orders[i + 1] % &b.orders[i]).is_zero());
            }
            for j in 0..b.len() {
                let expect = if i == j {
                    QmodZ::new(BigRational::new(BigInt::one(), b.orders[i].clone()))
                } else {
                    QmodZ::zero()
                };
                assert_eq!(raw_pairing(f, &b.xs[i], &b.ys[j]), expect);
                assert!(raw_pairing(f, &b.xs[i], &b.xs[j]).is_zero());
                assert!(raw_pairing(f, &b.ys[i], &b.ys[j]).is_zero());
            }
        }
        let size: BigInt = b.orders.iter().map(|d| d * d).product();
        assert_eq!(size, k.order());
    }

    #[test]
    fn symplectic_bases() {
        let trivial = kernel_group(&crate::polarization::theta_g(2)).unwrap();
        assert!(symplectic_basis(&trivial).unwrap().is_empty());
        for (g, d) in [(1usize, 2u64), (2, 3), (3, 4)] {
            let k = kernel_group(&xi_g(g)).unwrap();
            let b = symplectic_basis(&k).unwrap();
            assert_eq!(b.orders, big(&[d]));
            assert_symplectic(&k, &b);
        }
        let mixed = PolarizedTorus::from_block(&IntMatrix::diag(&big(&[2, 6, 4]))).unwrap();
        let k = kernel_group(&mixed).unwrap();
        let b = symplectic_basis(&k).unwrap();
        assert_eq!(b.orders, big(&[2, 2, 12]));
        assert_symplectic(&k, &b);
    }

    #[test]
    fn bezout() {
        let t = bezout_mod(&big(&[4, 6]), &BigInt::from(9)).unwrap();
        assert_eq!((&t[0] * BigInt::from(4) + &t[1] * BigInt::from(6)).mod_floor(&BigInt::from(9)), BigInt::one());
        assert!(bezout_mod(&big(&[3, 6]), &BigInt::from(9)).is_none());
    }

    #[test]
    fn glue_elliptic_pair() {
        let a = build_standard(&[1], 1).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.index(), BigInt::from(4));
        let r = verify_glued(&a).unwrap();
        assert_eq!(r.fixed_dim, 1);
        let d = decompose_glued(&a).unwrap();
        assert_eq!(d.x_type, PolarizationType::from_u64(&[2]));
        assert_eq!(d.y_type, PolarizationType::from_u64(&[2]));
        assert_eq!(d.quotient_order, BigInt::from(4));
    }

    #[test]
    fn glue_surface_and_curve() {
        let a = build_standard(&[2], 1).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.index(), BigInt::from(9));
        verify_glued(&a).unwrap();
        let d = decompose_glued(&a).unwrap();
        assert_eq!(d.x_type, PolarizationType::from_u64(&[1, 3]));
        assert_eq!(d.y_type, PolarizationType::from_u64(&[3]));
    }

    #[test]
    fn glue_two_curves() {
        let a = build_standard(&[1, 1], 2).unwrap();
        assert_eq!(a.divisors, big(&[2, 2]));
        assert_eq!(a.dim(), 4);
        assert_eq!(a.index(), BigInt::from(16));
        verify_glued(&a).unwrap();
        assert!(graph_is_isotropic(&a));
        let k = kernel_group(&box_product(&xi_g(1), &xi_g(1)).unwrap()).unwrap();
        assert_eq!(k.order(), BigInt::from(16));
    }

    #[test]
    fn glue_rejects_small_y() {
        assert!(matches!(build_standard(&[1, 1], 1), Err(Error::TypeMismatch(_))));
        assert_eq!(minimal_y_dim(&[1, 1]), 2);
        assert_eq!(minimal_y_dim(&[2, 3]), 1);
    }

    #[test]
    fn corrupted_form_detected() {
        let mut a = build_standard(&[2], 1).unwrap();
        a.form[(0, 1)] += 1;
        let err = verify_glued(&a).unwrap_err();
        assert!(matches!(err, Error::NotAlternating | Error::IntegralityFailure));
    }

    #[test]
    fn json_has_decimal_strings() {
        let a = build_standard(&[1], 1).unwrap();
        let j = a.to_json();
        assert_eq!(j["overlattice_den"], "2");
        assert!(j["form"][0][0].is_string());
        assert_eq!(j["actions"].as_array().unwrap().len(), a.actions.len());
        let (num, den) = a.overlattice_parts();
        assert_eq!(num.to_rat().scale(&BigRational::new(BigInt::one(), den)), a.overlattice);
        assert!(polarization_type(&PolarizedTorus::from_block(&IntMatrix::identity(1)).unwrap())
            .unwrap()
            .is_principal());
    }
}
