//! Finite groups of matrices over a quadratic order acting on `E^g`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, IntMatrix};
use crate::polarization::{
    is_compatible, kernel_group, theta_over, xi_g, FiniteSymplecticGroup, PolarizedTorus,
};
use crate::tori::{primitive_unit, OrderElem, OrderMatrix, QuadOrder, SixthRoot, Torus};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A finite group of automorphisms of `E^g` fixing the origin, given by
/// analytic representations. Elements are ordered by word length in the
/// generators, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGroup {
    torus: Torus,
    generators: Vec<OrderMatrix>,
    elements: Vec<OrderMatrix>,
}

impl MatrixGroup {
    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn generators(&self) -> &[OrderMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[OrderMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &OrderMatrix) -> bool {
        self.elements.contains(m)
    }

    /// Rational representations of the generators.
    pub fn generator_reps(&self) -> Vec<IntMatrix> {
        self.generators.iter().map(OrderMatrix::rational_rep).collect()
    }

    /// The trivial group on `torus`.
    pub fn trivial(torus: Torus) -> Self {
        let id = OrderMatrix::identity(torus.order, torus.g);
        MatrixGroup { torus, generators: Vec::new(), elements: vec![id] }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order_kind": self.torus.order,
            "g": self.torus.g,
            "elements": self.elements.iter().map(OrderMatrix::to_pairs).collect::<Vec<_>>(),
        })
    }
}

/// Group generated by `gens` on `torus`, by breadth-first closure.
pub fn closure(torus: Torus, gens: &[OrderMatrix], cap: usize) -> Result<MatrixGroup> {
    for m in gens {
        if m.order() != torus.order || m.dim() != torus.g {
            return Err(Error::DimensionMismatch(format!(
                "generator over {} of size {} on a torus over {} of dimension {}",
                m.order(),
                m.dim(),
                torus.order,
                torus.g
            )));
        }
        if !m.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    let id = OrderMatrix::identity(torus.order, torus.g);
    let mut seen: HashSet<OrderMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in gens {
                let y = x.mul(s)?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if seen.len() > cap {
            return Err(Error::CapExceeded(cap));
        }
        next.sort();
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(MatrixGroup { torus, generators: gens.to_vec(), elements })
}

/// Whether every element preserves the form: `R^t M R = M`.
pub fn invariant_form(group: &MatrixGroup, p: &PolarizedTorus) -> Result<bool> {
    check_same_torus(group, p)?;
    Ok(preserves(&group.generator_reps(), p.form()))
}

fn preserves(reps: &[IntMatrix], form: &IntMatrix) -> bool {
    // invariance under generators implies invariance under the group
    reps.iter().all(|r| r.congruence(form) == *form)
}

fn check_same_torus(group: &MatrixGroup, p: &PolarizedTorus) -> Result<()> {
    if group.torus != p.torus() {
        return Err(Error::DimensionMismatch(format!(
            "group acts on {}^{}, polarization lives on {}^{}",
            group.torus.order,
            group.torus.g,
            p.order(),
            p.dim()
        )));
    }
    Ok(())
}

/// Elements whose analytic representation fixes a hyperplane pointwise.
pub fn pseudoreflections(group: &MatrixGroup) -> Vec<OrderMatrix> {
    group
        .elements
        .iter()
        .filter(|m| m.analytic_rank_minus_id() == 1)
        .cloned()
        .collect()
}

/// Whether the pseudoreflections generate the group, and how many there are.
pub fn pseudoreflection_generated(group: &MatrixGroup) -> Result<(bool, usize)> {
    let refl = pseudoreflections(group);
    if refl.is_empty() {
        return Ok((group.order() == 1, 0));
    }
    let sub = closure(group.torus, &refl, group.order())?;
    Ok((sub.order() == group.order(), refl.len()))
}

/// Basis of the lattice fixed by every element.
pub fn fixed_sublattice(group: &MatrixGroup) -> IntMatrix {
    let n = group.torus.lattice_rank();
    let id = IntMatrix::identity(n);
    let stacked = group
        .generator_reps()
        .iter()
        .fold(IntMatrix::zeros(0, n), |acc, r| acc.vstack(&r.sub(&id)));
    kernel_basis(&stacked)
}

/// Complex dimension of the fixed locus through the origin.
pub fn fixed_dim(group: &MatrixGroup) -> usize {
    fixed_sublattice(group).cols() / 2
}

/// Linear map on alternating forms whose kernel cuts out a condition.
type FormMap = Box<dyn Fn(&IntMatrix) -> IntMatrix>;

/// Invariant part of the Néron–Severi group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsFixed {
    pub rank: usize,
    /// Integral basis of the invariant compatible alternating forms.
    pub basis: Vec<IntMatrix>,
}

/// Solves for compatible alternating forms fixed by the group. A unique
/// generator is oriented to be positive when possible.
pub fn ns_fixed(group: &MatrixGroup) -> NsFixed {
    let torus = group.torus;
    let n = torus.lattice_rank();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unit_form = |i: usize, j: usize| {
        let mut m = IntMatrix::zeros(n, n);
        m[(i, j)] = BigInt::one();
        m[(j, i)] = -BigInt::one();
        m
    };
    let mut maps: Vec<FormMap> = Vec::new();
    match torus.order.relation() {
        Some((_, v)) => {
            let j = torus.complex_structure();
            let norm = BigInt::from(-v);
            maps.push(Box::new(move |m| j.congruence(m).sub(&m.scale(&norm))));
        }
        None => {
            let g = torus.g;
            maps.push(Box::new(move |m| {
                let b = m.submatrix(0, g, g, g);
                m.submatrix(0, 0, g, g)
                    .hstack(&m.submatrix(g, g, g, g))
                    .hstack(&b.sub(&b.transpose()))
            }));
        }
    }
    for r in group.generator_reps() {
        maps.push(Box::new(move |m| r.congruence(m).sub(m)));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let images: Vec<Vec<IntMatrix>> = pairs
        .iter()
        .map(|&(i, j)| {
            let e = unit_form(i, j);
            maps.iter().map(|f| f(&e)).collect()
        })
        .collect();
    for (k, _) in maps.iter().enumerate() {
        let shape = &images[0][k];
        for idx in 0..shape.rows() * shape.cols() {
            rows.push(images.iter().map(|im| im[k].entries()[idx].clone()).collect());
        }
    }
    let system = IntMatrix::from_row_vecs(pairs.len(), &rows);
    let kernel = kernel_basis(&system);
    let mut basis: Vec<IntMatrix> = kernel
        .columns()
        .into_iter()
        .map(|col| {
            let mut m = IntMatrix::zeros(n, n);
            for (c, &(i, j)) in col.iter().zip(&pairs) {
                m[(i, j)] = c.clone();
                m[(j, i)] = -c.clone();
            }
            m
        })
        .collect();
    if let [only] = basis.as_mut_slice() {
        let neg = only.neg();
        if crate::polarization::positivity_matrix(&torus, &neg).is_positive_definite() {
            *only = neg;
        }
    }
    NsFixed { rank: basis.len(), basis }
}

/// `Σ_g R_g^t M R_g` split as `multiplier · primitive`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AveragedForm {
    pub primitive: IntMatrix,
    pub multiplier: BigInt,
}

pub fn average_pullback(group: &MatrixGroup, p: &PolarizedTorus) -> Result<AveragedForm> {
    check_same_torus(group, p)?;
    let n = p.torus().lattice_rank();
    let sum = group
        .elements
        .iter()
        .fold(IntMatrix::zeros(n, n), |acc, g| acc.add(&g.rational_rep().congruence(p.form())));
    let multiplier = sum.content();
    if multiplier.is_zero() {
        return Err(Error::Degenerate);
    }
    let primitive = sum.map(|x| x / &multiplier);
    Ok(AveragedForm { primitive, multiplier })
}

/// Whether the group fixes every point of the kernel group.
pub fn action_on_kernel(group: &MatrixGroup, k: &FiniteSymplecticGroup) -> Result<bool> {
    let reps = group.generator_reps();
    if k.form().rows() != group.torus.lattice_rank() {
        return Err(Error::DimensionMismatch("kernel group lives on another lattice".into()));
    }
    if !preserves(&reps, k.form()) {
        return Err(Error::NotInvariant);
    }
    Ok(reps.iter().all(|r| {
        let r = r.to_rat();
        k.generators().iter().all(|x| {
            r.mul_vec(x).iter().zip(x).all(|(a, b)| (a - b).is_integer())
        })
    }))
}

/// Summary of the checkable properties of an action on a polarized torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub order: usize,
    pub pseudoreflections: usize,
    pub generated_by_pseudoreflections: bool,
    pub fixed_dim: usize,
    pub ns_fixed_rank: usize,
    pub ns_generator: Option<IntMatrix>,
    pub k_action_trivial: bool,
}

pub fn action_report(group: &MatrixGroup, p: &PolarizedTorus) -> Result<ActionReport> {
    check_same_torus(group, p)?;
    let (generated, count) = pseudoreflection_generated(group)?;
    let ns = ns_fixed(group);
    Ok(ActionReport {
        order: group.order(),
        pseudoreflections: count,
        generated_by_pseudoreflections: generated,
        fixed_dim: fixed_dim(group),
        ns_fixed_rank: ns.rank,
        ns_generator: (ns.rank == 1).then(|| ns.basis[0].clone()),
        k_action_trivial: action_on_kernel(group, &kernel_group(p)?)?,
    })
}

fn adjacent_transpositions(order: QuadOrder, g: usize) -> Vec<OrderMatrix> {
    (0..g.saturating_sub(1))
        .map(|i| {
            let mut perm: Vec<usize> = (0..g).collect();
            perm.swap(i, i + 1);
            OrderMatrix::permutation(order, &perm)
        })
        .collect()
}

/// `C^g ⋊ S_g` acting on `E^g` with the product polarization, where `C` is
/// cyclic of order `m`.
pub fn example_a(g: usize, m: u32) -> Result<(MatrixGroup, PolarizedTorus)> {
    example_a_with(g, m, SixthRoot::default())
}

pub fn example_a_with(g: usize, m: u32, sixth: SixthRoot) -> Result<(MatrixGroup, PolarizedTorus)> {
    let (order, unit) = primitive_unit(m, sixth)?;
    let torus = Torus::new(order, g)?;
    let mut gens = vec![OrderMatrix::coordinate_unit(order, g, 0, unit)];
    gens.extend(adjacent_transpositions(order, g));
    Ok((closure(torus, &gens, DEFAULT_CAP)?, theta_over(order, g)))
}

/// `S_{g+1}` permuting `x_1..x_{g+1}` with `Σ x_i = 0`, in the coordinates
/// `x_1..x_g`, together with `Ξ_g`.
pub fn example_b(g: usize) -> Result<(MatrixGroup, PolarizedTorus)> {
    let order = QuadOrder::RationalIntegers;
    let torus = Torus::new(order, g)?;
    let mut gens = adjacent_transpositions(order, g);
    // (g, g+1): x_g ↦ −x_1 − … − x_g
    let last = (0..g * g)
        .map(|k| {
            let (i, j) = (k / g, k % g);
            if i == g - 1 {
                -1
            } else if i == j {
                1
            } else {
                0
            }
        })
        .collect::<Vec<i64>>();
    gens.push(OrderMatrix::from_ints(order, g, &last)?);
    Ok((closure(torus, &gens, DEFAULT_CAP)?, xi_g(g)))
}

/// The three generators over `Z[i]` of the order 16 group of Example (c).
pub fn example_c_generators() -> Vec<OrderMatrix> {
    let gauss = |p: &[(i64, i64)]| {
        OrderMatrix::from_pairs(QuadOrder::Gaussian, 2, p).expect("Gaussian entries")
    };
    vec![
        gauss(&[(-1, 0), (1, 1), (0, 0), (1, 0)]),
        gauss(&[(0, -1), (-1, 1), (0, 0), (0, 1)]),
        gauss(&[(-1, 0), (0, 0), (-1, 1), (1, 0)]),
    ]
}

/// The Gaussian group of Example (c) with its invariant primitive
/// polarization, the primitive part of the averaged product polarization.
pub fn example_c() -> Result<(MatrixGroup, PolarizedTorus)> {
    let torus = Torus::new(QuadOrder::Gaussian, 2)?;
    let group = closure(torus, &example_c_generators(), DEFAULT_CAP)?;
    let avg = average_pullback(&group, &theta_over(QuadOrder::Gaussian, 2))?;
    Ok((group, PolarizedTorus::new(torus, avg.primitive)?))
}

/// `{±I}` on `E^g` over the given order.
pub fn plus_minus_identity(order: QuadOrder, g: usize) -> Result<MatrixGroup> {
    let torus = Torus::new(order, g)?;
    closure(torus, &[OrderMatrix::scalar(order, g, -OrderElem::ONE)], DEFAULT_CAP)
}

/// Whether `form` is an alternating form compatible with the torus.
pub fn is_compatible_form(torus: &Torus, form: &IntMatrix) -> bool {
    form.is_antisymmetric() && is_compatible(torus, form)
}
