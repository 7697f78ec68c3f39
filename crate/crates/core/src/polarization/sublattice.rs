use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{alternating_type, xi_g, PolarizationType, PolarizedTorus};
use crate::error::{Error, Result};
use crate::linalg::{echelon_rows, int_rank, is_saturated, kernel_basis, lattice_coordinates, saturate, IntMatrix};
use crate::tori::{OrderElem, QuadOrder, Torus};

/// Checks that the column lattice of `s` is saturated and closed under the
/// complex structure (and, over the generic order, under `τ ↦ τ̄`, which
/// forces the shape `W ⊕ τW`).
fn check_sublattice(torus: &Torus, s: &IntMatrix) -> Result<()> {
    if s.rows() != torus.lattice_rank() {
        return Err(Error::DimensionMismatch(format!(
            "sublattice has {} rows, lattice rank is {}",
            s.rows(),
            torus.lattice_rank()
        )));
    }
    if int_rank(s) < s.cols() {
        return Err(Error::RankDeficient);
    }
    if !is_saturated(s)? {
        return Err(Error::NotSaturated);
    }
    let mut maps = vec![torus.complex_structure()];
    if torus.order == QuadOrder::RationalIntegers {
        maps.push(torus.conjugation_matrix());
    }
    for m in maps {
        let image = m.mul(s);
        for j in 0..image.cols() {
            if lattice_coordinates(s, &image.column(j)).is_none() {
                return Err(Error::NotStable);
            }
        }
    }
    Ok(())
}

/// Basis `w_1..w_k` over the order of a saturated stable sublattice, so that
/// `(w_1..w_k, ωw_1..ωw_k)` is a Z-basis of it. Returned as columns.
pub fn o_basis(torus: &Torus, s: &IntMatrix) -> Result<IntMatrix> {
    check_sublattice(torus, s)?;
    let g = torus.g;
    let w = match torus.order {
        QuadOrder::RationalIntegers => {
            // S = W ⊕ τW: the e-parts of the columns span W.
            let e_parts = s.submatrix(0, 0, g, s.cols()).transpose();
            let rows = echelon_rows(&e_parts);
            let k = rows.rows();
            IntMatrix::from_fn(2 * g, k, |i, j| {
                if i < g {
                    rows[(j, i)].clone()
                } else {
                    BigInt::zero()
                }
            })
        }
        order => {
            let vecs: Vec<Vec<OrderElem>> = (0..s.cols())
                .map(|j| {
                    (0..g)
                        .map(|i| OrderElem {
                            a: i64::try_from(&s[(i, j)]).expect("small coordinates"),
                            b: i64::try_from(&s[(g + i, j)]).expect("small coordinates"),
                        })
                        .collect()
                })
                .collect();
            let rows = order_echelon(order, vecs);
            let k = rows.len();
            IntMatrix::from_fn(2 * g, k, |i, j| {
                let x = rows[j][i % g];
                BigInt::from(if i < g { x.a } else { x.b })
            })
        }
    };
    let full = w.hstack(&torus.complex_structure().mul(&w));
    debug_assert_eq!(echelon_rows(&full.transpose()), echelon_rows(&s.transpose()));
    Ok(w)
}

fn round_div(p: i64, n: i64) -> i64 {
    // nearest integer to p/n for n > 0
    (2 * p + n).div_euclid(2 * n)
}

/// Euclidean quotient in `Z[i]` / `Z[ω]` by coordinatewise rounding.
fn order_quotient(order: QuadOrder, x: OrderElem, y: OrderElem) -> OrderElem {
    let n = order.norm(y);
    let num = order.mul(x, order.conj(y));
    OrderElem { a: round_div(num.a, n), b: round_div(num.b, n) }
}

/// Row echelon form over a Euclidean quadratic order; returns nonzero rows.
fn order_echelon(order: QuadOrder, mut rows: Vec<Vec<OrderElem>>) -> Vec<Vec<OrderElem>> {
    let g = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..g {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| (order.norm(rows[i][c]), i));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = order_quotient(order, rows[i][c], rows[r][c]);
                for j in c..g {
                    let t = order.mul(q, rows[r][j]);
                    rows[i][j] = rows[i][j] - t;
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Restriction of the polarization to the subtorus with lattice `s`.
pub fn restrict(p: &PolarizedTorus, s: &IntMatrix) -> Result<PolarizedTorus> {
    let torus = p.torus();
    let w = o_basis(&torus, s)?;
    let basis = w.hstack(&torus.complex_structure().mul(&w));
    let form = basis.congruence(p.form());
    PolarizedTorus::new(Torus::new(torus.order, w.cols())?, form)
}

/// Complementary sublattice `{v : S^t M v = 0}` with respect to the form.
pub fn complement(p: &PolarizedTorus, s: &IntMatrix) -> Result<IntMatrix> {
    let torus = p.torus();
    check_sublattice(&torus, s)?;
    let c = kernel_basis(&s.transpose().mul(p.form()));
    check_sublattice(&torus, &c)?;
    Ok(c)
}

/// One stable sublattice found by [`prop39_scan`].
#[derive(Clone, Debug)]
pub struct ScanEntry {
    /// Saturated basis of `W ⊂ Z^n` (columns); the sublattice is `W ⊕ τW`.
    pub basis: IntMatrix,
    pub restricted_type: PolarizationType,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub n: usize,
    pub height: i64,
    pub tuples_examined: u64,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn principal_found(&self) -> bool {
        self.entries.iter().any(|e| e.restricted_type.is_principal())
    }

    pub fn types(&self) -> Vec<&PolarizationType> {
        self.entries.iter().map(|e| &e.restricted_type).collect()
    }
}

const MAX_SCAN_DIM: usize = 4;
const MAX_SCAN_HEIGHT: i64 = 5;
const MAX_SCAN_TUPLES: u64 = 3_000_000;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Primitive vectors of `[-h, h]^n` up to sign (first nonzero entry positive).
fn primitive_vectors(n: usize, h: i64) -> Vec<Vec<i64>> {
    let side = (2 * h + 1) as usize;
    let total = side.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let x = (c % side) as i64 - h;
                c /= side;
                x
            })
            .collect();
        let Some(first) = v.iter().find(|&&x| x != 0) else { continue };
        if *first < 0 {
            continue;
        }
        let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if g == 1 {
            out.push(v);
        }
    }
    out.sort();
    out
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Enumerates the proper abelian subvarieties `W ⊕ τW` of `(E^n, Ξ_n)` whose
/// `W` is spanned by primitive vectors with entries in `[-height, height]`,
/// and records the type of the restricted polarization.
pub fn prop39_scan(n: usize, height: i64) -> Result<ScanReport> {
    if !(2..=MAX_SCAN_DIM).contains(&n) || !(1..=MAX_SCAN_HEIGHT).contains(&height) {
        return Err(Error::BudgetExceeded(format!(
            "n must be in 2..={MAX_SCAN_DIM} and height in 1..={MAX_SCAN_HEIGHT}"
        )));
    }
    let prims = primitive_vectors(n, height);
    let budget: u64 = (1..n).map(|k| binomial(prims.len() as u64, k as u64)).sum();
    if budget > MAX_SCAN_TUPLES {
        return Err(Error::BudgetExceeded(format!(
            "{budget} tuples exceed the limit of {MAX_SCAN_TUPLES}"
        )));
    }
    let xi = xi_g(n);
    let mut seen: BTreeMap<Vec<BigInt>, (IntMatrix, PolarizationType)> = BTreeMap::new();
    let mut examined = 0u64;
    let mut failure = None;
    for k in 1..n {
        combinations(prims.len(), k, |idx| {
            if failure.is_some() {
                return;
            }
            examined += 1;
            let cols: Vec<Vec<BigInt>> = idx
                .iter()
                .map(|&i| prims[i].iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let w = IntMatrix::from_columns(n, &cols);
            if int_rank(&w) < k {
                return;
            }
            let Ok(sat) = saturate(&w) else { return };
            let echelon = echelon_rows(&sat.transpose());
            let key = echelon.entries().to_vec();
            if seen.contains_key(&key) {
                return;
            }
            let lattice = sat.vstack(&IntMatrix::zeros(n, k)).hstack(&IntMatrix::zeros(n, k).vstack(&sat));
            match restrict(&xi, &lattice).and_then(|r| alternating_type(r.form())) {
                Ok(t) => {
                    seen.insert(key, (echelon, t));
                }
                Err(e) => failure = Some(e),
            }
        });
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let entries = seen
        .into_values()
        .map(|(echelon, restricted_type)| ScanEntry { basis: echelon.transpose(), restricted_type })
        .collect();
    Ok(ScanReport { n, height, tuples_examined: examined, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarization::{polarization_type, theta_g, theta_over};

    fn generic_span(cols: &[&[i64]]) -> IntMatrix {
        let n = cols[0].len();
        let w = IntMatrix::from_columns(
            n,
            &cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
        );
        let k = w.cols();
        w.vstack(&IntMatrix::zeros(n, k)).hstack(&IntMatrix::zeros(n, k).vstack(&w))
    }

    #[test]
    fn diagonal_of_xi_two_has_type_six() {
        let r = restrict(&xi_g(2), &generic_span(&[&[1, 1]])).unwrap();
        assert_eq!(polarization_type(&r).unwrap(), PolarizationType::from_u64(&[6]));
    }

    #[test]
    fn complement_of_diagonal_is_antidiagonal() {
        let xi = xi_g(2);
        let c = complement(&xi, &generic_span(&[&[1, 1]])).unwrap();
        let anti = generic_span(&[&[1, -1]]);
        assert_eq!(echelon_rows(&c.transpose()), echelon_rows(&anti.transpose()));
        let r = restrict(&xi, &c).unwrap();
        assert_eq!(polarization_type(&r).unwrap(), PolarizationType::from_u64(&[2]));
    }

    #[test]
    fn complement_of_axis_in_product() {
        let c = complement(&theta_g(2), &generic_span(&[&[1, 0]])).unwrap();
        let axis2 = generic_span(&[&[0, 1]]);
        assert_eq!(echelon_rows(&c.transpose()), echelon_rows(&axis2.transpose()));
        let r = restrict(&theta_g(2), &axis2).unwrap();
        assert!(polarization_type(&r).unwrap().is_principal());
    }

    #[test]
    fn unstable_and_unsaturated_rejected() {
        let only_e = IntMatrix::from_rows_i64(&[&[1], &[1], &[0], &[0]]);
        assert_eq!(restrict(&xi_g(2), &only_e).unwrap_err(), Error::NotStable);
        let doubled = generic_span(&[&[2, 2]]);
        assert_eq!(restrict(&xi_g(2), &doubled).unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn gaussian_sublattice_basis() {
        // span over Z[i] of (1, i) in E^2 with E = C/Z[i]
        let torus = Torus::new(QuadOrder::Gaussian, 2).unwrap();
        let s = IntMatrix::from_rows_i64(&[&[1, 0], &[0, -1], &[0, 1], &[1, 0]]);
        let w = o_basis(&torus, &s).unwrap();
        assert_eq!(w.cols(), 1);
        let r = restrict(&theta_over(QuadOrder::Gaussian, 2), &s).unwrap();
        assert_eq!(polarization_type(&r).unwrap(), PolarizationType::from_u64(&[2]));
    }

    #[test]
    fn scan_small_has_no_principal() {
        let report = prop39_scan(2, 1).unwrap();
        assert!(!report.principal_found());
        let types: Vec<Vec<u64>> = report.types().iter().map(|t| t.to_u64()).collect();
        assert!(types.contains(&vec![6]));
        assert!(types.contains(&vec![2]));
        assert!(matches!(prop39_scan(5, 1), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn combinations_count() {
        let mut n = 0;
        combinations(6, 3, |_| n += 1);
        assert_eq!(n, 20);
        assert_eq!(binomial(6, 3), 20);
    }
}
