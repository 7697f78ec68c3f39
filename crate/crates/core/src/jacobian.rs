//! Riemann–Hurwitz arithmetic for Galois covers `C → C/G` whose Jacobian
//! has a smooth quotient. Curves are never represented; only genera, group
//! orders and ramification data.

use serde::Serialize;
use serde_json::{json, Value};

/// Largest genus scanned by [`pseudoreflection_genus_bound`].
pub const MAX_GENUS: u64 = 10;
/// Largest order of the cyclic subgroup generated by a pseudoreflection.
pub const MAX_SUBGROUP_ORDER: u64 = 20;

/// Ramification term `R` of `2g − 2 = |G|(2g' − 2) + R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Residual {
    Feasible(u64),
    Infeasible(i64),
}

impl Residual {
    pub fn value(self) -> i64 {
        match self {
            Residual::Feasible(r) => r as i64,
            Residual::Infeasible(r) => r,
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, Residual::Feasible(_))
    }
}

pub fn rh_residual(g: u64, g_prime: u64, group_order: u64) -> Residual {
    let r = (2 * g as i64 - 2) - group_order as i64 * (2 * g_prime as i64 - 2);
    if r < 0 {
        Residual::Infeasible(r)
    } else {
        Residual::Feasible(r as u64)
    }
}

/// A multiset of ramification indices `r_P | n`, `r_P ≥ 2`, with
/// `Σ (n / r_P)(r_P − 1) = r`, using as few branch points as possible
/// (ties: lexicographically smallest sorted list).
pub fn ramification_realization(group_order: u64, r: u64) -> Option<Vec<u64>> {
    let n = group_order;
    let indices: Vec<u64> = (2..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let r = r as usize;
    // best[v]: shortest sorted index list with contribution v
    let mut best: Vec<Option<Vec<u64>>> = vec![None; r + 1];
    best[0] = Some(Vec::new());
    for v in 1..=r {
        for &d in &indices {
            let c = (n - n / d) as usize;
            if c > v {
                continue;
            }
            if let Some(prev) = &best[v - c] {
                let mut cand = prev.clone();
                cand.push(d);
                cand.sort_unstable();
                let better = match &best[v] {
                    None => true,
                    Some(cur) => (cand.len(), &cand) < (cur.len(), cur),
                };
                if better {
                    best[v] = Some(cand);
                }
            }
        }
    }
    best[r].take()
}

/// Whether some cover with these numbers passes Riemann–Hurwitz.
pub fn is_realizable(g: u64, g_prime: u64, group_order: u64) -> bool {
    match rh_residual(g, g_prime, group_order) {
        Residual::Feasible(r) => ramification_realization(group_order, r).is_some(),
        Residual::Infeasible(_) => false,
    }
}

/// Result of the scan bounding the genus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusBound {
    pub g_max: u64,
    /// `(g, |S|, R)` for every feasible quotient by a pseudoreflection
    /// subgroup `S` with `C/S` of genus `g − 1`.
    pub feasible: Vec<(u64, u64, u64)>,
    /// Candidate `(g, g')` pairs with `2 ≤ g ≤ g_max`, `g' < g`.
    pub cases: Vec<(u64, u64)>,
}

/// Scans `2 ≤ g ≤ MAX_GENUS`, `2 ≤ |S| ≤ MAX_SUBGROUP_ORDER` with `g' = g − 1`.
pub fn pseudoreflection_genus_bound() -> GenusBound {
    let mut feasible = Vec::new();
    for g in 2..=MAX_GENUS {
        for s in 2..=MAX_SUBGROUP_ORDER {
            if let Residual::Feasible(r) = rh_residual(g, g - 1, s) {
                if ramification_realization(s, r).is_some() {
                    feasible.push((g, s, r));
                }
            }
        }
    }
    let g_max = feasible.iter().map(|&(g, _, _)| g).max().unwrap_or(1);
    let cases = (2..=g_max)
        .rev()
        .flat_map(|g| (0..g).rev().map(move |gp| (g, gp)))
        .collect();
    GenusBound { g_max, feasible, cases }
}

/// One branch of the `(g, g') = (3, 1)` analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub group: &'static str,
    pub group_order: u64,
    /// The number exhibiting the contradiction.
    pub witness: i64,
    /// What the witness is compared against, if anything.
    pub bound: Option<i64>,
    pub eliminated: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case31Report {
    pub branches: Vec<Branch>,
    /// Geometric inputs taken as given.
    pub assumptions: Vec<&'static str>,
}

impl Case31Report {
    pub fn all_eliminated(&self) -> bool {
        self.branches.iter().all(|b| b.eliminated)
    }
}

/// Points in the 2-torsion of an elliptic curve.
const ELLIPTIC_TWO_TORSION: i64 = 4;

pub fn case31_contradictions() -> Case31Report {
    let klein_order = 4u64;
    let meet = (klein_order * klein_order) as i64;
    let klein = Branch {
        group: "(Z/2)^2",
        group_order: klein_order,
        witness: meet,
        bound: Some(ELLIPTIC_TWO_TORSION),
        eliminated: meet > ELLIPTIC_TWO_TORSION,
        reason: format!(
            "pullback of E meets the complement in |G|^2 = {meet} points, all 2-torsion, \
             but an elliptic curve has only {ELLIPTIC_TWO_TORSION}"
        ),
    };
    // index-2 subgroup H of order 3, quotient C/H of genus 2
    let sub = rh_residual(3, 2, 3);
    let symmetric = Branch {
        group: "S3",
        group_order: 6,
        witness: sub.value(),
        bound: Some(0),
        eliminated: !sub.is_feasible(),
        reason: format!("C -> C/H with |H| = 3 onto genus 2 needs R = {}", sub.value()),
    };
    Case31Report {
        branches: vec![klein, symmetric],
        assumptions: vec![
            "a Galois cover of an elliptic curve is minimal, so C/H has genus 2 in the S3 branch",
            "|f^*E ∩ X| = |G|^2 for a minimal cover of degree |G|",
        ],
    }
}

/// Outcome of one `(g, g')` case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub g: u64,
    pub g_prime: u64,
    pub group_order: Option<u64>,
    #[serde(rename = "R")]
    pub r: Option<i64>,
    pub status: CaseStatus,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Survives,
    Eliminated,
}

/// Runs all five cases.
pub fn case_analysis() -> Vec<CaseRow> {
    let bound = pseudoreflection_genus_bound();
    let mut rows = Vec::new();
    for (g, gp) in bound.cases {
        match (g, gp) {
            (_, 0) => rows.push(CaseRow {
                g,
                g_prime: gp,
                group_order: None,
                r: None,
                status: CaseStatus::Eliminated,
                reason: "G-fixed part of the Jacobian has dimension 0, but a standard \
                         Jacobian needs a non-trivial fixed part"
                    .into(),
            }),
            (3, 1) => {
                for b in case31_contradictions().branches {
                    rows.push(CaseRow {
                        g,
                        g_prime: gp,
                        group_order: Some(b.group_order),
                        r: Some(rh_residual(g, gp, b.group_order).value()),
                        status: if b.eliminated { CaseStatus::Eliminated } else { CaseStatus::Survives },
                        reason: format!("{}: {}", b.group, b.reason),
                    });
                }
            }
            _ => {
                // orders forced by Riemann–Hurwitz (g' ≥ 2) or by the
                // classification of genus 2 covers of elliptic curves
                let orders: Vec<u64> = if gp >= 2 {
                    (2..=MAX_SUBGROUP_ORDER).filter(|&n| is_realizable(g, gp, n)).collect()
                } else {
                    vec![2]
                };
                for n in orders {
                    let r = rh_residual(g, gp, n).value();
                    let points = ramification_realization(n, r as u64).map_or(0, |v| v.len());
                    rows.push(CaseRow {
                        g,
                        g_prime: gp,
                        group_order: Some(n),
                        r: Some(r),
                        status: CaseStatus::Survives,
                        reason: if r == 0 {
                            "unramified double cover".into()
                        } else {
                            format!("double cover branched at {points} points")
                        },
                    });
                }
            }
        }
    }
    rows
}

/// `(g, g', |G|, R)` of the surviving rows.
pub fn surviving_cases() -> Vec<(u64, u64, u64, i64)> {
    case_analysis()
        .into_iter()
        .filter(|c| c.status == CaseStatus::Survives)
        .filter_map(|c| Some((c.g, c.g_prime, c.group_order?, c.r?)))
        .collect()
}

pub fn report_json() -> Value {
    json!({ "cases": case_analysis() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals() {
        assert_eq!(rh_residual(2, 1, 2), Residual::Feasible(2));
        assert_eq!(rh_residual(3, 2, 2), Residual::Feasible(0));
        assert_eq!(rh_residual(3, 2, 3), Residual::Infeasible(-2));
        assert_eq!(rh_residual(4, 3, 2), Residual::Infeasible(-2));
    }

    #[test]
    fn realizations() {
        assert_eq!(ramification_realization(2, 2), Some(vec![2, 2]));
        assert_eq!(ramification_realization(2, 0), Some(vec![]));
        // n = 6: contributions 3 (r=2), 4 (r=3), 5 (r=6)
        assert_eq!(ramification_realization(6, 7), Some(vec![2, 3]));
        assert_eq!(ramification_realization(6, 2), None);
        assert_eq!(ramification_realization(3, 3), None);
    }

    #[test]
    fn bound_and_cases() {
        let b = pseudoreflection_genus_bound();
        assert_eq!(b.g_max, 3);
        assert_eq!(b.cases, vec![(3, 2), (3, 1), (3, 0), (2, 1), (2, 0)]);
        assert!(b.feasible.contains(&(3, 2, 0)));
        assert!(b.feasible.iter().all(|&(g, _, _)| g <= 3));
    }

    #[test]
    fn case31() {
        let rep = case31_contradictions();
        assert!(rep.all_eliminated());
        assert_eq!(rep.branches[0].witness, 16);
        assert_eq!(rep.branches[0].bound, Some(4));
        assert_eq!(rep.branches[1].witness, -2);
    }

    #[test]
    fn survivors() {
        assert_eq!(surviving_cases(), vec![(3, 2, 2, 0), (2, 1, 2, 2)]);
        let j = report_json();
        assert_eq!(j["cases"].as_array().unwrap().len(), 6);
        assert_eq!(j["cases"][0]["R"], 0);
    }

    #[test]
    fn involution_residual_is_even() {
        for g in 0..=MAX_GENUS {
            for gp in 0..=g {
                assert_eq!(rh_residual(g, gp, 2).value().rem_euclid(2), 0);
            }
        }
    }
}
