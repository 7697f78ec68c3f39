//! Static catalog of named verification checks and a parallel runner.
//!
//! Every check returns a pass/fail verdict with a JSON witness. Internal
//! errors are reported as status `error`, never as a panic.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::groups::{
    action_on_kernel, average_pullback, example_a, example_b, example_c, invariant_form, ns_fixed,
    plus_minus_identity, pseudoreflection_generated,
};
use crate::jacobian::{case31_contradictions, pseudoreflection_genus_bound, rh_residual, surviving_cases};
use crate::linalg::{pfaffian, IntMatrix};
use crate::polarization::{
    box_product, kernel_group, rat_vec, polarization_type, prop39_scan, restrict, scale, self_intersection, theta_g,
    theta_over, xi_g, PolarizedTorus,
};
use crate::standard::{build_standard, decompose_glued, minimal_y_dim, verify_glued};
use crate::tori::QuadOrder;

/// Tunable inputs shared by all checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub gmax: usize,
    pub factors: Vec<u64>,
    /// Defaults to the smallest admissible dimension.
    pub ydim: Option<usize>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { gmax: 6, factors: vec![2, 3], ydim: None, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: &'static str,
    pub status: Status,
    pub witnesses: Value,
    pub elapsed_ms: u128,
}

type CheckFn = fn(&Options) -> Result<(bool, Value)>;

pub struct Check {
    pub id: &'static str,
    pub summary: &'static str,
    run: CheckFn,
}

pub static CATALOG: &[Check] = &[
    Check { id: "lemma-xi-type", summary: "Ξ_g has type (1,…,1,g+1) and diagonal kernel", run: lemma_xi_type },
    Check { id: "group-orders", summary: "orders of the example groups", run: group_orders },
    Check { id: "example-c-order", summary: "the Gaussian group has order 16", run: example_c_order },
    Check { id: "reflection-generation", summary: "example groups are generated by pseudoreflections", run: reflection_generation },
    Check { id: "ns-invariance", summary: "invariant polarizations generate NS^G", run: ns_invariance },
    Check { id: "standard-build", summary: "the glued variety is principally polarized", run: standard_build },
    Check { id: "box-kernel", summary: "kernel of a box product is the sum of kernels", run: box_kernel },
    Check { id: "kernel-not-fixed", summary: "non-principal kernels are moved by the group", run: kernel_not_fixed },
    Check { id: "not-principal-scan", summary: "no abelian subvariety of E^n restricts Ξ_n to a principal polarization", run: not_principal_scan },
    Check { id: "jacobian-cases", summary: "Riemann–Hurwitz case analysis", run: jacobian_cases },
    Check { id: "degrees", summary: "self-intersection numbers", run: degrees },
];

pub fn find(id: &str) -> Option<&'static Check> {
    CATALOG.iter().find(|c| c.id == id)
}

pub fn ids() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.id).collect()
}

impl Check {
    pub fn run(&self, opts: &Options) -> CheckResult {
        let start = Instant::now();
        let (status, witnesses) = match (self.run)(opts) {
            Ok((true, w)) => (Status::Pass, w),
            Ok((false, w)) => (Status::Fail, w),
            Err(e) => (Status::Error, json!({ "error": e.to_string() })),
        };
        CheckResult { check_id: self.id, status, witnesses, elapsed_ms: start.elapsed().as_millis() }
    }
}

/// Runs the checks in parallel; results come back in the given order.
pub fn run_all(checks: &[&'static Check], opts: &Options) -> Vec<CheckResult> {
    checks.par_iter().map(|c| c.run(opts)).collect()
}

fn to_strings(m: &IntMatrix) -> Value {
    crate::json::int_matrix_strings(m)
}

fn lemma_xi_type(opts: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for g in 1..=opts.gmax {
        let xi = xi_g(g);
        let t = polarization_type(&xi)?;
        let mut expect = vec![1u64; g - 1];
        expect.push(g as u64 + 1);
        let k = kernel_group(&xi)?;
        let diagonal = k.generators().iter().all(|x| {
            x[..g].iter().all(|c| *c == x[0]) && x[g..].iter().all(|c| *c == x[g])
        });
        let order_ok = k.order() == BigInt::from((g + 1) * (g + 1));
        ok &= t == *expect.as_slice() && diagonal && order_ok;
        rows.push(json!({ "g": g, "type": t.to_u64(), "kernel_order": k.order().to_string(), "diagonal": diagonal }));
    }
    Ok((ok, json!(rows)))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn group_orders(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut a = Vec::new();
    for g in 1..=3 {
        for m in [2u32, 3, 4] {
            let n = example_a(g, m)?.0.order();
            ok &= n == (m as usize).pow(g as u32) * factorial(g);
            a.push(json!({ "g": g, "m": m, "order": n }));
        }
    }
    let mut b = Vec::new();
    for g in 1..=4 {
        let n = example_b(g)?.0.order();
        ok &= n == factorial(g + 1);
        b.push(json!({ "g": g, "order": n }));
    }
    let c = example_c()?.0.order();
    ok &= c == 16;
    Ok((ok, json!({ "a": a, "b": b, "c": c })))
}

fn example_c_order(_: &Options) -> Result<(bool, Value)> {
    let (grp, xi_c) = example_c()?;
    Ok((
        grp.order() == 16,
        json!({ "order": grp.order(), "invariant_form": to_strings(xi_c.form()) }),
    ))
}

fn reflection_generation(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    let mut push = |label: String, generated: bool, count: usize, expect: bool| {
        ok &= generated == expect;
        rows.push(json!({ "group": label, "generated": generated, "pseudoreflections": count }));
    };
    for g in 1..=3 {
        for m in [2u32, 3, 4] {
            let (gen, n) = pseudoreflection_generated(&example_a(g, m)?.0)?;
            push(format!("a(g={g},m={m})"), gen, n, true);
        }
    }
    for g in 1..=4 {
        let (gen, n) = pseudoreflection_generated(&example_b(g)?.0)?;
        push(format!("b(g={g})"), gen, n, true);
    }
    let (gen, n) = pseudoreflection_generated(&example_c()?.0)?;
    push("c".into(), gen, n, true);
    let (gen, n) = pseudoreflection_generated(&plus_minus_identity(QuadOrder::RationalIntegers, 2)?)?;
    push("±I(g=2)".into(), gen, n, false);
    Ok((ok, json!(rows)))
}

fn ns_invariance(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for g in 2..=3 {
        for m in [2u32, 3, 4] {
            let (grp, theta) = example_a(g, m)?;
            let ns = ns_fixed(&grp);
            let inv = invariant_form(&grp, &theta)?;
            let gen_ok = ns.rank == 1 && ns.basis[0] == *theta.form();
            ok &= inv && gen_ok;
            rows.push(json!({ "example": format!("a(g={g},m={m})"), "invariant": inv, "ns_rank": ns.rank, "generator_is_theta": gen_ok }));
        }
        let (grp, xi) = example_b(g)?;
        let ns = ns_fixed(&grp);
        let inv = invariant_form(&grp, &xi)?;
        let gen_ok = ns.rank == 1 && ns.basis[0] == *xi.form();
        ok &= inv && gen_ok;
        rows.push(json!({ "example": format!("b(g={g})"), "invariant": inv, "ns_rank": ns.rank, "generator_is_xi": gen_ok }));
    }
    let (grp, xi_c) = example_c()?;
    let inv = invariant_form(&grp, &xi_c)?;
    ok &= inv;
    rows.push(json!({ "example": "c", "invariant": inv, "ns_rank": ns_fixed(&grp).rank }));
    Ok((ok, json!(rows)))
}

fn standard_build(opts: &Options) -> Result<(bool, Value)> {
    let ydim = opts.ydim.unwrap_or_else(|| minimal_y_dim(&opts.factors));
    let a = build_standard(&opts.factors, ydim)?;
    let report = verify_glued(&a)?;
    let dec = decompose_glued(&a)?;
    let d: BigInt = a.divisors.iter().product();
    let ok = report.pfaffian_abs == BigInt::from(1) && report.index == &d * &d;
    Ok((
        ok,
        json!({
            "factors": a.factors,
            "y_dim": ydim,
            "divisors": a.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "pfaffian_abs": report.pfaffian_abs.to_string(),
            "index": report.index.to_string(),
            "group_order": report.group_order,
            "pseudoreflections": report.pseudoreflections,
            "fixed_dim": report.fixed_dim,
            "x_type": dec.x_type.to_u64(),
            "y_type": dec.y_type.to_u64(),
        }),
    ))
}

/// A random positive definite symmetric block of size 1..=3 with entries
/// in `[-5, 5]`.
pub fn random_block(rng: &mut impl Rng) -> IntMatrix {
    loop {
        let g = rng.gen_range(1..=3);
        let mut b = IntMatrix::zeros(g, g);
        for i in 0..g {
            for j in i..g {
                let x = BigInt::from(rng.gen_range(-5i64..=5));
                b[(i, j)] = x.clone();
                b[(j, i)] = x;
            }
        }
        if b.to_rat().is_positive_definite() {
            return b;
        }
    }
}

/// Prime-power parts of a list of invariant factors, sorted.
pub fn primary_parts(divisors: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    for d in divisors {
        let mut n = d.clone();
        let mut p = BigInt::from(2);
        while n > BigInt::from(1) {
            let mut q = BigInt::from(1);
            while (&n % &p) == BigInt::from(0) {
                n /= &p;
                q *= &p;
            }
            if q > BigInt::from(1) {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort();
    out
}

fn box_kernel(opts: &Options) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut ok = true;
    let mut failures = Vec::new();
    for trial in 0..50 {
        let p = PolarizedTorus::from_block(&random_block(&mut rng))?;
        let q = PolarizedTorus::from_block(&random_block(&mut rng))?;
        let (kp, kq) = (kernel_group(&p)?, kernel_group(&q)?);
        let kb = kernel_group(&box_product(&p, &q)?)?;
        let mut merged = kp.invariant_factors();
        merged.extend(kq.invariant_factors());
        let same = kb.order() == kp.order() * kq.order()
            && primary_parts(&kb.invariant_factors()) == primary_parts(&merged);
        if !same {
            ok = false;
            failures.push(json!({ "trial": trial, "p": to_strings(p.form()), "q": to_strings(q.form()) }));
        }
    }
    Ok((ok, json!({ "seed": opts.seed, "trials": 50, "failures": failures })))
}

fn kernel_not_fixed(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut a_rows = Vec::new();
    for m in [2u32, 3] {
        let (grp, theta) = example_a(2, m)?;
        let trivial = action_on_kernel(&grp, &kernel_group(&scale(&theta, m as u64)?)?)?;
        ok &= !trivial;
        a_rows.push(json!({ "m": m, "trivial_action": trivial }));
    }
    let (grp, xi_c) = example_c()?;
    let avg = average_pullback(&grp, &theta_over(QuadOrder::Gaussian, 2))?;
    let k = kernel_group(&xi_c)?;
    let half = |v: [i64; 4]| rat_vec(&v, 2);
    let listed = k.order() == BigInt::from(4)
        && k.contains(&half([1, 0, 1, 0]))
        && k.contains(&half([0, 1, 0, 1]));
    let c_trivial = action_on_kernel(&grp, &k)?;
    let c2_trivial = action_on_kernel(&grp, &kernel_group(&scale(&xi_c, 2)?)?)?;
    ok &= avg.multiplier == BigInt::from(16) && listed && !c_trivial;
    Ok((
        ok,
        json!({
            "example_a": a_rows,
            "example_c": {
                "multiplier": avg.multiplier.to_string(),
                "kernel_order": k.order().to_string(),
                "kernel_generators_match": listed,
                "trivial_action": c_trivial,
                "trivial_action_on_2xi": c2_trivial,
            },
        }),
    ))
}

fn not_principal_scan(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in [2usize, 3] {
        let report = prop39_scan(n, 3)?;
        ok &= !report.principal_found();
        let mut types: Vec<Vec<u64>> = report.types().iter().map(|t| t.to_u64()).collect();
        types.sort();
        types.dedup();
        let distinct = types.len();
        types.truncate(12);
        rows.push(json!({
            "n": n,
            "sublattices": report.entries.len(),
            "tuples": report.tuples_examined,
            "principal_found": report.principal_found(),
            "distinct_types": distinct,
            "smallest_types": types,
        }));
    }
    let diag = IntMatrix::from_rows_i64(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
    let t = polarization_type(&restrict(&xi_g(2), &diag)?)?;
    ok &= t == [6u64][..];
    let axis = IntMatrix::from_rows_i64(&[&[1, 0], &[0, 0], &[0, 1], &[0, 0]]);
    let theta_axis = polarization_type(&restrict(&theta_g(2), &axis)?)?;
    Ok((ok, json!({ "scans": rows, "diagonal_type": t.to_u64(), "theta_axis_type": theta_axis.to_u64() })))
}

fn jacobian_cases(_: &Options) -> Result<(bool, Value)> {
    let bound = pseudoreflection_genus_bound();
    let c31 = case31_contradictions();
    let survivors = surviving_cases();
    let ok = rh_residual(2, 1, 2).value() == 2
        && rh_residual(3, 2, 2).value() == 0
        && bound.g_max == 3
        && bound.cases == [(3, 2), (3, 1), (3, 0), (2, 1), (2, 0)]
        && c31.all_eliminated()
        && c31.branches[0].witness == 16
        && c31.branches[0].bound == Some(4)
        && c31.branches[1].witness == -2
        && survivors == [(3, 2, 2, 0), (2, 1, 2, 2)];
    Ok((ok, json!({ "g_max": bound.g_max, "cases": bound.cases, "case31": c31, "survivors": survivors })))
}

fn degrees(_: &Options) -> Result<(bool, Value)> {
    let mut ok = true;
    let mut rows = Vec::new();
    for g in 1..=5 {
        let fact = BigInt::from(factorial(g));
        let t = self_intersection(&theta_g(g))?;
        let x = self_intersection(&xi_g(g))?;
        let xi_pf = pfaffian(xi_g(g).form())?.abs();
        let xi_types = polarization_type(&xi_g(g))?.product();
        ok &= t == fact && x == &fact * BigInt::from(g + 1) && xi_pf == xi_types;
        rows.push(json!({
            "g": g,
            "theta": t.to_string(),
            "xi": x.to_string(),
            "xi_pfaffian": xi_pf.to_string(),
            "xi_type_product": xi_types.to_string(),
        }));
    }
    Ok((ok, json!(rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_are_unique() {
        let mut ids = ids();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(find("lemma-xi-type").is_some());
        assert!(find("nope").is_none());
    }

    #[test]
    fn primary_parts_split_prime_powers() {
        let v = |xs: &[u64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(primary_parts(&v(&[6, 12])), v(&[2, 3, 3, 4]));
        assert_eq!(primary_parts(&v(&[1])), v(&[]));
    }

    #[test]
    fn quick_checks_pass() {
        let opts = Options { gmax: 3, factors: vec![1], ydim: None, seed: 0 };
        for id in ["lemma-xi-type", "example-c-order", "standard-build", "jacobian-cases", "degrees"] {
            let r = find(id).unwrap().run(&opts);
            assert_eq!(r.status, Status::Pass, "{id}: {}", r.witnesses);
        }
    }
}
