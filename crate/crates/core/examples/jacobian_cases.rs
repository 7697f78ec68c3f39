//! Riemann–Hurwitz bookkeeping for Jacobians with a smooth quotient.

use ppav_lab::jacobian::{case_analysis, pseudoreflection_genus_bound, ramification_realization, rh_residual};

fn main() {
    let bound = pseudoreflection_genus_bound();
    println!("feasible (g, |S|, R) with g' = g − 1: {:?}", bound.feasible);
    println!("g ≤ {}, cases {:?}", bound.g_max, bound.cases);
    for row in case_analysis() {
        println!(
            "  (g, g') = ({}, {}), |G| = {:?}, R = {:?}: {:?}, {}",
            row.g, row.g_prime, row.group_order, row.r, row.status, row.reason
        );
    }
    let r = rh_residual(2, 1, 2);
    println!("genus 2 over an elliptic curve: R = {}, indices {:?}", r.value(), ramification_realization(2, r.value() as u64));
}
