//! The three families of automorphism groups and their invariants.

use ppav_lab::groups::{action_report, example_a, example_b, example_c, ns_fixed};

fn main() -> ppav_lab::Result<()> {
    let cases = [
        ("C_3^2 ⋊ S_2 on E_ω^2", example_a(2, 3)?),
        ("C_4^3 ⋊ S_3 on E_i^3", example_a(3, 4)?),
        ("S_4 on {x_1+…+x_4 = 0}", example_b(3)?),
        ("order 16 group on E_i^2", example_c()?),
    ];
    for (label, (group, p)) in &cases {
        let r = action_report(group, p)?;
        println!("{label}");
        println!(
            "    |G| = {}, pseudoreflections {}, generated by them: {}",
            r.order, r.pseudoreflections, r.generated_by_pseudoreflections
        );
        println!("    rank NS^G = {}, fixed dimension {}", r.ns_fixed_rank, r.fixed_dim);
        println!("    G acts trivially on K: {}", r.k_action_trivial);
    }
    let (c, xi_c) = example_c()?;
    println!("invariant form for the order 16 group:\n{}", xi_c.form());
    println!("NS^G generator:\n{}", ns_fixed(&c).basis[0]);
    Ok(())
}
