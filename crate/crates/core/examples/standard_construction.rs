//! Gluing ∏ E^{g_i} with a matching Y to get a principally polarized
//! abelian variety whose quotient by ∏ S_{g_i+1} is smooth.

use ppav_lab::standard::{build_standard, decompose_glued, minimal_y_dim, verify_glued};

fn main() -> ppav_lab::Result<()> {
    let factors: Vec<u64> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').map(|x| x.trim().parse().expect("factor list like 2,3")).collect())
        .unwrap_or_else(|| vec![2, 3]);
    let y_dim = minimal_y_dim(&factors);
    let a = build_standard(&factors, y_dim)?;
    let report = verify_glued(&a)?;
    let dec = decompose_glued(&a)?;

    println!("factors {factors:?}, dim Y = {y_dim}, kernel divisors {:?}", a.divisors.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("|Pf| = {}, overlattice index {}", report.pfaffian_abs, report.index);
    println!(
        "|G| = {}, pseudoreflections {}, fixed dimension {}",
        report.group_order, report.pseudoreflections, report.fixed_dim
    );
    println!("X type {}, Y type {}, [A : X × Y]² = {}", dec.x_type, dec.y_type, dec.quotient_order);
    println!("glued form:\n{}", a.form);
    Ok(())
}
