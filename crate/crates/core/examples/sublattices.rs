//! Restricting Ξ_n to abelian subvarieties of E^n and scanning for a
//! principal restriction.

use ppav_lab::linalg::IntMatrix;
use ppav_lab::polarization::{complement, polarization_type, prop39_scan, restrict, xi_g};

fn main() -> ppav_lab::Result<()> {
    let xi = xi_g(2);
    // columns e_1 + e_2 and τ(e_1 + e_2): the diagonal curve in E^2
    let diagonal = IntMatrix::from_rows_i64(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
    println!("Ξ_2 on the diagonal: type {}", polarization_type(&restrict(&xi, &diagonal)?)?);
    let comp = complement(&xi, &diagonal)?;
    println!("complement lattice:\n{comp}");
    println!("Ξ_2 on the complement: type {}", polarization_type(&restrict(&xi, &comp)?)?);

    for n in [2, 3] {
        let report = prop39_scan(n, 3)?;
        println!(
            "E^{n}, height 3: {} stable sublattices, principal restriction found: {}",
            report.entries.len(),
            report.principal_found()
        );
    }
    Ok(())
}
