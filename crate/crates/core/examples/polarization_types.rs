//! Types and kernel groups of the polarizations Θ_g and Ξ_g.

use ppav_lab::polarization::{box_product, kernel_group, polarization_type, scale, self_intersection, theta_g, xi_g};

fn main() -> ppav_lab::Result<()> {
    for g in 1..=5 {
        let xi = xi_g(g);
        let k = kernel_group(&xi)?;
        println!(
            "Ξ_{g}: type {}, |K| = {}, degree {}",
            polarization_type(&xi)?,
            k.order(),
            self_intersection(&xi)?
        );
        for (x, d) in k.generators().iter().zip(k.orders()) {
            let coords: Vec<String> = x.iter().map(ToString::to_string).collect();
            println!("    generator of order {d}: ({})", coords.join(", "));
        }
    }

    let three_theta = scale(&theta_g(2), 3)?;
    let k = kernel_group(&three_theta)?;
    println!("3Θ_2: type {}, Weil pairing on generators:", polarization_type(&three_theta)?);
    for x in k.generators() {
        let row: Vec<String> = k.generators().iter().map(|y| k.pairing(x, y).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("    [{}]", row.join(", "));
    }

    let product = box_product(&xi_g(1), &xi_g(2))?;
    println!("Ξ_1 ⊞ Ξ_2: type {}", polarization_type(&product)?);
    Ok(())
}
