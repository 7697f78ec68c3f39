//! Units of Z[i] and Z[ω] and their rational representations on the
//! lattice Z^2 = Z ⊕ Zω.

use ppav_lab::tori::{primitive_unit, OrderMatrix, QuadOrder, SixthRoot, Torus};

fn main() -> ppav_lab::Result<()> {
    for order in [QuadOrder::RationalIntegers, QuadOrder::Gaussian, QuadOrder::Eisenstein] {
        let units: Vec<String> = order.units().iter().map(ToString::to_string).collect();
        println!("{order}: units {units:?}");
    }
    for m in [2, 3, 4, 6] {
        let (order, zeta) = primitive_unit(m, SixthRoot::default())?;
        let rep = OrderMatrix::scalar(order, 1, zeta).rational_rep();
        println!("order-{m} unit {zeta} in {order}: rational rep\n{rep}");
    }

    let torus = Torus::new(QuadOrder::Eisenstein, 2)?;
    println!("complex structure on {torus:?}:\n{}", torus.complex_structure());

    let g = OrderMatrix::from_pairs(QuadOrder::Gaussian, 2, &[(-1, 0), (1, 1), (0, 0), (1, 0)])?;
    println!("A =\n{g}\ndet A = {}, rank(A − I) = {}", g.det(), g.analytic_rank_minus_id());
    Ok(())
}
