//! Smith normal form, Hermite bases and Pfaffians of integral forms.

use ppav_lab::linalg::{hnf_basis, invariant_factors, pfaffian, saturate, snf, IntMatrix};
use ppav_lab::polarization::xi_g;

fn main() -> ppav_lab::Result<()> {
    let m = IntMatrix::from_rows_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let s = snf(&m);
    println!("M =\n{m}");
    println!("D = U·M·V =\n{}", s.d);
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    println!("invariant factors: {:?}", invariant_factors(&m).iter().map(ToString::to_string).collect::<Vec<_>>());

    // a redundant generating set of 2Z ⊕ Z
    let gens = IntMatrix::from_rows_i64(&[&[2, 4, 6], &[0, 1, 1]]).to_rat();
    println!("HNF basis of the span =\n{}", hnf_basis(&gens)?);

    // a non-saturated rank-one lattice in Z^2
    let l = IntMatrix::from_rows_i64(&[&[2], &[4]]);
    println!("saturation of span(2,4) =\n{}", saturate(&l)?);

    for g in 1..=4 {
        let form = xi_g(g).form().clone();
        println!("Pf(Ξ_{g}) = {}, det = {}", pfaffian(&form)?, form.det());
    }
    Ok(())
}
