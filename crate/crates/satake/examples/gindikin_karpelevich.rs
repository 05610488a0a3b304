//! The Gindikin-Karpelevich product over positive coroots, its affine form
//! with coroot multiplicities, and rebasing by the homogeneity rule.
//!
//! Run with: cargo run --example gindikin_karpelevich

use satake::root_datum::RootDatum;
use satake::spherical_gk::{gk_shift, upsilon};
use satake::vpoly::Rational;
use satake::weyl::BaseCoweight;

fn main() {
    let a1 = RootDatum::from_entries(vec![vec![2]]).unwrap();
    let u = upsilon(&a1, 4).unwrap();
    println!("A1 Upsilon to depth 4:");
    for (offset, coeff) in u.element.terms() {
        println!("  offset {offset}: {coeff}");
    }

    let affine = RootDatum::from_entries(vec![vec![2, -2], vec![-2, 2]]).unwrap();
    let ua = upsilon(&affine, 4).unwrap();
    println!("affine A1 Upsilon to depth 4 (null-coroot factors included):");
    for (offset, coeff) in ua.element.terms() {
        println!("  offset {offset}: {coeff}");
    }
    println!("  omitted factors: {:?}", ua.omitted_factors);

    println!("evaluated at q = 3, the depth-4 window of the A1 product:");
    for (offset, value) in u.element.evaluate_at(Rational::from_integer(3)) {
        println!("  offset {offset}: {value}");
    }

    // homogeneity: G_lambda = q^<rho,lambda> e^lambda G_0 is pure rebasing
    let shifted = gk_shift(&BaseCoweight::new(vec![2]), &u);
    println!(
        "after the shift the base pairing vector is {:?}; coefficients are unchanged",
        shifted.element.base().pairings
    );
}
