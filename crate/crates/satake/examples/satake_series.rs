//! Normalized Satake series: exact finite-type values, Weyl invariance, and
//! windowed affine truncations.
//!
//! Run with: cargo run --example satake_series

use satake::root_datum::RootDatum;
use satake::spherical_gk::{satake_exact, satake_normalized, TruncatedSeries};
use satake::weyl::BaseCoweight;

fn print_series(label: &str, s: &TruncatedSeries) {
    println!("{label} (depth {}, exact {}):", s.depth, s.exact);
    for (offset, coeff) in s.element.terms() {
        println!("  offset {offset}: {coeff}");
    }
    if !s.omitted_factors.is_empty() {
        println!("  omitted factors: {:?}", s.omitted_factors);
    }
}

fn main() {
    let a1 = RootDatum::from_entries(vec![vec![2]]).unwrap();
    let s = satake_exact(&a1, &BaseCoweight::new(vec![2])).unwrap();
    print_series("A1, lambda = alpha_vee", &s);
    println!("(multiply by q^<rho,lambda> e^lambda to read off q e^a + (q-1) + q e^-a)");

    let a2 = RootDatum::from_entries(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    print_series(
        "A2, regular lambda = (1,1)",
        &satake_exact(&a2, &BaseCoweight::new(vec![1, 1])).unwrap(),
    );
    print_series(
        "A2, singular lambda = (1,0): the minuscule orbit",
        &satake_exact(&a2, &BaseCoweight::new(vec![1, 0])).unwrap(),
    );

    let affine = RootDatum::from_entries(vec![vec![2, -2], vec![-2, 2]]).unwrap();
    print_series(
        "affine A1, lambda = (1,1) on a depth-3 window",
        &satake_normalized(&affine, &BaseCoweight::new(vec![1, 1]), 3, 8).unwrap(),
    );
}
