//! Demazure-Lusztig operators: the monomial rule, the quadratic relation,
//! braid independence, and the normalized integral they compute.
//!
//! Run with: cargo run --example demazure_lusztig

use satake::dl_algebra::{bc_series, hecke_quadratic_check, integral_i, AlgebraElement, SeriesKind};
use satake::root_datum::RootDatum;
use satake::vpoly::Rational;
use satake::weyl::{BaseCoweight, WeylGroup};

fn print_element(label: &str, f: &AlgebraElement) {
    println!("{label}:");
    for (offset, coeff) in f.terms() {
        println!("  e^(lambda - {offset}) * ({coeff})");
    }
}

fn main() {
    let a1 = RootDatum::from_entries(vec![vec![2]]).unwrap();
    let lambda = BaseCoweight::new(vec![2]);
    let unit = AlgebraElement::unit(lambda.clone());

    // b + c telescopes to the constant v at every truncation depth
    let b = bc_series(&a1, SeriesKind::B, 0, 4);
    let c = bc_series(&a1, SeriesKind::C, 0, 4);
    print_element("b(a) + c(a), truncated at depth 4", &b.add(&c));

    let tf = unit.apply_t_i(&a1, 0);
    print_element("T_0 e^lambda for <alpha, lambda> = 2", &tf);
    println!("quadratic relation T^2 = (v-1)T + v holds: {}", hecke_quadratic_check(&a1, 0, &tf));

    let a2 = RootDatum::from_entries(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let rho = BaseCoweight::new(vec![1, 1]);
    let left = AlgebraElement::unit(rho.clone()).apply_t_word(&a2, &[0, 1, 0]).unwrap();
    let right = AlgebraElement::unit(rho.clone()).apply_t_word(&a2, &[1, 0, 1]).unwrap();
    println!("braid independence on A2: {}", left == right);
    print_element("T_w0 e^rho on A2", &left);

    // the normalized integral and its exact values at q = 2
    let weyl = WeylGroup::new(&a2);
    let w0 = weyl.element_from_word(&[0, 1, 0]).unwrap();
    let piece = integral_i(&a2, &w0, &rho).unwrap();
    println!("values at q = 2:");
    for (offset, value) in piece.evaluate_at(Rational::from_integer(2)) {
        println!("  offset {offset}: {value}");
    }
}
