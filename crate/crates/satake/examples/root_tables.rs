//! Positive roots with multiplicities, including imaginary roots of the
//! affine A1 system, and the truncated denominator identity that certifies
//! the Peterson multiplicities.
//!
//! Run with: cargo run --example root_tables

use satake::root_datum::{truncated_denominator_check, RootDatum};

fn main() {
    let a2 = RootDatum::from_entries(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    println!("A2 positive roots up to height 2:");
    for row in &a2.root_table(2).unwrap().rows {
        println!("  {} mult {} real {}", row.root, row.mult, row.real);
    }

    let affine = RootDatum::from_entries(vec![vec![2, -2], vec![-2, 2]]).unwrap();
    println!("affine A1 positive roots up to height 6:");
    for row in &affine.root_table(6).unwrap().rows {
        let kind = if row.real { "real" } else { "imaginary" };
        println!("  {} mult {} ({kind})", row.root, row.mult);
    }

    // The multiplicities are produced by the Peterson recursion; the
    // truncated denominator identity re-derives them independently.
    for depth in 2..=6 {
        let ok = truncated_denominator_check(&affine, depth).unwrap();
        println!("denominator identity on the height-<={depth} window: {ok}");
    }
}
