//! Validate generalized Cartan matrices and classify them blockwise.
//!
//! Run with: cargo run --example classify_gcm

use satake::root_datum::{Gcm, RootDatum};

fn show(name: &str, entries: Vec<Vec<i64>>) {
    match Gcm::new(entries) {
        Ok(gcm) => {
            let datum = RootDatum::new(gcm);
            for block in &datum.classification().blocks {
                println!("{name}: indices {:?} are {:?}", block.indices, block.kind);
            }
        }
        Err(e) => println!("{name}: rejected ({e})"),
    }
}

fn main() {
    show("A1         ", vec![vec![2]]);
    show("A2         ", vec![vec![2, -1], vec![-1, 2]]);
    show("affine A1  ", vec![vec![2, -2], vec![-2, 2]]);
    show("rank-2 wild", vec![vec![2, -3], vec![-3, 2]]);
    show("G2         ", vec![vec![2, -1], vec![-3, 2]]);
    // a decomposable matrix classifies block by block
    show(
        "A1 x affine",
        vec![vec![2, 0, 0], vec![0, 2, -2], vec![0, -2, 2]],
    );
    // the defining conditions are enforced
    show("asymmetric zero", vec![vec![2, -1], vec![0, 2]]);
    show("bad diagonal", vec![vec![3]]);
}
