//! Weyl group balls, faithful normal forms, stabilizer Poincare polynomials,
//! and the length filter that bounds Iwahori contributions.
//!
//! Run with: cargo run --example weyl_balls

use satake::root_datum::{CorootVector, RootDatum};
use satake::weyl::{BaseCoweight, WeylGroup};

fn main() {
    let affine = RootDatum::from_entries(vec![vec![2, -2], vec![-2, 2]]).unwrap();
    let weyl = WeylGroup::new(&affine);

    println!("affine A1 ball of length <= 4 (infinite dihedral group):");
    for w in weyl.ball(4) {
        println!("  word {:?} length {} offset {}", w.word(), w.length(), w.beta());
    }

    let a2 = RootDatum::from_entries(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let weyl2 = WeylGroup::new(&a2);
    println!("A2 has {} elements in total", weyl2.full_group().unwrap().len());
    let w0 = weyl2.element_from_word(&[0, 1, 0]).unwrap();
    println!("reduced words of the longest element: {:?}", weyl2.reduced_words(&w0));

    for pairings in [vec![1, 1], vec![1, 0], vec![0, 0]] {
        let poly = weyl2.stabilizer_poincare(&BaseCoweight::new(pairings.clone())).unwrap();
        println!("A2 stabilizer Poincare polynomial of {pairings:?}: {poly}");
    }

    // candidate Weyl elements for an offset of height 1: length <= 2
    let lambda = BaseCoweight::new(vec![2]);
    let a1 = RootDatum::from_entries(vec![vec![2]]).unwrap();
    let weyl1 = WeylGroup::new(&a1);
    let omega = weyl1.omega_filter(&lambda, &CorootVector(vec![1])).unwrap();
    println!("rank-1 length filter for an offset of height 1: {} elements", omega.len());
}
