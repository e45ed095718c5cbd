//! The comparison map for `CP² # N`: κ-rows carry the `q_{a,b}` polynomials,
//! and point classes cannot be transported because the data at the second
//! fixed point is not invariant in the chart at the first.

use tautring::hom::connected_sum_hom;
use tautring::manifolds::projective_space;
use tautring::{Notation, PointClassStatus};

fn main() {
    let g = connected_sum_hom(&projective_space(2).unwrap(), 8).unwrap();
    print!("{}", g.render(Notation::Text));
    if let PointClassStatus::Unavailable(why) = &g.point_class_status {
        println!("\nwhy: {why}");
    }
}
