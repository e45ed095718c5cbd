//! Connected sum with `S^2 × S^2`: κ-classes of `e·p_I` pick up `2p_I` and
//! everything else is fixed. The conjugated variant negates `e`.

use tautring::hom::{conjugated_hom, connected_sum_hom};
use tautring::manifolds::{product, sphere};
use tautring::Notation;

fn main() {
    let m = product(&sphere(1).unwrap(), &sphere(1).unwrap()).unwrap();
    let g = connected_sum_hom(&m, 8).unwrap();
    print!("{}", g.render(Notation::Text));
    println!();
    print!("{}", conjugated_hom(&g).unwrap().render(Notation::Latex));
}
