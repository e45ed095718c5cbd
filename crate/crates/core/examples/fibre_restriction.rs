//! Restricting the `S^4 × S^4` map to a single fibre `N`: positive-degree
//! κ-classes vanish there, leaving the classes of `TN`.

use tautring::hom::{connected_sum_hom, fiber_restriction};
use tautring::manifolds::builtin;
use tautring::Notation;

fn main() {
    let g = connected_sum_hom(&builtin("s4xs4").unwrap(), 8).unwrap();
    let table = fiber_restriction(&g);
    print!("{}", table.render(Notation::Text));
}
