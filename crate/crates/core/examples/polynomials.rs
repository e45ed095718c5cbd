//! Exact polynomial arithmetic in torus variables, including the division
//! that localization relies on.

use tautring::poly::{ratio, MultiPoly, PolyError};

fn main() {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);

    let f = &(&x * &x) - &(&y * &y);
    let g = &x - &y;
    println!("f = {f}");
    println!("f / (x1 - x2) = {}", f.exact_div(&g).unwrap());

    // a remainder is reported, not swallowed
    match (&f + &MultiPoly::constant(2, ratio(1, 2))).exact_div(&g) {
        Err(PolyError::NotDivisible { remainder, .. }) => {
            println!("remainder witness: {remainder}")
        }
        other => println!("unexpected: {other:?}"),
    }

    let h = (&x + &y).pow(3);
    let at = [ratio(1, 3), ratio(-2, 1)];
    println!("(x1 + x2)^3 = {h}");
    println!("at (1/3, -2): {}", h.evaluate(&at).unwrap());
}
