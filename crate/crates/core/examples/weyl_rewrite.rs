//! Rewriting Weyl-invariant polynomials in terms of `e = x1⋯xn` and the
//! Pontryagin classes `p_i = e_i(x1², …, xn²)`.

use tautring::symmetric::{to_pe_basis, WeylContext};
use tautring::MultiPoly;

fn main() {
    let ctx = WeylContext::new(2);
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let sq = |p: &MultiPoly| p * p;

    let candidates = [
        ("x1^4 + x2^4", &sq(&sq(&x)) + &sq(&sq(&y))),
        ("x1^3*x2^3 + x1*x2", &(&x * &y).pow(3) + &(&x * &y)),
        ("x1^2 + x1*x2", &sq(&x) + &(&x * &y)),
    ];
    for (label, f) in candidates {
        match to_pe_basis(&f, ctx) {
            Ok(c) => println!("{label:<20} = {c}"),
            Err(e) => println!("{label:<20} : {e}"),
        }
    }
}
