//! Integrates classes over the fibre of a `CP²` bundle by summing over the
//! three torus-fixed points, and reads off the polynomials `q_{a,b}`.

use tautring::localization::{fibre_integrate, kappa_pullback};
use tautring::manifolds::projective_space;
use tautring::{CharClass, Notation};

fn main() {
    let cp2 = projective_space(2).unwrap();
    let e = CharClass::euler(2);
    let p1 = CharClass::pontryagin(2, 1);

    for total in 1..=4 {
        for a in (0..=total).rev() {
            let b = total - a;
            let c = &e.pow(a) * &p1.pow(b);
            let q = kappa_pullback(&cp2, &c).unwrap();
            println!(
                "q_{{{a},{b}}} = {:<48} {}",
                q.to_string(),
                q.render(Notation::Latex)
            );
        }
    }

    let integral = fibre_integrate(&cp2, &(&e * &p1)).unwrap();
    println!("\nintegral of e*p1 in torus variables: {integral}");
}
