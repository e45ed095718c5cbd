//! Hand-written fixed-point data in the JSON file format: a valid `S^4`,
//! the same data with a broken sign, and a non-isolated point.

use tautring::localization::kappa_pullback;
use tautring::manifolds::{from_json, to_json};
use tautring::parse::parse_class;

const S4: &str = r#"{
  "name": "S^4 by hand",
  "rank": 2,
  "fixed_points": [
    {"label": "north", "weights": [[1, 0], [0, 1]], "sign": 1},
    {"label": "south", "weights": [[1, 0], [0, 1]], "sign": -1}
  ],
  "m0": 0,
  "m1": 1
}"#;

fn main() {
    let s4 = from_json(S4).unwrap();
    let c = parse_class("e*p1", 2).unwrap();
    println!(
        "{}: e*p1 |-> {}",
        s4.name(),
        kappa_pullback(&s4, &c).unwrap()
    );

    // both points positively oriented: not the fixed data of a closed manifold
    let broken = from_json(&S4.replace("\"sign\": -1", "\"sign\": 1")).unwrap();
    for class in ["e", "p1^2"] {
        match kappa_pullback(&broken, &parse_class(class, 2).unwrap()) {
            Ok(q) => println!("broken: {class} |-> {q}"),
            Err(e) => println!("broken: {class}: {e}"),
        }
    }

    let flat = from_json(&S4.replace(
        "[[1, 0], [0, 1]], \"sign\": -1",
        "[[1, 0], [0, 0]], \"sign\": -1",
    ))
    .unwrap();
    if let Err(e) = kappa_pullback(&flat, &c) {
        println!("flat: {e}");
    }

    println!("\n{}", to_json(&s4));
}
