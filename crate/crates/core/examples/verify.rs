//! Replays every reference identity and prints one line per check.

use tautring::verify::run_all;

fn main() {
    let checks = run_all(0);
    for c in &checks {
        println!("{}", c.line());
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} passed, {failed} failed", checks.len() - failed);
}
