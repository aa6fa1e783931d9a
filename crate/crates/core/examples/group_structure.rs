//! Checking a candidate asynchronous automatic structure for the integers:
//! normal forms `a^n` and `A^n` with multipliers that step along the line.

use std::path::Path;

use multitape::format::load_bundle;
use multitape::group::{phi_step, run_all, BoundParams, Budget, SignedLetter};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/groups");
    let c = load_bundle(&dir.join("integers.bundle")).expect("bundle loads");
    let a = c.alphabet().clone();

    let up = SignedLetter::pos(a.letter("a").unwrap());
    let mut w = a.parse_word("AA").unwrap();
    let mut path = vec![a.render_word(&w)];
    for _ in 0..4 {
        w = phi_step(&c, &w, up).unwrap().expect("every word has a successor");
        path.push(a.render_word(&w));
    }
    println!("multiplying by a: {}", path.join(" -> "));
    println!("{:?}", BoundParams::of(&c));

    let report = run_all(&c, Budget::new(4, 5_000));
    print!("{}", report.render(&a));

    let broken = load_bundle(&dir.join("frozen.bundle")).expect("bundle loads");
    let report = run_all(&broken, Budget::new(3, 1_000));
    println!("frozen multiplier: {}", report.overall);
}
