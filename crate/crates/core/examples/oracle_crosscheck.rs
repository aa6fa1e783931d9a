//! Comparing every simulator against the brute-force oracle on a bounded
//! domain.

use std::path::Path;

use multitape::format::load_machine;
use multitape::oracle::{language_set, languages_equal, oracle_accepts, BoundedDomain};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["doubling.mta", "doubling-sorted.mta", "shift.faa.mta", "ends.saa.mta", "prefix.mta"] {
        let m = load_machine(&dir.join(name)).expect("fixture loads");
        let d = BoundedDomain::uniform(m.alphabet().clone(), m.tapes(), 3);
        let tuples = d.tuples();
        let agree = tuples
            .iter()
            .filter(|t| m.accepts(t).unwrap() == oracle_accepts(&m, t).unwrap())
            .count();
        let accepted = language_set(&m, &d).unwrap().len();
        println!("{name:22} {} machine: {agree}/{} agree, {accepted} accepted", m.kind(), tuples.len());
    }

    let a = load_machine(&dir.join("doubling.mta")).unwrap();
    let b = load_machine(&dir.join("halving.mta")).unwrap();
    let d = BoundedDomain::uniform(a.alphabet().clone(), 2, 4);
    match languages_equal(&a, &b, &d).unwrap() {
        None => println!("doubling and halving agree"),
        Some(t) => println!("doubling and halving first differ at {}", a.alphabet().render_tuple(&t)),
    }
}
