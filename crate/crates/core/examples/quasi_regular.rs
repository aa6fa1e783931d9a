//! The doubling relation `(x^n, x^2n)`, which no synchronous machine
//! accepts, as sorted and semisorted asynchronous machines.

use std::path::Path;

use multitape::format::{load_machine, print_machine};
use multitape::machine::Machine;
use multitape::quasi::{complement_sorted, exists_two_tape, semisorted_to_sorted};

fn main() -> multitape::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/doubling.mta");
    let Machine::SemiSorted(m) = load_machine(&path).expect("fixture loads") else {
        unreachable!("fixture is semisorted")
    };
    let a = m.alphabet().clone();
    let trace = m.run(&a.parse_tuple("x,xx")?)?;
    let tapes: Vec<String> = trace.steps.iter().map(|s| (s.tape + 1).to_string()).collect();
    println!("run on (x, xx) reads tapes {} and accepts: {}", tapes.join(" "), trace.accepted());
    println!("letters read in a row from one tape: {:?}", m.boundedness());

    let sorted = semisorted_to_sorted(&m);
    println!("sorted form has {} states", sorted.num_states());
    let not = complement_sorted(&sorted);
    for text in ["x,xx", "x,x", "xx,x"] {
        let t = a.parse_tuple(text)?;
        println!("complement accepts {}: {}", a.render_tuple(&t), not.accepts(&t)?);
    }

    let seconds = exists_two_tape(&m, 0)?.trim();
    println!("second components form a regular language:\n{}", print_machine(&seconds.into()));
    Ok(())
}
