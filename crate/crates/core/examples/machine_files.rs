//! Reading, validating and printing machine files.

use multitape::format::{parse_machine, print_machine};

const FILE: &str = "
# pairs (x^n, x^2n), tracking finished tapes
kind: sorted
tapes: 2
alphabet: x
state a start sort=1:{}
state b sort=2:{}
state c sort=2:{}
state d sort=2:{1}
state F accept sort=final
trans a x b
trans b x c
trans c x a
trans a $ d
trans d $ F
";

fn main() {
    let m = parse_machine(FILE).expect("valid machine");
    println!("{} machine with {} tapes and {} states", m.kind(), m.tapes(), m.num_states());
    let printed = print_machine(&m);
    print!("{printed}");
    assert_eq!(print_machine(&parse_machine(&printed).unwrap()), printed);

    let broken = FILE.replace("trans c x a", "trans c y a");
    match parse_machine(&broken) {
        Ok(_) => unreachable!("the letter y is not declared"),
        Err(e) => println!("diagnostic: {e}"),
    }
    let broken = FILE.replace("state d sort=2:{1}", "state d sort=2:{}");
    println!("diagnostic: {}", parse_machine(&broken).unwrap_err());
}
