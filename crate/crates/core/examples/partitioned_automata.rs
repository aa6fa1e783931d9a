//! Non-deterministic asynchronous machines: filter automata, partitioned
//! automata, union, projection, and the bridge back to a deterministic
//! machine.

use multitape::machine::Machine;
use multitape::nfa::Nfa;
use multitape::nondet::{bridge, dfaa_to_saa, exists_saa, faa_to_dfaa, union_saa, Faa, Saa};
use multitape::oracle::{language_set, BoundedDomain};
use multitape::quasi::SemiSortedAsync;
use multitape::words::{Alphabet, PaddedSymbol, Symbol, TapeSet};

/// `(x^n, x^(ratio·n))` read `1 : ratio`, or the mirror image.
fn ratio(a: &Alphabet, left: usize, right: usize) -> SemiSortedAsync {
    let x = Some(Symbol::Letter(a.letter("x").unwrap()));
    let pad = Some(Symbol::Pad);
    let mut nfa = Nfa::new();
    let mut class = Vec::new();
    let mut chain = Vec::new();
    for i in 0..left + right {
        chain.push(nfa.add_state(format!("c{i}")));
        class.push(if i < left { 0 } else { 1 });
    }
    let r = nfa.add_state("r");
    let f = nfa.add_state("f");
    class.extend([1, 0]);
    nfa.set_start(chain[0]);
    nfa.set_accept(f, true);
    for i in 0..chain.len() {
        nfa.add_arrow(chain[i], x, chain[(i + 1) % chain.len()]);
    }
    nfa.add_arrow(chain[0], pad, r);
    nfa.add_arrow(r, pad, f);
    SemiSortedAsync::new(2, a.clone(), nfa, class).unwrap()
}

fn main() -> multitape::Result<()> {
    let a = Alphabet::new(["x"])?;
    let both = union_saa(&Saa::from(&ratio(&a, 1, 2)), &Saa::from(&ratio(&a, 2, 1)))?;
    let d = BoundedDomain::uniform(a.clone(), 2, 4);
    let shown: Vec<String> = language_set(&Machine::from(both.clone()), &d)?
        .iter()
        .map(|t| a.render_tuple(t))
        .collect();
    println!("union accepts {}", shown.join(" "));

    let firsts = exists_saa(&both, 1)?;
    let lens: Vec<usize> = (0..7)
        .filter(|&n| firsts.accepts(&a.parse_tuple(&"x".repeat(n)).unwrap()).unwrap())
        .collect();
    println!("first components have lengths {lens:?} among 0..7");

    let b = bridge(&both);
    println!(
        "bridge: {} tapes, {} states, letters {}",
        b.tapes(),
        b.num_states(),
        b.alphabet().tokens().join(" ")
    );

    let mut f = Faa::new(2, a.clone())?;
    let s = f.add_state("s");
    f.set_start(s);
    f.set_accept(s, true);
    let xx = PaddedSymbol::new(vec![Symbol::Letter(a.letter("x")?); 2])?;
    let filters = [TapeSet::single(0), TapeSet::single(1), TapeSet::full(2)];
    f.add_transition(s, xx, [s], filters)?;
    let dfaa = faa_to_dfaa(&f);
    println!("filter automaton: {} states, deterministic form {}", f.num_states(), dfaa.as_faa().num_states());
    let saa = dfaa_to_saa(&dfaa);
    for text in ["xxx,x", "x,", ",x"] {
        let t = a.parse_tuple(text)?;
        println!("{} accepted: {}", a.render_tuple(&t), saa.accepts(&t)?);
    }
    Ok(())
}
