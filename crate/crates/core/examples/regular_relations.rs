//! Synchronous two-tape machines: boolean operations, projection and
//! pumping on the prefix relation.

use multitape::format::parse_machine;
use multitape::machine::Machine;
use multitape::sync::Block;

const PREFIX: &str = "
kind: sync
tapes: 2
alphabet: a b
state same start accept
state rest accept
trans same (a,a) same
trans same (b,b) same
trans same ($,a) rest
trans same ($,b) rest
trans rest ($,a) rest
trans rest ($,b) rest
";

fn main() -> multitape::Result<()> {
    let Machine::Sync(prefix) = parse_machine(PREFIX).expect("valid machine") else {
        unreachable!("declared as sync")
    };
    let a = prefix.alphabet().clone();
    for text in ["ab,abba", "ab,ba", ",b"] {
        let t = a.parse_tuple(text)?;
        println!("{} prefix of the other: {}", a.render_tuple(&t), prefix.accepts(&t)?);
    }

    let not_prefix = prefix.complement();
    let t = a.parse_tuple("ab,ba")?;
    println!("complement accepts {}: {}", a.render_tuple(&t), not_prefix.accepts(&t)?);
    println!("prefix and its complement overlap: {}", !prefix.intersect(&not_prefix)?.is_empty());

    let shorter = prefix.project_exists(1)?;
    println!("projection onto tape 1 is everything: {}", shorter.complement().is_empty());

    let t = a.parse_tuple("ab,abba")?;
    let p = prefix.pump(&t)?;
    for (tape, block) in p.blocks.iter().enumerate() {
        let shown = match block {
            Block::Letters(w) => a.render_word(w),
            Block::Pad(n) => format!("{n} end markers"),
        };
        println!("tape {} pumps {}", tape + 1, shown);
    }
    for r in 1..=3 {
        println!("r={r}: {}", a.render_tuple(&p.pumped(r)));
    }
    Ok(())
}
