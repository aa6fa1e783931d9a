use crate::quasi::section;
use crate::sync::SyncAutomaton;

use super::{Multiplier, StructureCandidate, Verdict, Witness};

/// `L` is nonempty.
pub fn check_axiom1(c: &StructureCandidate) -> Verdict {
    if c.acceptor().is_empty() {
        Verdict::Violated(Witness::new(1, None, Vec::new()))
    } else {
        Verdict::Holds
    }
}

/// Both projections of every `L_x` (and `L_ε`) lie in `L`. The witness is
/// the least offending word together with its least partner, as a pair of
/// `L_x`.
pub fn check_axiom2(c: &StructureCandidate) -> Verdict {
    let outside = c.acceptor().complement();
    for key in c.keys() {
        for tape in 0..2 {
            let proj = if tape == 0 { c.domain(key) } else { c.range(key) };
            let bad = proj.intersect(&outside).expect("same alphabet");
            if let Some(w) = bad.least_word() {
                let partner = section(c.multiplier(key), tape, &w)
                    .expect("two-tape multiplier")
                    .least_word()
                    .expect("w lies in the projection");
                let pair = if tape == 0 { vec![w, partner] } else { vec![partner, w] };
                return Verdict::Violated(Witness::new(2, Some(key), pair));
            }
        }
    }
    Verdict::Holds
}

/// Every word of `L` has a right partner under each `L_x`.
pub fn check_axiom6(c: &StructureCandidate) -> Verdict {
    covered(c, 6, |c, x| c.domain(x))
}

/// Every word of `L` has a left partner under each `L_x`.
pub fn check_axiom9(c: &StructureCandidate) -> Verdict {
    covered(c, 9, |c, x| c.range(x))
}

fn covered(
    c: &StructureCandidate,
    axiom: u8,
    proj: impl Fn(&StructureCandidate, Multiplier) -> &SyncAutomaton,
) -> Verdict {
    for l in c.alphabet().letters() {
        let key = Multiplier::Letter(l);
        let missing = c
            .acceptor()
            .intersect(&proj(c, key).complement())
            .expect("same alphabet");
        if let Some(u) = missing.least_word() {
            return Verdict::Violated(Witness::new(axiom, Some(key), vec![u]));
        }
    }
    Verdict::Holds
}
