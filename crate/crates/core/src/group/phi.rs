use crate::error::{Error, Result};
use crate::quasi::section;
use crate::words::Word;

use super::{Multiplier, SignedLetter, StructureCandidate, Witness};

/// Result of following multiplier partners along a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainOutcome {
    /// The chain reached its end; whether the last word is `L_ε`-related to
    /// the target.
    Related(bool),
    /// Some step had no usable partner, which refutes Axiom 2, 6 or 9.
    Broken(Witness),
}

/// The class `[u]` of a prefix `u` of `L`, pinned to a word of `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassHandle {
    pub prefix: Word,
    /// The least `z` with `prefix · z` in `L`.
    pub completion: Word,
    /// A word of `L` in the class, reached from `prefix · completion` by the
    /// inverse letters of `completion`.
    pub representative: Word,
    /// Every word visited on the way, starting at `prefix · completion`.
    pub trail: Vec<Word>,
}

/// The least partner of `v` under `φ_x`: the least `v'` with `(v, v')` in
/// `L_x`, or for an inverse letter the least `v'` with `(v', v)` in `L_x`.
/// `None` means no partner exists at all.
pub fn phi_step(c: &StructureCandidate, v: &Word, x: SignedLetter) -> Result<Option<Word>> {
    if !c.in_language(v) {
        return Err(Error::Precondition(format!(
            "{} is not in the language of the word acceptor",
            c.alphabet().render_word(v)
        )));
    }
    Ok(partner(c, v, x))
}

pub(crate) fn partner(c: &StructureCandidate, v: &Word, x: SignedLetter) -> Option<Word> {
    let key = (v.clone(), x);
    if let Some(hit) = c.partners.borrow().get(&key) {
        return hit.clone();
    }
    let fixed = if x.inverse { 1 } else { 0 };
    let found = section(c.multiplier(Multiplier::Letter(x.letter)), fixed, v)
        .expect("two-tape multiplier")
        .least_word();
    c.partners.borrow_mut().insert(key, found.clone());
    found
}

/// Follows least partners from `v` along `w`. Every word on the trail,
/// `v` included, must lie in `L`.
pub(crate) fn walk(
    c: &StructureCandidate,
    v: &Word,
    w: &[SignedLetter],
) -> std::result::Result<Vec<Word>, Witness> {
    let mut trail = vec![v.clone()];
    for &x in w {
        let cur = trail.last().expect("trail starts nonempty");
        let key = Some(Multiplier::Letter(x.letter));
        match partner(c, cur, x) {
            None => {
                let axiom = if x.inverse { 9 } else { 6 };
                return Err(Witness::new(axiom, key, vec![cur.clone()]));
            }
            Some(next) => {
                if !c.in_language(&next) {
                    let pair = if x.inverse {
                        vec![next, cur.clone()]
                    } else {
                        vec![cur.clone(), next]
                    };
                    return Err(Witness::new(2, key, pair));
                }
                trail.push(next);
            }
        }
    }
    Ok(trail)
}

/// Decides `[v]φ_w = [target]` by following least partners from `v`.
pub fn eval_phi_chain(
    c: &StructureCandidate,
    v: &Word,
    w: &[SignedLetter],
    target: &Word,
) -> Result<ChainOutcome> {
    for word in [v, target] {
        if !c.in_language(word) {
            return Err(Error::Precondition(format!(
                "{} is not in the language of the word acceptor",
                c.alphabet().render_word(word)
            )));
        }
    }
    Ok(match walk(c, v, w) {
        Err(witness) => ChainOutcome::Broken(witness),
        Ok(trail) => {
            let end = trail.last().expect("trail starts nonempty");
            ChainOutcome::Related(c.related(Multiplier::Eps, end, target))
        }
    })
}

/// Locates `[u]` for a prefix `u` of some word of `L`. The inner error is a
/// broken chain.
pub fn class_of_prefix(
    c: &StructureCandidate,
    u: &Word,
) -> Result<std::result::Result<ClassHandle, Witness>> {
    let Some(completion) = c.acceptor().least_completion(u) else {
        return Err(Error::Precondition(format!(
            "{} is not a prefix of any word in the language",
            c.alphabet().render_word(u)
        )));
    };
    let back: Vec<SignedLetter> = completion
        .letters()
        .iter()
        .rev()
        .map(|&l| SignedLetter::neg(l))
        .collect();
    Ok(walk(c, &u.concat(&completion), &back).map(|trail| ClassHandle {
        prefix: u.clone(),
        completion,
        representative: trail.last().expect("trail starts nonempty").clone(),
        trail,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::trivial;
    use crate::words::Letter;

    #[test]
    fn trivial_partners() {
        let c = trivial(false);
        let x = SignedLetter::pos(Letter(0));
        assert_eq!(phi_step(&c, &Word::empty(), x).unwrap(), Some(Word::empty()));
        assert_eq!(phi_step(&c, &Word::empty(), x.flip()).unwrap(), Some(Word::empty()));
        assert!(phi_step(&c, &Word::from(vec![Letter(0)]), x).is_err());
        let e = Word::empty();
        assert_eq!(eval_phi_chain(&c, &e, &[x, x], &e).unwrap(), ChainOutcome::Related(true));
        assert_eq!(eval_phi_chain(&c, &e, &[], &e).unwrap(), ChainOutcome::Related(true));
        let h = class_of_prefix(&c, &e).unwrap().unwrap();
        assert_eq!(h.representative, e);
    }
}
