use std::cell::Cell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::words::{lenlex_stream, LenLex, Letter, Word};

use super::phi::{class_of_prefix, walk};
use super::{BoundParams, Budget, Multiplier, SignedLetter, StructureCandidate, Verdict, Witness};

const EPS: Multiplier = Multiplier::Eps;

struct Meter {
    budget: Budget,
    candidates: Cell<usize>,
    steps: Cell<usize>,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            candidates: Cell::new(0),
            steps: Cell::new(0),
        }
    }

    fn exhausted(&self) -> bool {
        self.steps.get() >= self.budget.step_limit
            || self.candidates.get() >= self.budget.max_candidates
    }

    fn candidate(&self) -> bool {
        if self.exhausted() {
            return false;
        }
        self.candidates.set(self.candidates.get() + 1);
        true
    }

    fn tick(&self, n: usize) {
        self.steps.set(self.steps.get().saturating_add(n));
    }
}

/// Membership tests that charge the meter.
struct Ctx<'a> {
    c: &'a StructureCandidate,
    meter: &'a Meter,
}

impl Ctx<'_> {
    fn l(&self, w: &Word) -> bool {
        self.meter.tick(1);
        self.c.in_language(w)
    }

    fn rel(&self, key: Multiplier, u: &Word, v: &Word) -> bool {
        self.meter.tick(1);
        self.c.related(key, u, v)
    }

    fn dom(&self, key: Multiplier, u: &Word) -> bool {
        self.meter.tick(1);
        self.c.in_domain(key, u)
    }

    fn rng(&self, key: Multiplier, v: &Word) -> bool {
        self.meter.tick(1);
        self.c.in_range(key, v)
    }

    fn walk(&self, v: &Word, w: &[SignedLetter]) -> std::result::Result<Word, Witness> {
        self.meter.tick(w.len());
        walk(self.c, v, w).map(|trail| trail.last().expect("trail starts nonempty").clone())
    }
}

enum Flow {
    Next,
    Found(Witness),
    Stop,
}

/// Tuples of `arity` words, ordered by their longest component and then
/// lexicographically with components compared length-lexicographically.
/// `keep` prunes partial tuples; `check` returns a witness for a complete
/// tuple that refutes the axiom.
struct Product<'a> {
    words: &'a [Word],
    upto: Vec<usize>,
    arity: usize,
    meter: &'a Meter,
}

impl<'a> Product<'a> {
    fn new(words: &'a [Word], max_len: usize, arity: usize, meter: &'a Meter) -> Self {
        let upto = (0..=max_len)
            .map(|g| words.iter().take_while(|w| w.len() <= g).count())
            .collect();
        Product {
            words,
            upto,
            arity,
            meter,
        }
    }

    fn run(
        &self,
        keep: &mut dyn FnMut(&[&Word]) -> bool,
        check: &mut dyn FnMut(&[&Word]) -> Option<Witness>,
    ) -> Flow {
        let mut prefix = Vec::with_capacity(self.arity);
        for g in 0..self.upto.len() {
            match self.grade(g, &mut prefix, false, keep, check) {
                Flow::Next => {}
                other => return other,
            }
        }
        Flow::Next
    }

    fn grade(
        &self,
        g: usize,
        prefix: &mut Vec<&'a Word>,
        has_g: bool,
        keep: &mut dyn FnMut(&[&Word]) -> bool,
        check: &mut dyn FnMut(&[&Word]) -> Option<Witness>,
    ) -> Flow {
        let i = prefix.len();
        if i == self.arity {
            if !self.meter.candidate() {
                return Flow::Stop;
            }
            return match check(prefix) {
                Some(w) => Flow::Found(w),
                None => Flow::Next,
            };
        }
        let lo = if i + 1 == self.arity && !has_g && g > 0 {
            self.upto[g - 1]
        } else {
            0
        };
        for w in &self.words[lo..self.upto[g]] {
            if self.meter.exhausted() {
                return Flow::Stop;
            }
            prefix.push(w);
            if i + 1 == self.arity || keep(prefix) {
                match self.grade(g, prefix, has_g || w.len() == g, keep, check) {
                    Flow::Next => {}
                    other => return other,
                }
            }
            prefix.pop();
        }
        Flow::Next
    }
}

fn verdict(flow: Flow) -> Option<Verdict> {
    match flow {
        Flow::Next => None,
        Flow::Found(w) => Some(Verdict::Violated(w)),
        Flow::Stop => Some(Verdict::NoViolationWithinBudget),
    }
}

/// Searches for a violation of Axiom 3, 4, 5, 7, 8, 10 or 11. The letter
/// axioms are searched one letter at a time, in alphabet order.
pub fn semidecide_simple_axiom(c: &StructureCandidate, axiom: u8, budget: Budget) -> Result<Verdict> {
    let (arity, per_letter) = match axiom {
        3 => (1, false),
        4 => (2, false),
        5 => (3, false),
        7 | 8 | 10 | 11 => (3, true),
        _ => {
            return Err(Error::Precondition(format!(
                "axiom {axiom} is not a simple universal axiom"
            )))
        }
    };
    let meter = Meter::new(budget);
    let ctx = Ctx { c, meter: &meter };
    let words: Vec<Word> = lenlex_stream(c.alphabet(), budget.max_word_len).collect();
    let product = Product::new(&words, budget.max_word_len, arity, &meter);
    let keys: Vec<Multiplier> = if per_letter {
        c.alphabet().letters().map(Multiplier::Letter).collect()
    } else {
        vec![EPS]
    };
    for x in keys {
        let found = |t: &[&Word]| Witness::new(axiom, Some(x), t.iter().map(|w| (*w).clone()).collect());
        let mut keep = |p: &[&Word]| -> bool {
            let u = p[0];
            match (axiom, p.len()) {
                (4 | 5, 1) => ctx.dom(EPS, u),
                (5, _) => ctx.rel(EPS, u, p[1]),
                (7, 1) => ctx.dom(x, u),
                (7, _) => ctx.rel(x, u, p[1]),
                (8, 1) => ctx.dom(EPS, u) && ctx.dom(x, u),
                (8, _) => ctx.rel(EPS, u, p[1]),
                (10, 1) => ctx.dom(x, u) && ctx.dom(EPS, u),
                (10, _) => ctx.rel(x, u, p[1]),
                (11, 1) => ctx.dom(EPS, u) && ctx.rng(x, u),
                (11, _) => ctx.rel(EPS, u, p[1]),
                _ => true,
            }
        };
        let mut check = |t: &[&Word]| -> Option<Witness> {
            let bad = match axiom {
                3 => ctx.l(t[0]) && !ctx.rel(EPS, t[0], t[0]),
                4 => ctx.rel(EPS, t[0], t[1]) && !ctx.rel(EPS, t[1], t[0]),
                5 => ctx.rel(EPS, t[1], t[2]) && !ctx.rel(EPS, t[0], t[2]),
                7 => ctx.rel(EPS, t[1], t[2]) && !ctx.rel(x, t[0], t[2]),
                8 => ctx.rel(x, t[0], t[2]) && !ctx.rel(x, t[1], t[2]),
                10 => ctx.rel(EPS, t[0], t[2]) && !ctx.rel(x, t[2], t[1]),
                11 => ctx.rel(x, t[2], t[0]) && !ctx.rel(x, t[2], t[1]),
                _ => unreachable!(),
            };
            bad.then(|| found(t))
        };
        if let Some(v) = verdict(product.run(&mut keep, &mut check)) {
            return Ok(v);
        }
    }
    Ok(Verdict::NoViolationWithinBudget)
}

/// Searches tuples `(u, w, w', v)` with `uw, uw', v ∈ L` for which exactly
/// one of `[v]φ_w = [uw]` and `[v]φ_w' = [uw']` holds.
pub fn semidecide_axiom12(c: &StructureCandidate, budget: Budget) -> Verdict {
    let meter = Meter::new(budget);
    let ctx = Ctx { c, meter: &meter };
    let words: Vec<Word> = lenlex_stream(c.alphabet(), budget.max_word_len).collect();
    let product = Product::new(&words, budget.max_word_len, 4, &meter);
    let mut keep = |p: &[&Word]| -> bool {
        match p.len() {
            1 => {
                meter.tick(1);
                c.in_prefix_closure(p[0])
            }
            _ => ctx.l(&p[0].concat(p[p.len() - 1])),
        }
    };
    let mut check = |t: &[&Word]| -> Option<Witness> {
        let (u, w, w2, v) = (t[0], t[1], t[2], t[3]);
        if w == w2 || !ctx.l(v) {
            return None;
        }
        let mut sides = [false; 2];
        for (side, word) in sides.iter_mut().zip([w, w2]) {
            let signed: Vec<SignedLetter> = word.letters().iter().map(|&l| SignedLetter::pos(l)).collect();
            match ctx.walk(v, &signed) {
                Err(witness) => return Some(witness),
                Ok(end) => *side = ctx.rel(EPS, &end, &u.concat(word)),
            }
        }
        (sides[0] != sides[1]).then(|| Witness::new(12, None, t.iter().map(|w| (*w).clone()).collect()))
    };
    verdict(product.run(&mut keep, &mut check)).unwrap_or(Verdict::NoViolationWithinBudget)
}

/// For each word `w` over the letters and their inverses of length at most
/// `2c + 2k`, searches the prefix closure of `L` for one prefix whose class
/// `φ_w` fixes and one it moves.
pub fn semidecide_axiom13(c: &StructureCandidate, budget: Budget) -> Verdict {
    let meter = Meter::new(budget);
    let ctx = Ctx { c, meter: &meter };
    let params = BoundParams::of(c);
    let n = c.alphabet().len();
    let prefixes: Vec<Word> = lenlex_stream(c.alphabet(), budget.max_word_len)
        .filter(|u| {
            meter.tick(1);
            c.in_prefix_closure(u)
        })
        .collect();
    let mut classes: HashMap<Word, std::result::Result<Word, Witness>> = HashMap::new();
    for code in LenLex::bounded(2 * n, params.axiom13_len).skip(1) {
        let w: Vec<SignedLetter> = code
            .letters()
            .iter()
            .map(|l| {
                let i = l.index();
                if i < n {
                    SignedLetter::pos(Letter(i as u32))
                } else {
                    SignedLetter::neg(Letter((i - n) as u32))
                }
            })
            .collect();
        let mut fixed: Option<&Word> = None;
        let mut moved: Option<&Word> = None;
        for u in &prefixes {
            if !meter.candidate() {
                return Verdict::NoViolationWithinBudget;
            }
            let rep = classes
                .entry(u.clone())
                .or_insert_with(|| {
                    meter.tick(u.len() + 1);
                    class_of_prefix(c, u)
                        .expect("u lies in the prefix closure")
                        .map(|h| h.representative)
                })
                .clone();
            let rep = match rep {
                Ok(r) => r,
                Err(witness) => return Verdict::Violated(witness),
            };
            let end = match ctx.walk(&rep, &w) {
                Ok(end) => end,
                Err(witness) => return Verdict::Violated(witness),
            };
            let slot = if ctx.rel(EPS, &end, &rep) { &mut fixed } else { &mut moved };
            slot.get_or_insert(u);
            if let (Some(f), Some(m)) = (fixed, moved) {
                let mut witness = Witness::new(13, None, vec![f.clone(), m.clone()]);
                witness.loop_word = w;
                return Verdict::Violated(witness);
            }
        }
    }
    Verdict::NoViolationWithinBudget
}
