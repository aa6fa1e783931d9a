use multitape::words::{enumerate_shuffles, pad, unpad, Alphabet, LenLex, Letter, Symbol, Word, WordTuple};
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..2, 0..=max).prop_map(|v| v.into_iter().map(Letter).collect::<Vec<_>>().into())
}

fn tuple() -> impl Strategy<Value = WordTuple> {
    prop::collection::vec(word(3), 1..=3).prop_map(WordTuple::new)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

proptest! {
    #[test]
    fn pad_then_unpad_is_identity(t in tuple()) {
        let p = pad(&t);
        prop_assert_eq!(p.len(), t.max_len());
        prop_assert_eq!(unpad(&p).unwrap(), t);
    }

    #[test]
    fn padding_only_grows(t in tuple()) {
        let p = pad(&t);
        for pair in p.columns().windows(2) {
            let (before, after) = (pair[0].pad_set(), pair[1].pad_set());
            prop_assert_eq!(before.bits() & after.bits(), before.bits());
        }
    }

    /// The number of shuffles is the multinomial coefficient of the
    /// component lengths, and each shuffle reads every component in order.
    #[test]
    fn shuffles_are_counted_and_ordered(t in tuple(), ends in any::<bool>()) {
        let lens: Vec<usize> = t.components().iter().map(|w| w.len() + usize::from(ends)).collect();
        let total: usize = lens.iter().sum();
        let expected = factorial(total) / lens.iter().map(|&l| factorial(l)).product::<usize>();
        let all = enumerate_shuffles(&t, ends);
        prop_assert_eq!(all.len(), expected);
        for s in &all {
            for (tape, w) in t.components().iter().enumerate() {
                let read: Vec<Symbol> = s
                    .tape_order
                    .iter()
                    .zip(&s.symbols)
                    .filter(|(&k, _)| k == tape)
                    .map(|(_, &sym)| sym)
                    .collect();
                let mut want: Vec<Symbol> = w.letters().iter().map(|&l| Symbol::Letter(l)).collect();
                if ends {
                    want.push(Symbol::Pad);
                }
                prop_assert_eq!(read, want);
            }
        }
        prop_assert!(all.windows(2).all(|p| p[0].tape_order < p[1].tape_order));
    }

    #[test]
    fn lenlex_orders_by_length_first(u in word(4), v in word(4)) {
        if u.len() < v.len() {
            prop_assert!(u < v);
        }
    }
}

#[test]
fn lenlex_stream_is_sorted_and_complete() {
    let words: Vec<Word> = LenLex::bounded(2, 4).collect();
    assert_eq!(words.len(), 1 + 2 + 4 + 8 + 16);
    assert!(words.windows(2).all(|p| p[0] < p[1]));
    assert_eq!(LenLex::unbounded(3).nth(4).unwrap().len(), 2);
}

#[test]
fn words_with_long_tokens_use_dots() {
    let a = Alphabet::new(["x", "y1"]).unwrap();
    let w = a.parse_word("x.y1.x").unwrap();
    assert_eq!(w.len(), 3);
    assert_eq!(a.render_word(&w), "x.y1.x");
    assert!(a.parse_word("xy1").is_err());
    assert!(Alphabet::new(["$"]).is_err());
    assert!(Alphabet::new(["eps"]).is_err());
}
