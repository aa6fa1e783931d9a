mod common;

use common::*;
use multitape::machine::Machine;
use multitape::nondet::{bridge, dfaa_to_saa, exists_saa, faa_to_dfaa, saa_to_dfaa, union_saa, Dfaa, Saa};
use multitape::oracle::{language_set, languages_equal, oracle_accepts, BoundedDomain};
use multitape::words::{LenLex, Word, WordTuple};
use proptest::prelude::*;
use rand::Rng;

fn insert(t: &WordTuple, tape: usize, w: &Word) -> WordTuple {
    let mut parts = t.components().to_vec();
    parts.insert(tape, w.clone());
    WordTuple::new(parts)
}

fn saa(seed: u64, tapes: usize, k: usize) -> Saa {
    let mut r = rng(seed);
    let n = r.gen_range(2..=5).max(tapes + 1);
    random_saa(&mut r, tapes, &alphabet(k), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dfaa_has_one_filter_per_transition(seed in any::<u64>(), tapes in 1usize..=3, k in 1usize..=2) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let m = random_faa(&mut r, tapes, &alphabet(k), n);
        let d = faa_to_dfaa(&m);
        prop_assert!(d.as_faa().transitions().all(|(_, _, e)| e.filters.len() == 1));
        prop_assert!(Dfaa::new(d.as_faa().clone()).is_ok());
    }

    #[test]
    fn saa_round_trip_keeps_language(seed in any::<u64>(), tapes in 1usize..=3, k in 1usize..=2) {
        let s = saa(seed, tapes, k);
        let back = dfaa_to_saa(&saa_to_dfaa(&s));
        let d = BoundedDomain::uniform(s.alphabet().clone(), tapes, 3);
        prop_assert_eq!(languages_equal(&Machine::from(s), &Machine::from(back), &d).unwrap(), None);
    }

    #[test]
    fn union_is_set_union(a in any::<u64>(), b in any::<u64>(), tapes in 1usize..=2, k in 1usize..=2) {
        let (x, y) = (saa(a, tapes, k), saa(b, tapes, k));
        let u = Machine::from(union_saa(&x, &y).unwrap());
        let d = BoundedDomain::uniform(x.alphabet().clone(), tapes, 3);
        let mut want = language_set(&Machine::from(x), &d).unwrap();
        want.extend(language_set(&Machine::from(y), &d).unwrap());
        prop_assert_eq!(language_set(&u, &d).unwrap(), want);
    }

    /// Brute-force witnesses always appear in the projection; a projected
    /// tuple whose witness is too long to find is allowed.
    #[test]
    fn projection_contains_every_witnessed_tuple(seed in any::<u64>(), tapes in 2usize..=3, k in 1usize..=2) {
        let s = saa(seed, tapes, k);
        let a = s.alphabet().clone();
        let m = Machine::from(s.clone());
        for erase in 0..tapes {
            let p = Machine::from(exists_saa(&s, erase).unwrap());
            for t in BoundedDomain::uniform(a.clone(), tapes - 1, 2).tuples() {
                let witnessed = LenLex::bounded(a.len(), 3).any(|w| oracle_accepts(&m, &insert(&t, erase, &w)).unwrap());
                if witnessed {
                    prop_assert!(oracle_accepts(&p, &t).unwrap());
                }
            }
        }
    }

    #[test]
    fn bridge_is_deterministic_and_projects_back(seed in any::<u64>(), tapes in 1usize..=2, k in 1usize..=2) {
        let s = saa(seed, tapes, k);
        let b = bridge(&s);
        prop_assert_eq!(b.tapes(), tapes + 1);
        prop_assert!(b.nfa().is_deterministic());
        prop_assert!(b.alphabet().extends(s.alphabet()));
        let back = Machine::from(exists_saa(&Saa::from(&b), 0).unwrap());
        let orig = Machine::from(s.clone());
        for t in BoundedDomain::uniform(s.alphabet().clone(), tapes, 3).tuples() {
            prop_assert_eq!(oracle_accepts(&back, &t).unwrap(), oracle_accepts(&orig, &t).unwrap());
        }
    }
}

#[test]
fn shift_fixture() {
    let m = fixture("shift.faa.mta");
    let a = m.alphabet().clone();
    let d = BoundedDomain::uniform(a.clone(), 2, 4);
    let want: Vec<WordTuple> = d
        .tuples()
        .into_iter()
        .filter(|t| {
            let (u, v) = (t.component(0), t.component(1));
            v.len() == u.len() + 1 && v.letters()[0] == a.letter("a").unwrap() && &v.letters()[1..] == u.letters()
        })
        .collect();
    let got: Vec<WordTuple> = language_set(&m, &d).unwrap().into_iter().collect();
    let mut want = want;
    want.sort();
    assert_eq!(got, want);
    let Machine::Faa(f) = m else { unreachable!() };
    let d1 = faa_to_dfaa(&f);
    assert_eq!(d1.as_faa().num_states(), 2 * 3);
    assert!(d1.accepts(&a.parse_tuple("ab,aab").unwrap()).unwrap());
}

#[test]
fn saa_fixture_is_the_union_of_its_branches() {
    let ends = fixture("ends.saa.mta");
    let d = BoundedDomain::uniform(ends.alphabet().clone(), 2, 6);
    let mut want = language_set(&fixture("doubling.mta"), &d).unwrap();
    want.extend(language_set(&fixture("halving.mta"), &d).unwrap());
    assert_eq!(language_set(&ends, &d).unwrap(), want);
    let Machine::Saa(s) = ends else { unreachable!() };
    let doubling = Saa::from(&semisorted("doubling.mta"));
    let halving = Saa::from(&semisorted("halving.mta"));
    let u = Machine::from(union_saa(&doubling, &halving).unwrap());
    assert_eq!(languages_equal(&u, &Machine::from(s), &d).unwrap(), None);
}

#[test]
fn bridging_a_deterministic_machine_adds_no_letters() {
    let s = Saa::from(&semisorted("doubling.mta"));
    let b = bridge(&s);
    assert_eq!(b.alphabet(), s.alphabet());
    let a = b.alphabet().clone();
    assert!(b.accepts(&a.parse_tuple(",x,xx").unwrap()).unwrap());
    assert!(!b.accepts(&a.parse_tuple("x,x,xx").unwrap()).unwrap());
}

#[test]
fn projection_of_one_tape_is_an_error() {
    let s = Saa::from(&semisorted("doubling.mta"));
    let one = exists_saa(&s, 1).unwrap();
    assert_eq!(one.tapes(), 1);
    assert!(exists_saa(&one, 0).is_err());
    assert!(exists_saa(&s, 2).is_err());
}
