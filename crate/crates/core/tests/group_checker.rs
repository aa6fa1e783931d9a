mod common;

use common::*;
use multitape::format::load_bundle;
use multitape::group::{
    check_axiom2, check_axiom6, check_axiom9, class_of_prefix, eval_phi_chain, phi_step, run_all,
    semidecide_axiom12, semidecide_axiom13, semidecide_simple_axiom, Budget, ChainOutcome, Multiplier, Overall,
    SignedLetter, StructureCandidate, Verdict,
};
use multitape::words::Word;

fn w(c: &StructureCandidate, s: &str) -> Word {
    c.alphabet().parse_word(s).unwrap()
}

fn words(c: &StructureCandidate, list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| w(c, s)).collect()
}

fn letter(c: &StructureCandidate, s: &str) -> SignedLetter {
    SignedLetter::pos(c.alphabet().letter(s).unwrap())
}

#[test]
fn integers_pass_every_search() {
    let c = bundle("integers.bundle");
    let report = run_all(&c, Budget::new(4, 5_000));
    assert!(report.passed(), "{}", report.render(c.alphabet()));
    for axiom in [1, 2, 6, 9] {
        assert_eq!(*report.verdict(axiom), Verdict::Holds);
    }
    for axiom in [3, 4, 5, 7, 8, 10, 11, 12, 13] {
        assert_eq!(*report.verdict(axiom), Verdict::NoViolationWithinBudget, "axiom {axiom}");
    }
}

#[test]
fn integer_multipliers_move_along_the_line() {
    let c = bundle("integers.bundle");
    let (a, big_a) = (letter(&c, "a"), letter(&c, "A"));
    assert_eq!(phi_step(&c, &w(&c, "aa"), a).unwrap(), Some(w(&c, "aaa")));
    assert_eq!(phi_step(&c, &w(&c, "AA"), a).unwrap(), Some(w(&c, "A")));
    assert_eq!(phi_step(&c, &Word::empty(), big_a).unwrap(), Some(w(&c, "A")));
    assert_eq!(phi_step(&c, &w(&c, "a"), a.flip()).unwrap(), Some(Word::empty()));
    assert!(phi_step(&c, &w(&c, "aA"), a).is_err());

    let chain = [a, a, big_a];
    let out = eval_phi_chain(&c, &w(&c, "A"), &chain, &w(&c, "")).unwrap();
    assert_eq!(out, ChainOutcome::Related(true));
    let out = eval_phi_chain(&c, &w(&c, "A"), &chain, &w(&c, "a")).unwrap();
    assert_eq!(out, ChainOutcome::Related(false));

    let class = class_of_prefix(&c, &w(&c, "aa")).unwrap().unwrap();
    assert_eq!(class.completion, Word::empty());
    assert_eq!(class.representative, w(&c, "aa"));
    assert!(class_of_prefix(&c, &w(&c, "aA")).is_err());
}

#[test]
fn stray_word_breaks_axiom_2() {
    let c = bundle("stray-word.bundle");
    let v = check_axiom2(&c);
    let witness = v.witness().unwrap();
    assert_eq!(witness.axiom, 2);
    assert_eq!(witness.multiplier, Some(Multiplier::Letter(c.alphabet().letter("x").unwrap())));
    assert_eq!(witness.words, words(&c, &["x", ""]));
    let report = run_all(&c, Budget::new(4, 1_000));
    assert!(matches!(report.overall, Overall::NotAStructure { axiom: 2, .. }));
}

#[test]
fn missing_branch_breaks_axioms_6_and_9() {
    let c = bundle("integers-half.bundle");
    assert_eq!(check_axiom6(&c).witness().unwrap().words, words(&c, &["A"]));
    assert_eq!(check_axiom9(&c).witness().unwrap().words, words(&c, &[""]));
    let report = run_all(&c, Budget::new(3, 1_000));
    assert!(matches!(report.overall, Overall::NotAStructure { axiom: 6, .. }));
}

#[test]
fn asymmetric_equality_breaks_axiom_4() {
    let c = bundle("asymmetric.bundle");
    let v = semidecide_simple_axiom(&c, 4, Budget::new(3, 1_000)).unwrap();
    let witness = v.witness().unwrap();
    assert_eq!(witness.axiom, 4);
    assert_eq!(witness.words, words(&c, &["a", "b"]));
    assert_eq!(semidecide_simple_axiom(&c, 3, Budget::new(3, 1_000)).unwrap(), Verdict::NoViolationWithinBudget);
}

#[test]
fn frozen_multiplier_breaks_only_axiom_12() {
    let c = bundle("frozen.bundle");
    let report = run_all(&c, Budget::new(3, 5_000));
    let violated: Vec<u8> = report
        .verdicts
        .iter()
        .filter(|(_, v)| v.is_violated())
        .map(|(a, _)| *a)
        .collect();
    assert_eq!(violated, vec![12]);
    let witness = report.verdict(12).witness().unwrap();
    assert_eq!(witness.words, words(&c, &["", "", "x", ""]));
}

#[test]
fn swap_moves_one_class_and_fixes_another() {
    let c = bundle("swap.bundle");
    let v = semidecide_axiom13(&c, Budget::new(3, 5_000));
    let witness = v.witness().unwrap();
    assert_eq!(witness.axiom, 13);
    assert_eq!(witness.loop_word, vec![letter(&c, "x")]);
    assert_eq!(witness.words, words(&c, &["xx", ""]));
    assert!(semidecide_axiom12(&c, Budget::new(3, 5_000)).is_violated());
}

#[test]
fn empty_language_with_and_without_pairs() {
    let quiet = run_all(&bundle("empty.bundle"), Budget::new(3, 100));
    assert!(quiet.verdict(1).is_violated());
    assert_eq!(*quiet.verdict(2), Verdict::Holds);
    let busy = run_all(&bundle("empty-busy.bundle"), Budget::new(3, 100));
    assert!(busy.verdict(1).is_violated());
    assert!(busy.verdict(2).is_violated());
    assert!(matches!(busy.overall, Overall::NotAStructure { axiom: 1, .. }));
}

#[test]
fn zero_budget_decides_only_the_decidable_axioms() {
    let c = bundle("diagonal-free.bundle");
    let report = run_all(&c, Budget::new(3, 0));
    assert!(report.passed());
    let mut budget = Budget::new(3, 1_000);
    budget.step_limit = 0;
    assert_eq!(semidecide_simple_axiom(&c, 3, budget).unwrap(), Verdict::NoViolationWithinBudget);
    assert!(semidecide_simple_axiom(&c, 12, budget).is_err());
}

#[test]
fn overall_verdict_is_the_lowest_violation() {
    for name in ["asymmetric.bundle", "swap.bundle", "integers-half.bundle", "diagonal-free.bundle"] {
        let c = bundle(name);
        let report = run_all(&c, Budget::new(3, 2_000));
        let lowest = report.verdicts.iter().find(|(_, v)| v.is_violated()).map(|(a, _)| *a).unwrap();
        match report.overall {
            Overall::NotAStructure { axiom, .. } => assert_eq!(axiom, lowest, "{name}"),
            Overall::PassedWithinBudget => panic!("{name} passed"),
        }
    }
}

#[test]
fn unbounded_multipliers_are_refused() {
    let err = load_bundle(&fixture_path("broken/unbounded.bundle")).unwrap_err();
    assert!(err.to_string().contains("unbounded"), "{err}");
}

#[test]
fn report_text_names_axioms_and_witnesses() {
    let c = bundle("stray-word.bundle");
    let text = run_all(&c, Budget::new(2, 100)).render(c.alphabet());
    assert!(text.contains("axiom  2: violated: axiom 2 [x] (x, ε)"), "{text}");
    assert!(text.ends_with("overall: not a structure (axiom 2)\n"), "{text}");
}
