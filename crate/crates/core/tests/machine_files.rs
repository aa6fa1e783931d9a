mod common;

use std::path::Path;

use common::*;
use multitape::format::{load_bundle, load_machine, parse_machine, print_machine};
use multitape::oracle::{languages_equal, BoundedDomain};
use proptest::prelude::*;

fn files(dir: &Path, ext: &str) -> Vec<std::path::PathBuf> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(ext))
        .collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printing_is_stable_and_faithful(seed in any::<u64>(), tapes in 1usize..=3, k in 1usize..=2) {
        let a = alphabet(k);
        for m in random_machines(&mut rng(seed), tapes, &a) {
            let text = print_machine(&m);
            let back = parse_machine(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
            prop_assert_eq!(back.kind(), m.kind());
            prop_assert_eq!(print_machine(&back), text.clone());
            let d = BoundedDomain::uniform(a.clone(), tapes, 2);
            prop_assert_eq!(languages_equal(&m, &back, &d).unwrap(), None);
        }
    }
}

#[test]
fn every_fixture_loads_and_reprints() {
    let root = fixture_path("");
    let mut seen = 0;
    for dir in [root.clone(), root.join("groups")] {
        for path in files(&dir, "mta") {
            let m = load_machine(&path).unwrap_or_else(|e| panic!("{e}"));
            let text = print_machine(&m);
            let again = parse_machine(&text).unwrap();
            assert_eq!(print_machine(&again), text, "{}", path.display());
            seen += 1;
        }
        for path in files(&dir, "bundle") {
            load_bundle(&path).unwrap_or_else(|e| panic!("{e}"));
            seen += 1;
        }
    }
    assert!(seen > 30);
}

#[test]
fn every_broken_fixture_is_diagnosed() {
    let dir = fixture_path("broken");
    for path in files(&dir, "mta") {
        let e = load_machine(&path).unwrap_err();
        assert_eq!(e.file.as_deref(), Some(path.display().to_string().as_str()));
    }
    for path in files(&dir, "bundle") {
        assert!(load_bundle(&path).is_err(), "{}", path.display());
    }
}

#[test]
fn diagnostics_point_at_the_offending_line() {
    let e = load_machine(&fixture_path("broken/unknown-letter.mta")).unwrap_err();
    assert_eq!(e.line, Some(6));
    assert!(e.message.contains("unknown letter"));
    let e = parse_machine("kind: fsa\nalphabet: $\n").unwrap_err();
    assert_eq!(e.line, Some(2));
    let e = parse_machine("kind: fsa\nalphabet: x\nstate s start\ntrans s y s\n").unwrap_err();
    assert_eq!(e.line, Some(4));
}
