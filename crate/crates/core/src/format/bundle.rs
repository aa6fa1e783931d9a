//! Candidate bundles: a manifest naming a word acceptor and its multipliers.
//!
//! ```text
//! inv: a A
//! acceptor: words.mta
//! multiplier a: times-a.mta
//! multiplier A: times-A.mta
//! multiplier eps: equal.mta
//! ```
//!
//! Paths are relative to the manifest. The acceptor is an `fsa` (or one-tape
//! `sync`) machine; multipliers are two-tape `semisorted` or `sorted`
//! machines. All files must declare the same alphabet. The inverse pairing
//! comes from the manifest, or from the acceptor file when the manifest has
//! none.

use std::path::{Path, PathBuf};

use crate::group::StructureCandidate;
use crate::machine::Machine;
use crate::quasi::{sorted_to_semisorted, SemiSortedAsync};
use crate::sync::SyncAutomaton;
use crate::words::Alphabet;

use super::{parse_machine, parse_machine_over, FormatError, Parsed};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BundleManifest {
    pub inverses: Vec<(String, String)>,
    pub acceptor: Option<(usize, String)>,
    /// `(line, letter token, path)`.
    pub multipliers: Vec<(usize, String, String)>,
    pub eps: Option<(usize, String)>,
}

impl BundleManifest {
    pub fn parse(text: &str) -> Parsed<Self> {
        let mut m = BundleManifest::default();
        for (i, full) in text.lines().enumerate() {
            let line = i + 1;
            let content = full.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| FormatError::at(line, "expected `<key>: <value>`"))?;
            let value = value.trim().to_string();
            let words: Vec<&str> = key.split_whitespace().collect();
            match words.as_slice() {
                ["inv"] => {
                    let toks: Vec<&str> = value.split_whitespace().collect();
                    if toks.is_empty() || !toks.len().is_multiple_of(2) {
                        return Err(FormatError::at(line, "`inv:` takes pairs of letters"));
                    }
                    for p in toks.chunks(2) {
                        m.inverses.push((p[0].to_string(), p[1].to_string()));
                    }
                }
                ["acceptor"] => {
                    if m.acceptor.is_some() {
                        return Err(FormatError::at(line, "acceptor given twice"));
                    }
                    m.acceptor = Some((line, value));
                }
                ["multiplier", "eps"] => {
                    if m.eps.is_some() {
                        return Err(FormatError::at(line, "multiplier eps given twice"));
                    }
                    m.eps = Some((line, value));
                }
                ["multiplier", letter] => {
                    if m.multipliers.iter().any(|(_, l, _)| l == letter) {
                        return Err(FormatError::at(line, format!("multiplier {letter} given twice")));
                    }
                    m.multipliers.push((line, letter.to_string(), value));
                }
                _ => return Err(FormatError::at(line, format!("unknown manifest key `{key}`"))),
            }
        }
        Ok(m)
    }
}

pub fn load_bundle(path: &Path) -> Parsed<StructureCandidate> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::whole(e).in_file(name.clone()))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_bundle(&text, base).map_err(|e| e.in_file(name))
}

/// Builds the candidate described by a manifest, resolving paths against
/// `base`.
pub fn parse_bundle(text: &str, base: &Path) -> Parsed<StructureCandidate> {
    let manifest = BundleManifest::parse(text)?;
    let (acc_line, acc_path) = manifest
        .acceptor
        .clone()
        .ok_or_else(|| FormatError::whole("manifest names no acceptor"))?;
    let (eps_line, eps_path) = manifest
        .eps
        .clone()
        .ok_or_else(|| FormatError::whole("manifest names no eps multiplier"))?;

    let read = |line: usize, rel: &str| -> Parsed<(String, String)> {
        let full: PathBuf = base.join(rel);
        let shown = full.display().to_string();
        std::fs::read_to_string(&full)
            .map(|t| (t, shown))
            .map_err(|e| FormatError::at(line, format!("cannot read {rel}: {e}")))
    };

    let (acc_text, acc_name) = read(acc_line, &acc_path)?;
    let declared = parse_machine(&acc_text).map_err(|e| e.in_file(acc_name.clone()))?;
    let alphabet = if manifest.inverses.is_empty() {
        declared.alphabet().clone()
    } else {
        let plain = Alphabet::new(declared.alphabet().tokens().to_vec()).expect("already validated");
        let pairs: Vec<(&str, &str)> = manifest
            .inverses
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        plain
            .with_inverses(pairs)
            .map_err(|e| FormatError::whole(format!("inverse pairing: {e}")))?
    };
    let acceptor = match parse_machine_over(&acc_text, Some(&alphabet)).map_err(|e| e.in_file(acc_name.clone()))? {
        Machine::Sync(s) if s.tapes() == 1 => s,
        other => {
            return Err(FormatError::at(
                acc_line,
                format!("the acceptor must be a one-tape fsa, not a {} machine", other.kind()),
            ))
        }
    };

    let load_mult = |line: usize, rel: &str| -> Parsed<SemiSortedAsync> {
        let (t, shown) = read(line, rel)?;
        match parse_machine_over(&t, Some(&alphabet)).map_err(|e| e.in_file(shown))? {
            Machine::SemiSorted(m) => Ok(m),
            Machine::Sorted(m) => Ok(sorted_to_semisorted(&m)),
            other => Err(FormatError::at(
                line,
                format!("multipliers must be semisorted or sorted, not {}", other.kind()),
            )),
        }
    };
    let mut slots: Vec<Option<SemiSortedAsync>> = vec![None; alphabet.len()];
    for (line, token, rel) in &manifest.multipliers {
        let letter = alphabet
            .letter(token)
            .map_err(|e| FormatError::at(*line, e))?;
        slots[letter.index()] = Some(load_mult(*line, rel)?);
    }
    let mut multipliers = Vec::new();
    for (l, slot) in alphabet.letters().zip(slots) {
        multipliers.push(slot.ok_or_else(|| {
            FormatError::whole(format!("no multiplier for letter {}", alphabet.token(l)))
        })?);
    }
    let eps = load_mult(eps_line, &eps_path)?;
    build(acceptor, multipliers, eps)
}

fn build(acceptor: SyncAutomaton, multipliers: Vec<SemiSortedAsync>, eps: SemiSortedAsync) -> Parsed<StructureCandidate> {
    StructureCandidate::new(acceptor, multipliers, eps).map_err(FormatError::whole)
}
