//! The line-oriented machine file format.
//!
//! ```text
//! # pairs (x^n, x^2n)
//! kind: semisorted
//! tapes: 2
//! alphabet: x
//! state q0 start class=1
//! state q1 class=2
//! state q2 class=2
//! state r class=2
//! state f accept class=2
//! trans q0 x q1
//! trans q1 x q2
//! trans q2 x q0
//! trans q0 $ r
//! trans r $ f
//! ```
//!
//! Tapes and classes are numbered from 1 in files. Labels are a letter, `$`
//! or `eps`; synchronous machines use column labels such as `(x,$)`, and
//! filter automata write
//! `trans p (x,y) filters={{1},{1,2}} -> {q, r}`.
//! Sorted machines give each state `sort=<tape>:{<done tapes>}` or
//! `sort=final`.

mod bundle;
mod print;

pub use bundle::{load_bundle, parse_bundle, BundleManifest};
pub use print::print_machine;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use crate::error::Error;
use crate::machine::{Kind, Machine};
use crate::nfa::Nfa;
use crate::nondet::{Faa, Saa};
use crate::quasi::{SemiSortedAsync, Sort, SortedAsync};
use crate::sync::SyncAutomaton;
use crate::words::{Alphabet, PaddedSymbol, Symbol, TapeSet, EPS_TOKEN, PAD_TOKEN};

/// A diagnostic for a malformed or invalid file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub file: Option<String>,
    pub line: Option<usize>,
    pub message: String,
}

impl FormatError {
    fn at(line: usize, message: impl fmt::Display) -> Self {
        FormatError {
            file: None,
            line: Some(line),
            message: message.to_string(),
        }
    }

    fn whole(message: impl fmt::Display) -> Self {
        FormatError {
            file: None,
            line: None,
            message: message.to_string(),
        }
    }

    pub fn in_file(mut self, file: impl Into<String>) -> Self {
        self.file.get_or_insert(file.into());
        self
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.file, self.line) {
            (Some(file), Some(line)) => write!(f, "{file}:{line}: {}", self.message),
            (Some(file), None) => write!(f, "{file}: {}", self.message),
            (None, Some(line)) => write!(f, "line {line}: {}", self.message),
            (None, None) => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for FormatError {}

type Parsed<T> = std::result::Result<T, FormatError>;

#[derive(Default)]
struct RawState {
    line: usize,
    name: String,
    start: bool,
    accept: bool,
    class: Option<usize>,
    sort: Option<Sort>,
}

struct RawTrans {
    line: usize,
    words: Vec<String>,
}

#[derive(Default)]
struct RawFile {
    kind: Option<(usize, Kind)>,
    tapes: Option<(usize, usize)>,
    alphabet: Option<(usize, Vec<String>)>,
    inverses: Vec<(usize, String, String)>,
    states: Vec<RawState>,
    trans: Vec<RawTrans>,
}

pub fn parse_machine(text: &str) -> Parsed<Machine> {
    parse_machine_over(text, None)
}

pub fn load_machine(path: &Path) -> Parsed<Machine> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::whole(e).in_file(path.display().to_string()))?;
    parse_machine(&text).map_err(|e| e.in_file(path.display().to_string()))
}

/// Parses a machine whose alphabet must list exactly the tokens of `alphabet`
/// in order; the result uses `alphabet`, inverse pairing included.
pub fn parse_machine_over(text: &str, alphabet: Option<&Alphabet>) -> Parsed<Machine> {
    let raw = scan(text)?;
    let (kind_line, kind) = raw.kind.ok_or_else(|| FormatError::whole("missing `kind:` directive"))?;
    let (alpha_line, tokens) = raw
        .alphabet
        .clone()
        .ok_or_else(|| FormatError::whole("missing `alphabet:` directive"))?;
    let alphabet = match alphabet {
        Some(given) => {
            if given.tokens() != tokens.as_slice() {
                return Err(FormatError::at(
                    alpha_line,
                    format!("alphabet must be `{}`", given.tokens().join(" ")),
                ));
            }
            given.clone()
        }
        None => {
            let a = Alphabet::new(tokens).map_err(|e| FormatError::at(alpha_line, e))?;
            let pairs: Vec<(&str, &str)> = raw.inverses.iter().map(|(_, a, b)| (a.as_str(), b.as_str())).collect();
            let inv_line = raw.inverses.first().map_or(alpha_line, |i| i.0);
            a.with_inverses(pairs).map_err(|e| FormatError::at(inv_line, e))?
        }
    };
    let tapes = match (kind, raw.tapes) {
        (Kind::Fsa, None) => 1,
        (Kind::Fsa, Some((line, t))) if t != 1 => {
            return Err(FormatError::at(line, "an fsa has exactly one tape"))
        }
        (_, Some((_, t))) => t,
        (_, None) => return Err(FormatError::whole("missing `tapes:` directive")),
    };
    if tapes == 0 || tapes > 31 {
        let line = raw.tapes.map_or(kind_line, |t| t.0);
        return Err(FormatError::at(line, "tapes must be between 1 and 31"));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, s) in raw.states.iter().enumerate() {
        if index.insert(s.name.as_str(), i).is_some() {
            return Err(FormatError::at(s.line, format!("state `{}` is declared twice", s.name)));
        }
        let needs_class = matches!(kind, Kind::SemiSorted | Kind::Saa);
        if needs_class != s.class.is_some() {
            let msg = if needs_class {
                format!("state `{}` needs class=<tape>", s.name)
            } else {
                format!("class= is not allowed in a {kind} machine")
            };
            return Err(FormatError::at(s.line, msg));
        }
        if (kind == Kind::Sorted) != s.sort.is_some() {
            let msg = if kind == Kind::Sorted {
                format!("state `{}` needs sort=<tape>:{{...}} or sort=final", s.name)
            } else {
                format!("sort= is not allowed in a {kind} machine")
            };
            return Err(FormatError::at(s.line, msg));
        }
        if let Some(c) = s.class {
            if c >= tapes {
                return Err(FormatError::at(s.line, format!("class {} exceeds {tapes} tapes", c + 1)));
            }
        }
        if let Some(Sort::Reading { tape, done }) = s.sort {
            if tape >= tapes || done.iter().any(|t| t >= tapes) {
                return Err(FormatError::at(s.line, format!("sort mentions a tape beyond {tapes}")));
            }
        }
    }
    let state = |line: usize, name: &str| -> Parsed<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::at(line, format!("unknown state `{name}`")))
    };
    let invalid = |e: Error| FormatError::at(kind_line, e);

    match kind {
        Kind::Faa => {
            let mut m = Faa::new(tapes, alphabet.clone()).map_err(invalid)?;
            for s in &raw.states {
                let id = m.add_state(s.name.clone());
                if s.start {
                    m.set_start(id);
                }
                m.set_accept(id, s.accept);
            }
            for t in &raw.trans {
                let (src, sym, filters, targets) = faa_transition(t, &alphabet, tapes, &state)?;
                m.add_transition(src, sym, targets, filters)
                    .map_err(|e| FormatError::at(t.line, e))?;
            }
            Ok(Machine::Faa(m))
        }
        Kind::Sync | Kind::Fsa => {
            let mut nfa: Nfa<PaddedSymbol> = Nfa::new();
            add_states(&mut nfa, &raw.states);
            for t in &raw.trans {
                let [src, label, dst] = three(t)?;
                let label = sync_label(t.line, label, &alphabet, tapes)?;
                nfa.add_arrow(state(t.line, src)?, label, state(t.line, dst)?);
            }
            SyncAutomaton::new(tapes, alphabet, nfa).map(Machine::Sync).map_err(invalid)
        }
        Kind::SemiSorted | Kind::Sorted | Kind::Saa => {
            let mut nfa: Nfa<Symbol> = Nfa::new();
            add_states(&mut nfa, &raw.states);
            for t in &raw.trans {
                let [src, label, dst] = three(t)?;
                let label = async_label(t.line, label, &alphabet)?;
                if label.is_none() && kind != Kind::Saa {
                    return Err(FormatError::at(t.line, format!("eps arrows are not allowed in a {kind} machine")));
                }
                nfa.add_arrow(state(t.line, src)?, label, state(t.line, dst)?);
            }
            match kind {
                Kind::SemiSorted => {
                    let class = raw.states.iter().map(|s| s.class.unwrap()).collect();
                    SemiSortedAsync::new(tapes, alphabet, nfa, class)
                        .map(Machine::SemiSorted)
                        .map_err(invalid)
                }
                Kind::Saa => {
                    let class = raw.states.iter().map(|s| s.class.unwrap()).collect();
                    Saa::new(tapes, alphabet, nfa, class).map(Machine::Saa).map_err(invalid)
                }
                _ => {
                    let sort = raw.states.iter().map(|s| s.sort.unwrap()).collect();
                    SortedAsync::new(tapes, alphabet, nfa, sort)
                        .map(Machine::Sorted)
                        .map_err(invalid)
                }
            }
        }
    }
}

fn add_states<L: crate::nfa::Label>(nfa: &mut Nfa<L>, states: &[RawState]) {
    for s in states {
        let id = nfa.add_state(s.name.clone());
        if s.start {
            nfa.set_start(id);
        }
        nfa.set_accept(id, s.accept);
    }
}

fn three(t: &RawTrans) -> Parsed<[&str; 3]> {
    match t.words.as_slice() {
        [a, b, c] => Ok([a, b, c]),
        _ => Err(FormatError::at(t.line, "expected `trans <src> <label> <dst>`")),
    }
}

fn async_label(line: usize, label: &str, alphabet: &Alphabet) -> Parsed<Option<Symbol>> {
    Ok(match label {
        EPS_TOKEN => None,
        PAD_TOKEN => Some(Symbol::Pad),
        tok => Some(Symbol::Letter(alphabet.letter(tok).map_err(|e| FormatError::at(line, e))?)),
    })
}

fn column(line: usize, text: &str, alphabet: &Alphabet, tapes: usize) -> Parsed<PaddedSymbol> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| FormatError::at(line, format!("expected a column such as (a,$), got `{text}`")))?;
    let entries = inner
        .split(',')
        .map(|tok| match tok.trim() {
            PAD_TOKEN => Ok(Symbol::Pad),
            tok => alphabet.letter(tok).map(Symbol::Letter),
        })
        .collect::<crate::Result<Vec<Symbol>>>()
        .map_err(|e| FormatError::at(line, e))?;
    if entries.len() != tapes {
        return Err(FormatError::at(line, format!("column `{text}` has {} entries, expected {tapes}", entries.len())));
    }
    PaddedSymbol::new(entries).map_err(|e| FormatError::at(line, e))
}

fn sync_label(line: usize, label: &str, alphabet: &Alphabet, tapes: usize) -> Parsed<Option<PaddedSymbol>> {
    if label == EPS_TOKEN {
        return Ok(None);
    }
    if tapes == 1 && !label.starts_with('(') {
        let l = alphabet.letter(label).map_err(|e| FormatError::at(line, e))?;
        return Ok(Some(PaddedSymbol::letter(l)));
    }
    column(line, label, alphabet, tapes).map(Some)
}

type FaaLine = (usize, PaddedSymbol, Vec<TapeSet>, Vec<usize>);

fn faa_transition(
    t: &RawTrans,
    alphabet: &Alphabet,
    tapes: usize,
    state: &dyn Fn(usize, &str) -> Parsed<usize>,
) -> Parsed<FaaLine> {
    let shape = || FormatError::at(t.line, "expected `trans <src> <column> filters={{...}} -> {<dst>, ...}`");
    if t.words.len() < 5 || t.words[3] != "->" {
        return Err(shape());
    }
    let src = state(t.line, &t.words[0])?;
    let sym = column(t.line, &t.words[1], alphabet, tapes)?;
    let filters = t.words[2]
        .strip_prefix("filters=")
        .ok_or_else(shape)
        .and_then(|f| parse_set_of_sets(f).ok_or_else(shape))?;
    let mut sets = Vec::new();
    for f in filters {
        if f.iter().any(|&i| i == 0 || i > tapes) {
            return Err(FormatError::at(t.line, format!("filter mentions a tape beyond {tapes}")));
        }
        sets.push(f.iter().map(|&i| i - 1).collect::<TapeSet>());
    }
    let rest = t.words[4..].join(" ");
    let inner = rest
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(shape)?;
    let names = split_names(inner, &|n| state(t.line, n).is_ok());
    let targets = names
        .iter()
        .map(|n| state(t.line, n))
        .collect::<Parsed<Vec<usize>>>()?;
    Ok((src, sym, sets, targets))
}

/// Splits a target list. State names may themselves contain commas, so a
/// split is accepted only when every piece names a state.
fn split_names(inner: &str, known: &dyn Fn(&str) -> bool) -> Vec<String> {
    let inner = inner.trim();
    if inner.is_empty() {
        return Vec::new();
    }
    if known(inner) {
        return vec![inner.to_string()];
    }
    let spaced: Vec<String> = inner
        .split_whitespace()
        .map(|p| p.trim_end_matches(',').to_string())
        .collect();
    if spaced.iter().all(|p| known(p)) {
        return spaced;
    }
    inner.split(',').map(|p| p.trim().to_string()).collect()
}

fn parse_set_of_sets(text: &str) -> Option<Vec<BTreeSet<usize>>> {
    let inner = text.strip_prefix('{')?.strip_suffix('}')?;
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('{')?;
        let close = body.find('}')?;
        out.push(parse_index_set(&body[..close])?);
        rest = &body[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Some(out)
}

fn parse_index_set(body: &str) -> Option<BTreeSet<usize>> {
    if body.trim().is_empty() {
        return Some(BTreeSet::new());
    }
    body.split(',').map(|n| n.trim().parse().ok()).collect()
}

fn parse_sort(line: usize, text: &str) -> Parsed<Sort> {
    if text == "final" {
        return Ok(Sort::Final);
    }
    let bad = || FormatError::at(line, format!("bad sort `{text}`, expected <tape>:{{...}} or final"));
    let (tape, done) = text.split_once(':').ok_or_else(bad)?;
    let tape: usize = tape.parse().map_err(|_| bad())?;
    let done = done
        .strip_prefix('{')
        .and_then(|d| d.strip_suffix('}'))
        .and_then(parse_index_set)
        .ok_or_else(bad)?;
    if tape == 0 || done.contains(&0) {
        return Err(bad());
    }
    Ok(Sort::Reading {
        tape: tape - 1,
        done: done.iter().map(|&i| i - 1).collect(),
    })
}

fn scan(text: &str) -> Parsed<RawFile> {
    let mut raw = RawFile::default();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':').filter(|(k, _)| !k.contains(char::is_whitespace)) {
            let value = value.trim();
            match key {
                "kind" => {
                    let k: Kind = value.parse().map_err(|e| FormatError::at(line, e))?;
                    set_once(&mut raw.kind, line, k, "kind")?;
                }
                "tapes" => {
                    let t: usize = value
                        .parse()
                        .map_err(|_| FormatError::at(line, format!("bad tape count `{value}`")))?;
                    set_once(&mut raw.tapes, line, t, "tapes")?;
                }
                "alphabet" => {
                    let toks = value.split_whitespace().map(str::to_string).collect();
                    set_once(&mut raw.alphabet, line, toks, "alphabet")?;
                }
                "inv" => {
                    let toks: Vec<&str> = value.split_whitespace().collect();
                    if toks.is_empty() || !toks.len().is_multiple_of(2) {
                        return Err(FormatError::at(line, "`inv:` takes pairs of letters"));
                    }
                    for pair in toks.chunks(2) {
                        raw.inverses.push((line, pair[0].to_string(), pair[1].to_string()));
                    }
                }
                _ => return Err(FormatError::at(line, format!("unknown directive `{key}:`"))),
            }
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next() {
            Some("state") => {
                let name = words
                    .next()
                    .ok_or_else(|| FormatError::at(line, "expected `state <name> ...`"))?;
                let mut s = RawState {
                    line,
                    name: name.to_string(),
                    ..RawState::default()
                };
                for flag in words {
                    match flag {
                        "start" => s.start = true,
                        "accept" => s.accept = true,
                        f if f.starts_with("class=") => {
                            let c: usize = f["class=".len()..]
                                .parse()
                                .ok()
                                .filter(|&c| c > 0)
                                .ok_or_else(|| FormatError::at(line, format!("bad class `{f}`")))?;
                            s.class = Some(c - 1);
                        }
                        f if f.starts_with("sort=") => s.sort = Some(parse_sort(line, &f["sort=".len()..])?),
                        f => return Err(FormatError::at(line, format!("unknown state flag `{f}`"))),
                    }
                }
                raw.states.push(s);
            }
            Some("trans") => raw.trans.push(RawTrans {
                line,
                words: words.map(str::to_string).collect(),
            }),
            Some(other) => return Err(FormatError::at(line, format!("unknown line `{other} ...`"))),
            None => {}
        }
    }
    Ok(raw)
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, value: T, what: &str) -> Parsed<()> {
    if let Some((prev, _)) = slot {
        return Err(FormatError::at(line, format!("`{what}:` already given on line {prev}")));
    }
    *slot = Some((line, value));
    Ok(())
}
