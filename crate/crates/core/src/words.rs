//! Letters, words, word tuples and their padded encodings.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet owns the textual
//! tokens and their declaration order. Words compare in length-lexicographic
//! order with respect to that declaration order, so sorting a collection of
//! words or iterating a `BTreeSet<Word>` walks them in the canonical
//! enumeration order used throughout the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Token spelling the padding symbol in files and on the command line.
pub const PAD_TOKEN: &str = "$";
/// Token spelling the empty label.
pub const EPS_TOKEN: &str = "eps";
/// Prefix of letters generated by constructions that extend an alphabet.
pub const GENERATED_PREFIX: char = '@';

const FORBIDDEN_CHARS: &[char] = &['(', ')', '{', '}', ',', '#', '=', '.', '"'];

/// A letter, identified by its position in the owning alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered set of letter tokens with an optional inverse pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Letter>,
    inverse: Option<Vec<Letter>>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            tokens: Vec::new(),
            index: HashMap::new(),
            inverse: None,
        };
        for token in tokens {
            alphabet.push(token.into())?;
        }
        Ok(alphabet)
    }

    fn push(&mut self, token: String) -> Result<Letter> {
        validate_token(&token)?;
        if self.index.contains_key(&token) {
            return Err(Error::DuplicateLetter(token));
        }
        let letter = Letter(self.tokens.len() as u32);
        self.index.insert(token.clone(), letter);
        self.tokens.push(token);
        Ok(letter)
    }

    /// Attaches an inverse pairing. Every pair `(a, b)` declares `a⁻¹ = b` and
    /// `b⁻¹ = a`; a letter may be paired with itself. Once any pair is given
    /// every letter must be paired.
    pub fn with_inverses<'a, I>(mut self, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut inverse: Vec<Option<Letter>> = vec![None; self.len()];
        for (a, b) in pairs {
            let la = self.letter(a)?;
            let lb = self.letter(b)?;
            for (x, y) in [(la, lb), (lb, la)] {
                match inverse[x.index()] {
                    Some(prev) if prev != y => {
                        return Err(Error::BadInverse(format!(
                            "`{}` is paired with both `{}` and `{}`",
                            self.token(x),
                            self.token(prev),
                            self.token(y)
                        )))
                    }
                    _ => inverse[x.index()] = Some(y),
                }
            }
        }
        if inverse.iter().all(Option::is_none) {
            self.inverse = None;
            return Ok(self);
        }
        if let Some(pos) = inverse.iter().position(Option::is_none) {
            return Err(Error::BadInverse(format!(
                "`{}` has no inverse",
                self.tokens[pos]
            )));
        }
        self.inverse = Some(inverse.into_iter().map(Option::unwrap).collect());
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.tokens.len() as u32).map(Letter)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.index()]
    }

    pub fn letter(&self, token: &str) -> Result<Letter> {
        self.index
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(token.to_string()))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.tokens.len()
    }

    pub fn inverse(&self, letter: Letter) -> Option<Letter> {
        self.inverse.as_ref().map(|inv| inv[letter.index()])
    }

    pub fn has_inverses(&self) -> bool {
        self.inverse.is_some()
    }

    /// Inverse pairs, each listed once with the smaller letter first.
    pub fn inverse_pairs(&self) -> Vec<(Letter, Letter)> {
        match &self.inverse {
            None => Vec::new(),
            Some(inv) => self
                .letters()
                .filter(|&a| a <= inv[a.index()])
                .map(|a| (a, inv[a.index()]))
                .collect(),
        }
    }

    /// True when `self` lists every letter of `base`, in the same positions.
    pub fn extends(&self, base: &Alphabet) -> bool {
        base.tokens.len() <= self.tokens.len()
            && base.tokens.iter().zip(&self.tokens).all(|(a, b)| a == b)
    }

    /// Appends `count` fresh generated letters `@k`, numbered after the
    /// largest generated index already present.
    pub fn with_generated(&self, count: usize) -> (Alphabet, Vec<Letter>) {
        let base = self
            .tokens
            .iter()
            .filter_map(|t| t.strip_prefix(GENERATED_PREFIX)?.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        let mut extended = self.clone();
        let mut fresh = Vec::with_capacity(count);
        for k in 1..=count {
            let letter = extended
                .push(format!("{GENERATED_PREFIX}{}", base + k))
                .expect("generated tokens are fresh");
            fresh.push(letter);
        }
        if let Some(inv) = &mut extended.inverse {
            inv.extend(fresh.iter().copied());
        }
        (extended, fresh)
    }

    fn single_char_tokens(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word. `""`, `ε` and `eps` denote the empty word; letters are
    /// separated by `.`, or written back to back when every token is a
    /// single character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == EPS_TOKEN {
            return Ok(Word::empty());
        }
        let letters: Result<Vec<Letter>> = if text.contains('.') {
            text.split('.').map(|t| self.letter(t)).collect()
        } else if self.single_char_tokens() {
            text.chars()
                .map(|c| self.letter(c.encode_utf8(&mut [0; 4])))
                .collect()
        } else {
            Ok(vec![self.letter(text)?])
        };
        Ok(Word(letters?))
    }

    /// Parses a comma-separated tuple such as `ab,b,` (three components, the
    /// last one empty).
    pub fn parse_tuple(&self, text: &str) -> Result<WordTuple> {
        let words: Result<Vec<Word>> = text.split(',').map(|w| self.parse_word(w)).collect();
        Ok(WordTuple::new(words?))
    }

    pub fn render_word(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char_tokens() { "" } else { "." };
        word.letters()
            .iter()
            .map(|&l| self.token(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn render_tuple(&self, tuple: &WordTuple) -> String {
        let parts: Vec<String> = tuple.components().iter().map(|w| self.render_word(w)).collect();
        format!("({})", parts.join(", "))
    }

    pub fn render_symbol(&self, symbol: Symbol) -> &str {
        match symbol {
            Symbol::Letter(l) => self.token(l),
            Symbol::Pad => PAD_TOKEN,
        }
    }

    pub fn render_padded(&self, symbol: &PaddedSymbol) -> String {
        let parts: Vec<&str> = symbol.entries().iter().map(|&s| self.render_symbol(s)).collect();
        format!("({})", parts.join(","))
    }
}

fn validate_token(token: &str) -> Result<()> {
    if token == PAD_TOKEN || token == EPS_TOKEN || token == "ε" {
        return Err(Error::ReservedToken(token.to_string()));
    }
    if token.is_empty()
        || token.chars().any(|c| c.is_whitespace() || FORBIDDEN_CHARS.contains(&c))
    {
        return Err(Error::InvalidToken(token.to_string()));
    }
    Ok(())
}

/// A finite word. Ordered length-lexicographically by letter index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An n-tuple of words, n ≥ 1. Tuples compare component by component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordTuple(Vec<Word>);

impl WordTuple {
    /// # Panics
    /// If `components` is empty.
    pub fn new(components: Vec<Word>) -> Self {
        assert!(!components.is_empty(), "a word tuple has at least one component");
        WordTuple(components)
    }

    pub fn empty(tapes: usize) -> Self {
        WordTuple::new(vec![Word::empty(); tapes])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Word] {
        &self.0
    }

    pub fn component(&self, tape: usize) -> &Word {
        &self.0[tape]
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn without(&self, tape: usize) -> WordTuple {
        let mut words = self.0.clone();
        words.remove(tape);
        WordTuple::new(words)
    }

    /// Checks the tuple against a machine's arity and alphabet.
    pub fn check(&self, tapes: usize, alphabet: &Alphabet) -> Result<()> {
        if self.arity() != tapes {
            return Err(Error::Arity {
                expected: tapes,
                found: self.arity(),
            });
        }
        for word in &self.0 {
            if let Some(&l) = word.letters().iter().find(|&&l| !alphabet.contains(l)) {
                return Err(Error::ForeignLetter(l.0));
            }
        }
        Ok(())
    }
}

impl From<Vec<Word>> for WordTuple {
    fn from(words: Vec<Word>) -> Self {
        WordTuple::new(words)
    }
}

/// A tape symbol: a letter or the padding/end marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Letter(Letter),
    Pad,
}

impl Symbol {
    pub fn is_pad(self) -> bool {
        matches!(self, Symbol::Pad)
    }

    /// The symbol under a head at `pos` on a tape holding `word`.
    pub fn at(word: &Word, pos: usize) -> Symbol {
        word.letters().get(pos).map_or(Symbol::Pad, |&l| Symbol::Letter(l))
    }
}

/// One column of a padded string: n entries, not all of them padding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PaddedSymbol(Vec<Symbol>);

impl PaddedSymbol {
    pub fn new(entries: Vec<Symbol>) -> Result<Self> {
        if entries.is_empty() || entries.iter().all(|s| s.is_pad()) {
            return Err(Error::NotPadded("the all-padding column is not a symbol".into()));
        }
        Ok(PaddedSymbol(entries))
    }

    pub fn letter(letter: Letter) -> Self {
        PaddedSymbol(vec![Symbol::Letter(letter)])
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.0
    }

    pub fn entry(&self, tape: usize) -> Symbol {
        self.0[tape]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn pad_set(&self) -> TapeSet {
        TapeSet::from_iter(self.0.iter().enumerate().filter(|(_, s)| s.is_pad()).map(|(i, _)| i))
    }

    /// Drops entry `tape`; `None` when what remains is all padding.
    pub fn without(&self, tape: usize) -> Option<PaddedSymbol> {
        let mut entries = self.0.clone();
        entries.remove(tape);
        PaddedSymbol::new(entries).ok()
    }
}

/// Every symbol of the n-tape padded alphabet, in lexicographic order
/// (letters in declaration order, padding last in each entry).
pub fn padded_alphabet(tapes: usize, alphabet: &Alphabet) -> Vec<PaddedSymbol> {
    let symbols: Vec<Symbol> = alphabet
        .letters()
        .map(Symbol::Letter)
        .chain(std::iter::once(Symbol::Pad))
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0usize; tapes];
    loop {
        let entries: Vec<Symbol> = current.iter().map(|&i| symbols[i]).collect();
        if let Ok(sym) = PaddedSymbol::new(entries) {
            out.push(sym);
        }
        // odometer, last entry fastest
        let mut pos = tapes;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < symbols.len() {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// The synchronous encoding of a word tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaddedString {
    tapes: usize,
    columns: Vec<PaddedSymbol>,
}

impl PaddedString {
    /// Validates the suffix-padding invariant.
    pub fn new(tapes: usize, columns: Vec<PaddedSymbol>) -> Result<Self> {
        let mut padded = TapeSet::EMPTY;
        for (k, column) in columns.iter().enumerate() {
            if column.arity() != tapes {
                return Err(Error::Arity {
                    expected: tapes,
                    found: column.arity(),
                });
            }
            for tape in 0..tapes {
                match column.entry(tape) {
                    Symbol::Pad => padded.insert(tape),
                    Symbol::Letter(_) if padded.contains(tape) => {
                        return Err(Error::NotPadded(format!(
                            "tape {} has a letter after padding at column {}",
                            tape + 1,
                            k + 1
                        )))
                    }
                    Symbol::Letter(_) => {}
                }
            }
        }
        Ok(PaddedString { tapes, columns })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn columns(&self) -> &[PaddedSymbol] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// Pads a tuple into its synchronous encoding.
pub fn pad(tuple: &WordTuple) -> PaddedString {
    let len = tuple.max_len();
    let columns = (0..len)
        .map(|k| {
            PaddedSymbol(
                tuple
                    .components()
                    .iter()
                    .map(|w| Symbol::at(w, k))
                    .collect(),
            )
        })
        .collect();
    PaddedString {
        tapes: tuple.arity(),
        columns,
    }
}

/// Removes the padding from a padded string.
pub fn unpad(padded: &PaddedString) -> Result<WordTuple> {
    // re-validate: the fields are private but a caller may have built the
    // columns through `new`, which already checks; this keeps `unpad` total
    let checked = PaddedString::new(padded.tapes, padded.columns.clone())?;
    let mut words = vec![Word::empty(); checked.tapes];
    for column in &checked.columns {
        for (tape, &sym) in column.entries().iter().enumerate() {
            if let Symbol::Letter(l) = sym {
                words[tape].push(l);
            }
        }
    }
    Ok(WordTuple::new(words))
}

/// A set of tape indices (0-based; at most 32 tapes).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TapeSet(u32);

impl TapeSet {
    pub const EMPTY: TapeSet = TapeSet(0);

    pub fn full(tapes: usize) -> TapeSet {
        TapeSet(((1u64 << tapes) - 1) as u32)
    }

    pub fn single(tape: usize) -> TapeSet {
        TapeSet(1 << tape)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(bits: u32) -> TapeSet {
        TapeSet(bits)
    }

    pub fn contains(self, tape: usize) -> bool {
        self.0 & (1 << tape) != 0
    }

    pub fn insert(&mut self, tape: usize) {
        self.0 |= 1 << tape;
    }

    pub fn with(self, tape: usize) -> TapeSet {
        TapeSet(self.0 | (1 << tape))
    }

    pub fn union(self, other: TapeSet) -> TapeSet {
        TapeSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Every subset of `[0, tapes)`, in increasing bit order.
    pub fn all_subsets(tapes: usize) -> impl Iterator<Item = TapeSet> {
        (0..(1u32 << tapes)).map(TapeSet)
    }
}

impl FromIterator<usize> for TapeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = TapeSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

/// Renders with 1-based tape numbers, e.g. `{1,3}`.
impl fmt::Display for TapeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An interleaving of the symbols of several tapes that keeps each tape's
/// own order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    /// Which tape each position of the shuffle is read from (0-based).
    pub tape_order: Vec<usize>,
    /// The symbol read at each position.
    pub symbols: Vec<Symbol>,
}

/// All shuffles of a tuple, in lexicographic order of `tape_order`. With
/// `with_terminators`, every component is followed by one padding symbol.
pub fn enumerate_shuffles(tuple: &WordTuple, with_terminators: bool) -> Vec<Shuffle> {
    let tapes: Vec<Vec<Symbol>> = tuple
        .components()
        .iter()
        .map(|w| {
            let mut syms: Vec<Symbol> = w.letters().iter().map(|&l| Symbol::Letter(l)).collect();
            if with_terminators {
                syms.push(Symbol::Pad);
            }
            syms
        })
        .collect();
    let total: usize = tapes.iter().map(Vec::len).sum();
    let mut out = Vec::new();
    let mut pos = vec![0usize; tapes.len()];
    let mut order = Vec::with_capacity(total);
    let mut symbols = Vec::with_capacity(total);
    shuffle_rec(&tapes, total, &mut pos, &mut order, &mut symbols, &mut out);
    out
}

fn shuffle_rec(
    tapes: &[Vec<Symbol>],
    total: usize,
    pos: &mut [usize],
    order: &mut Vec<usize>,
    symbols: &mut Vec<Symbol>,
    out: &mut Vec<Shuffle>,
) {
    if order.len() == total {
        out.push(Shuffle {
            tape_order: order.clone(),
            symbols: symbols.clone(),
        });
        return;
    }
    for tape in 0..tapes.len() {
        if pos[tape] < tapes[tape].len() {
            order.push(tape);
            symbols.push(tapes[tape][pos[tape]]);
            pos[tape] += 1;
            shuffle_rec(tapes, total, pos, order, symbols, out);
            pos[tape] -= 1;
            symbols.pop();
            order.pop();
        }
    }
}

/// Iterator over all words of length at most `max_len` in length-lexicographic
/// order.
#[derive(Clone, Debug)]
pub struct LenLex {
    size: u32,
    max_len: Option<usize>,
    current: Option<Vec<u32>>,
}

impl LenLex {
    /// Unbounded stream over an alphabet of `size` letters.
    pub fn unbounded(size: usize) -> Self {
        LenLex {
            size: size as u32,
            max_len: None,
            current: Some(Vec::new()),
        }
    }

    pub fn bounded(size: usize, max_len: usize) -> Self {
        LenLex {
            size: size as u32,
            max_len: Some(max_len),
            current: Some(Vec::new()),
        }
    }
}

impl Iterator for LenLex {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.current.as_mut()?;
        let word: Word = current.iter().map(|&i| Letter(i)).collect();
        // advance
        let mut pos = current.len();
        let advanced = loop {
            if pos == 0 {
                break false;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < self.size {
                break true;
            }
            current[pos] = 0;
        };
        if !advanced {
            let next_len = current.len() + 1;
            if self.size == 0 || self.max_len.is_some_and(|m| next_len > m) {
                self.current = None;
            } else {
                *current = vec![0; next_len];
            }
        }
        Some(word)
    }
}

/// All words over `alphabet` of length at most `max_len`, length-lex ordered.
pub fn lenlex_stream(alphabet: &Alphabet, max_len: usize) -> LenLex {
    LenLex::bounded(alphabet.len(), max_len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn pad_matches_worked_example() {
        let abc = ab();
        let t = abc.parse_tuple("aa,abbc,cab").unwrap();
        let p = pad(&t);
        assert_eq!(p.len(), 4);
        let rows: Vec<String> = (0..3)
            .map(|tape| {
                p.columns()
                    .iter()
                    .map(|c| abc.render_symbol(c.entry(tape)).to_string())
                    .collect()
            })
            .collect();
        assert_eq!(rows, ["aa$$", "abbc", "cab$"]);
        assert_eq!(unpad(&p).unwrap(), t);
    }

    #[test]
    fn pad_of_empty_tuple_is_empty() {
        let p = pad(&WordTuple::empty(2));
        assert!(p.is_empty());
        assert_eq!(unpad(&p).unwrap(), WordTuple::empty(2));
    }

    #[test]
    fn pad_two_components() {
        let abc = ab();
        let p = pad(&abc.parse_tuple("ab,b").unwrap());
        let a = Symbol::Letter(Letter(0));
        let b = Symbol::Letter(Letter(1));
        assert_eq!(
            p.columns(),
            &[
                PaddedSymbol::new(vec![a, b]).unwrap(),
                PaddedSymbol::new(vec![b, Symbol::Pad]).unwrap()
            ]
        );
    }

    #[test]
    fn unpad_rejects_letter_after_padding() {
        let a = Symbol::Letter(Letter(0));
        let b = Symbol::Letter(Letter(1));
        let cols = vec![
            PaddedSymbol::new(vec![a, Symbol::Pad]).unwrap(),
            PaddedSymbol::new(vec![b, a]).unwrap(),
        ];
        assert!(matches!(PaddedString::new(2, cols), Err(Error::NotPadded(_))));
    }

    #[test]
    fn all_padding_column_rejected() {
        assert!(PaddedSymbol::new(vec![Symbol::Pad, Symbol::Pad]).is_err());
    }

    #[test]
    fn reserved_and_malformed_tokens() {
        assert_eq!(
            Alphabet::new(["a", "$"]).unwrap_err(),
            Error::ReservedToken("$".into())
        );
        assert!(matches!(Alphabet::new(["eps"]), Err(Error::ReservedToken(_))));
        assert!(matches!(Alphabet::new(["a b"]), Err(Error::InvalidToken(_))));
        assert!(matches!(Alphabet::new(["a", "a"]), Err(Error::DuplicateLetter(_))));
    }

    #[test]
    fn inverse_pairing_is_an_involution() {
        let a = Alphabet::new(["a", "A", "x"])
            .unwrap()
            .with_inverses([("a", "A"), ("x", "x")])
            .unwrap();
        for l in a.letters() {
            assert_eq!(a.inverse(a.inverse(l).unwrap()), Some(l));
        }
        assert_eq!(a.inverse_pairs().len(), 2);
        let partial = Alphabet::new(["a", "b"]).unwrap().with_inverses([("a", "a")]);
        assert!(matches!(partial, Err(Error::BadInverse(_))));
        let clash = Alphabet::new(["a", "b", "c"])
            .unwrap()
            .with_inverses([("a", "b"), ("a", "c")]);
        assert!(matches!(clash, Err(Error::BadInverse(_))));
    }

    #[test]
    fn shuffles_of_a_short_pair_include_both_spellings() {
        let abcd = Alphabet::new(["a", "b", "c", "d"]).unwrap();
        let t = abcd.parse_tuple("abc,bd").unwrap();
        let spellings: Vec<String> = enumerate_shuffles(&t, false)
            .iter()
            .map(|s| s.symbols.iter().map(|&x| abcd.render_symbol(x)).collect())
            .collect();
        assert!(spellings.contains(&"abbcd".to_string()));
        assert!(spellings.contains(&"badbc".to_string()));
        assert_eq!(spellings.len(), 10);
    }

    #[test]
    fn shuffles_small_cases() {
        let abc = ab();
        let none = enumerate_shuffles(&WordTuple::empty(2), false);
        assert_eq!(none.len(), 1);
        assert!(none[0].tape_order.is_empty());
        let t = abc.parse_tuple("ab,c").unwrap();
        let spellings: Vec<String> = enumerate_shuffles(&t, false)
            .iter()
            .map(|s| s.symbols.iter().map(|&x| abc.render_symbol(x)).collect())
            .collect();
        assert_eq!(spellings, ["abc", "acb", "cab"]);
        let with_ends = enumerate_shuffles(&WordTuple::empty(2), true);
        assert_eq!(with_ends.len(), 2);
    }

    #[test]
    fn lenlex_small_streams() {
        let x = Alphabet::new(["x"]).unwrap();
        let words: Vec<String> = lenlex_stream(&x, 2).map(|w| x.render_word(&w)).collect();
        assert_eq!(words, ["ε", "x", "xx"]);
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let words: Vec<String> = lenlex_stream(&ab, 1).map(|w| ab.render_word(&w)).collect();
        assert_eq!(words, ["ε", "a", "b"]);
        let words: Vec<String> = lenlex_stream(&ab, 2).map(|w| ab.render_word(&w)).collect();
        assert_eq!(words, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
        let empty = Alphabet::new(Vec::<String>::new()).unwrap();
        assert_eq!(lenlex_stream(&empty, 3).count(), 1);
    }

    #[test]
    fn letter_order_follows_declaration() {
        let ba = Alphabet::new(["b", "a"]).unwrap();
        let words: Vec<String> = lenlex_stream(&ba, 1).map(|w| ba.render_word(&w)).collect();
        assert_eq!(words, ["ε", "b", "a"]);
    }

    #[test]
    fn generated_letters_are_fresh() {
        let a = Alphabet::new(["a", "@2"]).unwrap();
        let (ext, fresh) = a.with_generated(2);
        assert_eq!(fresh.len(), 2);
        assert_eq!(ext.token(fresh[0]), "@3");
        assert_eq!(ext.token(fresh[1]), "@4");
        assert!(ext.extends(&a));
    }

    #[test]
    fn padded_alphabet_size() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(padded_alphabet(1, &a).len(), 2);
        assert_eq!(padded_alphabet(2, &a).len(), 8);
        assert_eq!(padded_alphabet(3, &a).len(), 26);
    }

    #[test]
    fn multi_char_tokens_use_dots() {
        let a = Alphabet::new(["ab", "c"]).unwrap();
        let w = a.parse_word("ab.c.ab").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(a.render_word(&w), "ab.c.ab");
    }
}
