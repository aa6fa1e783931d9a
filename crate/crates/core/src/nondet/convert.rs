//! Conversions between filter automata, their deterministic-filter
//! restriction and partitioned automata.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::nfa::Nfa;
use crate::words::{padded_alphabet, Letter, PaddedSymbol, Symbol, TapeSet};

use super::{Dfaa, Faa, Filter, Saa};

/// Pairs every state with a committed filter: `(s,χ)` may only take
/// transitions of `s` that offer `χ`, and then offers exactly `χ`.
/// The result has `|S| · (2ⁿ − 1)` states.
pub fn faa_to_dfaa(m: &Faa) -> Dfaa {
    let n = m.tapes();
    let filters: Vec<Filter> = TapeSet::all_subsets(n).filter(|f| !f.is_empty()).collect();
    let mut out = Faa::new(n, m.alphabet().clone()).expect("same arity");
    let mut id = HashMap::new();
    for s in 0..m.num_states() {
        for &f in &filters {
            let new = out.add_state(format!("({},{f})", m.name(s)));
            out.set_accept(new, m.is_accept(s));
            if m.is_start(s) {
                out.set_start(new);
            }
            id.insert((s, f), new);
        }
    }
    for (s, sym, entry) in m.transitions() {
        for &f in &entry.filters {
            let targets: Vec<usize> = entry
                .targets
                .iter()
                .flat_map(|&t| filters.iter().map(move |&g| (t, g)))
                .map(|key| id[&key])
                .collect();
            out.add_transition(id[&(s, f)], sym.clone(), targets, [f])
                .expect("filters already respect the padding");
        }
    }
    Dfaa::new(out).expect("one filter per committed state")
}

/// What a partitioned automaton knows about one tape while simulating a
/// filter automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Head {
    /// Nothing has been assumed about the symbol under the head.
    Free,
    /// An earlier step relied on this letter being under the head; it is
    /// checked when the tape is next advanced.
    Next(Letter),
    /// The end marker has been read.
    Done,
}

/// Simulates a deterministic-filter automaton one tape at a time.
///
/// Main states `(s,K)` pair a state with what is known about each head. A
/// step guesses the symbols under the heads, consistently with `K`; it
/// first reads the end marker on every tape guessed to be at its end, then
/// reads the filtered tapes in increasing order through a chain of states
/// of the matching classes. Letters guessed on tapes outside the filter are
/// remembered and verified when those tapes advance. Acceptance reads the
/// remaining end markers and enters a single accepting state.
pub fn dfaa_to_saa(m: &Dfaa) -> Saa {
    let faa = m.as_faa();
    let n = faa.tapes();
    let alphabet = faa.alphabet();
    let render_k = |k: &[Head]| {
        k.iter()
            .map(|h| match h {
                Head::Free => "free".to_string(),
                Head::Next(l) => format!("={}", alphabet.token(*l)),
                Head::Done => "done".to_string(),
            })
            .collect::<Vec<_>>()
            .join(",")
    };
    let render_sym = |sym: &[Symbol]| {
        sym.iter()
            .map(|&s| alphabet.render_symbol(s).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };

    let mut nfa: Nfa<Symbol> = Nfa::new();
    let mut class: Vec<usize> = Vec::new();
    let mut main: HashMap<(usize, Vec<Head>), usize> = HashMap::new();
    let mut queue: VecDeque<(usize, Vec<Head>, usize)> = VecDeque::new();
    let accept = nfa.add_state("accept");
    class.push(0);
    nfa.set_accept(accept, true);

    let mut intern = |nfa: &mut Nfa<Symbol>,
                      class: &mut Vec<usize>,
                      queue: &mut VecDeque<(usize, Vec<Head>, usize)>,
                      s: usize,
                      k: Vec<Head>| {
        if let Some(&id) = main.get(&(s, k.clone())) {
            return id;
        }
        let id = nfa.add_state(format!("<{};{}>", faa.name(s), render_k(&k)));
        class.push(0);
        main.insert((s, k.clone()), id);
        queue.push_back((s, k, id));
        id
    };

    // a chain of reads starting with an empty move from `from`; the last
    // read goes to every state in `ends`
    fn chain(
        nfa: &mut Nfa<Symbol>,
        class: &mut Vec<usize>,
        from: usize,
        prefix: &str,
        reads: &[(usize, Symbol)],
        ends: &[usize],
    ) {
        let mut prev: Option<(usize, Symbol)> = None;
        let mut current = from;
        for (k, &(tape, sym)) in reads.iter().enumerate() {
            let link = nfa.add_state(format!("{prefix};{k}>"));
            class.push(tape);
            match prev {
                None => nfa.add_arrow(current, None, link),
                Some((_, s)) => nfa.add_arrow(current, Some(s), link),
            }
            prev = Some((tape, sym));
            current = link;
        }
        match prev {
            None => {
                for &e in ends {
                    nfa.add_arrow(from, None, e);
                }
            }
            Some((_, s)) => {
                for &e in ends {
                    nfa.add_arrow(current, Some(s), e);
                }
            }
        }
    }

    let letters: Vec<Symbol> = alphabet.letters().map(Symbol::Letter).collect();
    let free_k = vec![Head::Free; n];
    for s in faa.starts() {
        let id = intern(&mut nfa, &mut class, &mut queue, s, free_k.clone());
        nfa.set_start(id);
    }
    while let Some((s, k, here)) = queue.pop_front() {
        let base = format!("<{};{}", faa.name(s), render_k(&k));

        if faa.is_accept(s) && !k.iter().any(|h| matches!(h, Head::Next(_))) {
            let reads: Vec<(usize, Symbol)> = (0..n)
                .filter(|&j| k[j] == Head::Free)
                .map(|j| (j, Symbol::Pad))
                .collect();
            chain(&mut nfa, &mut class, here, &format!("{base};end"), &reads, &[accept]);
        }

        // every guess of the head symbols consistent with k
        let options: Vec<Vec<Symbol>> = k
            .iter()
            .map(|h| match h {
                Head::Free => letters.iter().copied().chain([Symbol::Pad]).collect(),
                Head::Next(l) => vec![Symbol::Letter(*l)],
                Head::Done => vec![Symbol::Pad],
            })
            .collect();
        let mut guess = vec![0usize; n];
        'guesses: loop {
            let entries: Vec<Symbol> = (0..n).map(|j| options[j][guess[j]]).collect();
            if let Ok(sym) = PaddedSymbol::new(entries.clone()) {
                if let (Some(filter), Some(entry)) = (m.filter(s, &sym), faa.entry(s, &sym)) {
                    let mut reads = Vec::new();
                    let mut next_k = k.clone();
                    for j in 0..n {
                        if k[j] == Head::Free && entries[j] == Symbol::Pad {
                            reads.push((j, Symbol::Pad));
                            next_k[j] = Head::Done;
                        }
                    }
                    for j in 0..n {
                        if filter.contains(j) {
                            reads.push((j, entries[j]));
                            next_k[j] = Head::Free;
                        } else if let (Head::Free, Symbol::Letter(l)) = (k[j], entries[j]) {
                            next_k[j] = Head::Next(l);
                        }
                    }
                    let targets: Vec<usize> = entry
                        .targets
                        .iter()
                        .map(|&t| intern(&mut nfa, &mut class, &mut queue, t, next_k.clone()))
                        .collect();
                    let prefix = format!("{base};{}", render_sym(&entries));
                    chain(&mut nfa, &mut class, here, &prefix, &reads, &targets);
                }
            }
            // odometer over the guesses
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'guesses;
                }
                pos -= 1;
                guess[pos] += 1;
                if guess[pos] < options[pos].len() {
                    break;
                }
                guess[pos] = 0;
            }
        }
    }
    Saa::new(n, alphabet.clone(), nfa, class).expect("classes are tape indices")
}

/// Simulates a partitioned automaton with single-tape filters.
///
/// States are `(s, D, i)`: the automaton is at `s`, has read the end
/// markers of the tapes in `D`, and will next read a letter from tape `i`
/// under filter `{i}`. Before each letter, empty moves and end-marker reads
/// on tapes whose head is at the end are taken freely.
pub fn saa_to_dfaa(m: &Saa) -> Dfaa {
    let n = m.tapes();
    let src = m.nfa();
    let full = TapeSet::full(n);
    let symbols = padded_alphabet(n, m.alphabet());

    // configurations reachable without reading a letter, given the heads
    let closure = |s: usize, done: TapeSet, heads: &[Symbol]| {
        let mut seen = BTreeSet::from([(s, done)]);
        let mut stack = vec![(s, done)];
        while let Some((q, d)) = stack.pop() {
            let tape = m.class(q);
            for (label, t) in src.arrows_from(q) {
                let next = match label {
                    None => (*t, d),
                    Some(Symbol::Pad) if heads[tape] == Symbol::Pad && !d.contains(tape) => {
                        (*t, d.with(tape))
                    }
                    _ => continue,
                };
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen
    };
    let all_pad = vec![Symbol::Pad; n];

    let mut out = Faa::new(n, m.alphabet().clone()).expect("same arity");
    let mut id: HashMap<(usize, TapeSet, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |out: &mut Faa, queue: &mut VecDeque<(usize, TapeSet, usize)>, key: (usize, TapeSet, usize)| {
        *id.entry(key).or_insert_with(|| {
            let (s, d, i) = key;
            let new = out.add_state(format!("<{};{d};{}>", src.name(s), i + 1));
            let accepts = closure(s, d, &all_pad)
                .iter()
                .any(|&(q, dd)| dd == full && src.is_accept(q));
            out.set_accept(new, accepts);
            queue.push_back(key);
            new
        })
    };
    for &s in src.starts() {
        for i in 0..n {
            let new = intern(&mut out, &mut queue, (s, TapeSet::EMPTY, i));
            out.set_start(new);
        }
    }
    while let Some(key @ (s, d, i)) = queue.pop_front() {
        let from = intern(&mut out, &mut queue, key);
        for sym in &symbols {
            let Symbol::Letter(_) = sym.entry(i) else { continue };
            let mut targets = Vec::new();
            for (q, dq) in closure(s, d, sym.entries()) {
                if m.class(q) != i {
                    continue;
                }
                for t in src.targets(q, &sym.entry(i)).collect::<Vec<_>>() {
                    for j in 0..n {
                        targets.push(intern(&mut out, &mut queue, (t, dq, j)));
                    }
                }
            }
            if !targets.is_empty() {
                out.add_transition(from, sym.clone(), targets, [TapeSet::single(i)])
                    .expect("the filter reads a letter");
            }
        }
    }
    Dfaa::new(out).expect("one filter per state")
}
