use std::fmt::Write;

use crate::machine::{Kind, Machine};
use crate::nfa::{Label, Nfa};
use crate::quasi::Sort;
use crate::words::{Alphabet, PaddedSymbol, Symbol, EPS_TOKEN};

/// Renders a machine with states sorted by name and transitions sorted by
/// source, label and target, so equal machines print identically.
pub fn print_machine(m: &Machine) -> String {
    let kind = m.kind();
    let a = m.alphabet();
    let mut out = String::new();
    writeln!(out, "kind: {kind}").unwrap();
    if kind != Kind::Fsa {
        writeln!(out, "tapes: {}", m.tapes()).unwrap();
    }
    writeln!(out, "alphabet: {}", a.tokens().join(" ")).unwrap();
    let pairs = a.inverse_pairs();
    if !pairs.is_empty() {
        let parts: Vec<String> = pairs
            .iter()
            .map(|&(x, y)| format!("{} {}", a.token(x), a.token(y)))
            .collect();
        writeln!(out, "inv: {}", parts.join(" ")).unwrap();
    }
    match m {
        Machine::Sync(s) => {
            let one = s.tapes() == 1;
            write_nfa(&mut out, s.nfa(), |_| String::new(), |l: &Option<PaddedSymbol>| match l {
                None => EPS_TOKEN.to_string(),
                Some(sym) if one => a.render_symbol(sym.entry(0)).to_string(),
                Some(sym) => a.render_padded(sym),
            });
        }
        Machine::SemiSorted(s) => {
            write_nfa(&mut out, s.nfa(), |i| format!(" class={}", s.class(i) + 1), |l| symbol(a, l));
        }
        Machine::Saa(s) => {
            write_nfa(&mut out, s.nfa(), |i| format!(" class={}", s.class(i) + 1), |l| symbol(a, l));
        }
        Machine::Sorted(s) => {
            let sort = |i: usize| match s.sort(i) {
                Sort::Final => " sort=final".to_string(),
                Sort::Reading { tape, done } => format!(" sort={}:{done}", tape + 1),
            };
            write_nfa(&mut out, s.nfa(), sort, |l| symbol(a, l));
        }
        Machine::Faa(f) => {
            let order = name_order(f.names());
            let mut rank = vec![0; order.len()];
            for (r, &i) in order.iter().enumerate() {
                rank[i] = r;
            }
            for &i in &order {
                write_state(&mut out, f.name(i), f.is_start(i), f.is_accept(i), "");
            }
            let mut lines: Vec<(usize, &PaddedSymbol, String)> = f
                .transitions()
                .map(|(s, sym, e)| {
                    let filters: Vec<String> = e.filters.iter().map(|t| t.to_string()).collect();
                    let mut targets: Vec<usize> = e.targets.iter().copied().collect();
                    targets.sort_by_key(|&t| rank[t]);
                    let targets: Vec<&str> = targets.iter().map(|&t| f.name(t)).collect();
                    let text = format!(
                        "trans {} {} filters={{{}}} -> {{{}}}",
                        f.name(s),
                        a.render_padded(sym),
                        filters.join(","),
                        targets.join(", ")
                    );
                    (rank[s], sym, text)
                })
                .collect();
            lines.sort();
            for (_, _, text) in lines {
                writeln!(out, "{text}").unwrap();
            }
        }
    }
    out
}

fn symbol(a: &Alphabet, l: &Option<Symbol>) -> String {
    match l {
        None => EPS_TOKEN.to_string(),
        Some(s) => a.render_symbol(*s).to_string(),
    }
}

fn name_order(names: &[String]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&x, &y| names[x].cmp(&names[y]));
    order
}

fn write_state(out: &mut String, name: &str, start: bool, accept: bool, extra: &str) {
    write!(out, "state {name}").unwrap();
    if start {
        out.push_str(" start");
    }
    if accept {
        out.push_str(" accept");
    }
    writeln!(out, "{extra}").unwrap();
}

fn write_nfa<L: Label>(
    out: &mut String,
    nfa: &Nfa<L>,
    extra: impl Fn(usize) -> String,
    label: impl Fn(&Option<L>) -> String,
) {
    let order = name_order(nfa.names());
    let mut rank = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    for &i in &order {
        write_state(out, nfa.name(i), nfa.is_start(i), nfa.is_accept(i), &extra(i));
    }
    let mut arrows: Vec<(usize, &Option<L>, usize)> =
        nfa.arrows().map(|(s, l, t)| (rank[s], l, rank[t])).collect();
    arrows.sort();
    for (s, l, t) in arrows {
        writeln!(out, "trans {} {} {}", nfa.name(order[s]), label(l), nfa.name(order[t])).unwrap();
    }
}
