//! A small labelled-graph automaton shared by every machine model.
//!
//! States are dense indices with unique names. Arrows carry `Some(label)` or
//! `None` for an empty move. The synchronous layer instantiates the label
//! with [`PaddedSymbol`](crate::words::PaddedSymbol), the asynchronous
//! layers with [`Symbol`](crate::words::Symbol).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

pub trait Label: Clone + Ord + Hash + std::fmt::Debug {}
impl<T: Clone + Ord + Hash + std::fmt::Debug> Label for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa<L> {
    names: Vec<String>,
    start: Vec<usize>,
    accept: Vec<bool>,
    arrows: Vec<Vec<(Option<L>, usize)>>,
}

impl<L: Label> Default for Nfa<L> {
    fn default() -> Self {
        Nfa::new()
    }
}

impl<L: Label> Nfa<L> {
    pub fn new() -> Self {
        Nfa {
            names: Vec::new(),
            start: Vec::new(),
            accept: Vec::new(),
            arrows: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.accept.push(false);
        self.arrows.push(Vec::new());
        self.names.len() - 1
    }

    pub fn set_start(&mut self, state: usize) {
        if let Err(pos) = self.start.binary_search(&state) {
            self.start.insert(pos, state);
        }
    }

    pub fn clear_starts(&mut self) {
        self.start.clear();
    }

    pub fn set_accept(&mut self, state: usize, accept: bool) {
        self.accept[state] = accept;
    }

    /// Adds an arrow, ignoring exact duplicates.
    pub fn add_arrow(&mut self, src: usize, label: Option<L>, dst: usize) {
        let list = &mut self.arrows[src];
        let entry = (label, dst);
        if let Err(pos) = list.binary_search(&entry) {
            list.insert(pos, entry);
        }
    }

    pub fn remove_arrow(&mut self, src: usize, label: &Option<L>, dst: usize) -> bool {
        let list = &mut self.arrows[src];
        match list.binary_search(&(label.clone(), dst)) {
            Ok(pos) => {
                list.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_named(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn starts(&self) -> &[usize] {
        &self.start
    }

    pub fn is_start(&self, state: usize) -> bool {
        self.start.binary_search(&state).is_ok()
    }

    pub fn is_accept(&self, state: usize) -> bool {
        self.accept[state]
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&s| self.accept[s])
    }

    /// Arrows leaving `state`, sorted by (label, target) with empty moves first.
    pub fn arrows_from(&self, state: usize) -> &[(Option<L>, usize)] {
        &self.arrows[state]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, &Option<L>, usize)> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .flat_map(|(s, list)| list.iter().map(move |(l, t)| (s, l, *t)))
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.iter().map(Vec::len).sum()
    }

    /// Targets of `label` arrows from `state`.
    pub fn targets<'a>(&'a self, state: usize, label: &'a L) -> impl Iterator<Item = usize> + 'a {
        self.arrows[state]
            .iter()
            .filter(move |(l, _)| l.as_ref() == Some(label))
            .map(|(_, t)| *t)
    }

    /// The unique `label` successor, when there is exactly one.
    pub fn successor(&self, state: usize, label: &L) -> Option<usize> {
        let mut it = self.targets(state, label);
        let first = it.next()?;
        match it.next() {
            None => Some(first),
            Some(_) => None,
        }
    }

    pub fn has_epsilons(&self) -> bool {
        self.arrows().any(|(_, l, _)| l.is_none())
    }

    /// At most one start, no empty moves, at most one successor per label.
    pub fn is_deterministic(&self) -> bool {
        self.start.len() <= 1
            && self.arrows.iter().all(|list| {
                list.iter().all(|(l, _)| l.is_some())
                    && list.windows(2).all(|w| w[0].0 != w[1].0)
            })
    }

    /// Labels used on any arrow, sorted.
    pub fn labels(&self) -> BTreeSet<L> {
        self.arrows().filter_map(|(_, l, _)| l.clone()).collect()
    }

    pub fn map_labels<M: Label>(&self, mut f: impl FnMut(&L) -> Option<M>) -> Nfa<M> {
        let mut out = Nfa {
            names: self.names.clone(),
            start: self.start.clone(),
            accept: self.accept.clone(),
            arrows: vec![Vec::new(); self.num_states()],
        };
        for (s, l, t) in self.arrows() {
            let label = l.as_ref().and_then(&mut f);
            out.add_arrow(s, label, t);
        }
        out
    }

    /// Renumbers states in name order. Names must be unique.
    pub fn canonical(&self) -> Nfa<L> {
        let mut order: Vec<usize> = (0..self.num_states()).collect();
        order.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut rank = vec![0; self.num_states()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        self.permuted(&order, &rank)
    }

    fn permuted(&self, order: &[usize], rank: &[usize]) -> Nfa<L> {
        let mut out = Nfa::new();
        for &old in order {
            let s = out.add_state(self.names[old].clone());
            out.accept[s] = self.accept[old];
        }
        for &s in &self.start {
            out.set_start(rank[s]);
        }
        for (s, l, t) in self.arrows() {
            out.add_arrow(rank[s], l.clone(), rank[t]);
        }
        out
    }

    /// Keeps the states for which `keep` holds, in their current order.
    /// Returns the machine and the old-to-new index map.
    pub fn restrict(&self, keep: &[bool]) -> (Nfa<L>, Vec<Option<usize>>) {
        let mut map = vec![None; self.num_states()];
        let mut out = Nfa::new();
        for s in 0..self.num_states() {
            if keep[s] {
                let n = out.add_state(self.names[s].clone());
                out.accept[n] = self.accept[s];
                map[s] = Some(n);
            }
        }
        for &s in &self.start {
            if let Some(n) = map[s] {
                out.set_start(n);
            }
        }
        for (s, l, t) in self.arrows() {
            if let (Some(a), Some(b)) = (map[s], map[t]) {
                out.add_arrow(a, l.clone(), b);
            }
        }
        (out, map)
    }

    pub fn eps_closure(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut closure = states.clone();
        let mut stack: Vec<usize> = states.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for (l, t) in &self.arrows[s] {
                if l.is_none() && closure.insert(*t) {
                    stack.push(*t);
                }
            }
        }
        closure
    }

    /// Closure of the labelled successors of `states`.
    pub fn step(&self, states: &BTreeSet<usize>, label: &L) -> BTreeSet<usize> {
        let next: BTreeSet<usize> = states
            .iter()
            .flat_map(|&s| self.targets(s, label))
            .collect();
        self.eps_closure(&next)
    }

    pub fn initial_set(&self) -> BTreeSet<usize> {
        self.eps_closure(&self.start.iter().copied().collect())
    }

    pub fn accepts(&self, input: &[L]) -> bool {
        let mut current = self.initial_set();
        for label in input {
            if current.is_empty() {
                return false;
            }
            current = self.step(&current, label);
        }
        current.iter().any(|&s| self.accept[s])
    }

    /// Equivalent machine on the same states with no empty moves.
    pub fn remove_epsilons(&self) -> Nfa<L> {
        if !self.has_epsilons() {
            return self.clone();
        }
        let mut out = Nfa {
            names: self.names.clone(),
            start: self.start.clone(),
            accept: self.accept.clone(),
            arrows: vec![Vec::new(); self.num_states()],
        };
        for s in 0..self.num_states() {
            let closure = self.eps_closure(&BTreeSet::from([s]));
            if closure.iter().any(|&c| self.accept[c]) {
                out.accept[s] = true;
            }
            for &c in &closure {
                for (l, t) in &self.arrows[c] {
                    if l.is_some() {
                        out.add_arrow(s, l.clone(), *t);
                    }
                }
            }
        }
        out
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.start.clone();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for (_, t) in &self.arrows[s] {
                if !seen[*t] {
                    seen[*t] = true;
                    stack.push(*t);
                }
            }
        }
        seen
    }

    pub fn coreachable(&self) -> Vec<bool> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.num_states()];
        for (s, _, t) in self.arrows() {
            rev[t].push(s);
        }
        let mut seen = self.accept.clone();
        let mut stack: Vec<usize> = self.accepting().collect();
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Nfa<L> {
        let r = self.reachable();
        let c = self.coreachable();
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep).0
    }

    pub fn is_empty(&self) -> bool {
        let r = self.reachable();
        !(0..self.num_states()).any(|s| r[s] && self.accept[s])
    }

    /// Subset construction over `alphabet`. States are named by the sorted
    /// list of member names, e.g. `{p,q}`. With `complete`, the empty subset
    /// `{}` is kept as a sink so every state has an arrow for every label.
    pub fn determinize(&self, alphabet: &[L], complete: bool) -> Nfa<L> {
        let mut out = Nfa::new();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let subset_name = |set: &BTreeSet<usize>| {
            let mut names: Vec<&str> = set.iter().map(|&s| self.name(s)).collect();
            names.sort_unstable();
            format!("{{{}}}", names.join(","))
        };
        let init = self.initial_set();
        let s0 = out.add_state(subset_name(&init));
        out.accept[s0] = init.iter().any(|&s| self.accept[s]);
        out.set_start(s0);
        index.insert(init.clone(), s0);
        queue.push_back(init);
        while let Some(set) = queue.pop_front() {
            let src = index[&set];
            for label in alphabet {
                let next = self.step(&set, label);
                if next.is_empty() && !complete {
                    continue;
                }
                let dst = match index.get(&next) {
                    Some(&d) => d,
                    None => {
                        let d = out.add_state(subset_name(&next));
                        out.accept[d] = next.iter().any(|&s| self.accept[s]);
                        index.insert(next.clone(), d);
                        queue.push_back(next);
                        d
                    }
                };
                out.add_arrow(src, Some(label.clone()), dst);
            }
        }
        out
    }

    /// Product automaton accepting the intersection. Empty moves are removed
    /// from both factors first. States are named `(p,q)`.
    pub fn product(&self, other: &Nfa<L>) -> Nfa<L> {
        let a = self.remove_epsilons();
        let b = other.remove_epsilons();
        let mut out = Nfa::new();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |out: &mut Nfa<L>, queue: &mut VecDeque<(usize, usize)>, p: usize, q: usize| {
            *index.entry((p, q)).or_insert_with(|| {
                let s = out.add_state(format!("({},{})", a.name(p), b.name(q)));
                out.accept[s] = a.accept[p] && b.accept[q];
                queue.push_back((p, q));
                s
            })
        };
        for &p in &a.start {
            for &q in &b.start {
                let s = intern(&mut out, &mut queue, p, q);
                out.set_start(s);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let src = intern(&mut out, &mut queue, p, q);
            for (l, t) in &a.arrows[p] {
                let Some(label) = l else { continue };
                let targets: Vec<usize> = b.targets(q, label).collect();
                for u in targets {
                    let dst = intern(&mut out, &mut queue, *t, u);
                    out.add_arrow(src, Some(label.clone()), dst);
                }
            }
        }
        out
    }

    /// Disjoint union; states are renamed `1:p` and `2:q`.
    pub fn disjoint_union(&self, other: &Nfa<L>) -> Nfa<L> {
        let mut out = Nfa::new();
        for (tag, m) in [(1, self), (2, other)] {
            let offset = out.num_states();
            for s in 0..m.num_states() {
                let n = out.add_state(format!("{tag}:{}", m.name(s)));
                out.accept[n] = m.accept[s];
            }
            for &s in &m.start {
                out.set_start(offset + s);
            }
            for (s, l, t) in m.arrows() {
                out.add_arrow(offset + s, l.clone(), offset + t);
            }
        }
        out
    }

    /// The length-lexicographically least accepted label sequence, with
    /// labels compared by their `Ord`.
    pub fn least_accepted(&self) -> Option<Vec<L>> {
        self.least_accepted_from(self.initial_set())
    }

    /// Like [`least_accepted`](Self::least_accepted), starting from an
    /// arbitrary closed set of states.
    pub fn least_accepted_from(&self, init: BTreeSet<usize>) -> Option<Vec<L>> {
        let mut parent: BTreeMap<BTreeSet<usize>, Option<(BTreeSet<usize>, L)>> = BTreeMap::new();
        let labels = self.labels();
        parent.insert(init.clone(), None);
        let mut queue = VecDeque::from([init]);
        while let Some(set) = queue.pop_front() {
            if set.iter().any(|&s| self.accept[s]) {
                let mut word = Vec::new();
                let mut cur = set;
                while let Some(Some((prev, l))) = parent.get(&cur).cloned() {
                    word.push(l);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for label in &labels {
                let next = self.step(&set, label);
                if next.is_empty() || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((set.clone(), label.clone())));
                queue.push_back(next);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Words over {0,1} ending in 1, with an empty move thrown in.
    fn ends_in_one() -> Nfa<u8> {
        let mut m = Nfa::new();
        let p = m.add_state("p");
        let q = m.add_state("q");
        let r = m.add_state("r");
        m.set_start(p);
        m.add_arrow(p, Some(0), p);
        m.add_arrow(p, Some(1), p);
        m.add_arrow(p, Some(1), q);
        m.add_arrow(q, None, r);
        m.set_accept(r, true);
        m
    }

    #[test]
    fn accepts_through_empty_moves() {
        let m = ends_in_one();
        assert!(m.accepts(&[0, 1]));
        assert!(!m.accepts(&[1, 0]));
        assert!(!m.accepts(&[]));
    }

    #[test]
    fn remove_epsilons_keeps_states_and_language() {
        let m = ends_in_one();
        let e = m.remove_epsilons();
        assert_eq!(e.num_states(), m.num_states());
        assert!(!e.has_epsilons());
        for w in [&[][..], &[1], &[0, 1], &[1, 1, 0], &[0, 0, 1]] {
            assert_eq!(e.accepts(w), m.accepts(w));
        }
    }

    #[test]
    fn determinize_names_subsets() {
        let d = ends_in_one().determinize(&[0, 1], false);
        assert!(d.is_deterministic());
        let mut names: Vec<&str> = d.names().iter().map(String::as_str).collect();
        names.sort();
        assert_eq!(names, ["{p,q,r}", "{p}"]);
        let c = ends_in_one().determinize(&[0, 1], true);
        assert_eq!(c.num_states(), 2);
    }

    #[test]
    fn two_starts_determinize() {
        let mut m: Nfa<u8> = Nfa::new();
        let a = m.add_state("a");
        let b = m.add_state("b");
        m.set_start(a);
        m.set_start(b);
        m.add_arrow(a, Some(0), a);
        m.add_arrow(b, Some(1), b);
        m.set_accept(a, true);
        m.set_accept(b, true);
        let d = m.determinize(&[0, 1], false);
        for w in [&[][..], &[0, 0], &[1, 1], &[0, 1], &[1, 0]] {
            assert_eq!(d.accepts(w), m.accepts(w), "{w:?}");
        }
    }

    #[test]
    fn product_and_union() {
        let m = ends_in_one();
        let mut even: Nfa<u8> = Nfa::new();
        let e = even.add_state("e");
        let o = even.add_state("o");
        even.set_start(e);
        even.set_accept(e, true);
        for l in [0, 1] {
            even.add_arrow(e, Some(l), o);
            even.add_arrow(o, Some(l), e);
        }
        let both = m.product(&even);
        assert!(both.accepts(&[0, 1]));
        assert!(!both.accepts(&[1]));
        let either = m.disjoint_union(&even);
        assert!(either.accepts(&[1]));
        assert!(either.accepts(&[1, 0]));
        assert!(!either.accepts(&[1, 0, 0]));
        assert_eq!(either.name(0), "1:p");
    }

    #[test]
    fn trim_and_emptiness() {
        let mut m: Nfa<u8> = Nfa::new();
        let a = m.add_state("a");
        let b = m.add_state("b");
        m.set_start(a);
        m.set_accept(b, true);
        assert!(m.is_empty());
        assert_eq!(m.trim().num_states(), 0);
        m.add_arrow(a, Some(0), b);
        assert!(!m.is_empty());
        assert_eq!(m.trim().num_states(), 2);
    }

    #[test]
    fn least_accepted_is_lenlex_least() {
        assert_eq!(ends_in_one().least_accepted(), Some(vec![1]));
        let mut m: Nfa<u8> = Nfa::new();
        let a = m.add_state("a");
        let b = m.add_state("b");
        let c = m.add_state("c");
        m.set_start(a);
        m.add_arrow(a, Some(1), b);
        m.add_arrow(a, Some(0), c);
        m.add_arrow(c, Some(1), b);
        m.add_arrow(b, Some(0), c);
        m.set_accept(c, true);
        assert_eq!(m.least_accepted(), Some(vec![0]));
        m.set_accept(c, false);
        m.set_accept(b, true);
        assert_eq!(m.least_accepted(), Some(vec![1]));
    }

    #[test]
    fn canonical_sorts_by_name() {
        let mut m: Nfa<u8> = Nfa::new();
        let z = m.add_state("z");
        let a = m.add_state("a");
        m.set_start(z);
        m.add_arrow(z, Some(0), a);
        let c = m.canonical();
        assert_eq!(c.names(), ["a", "z"]);
        assert_eq!(c.starts(), [1]);
        assert_eq!(c.arrows_from(1), [(Some(0), 0)]);
    }
}
