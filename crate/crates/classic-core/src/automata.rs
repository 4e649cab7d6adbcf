//! Nondeterministic finite automata over the attribute alphabet.
//!
//! A same-as graph doubles as an automaton: its a-edges are transitions, and
//! the words accepted between two nodes are exactly the labels of the paths
//! between them. Everything here stays nondeterministic; infiniteness and
//! enumeration work on the trimmed automaton directly, so no construction
//! ever determinizes (and hence none can blow up).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::graph::{DescriptionGraph, NodeId};

/// A word over the attribute alphabet.
pub type Word = Vec<String>;

/// Attempted to enumerate an infinite language.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the language is infinite")]
pub struct InfiniteLanguage;

/// A nondeterministic finite automaton with a single initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAutomaton {
    alphabet: BTreeSet<String>,
    /// One transition map per state.
    transitions: Vec<BTreeMap<String, BTreeSet<usize>>>,
    initial: usize,
    accepting: BTreeSet<usize>,
}

/// The automaton accepting the labels of paths from `q1` to `q2` in `g`.
pub fn path_automaton(g: &DescriptionGraph, q1: NodeId, q2: NodeId) -> PathAutomaton {
    let nodes: Vec<NodeId> = g.node_ids().collect();
    let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut transitions = vec![BTreeMap::new(); nodes.len()];
    let mut alphabet = BTreeSet::new();
    for (f, a, t) in g.edges() {
        alphabet.insert(a.clone());
        transitions[index[f]]
            .entry(a.clone())
            .or_insert_with(BTreeSet::new)
            .insert(index[t]);
    }
    PathAutomaton {
        alphabet,
        transitions,
        initial: index[&q1],
        accepting: BTreeSet::from([index[&q2]]),
    }
}

impl PathAutomaton {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    fn step(&self, states: &BTreeSet<usize>, letter: &str) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &s in states {
            if let Some(ts) = self.transitions[s].get(letter) {
                next.extend(ts);
            }
        }
        next
    }

    /// Does the automaton accept `word`?
    pub fn accepts(&self, word: &[String]) -> bool {
        let mut states = BTreeSet::from([self.initial]);
        for letter in word {
            states = self.step(&states, letter);
            if states.is_empty() {
                return false;
            }
        }
        states.iter().any(|s| self.accepting.contains(s))
    }

    /// Product automaton for `L(self) ∩ L(other) ∩ ⋃_{b ∈ first} bΣ*`.
    /// An empty `first` set yields the empty language.
    pub fn intersect_and_restrict(
        &self,
        other: &PathAutomaton,
        first: &BTreeSet<String>,
    ) -> PathAutomaton {
        let alphabet: BTreeSet<String> =
            self.alphabet.union(&other.alphabet).cloned().collect();
        // States are (s1, s2, seen_first); only reachable triples are built.
        let mut index: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
        let mut transitions: Vec<BTreeMap<String, BTreeSet<usize>>> = Vec::new();
        let start = (self.initial, other.initial, false);
        index.insert(start, 0);
        transitions.push(BTreeMap::new());
        let mut queue = VecDeque::from([start]);
        while let Some((s1, s2, seen)) = queue.pop_front() {
            let from = index[&(s1, s2, seen)];
            for letter in &alphabet {
                if !seen && !first.contains(letter) {
                    continue;
                }
                let t1s = self.transitions[s1].get(letter).cloned().unwrap_or_default();
                let t2s = other.transitions[s2].get(letter).cloned().unwrap_or_default();
                for &t1 in &t1s {
                    for &t2 in &t2s {
                        let key = (t1, t2, true);
                        let to = *index.entry(key).or_insert_with(|| {
                            transitions.push(BTreeMap::new());
                            queue.push_back(key);
                            transitions.len() - 1
                        });
                        transitions[from]
                            .entry(letter.clone())
                            .or_default()
                            .insert(to);
                    }
                }
            }
        }
        let accepting = index
            .iter()
            .filter(|((s1, s2, seen), _)| {
                *seen && self.accepting.contains(s1) && other.accepting.contains(s2)
            })
            .map(|(_, &i)| i)
            .collect();
        PathAutomaton {
            alphabet,
            transitions,
            initial: 0,
            accepting,
        }
    }

    /// States both reachable from the initial state and co-reachable from
    /// an accepting state.
    fn useful_states(&self) -> BTreeSet<usize> {
        let n = self.transitions.len();
        let mut reach = BTreeSet::from([self.initial]);
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for ts in self.transitions[s].values() {
                for &t in ts {
                    if reach.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
        }
        // Reverse reachability from accepting states.
        let mut rev: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (s, maps) in self.transitions.iter().enumerate() {
            for ts in maps.values() {
                for &t in ts {
                    rev[t].insert(s);
                }
            }
        }
        let mut coreach: BTreeSet<usize> = self.accepting.clone();
        let mut queue: VecDeque<usize> = self.accepting.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &p in &rev[s] {
                if coreach.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        reach.intersection(&coreach).copied().collect()
    }

    /// Is the accepted language infinite? Holds exactly when a useful state
    /// lies on a cycle of useful states.
    pub fn is_infinite(&self) -> bool {
        let useful = self.useful_states();
        // Iterative DFS with colors: 0 unseen, 1 on stack, 2 done.
        let mut color: BTreeMap<usize, u8> = useful.iter().map(|&s| (s, 0)).collect();
        for &start in &useful {
            if color[&start] != 0 {
                continue;
            }
            let mut stack = vec![(start, self.useful_successors(start, &useful))];
            color.insert(start, 1);
            while let Some((s, succs)) = stack.last_mut() {
                match succs.pop() {
                    Some(t) => match color[&t] {
                        0 => {
                            color.insert(t, 1);
                            let next = self.useful_successors(t, &useful);
                            stack.push((t, next));
                        }
                        1 => return true,
                        _ => {}
                    },
                    None => {
                        color.insert(*s, 2);
                        stack.pop();
                    }
                }
            }
        }
        false
    }

    fn useful_successors(&self, s: usize, useful: &BTreeSet<usize>) -> Vec<usize> {
        let mut out = Vec::new();
        for ts in self.transitions[s].values() {
            for &t in ts {
                if useful.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn is_empty_language(&self) -> bool {
        self.useful_states().is_empty()
    }

    /// All accepted words, lexicographically sorted. On the trimmed
    /// automaton the useful part is acyclic, so no word can reach the
    /// number of useful states in length.
    pub fn enumerate_finite(&self) -> Result<Vec<Word>, InfiniteLanguage> {
        if self.is_infinite() {
            return Err(InfiniteLanguage);
        }
        let useful = self.useful_states();
        let mut words = BTreeSet::new();
        if useful.contains(&self.initial) {
            let mut prefix = Vec::new();
            self.collect_words(self.initial, &useful, &mut prefix, &mut words);
        }
        debug_assert!(
            words.iter().all(|w: &Word| w.len() < useful.len().max(1)),
            "finite-language word exceeded the state bound"
        );
        Ok(words.into_iter().collect())
    }

    fn collect_words(
        &self,
        s: usize,
        useful: &BTreeSet<usize>,
        prefix: &mut Word,
        out: &mut BTreeSet<Word>,
    ) {
        if self.accepting.contains(&s) {
            out.insert(prefix.clone());
        }
        for (letter, ts) in &self.transitions[s] {
            for &t in ts {
                if useful.contains(&t) {
                    prefix.push(letter.clone());
                    self.collect_words(t, useful, prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    /// Accepted words of length at most `max_len`, ordered by length and
    /// then lexicographically. Works on infinite languages too, so it can
    /// sample witnesses.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier: Vec<(Word, BTreeSet<usize>)> =
            vec![(Vec::new(), BTreeSet::from([self.initial]))];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (word, states) in &frontier {
                if states.iter().any(|s| self.accepting.contains(s)) {
                    out.push(word.clone());
                }
                if len < max_len {
                    for letter in &self.alphabet {
                        let moved = self.step(states, letter);
                        if !moved.is_empty() {
                            let mut w = word.clone();
                            w.push(letter.clone());
                            next.push((w, moved));
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Graphviz rendering, for `--debug-automata` dumps.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for s in 0..self.transitions.len() {
            let shape = if self.accepting.contains(&s) {
                "doublecircle"
            } else {
                "circle"
            };
            let extra = if s == self.initial { ", style=bold" } else { "" };
            let _ = writeln!(out, "  q{s} [shape={shape}{extra}];");
        }
        for (s, maps) in self.transitions.iter().enumerate() {
            for (letter, ts) in maps {
                for t in ts {
                    let _ = writeln!(out, "  q{s} -> q{t} [label=\"{letter}\"];");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
