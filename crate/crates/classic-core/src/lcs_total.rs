//! Least common subsumers under total attributes, for the same-as fragment.
//!
//! With total attributes an lcs need not exist: the joined paths two
//! concepts share can form infinitely many essentially different
//! equalities. Existence reduces to a finite check over *configurations*:
//! a pair of product nodes sharing their second component, a pair of
//! distinct edges in one operand graph meeting at a common node, and the
//! regular language of connecting words. The lcs exists iff every
//! configuration's language is finite, and in that case the lcs graph is
//! the product extended, per configuration, by two tries over the finite
//! language whose leaves are joined by fresh shared successors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::automata::{path_automaton, PathAutomaton, Word};
use crate::canonical::canonicalize;
use crate::concept::{symbols_of, Concept};
use crate::graph::{DescriptionGraph, NodeId, NodeLabel};
use crate::product::product_with_pairs;
use crate::subsume::{canonical_graph, NotSFragment};

/// Which operand's graph carries the path languages of a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    /// Languages over the first concept's graph.
    Left,
    /// Languages over the second concept's graph.
    Right,
}

/// A same-as configuration: the product reaches `(h1, p0)` and `(h2, p0)`,
/// and in the language-side graph the distinct nodes `e1, e2` both step to
/// `f` by `attr`. Words leading from `h1` to `e1` and from `h2` to `e2`
/// that cannot be mirrored under `p0` give joined paths of the lcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SameAsConfig {
    pub side: Side,
    pub h1: NodeId,
    pub h2: NodeId,
    pub p0: NodeId,
    pub e1: NodeId,
    pub e2: NodeId,
    pub f: NodeId,
    pub attr: String,
}

/// Evidence that no finite lcs exists: a configuration whose connecting
/// language is infinite.
#[derive(Debug, Clone)]
pub struct NonexistenceWitness {
    pub config: SameAsConfig,
    /// Letters the restriction `bΣ*` ranges over.
    pub first_letters: BTreeSet<String>,
    /// Rooted product path to `(h1, p0)`.
    pub prefix_left: Word,
    /// Rooted product path to `(h2, p0)`.
    pub prefix_right: Word,
    /// The infinite connecting language.
    pub language: PathAutomaton,
    /// A few shortest words of the language, by length.
    pub samples: Vec<Word>,
}

#[derive(Debug, thiserror::Error)]
pub enum LcsTotalError {
    #[error(transparent)]
    NotSFragment(#[from] NotSFragment),
    #[error("the least common subsumer does not exist: the joining language at attribute `{}` is infinite", .0.config.attr)]
    DoesNotExist(Box<NonexistenceWitness>),
}

/// Does the lcs of `c` and `d` exist under total attributes?
pub fn lcs_exists(c: &Concept, d: &Concept) -> Result<bool, NotSFragment> {
    Ok(lcs_existence(c, d)?.is_none())
}

/// Full existence check: `None` when the lcs exists, otherwise the first
/// infinite configuration in enumeration order.
pub fn lcs_existence(c: &Concept, d: &Concept) -> Result<Option<NonexistenceWitness>, NotSFragment> {
    check_s(c)?;
    check_s(d)?;
    let gc = canonical_graph(c);
    let gd = canonical_graph(d);
    let (gp, pairs) = product_with_pairs(&gc, &gd);
    let alphabet: BTreeSet<String> = {
        let syms = symbols_of([c, d]);
        syms.attributes
    };
    for (config, first_letters, language) in configurations(&gc, &gd, &pairs, &alphabet) {
        if language.is_infinite() {
            let lookup = pair_lookup(&pairs, config.side);
            let left = pair_node(&lookup, config.h1, config.p0);
            let right = pair_node(&lookup, config.h2, config.p0);
            let samples = language
                .words_up_to(language.state_count() + 2)
                .into_iter()
                .take(3)
                .collect();
            return Ok(Some(NonexistenceWitness {
                prefix_left: bfs_path(&gp, gp.root(), left).expect("product node reachable"),
                prefix_right: bfs_path(&gp, gp.root(), right).expect("product node reachable"),
                config,
                first_letters,
                language,
                samples,
            }));
        }
    }
    Ok(None)
}

/// Compute the lcs of `c` and `d` under total attributes.
pub fn lcs_total(c: &Concept, d: &Concept) -> Result<Concept, LcsTotalError> {
    if let Some(witness) = lcs_existence(c, d)? {
        return Err(LcsTotalError::DoesNotExist(Box::new(witness)));
    }
    let gc = canonical_graph(c);
    let gd = canonical_graph(d);
    let (mut gp, pairs) = product_with_pairs(&gc, &gd);
    let alphabet: BTreeSet<String> = symbols_of([c, d]).attributes;

    for (config, _first, language) in configurations(&gc, &gd, &pairs, &alphabet) {
        let mut words: BTreeSet<Word> = language
            .enumerate_finite()
            .expect("existence was checked, language must be finite")
            .into_iter()
            .collect();
        // The empty word joins the configuration nodes directly. That is
        // sound only when the h-nodes are the meeting edges' sources
        // themselves and the other side has no edge for the attribute.
        let other_graph = match config.side {
            Side::Left => &gd,
            Side::Right => &gc,
        };
        let succ_p0: BTreeSet<&str> = other_graph
            .out_edges(config.p0)
            .map(|(_, a, _)| a.as_str())
            .collect();
        if !succ_p0.contains(config.attr.as_str()) && config.h1 == config.e1 && config.h2 == config.e2
        {
            words.insert(Vec::new());
        }
        if words.is_empty() {
            continue;
        }
        let lookup = pair_lookup(&pairs, config.side);
        let at1 = pair_node(&lookup, config.h1, config.p0);
        let at2 = pair_node(&lookup, config.h2, config.p0);
        graft(&mut gp, at1, at2, &config.attr, &words);
    }

    let canon = canonicalize(gp);
    Ok(canon
        .to_s_concept()
        .expect("products and grafts of same-as graphs stay same-as graphs"))
}

fn check_s(c: &Concept) -> Result<(), NotSFragment> {
    if c.in_s_fragment_or_top() {
        Ok(())
    } else {
        Err(NotSFragment(c.to_string()))
    }
}

/// Product-node ids keyed by (language-side node, other-side node).
fn pair_lookup(
    pairs: &BTreeMap<NodeId, (NodeId, NodeId)>,
    side: Side,
) -> BTreeMap<(NodeId, NodeId), NodeId> {
    pairs
        .iter()
        .map(|(&id, &(l, r))| match side {
            Side::Left => ((l, r), id),
            Side::Right => ((r, l), id),
        })
        .collect()
}

fn pair_node(lookup: &BTreeMap<(NodeId, NodeId), NodeId>, h: NodeId, p0: NodeId) -> NodeId {
    lookup[&(h, p0)]
}

/// Enumerate all configurations of both sides with their first-letter sets
/// and connecting languages, in a fixed deterministic order.
fn configurations(
    gc: &DescriptionGraph,
    gd: &DescriptionGraph,
    pairs: &BTreeMap<NodeId, (NodeId, NodeId)>,
    alphabet: &BTreeSet<String>,
) -> Vec<(SameAsConfig, BTreeSet<String>, PathAutomaton)> {
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let (lang_graph, other_graph) = match side {
            Side::Left => (gc, gd),
            Side::Right => (gd, gc),
        };
        // Product nodes grouped by the other-side component.
        let mut groups: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(l, r) in pairs.values() {
            let (h, p0) = match side {
                Side::Left => (l, r),
                Side::Right => (r, l),
            };
            groups.entry(p0).or_default().push(h);
        }
        // In-edges of the language graph grouped by (attribute, target).
        let mut meets: BTreeMap<(String, NodeId), Vec<NodeId>> = BTreeMap::new();
        for (e, a, f) in lang_graph.edges() {
            meets.entry((a.clone(), *f)).or_default().push(*e);
        }
        for (&p0, hs) in &groups {
            if hs.len() < 2 {
                continue;
            }
            let mut hs = hs.clone();
            hs.sort();
            let succ_p0: BTreeSet<String> = other_graph
                .out_edges(p0)
                .map(|(_, a, _)| a.clone())
                .collect();
            let first_letters: BTreeSet<String> =
                alphabet.difference(&succ_p0).cloned().collect();
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    let (h1, h2) = (hs[i], hs[j]);
                    for ((attr, f), es) in &meets {
                        if es.len() < 2 {
                            continue;
                        }
                        for &e1 in es {
                            for &e2 in es {
                                if e1 == e2 {
                                    continue;
                                }
                                let language = path_automaton(lang_graph, h1, e1)
                                    .intersect_and_restrict(
                                        &path_automaton(lang_graph, h2, e2),
                                        &first_letters,
                                    );
                                out.push((
                                    SameAsConfig {
                                        side,
                                        h1,
                                        h2,
                                        p0,
                                        e1,
                                        e2,
                                        f: *f,
                                        attr: attr.clone(),
                                    },
                                    first_letters.clone(),
                                    language,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Shortest path label between two nodes, by breadth-first search.
fn bfs_path(g: &DescriptionGraph, from: NodeId, to: NodeId) -> Option<Word> {
    let mut parent: BTreeMap<NodeId, (NodeId, String)> = BTreeMap::new();
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if n == to {
            let mut path = Vec::new();
            let mut at = n;
            while at != from {
                let (p, a) = parent[&at].clone();
                path.push(a);
                at = p;
            }
            path.reverse();
            return Some(path);
        }
        for (_, a, t) in g.out_edges(n) {
            if seen.insert(*t) {
                parent.insert(*t, (n, a.clone()));
                queue.push_back(*t);
            }
        }
    }
    None
}

/// Graft two tries over `words` rooted at `at1` and `at2`, and join each
/// word's trie nodes through a fresh node by an `attr` edge.
fn graft(
    g: &mut DescriptionGraph,
    at1: NodeId,
    at2: NodeId,
    attr: &str,
    words: &BTreeSet<Word>,
) {
    let trie1 = build_trie(g, at1, words);
    let trie2 = build_trie(g, at2, words);
    for w in words {
        let join = g.add_node(NodeLabel::top());
        g.add_edge(trie1[w], attr, join);
        g.add_edge(trie2[w], attr, join);
    }
}

fn build_trie(
    g: &mut DescriptionGraph,
    root: NodeId,
    words: &BTreeSet<Word>,
) -> BTreeMap<Word, NodeId> {
    let mut nodes: BTreeMap<Word, NodeId> = BTreeMap::new();
    nodes.insert(Vec::new(), root);
    for w in words {
        for k in 1..=w.len() {
            if !nodes.contains_key(&w[..k]) {
                let parent = nodes[&w[..k - 1]];
                let fresh = g.add_node(NodeLabel::top());
                g.add_edge(parent, &w[k - 1], fresh);
                nodes.insert(w[..k].to_vec(), fresh);
            }
        }
    }
    nodes
}
